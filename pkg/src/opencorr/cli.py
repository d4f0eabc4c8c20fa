"""Command line front end.

Every subcommand prints one JSON document on standard output.  Exit status is
0 on success, 1 when the input parses but fails validation, and 2 when the
command line or an input file cannot be parsed.  Errors are reported as
``{"error": <code>, "detail": <text>}``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .backends import (Algebra, Backend, FModBackend, RepBackend, VectBackend, cyclic_group,
                       dihedral_group, klein_group, make_fmod, make_rep, make_vect,
                       quaternion_group, symmetric_group)
from .blocks import block_space, product_table, xi
from .correlators import SurfacePresentation, correlator
from .errors import InvalidInput, OpencorrError, UnsupportedBackend
from .exactla import Matrix, parse_field
from .frobenius import (check_symmetric_frobenius, from_algebra, function_algebra_data,
                        group_algebra_data, matrix_algebra_data, split_algebra_data,
                        truncated_polynomial_data)
from .graphcat import graph_from_json, iso
from .ribbon import ribbon_from_json, surface_type


class ParseFailure(Exception):
    def __init__(self, code: str, detail: str):
        super().__init__(detail)
        self.code, self.detail = code, detail


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseFailure("UsageError", message)


# ---------------------------------------------------------------- input documents

def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseFailure("FileError", f"{path}: {e.strerror or e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseFailure("JSONError", f"{path}: {e.msg} at line {e.lineno} column {e.colno}") from None
    except RecursionError:
        raise ParseFailure("JSONError", f"{path}: nesting too deep") from None


def _field_object(doc, name: str) -> dict:
    if not isinstance(doc, dict):
        raise InvalidInput(f"{name} document must be a JSON object")
    return doc


def _nested(x, depth: int, what: str):
    """Check that ``x`` is a list nested ``depth`` levels deep."""
    if depth == 0:
        if isinstance(x, (list, dict)):
            raise InvalidInput(f"{what}: expected a scalar, found a container")
        return
    if not isinstance(x, list):
        raise InvalidInput(f"{what}: expected a list")
    for y in x:
        _nested(y, depth - 1, what)


def _matrix(field, rows, what: str) -> Matrix:
    _nested(rows, 2, what)
    if not rows:
        raise InvalidInput(f"{what}: empty matrix")
    return Matrix.from_rows(field, rows)


_GROUP_PRESETS = {
    "cyclic": lambda n: cyclic_group(n),
    "symmetric": lambda n: symmetric_group(n),
    "dihedral": lambda n: dihedral_group(n),
    "klein": lambda n: klein_group(),
    "quaternion": lambda n: quaternion_group(),
}


def load_group(doc):
    doc = _field_object(doc, "group")
    if "preset" in doc:
        name, n = doc["preset"], doc.get("n", 0)
        if name not in _GROUP_PRESETS:
            raise InvalidInput(f"unknown group preset {name!r}")
        if not isinstance(n, int) or isinstance(n, bool) or not 0 <= n <= 6:
            raise InvalidInput("group preset size must be an integer between 0 and 6")
        if name in ("cyclic", "symmetric", "dihedral") and n < 1:
            raise InvalidInput(f"{name} preset needs n >= 1")
        return _GROUP_PRESETS[name](n)
    if "elements" not in doc or "table" not in doc:
        raise InvalidInput("group needs 'elements' and 'table'")
    els, table = doc["elements"], doc["table"]
    if not isinstance(els, list) or not all(isinstance(e, str) for e in els):
        raise InvalidInput("group elements must be a list of names")
    _nested(table, 2, "group table")
    return els, table


def load_algebra(field, doc, check: bool = True) -> tuple[Algebra, Matrix | None]:
    doc = _field_object(doc, "algebra")
    for key in ("mul", "unit"):
        if key not in doc:
            raise InvalidInput(f"algebra needs {key!r}")
    _nested(doc["mul"], 3, "structure constants")
    _nested(doc["unit"], 1, "unit")
    if "dim" in doc and doc["dim"] != len(doc["unit"]):
        raise InvalidInput("'dim' disagrees with the unit vector")
    alg = Algebra(field, doc["mul"], doc["unit"], check=check)
    pairing = _matrix(field, doc["pairing"], "pairing") if "pairing" in doc else None
    return alg, pairing


def load_backend(doc, field) -> Backend:
    doc = _field_object(doc, "backend")
    kind = doc.get("type")
    if kind == "vect":
        return make_vect(field)
    if kind == "rep":
        if "group" not in doc:
            raise InvalidInput("rep backend needs a 'group'")
        return make_rep(*load_group(doc["group"]), field=field)
    if kind == "fmod":
        if "algebra" not in doc:
            raise InvalidInput("fmod backend needs an 'algebra'")
        alg, pairing = load_algebra(field, doc["algebra"])
        if pairing is None:
            raise InvalidInput("fmod algebra needs a 'pairing'")
        return make_fmod(alg, pairing)
    raise InvalidInput(f"unknown backend type {kind!r}")


def _load_object(b: Backend, doc):
    doc = _field_object(doc, "object")
    kind = doc.get("kind")
    if isinstance(b, VectBackend):
        if kind != "space" or not isinstance(doc.get("dim"), int) or isinstance(doc.get("dim"), bool) \
                or doc["dim"] < 1:
            raise InvalidInput("vect objects are {\"kind\": \"space\", \"dim\": n} with n >= 1")
        return b.space(doc["dim"])
    if isinstance(b, RepBackend):
        if kind == "adjoint":
            return b.regular_adjoint()
        if kind == "regular":
            return b.regular()
        if kind == "coend":
            return b.coend()
        if kind == "representation":
            act = doc.get("action")
            if not isinstance(act, dict) or sorted(act) != sorted(b.group.elements):
                raise InvalidInput("'action' must give a matrix for every group element")
            return b.representation([_matrix(b.field, act[e], f"action of {e}") for e in b.group.elements])
        raise InvalidInput(f"unknown rep object kind {kind!r}")
    raise UnsupportedBackend(f"Frobenius data is not supported in {b.kind}")


def load_frobenius(b: Backend, doc, check: bool):
    doc = _field_object(doc, "frobenius")
    if isinstance(b, FModBackend):
        raise UnsupportedBackend("Frobenius data is not supported in fmod")
    if "preset" in doc:
        name = doc["preset"]
        n = doc.get("n", 2)
        if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= 4:
            raise InvalidInput("preset size must be an integer between 1 and 4")
        if name == "truncated_polynomial" and isinstance(b, VectBackend):
            return truncated_polynomial_data(b, check=check)
        if name == "matrix_algebra" and isinstance(b, VectBackend):
            return matrix_algebra_data(b, n, check=check)
        if name == "split_algebra" and isinstance(b, VectBackend):
            return split_algebra_data(b, n, check=check)
        if name == "group_algebra" and isinstance(b, RepBackend):
            return group_algebra_data(b, check=check)
        if name == "function_algebra" and isinstance(b, RepBackend):
            return function_algebra_data(b, check=check)
        raise InvalidInput(f"preset {name!r} is not available for backend {b.kind}")
    if "object" not in doc or "pairing" not in doc:
        raise InvalidInput("frobenius document needs 'object', 'mul', 'unit' and 'pairing'")
    F = _load_object(b, doc["object"])
    alg, pairing = load_algebra(b.field, doc, check=False)
    return from_algebra(b, F, alg, pairing, check=check)


# ---------------------------------------------------------------- subcommands

def _fmt(field, xs) -> list[str]:
    return [field.format(x) for x in xs]


def cmd_classify(args, field) -> dict:
    rg, _ = ribbon_from_json(_read_json(args.file))
    return surface_type(rg).to_json()


def cmd_check_frobenius(args, field) -> dict:
    b = load_backend(_read_json(args.backend), field)
    data = load_frobenius(b, _read_json(args.frobenius), check=False)
    rep = check_symmetric_frobenius(b, data.F, data.mu, data.eta, data.beta)
    out = rep.to_json()
    out["ok"] = rep.ok
    return out


def cmd_correlator(args, field) -> dict:
    b = load_backend(_read_json(args.backend), field)
    data = load_frobenius(b, _read_json(args.frobenius), check=True)
    s = SurfacePresentation.from_json(_read_json(args.surface))
    v = correlator(b, data, s)
    return {
        "surface": s.surface_type().to_json(),
        "slots": [f"{kind}{lab}" for kind, lab in v.slots],
        "basis_dim": v.basis_dim,
        "coords": _fmt(field, v.coords()),
    }


def _genus(n, flag):
    if n < 0:
        raise InvalidInput(f"{flag} must be non-negative")
    if n > 6:
        raise InvalidInput(f"{flag} above 6 is outside desk scale")
    return n


def cmd_blocks(args, field) -> dict:
    b = load_backend(_read_json(args.backend), field)
    g = _genus(args.g, "-g")
    return {"genus": g, "dim": block_space(b, g).dim, "xi_coords": _fmt(field, xi(b, g))}


def cmd_block_product(args, field) -> dict:
    b = load_backend(_read_json(args.backend), field)
    g, h = _genus(args.g, "-g"), _genus(args.h, "-h")
    table = product_table(b, g, h)
    return {
        "g": g, "h": h,
        "dims": [block_space(b, g).dim, block_space(b, h).dim, block_space(b, g + h).dim],
        "table": [[_fmt(field, c) for c in row] for row in table],
    }


def cmd_check_iso(args, field) -> dict:
    g1, ids1 = graph_from_json(_read_json(args.first))
    g2, ids2 = graph_from_json(_read_json(args.second))
    phi = iso(g1, g2)
    if phi is None:
        return {"isomorphic": False}
    return {
        "isomorphic": True,
        "half_edges": [[ids1[h], ids2[k]] for h, k in enumerate(phi.half_edges)],
        "vertices": [[v, w] for v, w in enumerate(phi.vertices)],
    }


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opencorr", description="Exact open-correlator computations.")
    p.add_argument("--version", action="version", version=f"opencorr {__version__}")
    p.add_argument("--field", default="q", help="ground field: q (rationals) or p:<prime>")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify-surface", help="genus and boundary of a ribbon graph")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("check-frobenius", help="check symmetric Frobenius axioms")
    s.add_argument("--backend", required=True)
    s.add_argument("--frobenius", required=True)
    s.set_defaults(func=cmd_check_frobenius)

    s = sub.add_parser("correlator", help="correlator vector of a sewn disk")
    s.add_argument("--backend", required=True)
    s.add_argument("--frobenius", required=True)
    s.add_argument("--surface", required=True)
    s.set_defaults(func=cmd_correlator)

    s = sub.add_parser("blocks", help="handlebody block space and its distinguished vector")
    s.add_argument("--backend", required=True)
    s.add_argument("-g", type=int, required=True)
    s.set_defaults(func=cmd_blocks)

    s = sub.add_parser("block-product", add_help=False, help="star product table between two genera")
    s.add_argument("--help", action="help", help="show this help message and exit")
    s.add_argument("--backend", required=True)
    s.add_argument("-g", type=int, required=True)
    s.add_argument("-h", type=int, required=True)
    s.set_defaults(func=cmd_block_product)

    s = sub.add_parser("check-iso", help="isomorphism of two half-edge graphs")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_check_iso)
    return p


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        field = parse_field(args.field)
    except ParseFailure as e:
        _emit({"error": e.code, "detail": e.detail})
        return 2
    except InvalidInput as e:
        _emit({"error": "UsageError", "detail": e.detail})
        return 2
    try:
        result = args.func(args, field)
    except ParseFailure as e:
        _emit({"error": e.code, "detail": e.detail})
        return 2
    except OpencorrError as e:
        _emit({"error": e.code, "detail": e.detail})
        return 1
    except (TypeError, ValueError, KeyError, IndexError) as e:
        # malformed structure that slipped past the schema checks
        _emit({"error": "InvalidInput", "detail": f"{type(e).__name__}: {e}"})
        return 1
    _emit(result)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
