"""Exact desk-scale toolkit for open correlators built from cyclic and modular operads.

Modules: ``graphcat`` (half-edge graphs), ``ribbon`` (cyclic orders and surface
types), ``exactla`` (exact linear algebra), ``backends`` (vect, Rep(G), F-mod),
``frobenius``, ``correlators``, ``blocks`` and the ``cli`` front end.
"""

__version__ = "0.1.0"

from .errors import OpencorrError  # noqa: E402,F401
