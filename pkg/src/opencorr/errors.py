"""Exception hierarchy. Every error carries a short machine-readable ``code``
which the command line front end reports verbatim."""


class OpencorrError(Exception):
    code = "error"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = str(detail)


class InvalidInput(OpencorrError):
    code = "InvalidInput"


class ShapeMismatch(OpencorrError):
    code = "ShapeMismatch"


# graphs
class NotALeg(OpencorrError):
    code = "NotALeg"


class ObjectMismatch(OpencorrError):
    code = "ObjectMismatch"


class HalfEdgeNotFound(OpencorrError):
    code = "HalfEdgeNotFound"


class Disconnected(OpencorrError):
    code = "Disconnected"


class NonIntegralGenus(OpencorrError):
    code = "NonIntegralGenus"


# backends
class NotAGroup(OpencorrError):
    code = "NotAGroup"


class NotCommutative(OpencorrError):
    code = "NotCommutative"


class NotFrobenius(OpencorrError):
    code = "NotFrobenius"


class NotARepresentation(OpencorrError):
    code = "NotARepresentation"


class BackendMismatch(OpencorrError):
    code = "BackendMismatch"


class UnsupportedBackend(OpencorrError):
    code = "UnsupportedBackend"


class NotEquivariant(OpencorrError):
    code = "NotEquivariant"


# Frobenius data
class InvalidSelfDuality(OpencorrError):
    code = "InvalidSelfDuality"


class Degenerate(InvalidSelfDuality):
    code = "Degenerate"


class NotSymmetric(InvalidSelfDuality):
    code = "NotSymmetric"


class InvalidFrobeniusData(OpencorrError):
    code = "InvalidFrobeniusData"


# correlators / blocks
class SlotOutOfRange(OpencorrError):
    code = "SlotOutOfRange"


class SlotAlreadySewn(OpencorrError):
    code = "SlotAlreadySewn"


class NotInSpan(OpencorrError):
    code = "NotInSpan"


class ZeroXi(OpencorrError):
    code = "ZeroXi"
