"""Exception hierarchy shared by every posetlab module."""

from __future__ import annotations


class PosetLabError(Exception):
    """Base class; carries a machine-readable ``code`` for the service layer."""

    code = "error"


class PromiseViolation(PosetLabError):
    """Input breaks the promise of its representation (PO not an order, HD cyclic, ...)."""

    code = "promise_violation"


class UnknownLabel(PosetLabError):
    code = "unknown_label"


class UnknownPoint(PosetLabError):
    code = "unknown_point"


class ColorMixing(PosetLabError):
    """Colored and uncolored posets cannot be combined."""

    code = "color_mixing"


class ColoredInput(PosetLabError):
    """Operation defined for impartial posets received a colored one."""

    code = "colored_input"


class UncoloredPoint(PosetLabError):
    """Black-white operation received a poset with uncolored points."""

    code = "uncolored_point"


class BadParams(PosetLabError):
    code = "bad_params"


class NotInvolution(PosetLabError):
    code = "not_involution"


class NotOrderPreserving(PosetLabError):
    code = "not_order_preserving"


class BudgetExceeded(PosetLabError):
    """Search exceeded its position or time budget."""

    code = "budget_exceeded"

    def __init__(self, message: str, positions_explored: int):
        super().__init__(message)
        self.positions_explored = positions_explored


class OracleInconsistent(PosetLabError):
    """An outcome oracle returned answers no g-number can explain."""

    code = "oracle_inconsistent"


class NotTwoLevel(PosetLabError):
    code = "not_two_level"


class NotParityUniform(PosetLabError):
    code = "not_parity_uniform"


class NotNFree(PosetLabError):
    """Poset contains an induced N; ``witness`` is the offending quadruple."""

    code = "not_n_free"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyPoset(PosetLabError):
    code = "empty_poset"


class NotNumeric(PosetLabError):
    code = "not_numeric"


class BadFormula(PosetLabError):
    code = "bad_formula"


class UnknownVertex(PosetLabError):
    code = "unknown_vertex"


class BadVertices(PosetLabError):
    code = "bad_vertices"


class IllegalMove(PosetLabError):
    code = "illegal_move"


class InvalidDocument(PosetLabError):
    """A posetlab-v1 / graph / qbf document failed validation."""

    code = "invalid_document"
