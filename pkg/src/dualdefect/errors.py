"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called outside its input domain."""


class ConstraintError(PreconditionError):
    """An (N, m) pair fails one of the admissibility inequalities.

    ``inequality`` names the failed constraint, e.g. ``"N >= 4m - 2"``.
    """

    def __init__(self, inequality: str, message: str):
        super().__init__(f"constraint {inequality} violated: {message}")
        self.inequality = inequality


class LemmaAnomaly(RuntimeError):
    """A double-zero pattern failed the structural checks that must hold.

    The checks are consequences of a theorem, so raising this always
    means the implementation is inconsistent.
    """


class SearchResourceError(RuntimeError):
    """The search ran out of a machine resource before finishing a branch."""
