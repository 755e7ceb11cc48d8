"""Exception types raised across the toolkit."""


class OrelabError(Exception):
    """Base class for all toolkit errors."""


class ContextMismatchError(OrelabError, ValueError):
    """Operands live over different fields (or different coefficient rings)."""


class FieldTooSmallError(OrelabError, ValueError):
    """The field has fewer elements than a computation needs.

    ``required`` is the number of distinct scalars asked for and ``min_k`` the
    smallest extension degree over the same prime that would supply them.
    """

    def __init__(self, p: int, k: int, required: int):
        self.p = p
        self.k = k
        self.required = required
        min_k = k
        while p**min_k < required:
            min_k += 1
        self.min_k = min_k
        super().__init__(
            f"field too small: GF({p}^{k}) has {p**k} elements but {required} "
            f"distinct scalars are required; use k >= {min_k}"
        )


class ParseError(OrelabError, ValueError):
    """Malformed text input. Positions are 1-based."""

    def __init__(self, message: str, line: int = 1, column: int = 1, source: str = ""):
        self.line = line
        self.column = column
        self.source = source
        self.bare = message
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")


class DomainError(OrelabError, ValueError):
    """Input lies outside the domain an operation is defined on."""


class NotNilpotentError(OrelabError, ValueError):
    """An element declared nilpotent did not vanish at the declared bound."""


class NilpotentAlgebraError(OrelabError, ValueError):
    """A nilpotent algebra has no nonzero idempotent."""


class SearchCeilingError(OrelabError, RuntimeError):
    """A bounded search gave up before finding an answer."""

    def __init__(self, what: str, ceiling: int):
        self.ceiling = ceiling
        super().__init__(f"{what}: no solution found up to ceiling {ceiling}")


class DecompositionError(OrelabError, ValueError):
    """A matrix could not be written in the required coefficient/monomial shape."""


class FactorizationError(OrelabError, ValueError):
    """A word does not factor as prefix * block^t * tail."""

    def __init__(self, word: str, reason: str):
        self.word = word
        super().__init__(f"word {word!r} does not factor: {reason}")


class HypothesisError(OrelabError, ValueError):
    """Parameters violate the hypotheses of the check being run."""


class PreconditionError(OrelabError, ValueError):
    """Inputs fail a stated precondition."""
