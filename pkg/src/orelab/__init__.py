"""Exact computer algebra for differential polynomial rings over GF(p^k).

Modules: ``field`` (finite fields), ``freealg`` (the free algebra F<a,b,x>),
``ore`` (R[x; D] and quasi-inverses), ``shift`` (x -> x + t and the w(n, m)
sums), ``matalg`` (matrix algebras, radicals, pseudo-idempotents),
``starcal`` (star products and the B/Z sweep) and ``cli``.
"""

__version__ = "0.1.0"

from .errors import (ContextMismatchError, DecompositionError, DomainError, FactorizationError,
                     FieldTooSmallError, HypothesisError, NilpotentAlgebraError, NotNilpotentError,
                     OrelabError, ParseError, PreconditionError, SearchCeilingError)
from .field import GF, FieldCtx, FieldElem, field_with_nodes
from .freealg import FreePoly, Span, parse_poly
from .matrices import MatConst, MatFree
from .ore import OrePoly, ore_mul, p_decompose, quasi_inverse_nilpotent
from .shift import GammaExpansion, assumption1_scan, gamma_t, gamma_y_expand, platinum_closure
from .matalg import algebra_closure, power_to_assumption3, pseudo_idempotent, radical
from .starcal import GoodSet, StarCalculus, compute_BZ, naj_spot_check, uv_split

__all__ = [
    "ContextMismatchError", "DecompositionError", "DomainError", "FactorizationError",
    "FieldTooSmallError", "HypothesisError", "NilpotentAlgebraError", "NotNilpotentError",
    "OrelabError", "ParseError", "PreconditionError", "SearchCeilingError",
    "GF", "FieldCtx", "FieldElem", "field_with_nodes",
    "FreePoly", "Span", "parse_poly", "MatConst", "MatFree",
    "OrePoly", "ore_mul", "p_decompose", "quasi_inverse_nilpotent",
    "GammaExpansion", "assumption1_scan", "gamma_t", "gamma_y_expand", "platinum_closure",
    "algebra_closure", "power_to_assumption3", "pseudo_idempotent", "radical",
    "GoodSet", "StarCalculus", "compute_BZ", "naj_spot_check", "uv_split",
]
