"""Exact Betti tables, Hilbert series and multiplicity bounds for monomial ideals."""

from .checker import (
    BoundReport,
    check_curve,
    check_cyclic,
    check_dubreil,
    check_module,
    check_quasipure,
    sharp_family,
    vandermonde_identity,
)
from .calculus import (
    ResolutionShape,
    basic_double_link,
    bdl_cancellation_ranks,
    bdl_hypotheses,
    cancel_splittings,
    cone_bdl,
    cone_hypersurface,
)
from .determinantal import (
    DegreeMatrix,
    degree_nested,
    degree_recursive,
    det_check_conjecture,
    en_betti_table,
    en_extremal_shifts,
)
from .errors import (
    CapacityError,
    DomainError,
    InconsistencyError,
    InputError,
    MultcheckError,
    ParseError,
    PreconditionError,
)
from .hilbert import HilbertData, hilbert_function, hilbert_numerator, multiplicity_from_betti
from .monomial import Monomial, MonomialIdeal, minimalize, parse_ideal
from .resolution import BettiTable, ResolutionStats, betti_koszul, betti_taylor, resolve, stats

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
