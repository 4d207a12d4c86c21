"""Evaluation of multiplicity bounds on Betti data.

Every check returns a :class:`BoundReport`.  A violated bound is data, not an
exception; exceptions are reserved for inputs that make a bound meaningless.
``findings`` collects outcomes that would contradict a proven theorem or an
open conjecture, so a non-empty list on valid input deserves a closer look.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial, prod

from . import linalg
from .calculus import ResolutionShape, cone_from_sequence
from .errors import DomainError, InconsistencyError, PreconditionError
from .hilbert import HilbertData, hilbert_numerator, multiplicity_from_betti
from .monomial import MonomialIdeal
from .resolution import BettiTable, ResolutionStats

PURE = "pure"
QUASI_PURE = "quasi-pure"
GENERAL = "general"


def _ratio(x: Fraction | None) -> str | None:
    return None if x is None else str(x)


def classify(st: ResolutionStats) -> str:
    if st.is_pure:
        return PURE
    return QUASI_PURE if st.is_quasi_pure else GENERAL


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one bound check.

    ``lower_value`` is ``None`` when no lower bound applies (modules that are
    not Cohen-Macaulay with a quasi-pure resolution); the matching flags are
    then ``None`` as well.
    """

    lower_value: Fraction | None
    e_value: Fraction
    upper_value: Fraction
    lower_holds: bool | None
    upper_holds: bool
    lower_sharp: bool | None
    upper_sharp: bool
    classification: str
    context: str
    codim: int | None = None
    cohen_macaulay: bool | None = None
    m: tuple[int, ...] = ()
    M: tuple[int, ...] = ()
    findings: tuple[str, ...] = ()
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def all_hold(self) -> bool:
        return self.upper_holds and self.lower_holds is not False

    def to_json(self) -> dict:
        out = {
            "context": self.context,
            "classification": self.classification,
            "codim": self.codim,
            "cohen_macaulay": self.cohen_macaulay,
            "lower": _ratio(self.lower_value),
            "e": _ratio(self.e_value),
            "upper": _ratio(self.upper_value),
            "lower_holds": self.lower_holds,
            "upper_holds": self.upper_holds,
            "lower_sharp": self.lower_sharp,
            "upper_sharp": self.upper_sharp,
            "m": list(self.m),
            "M": list(self.M),
            "findings": list(self.findings),
        }
        for key, value in self.extras.items():
            out[key] = _ratio(value) if isinstance(value, Fraction) else value
        return out


def _compare(lower, e, upper):
    lower_holds = None if lower is None else lower <= e
    lower_sharp = None if lower is None else lower == e
    return lower_holds, e <= upper, lower_sharp, upper == e


# -- cyclic modules R/I ------------------------------------------------------------

def check_cyclic(table: BettiTable, hilbert: HilbertData) -> BoundReport:
    """Compare e(R/I) with prod m_i / c! and prod M_i / c!.

    For a Cohen-Macaulay quotient (pd = codim) the report also tests whether
    sharpness on either side coincides with purity.  For other quotients only
    the upper bound is expected to hold.
    """
    if hilbert.is_zero_module:
        raise DomainError("R/I is the zero module; there is nothing to bound")
    if not table.is_cyclic():
        raise DomainError("expected the table of a cyclic module R/I (beta_00 = 1 only at index 0)")
    if table.euler_polynomial() != hilbert.numerator:
        raise InconsistencyError("Betti table and Hilbert numerator describe different quotients")
    c = hilbert.codim
    if c == 0:
        raise DomainError("the zero ideal has codimension 0; the bounds are empty")
    if table.pd < c:
        raise InconsistencyError(f"projective dimension {table.pd} is below the codimension {c}")
    st = table.stats()
    e = Fraction(hilbert.multiplicity)
    lower = Fraction(prod(st.m[1:c + 1]), factorial(c))
    upper = Fraction(prod(st.M[1:c + 1]), factorial(c))
    lh, uh, ls, us = _compare(lower, e, upper)
    cm = table.pd == c
    findings = []
    if not uh:
        findings.append(f"upper bound fails: e = {e} > {upper}")
    if cm:
        if not lh:
            findings.append(f"Cohen-Macaulay quotient violates the lower bound: {lower} > {e}")
        if ls != st.is_pure:
            findings.append(f"lower sharpness ({ls}) disagrees with purity ({st.is_pure})")
        if us != st.is_pure:
            findings.append(f"upper sharpness ({us}) disagrees with purity ({st.is_pure})")
    return BoundReport(
        lower, e, upper, lh, uh, ls, us, classify(st), "cyclic",
        codim=c, cohen_macaulay=cm, m=st.m, M=st.M, findings=tuple(findings),
    )


# -- modules ------------------------------------------------------------------------

def shifted_bounds(st: ResolutionStats, c: int) -> tuple[Fraction, Fraction]:
    """prod (m_i - M_0) / c! and prod (M_i - m_0) / c!; the lower one may be negative."""
    lower = Fraction(prod(st.m[i] - st.M[0] for i in range(1, c + 1)), factorial(c))
    upper = Fraction(prod(st.M[i] - st.m[0] for i in range(1, c + 1)), factorial(c))
    return lower, upper


def _scaled(table: BettiTable, lower, upper, e) -> dict:
    """Bounds multiplied by b_0, the number of generators of the module.

    The determinant expansion behind the module bounds sums over one shift
    per column, so column 0 contributes b_0 terms; without that factor the
    bounds fail for e.g. two copies of k[x]/(x).  For cyclic tables b_0 = 1.
    """
    b0 = table.total(0)
    out = {"generators": b0, "upper_scaled": b0 * upper, "upper_scaled_holds": e <= b0 * upper,
           "upper_scaled_sharp": e == b0 * upper}
    if lower is not None:
        out.update({"lower_scaled": b0 * lower, "lower_scaled_holds": b0 * lower <= e,
                    "lower_scaled_sharp": b0 * lower == e})
    return out


def check_module(table: BettiTable, n: int) -> BoundReport:
    """Upper bound prod (M_i - m_0) / c! for a torsion module given by its Betti table.

    A lower bound is attached only for Cohen-Macaulay tables with a
    quasi-pure resolution, where it is a theorem; it is reported unclamped.
    The b_0-scaled versions of both bounds are reported alongside.
    """
    c, e = multiplicity_from_betti(table, n)
    if table.pd < c:
        raise InconsistencyError(f"projective dimension {table.pd} is below the codimension {c}")
    st = table.stats()
    cm = table.pd == c
    lower, upper = shifted_bounds(st, c)
    if not (cm and st.is_quasi_pure):
        lower = None
    lh, uh, ls, us = _compare(lower, e, upper)
    extras = _scaled(table, lower, upper, e)
    findings = []
    if not extras["upper_scaled_holds"]:
        findings.append(f"upper bound fails even after scaling by b_0: e = {e} > {extras['upper_scaled']}")
    if extras["upper_scaled_sharp"] != (cm and st.is_pure):
        findings.append(
            f"upper sharpness ({extras['upper_scaled_sharp']}) disagrees with "
            f"'Cohen-Macaulay and pure' ({cm and st.is_pure})"
        )
    if lower is not None and extras["lower_scaled_sharp"] != st.is_pure:
        findings.append(f"lower sharpness disagrees with purity ({st.is_pure})")
    return BoundReport(
        lower, e, upper, lh, uh, ls, us, classify(st), "module",
        codim=c, cohen_macaulay=cm, m=st.m, M=st.M, findings=tuple(findings), extras=extras,
    )


def check_quasipure(table: BettiTable, n: int) -> BoundReport:
    """Two-sided bounds for a Cohen-Macaulay rank-0 table with quasi-pure resolution."""
    c, e = multiplicity_from_betti(table, n)
    if table.pd != c:
        raise PreconditionError(f"table is not Cohen-Macaulay: pd {table.pd} != codim {c}")
    st = table.stats()
    for i in range(1, table.pd + 1):
        if st.m[i] < st.M[i - 1]:
            raise PreconditionError(
                f"resolution is not quasi-pure at i = {i}: m_{i} = {st.m[i]} < M_{i-1} = {st.M[i-1]}"
            )
    lower, upper = shifted_bounds(st, c)
    lh, uh, ls, us = _compare(lower, e, upper)
    extras = _scaled(table, lower, upper, e)
    extras["vandermonde_identity"] = vandermonde_identity(table, e)
    findings = []
    if not (extras["lower_scaled_holds"] and extras["upper_scaled_holds"]):
        findings.append("a b_0-scaled two-sided bound failed")
    if extras["lower_scaled_sharp"] != st.is_pure or extras["upper_scaled_sharp"] != st.is_pure:
        findings.append("sharpness disagrees with purity")
    if not extras["vandermonde_identity"]:
        findings.append("determinant expansions disagree")
    return BoundReport(
        lower, e, upper, lh, uh, ls, us, classify(st), "module",
        codim=c, cohen_macaulay=True, m=st.m, M=st.M, findings=tuple(findings), extras=extras,
    )


def _vandermonde(points) -> int:
    return prod(b - a for i, a in enumerate(points) for b in points[i + 1:])


def power_sum_matrix(table: BettiTable) -> list[list[int]]:
    """Row k, column i holds sum_j beta_ij d^k, for 0 <= i, k <= pd."""
    p = table.pd
    return [
        [sum(b * j**k for j, b in table.distinct_degrees(i)) for i in range(p + 1)]
        for k in range(p + 1)
    ]


def vandermonde_identity(table: BettiTable, e) -> bool:
    """Check both expansions of the power-sum determinant as exact identities.

    ``det A`` is computed directly, then compared with the sum of Vandermonde
    determinants over one shift per column (weighted by multiplicities) and
    with ``p! e`` times the analogous sum without column 0.  The second
    expansion needs codim = pd, so it fails for tables that are not
    Cohen-Macaulay.
    """
    if table.rank() != 0:
        raise DomainError(f"module has rank {table.rank()} != 0")
    p = table.pd
    det_a = linalg.det(power_sum_matrix(table))
    cols = [table.distinct_degrees(i) for i in range(p + 1)]
    sum_v = sum(
        prod(b for _, b in pick) * _vandermonde([d for d, _ in pick]) for pick in product(*cols)
    )
    sum_u = sum(
        prod(b for _, b in pick) * _vandermonde([d for d, _ in pick]) for pick in product(*cols[1:])
    )
    return det_a == sum_v and det_a == factorial(p) * Fraction(e) * sum_u


# -- curves in P^3 ------------------------------------------------------------------

def _positive(**values):
    for name, v in values.items():
        if not isinstance(v, int) or v < 1:
            raise DomainError(f"{name} must be a positive integer, got {v!r}")


def check_curve(deg: int, m1: int, m2: int, M1: int, M2: int, dim_ka: int) -> BoundReport:
    """m1 m2 / 4 - dim K_A <= deg C <= M1 M2 / 2 - dim K_A, plus the stronger m1 m2 / 2 - dim K_A."""
    _positive(deg=deg, m1=m1, m2=m2, M1=M1, M2=M2)
    if not isinstance(dim_ka, int) or dim_ka < 0:
        raise DomainError(f"dim K_A must be a non-negative integer, got {dim_ka!r}")
    if m1 > M1 or m2 > M2:
        raise DomainError("need m_i <= M_i")
    e = Fraction(deg)
    lower = Fraction(m1 * m2, 4) - dim_ka
    upper = Fraction(M1 * M2, 2) - dim_ka
    strong = Fraction(m1 * m2, 2) - dim_ka
    lh, uh, ls, us = _compare(lower, e, upper)
    if m1 == M1 and m2 == M2:
        cls = PURE
    else:
        cls = QUASI_PURE if m2 >= M1 else GENERAL
    return BoundReport(
        lower, e, upper, lh, uh, ls, us, cls, "curve",
        codim=2, m=(0, m1, m2), M=(0, M1, M2),
        extras={"strong_lower": strong, "strong_lower_holds": strong <= e, "strong_lower_sharp": strong == e},
    )


def check_dubreil(nu_c: int, m1: int, nu_ka: int) -> bool:
    """nu(C) <= m_1(C) + 1 + nu(K_A)."""
    _positive(nu_c=nu_c, m1=m1)
    if not isinstance(nu_ka, int) or nu_ka < 0:
        raise DomainError(f"nu(K_A) must be a non-negative integer, got {nu_ka!r}")
    return nu_c <= m1 + 1 + nu_ka


# -- the family (x0, x1)^t + (F) ----------------------------------------------------

def linear_power_shape(t: int, shift: int = 0) -> list[list[int]]:
    """Ideal-level shifts of (x, y)^t for two independent linear forms, moved up by ``shift``."""
    if t == 0:
        return [[shift]]
    return [[t + shift] * (t + 1), [t + 1 + shift] * t]


@dataclass(frozen=True)
class SharpFamilyReport:
    t: int
    d: int
    degree: int
    e_quotient: int
    dim_ka: int
    shape: ResolutionShape
    m1: int
    m2: int
    M1: int
    M2: int
    half_m1m2: Fraction
    identity_holds: bool

    @property
    def identity(self) -> str:
        return f"{self.half_m1m2} = {self.degree} + {self.dim_ka}"

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "d": self.d,
            "deg_C": self.degree,
            "e_T_over_J": self.e_quotient,
            "dim_K_A": self.dim_ka,
            "m1": self.m1,
            "m2": self.m2,
            "M1": self.M1,
            "M2": self.M2,
            "half_m1_m2": str(self.half_m1m2),
            "identity": self.identity,
            "identity_holds": self.identity_holds,
            "betti": self.shape.to_betti().to_json(4),
        }


def sharp_family(t: int, d: int) -> SharpFamilyReport:
    """Numerics of the curve with ideal (x0, x1)^t + (F), deg F = d.

    Restricting to the plane x2 = x3 = 0 leaves J = (x0, x1)^t, whose
    colength minus deg C = t gives dim K_A.  The resolution of the ideal is
    the mapping cone of ``(x0,x1)^{t-1}(-d) -> (x0,x1)^t + R(-d)``.
    """
    if not isinstance(t, int) or t < 2:
        raise PreconditionError(f"need t >= 2, got {t}")
    if not isinstance(d, int) or d <= t:
        raise PreconditionError(f"need deg F = d >= t + 1, got d = {d} with t = {t}")
    plane = MonomialIdeal.from_exponents([(1, 0), (0, 1)]) ** t
    e_quotient = hilbert_numerator(plane).multiplicity
    degree = t
    dim_ka = e_quotient - degree
    kernel = [[(s, "kernel") for s in lvl] for lvl in linear_power_shape(t - 1, d)]
    middle = [[(s, "middle") for s in lvl] for lvl in linear_power_shape(t)]
    middle[0].append((d, "middle"))
    shape = cone_from_sequence(kernel, middle)
    # a summand can only split against one of equal shift in the adjacent family
    for k in range(1, len(kernel) + 1):
        clash = {s for s, _ in kernel[k - 1]} & {s for s, _ in middle[k - 1]}
        if clash:
            raise InconsistencyError(f"cone may be non-minimal: shared shifts {sorted(clash)}")
    st = shape.to_betti().stats()
    half = Fraction(st.m[1] * st.m[2], 2)
    return SharpFamilyReport(
        t, d, degree, e_quotient, dim_ka, shape,
        st.m[1], st.m[2], st.M[1], st.M[2], half, half == degree + dim_ka,
    )


def sharp_family_identity(t: int) -> bool:
    """t (t + 1) / 2 = t + binomial(t, 2), evaluated exactly."""
    return Fraction(t * (t + 1), 2) == t + comb(t, 2)
