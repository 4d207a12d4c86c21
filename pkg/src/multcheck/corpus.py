"""Seeded random instances and the cross-checks run on each of them.

Every generator takes a ``random.Random``; :func:`instance_rng` derives one
from ``(seed, kind, index)`` so that instance k does not depend on how many
instances were drawn before it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial

from .calculus import (
    ResolutionShape,
    basic_double_link,
    bdl_cancellation_ranks,
    bdl_hypotheses,
    cancel_splittings,
    cone_bdl,
    cone_hypersurface,
)
from .checker import check_cyclic, check_module, check_quasipure, vandermonde_identity
from .determinantal import (
    DegreeMatrix,
    band_minors_ideal,
    degree_nested,
    degree_recursive,
    det_check_conjecture,
    en_betti_table,
    en_extremal_shifts,
)
from .errors import DomainError
from .hilbert import (
    HilbertData,
    hilbert_function,
    hilbert_numerator,
    multiplicity_from_betti,
    poly_add,
    poly_mul,
    poly_shift,
    poly_sub,
    power_sums,
)
from .monomial import Monomial, MonomialIdeal
from .resolution import betti_koszul, betti_taylor

KINDS = ("ideal", "matrix", "bdl", "hypersurface")


@dataclass(frozen=True)
class Limits:
    max_vars: int = 4
    max_gens: int = 8
    max_degree: int = 6
    max_t: int = 5
    max_c: int = 5
    max_entry: int = 4
    taylor_gens: int = 10


def instance_rng(seed: int, kind: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{kind}:{index}")


# -- generators ----------------------------------------------------------------------

def _random_exponent(rng: random.Random, n: int, degree: int, variables) -> tuple[int, ...]:
    e = [0] * n
    for _ in range(degree):
        e[rng.choice(variables)] += 1
    return tuple(e)


def random_ideal(rng: random.Random, limits: Limits = Limits(), variables=None, n=None) -> MonomialIdeal:
    """A proper nonzero monomial ideal; ``variables`` restricts the support.

    Generators are added until the minimal generating set reaches a drawn
    target size (or the attempts run out), so small random draws are not
    swallowed by minimalization.
    """
    if n is None:
        n = rng.randint(min(2, limits.max_vars), limits.max_vars)
    if variables is None:
        variables = list(range(n))
    target = rng.randint(1, limits.max_gens)
    gens: list[tuple[int, ...]] = []
    for _ in range(20 * target):
        g = _random_exponent(rng, n, rng.randint(1, limits.max_degree), variables)
        if not any(_divides(h, g) or _divides(g, h) for h in gens):
            gens.append(g)
            if len(gens) == target:
                break
    return MonomialIdeal(n, gens)


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def random_degree_matrix(rng: random.Random, limits: Limits = Limits()) -> DegreeMatrix:
    """Rejection-sample (b, d) until the grid is valid with entries in 1..max_entry."""
    t = rng.randint(1, limits.max_t)
    c = rng.randint(1, limits.max_c)
    while True:
        b = [0] + sorted(rng.randint(0, limits.max_entry - 1) for _ in range(t - 1))
        d = sorted(rng.randint(1, limits.max_entry + b[-1]) for _ in range(t + c - 1))
        try:
            D = DegreeMatrix(tuple(b), tuple(d))
        except DomainError:
            continue
        if max(max(row) for row in D.a) <= limits.max_entry:
            return D


@dataclass(frozen=True)
class LinkInstance:
    I: MonomialIdeal
    J: MonomialIdeal
    L: Monomial


def example_link() -> LinkInstance:
    """I = (y^9, z^6), J = (x, y^9, z^6), L = x in k[x, y, z]."""
    I = MonomialIdeal(3, [(0, 9, 0), (0, 0, 6)])
    J = MonomialIdeal(3, [(1, 0, 0), (0, 9, 0), (0, 0, 6)])
    return LinkInstance(I, J, Monomial.var(0, 3))


def random_link(rng: random.Random, limits: Limits = Limits()) -> LinkInstance:
    """I avoids x0, J = I + K has codimension one more, L = x0^d."""
    while True:
        n = rng.randint(2, limits.max_vars)
        others = list(range(1, n))
        small = Limits(limits.max_vars, max(1, limits.max_gens // 2), limits.max_degree)
        I = random_ideal(rng, small, others, n)
        extra = random_ideal(rng, Limits(limits.max_vars, 3, limits.max_degree), list(range(n)), n)
        J = I + extra
        if J.is_unit():
            continue
        ci, cj = hilbert_numerator(I).codim, hilbert_numerator(J).codim
        if ci + 1 == cj:
            L = Monomial.var(0, n, rng.randint(1, 2))
            return LinkInstance(I, J, L)


def random_hypersurface(rng: random.Random, limits: Limits = Limits()) -> tuple[MonomialIdeal, int]:
    """I avoiding x0 and the degree d of the section form x0^d."""
    n = rng.randint(2, limits.max_vars)
    I = random_ideal(rng, limits, list(range(1, n)), n)
    return I, rng.randint(1, 3)


# -- per-instance checks ----------------------------------------------------------

def _record(kind, index, data, checks, findings=()):
    return {
        "kind": kind,
        "index": index,
        **data,
        "checks": checks,
        "findings": list(findings),
        "ok": all(checks.values()),
    }


def power_sums_agree(table, hilbert: HilbertData) -> bool:
    c = hilbert.codim
    sums = power_sums(table, c)
    if any(sums[k] for k in range(c)):
        return False
    return (-1) ** c * sums[c] == factorial(c) * hilbert.multiplicity


def check_ideal(I: MonomialIdeal, limits: Limits = Limits(), index: int = 0) -> dict:
    H = hilbert_numerator(I)
    B = betti_koszul(I)
    st = B.stats()
    checks = {"euler_equals_numerator": B.euler_polynomial() == H.numerator}
    if len(I) <= limits.taylor_gens:
        checks["koszul_equals_taylor"] = betti_taylor(I) == B
    checks["power_sums"] = power_sums_agree(B, H)
    checks["hilbert_function"] = all(
        hilbert_function(I, d) == v for d, v in enumerate(H.series(st.regularity + I.n))
    )
    report = check_cyclic(B, H)
    checks["upper_bound"] = report.upper_holds
    cm = report.cohen_macaulay
    if cm:
        checks["lower_bound"] = bool(report.lower_holds)
        checks["sharp_iff_pure"] = report.lower_sharp == st.is_pure == report.upper_sharp
        checks["vandermonde"] = vandermonde_identity(B, H.multiplicity)
        if st.is_quasi_pure:
            qp = check_quasipure(B, I.n)
            checks["quasi_pure_bounds"] = bool(qp.lower_holds and qp.upper_holds)
            checks["quasi_pure_sharp_iff_pure"] = qp.lower_sharp == st.is_pure == qp.upper_sharp
    checks["module_upper_matches"] = check_module(B, I.n).upper_value == report.upper_value
    data = {
        "ideal": I.format(),
        "vars": I.n,
        "codim": H.codim,
        "e": H.multiplicity,
        "cohen_macaulay": cm,
        "classification": report.classification,
        "betti": B.to_json(I.n),
    }
    return _record("ideal", index, data, checks, report.findings)


def check_matrix(D: DegreeMatrix, index: int = 0) -> dict:
    nested, recursive = degree_nested(D), degree_recursive(D)
    table = en_betti_table(D)
    c, e = multiplicity_from_betti(table, D.c)
    m, M = en_extremal_shifts(D)
    st = table.stats()
    report = det_check_conjecture(D)
    hd = HilbertData.from_numerator(table.euler_polynomial(), D.c)
    checks = {
        "nested_equals_recursive": nested == recursive,
        "nested_equals_power_sums": c == D.c and e == nested,
        "extremal_shifts": (0,) + m == st.m and (0,) + M == st.M,
        "numerator_codim": hd.codim == D.c and hd.multiplicity == nested,
        "bounds_hold": report.lower_holds and report.upper_holds,
        "sharpness_equivalence": report.equivalence_holds,
    }
    if D.c <= 2:
        band = band_minors_ideal(D)
        checks["band_ideal_degree"] = hilbert_numerator(band).multiplicity == nested
        checks["band_ideal_table"] = betti_koszul(band) == table
    data = {"matrix": D.to_json(), "degree": nested, "m": list(m), "M": list(M)}
    return _record("matrix", index, data, checks)


def hilbert_additivity(I, J, J1, d) -> bool:
    """num(J_1) = t^d num(J) + (1 - t^d) num(I)."""
    nI, nJ, nJ1 = (hilbert_numerator(x).numerator for x in (I, J, J1))
    rhs = poly_add(poly_shift(nJ, d), poly_mul(poly_sub((1,), poly_shift((1,), d)), nI))
    return nJ1 == rhs


def check_link(inst: LinkInstance, index: int = 0) -> dict:
    link = basic_double_link(inst.I, inst.J, inst.L)
    d = link.d
    BI, BJ, BJ1 = (betti_koszul(x) for x in (link.I, link.J, link.J1))
    cone = cone_bdl(ResolutionShape.from_betti(BI), ResolutionShape.from_betti(BJ), d)
    exact = cancel_splittings(cone, bdl_cancellation_ranks(link.I, link.J, d))
    greedy = cancel_splittings(cone)
    HI, HJ, HJ1 = (hilbert_numerator(x) for x in (link.I, link.J, link.J1))
    c = HI.codim
    sI, sJ1 = BI.stats(), BJ1.stats()
    top = min(c, BI.pd, BJ1.pd)
    checks = {
        "cone_exact_equals_direct": exact.to_betti() == BJ1,
        "hilbert_additivity": hilbert_additivity(link.I, link.J, link.J1, d),
        "multiplicity_additivity": HJ1.multiplicity == d * HI.multiplicity + HJ.multiplicity,
        "no_split_of_F": all(sJ1.m[i] <= sI.m[i] and sJ1.M[i] >= sI.M[i] for i in range(1, top + 1)),
    }
    data = {
        "I": link.I.format(),
        "J": link.J.format(),
        "L": link.L.format(),
        "J1": link.J1.format(),
        "greedy_equals_direct": greedy.to_betti() == BJ1,
    }
    if BI.pd >= c and BJ.pd >= c + 1 and BJ1.pd >= c + 1:
        hyp = bdl_hypotheses(sI, BJ.stats(), sJ1, d, c)
        data["hypotheses"] = hyp.to_json()
        data["condition_3_3_all"] = all(hyp.upper_3_3)
    return _record("bdl", index, data, checks)


def check_hypersurface(I: MonomialIdeal, d: int, index: int = 0) -> dict:
    F = Monomial.var(0, I.n, d)
    J1 = I + MonomialIdeal(I.n, [F.exponents])
    BI = betti_koszul(I)
    shape = cone_hypersurface(ResolutionShape.from_betti(BI), d)
    HI, HJ1 = hilbert_numerator(I), hilbert_numerator(J1)
    checks = {
        "cone_equals_direct": shape.to_betti() == betti_koszul(J1),
        "multiplicity_scales": HJ1.codim == HI.codim + 1 and HJ1.multiplicity == d * HI.multiplicity,
    }
    data = {"I": I.format(), "d": d}
    return _record("hypersurface", index, data, checks)


def run_instance(seed: int, kind: str, index: int, limits: Limits = Limits()) -> dict:
    rng = instance_rng(seed, kind, index)
    if kind == "ideal":
        return check_ideal(random_ideal(rng, limits), limits, index)
    if kind == "matrix":
        return check_matrix(random_degree_matrix(rng, limits), index)
    if kind == "bdl":
        inst = example_link() if index == 0 else random_link(rng, limits)
        return check_link(inst, index)
    if kind == "hypersurface":
        I, d = random_hypersurface(rng, limits)
        return check_hypersurface(I, d, index)
    raise ValueError(f"unknown corpus kind {kind!r}")


def corpus_kind(kind: str, index: int) -> str:
    """Resolve 'mixed' into a rotation over all instance kinds."""
    return KINDS[index % len(KINDS)] if kind == "mixed" else kind
