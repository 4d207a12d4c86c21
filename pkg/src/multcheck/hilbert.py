"""Hilbert series of monomial quotients and multiplicity from Betti data.

Polynomials in ``t`` are tuples of integer coefficients, lowest degree first,
with trailing zeros stripped (the zero polynomial is ``()``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import TYPE_CHECKING, Sequence

from .errors import DomainError, InconsistencyError
from .monomial import MonomialIdeal, _minimal_exponents

if TYPE_CHECKING:
    from .resolution import BettiTable

Poly = tuple[int, ...]


# -- polynomial helpers ------------------------------------------------------

def poly_trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(p: Sequence[int], q: Sequence[int]) -> Poly:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p: Sequence[int]) -> Poly:
    return tuple(-c for c in p)


def poly_sub(p: Sequence[int], q: Sequence[int]) -> Poly:
    return poly_add(p, poly_neg(q))


def poly_mul(p: Sequence[int], q: Sequence[int]) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_shift(p: Sequence[int], k: int) -> Poly:
    """Multiply by t^k."""
    if not p:
        return ()
    return (0,) * k + tuple(p)


def poly_eval(p: Sequence[int], x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def one_minus_t_power(k: int) -> Poly:
    """(1 - t)^k."""
    return tuple((-1) ** i * comb(k, i) for i in range(k + 1))


def divide_one_minus_t(p: Sequence[int]) -> tuple[Poly, int]:
    """Return (q, r) with p = q * (1 - t) + r, r a constant."""
    # p(t) = q(t)(1 - t) + r;  q_i = sum_{j <= i} p_j, r = p(1)
    q = []
    acc = 0
    for c in p:
        acc += c
        q.append(acc)
    r = q.pop() if q else 0
    return poly_trim(q), r


def series_coefficients(numerator: Sequence[int], n: int, upto: int) -> list[int]:
    """Coefficients of numerator / (1 - t)^n in degrees 0..upto."""
    out = []
    for d in range(upto + 1):
        total = 0
        for i, c in enumerate(numerator):
            if c and i <= d:
                total += c * comb(d - i + n - 1, n - 1) if n > 0 else (c if i == d else 0)
        out.append(total)
    return out


# -- Hilbert data ------------------------------------------------------------

@dataclass(frozen=True)
class HilbertData:
    """Hilbert series of R/I written as ``numerator / (1 - t)^ambient_n``.

    For the unit ideal the quotient is zero: ``numerator`` is ``()``,
    ``is_zero_module`` is set, ``dim`` is -1 and ``multiplicity`` is 0.
    """

    numerator: Poly
    ambient_n: int
    dim: int
    codim: int
    multiplicity: int
    h_vector: Poly
    is_zero_module: bool = False

    @classmethod
    def from_numerator(cls, numerator: Sequence[int], n: int) -> HilbertData:
        numerator = poly_trim(numerator)
        if not numerator:
            return cls((), n, -1, n + 1, 0, (), True)
        h = numerator
        codim = 0
        while True:
            q, r = divide_one_minus_t(h)
            if r != 0:
                break
            h = q
            codim += 1
        if codim > n:
            raise InconsistencyError(f"numerator vanishes to order {codim} > {n} at t = 1")
        e = poly_eval(h, 1)
        return cls(numerator, n, n - codim, codim, e, h)

    def series(self, upto: int) -> list[int]:
        return series_coefficients(self.numerator, self.ambient_n, upto)

    def to_json(self) -> dict:
        return {
            "numerator": list(self.numerator),
            "vars": self.ambient_n,
            "dim": self.dim,
            "codim": self.codim,
            "multiplicity": self.multiplicity,
            "h_vector": list(self.h_vector),
            "zero_module": self.is_zero_module,
        }


def _pairwise_coprime(exps) -> bool:
    seen = [False] * len(exps[0])
    for g in exps:
        for i, a in enumerate(g):
            if a:
                if seen[i]:
                    return False
        for i, a in enumerate(g):
            if a:
                seen[i] = True
    return True


def _choose_pivot(exps) -> int:
    n = len(exps[0])
    counts = [sum(1 for g in exps if g[i]) for i in range(n)]
    var = max(range(n), key=lambda i: (counts[i], -i))
    return max(range(len(exps)), key=lambda k: (exps[k][var], sum(exps[k]), -k))


@lru_cache(maxsize=65536)
def _numerator(exps: tuple[tuple[int, ...], ...]) -> Poly:
    # exps is a minimal generating set (any order)
    if not exps:
        return (1,)
    if any(sum(g) == 0 for g in exps):
        return ()
    if len(exps) == 1 or _pairwise_coprime(exps):
        out: Poly = (1,)
        for g in exps:
            out = poly_mul(out, poly_sub((1,), poly_shift((1,), sum(g))))
        return out
    k = _choose_pivot(exps)
    g = exps[k]
    rest = exps[:k] + exps[k + 1:]
    colon = _minimal_exponents(tuple(max(a - b, 0) for a, b in zip(h, g)) for h in rest)
    return poly_sub(_numerator(rest), poly_shift(_numerator(colon), sum(g)))


def hilbert_numerator(ideal: MonomialIdeal) -> HilbertData:
    """Hilbert series numerator of R/I by pivot splitting on generators.

    ``N(I) = N(I') - t^deg(g) N(I' : g)`` where ``I'`` drops generator ``g``.
    """
    return HilbertData.from_numerator(_numerator(ideal.exponents), ideal.n)


def hilbert_function(ideal: MonomialIdeal, d: int) -> int:
    """dim_k (R/I)_d by counting standard monomials of degree d."""
    if d < 0:
        return 0
    n = ideal.n
    gens = ideal.exponents
    count = 0

    def rec(i, remaining, prefix):
        nonlocal count
        if i == n - 1:
            e = prefix + [remaining]
            if not any(all(a <= b for a, b in zip(g, e)) for g in gens):
                count += 1
            return
        for a in range(remaining + 1):
            rec(i + 1, remaining - a, prefix + [a])

    if n == 0:
        return 1 if d == 0 and not gens else 0
    rec(0, d, [])
    return count


# -- multiplicity from Betti numbers ----------------------------------------

def power_sums(table: BettiTable, kmax: int) -> list[int]:
    """``P_k = sum_i (-1)^i sum_j beta_ij j^k`` for k = 0..kmax."""
    return [
        sum((-1) ** i * beta * j**k for (i, j), beta in table.items())
        for k in range(kmax + 1)
    ]


def multiplicity_from_betti(table: BettiTable, n: int) -> tuple[int, Fraction]:
    """Codimension and multiplicity of a rank-0 module from its Betti table.

    The codimension is the least k >= 1 with a nonvanishing power sum P_k,
    and e = (-1)^c P_c / c!.
    """
    sums = power_sums(table, n)
    if sums[0] != 0:
        raise DomainError(f"module has rank {sums[0]} != 0; multiplicity bounds need a torsion module")
    for k in range(1, n + 1):
        if sums[k] != 0:
            e = Fraction((-1) ** k * sums[k], factorial(k))
            if e.denominator != 1 or e <= 0:
                raise InconsistencyError(
                    f"power sums give e = {e}; the table is not a resolution of a rank-0 module"
                )
            return k, e
    raise DomainError(f"all power sums P_1..P_{n} vanish; the table is degenerate")
