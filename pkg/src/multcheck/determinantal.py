"""Numerics of standard determinantal ideals.

A homogeneous t x (t+c-1) matrix with source twists ``d`` and target twists
``b`` is summarized by its degree grid ``a[i][j] = d[i+j-1] - b[i]``
(1-based, j = 1..c).  Everything here is computed from that grid alone.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb, factorial, prod
from typing import Sequence

from .errors import CapacityError, DomainError, InputError, guard_scale
from .monomial import MonomialIdeal
from .resolution import BettiTable

EN_MAX_SUMMANDS = 200_000


@dataclass(frozen=True)
class DegreeMatrix:
    b: tuple[int, ...]
    d: tuple[int, ...]

    def __post_init__(self):
        b = tuple(sorted(int(x) for x in self.b))
        d = tuple(sorted(int(x) for x in self.d))
        if not b:
            raise DomainError("need at least one row (t >= 1)")
        if len(d) < len(b):
            raise DomainError(f"need t + c - 1 >= t columns with c >= 1, got {len(d)} for t = {len(b)}")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)
        a = self.a
        for i, row in enumerate(a, start=1):
            for j, v in enumerate(row, start=1):
                if v < 1:
                    raise DomainError(f"a[{i}][{j}] = {v}; entries of the band must have positive degree")
        for i in range(self.t):
            for j in range(self.c):
                if j + 1 < self.c and a[i][j] > a[i][j + 1]:
                    raise DomainError(f"ordering violated: a[{i+1}][{j+1}] > a[{i+1}][{j+2}]")
                if i > 0 and a[i - 1][j] > a[i][j]:
                    raise DomainError(f"ordering violated: a[{i}][{j+1}] > a[{i+1}][{j+1}]")

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence[int]]) -> DegreeMatrix:
        """Rebuild (b, d) from an a-grid with b = 0 and validate consistency."""
        rows = [list(r) for r in grid]
        if not rows or not rows[0]:
            raise DomainError("empty degree grid")
        c = len(rows[0])
        if any(len(r) != c for r in rows):
            raise InputError("degree grid rows must all have length c")
        t = len(rows)
        d = rows[0] + [rows[i][c - 1] for i in range(1, t)]
        for i in range(t):
            for j in range(c):
                if rows[i][j] != d[i + j]:
                    raise DomainError(
                        f"grid entry a[{i+1}][{j+1}] = {rows[i][j]} is inconsistent with a[i][j] = d[i+j-1] - b[i]"
                    )
        return cls((0,) * t, tuple(d))

    @classmethod
    def ones(cls, t: int, c: int, q: int = 1) -> DegreeMatrix:
        return cls((0,) * t, (q,) * (t + c - 1))

    @property
    def t(self) -> int:
        return len(self.b)

    @property
    def c(self) -> int:
        return len(self.d) - len(self.b) + 1

    @property
    def a(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(self.d[i + j] - self.b[i] for j in range(self.c)) for i in range(self.t)
        )

    def is_uniform(self) -> bool:
        return len({v for row in self.a for v in row}) == 1

    def to_json(self) -> dict:
        return {"b": list(self.b), "d": list(self.d), "a": [list(r) for r in self.a]}


def load_degree_matrix(text: str) -> DegreeMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"degree matrix JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("degree matrix JSON must be an object")
    try:
        if "a" in data:
            return DegreeMatrix.from_grid(data["a"])
        return DegreeMatrix(tuple(data["b"]), tuple(data["d"]))
    except KeyError as exc:
        raise InputError(f"degree matrix JSON is missing {exc}") from None
    except TypeError as exc:
        raise InputError(f"degree matrix JSON: {exc}") from None


def degree_nested(D: DegreeMatrix) -> int:
    """Closed nested-sum formula for the degree of the ideal of maximal minors.

    sum_{i_c <= t} a[i_c][c] { sum_{i_{c-1} <= i_c} a[i_{c-1}][c-1] { ...
    sum_{i_1 <= i_2} a[i_1][1] } }, so for c = 1 it is the plain column sum.
    """
    a = D.a

    @lru_cache(maxsize=None)
    def inner(j: int, upper: int) -> int:
        # column j (1-based), rows 1..upper
        if j == 1:
            return sum(a[i][0] for i in range(upper))
        return sum(a[i - 1][j - 1] * inner(j - 1, i) for i in range(1, upper + 1))

    return inner(D.c, D.t)


def degree_recursive(D: DegreeMatrix) -> int:
    """Degree via the basic double link recursion on the grid.

    Dropping the last column of the matrix leaves the t x (c-1) grid; dropping
    the last row of that leaves the (t-1) x c grid, and
    ``deg(t, c) = a[t][c] * deg(t, c-1) + deg(t-1, c)``.
    """
    a = D.a

    @lru_cache(maxsize=None)
    def deg(t: int, c: int) -> int:
        if t == 1:
            return prod(a[0][:c])
        if c == 1:
            return sum(a[i][0] for i in range(t))
        return a[t - 1][c - 1] * deg(t, c - 1) + deg(t - 1, c)

    return deg(D.t, D.c)


def en_extremal_shifts(D: DegreeMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Smallest and largest shifts m_1..m_c, M_1..M_c of the Eagon-Northcott complex.

    m_1 is the first column sum and m_i = m_{i-1} + a[t][i]; M_1 is the last
    column sum and M_i = M_{i-1} + a[1][c+1-i].
    """
    a, t, c = D.a, D.t, D.c
    m = [sum(a[i][0] for i in range(t))]
    M = [sum(a[i][c - 1] for i in range(t))]
    for i in range(2, c + 1):
        m.append(m[-1] + a[t - 1][i - 1])
        M.append(M[-1] + a[0][c - i])
    return tuple(m), tuple(M)


def en_rank(t: int, c: int, i: int) -> int:
    """Rank of the i-th Eagon-Northcott module, 1 <= i <= c."""
    return comb(t + c - 1, t + i - 1) * comb(t + i - 2, i - 1)


def en_betti_table(D: DegreeMatrix) -> BettiTable:
    """Graded Betti table of R/I from the Eagon-Northcott complex.

    Level i has one summand for each (t+i-1)-subset S of the columns and each
    multiset H of i-1 rows, in degree ``sum_{S} d - sum_{all} b - sum_{H} b``.
    """
    t, c = D.t, D.c
    size = sum(en_rank(t, c, i) for i in range(1, c + 1))
    if size > EN_MAX_SUMMANDS * guard_scale():
        raise CapacityError(f"Eagon-Northcott complex has {size} summands, above the guard")
    base = sum(D.b)
    acc: Counter = Counter({(0, 0): 1})
    for i in range(1, c + 1):
        col_sums = Counter(sum(S) for S in combinations(D.d, t + i - 1))
        row_sums = Counter(sum(H) for H in combinations_with_replacement(D.b, i - 1))
        for cs, nc in col_sums.items():
            for rs, nr in row_sums.items():
                acc[(i, cs - base - rs)] += nc * nr
    return BettiTable(acc)


def band_minors_ideal(D: DegreeMatrix) -> MonomialIdeal:
    """Maximal minors of the band matrix with entries x_j^{a[i][j]}, for c <= 2.

    With at most two variables in the band every maximal minor is a single
    monomial, so this gives an honest monomial model of I(A).
    """
    if D.c > 2:
        raise DomainError("band minors are monomial only for c <= 2")
    t, c, a = D.t, D.c, D.a
    ncols = t + c - 1

    def entry(i, col):
        j = col - i
        if 0 <= j < c:
            e = [0] * c
            e[j] = a[i][j]
            return tuple(e)
        return None

    gens = []
    for cols in combinations(range(ncols), t):
        # block-triangular: the only nonzero term of the expansion
        e = [0] * c
        ok = True
        perm = _support_permutation(t, cols, entry)
        if perm is None:
            ok = False
        else:
            for i, col in enumerate(perm):
                e = [u + v for u, v in zip(e, entry(i, col))]
        if ok:
            gens.append(tuple(e))
    return MonomialIdeal(c, gens)


def _support_permutation(t, cols, entry):
    """The unique row -> column matching through nonzero entries, if any."""
    found = []

    def rec(i, used, acc):
        if len(found) > 1:
            return
        if i == t:
            found.append(list(acc))
            return
        for col in cols:
            if col not in used and entry(i, col) is not None:
                rec(i + 1, used | {col}, acc + [col])

    rec(0, frozenset(), [])
    if len(found) > 1:
        raise DomainError("minor has more than one term")
    return found[0] if found else None


@dataclass(frozen=True)
class DeterminantalReport:
    degree: int
    m: tuple[int, ...]
    M: tuple[int, ...]
    lower: Fraction
    upper: Fraction
    lower_holds: bool
    upper_holds: bool
    lower_sharp: bool
    upper_sharp: bool
    pure: bool
    uniform: bool
    equivalence_holds: bool

    def to_json(self) -> dict:
        return {
            "context": "determinantal",
            "degree": str(self.degree),
            "m": list(self.m),
            "M": list(self.M),
            "lower": str(self.lower),
            "upper": str(self.upper),
            "lower_holds": self.lower_holds,
            "upper_holds": self.upper_holds,
            "lower_sharp": self.lower_sharp,
            "upper_sharp": self.upper_sharp,
            "pure": self.pure,
            "uniform": self.uniform,
            "equivalence_holds": self.equivalence_holds,
        }


def det_check_conjecture(D: DegreeMatrix) -> DeterminantalReport:
    """Both multiplicity bounds for I(A) and the sharpness equivalences.

    Equality below, equality above and purity must agree; for c >= 2 they
    must also agree with all entries of the grid being equal.  A principal
    ideal (c = 1) is always pure, whatever its grid.
    """
    e = degree_nested(D)
    m, M = en_extremal_shifts(D)
    c = D.c
    lower = Fraction(prod(m), factorial(c))
    upper = Fraction(prod(M), factorial(c))
    pure = m == M
    uniform = D.is_uniform()
    flags = {lower == e, upper == e, pure}
    if c >= 2:
        flags.add(uniform)
    return DeterminantalReport(
        degree=e, m=m, M=M, lower=lower, upper=upper,
        lower_holds=lower <= e, upper_holds=e <= upper,
        lower_sharp=lower == e, upper_sharp=upper == e,
        pure=pure, uniform=uniform, equivalence_holds=len(flags) == 1,
    )
