"""Graded Betti tables of monomial quotients R/I over a field of characteristic 0.

Two independent algorithms are provided:

* :func:`betti_koszul` reads multigraded Betti numbers off the reduced
  homology of upper Koszul simplicial complexes, one per element of the lcm
  lattice of the generators.
* :func:`betti_taylor` builds the Taylor resolution and minimizes it by
  cancelling unit entries of its differentials.

Tables are always stored for the cyclic module R/I, so ``beta_{0,0} = 1``.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from . import linalg
from .errors import CapacityError, DomainError, InputError, ParseError, guard_scale
from .monomial import MonomialIdeal

TAYLOR_MAX_GENERATORS = 12


@dataclass(frozen=True)
class ResolutionStats:
    m: tuple[int, ...]
    M: tuple[int, ...]
    is_pure: bool
    is_quasi_pure: bool
    regularity: int

    @property
    def pd(self) -> int:
        return len(self.m) - 1


class BettiTable:
    """Map ``(i, j) -> beta_{ij}`` with positive entries and no homological gaps."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[tuple[int, int], int] | Iterable[tuple[int, int, int]]):
        if isinstance(entries, Mapping):
            items = [(i, j, b) for (i, j), b in entries.items()]
        else:
            items = [tuple(e) for e in entries]
        acc: Counter = Counter()
        for i, j, b in items:
            if not all(isinstance(v, int) for v in (i, j, b)):
                raise InputError(f"Betti entry ({i}, {j}, {b}) is not integral")
            if i < 0:
                raise InputError(f"negative homological index {i}")
            if b < 0:
                raise InputError(f"negative Betti number at ({i}, {j})")
            acc[(i, j)] += b
        entries = {k: v for k, v in sorted(acc.items()) if v}
        if not entries:
            raise InputError("empty Betti table")
        levels = {i for i, _ in entries}
        missing = [i for i in range(max(levels) + 1) if i not in levels]
        if missing:
            raise InputError(f"Betti table has no entries in homological degree {missing[0]}")
        object.__setattr__(self, "_entries", entries)

    def __setattr__(self, key, value):
        raise AttributeError("BettiTable is immutable")

    # -- access --

    def items(self):
        return self._entries.items()

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self._entries)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._entries.get(key, 0)

    def get(self, i: int, j: int) -> int:
        return self._entries.get((i, j), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(tuple(self._entries.items()))

    def __repr__(self) -> str:
        return f"BettiTable({self._entries!r})"

    @property
    def pd(self) -> int:
        return max(i for i, _ in self._entries)

    def degrees(self, i: int) -> list[int]:
        """Shifts in homological degree i, listed with multiplicity."""
        return [j for (k, j), b in self._entries.items() if k == i for _ in range(b)]

    def distinct_degrees(self, i: int) -> list[tuple[int, int]]:
        return [(j, b) for (k, j), b in self._entries.items() if k == i]

    def total(self, i: int) -> int:
        return sum(b for (k, _), b in self._entries.items() if k == i)

    def rank(self) -> int:
        return sum((-1) ** i * b for (i, _), b in self._entries.items())

    def euler_polynomial(self) -> tuple[int, ...]:
        """``sum_i (-1)^i sum_j beta_ij t^j`` (requires non-negative shifts)."""
        top = max(j for _, j in self._entries)
        if min(j for _, j in self._entries) < 0:
            raise DomainError("negative shifts; use euler_laurent")
        coeffs = [0] * (top + 1)
        for (i, j), b in self._entries.items():
            coeffs[j] += (-1) ** i * b
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def is_cyclic(self) -> bool:
        return [(j, b) for (i, j), b in self._entries.items() if i == 0] == [(0, 1)]

    def view(self, offset: int) -> BettiTable:
        """Same data with homological indices moved by ``offset``.

        ``view(-1)`` turns the table of R/I into the table of the ideal I
        (dropping the R term), the convention in which ``m_i`` counts the
        (i-1)-st syzygy module.
        """
        moved = {(i + offset, j): b for (i, j), b in self._entries.items() if i + offset >= 0}
        return BettiTable(moved)

    def stats(self) -> ResolutionStats:
        pd = self.pd
        m = tuple(min(j for (k, j) in self._entries if k == i) for i in range(pd + 1))
        M = tuple(max(j for (k, j) in self._entries if k == i) for i in range(pd + 1))
        pure = m == M
        quasi = all(m[i] >= M[i - 1] for i in range(1, pd + 1))
        reg = max(j - i for (i, j) in self._entries)
        return ResolutionStats(m, M, pure, quasi, reg)

    # -- serialization --

    def to_json(self, n: int | None = None) -> dict:
        data = {"pd": self.pd, "entries": [[i, j, b] for (i, j), b in self._entries.items()]}
        if n is not None:
            data["vars"] = n
        return data

    @classmethod
    def from_json(cls, data: dict) -> BettiTable:
        try:
            return cls([tuple(e) for e in data["entries"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed Betti JSON: {exc}") from None

    def to_text(self, n: int) -> str:
        lines = [f"pd {self.pd} vars {n}"]
        lines += [f"{i} {j} {b}" for (i, j), b in self._entries.items()]
        return "\n".join(lines) + "\n"

    def format(self) -> str:
        """Conventional triangular layout: columns i, rows j - i."""
        pd = self.pd
        rows = sorted({j - i for (i, j) in self._entries})
        cells = [[str(self.total(i)) for i in range(pd + 1)]]
        labels = ["total:"]
        for r in range(rows[0], rows[-1] + 1):
            labels.append(f"{r}:")
            cells.append([str(self.get(i, i + r)) if self.get(i, i + r) else "." for i in range(pd + 1)])
        width = max(len(c) for row in cells for c in row)
        width = max(width, len(str(pd)))
        lw = max(len(s) for s in labels)
        out = [" " * lw + " " + " ".join(str(i).rjust(width) for i in range(pd + 1))]
        for label, row in zip(labels, cells):
            out.append(label.rjust(lw) + " " + " ".join(c.rjust(width) for c in row))
        return "\n".join(out)

    __str__ = format


def parse_betti(text: str, path: str = "<input>") -> tuple[BettiTable, int]:
    """Parse the ``pd P vars N`` / ``i j beta`` text format."""
    header = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        words = content.split()
        col = len(content) - len(content.lstrip()) + 1
        if header is None:
            if len(words) != 4 or words[0] != "pd" or words[2] != "vars":
                raise ParseError("header must be 'pd P vars N'", path, lineno, col)
            try:
                header = (int(words[1]), int(words[3]))
            except ValueError:
                raise ParseError("pd and vars must be integers", path, lineno, col) from None
            continue
        if len(words) != 3:
            raise ParseError("expected 'i j beta'", path, lineno, col)
        try:
            i, j, b = (int(w) for w in words)
        except ValueError:
            raise ParseError("entries must be integers", path, lineno, col) from None
        if i < 0 or b < 0:
            raise ParseError("negative index or Betti number", path, lineno, col)
        entries.append((i, j, b))
    if header is None:
        raise ParseError("missing 'pd P vars N' header", path, 1, 1)
    try:
        table = BettiTable(entries)
    except InputError as exc:
        raise ParseError(str(exc), path, 1, 1) from None
    if table.pd != header[0]:
        raise ParseError(f"header says pd {header[0]} but entries reach {table.pd}", path, 1, 1)
    return table, header[1]


def load_betti_json(text: str) -> tuple[BettiTable, int | None]:
    data = json.loads(text)
    return BettiTable.from_json(data), data.get("vars")


# -- upper Koszul simplicial complexes ---------------------------------------

def _in_ideal(gens, e) -> bool:
    return any(all(a <= b for a, b in zip(g, e)) for g in gens)


def upper_koszul_faces(gens, m: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Faces S (sorted variable tuples) with m / x^S in the ideal."""
    support = [v for v, a in enumerate(m) if a > 0]
    faces = []
    for size in range(len(support) + 1):
        for S in combinations(support, size):
            e = list(m)
            for v in S:
                e[v] -= 1
            if _in_ideal(gens, e):
                faces.append(S)
    return faces


def _boundary(faces_k, faces_km1):
    """Boundary matrix C_k -> C_{k-1} as rows indexed by faces_km1."""
    index = {f: r for r, f in enumerate(faces_km1)}
    mat = [[0] * len(faces_k) for _ in faces_km1]
    for c, f in enumerate(faces_k):
        for pos in range(len(f)):
            g = f[:pos] + f[pos + 1:]
            mat[index[g]][c] = (-1) ** pos
    return mat


def _by_size(faces):
    groups = defaultdict(list)
    for f in faces:
        groups[len(f)].append(f)
    return groups


def reduced_homology_ranks(faces) -> dict[int, int]:
    """dim H~_k for k >= -1 of the complex with the given (subset-closed) faces."""
    if not faces:
        return {}
    groups = _by_size(faces)
    top = max(groups)
    ranks = {}
    for size in range(1, top + 1):
        ranks[size] = linalg.rank(_boundary(groups[size], groups[size - 1]))
    out = {}
    for size in range(0, top + 1):
        k = size - 1
        h = len(groups[size]) - ranks.get(size, 0) - ranks.get(size + 1, 0)
        if h:
            out[k] = h
    return out


def multigraded_betti(ideal: MonomialIdeal) -> dict[tuple[int, tuple[int, ...]], int]:
    """``beta_{i, m}(R/I)`` for i >= 1 keyed by (i, exponent vector)."""
    gens = ideal.exponents
    out = {}
    for m in sorted(ideal.lcm_lattice()):
        for k, h in reduced_homology_ranks(upper_koszul_faces(gens, m)).items():
            out[(k + 2, m)] = h
    return out


def _require_proper_nonzero(ideal: MonomialIdeal) -> None:
    if ideal.is_zero():
        raise DomainError("the zero ideal has no interesting resolution")
    if ideal.is_unit():
        raise DomainError("the unit ideal has zero quotient")


def betti_koszul(ideal: MonomialIdeal) -> BettiTable:
    """Betti table of R/I from upper Koszul complexes over the lcm lattice."""
    _require_proper_nonzero(ideal)
    acc: Counter = Counter({(0, 0): 1})
    for (i, m), h in multigraded_betti(ideal).items():
        acc[(i, sum(m))] += h
    return BettiTable(acc)


def tor_map_ranks(small: MonomialIdeal, big: MonomialIdeal) -> Counter:
    """Ranks of Tor_i(R/I, k) -> Tor_i(R/J, k) induced by I in J, keyed by (i, degree).

    Multidegree by multidegree this is the map on reduced homology induced by
    the inclusion of upper Koszul complexes K^m(I) in K^m(J).
    """
    if small.n != big.n:
        raise InputError("ambient mismatch")
    if not small.is_subset(big):
        raise DomainError("first ideal must be contained in the second")
    gi, gj = small.exponents, big.exponents
    out: Counter = Counter()
    for m in sorted(small.lcm_lattice()):
        fa = upper_koszul_faces(gi, m)
        if not fa:
            continue
        fb = upper_koszul_faces(gj, m)
        ga, gb = _by_size(fa), _by_size(fb)
        for size in sorted(ga):
            # cycles of A in C_size(B) coordinates
            if size > 0:
                da = _boundary(ga[size], ga[size - 1])
                cycles = linalg.nullspace(da, len(ga[size]))
            else:
                cycles = [[Fraction(1)]]
            if not cycles:
                continue
            bindex = {f: c for c, f in enumerate(gb[size])}
            embedded = []
            for v in cycles:
                w = [Fraction(0)] * len(gb[size])
                for f, x in zip(ga[size], v):
                    w[bindex[f]] = x
                embedded.append(w)
            if gb.get(size + 1):
                db = _boundary(gb[size + 1], gb[size])
                boundaries = [list(col) for col in zip(*db)]
            else:
                boundaries = []
            r = linalg.rank(embedded + boundaries) - linalg.rank(boundaries)
            if r:
                out[(size + 1, sum(m))] += r
    return out


# -- Taylor resolution -------------------------------------------------------

def taylor_limit() -> int:
    return TAYLOR_MAX_GENERATORS + (guard_scale().bit_length() - 1)


def betti_taylor(ideal: MonomialIdeal) -> BettiTable:
    """Betti table of R/I by minimizing the Taylor resolution.

    Basis elements are subsets of the minimal generators, placed in degree
    ``deg lcm``; the differential is the signed face map.  Every entry whose
    source and target share an lcm is a unit and gets cancelled by Gaussian
    elimination until none are left.
    """
    _require_proper_nonzero(ideal)
    gens = ideal.exponents
    r = len(gens)
    if r > taylor_limit():
        raise CapacityError(f"Taylor complex on {r} generators exceeds the guard of {taylor_limit()}")

    lcm_of: dict[tuple[int, ...], tuple[int, ...]] = {(): tuple(0 for _ in range(ideal.n))}
    for size in range(1, r + 1):
        for S in combinations(range(r), size):
            lcm_of[S] = tuple(max(a, b) for a, b in zip(lcm_of[S[:-1]], gens[S[-1]]))

    # cols[k][sigma] = {tau: coeff}, rows[k][tau] = {sigma: coeff} for d_k: level k -> k-1
    alive = [set(combinations(range(r), k)) for k in range(r + 1)]
    cols = [dict() for _ in range(r + 1)]
    rows = [defaultdict(dict) for _ in range(r + 1)]
    for k in range(1, r + 1):
        for S in alive[k]:
            col = {}
            for pos in range(k):
                T = S[:pos] + S[pos + 1:]
                c = Fraction((-1) ** pos)
                col[T] = c
                rows[k][T][S] = c
            cols[k][S] = col

    for k in range(1, r + 1):
        changed = True
        while changed:
            changed = False
            for S in sorted(alive[k]):
                if S not in alive[k]:
                    continue
                unit = next(
                    (T for T, c in cols[k][S].items() if c != 0 and lcm_of[T] == lcm_of[S]),
                    None,
                )
                if unit is None:
                    continue
                _cancel(k, S, unit, cols, rows, alive)
                changed = True

    acc: Counter = Counter()
    for k in range(r + 1):
        for S in alive[k]:
            acc[(k, sum(lcm_of[S]))] += 1
    return BettiTable(acc)


def _cancel(k, sigma, tau, cols, rows, alive):
    """Gaussian elimination of the unit entry d_k[tau][sigma]."""
    pivot = cols[k][sigma][tau]
    column = {T: c for T, c in cols[k][sigma].items() if T != tau and c != 0}
    row = {S: c for S, c in rows[k][tau].items() if S != sigma and c != 0}
    for S2, c_row in row.items():
        col2 = cols[k][S2]
        for T2, c_col in column.items():
            value = col2.get(T2, 0) - c_col * c_row / pivot
            if value:
                col2[T2] = value
                rows[k][T2][S2] = value
            else:
                col2.pop(T2, None)
                rows[k][T2].pop(S2, None)
    # drop sigma (level k) and tau (level k-1) everywhere
    for T in cols[k].pop(sigma):
        rows[k][T].pop(sigma, None)
    for S in rows[k].pop(tau, {}):
        if S in cols[k]:
            cols[k][S].pop(tau, None)
    if k + 1 < len(cols):
        for U in list(rows[k + 1].get(sigma, {})):
            cols[k + 1][U].pop(sigma, None)
        rows[k + 1].pop(sigma, None)
    if k - 1 >= 1:
        for T in cols[k - 1].pop(tau, {}):
            rows[k - 1][T].pop(tau, None)
    alive[k].discard(sigma)
    alive[k - 1].discard(tau)


def resolve(ideal: MonomialIdeal, method: str = "koszul") -> BettiTable:
    if method == "koszul":
        return betti_koszul(ideal)
    if method == "taylor":
        return betti_taylor(ideal)
    raise InputError(f"unknown method {method!r}")


def stats(table: BettiTable) -> ResolutionStats:
    return table.stats()


def iter_shifts(table: BettiTable) -> Iterator[tuple[int, int]]:
    for (i, j), b in table.items():
        for _ in range(b):
            yield i, j
