"""Arithmetic on resolution shapes: twists, mapping cones and splittings.

A :class:`ResolutionShape` records, for each homological degree, the shifts
of the rank-one free summands, optionally tagged with the family they came
from in a mapping cone.  Tags are what makes the splitting rule usable:
after a basic double link ``J_1 = I + L J`` the only possible cancellation
pairs an ``F_i(-d)`` summand at level ``i + 1`` with a ``G_i(-d)`` summand of
the same shift at level ``i``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import DomainError, InputError
from .monomial import Monomial, MonomialIdeal
from .resolution import BettiTable, ResolutionStats, tor_map_ranks

Summand = tuple[int, str | None]

TAG_F = "F"
TAG_F_TWIST = "F(-d)"
TAG_G_TWIST = "G(-d)"
TAG_FREE = "R(-d)"
TAG_BASE = "R"


@dataclass(frozen=True)
class ResolutionShape:
    levels: tuple[tuple[Summand, ...], ...]
    # True once cancellation has been confirmed minimal (exact ranks supplied)
    exact: bool = field(default=False, compare=False)

    def __post_init__(self):
        levels = tuple(
            tuple(sorted(((int(s), t) for s, t in lvl), key=lambda x: (x[0], x[1] or "")))
            for lvl in self.levels
        )
        while len(levels) > 1 and not levels[-1]:
            levels = levels[:-1]
        object.__setattr__(self, "levels", levels)

    @classmethod
    def from_shifts(cls, levels: Sequence[Sequence[int]], tag: str | None = None) -> ResolutionShape:
        return cls(tuple(tuple((s, tag) for s in lvl) for lvl in levels))

    @classmethod
    def from_betti(cls, table: BettiTable) -> ResolutionShape:
        return cls.from_shifts([table.degrees(i) for i in range(table.pd + 1)])

    def to_betti(self) -> BettiTable:
        acc: Counter = Counter()
        for i, lvl in enumerate(self.levels):
            for s, _ in lvl:
                acc[(i, s)] += 1
        return BettiTable(acc)

    def shifts(self, i: int) -> list[int]:
        return [s for s, _ in self.levels[i]] if i < len(self.levels) else []

    def tagged(self) -> bool:
        return all(t is not None for lvl in self.levels for _, t in lvl)

    def twist(self, d: int, tag: str | None = None) -> ResolutionShape:
        return ResolutionShape(
            tuple(tuple((s + d, tag if tag is not None else t) for s, t in lvl) for lvl in self.levels)
        )

    def retag(self, tag: str | None) -> ResolutionShape:
        return ResolutionShape(tuple(tuple((s, tag) for s, _ in lvl) for lvl in self.levels))

    def direct_sum(self, other: ResolutionShape) -> ResolutionShape:
        n = max(len(self.levels), len(other.levels))
        return ResolutionShape(tuple(
            (self.levels[i] if i < len(self.levels) else ())
            + (other.levels[i] if i < len(other.levels) else ())
            for i in range(n)
        ))

    def __add__(self, other):
        return self.direct_sum(other)

    def untagged(self) -> ResolutionShape:
        return self.retag(None)

    def to_json(self) -> dict:
        return {
            "levels": [[[s, t] for s, t in lvl] for lvl in self.levels],
            "exact": self.exact,
        }


def _require_cyclic(shape: ResolutionShape, name: str) -> None:
    if [s for s, _ in shape.levels[0]] != [0]:
        raise DomainError(f"{name} must be the shape of a cyclic quotient R/I (level 0 = one shift 0)")


def ideal_levels(shape: ResolutionShape) -> list[tuple[Summand, ...]]:
    """Levels 1.. of the shape of R/I: the resolution of the ideal I itself."""
    return list(shape.levels[1:])


def cone_from_sequence(kernel: Sequence[Sequence[Summand]], middle: Sequence[Sequence[Summand]]) -> ResolutionShape:
    """Shape of R/C for ``0 -> A -> B -> C -> 0`` with ideal-level resolutions of A and B.

    ``kernel[k]`` and ``middle[k]`` are the (k+1)-st free modules resolving A
    and B; the cone puts ``B_k`` and ``A_{k-1}`` side by side at level k.
    """
    n = max(len(middle), len(kernel) + 1)
    levels = [((0, TAG_BASE),)]
    for k in range(n):
        lvl = tuple(middle[k]) if k < len(middle) else ()
        if k >= 1 and k - 1 < len(kernel):
            lvl += tuple(kernel[k - 1])
        levels.append(lvl)
    return ResolutionShape(tuple(levels))


def cone_bdl(F: ResolutionShape, G: ResolutionShape, d: int) -> ResolutionShape:
    """Mapping cone resolving R/J_1 for the basic double link ``J_1 = I + L J``.

    ``F`` resolves R/I, ``G`` resolves R/J, ``deg L = d``.  Level 1 is
    ``F_1 + G_1(-d)`` and level i >= 2 is ``F_{i-1}(-d) + G_i(-d) + F_i``.
    The result is generally not minimal; see :func:`cancel_splittings`.
    """
    if d < 1:
        raise DomainError(f"the form L must have positive degree, got d = {d}")
    _require_cyclic(F, "F")
    _require_cyclic(G, "G")
    f = F.twist(0, TAG_F)
    fd = F.twist(d, TAG_F_TWIST)
    gd = G.twist(d, TAG_G_TWIST)
    # 0 -> I(-d) -> J(-d) + I -> J_1 -> 0
    middle_shape = ResolutionShape(((),) + gd.levels[1:]) + ResolutionShape(((),) + f.levels[1:])
    return cone_from_sequence(ideal_levels(fd), ideal_levels(middle_shape))


def cone_hypersurface(F: ResolutionShape, d: int) -> ResolutionShape:
    """Resolution shape of R/(I + (f)) for a form f of degree d with I : f = I.

    Level 1 is ``F_1 + {d}``, level i >= 2 is ``F_{i-1}(-d) + F_i``; no
    splitting is possible so the shape is already minimal.
    """
    if d < 1:
        raise DomainError(f"the form must have positive degree, got d = {d}")
    _require_cyclic(F, "F")
    f = F.twist(0, TAG_F)
    fd = F.twist(d, TAG_F_TWIST)
    free = ResolutionShape(((), ((d, TAG_FREE),)))
    middle_shape = ResolutionShape(((),) + f.levels[1:]) + free
    cone = cone_from_sequence(ideal_levels(fd), ideal_levels(middle_shape))
    return ResolutionShape(cone.levels, exact=True)


def bdl_cancellation_ranks(I: MonomialIdeal, J: MonomialIdeal, d: int) -> Counter:
    """Exact number of ``F_i(-d)`` / ``G_i(-d)`` pairs that split, keyed by (i, shift).

    For monomial ideals this is the rank of Tor_i(R/I, k) -> Tor_i(R/J, k)
    in each degree, moved up by d.
    """
    return Counter({(i, s + d): r for (i, s), r in tor_map_ranks(I, J).items()})


def cancel_splittings(cone: ResolutionShape, ranks: Mapping[tuple[int, int], int] | None = None) -> ResolutionShape:
    """Cancel ``G_i(-d)`` summands at level i against ``F_i(-d)`` summands at level i+1.

    Without ``ranks`` the cancellation is maximal: for every level and shift
    as many pairs as the two multisets allow.  That is only an estimate; the
    true splitting can be smaller.  With ``ranks[(i, s)]`` (see
    :func:`bdl_cancellation_ranks`) exactly that many pairs are cancelled and
    the result is marked ``exact``.
    """
    if not cone.tagged():
        raise DomainError("cancellation needs a cone with provenance tags on every summand")
    levels = [list(lvl) for lvl in cone.levels]
    for i in range(1, len(levels) - 1):
        g = Counter(s for s, t in levels[i] if t == TAG_G_TWIST)
        f = Counter(s for s, t in levels[i + 1] if t == TAG_F_TWIST)
        for s in sorted(g):
            available = min(g[s], f.get(s, 0))
            if ranks is None:
                k = available
            else:
                k = ranks.get((i, s), 0)
                if k > available:
                    raise DomainError(f"cannot cancel {k} pairs of shift {s} at level {i}; only {available} exist")
            if k:
                _remove(levels[i], s, TAG_G_TWIST, k)
                _remove(levels[i + 1], s, TAG_F_TWIST, k)
    if ranks is not None:
        stray = [key for key in ranks if ranks[key] and not (1 <= key[0] < len(levels) - 1)]
        if stray:
            raise DomainError(f"rank data outside the cone: {stray}")
    return ResolutionShape(tuple(tuple(lvl) for lvl in levels), exact=ranks is not None)


def _remove(level, shift, tag, count):
    for _ in range(count):
        level.remove((shift, tag))


# -- basic double links ----------------------------------------------------

@dataclass(frozen=True)
class BasicDoubleLink:
    I: MonomialIdeal
    J: MonomialIdeal
    L: Monomial
    J1: MonomialIdeal

    @property
    def d(self) -> int:
        return self.L.total_degree


def basic_double_link(I: MonomialIdeal, J: MonomialIdeal, L: Monomial, check_codim: bool = True) -> BasicDoubleLink:
    """Form ``J_1 = I + L J`` after checking ``I in J``, ``I : L = I`` and the codimensions."""
    from .hilbert import hilbert_numerator

    if L.total_degree < 1:
        raise DomainError("L must have positive degree")
    if not I.is_subset(J):
        raise DomainError("I must be contained in J")
    if I.colon(L) != I:
        raise DomainError("I : L must equal I")
    if check_codim:
        ci, cj = hilbert_numerator(I).codim, hilbert_numerator(J).codim
        if ci + 1 != cj:
            raise DomainError(f"need codim I + 1 = codim J, got {ci} and {cj}")
    return BasicDoubleLink(I, J, L, I + J.multiply(L))


# -- hypotheses of the upper / lower bound transfer ---------------------------

@dataclass(frozen=True)
class BdlHypotheses:
    """Truth of each inequality; index 0 of every vector is the smallest i listed."""

    upper_3_2: tuple[bool, ...]   # i = 1..c+1:  M_i(J_1) >= M_i(J) + d
    upper_3_3: tuple[bool, ...]   # i = 2..c+1:  M_i(J_1) >= M_{i-1}(I) + d
    lower_assm: tuple[bool, ...]  # i = 2..c+1:  m_i(J_1) <= m_{i-1}(I) + d

    def to_json(self) -> dict:
        return {
            "upper_3_2": {str(i + 1): v for i, v in enumerate(self.upper_3_2)},
            "upper_3_3": {str(i + 2): v for i, v in enumerate(self.upper_3_3)},
            "lower_assm": {str(i + 2): v for i, v in enumerate(self.lower_assm)},
        }


def bdl_hypotheses(stats_i: ResolutionStats, stats_j: ResolutionStats, stats_j1: ResolutionStats,
                   d: int, c: int) -> BdlHypotheses:
    if d < 1:
        raise DomainError(f"the form L must have positive degree, got d = {d}")
    if c < 1:
        raise DomainError(f"codimension must be positive, got {c}")
    for name, st, need in (("I", stats_i, c), ("J", stats_j, c + 1), ("J_1", stats_j1, c + 1)):
        if st.pd < need:
            raise InputError(f"stats of {name} stop at index {st.pd}, need index {need}")
    upper_32 = tuple(stats_j1.M[i] >= stats_j.M[i] + d for i in range(1, c + 2))
    upper_33 = tuple(stats_j1.M[i] >= stats_i.M[i - 1] + d for i in range(2, c + 2))
    lower = tuple(stats_j1.m[i] <= stats_i.m[i - 1] + d for i in range(2, c + 2))
    return BdlHypotheses(upper_32, upper_33, lower)
