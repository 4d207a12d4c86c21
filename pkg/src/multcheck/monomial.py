"""Monomials and monomial ideals in k[x_0, ..., x_{n-1}].

Everything here is immutable.  Ideals always store their unique minimal
generating set, sorted graded-lexicographically (degree first, then x_0 > x_1
> ...), so two equal ideals compare equal and print identically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import InputError, ParseError

MAX_EXPONENT = 2**31 - 1


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        for e in exps:
            if not isinstance(e, int) or isinstance(e, bool):
                raise InputError(f"exponent {e!r} is not an integer")
            if e < 0:
                raise InputError(f"negative exponent {e} in {exps}")
            if e > MAX_EXPONENT:
                raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def one(cls, n: int) -> Monomial:
        return cls((0,) * n)

    @classmethod
    def var(cls, i: int, n: int, power: int = 1) -> Monomial:
        exps = [0] * n
        exps[i] = power
        return cls(tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    degree = total_degree

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def _check(self, other: Monomial) -> None:
        if self.n != other.n:
            raise InputError(f"ambient mismatch: {self.n} vs {other.n} variables")

    def divides(self, other: Monomial) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: Monomial) -> Monomial:
        self._check(other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: Monomial) -> Monomial:
        self._check(other)
        if not other.divides(self):
            raise InputError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, k: int) -> Monomial:
        return Monomial(tuple(a * k for a in self.exponents))

    def lcm(self, other: Monomial) -> Monomial:
        self._check(other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def gcd(self, other: Monomial) -> Monomial:
        self._check(other)
        return Monomial(tuple(min(a, b) for a, b in zip(self.exponents, other.exponents)))

    def sort_key(self):
        return (self.total_degree, tuple(-e for e in self.exponents))

    def __lt__(self, other: Monomial) -> bool:
        return self.sort_key() < other.sort_key()

    def format(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.n)
        parts = []
        for name, e in zip(names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __str__(self) -> str:
        return self.format()


def default_names(n: int) -> list[str]:
    return [f"x{i}" for i in range(n)]


def _minimal_exponents(exps: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    # sorted by degree, so a divisor is always seen before its multiples
    ordered = sorted(set(exps), key=lambda e: (sum(e), tuple(-a for a in e)))
    kept: list[tuple[int, ...]] = []
    for e in ordered:
        if not any(all(a <= b for a, b in zip(k, e)) for k in kept):
            kept.append(e)
    return tuple(kept)


class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    The zero ideal has no generators; the unit ideal is generated by ``1``.
    """

    __slots__ = ("n", "generators", "_exps")

    def __init__(self, n: int, generators: Iterable[Monomial | Sequence[int]] = ()):
        if n < 0:
            raise InputError("variable count must be non-negative")
        exps = []
        for g in generators:
            m = g if isinstance(g, Monomial) else Monomial(tuple(g))
            if m.n != n:
                raise InputError(f"ambient mismatch: monomial {m.exponents} in a ring with {n} variables")
            exps.append(m.exponents)
        minimal = _minimal_exponents(exps)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_exps", minimal)
        object.__setattr__(self, "generators", tuple(Monomial(e) for e in minimal))

    def __setattr__(self, key, value):
        raise AttributeError("MonomialIdeal is immutable")

    @classmethod
    def _from_minimal(cls, n: int, exps: tuple[tuple[int, ...], ...]) -> MonomialIdeal:
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_exps", exps)
        object.__setattr__(self, "generators", tuple(Monomial(e) for e in exps))
        return self

    @classmethod
    def zero(cls, n: int) -> MonomialIdeal:
        return cls(n)

    @classmethod
    def unit(cls, n: int) -> MonomialIdeal:
        return cls(n, [Monomial.one(n)])

    @classmethod
    def from_exponents(cls, rows: Iterable[Sequence[int]], n: int | None = None) -> MonomialIdeal:
        rows = [tuple(r) for r in rows]
        if n is None:
            if not rows:
                raise InputError("cannot infer the variable count of an empty generator list")
            n = len(rows[0])
        return cls(n, rows)

    @property
    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return self._exps

    def is_zero(self) -> bool:
        return not self._exps

    def is_unit(self) -> bool:
        return len(self._exps) == 1 and not any(self._exps[0])

    def __len__(self) -> int:
        return len(self._exps)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self._exps == other._exps

    def __hash__(self) -> int:
        return hash((self.n, self._exps))

    def __repr__(self) -> str:
        return f"MonomialIdeal({self.n}, [{', '.join(str(g) for g in self.generators)}])"

    def format(self, names: Sequence[str] | None = None) -> str:
        if self.is_zero():
            return "(0)"
        return "(" + ", ".join(g.format(names) for g in self.generators) + ")"

    __str__ = format

    def _check(self, other: MonomialIdeal | Monomial) -> None:
        if self.n != other.n:
            raise InputError(f"ambient mismatch: {self.n} vs {other.n} variables")

    def contains(self, m: Monomial) -> bool:
        self._check(m)
        e = m.exponents
        return any(all(a <= b for a, b in zip(g, e)) for g in self._exps)

    def __contains__(self, m: Monomial) -> bool:
        return self.contains(m)

    def sum(self, other: MonomialIdeal) -> MonomialIdeal:
        self._check(other)
        return MonomialIdeal._from_minimal(self.n, _minimal_exponents(self._exps + other._exps))

    __add__ = sum

    def product(self, other: MonomialIdeal) -> MonomialIdeal:
        self._check(other)
        exps = (tuple(a + b for a, b in zip(g, h)) for g in self._exps for h in other._exps)
        return MonomialIdeal._from_minimal(self.n, _minimal_exponents(exps))

    __mul__ = product

    def power(self, t: int) -> MonomialIdeal:
        if t < 1:
            raise InputError(f"power must be positive, got {t}")
        # multisets of generators avoid the t-fold repeated product blowup
        exps = (
            tuple(sum(col) for col in zip(*choice))
            for choice in combinations_with_replacement(self._exps, t)
        )
        if self.is_zero():
            return self
        return MonomialIdeal._from_minimal(self.n, _minimal_exponents(exps))

    __pow__ = power

    def multiply(self, m: Monomial) -> MonomialIdeal:
        self._check(m)
        return MonomialIdeal._from_minimal(
            self.n, tuple(tuple(a + b for a, b in zip(g, m.exponents)) for g in self._exps)
        )

    def colon(self, m: Monomial) -> MonomialIdeal:
        """``I : m`` computed generator-wise as ``g / gcd(g, m)``."""
        self._check(m)
        e = m.exponents
        exps = (tuple(max(a - b, 0) for a, b in zip(g, e)) for g in self._exps)
        return MonomialIdeal._from_minimal(self.n, _minimal_exponents(exps))

    def intersection(self, other: MonomialIdeal) -> MonomialIdeal:
        self._check(other)
        exps = (tuple(max(a, b) for a, b in zip(g, h)) for g in self._exps for h in other._exps)
        return MonomialIdeal._from_minimal(self.n, _minimal_exponents(exps))

    __and__ = intersection

    def is_subset(self, other: MonomialIdeal) -> bool:
        return all(other.contains(g) for g in self.generators)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if any(g[i] for g in self._exps))

    def lcm_lattice(self) -> set[tuple[int, ...]]:
        """Exponent vectors of lcms of all nonempty subsets of the generators."""
        lattice: set[tuple[int, ...]] = set()
        for g in self._exps:
            new = {tuple(max(a, b) for a, b in zip(g, m)) for m in lattice}
            lattice |= new
            lattice.add(g)
        return lattice

    def reindex(self, mapping: Sequence[int], n: int) -> MonomialIdeal:
        """Move variable ``i`` to position ``mapping[i]`` of a ring with ``n`` variables."""
        if len(mapping) != self.n:
            raise InputError("mapping must name a target for every variable")
        if len(set(mapping)) != len(mapping) or any(not 0 <= j < n for j in mapping):
            raise InputError("mapping must be injective into range(n)")
        rows = []
        for g in self._exps:
            e = [0] * n
            for i, a in enumerate(g):
                e[mapping[i]] = a
            rows.append(tuple(e))
        return MonomialIdeal(n, rows)

    def modulo_variables(self, killed: Iterable[int]) -> MonomialIdeal:
        """Image of the ideal in ``R / (x_k : k in killed)``, re-indexed onto the survivors.

        Generators involving a killed variable map to zero and disappear.
        """
        killed = set(killed)
        if any(not 0 <= k < self.n for k in killed):
            raise InputError("killed variable out of range")
        keep = [i for i in range(self.n) if i not in killed]
        rows = [tuple(g[i] for i in keep) for g in self._exps if not any(g[k] for k in killed)]
        return MonomialIdeal(len(keep), rows)


def minimalize(gens: Iterable[Monomial], n: int | None = None) -> MonomialIdeal:
    gens = list(gens)
    if n is None:
        if not gens:
            raise InputError("cannot infer the variable count of an empty generator set")
        n = gens[0].n
    return MonomialIdeal(n, gens)


# -- text format -----------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def parse_monomial(text: str, names: Sequence[str], path: str = "<input>", line: int = 0,
                   offset: int = 0) -> Monomial:
    """Parse ``xi^e*xj^f`` (or ``1``) against the variable names of a ring."""
    index = {name: i for i, name in enumerate(names)}
    exps = [0] * len(names)
    pos = 0
    s = text

    def fail(msg, at):
        raise ParseError(msg, path, line, offset + at + 1)

    def skip_ws(p):
        while p < len(s) and s[p] in " \t":
            p += 1
        return p

    pos = skip_ws(pos)
    if s[pos:].strip() == "1":
        return Monomial(tuple(exps))
    expecting = True
    while pos < len(s):
        if not expecting:
            if s[pos] != "*":
                fail(f"expected '*', found {s[pos]!r}", pos)
            pos = skip_ws(pos + 1)
            expecting = True
            continue
        match = _NAME.match(s, pos)
        if not match:
            fail("expected a variable name" if pos < len(s) else "unexpected end of monomial", pos)
        name = match.group()
        if name not in index:
            fail(f"unknown variable {name!r}", pos)
        pos = skip_ws(match.end())
        power = 1
        if pos < len(s) and s[pos] == "^":
            pos = skip_ws(pos + 1)
            digits = re.match(r"\d+", s[pos:])
            if not digits:
                fail("expected an exponent after '^'", pos)
            power = int(digits.group())
            if power > MAX_EXPONENT:
                fail(f"exponent {power} overflows", pos)
            pos = skip_ws(pos + len(digits.group()))
        exps[index[name]] += power
        if exps[index[name]] > MAX_EXPONENT:
            fail("exponent overflows", pos)
        expecting = False
    if expecting:
        fail("unexpected end of monomial", pos)
    return Monomial(tuple(exps))


def parse_ideal(text: str, path: str = "<input>") -> tuple[MonomialIdeal, list[str]]:
    """Parse the ideal text format; returns the ideal and its variable names.

    Line 1 (after comments) is ``ring x0 x1 ...``; each further non-blank line
    is one monomial.  ``#`` starts a comment.
    """
    names: list[str] | None = None
    gens: list[Monomial] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        if names is None:
            stripped = content.lstrip()
            col = len(content) - len(stripped)
            words = stripped.split()
            if words[0] != "ring":
                raise ParseError("first line must be 'ring x0 x1 ...'", path, lineno, col + 1)
            names = words[1:]
            if not names:
                raise ParseError("ring has no variables", path, lineno, col + 1)
            for name in names:
                if not _NAME.fullmatch(name):
                    raise ParseError(f"bad variable name {name!r}", path, lineno, raw.index(name) + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", path, lineno, col + 1)
            continue
        gens.append(parse_monomial(content, names, path, lineno))
    if names is None:
        raise ParseError("missing 'ring' line", path, 1, 1)
    return MonomialIdeal(len(names), gens), names


def format_ideal(ideal: MonomialIdeal, names: Sequence[str] | None = None) -> str:
    names = list(names or default_names(ideal.n))
    lines = ["ring " + " ".join(names)]
    lines += [g.format(names) for g in ideal.generators]
    return "\n".join(lines) + "\n"
