"""Permutations on {1..n} with a right action.

A permutation ``p`` sends the point ``w`` to ``w^p``.  Products compose left to
right, so ``(p * q)`` first applies ``p`` and then ``q``.  Points are 1-based in
every external format (cycle notation, ``images``, ``image``); internally the
image table is 0-based.
"""
from __future__ import annotations

import math
import re
from functools import reduce
from typing import Iterable, Sequence


class PermutationError(ValueError):
    """Raised for malformed cycle notation or inconsistent permutations."""


class Permutation:
    __slots__ = ("_a", "_hash")

    def __init__(self, array: Sequence[int], *, check: bool = True):
        a = tuple(array)
        if check:
            if len(a) == 0:
                raise PermutationError("degree must be positive")
            if sorted(a) != list(range(len(a))):
                raise PermutationError(f"not a bijection on {len(a)} points: {a!r}")
        self._a = a
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise PermutationError("degree must be positive")
        return cls(range(degree), check=False)

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Permutation":
        """Build from a 1-based image list, ``images[i-1] = i^p``."""
        return cls([x - 1 for x in images])

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        a = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= degree:
                    raise PermutationError(f"point {x} out of range 1..{degree}")
                if x in seen:
                    raise PermutationError(f"repeated point {x}")
                seen.add(x)
            for x, y in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                a[x - 1] = y - 1
        return cls(a, check=False)

    # basic data ---------------------------------------------------------

    @property
    def array(self) -> tuple[int, ...]:
        """0-based image table."""
        return self._a

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def images(self) -> list[int]:
        return [x + 1 for x in self._a]

    def image(self, point: int) -> int:
        return self._a[point - 1] + 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._a == other._a

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._a)
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self._a < other._a

    # arithmetic ---------------------------------------------------------

    def _check_degree(self, other: "Permutation"):
        if len(self._a) != len(other._a):
            raise PermutationError(
                f"degree mismatch: {len(self._a)} vs {len(other._a)}")

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        self._check_degree(other)
        b = other._a
        return Permutation([b[x] for x in self._a], check=False)

    def inverse(self) -> "Permutation":
        return Permutation(invert(self._a), check=False)

    __invert__ = inverse

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse() ** (-e)
        result = tuple(range(len(self._a)))
        base = self._a
        while e:
            if e & 1:
                result = mul(result, base)
            base = mul(base, base)
            e >>= 1
        return Permutation(result, check=False)

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return ``by^-1 * self * by``, i.e. ``self^by``."""
        self._check_degree(by)
        return Permutation(conj(self._a, by._a), check=False)

    def commutes_with(self, other: "Permutation") -> bool:
        self._check_degree(other)
        a, b = self._a, other._a
        return all(b[a[i]] == a[b[i]] for i in range(len(a)))

    # structure ----------------------------------------------------------

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._a))

    def support(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self._a) if i != x]

    def cycles(self, *, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, 1-based, each starting at its smallest point."""
        out = []
        seen = [False] * len(self._a)
        for i in range(len(self._a)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self._a[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self._a[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(x + 1 for x in cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return cycle_type(self._a)

    def order(self) -> int:
        return reduce(math.lcm, self.cycle_type(), 1)

    def sign(self) -> int:
        return -1 if sum(c - 1 for c in self.cycle_type()) % 2 else 1

    def is_even(self) -> bool:
        return self.sign() == 1

    def __str__(self) -> str:
        return format_permutation(self)

    def __repr__(self) -> str:
        return f"Permutation({format_permutation(self)!r}, degree={self.degree})"


# raw tuple helpers used by the group machinery ---------------------------

def mul(a: tuple, b: tuple) -> tuple:
    return tuple([b[x] for x in a])


def invert(a: Sequence[int]) -> tuple:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def conj(a: tuple, by: tuple) -> tuple:
    """``by^-1 a by`` on raw image tables: maps ``i^by`` to ``(i^a)^by``."""
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[by[i]] = by[x]
    return tuple(out)


def is_identity(a: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(a))


def cycle_type(a: Sequence[int]) -> tuple[int, ...]:
    n = len(a)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def element_order(a: Sequence[int]) -> int:
    return reduce(math.lcm, cycle_type(a), 1)


# cycle notation -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\(|\)|\d+|\S)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1 2 3)(4 5)"`` or ``"()"``.

    Commas are accepted as separators inside a cycle.  Points missing from the
    text are fixed.  The degree is always explicit.
    """
    if degree < 1:
        raise PermutationError("degree must be positive")
    s = text.replace(",", " ").strip()
    if not s:
        raise PermutationError("empty permutation text")
    cycles: list[list[int]] = []
    current: list[int] | None = None
    pos = 0
    for m in _TOKEN.finditer(s):
        if m.start() != pos and s[pos:m.start()].strip():
            raise PermutationError(f"unexpected text {s[pos:m.start()]!r}")
        pos = m.end()
        tok = m.group(1)
        if tok == "(":
            if current is not None:
                raise PermutationError("nested '(' in cycle notation")
            current = []
        elif tok == ")":
            if current is None:
                raise PermutationError("unmatched ')'")
            cycles.append(current)
            current = None
        elif tok.isdigit():
            if current is None:
                raise PermutationError(f"point {tok!r} outside a cycle")
            current.append(int(tok))
        else:
            raise PermutationError(f"unexpected token {tok!r}")
    if s[pos:].strip():
        raise PermutationError(f"unexpected text {s[pos:]!r}")
    if current is not None:
        raise PermutationError("unterminated cycle, missing ')'")
    if len(cycles) > 1 and any(not c for c in cycles):
        raise PermutationError("'()' cannot be combined with other cycles")
    return Permutation.from_cycles([c for c in cycles if c], degree)


def format_permutation(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The product ``p`` then ``q``: ``w -> (w^p)^q``."""
    return p * q
