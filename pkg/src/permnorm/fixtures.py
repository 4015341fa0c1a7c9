"""Named example groups and the plain-text group file format.

A group file holds the degree on its first non-comment line followed by one
generator per line in cycle notation::

    # A_5 acting on 2-subsets
    10
    (1 5 8)(2 6 9)(3 4 7)
    ...

Blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import re
from pathlib import Path

from .ample import build_wreath_generators
from .perm import Permutation, PermutationError, parse_permutation
from .stabchain import Group, alternating_group, symmetric_group

# generators from the standard literature (ATLAS of Group Representations)
M11_GENERATORS = ["(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)"]
M12_GENERATORS = ["(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)",
                  "(1 12)(2 11)(3 6)(4 8)(5 9)(7 10)"]
MATHIEU_ORDERS = {"m11": 7920, "m12": 95040}


class GroupFileError(ValueError):
    pass


def parse_group_file(text: str) -> Group:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GroupFileError("empty group file")
    try:
        degree = int(lines[0])
    except ValueError:
        raise GroupFileError(f"first line must be the degree, got {lines[0]!r}") from None
    if degree < 1:
        raise GroupFileError("degree must be at least 1")
    gens = []
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            gens.append(parse_permutation(ln, degree))
        except PermutationError as exc:
            raise GroupFileError(f"generator {lineno - 1}: {exc}") from None
    return Group(gens, degree)


def read_group_file(path: str | Path) -> Group:
    return parse_group_file(Path(path).read_text(encoding="utf-8"))


def format_group_file(g: Group, comment: str | None = None) -> str:
    out = []
    if comment:
        out.append(f"# {comment}")
    out.append(str(g.degree))
    out.extend(str(x) for x in g.generators)
    return "\n".join(out) + "\n"


def cyclic_group(n: int) -> Group:
    if n == 1:
        return Group([], 1)
    return Group([Permutation.from_cycles([tuple(range(1, n + 1))], n)], n)


def dihedral_group(n: int) -> Group:
    """Dihedral group of order ``2n`` acting on the vertices of an n-gon."""
    if n < 3:
        return symmetric_group(n) if n == 2 else Group([], 1)
    rot = Permutation.from_cycles([tuple(range(1, n + 1))], n)
    refl = Permutation.from_cycles([(i, n + 2 - i) for i in range(2, n // 2 + 1 + (n % 2))
                                    if i < n + 2 - i], n)
    return Group([rot, refl], n)


def elementary_abelian_2(r: int) -> Group:
    """``C_2^r`` generated by disjoint transpositions on ``2r`` points."""
    n = 2 * r
    return Group([Permutation.from_cycles([(2 * i + 1, 2 * i + 2)], n) for i in range(r)], n)


def mathieu_group(name: str) -> Group:
    gens = {"m11": (M11_GENERATORS, 11), "m12": (M12_GENERATORS, 12)}[name]
    g = Group([parse_permutation(s, gens[1]) for s in gens[0]], gens[1])
    if g.order() != MATHIEU_ORDERS[name]:
        raise AssertionError(f"{name} generators give order {g.order()}")
    return g


def frobenius_21() -> Group:
    """``C_7 : C_3`` on 7 points: x -> x + 1 and x -> 2x modulo 7."""
    return Group([parse_permutation("(1 2 3 4 5 6 7)", 7),
                  parse_permutation("(2 3 5)(4 7 6)", 7)], 7)


_PATTERNS = [
    (r"cyclic-(\d+)", lambda n: cyclic_group(n)),
    (r"dihedral-(\d+)", lambda n: dihedral_group(n)),
    (r"sym-(\d+)", lambda n: symmetric_group(n)),
    (r"alt-(\d+)", lambda n: alternating_group(n)),
    (r"alt-subsets-(\d+)-(\d+)", lambda m, k: build_wreath_generators(m, k, 1).socle),
    (r"wreath-(\d+)-(\d+)-(\d+)", lambda m, k, l: build_wreath_generators(m, k, l).wreath),
    (r"alt-product-(\d+)-(\d+)-(\d+)", lambda m, k, l: build_wreath_generators(m, k, l).socle),
    (r"elementary-2-(\d+)", lambda r: elementary_abelian_2(r)),
    (r"m11", lambda: mathieu_group("m11")),
    (r"m12", lambda: mathieu_group("m12")),
    (r"frobenius-21", frobenius_21),
]

FIXTURE_NAMES = ("cyclic-n", "dihedral-n", "sym-n", "alt-n", "alt-subsets-m-k",
                 "wreath-m-k-l", "alt-product-m-k-l", "m11", "m12", "elementary-2-r",
                 "frobenius-21")


def fixture(name: str) -> Group:
    for pattern, make in _PATTERNS:
        match = re.fullmatch(pattern, name)
        if match:
            args = [int(x) for x in match.groups()]
            if any(a < 1 for a in args):
                raise ValueError(f"parameters of {name!r} must be positive")
            return make(*args)
    raise ValueError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
