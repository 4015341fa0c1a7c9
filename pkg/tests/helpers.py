"""Small utilities shared by the unit tests."""
from __future__ import annotations

from hypothesis import strategies as st

from permnorm.perm import Permutation, parse_permutation
from permnorm.stabchain import Group


def P(text: str, n: int) -> Permutation:
    return parse_permutation(text, n)


def same_group(a: Group, b: Group) -> bool:
    return a.order() == b.order() and all(x in b for x in a.generators) \
        and all(x in a for x in b.generators)


def element_set(g: Group) -> frozenset:
    return frozenset(g.raw_elements())


@st.composite
def small_groups(draw, min_degree=2, max_degree=6, max_gens=3):
    """Random subgroups of Sym(n) given by 1..max_gens random generators."""
    n = draw(st.integers(min_degree, max_degree))
    k = draw(st.integers(1, max_gens))
    gens = [Permutation(draw(st.permutations(range(n)))) for _ in range(k)]
    return Group(gens, n)
