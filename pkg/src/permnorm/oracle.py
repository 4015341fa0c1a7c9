"""Brute-force ground truth by explicit element enumeration.

Nothing here touches stabiliser chains: groups are closed under
multiplication with plain hash sets of image tables, and membership is set
containment.  Slow by design.
"""
from __future__ import annotations

from typing import Iterable

from .limits import ResourceLimitError, get_limits
from .perm import Permutation
from .stabchain import Group


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple([b[x] for x in a])


def _conj(a: tuple, by: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[by[i]] = by[x]
    return tuple(out)


def closure(gens: Iterable[tuple], degree: int, limit: int | None = None) -> frozenset:
    """All products of ``gens`` by breadth-first search."""
    limit = get_limits().enum_limit if limit is None else limit
    gens = [tuple(g) for g in gens]
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > limit:
            raise ResourceLimitError(f"enumeration exceeded {limit} elements")
        frontier = nxt
    return frozenset(seen)


def elements_of(g: Group) -> frozenset:
    return closure(g.raw_generators, g.degree)


def _generators_for(elements: Iterable[tuple], degree: int) -> list[tuple]:
    """A small generating list for the group formed by ``elements``."""
    gens: list[tuple] = []
    span = frozenset({tuple(range(degree))})
    for x in sorted(elements):
        if x not in span:
            gens.append(x)
            span = closure(gens, degree)
    return gens


def group_of(elements: Iterable[tuple], degree: int) -> Group:
    return Group([Permutation(a, check=False) for a in _generators_for(elements, degree)], degree)


def brute_normaliser_elements(h: Group, k: Group) -> frozenset:
    if h.degree != k.degree:
        raise ValueError("degree mismatch")
    hset = elements_of(h)
    hgens = h.raw_generators
    return frozenset(s for s in elements_of(k) if all(_conj(x, s) in hset for x in hgens))


def brute_normaliser(h: Group, k: Group) -> Group:
    """``<{s in K : H^s = H}>`` by testing every element of ``k``."""
    return group_of(brute_normaliser_elements(h, k), h.degree)


def brute_centralizer_elements(g: Group, j: Group) -> frozenset:
    jset = elements_of(j)
    return frozenset(x for x in elements_of(g) if all(_mul(x, y) == _mul(y, x) for y in jset))


def _normal_closure_set(elements: frozenset, conj_by: list[tuple], seeds: list[tuple],
                        degree: int) -> frozenset:
    gens = set(seeds)
    frontier = list(seeds)
    while frontier:
        nxt = []
        for x in frontier:
            for s in conj_by:
                y = _conj(x, s)
                if y not in gens:
                    gens.add(y)
                    nxt.append(y)
        frontier = nxt
    return closure(gens, degree)


def brute_structure(g: Group) -> dict:
    """Normal subgroups, minimal normal subgroups, socle and centre, as element sets."""
    n = g.degree
    elements = elements_of(g)
    ggens = g.raw_generators
    ident = tuple(range(n))
    # one normal closure per conjugacy class
    classes_done: set[tuple] = set()
    closures: set[frozenset] = {frozenset({ident})}
    for x in sorted(elements):
        if x in classes_done:
            continue
        cls = _normal_closure_set(elements, ggens, [x], n) if x != ident else frozenset({ident})
        cls_members = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for s in ggens:
                z = _conj(y, s)
                if z not in cls_members:
                    cls_members.add(z)
                    stack.append(z)
        classes_done |= cls_members
        closures.add(cls)
    # every normal subgroup is a join of closures of single elements
    normals = set(closures)
    changed = True
    while changed:
        changed = False
        for a in list(normals):
            for b in list(normals):
                if a <= b or b <= a:
                    continue
                j = closure(set(_generators_for(a, n)) | set(_generators_for(b, n)), n)
                if j not in normals:
                    normals.add(j)
                    changed = True
    nontrivial = [s for s in normals if len(s) > 1]
    minimal = [s for s in nontrivial if not any(t < s for t in nontrivial)]
    soc_gens = [x for s in minimal for x in _generators_for(s, n)]
    socle = closure(soc_gens, n) if soc_gens else frozenset({ident})
    centre = frozenset(x for x in elements if all(_mul(x, s) == _mul(s, x) for s in ggens))
    return {
        "normal_subgroups": sorted(normals, key=lambda s: (len(s), sorted(s))),
        "minimal_normal_subgroups": sorted(minimal, key=lambda s: (len(s), sorted(s))),
        "socle": socle,
        "centre": centre,
    }
