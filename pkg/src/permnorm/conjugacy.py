"""Conjugacy in Sym(n) via edge-coloured functional graphs.

A tuple ``(x_1, ..., x_r)`` of permutations is a digraph on the points with an
arc ``w -> w^{x_i}`` of colour ``i``.  A permutation conjugates one tuple to
another exactly when it is a colour-preserving isomorphism of the two graphs,
and such an isomorphism is fixed on each orbit once the image of one point of
that orbit is chosen.
"""
from __future__ import annotations

from typing import Sequence

from .perm import Permutation, PermutationError, cycle_type
from .stabchain import Group, group_from_elements


def _orbit_points(gens: Sequence[tuple], n: int) -> list[list[int]]:
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        orb = [start]
        k = 0
        while k < len(orb):
            p = orb[k]
            k += 1
            for s in gens:
                q = s[p]
                if not seen[q]:
                    seen[q] = True
                    orb.append(q)
        out.append(orb)
    return out


def _propagate(src: Sequence[tuple], dst: Sequence[tuple], root: int, image: int,
               taken: Sequence[bool] | None = None) -> dict[int, int] | None:
    """The unique intertwining map on the orbit of ``root`` sending it to ``image``."""
    sigma = {root: image}
    hit = {image}
    stack = [root]
    while stack:
        a = stack.pop()
        b = sigma[a]
        for s, d in zip(src, dst):
            a2, b2 = s[a], d[b]
            known = sigma.get(a2)
            if known is None:
                if b2 in hit or (taken is not None and taken[b2]):
                    return None
                sigma[a2] = b2
                hit.add(b2)
                stack.append(a2)
            elif known != b2:
                return None
    return sigma


def conjugating_permutation(src: Sequence[Permutation],
                            dst: Sequence[Permutation]) -> Permutation | None:
    """Some ``sigma`` with ``src[i]^sigma == dst[i]`` for every ``i``, or None."""
    if len(src) != len(dst):
        raise ValueError("tuples must have equal length")
    if not src:
        raise ValueError("empty tuples")
    n = src[0].degree
    for p in list(src) + list(dst):
        if p.degree != n:
            raise PermutationError("degree mismatch")
    a = [p.array for p in src]
    b = [p.array for p in dst]
    if any(cycle_type(x) != cycle_type(y) for x, y in zip(a, b)):
        return None
    dst_orbit_size = [0] * n
    for orb in _orbit_points(b, n):
        for x in orb:
            dst_orbit_size[x] = len(orb)
    taken = [False] * n
    result = [0] * n
    # an orbit may be matched greedily: two orbits that can both take the same
    # image orbit are isomorphic, so no earlier choice can block a later one
    for orb in _orbit_points(a, n):
        root = orb[0]
        for image in range(n):
            if taken[image] or dst_orbit_size[image] != len(orb):
                continue
            sigma = _propagate(a, b, root, image, taken)
            if sigma is not None and len(sigma) == len(orb):
                for x, y in sigma.items():
                    result[x] = y
                    taken[y] = True
                break
        else:
            return None
    return Permutation(result, check=False)


def _map_to_perm(n: int, pairs: dict[int, int]) -> Permutation:
    a = list(range(n))
    for x, y in pairs.items():
        a[x] = y
    return Permutation(a, check=False)


def centraliser_in_symmetric(h: Group) -> Group:
    """``C_{Sym(n)}(h)``: the automorphisms of the coloured graph of ``h``'s generators.

    Generated by the centralisers of the individual orbit actions together
    with involutions swapping equivalent orbits.
    """
    n = h.degree
    gens = h.raw_generators
    out: list[Permutation] = []
    classes: list[list[int]] = []   # one representative orbit per equivalence class
    for orb in _orbit_points(gens, n):
        root = orb[0]
        for image in orb[1:]:
            sigma = _propagate(gens, gens, root, image)
            if sigma is not None:
                out.append(_map_to_perm(n, sigma))
        for rep in classes:
            if len(rep) != len(orb):
                continue
            iso = None
            for image in orb:
                iso = _propagate(gens, gens, rep[0], image)
                if iso is not None:
                    break
            if iso is not None:
                swap = dict(iso)
                swap.update({y: x for x, y in iso.items()})
                out.append(_map_to_perm(n, swap))
                break
        else:
            classes.append(orb)
    return group_from_elements(out, n)
