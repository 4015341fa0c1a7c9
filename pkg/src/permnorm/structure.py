"""Orbits, blocks, normal structure and alternating-group recognition."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .limits import ResourceLimitError, get_limits
from .perm import Permutation, PermutationError, conj, element_order, is_identity, mul
from .stabchain import (
    Group,
    StabChain,
    alternating_group,
    canonical_coset_element,
    coset_representatives,
    group_from_elements,
    subgroup_intersection,
)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


# orbits and blocks -------------------------------------------------------------

def orbits(g: Group) -> list[list[int]]:
    """Orbits as sorted lists of 1-based points, ordered by least point."""
    n = g.degree
    gens = g.raw_generators
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
        out.append(sorted(x + 1 for x in orb))
    return out


def is_transitive(g: Group) -> bool:
    return len(orbits(g)) == 1


def _minimal_block_system(gens: Sequence[tuple], n: int, a: int, b: int) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(b)] = find(a)
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        for s in gens:
            u, v = find(s[x]), find(s[y])
            if u != v:
                parent[v] = u
                queue.append((u, v))
    classes: dict[int, list[int]] = {}
    for x in range(n):
        classes.setdefault(find(x), []).append(x + 1)
    return sorted(classes.values())


@dataclass
class PrimitivityResult:
    primitive: bool
    blocks: list[list[int]] | None = None

    def __bool__(self) -> bool:
        return self.primitive


def is_primitive(g: Group) -> PrimitivityResult:
    """Primitivity test; a False verdict carries an invariant partition.

    Intransitive groups return their orbits as the witness.
    """
    orbs = orbits(g)
    if len(orbs) > 1:
        return PrimitivityResult(False, orbs)
    n = g.degree
    gens = g.raw_generators
    for w in range(1, n):
        blocks = _minimal_block_system(gens, n, 0, w)
        if len(blocks) > 1:
            return PrimitivityResult(False, blocks)
    return PrimitivityResult(True, None)


def blocks_are_invariant(g: Group, blocks: Sequence[Sequence[int]]) -> bool:
    where = {}
    for i, blk in enumerate(blocks):
        for x in blk:
            where[x] = i
    if sorted(where) != list(range(1, g.degree + 1)):
        return False
    for s in g.generators:
        for blk in blocks:
            if len({where[s.image(x)] for x in blk}) != 1:
                return False
    return True


# normal structure --------------------------------------------------------------

def is_normal(g: Group, j: Group) -> bool:
    return g.contains_group(j) and all(j.is_normalized_by(s) for s in g.generators)


def normal_closure(g: Group, seeds: Sequence[Permutation]) -> Group:
    """Smallest normal subgroup of ``g`` containing ``seeds``."""
    for x in seeds:
        if x.degree != g.degree:
            raise PermutationError("degree mismatch")
        if x not in g:
            raise ValueError(f"seed {x} is not in the group")
    chain = StabChain(g.degree)
    gens = [x.array for x in seeds if chain.insert(x.array)]
    conj_by = g.raw_generators
    k = 0
    while k < len(gens):
        x = gens[k]
        k += 1
        for s in conj_by:
            y = conj(x, s)
            if chain.insert(y):
                gens.append(y)
    return Group._from_raw(gens, g.degree, chain=chain)


def conjugacy_class(g: Group, x: tuple) -> set[tuple]:
    cls = {x}
    stack = [x]
    gens = g.raw_generators
    while stack:
        y = stack.pop()
        for s in gens:
            z = conj(y, s)
            if z not in cls:
                cls.add(z)
                stack.append(z)
    return cls


def prime_order_class_representatives(g: Group, within: Group | None = None) -> list[tuple]:
    """One element per ``g``-conjugacy class of prime-order elements of ``within``."""
    within = g if within is None else within
    seen: set[tuple] = set()
    reps = []
    for a in within.raw_elements():
        if a in seen or is_identity(a):
            continue
        if not _is_prime(element_order(a)):
            continue
        seen |= conjugacy_class(g, a)
        reps.append(a)
    return reps


def _prime_power(a: tuple) -> tuple:
    """A power of ``a`` of prime order (``a`` non-trivial)."""
    o = element_order(a)
    p = next(d for d in range(2, o + 1) if o % d == 0)
    return Permutation(a, check=False) ** (o // p)


def _dedupe(groups: list[Group]) -> list[Group]:
    out: list[Group] = []
    for c in groups:
        if not any(c.same_group(d) for d in out):
            out.append(c)
    return out


def _minimal_normals_within(g: Group, n: Group, rng: random.Random, tries: int = 8) -> list[Group]:
    """Minimal normal subgroups of ``g`` contained in the normal subgroup ``n``.

    With ``c`` the normal closure of some element of ``n``, a minimal normal
    ``m <= n`` meets ``c`` in 1 or ``m``, so it lies in ``c`` or in
    ``C_n(c)``.  Sampled closures split the problem; once they stop shrinking
    the classes of ``n`` are enumerated.  Splits that do not shrink both
    parts are skipped.
    """
    if n.is_trivial():
        return []
    for _ in range(tries):
        x = n.random_element(rng)
        if x.is_identity():
            continue
        c = normal_closure(g, [_prime_power(x.array)])
        if c.order() == n.order():
            continue
        cent = centralizer_of_normal(n, c)
        if cent.order() == n.order():
            continue    # no progress, e.g. n abelian
        inside = _minimal_normals_within(g, c, rng, tries)
        outside = _minimal_normals_within(g, cent, rng, tries)
        return _dedupe(inside + outside)
    closures = _dedupe([normal_closure(g, [Permutation(rep, check=False)])
                        for rep in prime_order_class_representatives(g, n)])
    return [c for c in closures
            if not any(d.order() < c.order() and c.contains_group(d) for d in closures)]


def minimal_normal_subgroups(g: Group) -> list[Group]:
    """All minimal normal subgroups, via normal closures of prime-order elements.

    Every minimal normal subgroup is the normal closure of any of its
    non-identity elements, so the inclusion-minimal closures are exactly the
    minimal normal subgroups.  Only the smallest normal subgroups reached by
    splitting need to be enumerable.  Sorted by order, then generators.
    """
    if g.is_trivial():
        raise ValueError("the trivial group has no minimal normal subgroups")
    mins = _minimal_normals_within(g, g, random.Random(0))
    return sorted(mins, key=lambda m: (m.order(), [x.array for x in m.generators]))


def centralizer_of_normal(g: Group, j: Group) -> Group:
    """``C_g(j)`` for a normal subgroup ``j`` of ``g``."""
    if not is_normal(g, j):
        raise ValueError("j is not a normal subgroup of g")
    if j.is_trivial():
        return g
    from .conjugacy import centraliser_in_symmetric

    if g.order() <= get_limits().enum_limit:
        jgens = j.generators
        keep = (Permutation(a, check=False) for a in g.raw_elements())
        return group_from_elements(
            (x for x in keep if all(x.commutes_with(y) for y in jgens)), g.degree)
    return subgroup_intersection(g, centraliser_in_symmetric(j))


def socle(g: Group) -> Group:
    gens = [x for m in minimal_normal_subgroups(g) for x in m.generators]
    return group_from_elements(gens, g.degree)


def is_simple(g: Group) -> bool:
    if g.is_trivial():
        return False
    mins = minimal_normal_subgroups(g)
    return len(mins) == 1 and mins[0].same_group(g)


# homomorphisms given by generator images ---------------------------------------------

class Homomorphism:
    """A map given by images of the source generators.

    Internally uses the diagonal subgroup ``{(x, phi(x))}`` of
    ``Sym(n1) x Sym(n2)``; the map is well defined exactly when that group is
    no larger than the source.
    """

    def __init__(self, source: Group, images: Sequence[Permutation],
                 target_degree: int | None = None):
        if len(images) != len(source.generators):
            raise ValueError("need one image per source generator")
        if target_degree is None:
            if not images:
                raise ValueError("target degree is required when there are no generators")
            target_degree = images[0].degree
        self.source = source
        self.images = tuple(images)
        self.target_degree = target_degree
        n1 = source.degree
        diag = [g.array + tuple(n1 + x for x in h.array)
                for g, h in zip(source.generators, images)]
        self._diag = StabChain.build(diag, n1 + target_degree)

    def image_group(self) -> Group:
        return Group(self.images, self.target_degree)

    def is_well_defined(self) -> bool:
        return self._diag.order() == self.source.order()

    def is_injective(self) -> bool:
        return self.is_well_defined() and self._diag.order() == self.image_group().order()

    def extends_to_isomorphism(self, target: Group | None = None) -> bool:
        if not self.is_injective():
            return False
        return target is None or self.image_group().same_group(target)

    def __call__(self, x: Permutation) -> Permutation:
        n1 = self.source.degree
        n2 = self.target_degree
        a = x.array + tuple(range(n1, n1 + n2))
        y = self._diag.identity
        for lev in self._diag.levels:
            if lev.point >= n1:
                break
            b = a[lev.point]
            if b == lev.point:
                continue
            u = lev.trans.get(b)
            if u is None:
                raise ValueError(f"{x} is not in the source group")
            a = mul(a, lev.trans_inv[b])
            y = mul(u, y)
        if not all(a[i] == i for i in range(n1)):
            raise ValueError(f"{x} is not in the source group")
        return Permutation([y[n1 + i] - n1 for i in range(n2)], check=False)

    def inverse(self) -> "Homomorphism":
        return Homomorphism(self.image_group(), self.source.generators, self.source.degree)

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``other`` after ``self``."""
        return Homomorphism(self.source, [other(y) for y in self.images], other.target_degree)


def extends_to_isomorphism(source: Group, images: Sequence[Permutation],
                           target: Group | None = None) -> bool:
    return Homomorphism(source, images).extends_to_isomorphism(target)


# alternating groups ------------------------------------------------------------

def alternating_degree(order: int) -> int | None:
    m = 5
    while math.factorial(m) // 2 < order:
        m += 1
    return m if math.factorial(m) // 2 == order else None


def coset_action(g: Group, u: Group) -> list[Permutation]:
    """Images of ``g``'s generators in the action on right cosets of ``u``."""
    reps = coset_representatives(g, u)
    uchain = u.chain
    index = {canonical_coset_element(uchain, r.array): i for i, r in enumerate(reps)}
    out = []
    for s in g.raw_generators:
        out.append(Permutation(
            [index[canonical_coset_element(uchain, mul(r.array, s))] for r in reps],
            check=False))
    return out


@dataclass
class AlternatingRecognition:
    m: int
    iso: Homomorphism


def recognize_alternating(g: Group, *, seed: int = 0,
                          max_tries: int = 20000) -> AlternatingRecognition | None:
    """If ``g`` is isomorphic to ``A_m`` with ``m >= 5``, return ``m`` and an
    isomorphism onto the natural ``A_m`` given by generator images."""
    if g.is_trivial():
        return None
    order = g.order()
    m = alternating_degree(order)
    if m is None:
        return None
    target = alternating_group(m)
    if g.degree == m:
        # order m!/2 inside Sym(m) forces the natural A_m
        iso = Homomorphism(g, g.generators, m)
        return AlternatingRecognition(m, iso)
    if not is_simple(g):
        return None
    if m == 8 and not any(element_order(a) == 15 for a in g.raw_elements()):
        return None  # PSL(3,4) has the same order as A_8 but no elements of order 15
    rng = random.Random(seed)
    want = order // m
    for _ in range(max_tries):
        x = g.random_element(rng)
        y = g.random_element(rng)
        if order % x.order() or want % x.order() or want % y.order():
            continue
        u = Group([x, y], g.degree)
        if u.order() != want:
            continue
        images = coset_action(g, u)
        iso = Homomorphism(g, images, m)
        if iso.extends_to_isomorphism(target):
            return AlternatingRecognition(m, iso)
    raise ResourceLimitError(
        f"no index-{m} subgroup found in {max_tries} random trials")
