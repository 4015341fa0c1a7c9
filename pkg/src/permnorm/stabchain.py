"""Stabiliser chains and the basic permutation-group toolbox.

The chain is built with the deterministic Schreier-Sims algorithm: every
Schreier generator is sifted before a level is declared complete, so orders and
membership answers are exact.  New base points are the smallest point moved by
the generator that forced the new level.
"""
from __future__ import annotations

import itertools
import math
import random
from typing import Callable, Iterable, Iterator, Sequence

from .limits import ResourceLimitError, get_limits
from .perm import Permutation, PermutationError, invert, is_identity, mul


class _Level:
    __slots__ = ("point", "gens", "trans", "trans_inv", "done")

    def __init__(self, point: int, identity: tuple):
        self.point = point
        self.gens: list[tuple] = []
        self.trans: dict[int, tuple] = {point: identity}
        self.trans_inv: dict[int, tuple] = {point: identity}
        self.done: set[tuple[int, int]] = set()

    def extend_orbit(self):
        trans, trans_inv, gens = self.trans, self.trans_inv, self.gens
        queue = list(trans)
        k = 0
        while k < len(queue):
            p = queue[k]
            k += 1
            u = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    v = mul(u, s)
                    trans[q] = v
                    trans_inv[q] = invert(v)
                    queue.append(q)


class StabChain:
    """Base, strong generators and explicit transversals of a group."""

    def __init__(self, degree: int, levels: list[_Level] | None = None):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.levels: list[_Level] = levels if levels is not None else []

    @classmethod
    def build(cls, generators: Iterable[tuple], degree: int,
              base_prefix: Sequence[int] = ()) -> "StabChain":
        chain = cls(degree)
        for b in base_prefix:
            chain.levels.append(_Level(b, chain.identity))
        for g in generators:
            chain.insert(g)
        return chain

    # queries --------------------------------------------------------------

    def order(self) -> int:
        return math.prod(len(lev.trans) for lev in self.levels)

    @property
    def base(self) -> list[int]:
        """Irredundant base, 0-based points."""
        return [lev.point for lev in self.levels if len(lev.trans) > 1]

    @property
    def strong_generators(self) -> list[tuple]:
        return list(self.levels[0].gens) if self.levels else []

    def sift(self, a: tuple, start: int = 0) -> tuple[tuple, int]:
        levels = self.levels
        for i in range(start, len(levels)):
            lev = levels[i]
            b = a[lev.point]
            if b == lev.point:
                continue
            inv = lev.trans_inv.get(b)
            if inv is None:
                return a, i
            a = mul(a, inv)
        return a, len(levels)

    def contains(self, a: tuple) -> bool:
        h, _ = self.sift(a)
        return is_identity(h)

    def elements(self) -> Iterator[tuple]:
        transversals = [list(lev.trans.values()) for lev in self.levels]
        ident = self.identity
        # g = u_{r-1} ... u_1 u_0, one transversal element per level
        for choice in itertools.product(*reversed(transversals)):
            g = ident
            for u in choice:
                g = mul(g, u)
            yield g

    def random_element(self, rng: random.Random) -> tuple:
        g = self.identity
        for lev in reversed(self.levels):
            g = mul(g, lev.trans[rng.choice(list(lev.trans))])
        return g

    def orbit_lengths(self) -> list[int]:
        return [len(lev.trans) for lev in self.levels]

    # construction ---------------------------------------------------------

    def insert(self, g: tuple) -> bool:
        """Add ``g`` to the group; return False if it was already a member."""
        h, j = self.sift(g)
        if is_identity(h):
            return False
        self._add_strong(h, 0, j)
        self._schreier_sims(j)
        return True

    def _add_strong(self, h: tuple, lo: int, hi: int):
        if hi == len(self.levels):
            point = next(i for i, x in enumerate(h) if i != x)
            self.levels.append(_Level(point, self.identity))
        for t in range(lo, hi + 1):
            lev = self.levels[t]
            lev.gens.append(h)
            lev.extend_orbit()

    def _schreier_sims(self, start: int):
        i = start
        while i >= 0:
            lev = self.levels[i]
            restart = None
            for pt in list(lev.trans):
                u = lev.trans[pt]
                for gi, s in enumerate(lev.gens):
                    if (pt, gi) in lev.done:
                        continue
                    q = s[pt]
                    schreier = mul(mul(u, s), lev.trans_inv[q])
                    h, j = self.sift(schreier, i + 1)
                    if is_identity(h):
                        lev.done.add((pt, gi))
                        continue
                    self._add_strong(h, i + 1, j)
                    restart = j
                    break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart

    def tail(self, k: int) -> "StabChain":
        """Chain of the pointwise stabiliser of the first ``k`` base points."""
        return StabChain(self.degree, self.levels[k:])


class Group:
    """A permutation group given by generators, with a lazily built chain."""

    def __init__(self, generators: Iterable[Permutation] = (), degree: int | None = None,
                 *, chain: StabChain | None = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for a group without generators")
            degree = gens[0].degree
        if degree < 1:
            raise ValueError("degree must be positive")
        for g in gens:
            if not isinstance(g, Permutation):
                raise TypeError(f"generator {g!r} is not a Permutation")
            if g.degree != degree:
                raise PermutationError(
                    f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = gens
        self._chain = chain

    @classmethod
    def _from_raw(cls, raw: Iterable[tuple], degree: int,
                  chain: StabChain | None = None) -> "Group":
        return cls([Permutation(a, check=False) for a in raw], degree, chain=chain)

    @property
    def raw_generators(self) -> list[tuple]:
        return [g.array for g in self.generators]

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain.build(self.raw_generators, self.degree)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def base(self) -> list[int]:
        """Irredundant base, 1-based points."""
        return [b + 1 for b in self.chain.base]

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def __contains__(self, p: Permutation) -> bool:
        return membership(self.chain, p)

    def contains_group(self, other: "Group") -> bool:
        return other.degree == self.degree and all(g in self for g in other.generators)

    def same_group(self, other: "Group") -> bool:
        """Equal as subgroups of Sym(n): equal orders and mutual membership."""
        return (self.degree == other.degree and self.order() == other.order()
                and self.contains_group(other) and other.contains_group(self))

    def is_normalized_by(self, p: Permutation) -> bool:
        return all(g.conjugate(p) in self for g in self.generators)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a.commutes_with(b) for a, b in itertools.combinations(gens, 2))

    def conjugate(self, p: Permutation) -> "Group":
        return Group([g.conjugate(p) for g in self.generators], self.degree)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def elements(self, limit: int | None = None) -> Iterator[Permutation]:
        for a in self.raw_elements(limit):
            yield Permutation(a, check=False)

    def raw_elements(self, limit: int | None = None) -> Iterator[tuple]:
        limit = get_limits().enum_limit if limit is None else limit
        if self.order() > limit:
            raise ResourceLimitError(
                f"group of order {self.order()} exceeds enumeration limit {limit}")
        return self.chain.elements()

    def random_element(self, rng: random.Random) -> Permutation:
        return Permutation(self.chain.random_element(rng), check=False)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"Group(degree={self.degree}, generators=[{gens}])"


# constructors ----------------------------------------------------------------

def trivial_group(degree: int) -> Group:
    return Group([], degree)


def symmetric_group(degree: int) -> Group:
    if degree == 1:
        return Group([], 1)
    gens = [Permutation.from_cycles([(1, 2)], degree)]
    if degree > 2:
        gens.append(Permutation.from_cycles([tuple(range(1, degree + 1))], degree))
    return Group(gens, degree)


def alternating_group(degree: int) -> Group:
    if degree < 3:
        return Group([], degree)
    gens = [Permutation.from_cycles([(1, 2, 3)], degree)]
    if degree > 3:
        start = 1 if degree % 2 else 2
        gens.append(Permutation.from_cycles([tuple(range(start, degree + 1))], degree))
    return Group(gens, degree)


# toolbox operations ------------------------------------------------------------

def build_stab_chain(g: Group) -> StabChain:
    return g.chain


def membership(chain: StabChain, p: Permutation) -> bool:
    if p.degree != chain.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {chain.degree}")
    return chain.contains(p.array)


def pointwise_stabilizer(g: Group, points: Sequence[int]) -> Group:
    """``g_(points)`` for 1-based ``points``, by rebuilding the chain on that base prefix."""
    pts = [p - 1 for p in points]
    for p in pts:
        if not 0 <= p < g.degree:
            raise ValueError(f"point {p + 1} out of range 1..{g.degree}")
    if g.is_trivial():
        return trivial_group(g.degree)
    seen: list[int] = []
    for p in pts:
        if p not in seen:
            seen.append(p)
    chain = StabChain.build(g.chain.strong_generators, g.degree, base_prefix=seen)
    k = len(seen)
    gens = chain.levels[k].gens if k < len(chain.levels) else []
    return Group._from_raw(gens, g.degree, chain=chain.tail(k))


def reduce_generators(g: Group) -> Group:
    """Drop every generator lying in the group generated by its predecessors."""
    chain = StabChain(g.degree)
    kept = []
    for x in g.generators:
        if chain.insert(x.array):
            kept.append(x)
    return Group(kept, g.degree, chain=chain)


def group_from_elements(elements: Iterable[Permutation], degree: int) -> Group:
    """Group generated by ``elements``, keeping only the non-redundant ones."""
    chain = StabChain(degree)
    kept = [x for x in elements if chain.insert(x.array)]
    return Group(kept, degree, chain=chain)


def canonical_coset_element(hchain: StabChain, x: tuple) -> tuple:
    """The element of the right coset ``H x`` with lexicographically least base images."""
    for lev in hchain.levels:
        best = min(lev.trans, key=x.__getitem__)
        if best != lev.point:
            x = mul(lev.trans[best], x)
    return x


def coset_representatives(g: Group, h: Group, limit: int | None = None) -> list[Permutation]:
    """One representative per right coset ``h r`` of ``h`` in ``g``, identity first."""
    if g.degree != h.degree:
        raise PermutationError("degree mismatch")
    if not g.contains_group(h):
        raise ValueError("h is not a subgroup of g")
    limit = get_limits().coset_limit if limit is None else limit
    index = g.order() // h.order()
    if index > limit:
        raise ResourceLimitError(f"index {index} exceeds coset limit {limit}")
    hchain = h.chain
    ident = tuple(range(g.degree))
    reps = [ident]
    keys = {canonical_coset_element(hchain, ident)}
    gens = g.raw_generators
    k = 0
    while k < len(reps) and len(reps) < index:
        r = reps[k]
        k += 1
        for s in gens:
            y = mul(r, s)
            key = canonical_coset_element(hchain, y)
            if key not in keys:
                keys.add(key)
                reps.append(y)
    assert len(reps) == index
    return [Permutation(r, check=False) for r in reps]


def point_orbit(point: int, gens: Sequence[tuple]) -> set[int]:
    orb = {point}
    stack = [point]
    while stack:
        p = stack.pop()
        for s in gens:
            q = s[p]
            if q not in orb:
                orb.add(q)
                stack.append(q)
    return orb


def subgroup_search(g: Group, test: Callable[[tuple], bool],
                    prune: Callable[[list[int]], bool] | None = None,
                    seed: Iterable[Permutation] = (),
                    node_limit: int | None = None) -> Group:
    """Generators of the subgroup ``{x in g : test(x)}`` by base-image backtracking.

    ``test`` must define a subgroup.  ``prune(images)`` receives the images of
    the first base points of ``g`` and returns False when no element of the
    subgroup can extend them; it must never reject a valid prefix.  ``seed``
    elements are taken to lie in the subgroup.
    """
    node_limit = get_limits().backtrack_limit if node_limit is None else node_limit
    levels = g.chain.levels
    r = len(levels)
    base = [lev.point for lev in levels]
    found: list[tuple] = [s.array for s in seed if not s.is_identity()]
    nodes = 0

    def dfs(t: int, q: tuple, images: list[int]) -> tuple | None:
        nonlocal nodes
        if t == r:
            return q if test(q) else None
        lev = levels[t]
        for delta, u in lev.trans.items():
            nodes += 1
            if nodes > node_limit:
                raise ResourceLimitError(f"backtrack search exceeded {node_limit} nodes")
            images.append(q[delta])
            if prune is None or prune(images):
                res = dfs(t + 1, mul(u, q), images)
                if res is not None:
                    images.pop()
                    return res
            images.pop()
        return None

    for i in reversed(range(r)):
        fixed = base[:i]
        level_gens = [x for x in found if all(x[b] == b for b in fixed)]
        orb = point_orbit(base[i], level_gens)
        for gamma in sorted(levels[i].trans):
            if gamma in orb:
                continue
            images = fixed + [gamma]
            if prune is not None and not prune(images):
                continue
            x = dfs(i + 1, levels[i].trans[gamma], images)
            if x is not None:
                found.append(x)
                level_gens.append(x)
                orb = point_orbit(base[i], level_gens)
    return reduce_generators(Group._from_raw(found, g.degree))


def _prefix_extends_in(kchain: StabChain, images: Sequence[int]) -> bool:
    """Some element of the chain's group maps base point t to images[t] for all t."""
    y = kchain.identity
    y_inv = y
    for t, c in enumerate(images):
        lev = kchain.levels[t]
        u = lev.trans.get(y_inv[c])
        if u is None:
            return False
        y = mul(u, y)
        y_inv = invert(y)
    return True


def subgroup_intersection(g: Group, k: Group) -> Group:
    """``g ∩ k`` exactly, by backtracking over the smaller group's chain."""
    if g.degree != k.degree:
        raise PermutationError("degree mismatch")
    if g.is_trivial() or k.is_trivial():
        return trivial_group(g.degree)
    if k.order() < g.order():
        g, k = k, g
    if k.contains_group(g):
        return g
    base = [lev.point for lev in g.chain.levels]
    kchain = StabChain.build(k.chain.strong_generators, k.degree, base_prefix=base)
    seed = [x for x in g.generators if k.chain.contains(x.array)]
    return subgroup_search(
        g, test=kchain.contains,
        prune=lambda images: _prefix_extends_in(kchain, images),
        seed=seed)
