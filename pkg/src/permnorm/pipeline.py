"""Deciding whether ``N = N_{Sym(n)}(H)`` is primitive, and computing ``N_K(H)``.

The classifier runs the case analysis in a fixed order: transitivity, the
almost-simple case, the ample case, the order bound ``n^(1 + floor(log2 n))``
and finally the small-group case.  Logarithms are base 2 throughout.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .ample import (
    certificate_for_socle,
    normaliser_by_sweep,
    normaliser_of_ample,
    socle_normaliser,
)
from .conjugacy import centraliser_in_symmetric, conjugating_permutation
from .limits import ResourceLimitError, get_limits
from .perm import Permutation, conj, cycle_type
from .stabchain import (
    Group,
    StabChain,
    point_orbit,
    group_from_elements,
    pointwise_stabilizer,
    reduce_generators,
    subgroup_intersection,
    subgroup_search,
    symmetric_group,
)
from .structure import (
    centralizer_of_normal,
    is_primitive,
    is_simple,
    is_transitive,
    minimal_normal_subgroups,
    orbits,
)

log = logging.getLogger(__name__)

MATHIEU_DEGREE_ORDERS = frozenset({(11, 7920), (12, 95040), (23, 10200960), (24, 244823040)})


@dataclass(frozen=True)
class PipelineConfig:
    degree: int

    @property
    def log_n_floor(self) -> int:
        return self.degree.bit_length() - 1

    @property
    def log_n_ceiling(self) -> int:
        return (self.degree - 1).bit_length()

    @property
    def generating_set_bound(self) -> int:
        return self.log_n_ceiling

    @property
    def base_bound(self) -> int:
        return self.log_n_ceiling + 1

    @property
    def small_order_bound(self) -> int:
        return self.degree ** (1 + self.log_n_floor)


@dataclass
class ClassifyResult:
    verdict: str                            # "Primitive" or "NotPrimitive"
    group_class: str | None = None          # almost-simple | ample | small
    reason: str | None = None
    normaliser: Group | None = None
    witness: list[list[int]] | None = None
    path: str | None = None

    @property
    def primitive(self) -> bool:
        return self.verdict == "Primitive"


# small generating sets and bases ----------------------------------------------------

def small_generating_set(h: Group) -> list[Permutation] | None:
    """A generating set of size at most ``ceil(log2 n)``, or None if none exists.

    The reduced input generators are tried first.  Otherwise all increasing
    tuples of elements are searched, each new element lying outside the group
    generated so far; any ordering of a minimum generating set has that form,
    so None is a proof.
    """
    cfg = PipelineConfig(h.degree)
    d = cfg.generating_set_bound
    if h.is_trivial():
        return []
    reduced = reduce_generators(h)
    if len(reduced.generators) <= d:
        return list(reduced.generators)
    order = h.order()
    if order > cfg.small_order_bound:
        raise ValueError(f"|H| = {order} exceeds n^(1+floor(log n)) = {cfg.small_order_bound}")
    elements = [a for a in h.raw_elements() if any(i != x for i, x in enumerate(a))]
    node_limit = get_limits().backtrack_limit
    nodes = 0

    def dfs(start: int, chosen: list[tuple]) -> list[tuple] | None:
        nonlocal nodes
        chain = StabChain.build(chosen, h.degree)
        if chain.order() == order:
            return chosen
        if len(chosen) == d:
            return None
        for i in range(start, len(elements)):
            x = elements[i]
            nodes += 1
            if nodes > node_limit:
                raise ResourceLimitError("generating-set search exceeded the node limit")
            if chain.contains(x):
                continue
            res = dfs(i + 1, chosen + [x])
            if res is not None:
                return res
        return None

    found = dfs(0, [])
    return None if found is None else [Permutation(a, check=False) for a in found]


def small_base(h: Group) -> list[int] | None:
    """A base of at most ``ceil(log2 n) + 1`` points (1-based), or None if none exists."""
    cfg = PipelineConfig(h.degree)
    bound = cfg.base_bound
    n = h.degree
    if h.is_trivial():
        return []
    base = h.base()
    if len(base) <= bound:
        return base
    node_limit = get_limits().backtrack_limit
    nodes = 0

    def dfs(start: int, stab: Group, chosen: list[int]) -> list[int] | None:
        nonlocal nodes
        if stab.is_trivial() or stab.order() == 1:
            return chosen
        left = bound - len(chosen)
        if left == 0 or stab.order() > n ** left:
            return None
        moved = sorted({p for g in stab.generators for p in g.support()})
        for p in moved:
            if p < start:
                continue
            nodes += 1
            if nodes > node_limit:
                raise ResourceLimitError("base search exceeded the node limit")
            res = dfs(p + 1, pointwise_stabilizer(stab, [p]), chosen + [p])
            if res is not None:
                return res
        return None

    return dfs(1, h, [])


# normalisers of small groups ------------------------------------------------------------

def _conjugation_orbit_reps(cands: Sequence[tuple], by: Sequence[tuple]) -> list[tuple]:
    seen: set[tuple] = set()
    reps = []
    for c in cands:
        if c in seen:
            continue
        reps.append(c)
        seen.add(c)
        stack = [c]
        while stack:
            x = stack.pop()
            for s in by:
                y = conj(x, s)
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return reps


def normaliser_via_automorphisms(h: Group) -> Group:
    """``N_{Sym(n)}(h)`` for an enumerable ``h``.

    Every normalising element sends the reduced generators ``z`` of ``h`` to a
    tuple of elements of ``h`` with the same cycle types.  Image tuples are
    enumerated up to conjugation by ``h`` (each coordinate modulo the
    centraliser of the ones already fixed), every prefix must be realisable by
    some permutation, and each full tuple yields one conjugating element.
    Together with ``h`` and ``C_{Sym(n)}(h)`` these generate the normaliser.
    """
    n = h.degree
    if h.is_trivial():
        return symmetric_group(n)
    z = list(reduce_generators(h).generators)
    by_type: dict[tuple, list[tuple]] = defaultdict(list)
    elements = list(h.raw_elements())
    for a in elements:
        by_type[cycle_type(a)].append(a)
    cands = [by_type[z_i.cycle_type()] for z_i in z]
    found: list[Permutation] = []
    node_limit = get_limits().backtrack_limit
    nodes = 0

    def dfs(i: int, images: list[Permutation], cen: list[tuple], cen_gens: list[tuple]):
        nonlocal nodes
        for c in _conjugation_orbit_reps(cands[i], cen_gens):
            nodes += 1
            if nodes > node_limit:
                raise ResourceLimitError("automorphism search exceeded the node limit")
            t = images + [Permutation(c, check=False)]
            sigma = conjugating_permutation(z[:i + 1], t)
            if sigma is None:
                continue
            if i + 1 == len(z):
                found.append(sigma)
                continue
            cp = Permutation(c, check=False)
            sub = [x for x in cen if Permutation(x, check=False).commutes_with(cp)]
            sub_gens = group_from_elements(
                (Permutation(x, check=False) for x in sub), n).raw_generators
            dfs(i + 1, t, sub, sub_gens)

    dfs(0, [], elements, h.raw_generators)
    log.debug("automorphism search: %d nodes, %d conjugators", nodes, len(found))
    gens = list(h.generators) + list(centraliser_in_symmetric(h).generators) + found
    return group_from_elements(gens, n)


def normaliser_small(h: Group) -> Group:
    """``N_{Sym(n)}(h)`` for ``|h| < n^(1 + floor(log2 n))``; ``h`` need not be primitive."""
    cfg = PipelineConfig(h.degree)
    if not h.is_trivial() and h.order() >= cfg.small_order_bound:
        raise ValueError(
            f"|H| = {h.order()} is not below n^(1+floor(log n)) = {cfg.small_order_bound}")
    return normaliser_via_automorphisms(h)


# almost simple groups ------------------------------------------------------------

def _almost_simple_socle(h: Group, mins: list[Group] | None = None) -> Group | None:
    if h.is_trivial():
        return None
    mins = minimal_normal_subgroups(h) if mins is None else mins
    if len(mins) != 1:
        return None
    t = mins[0]
    if t.is_abelian() or not is_simple(t):
        return None
    if not centralizer_of_normal(h, t).is_trivial():
        return None
    return t


def almost_simple_normaliser(h: Group, *, minimal_normals: list[Group] | None = None) -> Group | None:
    """``N_{Sym(n)}(h)`` when ``h`` is almost simple, else None.

    The normaliser of the simple socle ``T`` comes from the wreath product when
    ``T`` is some ``A(m,k)``, otherwise from the automorphism search; ``N`` is
    then the part of it normalising ``h``.
    """
    t = _almost_simple_socle(h, minimal_normals)
    if t is None:
        return None
    cert = certificate_for_socle(t)
    m = socle_normaliser(cert) if cert is not None else normaliser_via_automorphisms(t)
    return normaliser_by_sweep(h, m)


# the classifier ------------------------------------------------------------------

def _primitive_or_blocks(n_group: Group, group_class: str) -> ClassifyResult:
    prim = is_primitive(n_group)
    if prim:
        return ClassifyResult("Primitive", group_class, normaliser=n_group, path=group_class)
    return ClassifyResult("NotPrimitive", reason="explicit-block-system", normaliser=n_group,
                          witness=prim.blocks, path=group_class)


def classify_and_normalise(h: Group) -> ClassifyResult:
    """Decide whether ``N_{Sym(n)}(h)`` is primitive and, when it is, compute it."""
    n = h.degree
    cfg = PipelineConfig(n)
    if h.is_trivial():
        # N = Sym(n), primitive for every n
        return ClassifyResult("Primitive", "small", normaliser=symmetric_group(n), path="small")
    if not is_transitive(h):
        return ClassifyResult("NotPrimitive", reason="intransitive", witness=orbits(h))

    mins = minimal_normal_subgroups(h)
    as_norm = almost_simple_normaliser(h, minimal_normals=mins)
    if as_norm is not None:
        return _primitive_or_blocks(as_norm, "almost-simple")

    soc = group_from_elements([x for m in mins for x in m.generators], n)
    cert = certificate_for_socle(soc)
    if cert is not None:
        if cert.l >= 2:
            n_group = normaliser_of_ample(h, cert)
        else:
            n_group = normaliser_by_sweep(h, socle_normaliser(cert))
        return _primitive_or_blocks(n_group, "ample")

    if h.order() >= cfg.small_order_bound:
        return ClassifyResult("NotPrimitive", reason="order-too-large-not-ample")
    if small_generating_set(h) is None or small_base(h) is None:
        return ClassifyResult("NotPrimitive", reason="no-small-base-or-gens")
    return _primitive_or_blocks(normaliser_small(h), "small")


# normalisers inside K ------------------------------------------------------------

def normaliser_backtrack(h: Group, k: Group) -> Group:
    """``N_k(h)`` by backtracking over ``k``'s chain.

    A normalising element maps ``h_(b_1..b_t)`` onto ``h_(c_1..c_t)`` when it
    sends base points ``b`` to ``c``, so the orbit lengths of the next base
    point must agree; prefixes failing that are cut.
    """
    hchain = h.chain
    hgens = h.raw_generators
    stabs: dict[tuple, Group] = {(): h}

    def stab_of(prefix: tuple) -> Group:
        g = stabs.get(prefix)
        if g is None:
            g = pointwise_stabilizer(stab_of(prefix[:-1]), [prefix[-1] + 1])
            stabs[prefix] = g
        return g

    def orbit_len(prefix: tuple, point: int) -> int:
        return len(point_orbit(point, stab_of(prefix).raw_generators))

    base = [lev.point for lev in k.chain.levels]

    def prune(images: list[int]) -> bool:
        t = len(images) - 1
        return orbit_len(tuple(base[:t]), base[t]) == orbit_len(tuple(images[:t]), images[t])

    def test(x: tuple) -> bool:
        return all(hchain.contains(conj(g, x)) for g in hgens)

    seed = [g for g in h.generators if g in k]
    return subgroup_search(k, test, prune=prune, seed=seed)


@dataclass
class NormaliserReport:
    group: Group
    path: str
    classification: ClassifyResult | None = field(default=None, repr=False)


def normaliser_report(h: Group, k: Group | None = None) -> NormaliserReport:
    """``N_k(h)`` (``k`` defaults to Sym(n)) together with the route used."""
    if k is not None and k.degree != h.degree:
        raise ValueError("H and K must have equal degree")
    res = classify_and_normalise(h)
    if res.normaliser is not None:
        n_group, path = res.normaliser, res.path
    elif h.order() < PipelineConfig(h.degree).small_order_bound:
        n_group, path = normaliser_small(h), "small"
    else:
        if k is None:
            k = symmetric_group(h.degree)
        return NormaliserReport(normaliser_backtrack(h, k), "fallback-backtrack", res)
    if k is None:
        return NormaliserReport(n_group, path, res)
    return NormaliserReport(subgroup_intersection(k, n_group), path, res)


def normaliser_in(h: Group, k: Group | None = None) -> Group:
    return normaliser_report(h, k).group


def satisfies_trichotomy(n_group: Group) -> bool:
    """Small order, ample, or one of the four 4-transitive Mathieu groups."""
    from .ample import detect_ample

    cfg = PipelineConfig(n_group.degree)
    if n_group.order() < cfg.small_order_bound:
        return True
    if (n_group.degree, n_group.order()) in MATHIEU_DEGREE_ORDERS:
        return True
    return detect_ample(n_group) is not None
