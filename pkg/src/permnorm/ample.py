"""k-subset actions, product-action wreath products and ample groups.

``A(m,k,l)`` is ``A_m^l`` acting coordinatewise on l-tuples of k-subsets of
``{1..m}``; ``W(m,k,l)`` is ``S_m wr S_l`` on the same domain and is the full
normaliser of ``A(m,k,l)``.  A group is ample when its socle is permutation
isomorphic to some ``A(m,k,l)`` with ``m >= 5`` and ``1 <= k < m/2``.

k-subsets are ranked in colexicographic order (combinatorial number system);
the product domain uses little-endian mixed radix.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .perm import Permutation, PermutationError
from .stabchain import (
    Group,
    alternating_group,
    coset_representatives,
    group_from_elements,
    pointwise_stabilizer,
    symmetric_group,
)
from .structure import (
    Homomorphism,
    centralizer_of_normal,
    is_transitive,
    minimal_normal_subgroups,
    recognize_alternating,
    socle,
)


def _check_params(m: int, k: int, l: int = 1):
    if m < 5 or not 1 <= k or 2 * k >= m or l < 1:
        raise ValueError(f"need m >= 5, 1 <= k < m/2, l >= 1; got ({m}, {k}, {l})")


class SubsetIndexer:
    """Bijection between k-subsets of {1..m} and ranks {1..C(m,k)}."""

    def __init__(self, m: int, k: int):
        if not 1 <= k <= m:
            raise ValueError(f"need 1 <= k <= m, got m={m}, k={k}")
        self.m = m
        self.k = k
        self.size = math.comb(m, k)
        self._subsets = [self._unrank0(r) for r in range(self.size)]
        self._ranks = {s: r for r, s in enumerate(self._subsets)}

    def _unrank0(self, r: int) -> tuple[int, ...]:
        out = []
        c = self.m
        for i in range(self.k, 0, -1):
            c -= 1
            while math.comb(c, i) > r:
                c -= 1
            r -= math.comb(c, i)
            out.append(c)
        return tuple(reversed(out))

    def rank(self, subset: Sequence[int]) -> int:
        s = tuple(sorted(x - 1 for x in subset))
        if len(s) != self.k or len(set(s)) != self.k or not all(0 <= x < self.m for x in s):
            raise ValueError(f"{subset!r} is not a {self.k}-subset of 1..{self.m}")
        return sum(math.comb(c, i + 1) for i, c in enumerate(s)) + 1

    def unrank(self, r: int) -> tuple[int, ...]:
        if not 1 <= r <= self.size:
            raise ValueError(f"rank {r} out of range 1..{self.size}")
        return tuple(x + 1 for x in self._subsets[r - 1])

    def induced(self, p: Sequence[int]) -> tuple[int, ...]:
        """0-based image table of the induced action of a 0-based table ``p``."""
        ranks = self._ranks
        return tuple(ranks[tuple(sorted(p[x] for x in s))] for s in self._subsets)


class ProductDomainIndexer:
    """Bijection between l-tuples of k-subsets and {1..C(m,k)^l}."""

    def __init__(self, indexer: SubsetIndexer, l: int):
        if l < 1:
            raise ValueError("l must be positive")
        self.indexer = indexer
        self.l = l
        self.radix = indexer.size
        self.size = indexer.size ** l

    def digits(self, index0: int) -> list[int]:
        out = []
        for _ in range(self.l):
            index0, d = divmod(index0, self.radix)
            out.append(d)
        return out

    def undigits(self, digits: Sequence[int]) -> int:
        return sum(d * self.radix ** i for i, d in enumerate(digits))

    def rank(self, subsets: Sequence[Sequence[int]]) -> int:
        if len(subsets) != self.l:
            raise ValueError(f"expected {self.l} coordinates")
        return self.undigits([self.indexer.rank(s) - 1 for s in subsets]) + 1

    def unrank(self, r: int) -> tuple[tuple[int, ...], ...]:
        if not 1 <= r <= self.size:
            raise ValueError(f"rank {r} out of range 1..{self.size}")
        return tuple(self.indexer.unrank(d + 1) for d in self.digits(r - 1))

    def coordinate_action(self, p: tuple[int, ...], coord: int) -> Permutation:
        """Permutation of the product domain acting by ``p`` (on ranks) in one coordinate."""
        out = []
        for x in range(self.size):
            d = self.digits(x)
            d[coord] = p[d[coord]]
            out.append(self.undigits(d))
        return Permutation(out, check=False)

    def coordinate_permutation(self, tau: Sequence[int]) -> Permutation:
        """Move coordinate ``i`` to position ``tau[i]`` (0-based)."""
        out = []
        for x in range(self.size):
            d = self.digits(x)
            e = [0] * self.l
            for i, v in enumerate(d):
                e[tau[i]] = v
            out.append(self.undigits(e))
        return Permutation(out, check=False)


def subset_action(p: Permutation, indexer: SubsetIndexer) -> Permutation:
    """The permutation of ranked k-subsets induced by ``p``."""
    if p.degree != indexer.m:
        raise PermutationError(f"expected degree {indexer.m}, got {p.degree}")
    return Permutation(indexer.induced(p.array), check=False)


@dataclass
class WreathProduct:
    m: int
    k: int
    l: int
    domain: ProductDomainIndexer
    wreath: Group          # S(m,k) wr S_l in product action
    socle: Group           # A(m,k,l)

    @property
    def degree(self) -> int:
        return self.domain.size

    def embed(self, p: Permutation, coord: int) -> Permutation:
        """A permutation of {1..m} acting on one coordinate of the product domain."""
        return self.domain.coordinate_action(self.domain.indexer.induced(p.array), coord)


@lru_cache(maxsize=None)
def build_wreath_generators(m: int, k: int, l: int) -> WreathProduct:
    _check_params(m, k, l)
    dom = ProductDomainIndexer(SubsetIndexer(m, k), l)
    sm = symmetric_group(m).generators
    am = alternating_group(m).generators

    def embed(p, coord):
        return dom.coordinate_action(dom.indexer.induced(p.array), coord)

    wgens = [embed(p, 0) for p in sm]
    if l >= 2:
        wgens.append(dom.coordinate_permutation([(i + 1) % l for i in range(l)]))
    if l >= 3:
        wgens.append(dom.coordinate_permutation([1, 0] + list(range(2, l))))
    agens = [embed(p, c) for c in range(l) for p in am]
    return WreathProduct(m, k, l, dom, Group(wgens, dom.size), Group(agens, dom.size))


def ample_parameters(n: int, m: int) -> list[tuple[int, int, int]]:
    """All ``(m, k, l)`` with ``C(m,k)^l == n`` and ``1 <= k < m/2``."""
    out = []
    for k in range(1, (m + 1) // 2):
        c = math.comb(m, k)
        if c < 2:
            continue
        l, p = 1, c
        while p < n:
            p *= c
            l += 1
        if p == n:
            out.append((m, k, l))
    return out


# the exceptional outer automorphism of A_6 -------------------------------------------

@lru_cache(maxsize=None)
def outer_automorphism_a6() -> Homomorphism:
    """An automorphism of the natural A_6 that is not induced by conjugation in S_6.

    Found by search: the image of the 3-cycle generator must be a product of two
    3-cycles, so the map cannot come from S_6.
    """
    a6 = alternating_group(6)
    gens = a6.generators
    elements = list(a6.elements())
    first = next(x for x in elements if x.cycle_type() == (3, 3))
    want = gens[1].cycle_type()
    for y in elements:
        if y.cycle_type() != want:
            continue
        phi = Homomorphism(a6, [first, y], 6)
        if phi.extends_to_isomorphism(a6):
            return phi
    raise AssertionError("A_6 has an outer automorphism")


# ample detection ------------------------------------------------------------------

@dataclass
class AmpleCertificate:
    """Permutation isomorphism from the socle ``S`` of a group onto ``A(m,k,l)``.

    ``sigma`` maps point ``w`` (0-based) to a 0-based index of the product
    domain, and ``sigma(w^s) == sigma(w)^iso(s)`` for every generator ``s`` of
    ``socle``.
    """
    m: int
    k: int
    l: int
    socle: Group
    images: tuple[Permutation, ...]
    sigma: tuple[int, ...]
    twists: tuple[bool, ...] = field(default=())

    @property
    def degree(self) -> int:
        return len(self.sigma)

    @property
    def iso(self) -> Homomorphism:
        return Homomorphism(self.socle, self.images, self.degree)

    def sigma_permutation(self) -> Permutation:
        return Permutation(self.sigma, check=False)

    def verify(self) -> bool:
        n = self.degree
        if sorted(self.sigma) != list(range(n)):
            return False
        wr = build_wreath_generators(self.m, self.k, self.l)
        if wr.degree != n or self.socle.degree != n:
            return False
        for s, t in zip(self.socle.generators, self.images):
            if t not in wr.socle:
                return False
            sa, ta = s.array, t.array
            if any(self.sigma[sa[w]] != ta[self.sigma[w]] for w in range(n)):
                return False
        return Group(self.images, n).same_group(wr.socle) and \
            self.socle.order() == wr.socle.order()

    def pull_back(self, z: Permutation) -> Permutation:
        """The permutation of {1..n} corresponding to ``z`` on the product domain."""
        sig = self.sigma_permutation()
        return sig * z * sig.inverse()

    def as_dict(self) -> dict:
        return {
            "m": self.m, "k": self.k, "l": self.l,
            "sigma": [x + 1 for x in self.sigma],
            "iso": [[str(s), str(t)] for s, t in zip(self.socle.generators, self.images)],
        }


def _alternating_factors(s: Group):
    """Split a socle into its minimal normal factors, each recognised as A_m."""
    factors = []
    rest = s
    while not rest.is_trivial():
        mins = minimal_normal_subgroups(rest)
        factor = mins[0]
        rec = recognize_alternating(factor)
        if rec is None:
            return None
        factors.append((factor, rec))
        rest = centralizer_of_normal(rest, factor)
    if len({rec.m for _, rec in factors}) != 1:
        return None
    if math.prod(f.order() for f, _ in factors) != s.order():
        return None
    return factors


def _find_sigma(s: Group, iso: Homomorphism, n: int) -> tuple[int, ...] | None:
    stab = pointwise_stabilizer(s, [1])
    stab_images = [iso(x).array for x in stab.generators]
    candidates = [d for d in range(n) if all(t[d] == d for t in stab_images)]
    gens = [(g.array, t.array) for g, t in zip(s.generators, iso.images)]
    for delta in candidates:
        sigma = {0: delta}
        used = {delta}
        queue = [0]
        ok = True
        while queue and ok:
            w = queue.pop()
            d = sigma[w]
            for ga, ta in gens:
                w2, d2 = ga[w], ta[d]
                known = sigma.get(w2)
                if known is None:
                    if d2 in used:
                        ok = False
                        break
                    sigma[w2] = d2
                    used.add(d2)
                    queue.append(w2)
                elif known != d2:
                    ok = False
                    break
        if ok and len(sigma) == n:
            return tuple(sigma[w] for w in range(n))
    return None


def certificate_for_socle(s: Group) -> AmpleCertificate | None:
    """Ample certificate for a group already known to be a socle, or None."""
    n = s.degree
    if s.is_trivial() or s.is_abelian() or not is_transitive(s):
        return None
    factors = _alternating_factors(s)
    if factors is None:
        return None
    m = factors[0][1].m
    l = len(factors)
    triples = [t for t in ample_parameters(n, m) if t[2] == l]
    if not triples:
        return None
    src = Group([x for f, _ in factors for x in f.generators], n)
    alpha = outer_automorphism_a6() if m == 6 else None
    for (_, k, _) in triples:
        wr = build_wreath_generators(m, k, l)
        twist_choices = itertools.product((False, True), repeat=l) if m == 6 else [(False,) * l]
        for twists in twist_choices:
            images = []
            for coord, ((factor, rec), twist) in enumerate(zip(factors, twists)):
                for x in factor.generators:
                    y = rec.iso(x)
                    if twist:
                        y = alpha(y)
                    images.append(wr.embed(y, coord))
            iso = Homomorphism(src, images, n)
            sigma = _find_sigma(src, iso, n)
            if sigma is None:
                continue
            cert = AmpleCertificate(m, k, l, src, tuple(images), sigma, tuple(twists))
            if cert.verify():
                return cert
    return None


def detect_ample(h: Group) -> AmpleCertificate | None:
    """A verified certificate that ``h`` is ample, or None when it is not."""
    if h.is_trivial():
        return None
    return certificate_for_socle(socle(h))


def socle_normaliser(cert: AmpleCertificate) -> Group:
    """``N_{Sym(n)}(soc H)``: the wreath product pulled back along ``sigma``."""
    wr = build_wreath_generators(cert.m, cert.k, cert.l)
    return Group([cert.pull_back(z) for z in wr.wreath.generators], cert.degree)


def normaliser_by_sweep(h: Group, m: Group) -> Group:
    """``N_m(h)`` for ``h <= m``: keep the coset representatives that normalise ``h``."""
    kept = [r for r in coset_representatives(m, h)[1:] if h.is_normalized_by(r)]
    return group_from_elements(list(h.generators) + kept, h.degree)


def normaliser_of_ample(h: Group, cert: AmpleCertificate) -> Group:
    """``N_{Sym(n)}(h)`` for an ample ``h`` with ``l >= 2`` factors."""
    if cert.l < 2:
        raise ValueError("l = 1 means h is almost simple; use the almost-simple path")
    return normaliser_by_sweep(h, socle_normaliser(cert))

