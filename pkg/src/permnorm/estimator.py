"""scikit-learn style facade over the normaliser pipeline.

``fit`` takes the group ``H`` (and optionally ``K``) and stores the
normaliser; ``predict`` answers membership of permutations in it.  The
functional API in :mod:`permnorm.pipeline` is the primary interface, this
class only packages it for code that expects ``fit``/``predict`` and
``get_params``.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .limits import limits_scope
from .perm import Permutation, PermutationError, parse_permutation
from .pipeline import normaliser_report
from .stabchain import Group


def check_group(x, degree: int | None = None) -> Group:
    """Coerce ``x`` into a :class:`Group`.

    Accepts a Group, a sequence of Permutations, a sequence of cycle-notation
    strings (``degree`` required), or a 2-D integer array of 1-based image
    rows.
    """
    if isinstance(x, Group):
        if degree is not None and x.degree != degree:
            raise ValueError(f"expected degree {degree}, got {x.degree}")
        return x
    if isinstance(x, np.ndarray):
        if x.ndim != 2:
            raise ValueError("image array must be 2-D (one row per generator)")
        gens = [Permutation.from_images([int(v) for v in row]) for row in x]
        return Group(gens, degree if degree is not None else x.shape[1])
    if isinstance(x, (str, bytes)) or not isinstance(x, Sequence):
        raise TypeError(f"cannot interpret {type(x).__name__} as a group")
    gens = []
    for item in x:
        if isinstance(item, Permutation):
            gens.append(item)
        elif isinstance(item, str):
            if degree is None:
                raise ValueError("degree is required for cycle-notation input")
            gens.append(parse_permutation(item, degree))
        else:
            gens.append(Permutation.from_images(list(item)))
    if not gens and degree is None:
        raise ValueError("degree is required for an empty generating list")
    if degree is None:
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise PermutationError("generators have different degrees")
    return Group(gens, degree)


class NormaliserEstimator(BaseEstimator):
    """Compute ``N_K(H)`` on ``fit``; ``predict`` tests membership in it.

    Fitted attributes: ``normaliser_``, ``order_``, ``path_``, ``verdict_``
    (primitivity verdict for ``N_Sym(n)(H)``), ``degree_``.
    """

    def __init__(self, degree: int | None = None, enum_limit: int | None = None,
                 coset_limit: int | None = None, backtrack_limit: int | None = None):
        self.degree = degree
        self.enum_limit = enum_limit
        self.coset_limit = coset_limit
        self.backtrack_limit = backtrack_limit

    def _scope(self):
        return limits_scope(enum_limit=self.enum_limit, coset_limit=self.coset_limit,
                            backtrack_limit=self.backtrack_limit)

    def fit(self, X, y=None):
        """``X`` is H; ``y``, if given, is the ambient group K."""
        h = check_group(X, self.degree)
        k = None if y is None else check_group(y, h.degree)
        with self._scope():
            rep = normaliser_report(h, k)
        self.degree_ = h.degree
        self.normaliser_ = rep.group
        self.order_ = rep.group.order()
        self.path_ = rep.path
        self.verdict_ = rep.classification.verdict if rep.classification else None
        return self

    def _check_fitted(self):
        if not hasattr(self, "normaliser_"):
            raise NotFittedError("call fit before predict")

    def predict(self, X) -> np.ndarray:
        """Boolean array: which of the permutations in ``X`` normalise H."""
        self._check_fitted()
        perms = []
        for item in X:
            if isinstance(item, Permutation):
                p = item
            elif isinstance(item, str):
                p = parse_permutation(item, self.degree_)
            else:
                p = Permutation.from_images(list(item))
            if p.degree != self.degree_:
                raise ValueError(f"expected degree {self.degree_}, got {p.degree}")
            perms.append(p)
        return np.array([p in self.normaliser_ for p in perms], dtype=bool)

    def score(self, X, y) -> float:
        return float(np.mean(self.predict(X) == np.asarray(y, dtype=bool)))
