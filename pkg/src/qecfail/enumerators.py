"""Weight enumerators of stabilizer codes, computed from the classical code.

Shor-Laflamme counts ``A_m``/``B_m`` are weight distributions of ``C`` and
``C^perp``. The Rains (subset-sum) enumerators follow from the binomial
transform ``M'_m = 2^-m sum_i C(n-i, m-i) M_i``. Coset distributions of
every ``y + C`` drive the error-correction metrics.
"""

from __future__ import annotations

import functools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .codes import DEFAULT_SPAN_CAP, AdditiveCode, CapExceeded, packed_supports, packed_weights, parameters, span_packed
from .gf4 import packed_star

D = 2
DEFAULT_SPACE_CAP = 4**13


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    @classmethod
    def from_weights(cls, weights: np.ndarray, n: int) -> WeightDistribution:
        return cls(tuple(int(c) for c in np.bincount(weights, minlength=n + 1)))

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, m: int) -> int:
        return self.counts[m]

    def __iter__(self):
        return iter(self.counts)

    def rains(self, m: int | None = None) -> Fraction | list[Fraction]:
        r = rains_from_sl(self.counts)
        return r if m is None else r[m]


@dataclass(frozen=True)
class RainsEnumerators:
    a_prime: tuple[Fraction, ...]
    b_prime: tuple[Fraction, ...]
    K: int


def rains_from_sl(counts: Sequence[int], D: int = D) -> list[Fraction]:
    """Rains enumerators from Shor-Laflamme counts, exactly."""
    n = len(counts) - 1
    return [
        Fraction(sum(comb(n - i, m - i) * counts[i] for i in range(m + 1)), D**m)
        for m in range(n + 1)
    ]


@functools.lru_cache(maxsize=64)
def _code_supports(code: AdditiveCode) -> tuple[np.ndarray, np.ndarray]:
    """Support masks of ``C`` and ``C^perp`` (the first ``2**(n-k)`` dual entries are ``C``)."""
    sup = packed_supports(span_packed(code.dual_gens), code.n)
    return sup[: 1 << (code.n - code.k)], sup


@functools.lru_cache(maxsize=64)
def sl_enumerators(code: AdditiveCode, cap: int = DEFAULT_SPAN_CAP) -> tuple[WeightDistribution, WeightDistribution]:
    """``(A, B)``: weight distributions of ``C`` and ``C^perp``."""
    if 1 << (code.n + code.k) > cap:
        raise CapExceeded(f"|C^perp| = 2^{code.n + code.k} exceeds cap {cap}")
    w = packed_weights(span_packed(code.dual_gens), code.n)
    n_c = 1 << (code.n - code.k)
    return WeightDistribution.from_weights(w[:n_c], code.n), WeightDistribution.from_weights(w, code.n)


@functools.lru_cache(maxsize=64)
def rains_enumerators(code: AdditiveCode) -> RainsEnumerators:
    a, b = sl_enumerators(code)
    return RainsEnumerators(tuple(rains_from_sl(a.counts)), tuple(rains_from_sl(b.counts)), 2**code.k)


def _subset_mask(code: AdditiveCode, S: Iterable[int]) -> tuple[int, int]:
    mask = 0
    size = 0
    for i in set(S):
        if not 0 <= i < code.n:
            raise IndexError(f"qubit index {i} out of range 0..{code.n - 1}")
        mask |= 1 << i
        size += 1
    return mask, size


def subset_enumerators(code: AdditiveCode, S: Iterable[int]) -> tuple[Fraction, Fraction]:
    """``(A'_S, B'_S)``: counts of ``C`` and ``C^perp`` supported inside ``S`` over ``2**|S|``.

    ``S`` holds 0-based qubit indices.
    """
    mask, size = _subset_mask(code, S)
    sup_c, sup_dual = _code_supports(code)
    outside = np.uint64(~mask & ((1 << code.n) - 1))
    a = int(np.count_nonzero((sup_c & outside) == 0))
    b = int(np.count_nonzero((sup_dual & outside) == 0))
    return Fraction(a, 2**size), Fraction(b, 2**size)


def detectable_on_subset(code: AdditiveCode, S: Iterable[int]) -> bool:
    """True when every error supported in ``S`` is detectable."""
    a, b = subset_enumerators(code, S)
    return a == b


def rains_by_subsets(code: AdditiveCode, m: int) -> tuple[Fraction, Fraction]:
    """``(A'_m, B'_m)`` summed literally over all ``|S| = m`` subsets."""
    a_tot = b_tot = Fraction(0)
    for S in combinations(range(code.n), m):
        a, b = subset_enumerators(code, S)
        a_tot += a
        b_tot += b
    return a_tot, b_tot


def distance_via_enumerators(code: AdditiveCode) -> int:
    """Largest ``d`` with ``B'_{d-1} == A'_{d-1}``.

    For ``k = 0`` every Rains pair agrees, so the self-dual convention (minimum
    nonzero weight of ``C``) is used instead.
    """
    if code.k == 0:
        return parameters(code).d
    r = rains_enumerators(code)
    d = 1
    while d <= code.n and r.a_prime[d - 1] == r.b_prime[d - 1]:
        d += 1
    return d - 1


@dataclass(frozen=True)
class CosetTable:
    """Weight distributions of every coset ``y + C``.

    ``table[s, L, w]`` counts vectors of weight ``w`` with syndrome bits ``s``
    (``x * g_j``) and logical bits ``L`` (``x * h_l``).
    """

    n: int
    k: int
    table: np.ndarray

    @property
    def n_syndromes(self) -> int:
        return self.table.shape[0]

    @property
    def n_classes(self) -> int:
        return self.table.shape[1]

    def entry(self, s: int, L: int) -> WeightDistribution:
        return WeightDistribution(tuple(int(c) for c in self.table[s, L]))

    @property
    def total(self) -> int:
        return int(self.table.sum())

    def rains_numerators(self, m: int) -> np.ndarray:
        """``2**m * A'_m`` of every coset as an integer array of shape (syndromes, classes)."""
        coeffs = np.array([comb(self.n - i, m - i) if i <= m else 0 for i in range(self.n + 1)], dtype=np.int64)
        return self.table @ coeffs


def coset_rains(dist: WeightDistribution | Sequence[int], m: int) -> Fraction:
    counts = dist.counts if isinstance(dist, WeightDistribution) else tuple(dist)
    n = len(counts) - 1
    return Fraction(sum(comb(n - i, m - i) * counts[i] for i in range(m + 1)), D**m)


_CHUNK_BITS = 20


def _unit_labels(code: AdditiveCode) -> list[int]:
    """Label ``s | (L << (n-k))`` of each packed unit vector; labels are linear in x."""
    n = code.n
    checks = [g.packed for g in code.gens] + [h.packed for h in code.logical_gens]
    return [sum(packed_star(1 << b, c, n) << j for j, c in enumerate(checks)) for b in range(2 * n)]


def subset_coset_counts(code: AdditiveCode, S: Iterable[int]) -> np.ndarray:
    """Number of vectors supported inside ``S`` in each coset, shape (syndromes, classes)."""
    mask, _ = _subset_mask(code, S)
    n, k = code.n, code.k
    unit = _unit_labels(code)
    labels = np.zeros(1, dtype=np.int64)
    for i in range(n):
        if (mask >> i) & 1:
            for b in (i, n + i):
                labels = np.concatenate([labels, labels ^ unit[b]])
    counts = np.bincount(labels, minlength=1 << (n + k))
    return counts.reshape(1 << (2 * k), 1 << (n - k)).T.copy()


@functools.lru_cache(maxsize=16)
def coset_table(code: AdditiveCode, cap: int = DEFAULT_SPACE_CAP) -> CosetTable:
    """Bin all of GF(4)^n by (syndrome, logical class, weight)."""
    n, k = code.n, code.k
    if 4**n > cap:
        raise CapExceeded(f"4^{n} vectors exceeds full-space cap {cap}")
    unit = _unit_labels(code)
    n_labels = 1 << (n + k)
    low = min(2 * n, _CHUNK_BITS)
    low_labels = np.zeros(1, dtype=np.int64)
    for b in range(low):
        low_labels = np.concatenate([low_labels, low_labels ^ unit[b]])
    low_x = np.arange(1 << low, dtype=np.uint64)
    mask = np.uint64((1 << n) - 1)
    counts = np.zeros(n_labels * (n + 1), dtype=np.int64)
    for hi in range(1 << (2 * n - low)):
        hi_label = 0
        for b in range(2 * n - low):
            if (hi >> b) & 1:
                hi_label ^= unit[low + b]
        x = low_x | np.uint64(hi << low)
        w = np.bitwise_count((x & mask) | (x >> np.uint64(n))).astype(np.int64)
        counts += np.bincount((low_labels ^ hi_label) * (n + 1) + w, minlength=counts.size)
    # label = s | (L << (n-k)), so the label axis splits as (L, s)
    table = counts.reshape(1 << (2 * k), 1 << (n - k), n + 1).transpose(1, 0, 2).copy()
    table.setflags(write=False)
    return CosetTable(n, k, table)
