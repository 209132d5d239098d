"""Detection and correction performance of qubit stabilizer codes.

Every quantity is exact (``Fraction``) when its argument is exact; passing a
float ``p`` gives a float. Subset arguments hold 0-based qubit indices.

Detection (any code):
    Td_S = 2^-|S| B'_S,  Fd_S = (K A'_S + B'_S) / ((K+1) B'_S)
and the per-m / per-p averages built from the Rains enumerators.

Correction (stabilizer codes): the recovery for each syndrome is a choice of
logical class, i.e. of the coset ``y + C`` used as correction operator, and

    Fc_m = 1/(K+1) + K / ((K+1) C(n,m) 4^m) * sum_s max_L 2^m A'_m(coset s,L)
    Fc_p = 1/(K+1) + K/(K+1) * sum_s max_L sum_i (p/4)^i (1-3p/4)^(n-i) A_i(coset s,L)
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Literal, Union

import numpy as np

from .codes import AdditiveCode, parameters
from .enumerators import (
    CosetTable,
    coset_table,
    rains_enumerators,
    sl_enumerators,
    subset_coset_counts,
    subset_enumerators,
)

Number = Union[Fraction, float, int]
Mode = Literal["S", "m", "p"]


def _exact(p: Number) -> bool:
    return isinstance(p, (Fraction, int))


def _check_p(p: Number) -> None:
    if not 0 <= p <= 1:
        raise ValueError(f"p = {p} outside [0, 1]")


def _check_m(code: AdditiveCode, m: int) -> None:
    if not 0 <= m <= code.n:
        raise ValueError(f"m = {m} outside 0..{code.n}")


def binomial_sum(p: Number, coeffs: Sequence[Fraction]) -> Number:
    """``sum_m p^m (1-p)^(n-m) coeffs[m]`` with ``n = len(coeffs) - 1``."""
    n = len(coeffs) - 1
    if _exact(p):
        p = Fraction(p)
        return sum((p**m * (1 - p) ** (n - m) * c for m, c in enumerate(coeffs)), Fraction(0))
    p = float(p)
    return math.fsum(p**m * (1 - p) ** (n - m) * float(c) for m, c in enumerate(coeffs))


def binomial_poly(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Power-series coefficients in ``p`` of ``binomial_sum(p, coeffs)``."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * (n + 1)
    for m, c in enumerate(coeffs):
        for j in range(n - m + 1):
            out[m + j] += c * comb(n - m, j) * (-1) ** j
    return out


# -- error detection -------------------------------------------------------


def td_subset(code: AdditiveCode, S: Iterable[int]) -> Fraction:
    S = set(S)
    _, b = subset_enumerators(code, S)
    return b / 2 ** len(S)


def td_m(code: AdditiveCode, m: int) -> Fraction:
    _check_m(code, m)
    r = rains_enumerators(code)
    return r.b_prime[m] / (comb(code.n, m) * 2**m)


def _td_coeffs(code: AdditiveCode) -> list[Fraction]:
    r = rains_enumerators(code)
    return [b / 2**m for m, b in enumerate(r.b_prime)]


def td_p(code: AdditiveCode, p: Number) -> Number:
    _check_p(p)
    return binomial_sum(p, _td_coeffs(code))


def fd_subset(code: AdditiveCode, S: Iterable[int]) -> Fraction:
    a, b = subset_enumerators(code, S)
    K = 2**code.k
    return (K * a + b) / ((K + 1) * b)


def fd_m(code: AdditiveCode, m: int) -> Fraction:
    _check_m(code, m)
    r = rains_enumerators(code)
    K = r.K
    return (K * r.a_prime[m] + r.b_prime[m]) / ((K + 1) * r.b_prime[m])


def _fd_numerator_coeffs(code: AdditiveCode) -> list[Fraction]:
    r = rains_enumerators(code)
    K = r.K
    return [(K * a + b) / ((K + 1) * 2**m) for m, (a, b) in enumerate(zip(r.a_prime, r.b_prime))]


def fd_p(code: AdditiveCode, p: Number) -> Number:
    _check_p(p)
    return binomial_sum(p, _fd_numerator_coeffs(code)) / td_p(code, p)


def _faild_coeffs(code: AdditiveCode) -> list[Fraction]:
    r = rains_enumerators(code)
    K = r.K
    return [K * (b - a) / ((K + 1) * 2**m) for m, (a, b) in enumerate(zip(r.a_prime, r.b_prime))]


def failure_detect(code: AdditiveCode, mode: Mode, arg) -> Number:
    """Probability that an error goes undetected and the output is wrong."""
    K = 2**code.k
    if mode == "S":
        S = set(arg)
        a, b = subset_enumerators(code, S)
        return K * (b - a) / ((K + 1) * 2 ** len(S))
    if mode == "m":
        _check_m(code, arg)
        r = rains_enumerators(code)
        return K * (r.b_prime[arg] - r.a_prime[arg]) / ((K + 1) * comb(code.n, arg) * 2**arg)
    if mode == "p":
        _check_p(arg)
        return binomial_sum(arg, _faild_coeffs(code))
    raise ValueError(f"unknown mode {mode!r}")


def failure_detect_sl(code: AdditiveCode, p: Number) -> Number:
    """The depolarizing failure rate written over Shor-Laflamme counts:
    ``K/(K+1) sum_i (p/4)^i (1 - 3p/4)^(n-i) (B_i - A_i)``."""
    _check_p(p)
    a, b = sl_enumerators(code)
    K = 2**code.k
    n = code.n
    if _exact(p):
        p = Fraction(p)
        s = sum((p / 4) ** i * (1 - 3 * p / 4) ** (n - i) * (b[i] - a[i]) for i in range(n + 1))
        return Fraction(K, K + 1) * s
    p = float(p)
    return K / (K + 1) * math.fsum((p / 4) ** i * (1 - 0.75 * p) ** (n - i) * (b[i] - a[i]) for i in range(n + 1))


# -- error correction ------------------------------------------------------


def fc_subset(code: AdditiveCode, S: Iterable[int]) -> Fraction:
    """Optimal correction fidelity for errors on known qubits; equals ``fd_subset``."""
    return fd_subset(code, S)


def _check_classes(table: CosetTable, classes: Sequence[int]) -> np.ndarray:
    cls = np.asarray(classes, dtype=np.int64)
    if cls.shape != (table.n_syndromes,):
        raise ValueError(f"recovery map needs one class per syndrome ({table.n_syndromes}), got shape {cls.shape}")
    if cls.min() < 0 or cls.max() >= table.n_classes:
        raise ValueError("recovery class index out of range")
    return cls


def _pick(values: np.ndarray, table: CosetTable, classes: Sequence[int] | None) -> np.ndarray:
    """Per-syndrome values of the chosen (or best) class."""
    if classes is None:
        return values.max(axis=1)
    cls = _check_classes(table, classes)
    return values[np.arange(table.n_syndromes), cls]


def best_classes_m(code: AdditiveCode, m: int) -> list[int]:
    """Per-syndrome class maximizing ``A'_m`` of the coset; lowest index on ties."""
    vals = coset_table(code).rains_numerators(m)
    return [int(i) for i in vals.argmax(axis=1)]


def fc_m(code: AdditiveCode, m: int, classes: Sequence[int] | None = None) -> Fraction:
    """Correction fidelity with errors on ``m`` unknown qubits.

    With ``classes=None`` each syndrome uses its best class for this ``m``;
    otherwise the given recovery map is evaluated.
    """
    _check_m(code, m)
    table = coset_table(code)
    total = int(_pick(table.rains_numerators(m), table, classes).astype(object).sum())
    K = 2**code.k
    return Fraction(1, K + 1) + Fraction(K * total, (K + 1) * comb(code.n, m) * 4**m)


def fc_subset_fixed(code: AdditiveCode, S: Iterable[int], classes: Sequence[int]) -> Fraction:
    """Correction fidelity on known qubits ``S`` for a fixed recovery map."""
    S = set(S)
    table = coset_table(code)
    cls = _check_classes(table, classes)
    counts = subset_coset_counts(code, S)
    total = int(counts[np.arange(len(cls)), cls].sum())
    K = 2**code.k
    return Fraction(1, K + 1) + Fraction(K * total, (K + 1) * 4 ** len(S))


def best_classes_subset(code: AdditiveCode, S: Iterable[int]) -> list[int]:
    """Per-syndrome class with the most coset vectors supported inside ``S``."""
    return [int(i) for i in subset_coset_counts(code, S).argmax(axis=1)]


def fc_subset_search(code: AdditiveCode, S: Iterable[int]) -> Fraction:
    """Best fixed-recovery fidelity on ``S`` found by explicit per-syndrome search."""
    S = set(S)
    return fc_subset_fixed(code, S, best_classes_subset(code, S))


def _objective_weights(p: Number, n: int):
    """Weights of ``A_i`` in the depolarizing objective and their common scale."""
    if _exact(p):
        p = Fraction(p)
        a, b = p.numerator, p.denominator
        w = np.array([a**i * (4 * b - 3 * a) ** (n - i) for i in range(n + 1)], dtype=object)
        return w, Fraction(1, (4 * b) ** n)
    p = float(p)
    w = np.array([(p / 4) ** i * (1 - 0.75 * p) ** (n - i) for i in range(n + 1)])
    return w, 1.0


def coset_objective(code: AdditiveCode, p: Number) -> tuple[np.ndarray, Number]:
    """``sum_i (p/4)^i (1-3p/4)^(n-i) A_i`` for every coset, as (array, scale)."""
    table = coset_table(code)
    w, scale = _objective_weights(p, code.n)
    t = table.table.astype(object) if w.dtype == object else table.table
    return t @ w, scale


def best_classes_p(code: AdditiveCode, p: Number) -> list[int]:
    obj, _ = coset_objective(code, p)
    return [max(range(obj.shape[1]), key=lambda L: (obj[s, L], -L)) for s in range(obj.shape[0])]


def fc_p(code: AdditiveCode, p: Number, classes: Sequence[int] | None = None) -> Number:
    """Correction fidelity for the depolarizing channel, maximized per syndrome at this ``p``."""
    _check_p(p)
    table = coset_table(code)
    obj, scale = coset_objective(code, p)
    total = _pick(obj, table, classes).sum()
    K = 2**code.k
    if _exact(p):
        return Fraction(1, K + 1) + Fraction(K, K + 1) * int(total) * scale
    return 1 / (K + 1) + K / (K + 1) * float(total)


def p0_classes(code: AdditiveCode) -> list[int]:
    """The p -> 0 limit of the optimal recovery map.

    As ``p -> 0`` the objective ``sum_i (p/4)^i (1-3p/4)^(n-i) A_i`` is ordered by
    the coset weight sequence ``(A_0, A_1, ...)`` lexicographically.
    """
    table = coset_table(code).table
    out = []
    for s in range(table.shape[0]):
        rows = [tuple(int(c) for c in table[s, L]) for L in range(table.shape[1])]
        out.append(max(range(len(rows)), key=lambda L: (rows[L], -L)))
    return out


def small_p_c(code: AdditiveCode) -> tuple[int, Fraction]:
    """``(d, c)`` with ``1 - Fd_p = c p^d + O(p^(d+1))``."""
    d = parameters(code).d
    a, b = sl_enumerators(code)
    K = 2**code.k
    return d, Fraction(K * (b[d] - a[d]), (K + 1) * 4**d)


def small_p_cprime(code: AdditiveCode) -> tuple[int, Fraction]:
    """``(d', c')`` with ``1 - Fc_p = c' p^d' + O(p^(d'+1))``, ``d' = ceil(d/2)``."""
    dp = parameters(code).d_prime
    table = coset_table(code)
    total = int(_pick(table.rains_numerators(dp), table, p0_classes(code)).astype(object).sum())
    K = 2**code.k
    return dp, Fraction(K, K + 1) * (comb(code.n, dp) - Fraction(total, 4**dp))


def detection_failure_series(code: AdditiveCode) -> list[Fraction]:
    """Power-series coefficients of ``1 - Fd_p`` in ``p`` (degrees 0..n)."""
    num = binomial_poly(_faild_coeffs(code))
    den = binomial_poly(_td_coeffs(code))
    out: list[Fraction] = []
    rem = list(num)
    for j in range(len(num)):
        q = rem[j] / den[0]
        out.append(q)
        for i in range(len(den)):
            if j + i < len(rem):
                rem[j + i] -= q * den[i]
    return out


def correction_failure_series(code: AdditiveCode) -> list[Fraction]:
    """Power-series coefficients of ``1 - Fc_p`` near ``p = 0`` (a polynomial of degree n)."""
    table = coset_table(code)
    cls = p0_classes(code)
    K = 2**code.k
    n = code.n
    coeffs = []
    for m in range(n + 1):
        total = int(_pick(table.rains_numerators(m), table, cls).astype(object).sum())
        coeffs.append(Fraction(K, K + 1) * (comb(n, m) - Fraction(total, 4**m)))
    return binomial_poly(coeffs)


# -- ranking ---------------------------------------------------------------


@dataclass(frozen=True)
class RankEntry:
    name: str
    d: int
    coef: Fraction
    tied: bool = False

    def as_json(self) -> dict:
        return {"name": self.name, "d": self.d, "c_num": self.coef.numerator, "c_den": self.coef.denominator}

    def __str__(self) -> str:
        return f"{self.name} ({self.d},{self.coef})"


def rank_codes(codes: Sequence[AdditiveCode], mode: Literal["detection", "correction"]) -> list[RankEntry]:
    """Order codes worst first: distance ascending, then coefficient descending.

    Codes sharing ``(d, coefficient)`` are ordered by the remaining terms of
    their small-p failure series (larger failure first) and flagged as tied.
    Codes whose correction series agree in every term fall back to the
    detection order; anything still equal keeps its input order.
    """

    def detection_key(c: AdditiveCode):
        d, coef = small_p_c(c)
        return (d, -coef, tuple(-x for x in detection_failure_series(c)[d + 1 :]))

    def correction_key(c: AdditiveCode):
        d, coef = small_p_cprime(c)
        return (d, -coef, tuple(-x for x in correction_failure_series(c)[d + 1 :])) + detection_key(c)

    if mode == "detection":
        pairs = [small_p_c(c) for c in codes]
        keys = [detection_key(c) for c in codes]
    elif mode == "correction":
        pairs = [small_p_cprime(c) for c in codes]
        keys = [correction_key(c) for c in codes]
    else:
        raise ValueError(f"unknown ranking mode {mode!r}")

    def key(i: int):
        return keys[i] + (i,)

    order = sorted(range(len(codes)), key=key)
    counts: dict[tuple[int, Fraction], int] = {}
    for p in pairs:
        counts[p] = counts.get(p, 0) + 1
    return [RankEntry(codes[i].label, pairs[i][0], pairs[i][1], counts[pairs[i]] > 1) for i in order]


# -- curves ----------------------------------------------------------------


CURVE_COLUMNS = ("p", "Td", "Fd", "Fc", "FailD", "FailC")


@dataclass
class MetricCurve:
    code: str
    rows: list[tuple[float, ...]] = field(default_factory=list)

    def column(self, name: str) -> list[float]:
        j = CURVE_COLUMNS.index(name)
        return [r[j] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CURVE_COLUMNS)
        for r in self.rows:
            w.writerow([f"{v:.17g}" for v in r])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"code": self.code, "columns": list(CURVE_COLUMNS), "rows": self.rows})


def log_grid(pmin: float = 1e-3, pmax: float = 1.0, points: int = 200) -> list[float]:
    if points < 1:
        raise ValueError("empty grid")
    if points == 1:
        return [pmin]
    if pmin <= 0:
        return [float(x) for x in np.linspace(pmin, pmax, points)]
    grid = [float(x) for x in np.logspace(math.log10(pmin), math.log10(pmax), points)]
    grid[0], grid[-1] = pmin, pmax
    return grid


def metric_curve(code: AdditiveCode, grid: Sequence[float], exact: bool = True) -> MetricCurve:
    """Evaluate all depolarizing metrics on ``grid``.

    With ``exact=True`` each grid float is converted to a ``Fraction`` and the
    metrics are computed exactly before rounding.
    """
    if not grid:
        raise ValueError("empty grid")
    curve = MetricCurve(code.label)
    for p in grid:
        q = Fraction(p) if exact else float(p)
        td = td_p(code, q)
        fsd = failure_detect(code, "p", q)
        fd = fd_p(code, q)
        fc = fc_p(code, q)
        curve.rows.append((float(p), float(td), float(fd), float(fc), float(fsd), float(1 - fc)))
    return curve
