"""Self-check suites behind ``qecfail verify``.

Each check yields a :class:`Check` naming the code, the parameter and the
expected versus observed value, so a failing run says exactly what broke.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import metrics, oracle
from .codes import CATALOG_NAMES, AdditiveCode, catalog, parameters
from .enumerators import coset_table, distance_via_enumerators, rains_enumerators, sl_enumerators, subset_enumerators

# (n, k, d, pure) for every catalog code
EXPECTED_PARAMETERS = {
    "G4a": (4, 1, 2, True),
    "G4b": (4, 1, 2, True),
    "G5": (5, 1, 3, True),
    "G6a": (6, 1, 3, False),
    "G6b": (6, 1, 3, False),
    "G7a": (7, 1, 3, True),
    "G7b": (7, 1, 3, True),
    "G8a": (8, 1, 3, True),
    "G8b": (8, 1, 3, True),
    "G8c": (8, 1, 3, True),
    "G9a": (9, 1, 3, True),
    "G9b": (9, 1, 3, True),
    "G9c": (9, 1, 3, False),
    "G10": (10, 1, 4, True),
    "G11": (11, 1, 5, True),
}

# worst first
EXPECTED_DETECTION = [
    ("G4b", 2, Fraction(1, 3)),
    ("G4a", 2, Fraction(1, 4)),
    ("G9c", 3, Fraction(13, 32)),
    ("G5", 3, Fraction(5, 16)),
    ("G6a", 3, Fraction(1, 4)),
    ("G7b", 3, Fraction(7, 32)),
    ("G7a", 3, Fraction(13, 96)),
    ("G8c", 3, Fraction(1, 8)),
    ("G9b", 3, Fraction(1, 8)),
    ("G8b", 3, Fraction(1, 12)),
    ("G8a", 3, Fraction(1, 12)),
    ("G9a", 3, Fraction(1, 12)),
    ("G10", 4, Fraction(5, 64)),
    ("G11", 5, Fraction(33, 256)),
]

EXPECTED_CORRECTION = [
    ("G4b", 1, Fraction(1)),
    ("G4a", 1, Fraction(1)),
    ("G7b", 2, Fraction(49, 8)),
    ("G8a", 2, Fraction(127, 24)),
    ("G8c", 2, Fraction(31, 6)),
    ("G7a", 2, Fraction(41, 8)),
    ("G9a", 2, Fraction(5)),
    ("G8b", 2, Fraction(5)),
    ("G9c", 2, Fraction(39, 8)),
    ("G6a", 2, Fraction(19, 4)),
    ("G9b", 2, Fraction(23, 6)),
    ("G10", 2, Fraction(15, 4)),
    ("G5", 2, Fraction(15, 4)),
    ("G11", 3, Fraction(273, 8)),
]

RANKED_NAMES = tuple(n for n in CATALOG_NAMES if n != "G6b")
CURVE_CODES = ("G4a", "G5", "G7b", "G9c", "G11")
ORACLE_TOL = 1e-10
SLOPE_TOL = 0.05


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _eq(name: str, expected, got) -> Check:
    ok = expected == got
    return Check(name, ok, "" if ok else f"expected {expected}, got {got}")


# -- classical identities --------------------------------------------------


def check_parameters(names: Iterable[str] = CATALOG_NAMES) -> Iterator[Check]:
    for name in names:
        p = parameters(catalog(name))
        yield _eq(f"parameters {name}", EXPECTED_PARAMETERS[name], (p.n, p.k, p.d, p.pure))


def check_identities(code: AdditiveCode) -> Iterator[Check]:
    """Enumerator and detection-fidelity identities, all exact."""
    tag = code.label
    n, K = code.n, 2**code.k
    params = parameters(code)
    d = params.d
    a, b = sl_enumerators(code)
    r = rains_enumerators(code)
    yield _eq(f"{tag}: A_0 = B_0 = 1", (1, 1), (a[0], b[0]))
    bad = [i for i in range(n + 1) if not b[i] >= a[i] >= 0]
    yield Check(f"{tag}: B_i >= A_i >= 0", not bad, f"violated at i = {bad}" if bad else "")
    if code.k > 0:
        bad = [i for i in range(1, d) if a[i] != b[i]]
        yield Check(f"{tag}: B_i = A_i for 0 < i < d", not bad, f"violated at i = {bad}" if bad else "")
        pure = all(a[i] == b[i] == 0 for i in range(1, d))
        yield _eq(f"{tag}: purity criterion", params.pure, pure)
        yield _eq(f"{tag}: distance from Rains enumerators", d, distance_via_enumerators(code))
    bad = [m for m in range(n + 1) if r.b_prime[m] != K * r.a_prime[n - m]]
    yield Check(f"{tag}: B'_m = K A'_(n-m)", not bad, f"violated at m = {bad}" if bad else "")
    bad = [m for m in range(n + 1) if not r.b_prime[m] >= r.a_prime[m] > 0]
    yield Check(f"{tag}: B'_m >= A'_m > 0", not bad, f"violated at m = {bad}" if bad else "")
    bad = []
    for m in range(n + 1):
        sa = r.a_prime[m] / comb(n, m)
        sb = r.b_prime[m] / comb(n, m)
        lo_a = max(Fraction(1, 2**m), Fraction(2**m, 2**n * K))
        hi_a = min(Fraction(1), Fraction(2 ** (n - m), K))
        lo_b = max(Fraction(1, 2**m), Fraction(K * 2**m, 2**n))
        hi_b = min(Fraction(2**m), Fraction(K))
        if not (lo_a <= sa <= hi_a and lo_b <= sb <= hi_b):
            bad.append(m)
    yield Check(f"{tag}: bounds on A'_m and B'_m", not bad, f"violated at m = {bad}" if bad else "")
    bad = []
    for m in range(n + 1):
        lhs = (K + 1) * metrics.fd_m(code, n - m) - 1
        rhs = 1 / ((K + 1) * metrics.fd_m(code, m) - 1)
        if lhs != rhs:
            bad.append(m)
    yield Check(f"{tag}: reciprocal fidelity relation", not bad, f"violated at m = {bad}" if bad else "")
    if n % 2 == 0:
        yield _eq(f"{tag}: Fd at m = n/2", Fraction(2, K + 1), metrics.fd_m(code, n // 2))
    yield _eq(f"{tag}: Td_n = K / 2^n", Fraction(K, 2**n), metrics.td_m(code, n))
    yield _eq(f"{tag}: Fd_n = 1 / K", Fraction(1, K), metrics.fd_m(code, n))
    third = Fraction(1, 3)
    yield _eq(
        f"{tag}: failure rate, Rains form = Shor-Laflamme form at p = 1/3",
        metrics.failure_detect_sl(code, third),
        metrics.failure_detect(code, "p", third),
    )


def check_coset_table(code: AdditiveCode) -> Iterator[Check]:
    tag = code.label
    table = coset_table(code)
    a, b = sl_enumerators(code)
    yield _eq(f"{tag}: coset table covers 4^n", 4**code.n, table.total)
    yield _eq(f"{tag}: coset (0, 0) is C", a.counts, table.entry(0, 0).counts)
    marg = tuple(int(x) for x in table.table[0].sum(axis=0))
    yield _eq(f"{tag}: syndrome-0 cosets make up C^perp", b.counts, marg)
    dp = parameters(code).d_prime
    below = [m for m in range(dp) if metrics.fc_m(code, m) != 1]
    yield Check(f"{tag}: Fc_m = 1 for m < d/2", not below, f"violated at m = {below}" if below else "")


def check_rankings(names: Sequence[str] = RANKED_NAMES) -> Iterator[Check]:
    codes = [catalog(n) for n in names]
    for mode, expected in (("detection", EXPECTED_DETECTION), ("correction", EXPECTED_CORRECTION)):
        got = [(e.name, e.d, e.coef) for e in metrics.rank_codes(codes, mode)]
        if list(names) == list(RANKED_NAMES):
            yield _eq(f"{mode} ranking", expected, got)
        else:
            want = {e[0]: e for e in expected}
            for g in got:
                if g[0] in want:
                    yield _eq(f"{mode} coefficient {g[0]}", want[g[0]], g)


def check_anomaly(name: str = "G7a") -> Check:
    """Some ``m`` where the per-m optimal recovery beats the p -> 0 recovery."""
    code = catalog(name)
    p0 = metrics.p0_classes(code)
    gaps = [m for m in range(code.n + 1) if metrics.fc_m(code, m) > metrics.fc_m(code, m, p0)]
    worse = [m for m in range(code.n + 1) if metrics.fc_m(code, m) < metrics.fc_m(code, m, p0)]
    ok = bool(gaps) and not worse
    return Check(f"{name}: free maximization beats the p -> 0 recovery at some m", ok, f"m = {gaps}")


def loglog_slope(f, p1: float, p2: float) -> float:
    """Slope of ``log f`` against ``log p`` between two points, from exact values."""
    f1, f2 = f(Fraction(p1)), f(Fraction(p2))
    return (math.log(f2) - math.log(f1)) / (math.log(p2) - math.log(p1))


def check_curves(names: Iterable[str] = CURVE_CODES, points: int = 200) -> Iterator[Check]:
    grid = metrics.log_grid(1e-3, 1.0, points)
    for name in names:
        code = catalog(name)
        bad = []
        for p in grid:
            q = Fraction(p)
            td, fd, fc = metrics.td_p(code, q), metrics.fd_p(code, q), metrics.fc_p(code, q)
            if not fd >= fc >= td:
                bad.append(p)
        yield Check(f"{name}: Fd >= Fc >= Td on {points} grid points", not bad, f"violated at p = {bad[:3]}" if bad else "")
        d = parameters(code).d
        dp = parameters(code).d_prime
        sd = loglog_slope(lambda q: 1 - metrics.fd_p(code, q), grid[0], grid[1])
        sc = loglog_slope(lambda q: 1 - metrics.fc_p(code, q), grid[0], grid[1])
        yield Check(f"{name}: log-log slope of 1 - Fd near p = 1e-3", abs(sd - d) <= SLOPE_TOL * d, f"{sd:.4f} vs d = {d}")
        yield Check(f"{name}: log-log slope of 1 - Fc near p = 1e-3", abs(sc - dp) <= SLOPE_TOL * dp, f"{sc:.4f} vs d' = {dp}")


# -- dense oracle and sampling ---------------------------------------------


def oracle_subsets(n: int, rng: np.random.Generator, sampled: int = 50, exhaustive_upto: int = 7) -> list[tuple[int, ...]]:
    """All subsets for small ``n``, otherwise ``sampled`` random ones."""
    if n <= exhaustive_upto:
        return [S for r in range(n + 1) for S in combinations(range(n), r)]
    out = []
    for _ in range(sampled):
        size = int(rng.integers(0, n + 1))
        out.append(tuple(sorted(int(i) for i in rng.choice(n, size=size, replace=False))))
    return out


def check_oracle(code: AdditiveCode, seed: int = 0, syndromes: bool | None = None) -> Iterator[Check]:
    """Dense partial-trace enumerators against the combinatorial ones."""
    tag = code.label
    P = oracle.build_projector(code)
    K = 2**code.k
    err = float(np.abs(P @ P - P).max())
    yield Check(f"{tag}: dense projector is idempotent", err <= 1e-12, f"max |P^2 - P| = {err:.2e}")
    yield Check(f"{tag}: dense projector has trace K", abs(np.trace(P).real - K) <= 1e-10, f"{np.trace(P).real:.12g}")
    rng = np.random.default_rng(seed)
    worst, where = 0.0, ()
    subsets = oracle_subsets(code.n, rng)
    for S in subsets:
        da, db = oracle.dense_subset_enumerators(P, S, K)
        ea, eb = subset_enumerators(code, S)
        e = max(abs(da - float(ea)), abs(db - float(eb)))
        if e > worst:
            worst, where = e, S
    yield Check(
        f"{tag}: dense A'_S, B'_S match on {len(subsets)} subsets",
        worst <= ORACLE_TOL,
        f"max error {worst:.2e}" + (f" at S = {list(where)}" if worst > ORACLE_TOL else ""),
    )
    if syndromes is None:
        syndromes = code.n <= 7
    if syndromes:
        total = np.zeros_like(P)
        for Pl in oracle.syndrome_projectors(code, P):
            total += Pl
        e = float(np.abs(total - np.eye(len(P))).max())
        yield Check(f"{tag}: syndrome projectors sum to I", e <= ORACLE_TOL, f"max error {e:.2e}")


def check_monte_carlo(seed: int, samples: int = 100_000, name: str = "G5", ms: Sequence[int] = (1, 2, 3)) -> Iterator[Check]:
    code = catalog(name)
    p0 = metrics.p0_classes(code)
    for m in ms:
        T, F = oracle.mc_detection(code, "m", m, samples, seed)
        td = metrics.td_m(code, m)
        fnum = td * metrics.fd_m(code, m)
        yield Check(f"{name}: MC Td at m = {m}", T.within(float(td)), f"{T.estimate:.5f} +- {T.stderr:.5f} vs {td}")
        yield Check(f"{name}: MC Td*Fd at m = {m}", F.within(float(fnum)), f"{F.estimate:.5f} +- {F.stderr:.5f} vs {fnum}")
        C = oracle.mc_correction(code, "m", m, p0, samples, seed)
        fc = metrics.fc_m(code, m, p0)
        yield Check(f"{name}: MC Fc at m = {m}, p -> 0 recovery", C.within(float(fc)), f"{C.estimate:.5f} +- {C.stderr:.5f} vs {fc}")


# -- drivers ---------------------------------------------------------------


def quick_suite(codes: Sequence[AdditiveCode] | None = None) -> Iterator[Check]:
    if codes is None:
        yield from check_parameters()
        codes = [catalog(n) for n in CATALOG_NAMES]
        for code in codes:
            yield from check_identities(code)
            yield from check_coset_table(code)
        yield from check_rankings()
        yield check_anomaly()
        yield from check_curves()
        return
    for code in codes:
        yield from check_identities(code)
        yield from check_coset_table(code)


def full_suite(seed: int, codes: Sequence[AdditiveCode] | None = None) -> Iterator[Check]:
    yield from quick_suite(codes)
    targets = codes if codes is not None else [catalog(n) for n in CATALOG_NAMES if catalog(n).n <= 9]
    for code in targets:
        if code.n <= oracle.DENSE_CAP:
            yield from check_oracle(code, seed)
    if codes is None:
        yield from check_monte_carlo(seed)
