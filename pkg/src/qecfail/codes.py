"""Additive codes over GF(4), i.e. qubit stabilizer codes.

A code is given by an independent generator basis of a self-orthogonal
additive subgroup ``C`` of GF(4)^n with ``2**(n-k)`` elements. Its dual
``C^perp`` (the centralizer of the stabilizer) has ``2**(n+k)`` elements.
"""

from __future__ import annotations

import functools
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import gf2
from .gf4 import GF4Vector, swap_halves

DEFAULT_SPAN_CAP = 1 << 26

CATALOG_NAMES = (
    "G4a", "G4b", "G5", "G6a", "G6b", "G7a", "G7b",
    "G8a", "G8b", "G8c", "G9a", "G9b", "G9c", "G10", "G11",
)


class CodeError(ValueError):
    """Invalid code description (bad symbols, shapes, dependence, commutation)."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured size cap."""


@dataclass(frozen=True)
class CodeParameters:
    n: int
    k: int
    d: int
    pure: bool

    @property
    def K(self) -> int:
        return 2**self.k

    @property
    def D(self) -> int:
        return 2

    @property
    def d_prime(self) -> int:
        return -(-self.d // 2)

    def label(self) -> str:
        return f"[[{self.n},{self.k},{self.d}]]"

    def __str__(self) -> str:
        return f"{self.label()} {'pure' if self.pure else 'impure'}"


@dataclass(frozen=True)
class AdditiveCode:
    n: int
    k: int
    gens: tuple[GF4Vector, ...]
    name: str = ""

    def __post_init__(self) -> None:
        if any(g.n != self.n for g in self.gens):
            raise CodeError("inconsistent row lengths")
        if len(self.gens) != self.n - self.k:
            raise CodeError(f"expected n-k = {self.n - self.k} generators, got {len(self.gens)}")
        packed = [g.packed for g in self.gens]
        dep = gf2.first_dependent(packed)
        if dep is not None:
            raise CodeError(f"dependent rows: row {dep + 1} lies in the span of the rows above it")
        for i, g in enumerate(self.gens):
            for j in range(i + 1, len(self.gens)):
                if g.star(self.gens[j]):
                    raise CodeError(
                        f"self-orthogonality violated: rows {i + 1} and {j + 1} have trace inner product 1"
                    )

    @classmethod
    def from_rows(cls, rows: Iterable[str | GF4Vector], name: str = "") -> AdditiveCode:
        vecs = tuple(r if isinstance(r, GF4Vector) else GF4Vector.parse(r) for r in rows)
        if not vecs:
            raise CodeError("a code needs at least one generator row")
        n = vecs[0].n
        if any(v.n != n for v in vecs):
            raise CodeError("inconsistent row lengths")
        return cls(n, n - len(vecs), vecs, name)

    @property
    def label(self) -> str:
        return self.name or "<unnamed>"

    @functools.cached_property
    def _echelon(self) -> gf2.Echelon:
        return gf2.Echelon(g.packed for g in self.gens)

    def contains(self, x: GF4Vector) -> bool:
        return self._echelon.contains(x.packed)

    @functools.cached_property
    def dual_gens(self) -> tuple[GF4Vector, ...]:
        return tuple(dual(self))

    @functools.cached_property
    def logical_gens(self) -> tuple[GF4Vector, ...]:
        """The ``2k`` dual generators completing ``gens`` to a basis of ``C^perp``."""
        return self.dual_gens[len(self.gens):]

    @functools.cached_property
    def syndrome_reps(self) -> tuple[GF4Vector, ...]:
        """Vectors ``t_j`` with ``t_j * g_i = delta_ij`` (one per generator)."""
        rows = [swap_halves(g.packed, self.n) for g in self.gens]
        return tuple(GF4Vector.from_packed(self.n, t) for t in gf2.dual_basis(rows, 2 * self.n))

    def syndrome(self, x: GF4Vector) -> int:
        """Bit ``j`` is ``x * g_j``."""
        return sum(x.star(g) << j for j, g in enumerate(self.gens))

    def logical_class(self, x: GF4Vector) -> int:
        """Bit ``l`` is ``x * h_l`` over the logical generators."""
        return sum(x.star(h) << l for l, h in enumerate(self.logical_gens))

    def coset_rep(self, syndrome: int, logical: int) -> GF4Vector:
        """A vector with the given syndrome and logical class labels."""
        y = GF4Vector.zero(self.n)
        for j, t in enumerate(self.syndrome_reps):
            if (syndrome >> j) & 1:
                y = y + t
        # Adjust the logical label without touching the syndrome: the dual
        # generators h_l pair to zero with every g_j.
        target = logical ^ self.logical_class(y)
        # adding h_b flips logical bit l by h_b * h_l
        columns = [self.logical_class(h) for h in self.logical_gens]
        for b, c in enumerate(_solve_combination(columns, target)):
            if c:
                y = y + self.logical_gens[b]
        return y

    def to_text(self) -> str:
        lines = [f"n {self.n} k {self.k} name {self.name or 'unnamed'}"]
        lines += [str(g) for g in self.gens]
        return "\n".join(lines) + "\n"


def _solve_combination(columns: list[int], target: int) -> list[int]:
    """Coefficients c with XOR of c_b * columns[b] == target (columns independent)."""
    m = len(columns)
    for mask in range(1 << m):
        acc = 0
        for b in range(m):
            if (mask >> b) & 1:
                acc ^= columns[b]
        if acc == target:
            return [(mask >> b) & 1 for b in range(m)]
    raise CodeError("logical label unreachable; logical generators are degenerate")


def parse_code(text: str) -> AdditiveCode:
    """Parse the code file format.

    Line 1 is ``n <n> k <k> name <label>``; each following non-comment line is
    one generator row of ``n`` characters over ``0 1 w W``. Lines starting with
    ``#`` are comments.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CodeError("empty code file")
    header = lines[0].split()
    if len(header) < 4 or header[0] != "n" or header[2] != "k":
        raise CodeError(f"malformed header {lines[0]!r}; expected 'n <n> k <k> name <label>'")
    try:
        n, k = int(header[1]), int(header[3])
    except ValueError:
        raise CodeError(f"malformed header {lines[0]!r}") from None
    name = ""
    if len(header) >= 6 and header[4] == "name":
        name = " ".join(header[5:])
    rows = []
    for lineno, row in enumerate(lines[1:], start=1):
        if any(c.isspace() for c in row):
            raise CodeError(f"row {lineno}: whitespace inside a row")
        if len(row) != n:
            raise CodeError(f"inconsistent row lengths: row {lineno} has {len(row)} symbols, header says n={n}")
        try:
            rows.append(GF4Vector.parse(row))
        except ValueError as exc:
            raise CodeError(f"row {lineno}: {exc}") from None
    if len(rows) != n - k:
        raise CodeError(f"header says n-k = {n - k} rows, found {len(rows)}")
    return AdditiveCode(n, k, tuple(rows), name)


def load_code(path: str | Path) -> AdditiveCode:
    return parse_code(Path(path).read_text())


def dual(code: AdditiveCode) -> list[GF4Vector]:
    """Basis of ``C^perp`` whose first ``n-k`` vectors are the generators."""
    n = code.n
    rows = [swap_halves(g.packed, n) for g in code.gens]
    ech = gf2.Echelon(g.packed for g in code.gens)
    out = list(code.gens)
    for v in gf2.kernel(rows, 2 * n):
        if ech.add(v):
            out.append(GF4Vector.from_packed(n, v))
    assert len(out) == n + code.k
    return out


def _check_cap(size_log2: int, cap: int) -> None:
    if (1 << size_log2) > cap:
        raise CapExceeded(f"span of 2^{size_log2} elements exceeds cap {cap}")


def enumerate_span(basis: Sequence[GF4Vector], cap: int = DEFAULT_SPAN_CAP, n: int | None = None) -> Iterator[GF4Vector]:
    """Yield every GF(2) combination of ``basis`` once, starting with zero (Gray-code walk)."""
    if not basis and n is None:
        raise ValueError("length n is required for an empty basis")
    n = basis[0].n if basis else n
    _check_cap(len(basis), cap)
    x = GF4Vector.zero(n)
    yield x
    for i in range(1, 1 << len(basis)):
        x = x + basis[(i & -i).bit_length() - 1]
        yield x


def span_packed(basis: Sequence[GF4Vector], cap: int = DEFAULT_SPAN_CAP) -> np.ndarray:
    """All span elements as packed words; entry ``i`` is the combination picked by the bits of ``i``."""
    _check_cap(len(basis), cap)
    out = np.zeros(1, dtype=np.uint64)
    for b in basis:
        out = np.concatenate([out, out ^ np.uint64(b.packed)])
    return out


def packed_weights(x: np.ndarray, n: int) -> np.ndarray:
    mask = np.uint64((1 << n) - 1)
    return np.bitwise_count((x & mask) | (x >> np.uint64(n))).astype(np.int64)


def packed_supports(x: np.ndarray, n: int) -> np.ndarray:
    mask = np.uint64((1 << n) - 1)
    return (x & mask) | (x >> np.uint64(n))


@functools.lru_cache(maxsize=64)
def _dual_weights(code: AdditiveCode) -> np.ndarray:
    return packed_weights(span_packed(code.dual_gens), code.n)


@functools.lru_cache(maxsize=64)
def parameters(code: AdditiveCode) -> CodeParameters:
    """Minimum distance and purity by an exhaustive weight scan of ``C^perp``.

    The span array of ``dual_gens`` lists ``C`` first: index ``i`` is in ``C``
    exactly when ``i < 2**(n-k)``.
    """
    w = _dual_weights(code)
    n_c = 1 << (code.n - code.k)
    if code.k == 0:
        d = int(w[1:].min())
        return CodeParameters(code.n, 0, d, True)
    d = int(w[n_c:].min())
    pure = not bool(np.any((w[1:] > 0) & (w[1:] < d)))
    return CodeParameters(code.n, code.k, d, pure)


def direct_sum(a: AdditiveCode, b: AdditiveCode, name: str = "") -> AdditiveCode:
    """Block-diagonal generator matrix of ``a`` and ``b``."""
    rows = [GF4Vector(a.n + b.n, g.mu, g.nu) for g in a.gens]
    rows += [GF4Vector(a.n + b.n, g.mu << a.n, g.nu << a.n) for g in b.gens]
    return AdditiveCode(a.n + b.n, a.k + b.k, tuple(rows), name or f"{a.label}+{b.label}")


SINGLE_BLOCK = AdditiveCode.from_rows(["1"], name="1")


@functools.lru_cache(maxsize=None)
def catalog(name: str) -> AdditiveCode:
    if name not in CATALOG_NAMES:
        raise KeyError(f"unknown catalog code {name!r}; available: {', '.join(CATALOG_NAMES)}")
    text = resources.files("qecfail.catalog").joinpath(f"{name}.txt").read_text()
    return parse_code(text)
