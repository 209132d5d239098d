"""GF(4) symbols and vectors in the (mu, nu) bit-pair encoding.

A symbol ``x = w*mu + W*nu`` is stored as the pair ``(mu, nu)``:

    0 <-> (0, 0)    w <-> (1, 0)    W <-> (0, 1)    1 <-> (1, 1)

where ``w`` is a primitive element and ``W = w**2 = 1 + w`` its conjugate.
Under the Pauli correspondence ``w -> X``, ``W -> Z`` and ``1 -> Y``.

A length-n vector keeps all mu bits in one word and all nu bits in another,
so addition, weight, support and the trace inner product are word operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from .gf2 import parity

MAX_LENGTH = 32

SYMBOL_CHARS = "0wW1"  # indexed by mu | (nu << 1)
_CHAR_TO_BITS = {c: (i & 1, i >> 1) for i, c in enumerate(SYMBOL_CHARS)}


class GF4(IntEnum):
    """A field element; the value is ``mu | (nu << 1)``."""

    ZERO = 0
    OMEGA = 1
    OMEGA_BAR = 2
    ONE = 3

    @property
    def mu(self) -> int:
        return self.value & 1

    @property
    def nu(self) -> int:
        return self.value >> 1

    @classmethod
    def from_bits(cls, mu: int, nu: int) -> GF4:
        return cls((mu & 1) | ((nu & 1) << 1))

    @classmethod
    def from_char(cls, c: str) -> GF4:
        try:
            return cls.from_bits(*_CHAR_TO_BITS[c])
        except KeyError:
            raise ValueError(f"malformed GF(4) symbol {c!r}; expected one of {SYMBOL_CHARS!r}") from None

    def __str__(self) -> str:
        return SYMBOL_CHARS[self.value]

    def __add__(self, other: GF4) -> GF4:  # type: ignore[override]
        return GF4(self.value ^ GF4(other).value)

    def __mul__(self, other: GF4) -> GF4:  # type: ignore[override]
        return _from_poly(_poly_mul(_to_poly(self), _to_poly(GF4(other))))

    def conj(self) -> GF4:
        return GF4.from_bits(self.nu, self.mu)

    def trace(self) -> int:
        """Tr(x) = x + x^2, which is 1 exactly on w and W."""
        return self.mu ^ self.nu


# Polynomial basis a + b*w with w^2 = w + 1, packed as a | (b << 1).
# w*mu + (1 + w)*nu = nu + (mu + nu) w.
def _to_poly(x: GF4) -> int:
    return x.nu | ((x.mu ^ x.nu) << 1)


def _from_poly(p: int) -> GF4:
    a, b = p & 1, p >> 1
    # a + b w = w*mu + (1 + w)*nu  =>  nu = a, mu = a + b
    return GF4.from_bits(a ^ b, a)


def _poly_mul(p: int, q: int) -> int:
    a0, a1 = p & 1, p >> 1
    b0, b1 = q & 1, q >> 1
    c0 = (a0 & b0) ^ (a1 & b1)
    c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)
    return c0 | (c1 << 1)


def symbol_star(x: GF4, y: GF4) -> int:
    """Tr(x * conj(y)) evaluated through the field tables."""
    return (x * y.conj()).trace()


@dataclass(frozen=True, order=True)
class GF4Vector:
    n: int
    mu: int
    nu: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_LENGTH:
            raise ValueError(f"length {self.n} outside 1..{MAX_LENGTH}")
        mask = (1 << self.n) - 1
        if self.mu & ~mask or self.nu & ~mask:
            raise ValueError("bits set above position n-1")

    @classmethod
    def zero(cls, n: int) -> GF4Vector:
        return cls(n, 0, 0)

    @classmethod
    def parse(cls, text: str) -> GF4Vector:
        mu = nu = 0
        for i, c in enumerate(text):
            s = GF4.from_char(c)
            mu |= s.mu << i
            nu |= s.nu << i
        return cls(len(text), mu, nu)

    @classmethod
    def from_symbols(cls, symbols: list[GF4]) -> GF4Vector:
        return cls.parse("".join(str(GF4(s)) for s in symbols))

    @classmethod
    def from_packed(cls, n: int, x: int) -> GF4Vector:
        return cls(n, x & ((1 << n) - 1), x >> n)

    @property
    def packed(self) -> int:
        """The 2n-bit word ``mu | (nu << n)`` used by the GF(2) routines."""
        return self.mu | (self.nu << self.n)

    def __getitem__(self, i: int) -> GF4:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return GF4.from_bits(self.mu >> i, self.nu >> i)

    def symbols(self) -> list[GF4]:
        return [self[i] for i in range(self.n)]

    def __str__(self) -> str:
        return "".join(str(s) for s in self.symbols())

    def _check(self, other: GF4Vector) -> None:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} != {other.n}")

    def __add__(self, other: GF4Vector) -> GF4Vector:
        self._check(other)
        return GF4Vector(self.n, self.mu ^ other.mu, self.nu ^ other.nu)

    def scale(self, a: GF4) -> GF4Vector:
        return GF4Vector.from_symbols([a * s for s in self.symbols()])

    def conj(self) -> GF4Vector:
        return GF4Vector(self.n, self.nu, self.mu)

    @property
    def support_mask(self) -> int:
        return self.mu | self.nu

    @property
    def weight(self) -> int:
        return self.support_mask.bit_count()

    @property
    def support(self) -> frozenset[int]:
        m = self.support_mask
        return frozenset(i for i in range(self.n) if (m >> i) & 1)

    def star(self, other: GF4Vector) -> int:
        return trace_inner_product(self, other)


def trace_inner_product(x: GF4Vector, y: GF4Vector) -> int:
    """Sum of Tr(x_i * conj(y_i)) over GF(2), i.e. the symplectic form on (mu, nu)."""
    x._check(y)
    return parity((x.mu & y.nu) ^ (x.nu & y.mu))


def weight_support(x: GF4Vector) -> tuple[int, frozenset[int]]:
    return x.weight, x.support


def packed_star(x: int, y: int, n: int) -> int:
    """Trace inner product of two packed ``mu | nu << n`` words."""
    mask = (1 << n) - 1
    return parity(((x & mask) & (y >> n)) ^ ((x >> n) & (y & mask)))


def swap_halves(x: int, n: int) -> int:
    """Exchange the mu and nu halves, so ``packed_star(x, y) == parity(x & swap_halves(y))``."""
    mask = (1 << n) - 1
    return (x >> n) | ((x & mask) << n)
