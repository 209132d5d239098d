"""Small GF(2) linear algebra helpers on int bitsets.

A vector is a Python int whose bit ``j`` holds coordinate ``j``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


def parity(x: int) -> int:
    return x.bit_count() & 1


class Echelon:
    """Reduced row echelon basis supporting membership tests and reduction.

    Each stored row has a distinct pivot (its lowest set bit) and no other
    stored row has that pivot bit set.
    """

    def __init__(self, rows: Iterable[int] = ()) -> None:
        self.rows: list[int] = []
        self.pivots: list[int] = []
        for r in rows:
            self.add(r)

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: int) -> int:
        for r, p in zip(self.rows, self.pivots):
            if (v >> p) & 1:
                v ^= r
        return v

    def add(self, v: int) -> bool:
        """Insert ``v``; return False when it is already in the span."""
        v = self.reduce(v)
        if v == 0:
            return False
        p = (v & -v).bit_length() - 1
        for i, r in enumerate(self.rows):
            if (r >> p) & 1:
                self.rows[i] = r ^ v
        self.rows.append(v)
        self.pivots.append(p)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def canonical(self) -> list[int]:
        """Rows sorted by pivot; identical spans give identical lists."""
        return [r for _, r in sorted(zip(self.pivots, self.rows))]


def rank(rows: Iterable[int]) -> int:
    return len(Echelon(rows))


def first_dependent(rows: Sequence[int]) -> int | None:
    """Index of the first row lying in the span of the rows before it."""
    ech = Echelon()
    for i, r in enumerate(rows):
        if not ech.add(r):
            return i
    return None


def kernel(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of ``{x : parity(x & r) == 0 for every r in rows}``."""
    ech = Echelon(rows)
    pivot_set = set(ech.pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        x = 1 << f
        for r, p in zip(ech.rows, ech.pivots):
            if (r >> f) & 1:
                x |= 1 << p
        basis.append(x)
    return basis


def dual_basis(rows: Sequence[int], ncols: int) -> list[int]:
    """Vectors ``t_i`` with ``parity(t_i & rows[j]) == (i == j)``.

    ``rows`` must be linearly independent.
    """
    m = len(rows)
    # Solve A t = e_i for each i, A the m x ncols matrix of rows. Augment each
    # row with an identity tag in the high bits and eliminate on the low bits.
    aug = [r | (1 << (ncols + i)) for i, r in enumerate(rows)]
    pivots: list[int] = []
    done = 0
    for col in range(ncols):
        piv = next((i for i in range(done, m) if (aug[i] >> col) & 1), None)
        if piv is None:
            continue
        aug[done], aug[piv] = aug[piv], aug[done]
        for i in range(m):
            if i != done and (aug[i] >> col) & 1:
                aug[i] ^= aug[done]
        pivots.append(col)
        done += 1
        if done == m:
            break
    if done < m:
        raise ValueError("rows are linearly dependent")
    # Reduced row i = sum_j tag_ij rows[j] and is the unit vector on pivot
    # columns, so t_j supported on pivots needs bit pivot_i = tag_ij.
    out = []
    for j in range(m):
        t = 0
        for i, col in enumerate(pivots):
            tag = aug[i] >> ncols
            if (tag >> j) & 1:
                t |= 1 << col
        out.append(t)
    return out
