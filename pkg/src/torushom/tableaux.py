"""Partitions, standard Young tableaux and box statistics.

Boxes are addressed by 0-based (row, col).  For a partition lam:
  arm(b)  = lam[row] - col - 1        boxes strictly right of b in its row
  leg(b)  = lam'[col] - row - 1       boxes strictly below b in its column
  coarm   = col,  coleg = row

The (weight of the box labeled i) used by the torus-knot localization sum
is chi_i = Q**coarm * T**(-coleg); the convention is pinned by the trefoil
golden test in the daha module.
"""

from __future__ import annotations

from functools import cache
from math import factorial
from typing import Iterator

from .algebra import GradedPolynomial


class Partition:
    """Weakly decreasing positive parts."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts if p != 0)
        if any(p < 0 for p in parts):
            raise ValueError("negative part")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        self.parts = parts

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        return Partition(
            tuple(sum(1 for p in self.parts if p > c) for c in range(self.parts[0]))
        )

    def boxes(self):
        for r, p in enumerate(self.parts):
            for c in range(p):
                yield (r, c)

    def contains_box(self, row, col) -> bool:
        return 0 <= row < len(self.parts) and 0 <= col < self.parts[row]

    def arm(self, row, col) -> int:
        return self.parts[row] - col - 1

    def leg(self, row, col) -> int:
        return self.conjugate().parts[col] - row - 1

    def hook(self, row, col) -> int:
        return self.arm(row, col) + self.leg(row, col) + 1

    def dominates(self, other: "Partition") -> bool:
        """Dominance order; both must have equal size."""
        if self.size != other.size:
            raise ValueError("dominance compares partitions of equal size")
        run_a = run_b = 0
        for i in range(max(len(self.parts), len(other.parts))):
            run_a += self.parts[i] if i < len(self.parts) else 0
            run_b += other.parts[i] if i < len(other.parts) else 0
            if run_a < run_b:
                return False
        return True

    def syt_count(self) -> int:
        """Number of standard tableaux by the hook length formula."""
        n = self.size
        prod = 1
        for r, c in self.boxes():
            prod *= self.hook(r, c)
        return factorial(n) // prod


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return [Partition(p) for p in _partition_tuples(n)]


@cache
def _partition_tuples(n: int, max_part: int | None = None) -> tuple:
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partition_tuples(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


class StandardTableau:
    """A filling of a shape by 1..n increasing along rows and columns.

    `position[i]` gives the 0-based (row, col) of the entry i+1.
    """

    __slots__ = ("shape", "position")

    def __init__(self, shape: Partition, position):
        self.shape = shape
        self.position = tuple(position)

    @classmethod
    def from_rows(cls, rows) -> "StandardTableau":
        shape = Partition(tuple(len(r) for r in rows))
        n = shape.size
        pos = [None] * n
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                pos[v - 1] = (r, c)
        if any(p is None for p in pos):
            raise ValueError("entries must be exactly 1..n")
        t = cls(shape, pos)
        if not t.is_standard():
            raise ValueError("not row/column increasing")
        return t

    def rows(self) -> list[list[int]]:
        rows = [[0] * p for p in self.shape.parts]
        for i, (r, c) in enumerate(self.position):
            rows[r][c] = i + 1
        return rows

    def is_standard(self) -> bool:
        rows = self.rows()
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if c + 1 < len(row) and row[c + 1] < v:
                    return False
                if r + 1 < len(rows) and c < len(rows[r + 1]) and rows[r + 1][c] < v:
                    return False
        return True

    @property
    def size(self):
        return self.shape.size

    def __eq__(self, other):
        return isinstance(other, StandardTableau) and self.position == other.position

    def __hash__(self):
        return hash(self.position)

    def __repr__(self):
        return f"StandardTableau({self.rows()})"


def syt_of(shape: Partition) -> Iterator[StandardTableau]:
    """Stream every standard tableau of the given shape exactly once.

    Entries are placed 1,2,...,n; at each step the next entry may extend any
    row whose length is strictly less than the row above it.
    """
    n = shape.size
    if n == 0:
        yield StandardTableau(shape, ())
        return
    target = shape.parts

    def place(filled_rows, position):
        k = sum(filled_rows)
        if k == n:
            yield StandardTableau(shape, position)
            return
        for r in range(len(target)):
            if filled_rows[r] < target[r] and (r == 0 or filled_rows[r] < filled_rows[r - 1]):
                nxt = list(filled_rows)
                c = nxt[r]
                nxt[r] += 1
                yield from place(nxt, position + [(r, c)])

    yield from place([0] * len(target), [])


def box_weight(t: StandardTableau, i: int, vars=("Q", "T")) -> GradedPolynomial:
    """chi_i = Q^col * T^(-row) for the box labeled i (1-based)."""
    if not 1 <= i <= t.size:
        raise IndexError(f"label {i} out of range 1..{t.size}")
    r, c = t.position[i - 1]
    exp = [0, 0]
    exp[0], exp[1] = c, -r
    return GradedPolynomial.monomial(vars, exp)


def box_weight_exponents(t: StandardTableau, i: int) -> tuple[int, int]:
    """(Q-exponent, T-exponent) of chi_i, avoiding polynomial overhead."""
    if not 1 <= i <= t.size:
        raise IndexError(f"label {i} out of range 1..{t.size}")
    r, c = t.position[i - 1]
    return (c, -r)
