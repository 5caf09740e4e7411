"""Latin squares and mutually orthogonal families of prime order."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonPrimeOrder, OrderMismatch, TooManySquares


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, eq=False)
class LatinSquare:
    """An order-q grid of symbols 0..q-1, stored row-major.

    Construction only checks shape and value range; use :func:`is_latin`
    for the row/column permutation property.
    """

    cells: np.ndarray

    def __post_init__(self) -> None:
        cells = np.array(self.cells, dtype=np.int64)
        if cells.ndim != 2 or cells.shape[0] != cells.shape[1] or cells.shape[0] == 0:
            raise ValueError(f"cells must be a non-empty square grid, got shape {cells.shape}")
        q = cells.shape[0]
        if cells.min() < 0 or cells.max() >= q:
            raise ValueError(f"cell values must lie in [0, {q - 1}]")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @property
    def order(self) -> int:
        return self.cells.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    def __hash__(self) -> int:
        return hash(self.cells.tobytes())

    def tolist(self) -> list[list[int]]:
        return self.cells.tolist()


@dataclass(frozen=True)
class MolsFamily:
    order: int
    squares: tuple[LatinSquare, ...]

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)

    def __getitem__(self, i: int) -> LatinSquare:
        return self.squares[i]


def cyclic_mols(q: int, count: int) -> MolsFamily:
    """Return ``count`` squares with cell (i, j) = (a*i + j) mod q, a = 1..count.

    For prime ``q`` these are pairwise orthogonal, and ``q - 1`` of them is
    the largest family that exists.
    """
    if not is_prime(q):
        raise NonPrimeOrder(f"q must be prime, got {q}")
    if count < 0 or count > q - 1:
        raise TooManySquares(f"at most {q - 1} orthogonal squares of order {q}, asked for {count}")
    i = np.arange(q)[:, None]
    j = np.arange(q)[None, :]
    squares = tuple(LatinSquare((a * i + j) % q) for a in range(1, count + 1))
    return MolsFamily(q, squares)


def is_latin(s: LatinSquare) -> bool:
    q = s.order
    full = np.arange(q)
    rows_ok = all(np.array_equal(np.sort(row), full) for row in s.cells)
    cols_ok = all(np.array_equal(np.sort(col), full) for col in s.cells.T)
    return rows_ok and cols_ok


def are_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")
    q = a.order
    pairs = a.cells.ravel() * q + b.cells.ravel()
    return np.unique(pairs).size == q * q


def is_mols(squares: Sequence[LatinSquare]) -> bool:
    """True if every square is Latin and every distinct pair is orthogonal."""
    if not all(is_latin(s) for s in squares):
        return False
    return all(
        are_orthogonal(squares[x], squares[y])
        for x in range(len(squares))
        for y in range(x + 1, len(squares))
    )
