"""GF(2) bit-matrix algebra and XOR products of b-bit symbol vectors.

Matrices are bit-packed row-major, LSB-first within each byte, one row per
``ceil(cols / 8)`` bytes with zero padding.  Symbol vectors hold unsigned
b-bit values; multiplying one by a binary matrix only ever XORs symbols
together, so no finite-field multiplication is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotSquare, SingularError

MAX_WIDTH_BITS = 64
SEED_BYTES = 32


def make_rng(seed: bytes | None = None) -> np.random.Generator:
    """Entropy source used by every randomized operation.

    A 32-byte ``seed`` keys a Philox4x64 counter-mode generator (through
    ``SeedSequence``), giving reproducible test vectors.  ``None`` draws the
    key from OS entropy, which is what production callers must use.
    """
    if seed is None:
        return np.random.Generator(np.random.Philox(np.random.SeedSequence()))
    seed = bytes(seed)
    if len(seed) != SEED_BYTES:
        raise ValueError(f"seed must be exactly {SEED_BYTES} bytes, got {len(seed)}")
    entropy = int.from_bytes(seed, "little")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


class BitMatrix:
    """Immutable binary matrix with bit-packed rows."""

    def __init__(self, rows: int, cols: int, packed: np.ndarray):
        stride = (cols + 7) // 8
        packed = np.ascontiguousarray(packed, dtype=np.uint8)
        if packed.shape != (rows, stride):
            raise DimensionMismatch(
                f"packed storage for {rows}x{cols} must have shape {(rows, stride)}, got {packed.shape}")
        if cols % 8 and rows and np.any(packed[:, -1] >> (cols % 8)):
            raise ValueError("padding bits beyond the last column must be zero")
        packed.setflags(write=False)
        self.rows = rows
        self.cols = cols
        self.packed = packed

    @classmethod
    def from_dense(cls, bits) -> "BitMatrix":
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 2:
            raise DimensionMismatch(f"expected a 2-D array, got {arr.ndim}-D")
        if np.any(arr > 1):
            raise ValueError("entries must be 0 or 1")
        rows, cols = arr.shape
        packed = np.packbits(arr, axis=1, bitorder="little")
        if packed.shape[1] != (cols + 7) // 8:  # cols == 0
            packed = packed.reshape(rows, (cols + 7) // 8)
        m = cls(rows, cols, packed)
        m.__dict__["dense"] = _frozen(arr.copy())
        return m

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, (cols + 7) // 8), dtype=np.uint8))

    @classmethod
    def from_row_ints(cls, row_ints: Sequence[int], cols: int) -> "BitMatrix":
        stride = (cols + 7) // 8
        buf = b"".join(int(r).to_bytes(stride, "little") for r in row_ints)
        packed = np.frombuffer(buf, dtype=np.uint8).reshape(len(row_ints), stride)
        return cls(len(row_ints), cols, packed)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @cached_property
    def dense(self) -> np.ndarray:
        """Read-only ``rows x cols`` uint8 array of 0/1 entries."""
        return _frozen(np.unpackbits(self.packed, axis=1, count=self.cols, bitorder="little"))

    @cached_property
    def _dense_f64(self) -> np.ndarray:
        return _frozen(self.dense.astype(np.float64))

    def row_ints(self) -> list[int]:
        """Rows as Python ints, bit j of the int being column j."""
        return [int.from_bytes(row.tobytes(), "little") for row in self.packed]

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.dense.T)

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def rank(self) -> int:
        return _rank(self.row_ints(), self.cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return int(self.dense[i, j])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.packed, other.packed)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.packed.tobytes()))

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True, eq=False)
class Permutation:
    """Bijection on ``range(size)``; ``map[i]`` is where source position i goes."""

    map: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.map, dtype=np.int64).reshape(-1)
        if not np.array_equal(np.sort(arr), np.arange(arr.size)):
            raise ValueError("map is not a bijection on 0..n-1")
        object.__setattr__(self, "map", _frozen(arr))

    @property
    def size(self) -> int:
        return self.map.size

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n))

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.map)
        inv[self.map] = np.arange(self.size)
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        if self.size != other.size:
            raise DimensionMismatch(f"sizes differ: {self.size} vs {other.size}")
        return Permutation(other.map[self.map])

    def as_matrix(self) -> BitMatrix:
        dense = np.zeros((self.size, self.size), dtype=np.uint8)
        dense[np.arange(self.size), self.map] = 1
        return BitMatrix.from_dense(dense)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self.map, other.map)

    def __hash__(self) -> int:
        return hash(self.map.tobytes())


@dataclass(frozen=True, eq=False)
class SymbolVector:
    """A sequence of unsigned ``width_bits``-bit symbols."""

    symbols: np.ndarray
    width_bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.width_bits <= MAX_WIDTH_BITS:
            raise ValueError(f"width_bits must be in [1, {MAX_WIDTH_BITS}], got {self.width_bits}")
        arr = np.array(self.symbols, dtype=np.uint64).reshape(-1)
        if self.width_bits < 64 and arr.size and int(arr.max()) >> self.width_bits:
            raise ValueError(f"symbol value does not fit in {self.width_bits} bits")
        object.__setattr__(self, "symbols", _frozen(arr))

    @property
    def length(self) -> int:
        return self.symbols.size

    def __len__(self) -> int:
        return self.symbols.size

    @classmethod
    def zeros(cls, length: int, width_bits: int) -> "SymbolVector":
        return cls(np.zeros(length, dtype=np.uint64), width_bits)

    def weight(self) -> int:
        """Number of nonzero symbols."""
        return int(np.count_nonzero(self.symbols))

    def __xor__(self, other: "SymbolVector") -> "SymbolVector":
        if self.length != other.length or self.width_bits != other.width_bits:
            raise DimensionMismatch("symbol vectors differ in length or width")
        return SymbolVector(self.symbols ^ other.symbols, self.width_bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymbolVector):
            return NotImplemented
        return self.width_bits == other.width_bits and np.array_equal(self.symbols, other.symbols)

    def __hash__(self) -> int:
        return hash((self.width_bits, self.symbols.tobytes()))

    def tolist(self) -> list[int]:
        return [int(x) for x in self.symbols]

    def __repr__(self) -> str:
        return f"SymbolVector({self.tolist()}, width_bits={self.width_bits})"


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _rank(rows: list[int], ncols: int) -> int:
    work = list(rows)
    rank = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = next((r for r in range(rank, len(work)) if work[r] & bit), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and work[r] & bit:
                work[r] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    prod = a._dense_f64 @ b._dense_f64
    return BitMatrix.from_dense((prod.astype(np.int64) & 1).astype(np.uint8))


def _invert_rows(rows: list[int], n: int) -> list[int]:
    # Gauss-Jordan on [A | I] packed into one int per row
    aug = [r | (1 << (n + i)) for i, r in enumerate(rows)]
    for col in range(n):
        bit = 1 << col
        for p in range(col, n):
            if aug[p] & bit:
                break
        else:
            raise SingularError(f"matrix is singular (no pivot in column {col})")
        pr = aug[p]
        aug[p] = aug[col]
        aug = [r ^ pr if r & bit else r for r in aug]
        aug[col] = pr
    return [r >> n for r in aug]


def invert(a: BitMatrix) -> BitMatrix:
    """Inverse over GF(2) by Gauss-Jordan elimination."""
    if a.rows != a.cols:
        raise NotSquare(f"cannot invert a {a.rows}x{a.cols} matrix")
    return BitMatrix.from_row_ints(_invert_rows(a.row_ints(), a.rows), a.cols)


def sample_nonsingular(k: int, rng: np.random.Generator) -> tuple[BitMatrix, BitMatrix]:
    """Uniform invertible ``k x k`` matrix together with its inverse.

    Rejection sampling: about 3.5 draws on average for any k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    while True:
        m = BitMatrix.from_dense(rng.integers(0, 2, size=(k, k), dtype=np.uint8))
        try:
            inv_rows = _invert_rows(m.row_ints(), k)
        except SingularError:
            continue
        return m, BitMatrix.from_row_ints(inv_rows, k)


def random_nonsingular(k: int, rng: np.random.Generator) -> BitMatrix:
    return sample_nonsingular(k, rng)[0]


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    """Uniform random permutation of ``range(n)`` (Fisher-Yates shuffle)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Permutation(rng.permutation(n))


def xor_matmul(values: np.ndarray, matrix: BitMatrix, width_bits: int) -> np.ndarray:
    """Symbol product over the last axis of ``values``.

    Output symbol j is the XOR of all input symbols i with ``matrix[i, j] == 1``.
    Works on any leading batch shape by splitting symbols into bit planes,
    each of which is an ordinary GF(2) vector-matrix product.
    """
    values = np.asarray(values, dtype=np.uint64)
    if values.shape[-1] != matrix.rows:
        raise DimensionMismatch(f"vector length {values.shape[-1]} != matrix rows {matrix.rows}")
    shifts = np.arange(width_bits, dtype=np.uint64)
    planes = ((values[..., None, :] >> shifts[:, None]) & np.uint64(1)).astype(np.float64)
    counts = planes @ matrix._dense_f64
    bits = (counts.astype(np.int64) & 1).astype(np.uint64)
    return np.bitwise_or.reduce(bits << shifts[:, None], axis=-2)


def apply_matrix(v: SymbolVector, a: BitMatrix) -> SymbolVector:
    if v.length != a.rows:
        raise DimensionMismatch(f"vector length {v.length} != matrix rows {a.rows}")
    return SymbolVector(xor_matmul(v.symbols, a, v.width_bits), v.width_bits)


def permute_array(values: np.ndarray, p: Permutation) -> np.ndarray:
    values = np.asarray(values)
    if values.shape[-1] != p.size:
        raise DimensionMismatch(f"vector length {values.shape[-1]} != permutation size {p.size}")
    out = np.empty_like(values)
    out[..., p.map] = values
    return out


def unpermute_array(values: np.ndarray, p: Permutation) -> np.ndarray:
    values = np.asarray(values)
    if values.shape[-1] != p.size:
        raise DimensionMismatch(f"vector length {values.shape[-1]} != permutation size {p.size}")
    return values[..., p.map]


def permute(v: SymbolVector, p: Permutation) -> SymbolVector:
    return SymbolVector(permute_array(v.symbols, p), v.width_bits)


def unpermute(v: SymbolVector, p: Permutation) -> SymbolVector:
    return SymbolVector(unpermute_array(v.symbols, p), v.width_bits)


def hstack(blocks: Iterable[BitMatrix]) -> BitMatrix:
    return BitMatrix.from_dense(np.hstack([blk.dense for blk in blocks]))
