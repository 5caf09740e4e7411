"""Orthogonal Latin square codes over b-bit symbols.

The k = q*q data symbols are laid out on a q x q grid.  The 2t*q parity
checks come in 2t blocks of q: one block per row, one per column, and one
per level set of each of the 2t - 2 cyclic orthogonal Latin squares.  Any
two data positions share at most one check, which is what makes one-step
majority voting correct up to t symbol errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bitlinalg import BitMatrix, SymbolVector, xor_matmul
from .errors import DimensionMismatch, ParameterError
from .latin import cyclic_mols, is_prime


@dataclass(frozen=True, eq=False)
class OlscCode:
    q: int
    t: int
    b: int
    G: BitMatrix
    H: BitMatrix
    # checks_of[i] = the 2t check rows that contain data position i
    checks_of: np.ndarray
    # check_members[j] = the q data positions of check j, then its parity position k + j
    check_members: np.ndarray

    @property
    def k(self) -> int:
        return self.q * self.q

    @property
    def r(self) -> int:
        return 2 * self.t * self.q

    @property
    def n(self) -> int:
        return self.k + self.r

    @property
    def M(self) -> BitMatrix:
        return BitMatrix.from_dense(self.H.dense[:, : self.k])

    @property
    def params(self) -> tuple[int, int, int]:
        return self.q, self.t, self.b


@dataclass(frozen=True)
class DecodeReport:
    corrected: int
    ambiguous: int
    field_ops: int
    xor_ops: int
    cmp_ops: int


def check_parameters(q: int, t: int, b: int) -> None:
    if not is_prime(q):
        raise ParameterError(f"q must be prime, got {q}")
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    if 2 * t - 2 > q - 1:
        raise ParameterError(
            f"need 2t-2 <= q-1 (only {q - 1} orthogonal squares of order {q}); got q={q}, t={t}")
    if not 1 <= b <= 64:
        raise ParameterError(f"b must be in [1, 64], got {b}")


def max_t(q: int) -> int:
    return (q + 1) // 2


@lru_cache(maxsize=None)
def _structure(q: int, t: int) -> tuple[BitMatrix, BitMatrix, np.ndarray, np.ndarray]:
    k, r = q * q, 2 * t * q
    rows = np.repeat(np.arange(q), q)
    cols = np.tile(np.arange(q), q)
    # label[blk, pos] = index within block blk of the check holding data position pos
    labels = [rows, cols]
    for square in cyclic_mols(q, 2 * t - 2):
        labels.append(square.cells.ravel())
    labels = np.stack(labels)
    checks_of = (np.arange(2 * t)[:, None] * q + labels).T.copy()

    m = np.zeros((r, k), dtype=np.uint8)
    m[checks_of, np.arange(k)[:, None]] = 1
    H = BitMatrix.from_dense(np.hstack([m, np.eye(r, dtype=np.uint8)]))
    G = BitMatrix.from_dense(np.hstack([np.eye(k, dtype=np.uint8), m.T]))

    members = np.empty((r, q + 1), dtype=np.int64)
    for j in range(r):
        members[j, :q] = np.flatnonzero(m[j])
        members[j, q] = k + j
    checks_of.setflags(write=False)
    members.setflags(write=False)
    return G, H, checks_of, members


def build_code(q: int, t: int, b: int) -> OlscCode:
    check_parameters(q, t, b)
    G, H, checks_of, members = _structure(q, t)
    return OlscCode(q, t, b, G, H, checks_of, members)


def _as_symbols(code: OlscCode, v: SymbolVector, length: int, what: str) -> np.ndarray:
    if v.length != length:
        raise DimensionMismatch(f"{what} must have {length} symbols, got {v.length}")
    if v.width_bits != code.b:
        raise DimensionMismatch(f"{what} width {v.width_bits} != code symbol width {code.b}")
    return v.symbols


def encode_array(code: OlscCode, messages: np.ndarray) -> np.ndarray:
    return xor_matmul(messages, code.G, code.b)


def encode(code: OlscCode, m: SymbolVector) -> SymbolVector:
    return SymbolVector(encode_array(code, _as_symbols(code, m, code.k, "message")), code.b)


def syndrome_array(code: OlscCode, received: np.ndarray) -> np.ndarray:
    received = np.asarray(received, dtype=np.uint64)
    if received.shape[-1] != code.n:
        raise DimensionMismatch(f"received word must have {code.n} symbols, got {received.shape[-1]}")
    return np.bitwise_xor.reduce(received[..., code.check_members], axis=-1)


def syndrome(code: OlscCode, v: SymbolVector) -> SymbolVector:
    return SymbolVector(syndrome_array(code, _as_symbols(code, v, code.n, "received word")), code.b)


def decode_array(code: OlscCode, received: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, int, int]:
    """One-step majority-logic decode of a batch of words (last axis = n).

    Returns ``(data, corrected, ambiguous, xor_ops, cmp_ops)`` where the
    flag arrays have the batch shape and the op counts are per word.
    Every word goes through exactly the same elementwise operations.
    """
    received = np.asarray(received, dtype=np.uint64)
    k, t = code.k, code.t
    gathered = received[..., code.check_members]
    s = np.bitwise_xor.reduce(gathered, axis=-1)
    votes = s[..., code.checks_of]                                   # (..., k, 2t)
    agree = votes[..., :, None] == votes[..., None, :]               # (..., k, 2t, 2t)
    tally = agree.sum(axis=-1)
    nonzero = votes != 0
    winner = (tally > t) & nonzero
    estimate = np.where(winner, votes, np.uint64(0)).max(axis=-1)
    data = received[..., :k] ^ estimate

    has_winner = winner.any(axis=-1)
    # more than t unsatisfied checks with no majority value cannot come from <= t errors
    overloaded = nonzero.sum(axis=-1) > t
    corrected = np.count_nonzero(has_winner, axis=-1)
    ambiguous = np.count_nonzero(overloaded & ~has_winner, axis=-1)

    words = max(1, math.prod(received.shape[:-1]))
    xor_ops = (gathered.size - s.size + data.size) // words
    cmp_ops = (agree.size + nonzero.size + tally.size + overloaded.size) // words
    return data, corrected, ambiguous, xor_ops, cmp_ops


def decode(code: OlscCode, v: SymbolVector) -> tuple[SymbolVector, DecodeReport]:
    """Recover the k data symbols of ``v``.

    A data symbol is corrected when some nonzero syndrome value appears in
    more than t of its 2t checks.  Otherwise the symbol passes through
    unchanged; it is counted as ambiguous when more than t of its checks
    are nonzero anyway, which no pattern of at most t errors can produce.
    Exact whenever ``v`` has at most t symbol errors, parity positions
    included.
    """
    received = _as_symbols(code, v, code.n, "received word")
    data, corrected, ambiguous, xor_ops, cmp_ops = decode_array(code, received)
    report = DecodeReport(int(corrected), int(ambiguous), 0, xor_ops, cmp_ops)
    return SymbolVector(data, code.b), report


def reports_from_batch(corrected: np.ndarray, ambiguous: np.ndarray, xor_ops: int, cmp_ops: int) -> list[DecodeReport]:
    return [DecodeReport(int(c), int(a), 0, xor_ops, cmp_ops) for c, a in zip(corrected, ambiguous)]


@dataclass(frozen=True)
class DepthModel:
    """Critical-path depth of a combinational one-step decoder.

    Each check XORs q data symbols and one parity symbol (a tree of depth
    ceil(log2 q) + 1); each data symbol then tallies its 2t votes with an
    adder tree of depth ceil(log2 2t), compares once against the threshold
    and applies one correcting XOR.  None of it depends on the input.
    """

    syndrome_depth: int
    vote_depth: int
    compare_depth: int = 1
    correct_depth: int = 1

    @property
    def total(self) -> int:
        return self.syndrome_depth + self.vote_depth + self.compare_depth + self.correct_depth


def depth_model(q: int, t: int) -> DepthModel:
    return DepthModel(
        syndrome_depth=math.ceil(math.log2(q)) + 1,
        vote_depth=math.ceil(math.log2(2 * t)) if t > 0 else 0,
    )


def sequential_iterations(code: OlscCode) -> int:
    """Step count of a symbol-serial bounded-distance decoder, for contrast (grows as n)."""
    return code.n
