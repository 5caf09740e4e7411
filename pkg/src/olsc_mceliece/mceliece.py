"""McEliece public-key encryption on top of a scrambled, permuted OLSC code.

Public key ``G' = S G P``; ciphertext ``c = m G' + e`` with e of symbol
weight exactly t; decryption undoes P, runs the one-step decoder, then
multiplies by ``S^-1``.  Messages are blocks of k symbols of b bits, so one
k x n binary public matrix carries k*b plaintext bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitlinalg import (
    BitMatrix,
    Permutation,
    SymbolVector,
    invert,
    mat_mul,
    permute_array,
    random_permutation,
    sample_nonsingular,
    unpermute_array,
    xor_matmul,
)
from .errors import DimensionMismatch, ParameterError
from .olsc import DecodeReport, OlscCode, build_code, decode_array, reports_from_batch


@dataclass(frozen=True)
class InsecureTestMode:
    """Degenerate key and error choices used only by tests.

    Never exposed through the command line.
    """

    identity_scrambler: bool = True
    identity_permutation: bool = True
    zero_error: bool = False


@dataclass(frozen=True, eq=False)
class PublicKey:
    q: int
    t: int
    b: int
    g_prime: BitMatrix

    @property
    def k(self) -> int:
        return self.g_prime.rows

    @property
    def n(self) -> int:
        return self.g_prime.cols

    @property
    def params(self) -> tuple[int, int, int]:
        return self.q, self.t, self.b

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PublicKey):
            return NotImplemented
        return self.params == other.params and self.g_prime == other.g_prime


@dataclass(frozen=True, eq=False)
class PrivateKey:
    code: OlscCode
    s: BitMatrix
    s_inv: BitMatrix
    p: Permutation
    p_inv: Permutation

    @property
    def params(self) -> tuple[int, int, int]:
        return self.code.params

    def public_key(self) -> PublicKey:
        return PublicKey(*self.params, _scramble(self.s, self.code.G, self.p))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrivateKey):
            return NotImplemented
        return self.params == other.params and self.s == other.s and self.p == other.p


@dataclass(frozen=True, eq=False)
class Ciphertext:
    payload: SymbolVector

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ciphertext):
            return NotImplemented
        return self.payload == other.payload


@dataclass(frozen=True)
class KeyMetrics:
    k: int
    n: int
    b: int
    matrix_bits: int
    plaintext_bits: int
    plaintext_to_key_ratio: float
    # plaintext bits carried per block relative to a binary code with the same k x n matrix
    factor: int


def _scramble(s: BitMatrix, g: BitMatrix, p: Permutation) -> BitMatrix:
    sg = mat_mul(s, g)
    return BitMatrix.from_dense(permute_array(sg.dense, p))


def keygen(q: int, t: int, b: int, rng: np.random.Generator,
           *, insecure_test_mode: InsecureTestMode | None = None) -> tuple[PublicKey, PrivateKey]:
    code = build_code(q, t, b)
    test = insecure_test_mode
    if test is not None and test.identity_scrambler:
        s = s_inv = BitMatrix.identity(code.k)
    else:
        s, s_inv = sample_nonsingular(code.k, rng)
    if test is not None and test.identity_permutation:
        p = Permutation.identity(code.n)
    else:
        p = random_permutation(code.n, rng)
    sk = PrivateKey(code, s, s_inv, p, p.inverse())
    return sk.public_key(), sk


def private_key_from_parts(q: int, t: int, b: int, s: BitMatrix, p: Permutation) -> PrivateKey:
    """Rebuild a private key from its stored parts, recomputing both inverses."""
    code = build_code(q, t, b)
    if s.shape != (code.k, code.k):
        raise DimensionMismatch(f"S must be {code.k}x{code.k}, got {s.rows}x{s.cols}")
    if p.size != code.n:
        raise DimensionMismatch(f"permutation must have size {code.n}, got {p.size}")
    return PrivateKey(code, s, invert(s), p, p.inverse())


def sample_errors(count: int, n: int, t: int, b: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` error vectors, each with exactly t uniformly placed nonzero b-bit symbols."""
    if b < 1 or b > 64:
        raise ParameterError(f"b must be in [1, 64], got {b}")
    if t < 0 or t > n:
        raise ParameterError(f"need 0 <= t <= n, got t={t}, n={n}")
    errors = np.zeros((count, n), dtype=np.uint64)
    if t == 0 or count == 0:
        return errors
    if t == n:
        positions = np.broadcast_to(np.arange(n), (count, n))
    else:
        positions = rng.random((count, n)).argpartition(t, axis=1)[:, :t]
    values = rng.integers(1, (1 << b) - 1, size=(count, t), dtype=np.uint64, endpoint=True)
    np.put_along_axis(errors, positions, values, axis=1)
    return errors


def sample_error(n: int, t: int, b: int, rng: np.random.Generator) -> SymbolVector:
    return SymbolVector(sample_errors(1, n, t, b, rng)[0], b)


def _check_messages(pk: PublicKey, messages: np.ndarray) -> np.ndarray:
    messages = np.asarray(messages, dtype=np.uint64)
    if messages.shape[-1] != pk.k:
        raise DimensionMismatch(f"message blocks must have {pk.k} symbols, got {messages.shape[-1]}")
    if pk.b < 64 and messages.size and int(messages.max()) >> pk.b:
        raise ValueError(f"message symbol does not fit in {pk.b} bits")
    return messages


def encrypt_blocks(pk: PublicKey, messages: np.ndarray, rng: np.random.Generator,
                   *, insecure_test_mode: InsecureTestMode | None = None) -> np.ndarray:
    """Encrypt an ``(N, k)`` array of message blocks with independent errors."""
    messages = np.atleast_2d(_check_messages(pk, messages))
    codewords = xor_matmul(messages, pk.g_prime, pk.b)
    if insecure_test_mode is not None and insecure_test_mode.zero_error:
        return codewords
    return codewords ^ sample_errors(messages.shape[0], pk.n, pk.t, pk.b, rng)


def encrypt(pk: PublicKey, m: SymbolVector, rng: np.random.Generator,
            *, insecure_test_mode: InsecureTestMode | None = None) -> Ciphertext:
    if m.length != pk.k or m.width_bits != pk.b:
        raise DimensionMismatch(
            f"plaintext must be {pk.k} symbols of {pk.b} bits, got {m.length} of {m.width_bits}")
    c = encrypt_blocks(pk, m.symbols[None, :], rng, insecure_test_mode=insecure_test_mode)[0]
    return Ciphertext(SymbolVector(c, pk.b))


def decrypt_blocks(sk: PrivateKey, ciphertexts: np.ndarray) -> tuple[np.ndarray, list[DecodeReport]]:
    """Decrypt an ``(N, n)`` array of ciphertext blocks."""
    code = sk.code
    ciphertexts = np.atleast_2d(np.asarray(ciphertexts, dtype=np.uint64))
    if ciphertexts.shape[-1] != code.n:
        raise DimensionMismatch(f"ciphertext blocks must have {code.n} symbols, got {ciphertexts.shape[-1]}")
    unpermuted = unpermute_array(ciphertexts, sk.p)
    scrambled, corrected, ambiguous, xor_ops, cmp_ops = decode_array(code, unpermuted)
    messages = xor_matmul(scrambled, sk.s_inv, code.b)
    return messages, reports_from_batch(corrected, ambiguous, xor_ops, cmp_ops)


def decrypt(sk: PrivateKey, c: Ciphertext) -> tuple[SymbolVector, DecodeReport]:
    code = sk.code
    if c.payload.length != code.n or c.payload.width_bits != code.b:
        raise DimensionMismatch(
            f"ciphertext must be {code.n} symbols of {code.b} bits, "
            f"got {c.payload.length} of {c.payload.width_bits}")
    messages, reports = decrypt_blocks(sk, c.payload.symbols[None, :])
    return SymbolVector(messages[0], code.b), reports[0]


def key_metrics(pk: PublicKey) -> KeyMetrics:
    k, n, b = pk.k, pk.n, pk.b
    matrix_bits = k * n
    plaintext_bits = k * b
    return KeyMetrics(
        k=k,
        n=n,
        b=b,
        matrix_bits=matrix_bits,
        plaintext_bits=plaintext_bits,
        plaintext_to_key_ratio=plaintext_bits / matrix_bits,
        factor=plaintext_bits // k,
    )
