"""Binary file formats for keys and ciphertexts.

Every file starts with a 10-byte header::

    magic "OLSM" | version 0x01 | kind | q (u16 LE) | t (u8) | b (u8)

kind 0x01 (public key) is followed by the k rows of G', each packed
LSB-first into ceil(n/8) bytes.  kind 0x02 (private key) stores S as k rows
of ceil(k/8) bytes followed by the n permutation indices as u32 LE; G, H
and both inverses are rebuilt on load.  kind 0x03 (ciphertext) holds a u32
LE block count followed by blocks of n symbols, each ceil(b/8) bytes LE.
"""

from __future__ import annotations

import io
import os
import struct
import tempfile
from typing import BinaryIO, NamedTuple, Sequence

import numpy as np

from .bitlinalg import BitMatrix, Permutation, SymbolVector
from .errors import (
    BadKind,
    BadMagic,
    BadVersion,
    FormatError,
    NotInvertible,
    NotPermutation,
    ParameterError,
    ParamError,
    SingularError,
    Truncated,
)
from .mceliece import Ciphertext, PrivateKey, PublicKey, private_key_from_parts
from .olsc import check_parameters

MAGIC = b"OLSM"
VERSION = 0x01
KIND_PUBLIC = 0x01
KIND_PRIVATE = 0x02
KIND_CIPHERTEXT = 0x03

_HEADER = struct.Struct("<4sBBHBB")
HEADER_SIZE = _HEADER.size


class CodeParams(NamedTuple):
    q: int
    t: int
    b: int

    @property
    def k(self) -> int:
        return self.q * self.q

    @property
    def n(self) -> int:
        return self.q * self.q + 2 * self.t * self.q

    @property
    def symbol_bytes(self) -> int:
        return (self.b + 7) // 8


def pack_header(kind: int, params: CodeParams) -> bytes:
    q, t, b = params
    return _HEADER.pack(MAGIC, VERSION, kind, q, t, b)


def _read_exact(stream: BinaryIO, size: int, what: str) -> bytes:
    data = stream.read(size)
    if len(data) != size:
        raise Truncated(f"truncated {what}: expected {size} bytes, got {len(data)}")
    return data


def read_header(stream: BinaryIO, kind: int) -> CodeParams:
    raw = stream.read(HEADER_SIZE)
    if len(raw) >= 4 and raw[:4] != MAGIC:
        raise BadMagic(f"bad magic {raw[:4]!r}, expected {MAGIC!r}")
    if len(raw) != HEADER_SIZE:
        raise Truncated(f"truncated header: expected {HEADER_SIZE} bytes, got {len(raw)}")
    magic, version, got_kind, q, t, b = _HEADER.unpack(raw)
    if version != VERSION:
        raise BadVersion(f"unsupported version {version:#04x}")
    if got_kind != kind:
        raise BadKind(f"expected kind {kind:#04x}, got {got_kind:#04x}")
    try:
        check_parameters(q, t, b)
    except ParameterError as exc:
        raise ParamError(str(exc)) from exc
    return CodeParams(q, t, b)


def _expect_eof(stream: BinaryIO) -> None:
    if stream.read(1):
        raise FormatError("trailing bytes after end of record")


def _read_bit_rows(stream: BinaryIO, rows: int, cols: int, what: str) -> BitMatrix:
    stride = (cols + 7) // 8
    raw = _read_exact(stream, rows * stride, what)
    packed = np.frombuffer(raw, dtype=np.uint8).reshape(rows, stride)
    try:
        return BitMatrix(rows, cols, packed)
    except ValueError as exc:
        raise FormatError(f"{what}: {exc}") from exc


def _params_of(obj: PublicKey | PrivateKey) -> CodeParams:
    return CodeParams(*obj.params)


def dumps_public(pk: PublicKey) -> bytes:
    return pack_header(KIND_PUBLIC, _params_of(pk)) + pk.g_prime.packed.tobytes()


def write_public(stream: BinaryIO, pk: PublicKey) -> None:
    stream.write(dumps_public(pk))


def read_public(stream: BinaryIO) -> PublicKey:
    params = read_header(stream, KIND_PUBLIC)
    g_prime = _read_bit_rows(stream, params.k, params.n, "public matrix")
    _expect_eof(stream)
    return PublicKey(params.q, params.t, params.b, g_prime)


def dumps_private(sk: PrivateKey) -> bytes:
    return b"".join([
        pack_header(KIND_PRIVATE, _params_of(sk)),
        sk.s.packed.tobytes(),
        sk.p.map.astype("<u4").tobytes(),
    ])


def write_private(stream: BinaryIO, sk: PrivateKey) -> None:
    stream.write(dumps_private(sk))


def read_private(stream: BinaryIO) -> PrivateKey:
    params = read_header(stream, KIND_PRIVATE)
    k, n = params.k, params.n
    s = _read_bit_rows(stream, k, k, "scrambler matrix")
    indices = np.frombuffer(_read_exact(stream, 4 * n, "permutation"), dtype="<u4").astype(np.int64)
    _expect_eof(stream)
    try:
        p = Permutation(indices)
    except ValueError as exc:
        raise NotPermutation("stored indices are not a permutation of 0..n-1") from exc
    try:
        return private_key_from_parts(*params, s, p)
    except SingularError as exc:
        raise NotInvertible("stored scrambler matrix is singular") from exc


def dumps_ciphertext(params: CodeParams, blocks: Sequence[Ciphertext] | np.ndarray) -> bytes:
    params = CodeParams(*params)
    if isinstance(blocks, np.ndarray):
        arr = np.asarray(blocks, dtype=np.uint64).reshape(-1, params.n)
    else:
        for c in blocks:
            if c.payload.length != params.n or c.payload.width_bits != params.b:
                raise ParamError("ciphertext block does not match header parameters")
        arr = np.array([c.payload.symbols for c in blocks], dtype=np.uint64).reshape(-1, params.n)
    nbytes = params.symbol_bytes
    body = arr.astype("<u8").view(np.uint8).reshape(arr.shape + (8,))[..., :nbytes]
    return (pack_header(KIND_CIPHERTEXT, params) + struct.pack("<I", arr.shape[0])
            + np.ascontiguousarray(body).tobytes())


def write_ciphertext(stream: BinaryIO, params: CodeParams, blocks: Sequence[Ciphertext] | np.ndarray) -> None:
    stream.write(dumps_ciphertext(params, blocks))


def read_ciphertext_array(stream: BinaryIO) -> tuple[CodeParams, np.ndarray]:
    """Read a ciphertext file as ``(params, (blocks, n) uint64 array)``."""
    params = read_header(stream, KIND_CIPHERTEXT)
    (count,) = struct.unpack("<I", _read_exact(stream, 4, "block count"))
    nbytes = params.symbol_bytes
    raw = _read_exact(stream, count * params.n * nbytes, "ciphertext blocks")
    _expect_eof(stream)
    wide = np.zeros((count, params.n, 8), dtype=np.uint8)
    wide[..., :nbytes] = np.frombuffer(raw, dtype=np.uint8).reshape(count, params.n, nbytes)
    symbols = wide.view("<u8")[..., 0].astype(np.uint64)
    if params.b < 64 and symbols.size and int(symbols.max()) >> params.b:
        raise FormatError(f"ciphertext symbol does not fit in {params.b} bits")
    return params, symbols


def read_ciphertext(stream: BinaryIO) -> tuple[CodeParams, list[Ciphertext]]:
    params, symbols = read_ciphertext_array(stream)
    return params, [Ciphertext(SymbolVector(row, params.b)) for row in symbols]


def loads(data: bytes, reader):
    return reader(io.BytesIO(data))


def atomic_write(path: str | os.PathLike, data: bytes) -> None:
    """Write ``data`` to ``path`` via a temp file and rename; nothing is left behind on failure."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def load_file(path: str | os.PathLike, reader):
    with open(path, "rb") as fh:
        return reader(fh)
