"""Command-line front end: ``olsc-mceliece {keygen,encrypt,decrypt,bench}``.

Exit codes: 0 success, 2 usage or parameter error, 3 malformed file,
4 decryption integrity failure (ambiguous votes or bad framing).

``--seed`` is only accepted when the environment variable
``OLSC_MCELIECE_TEST_BUILD=1`` is set; otherwise all randomness comes from
OS entropy.
"""

from __future__ import annotations

import argparse
import io
import os
import struct
import sys
from typing import Sequence

import numpy as np

from . import codec
from .bench import run_bench
from .bitlinalg import SEED_BYTES, make_rng
from .errors import FormatError, FramingError, ParameterError
from .mceliece import decrypt_blocks, encrypt_blocks, key_metrics, keygen

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_INTEGRITY = 4

TEST_BUILD_ENV = "OLSC_MCELIECE_TEST_BUILD"
_LENGTH = struct.Struct("<Q")


class _UsageError(Exception):
    pass


def frame(data: bytes, k: int, b: int) -> np.ndarray:
    """Split ``len(data) || data`` into blocks of k symbols of b bits, zero padded."""
    framed = np.frombuffer(_LENGTH.pack(len(data)) + data, dtype=np.uint8)
    bits = np.unpackbits(framed, bitorder="little")
    block_bits = k * b
    blocks = -(-bits.size // block_bits)
    padded = np.zeros(blocks * block_bits, dtype=np.uint64)
    padded[: bits.size] = bits
    planes = padded.reshape(blocks, k, b) << np.arange(b, dtype=np.uint64)
    return np.bitwise_or.reduce(planes, axis=-1)


def unframe(symbols: np.ndarray, b: int) -> bytes:
    symbols = np.asarray(symbols, dtype=np.uint64)
    bits = ((symbols[..., None] >> np.arange(b, dtype=np.uint64)) & np.uint64(1)).astype(np.uint8).ravel()
    whole = bits.size - bits.size % 8
    if np.any(bits[whole:]):
        raise FramingError("nonzero padding bits")
    raw = np.packbits(bits[:whole], bitorder="little").tobytes()
    if len(raw) < _LENGTH.size:
        raise FramingError("recovered data shorter than the length prefix")
    (length,) = _LENGTH.unpack_from(raw)
    end = _LENGTH.size + length
    if end > len(raw):
        raise FramingError(f"length field {length} exceeds recovered payload of {len(raw) - _LENGTH.size} bytes")
    if any(raw[end:]):
        raise FramingError("nonzero padding bytes after payload")
    return raw[_LENGTH.size:end]


def _rng_from_args(args: argparse.Namespace) -> np.random.Generator:
    seed = getattr(args, "seed", None)
    if seed is None:
        return make_rng()
    if os.environ.get(TEST_BUILD_ENV) != "1":
        raise _UsageError(f"--seed is only available when {TEST_BUILD_ENV}=1")
    try:
        raw = bytes.fromhex(seed)
    except ValueError:
        raise _UsageError("--seed must be hexadecimal") from None
    if len(raw) != SEED_BYTES:
        raise _UsageError(f"--seed must be {SEED_BYTES} bytes ({2 * SEED_BYTES} hex digits)")
    return make_rng(raw)


def _print_metrics(pk, out) -> None:
    m = key_metrics(pk)
    rows = [
        ("q, t, b", f"{pk.q}, {pk.t}, {pk.b}"),
        ("k (data symbols)", m.k),
        ("n (code length)", m.n),
        ("public matrix bits", m.matrix_bits),
        ("plaintext bits per block", m.plaintext_bits),
        ("plaintext / key ratio", f"{m.plaintext_to_key_ratio:.6f}"),
        ("factor vs binary code", m.factor),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}", file=out)


def cmd_keygen(args: argparse.Namespace) -> int:
    rng = _rng_from_args(args)
    pk, sk = keygen(args.q, args.t, args.b, rng)
    codec.atomic_write(args.pub, codec.dumps_public(pk))
    codec.atomic_write(args.priv, codec.dumps_private(sk))
    _print_metrics(pk, sys.stdout)
    return EXIT_OK


def cmd_encrypt(args: argparse.Namespace) -> int:
    rng = _rng_from_args(args)
    pk = codec.load_file(args.pub, codec.read_public)
    with open(args.inp, "rb") as fh:
        data = fh.read()
    blocks = frame(data, pk.k, pk.b)
    cipher = encrypt_blocks(pk, blocks, rng)
    codec.atomic_write(args.out, codec.dumps_ciphertext(codec.CodeParams(*pk.params), cipher))
    return EXIT_OK


def cmd_decrypt(args: argparse.Namespace) -> int:
    sk = codec.load_file(args.priv, codec.read_private)
    params, cipher = codec.load_file(args.inp, codec.read_ciphertext_array)
    if tuple(params) != sk.params:
        raise codec.ParamError(f"ciphertext parameters {tuple(params)} do not match key {sk.params}")
    messages, reports = decrypt_blocks(sk, cipher)
    bad = [i for i, r in enumerate(reports) if r.ambiguous]
    if bad:
        print(f"error: {len(bad)} of {len(reports)} blocks had ambiguous votes "
              f"(first: block {bad[0]}); wrong key or corrupted ciphertext", file=sys.stderr)
        return EXIT_INTEGRITY
    plaintext = unframe(messages, sk.code.b)
    codec.atomic_write(args.out, plaintext)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    if args.trials < 1:
        raise _UsageError("--trials must be >= 1")
    result = run_bench(args.q, args.t, args.b, args.trials, make_rng())
    d = result.depth
    print(f"parameters: q={args.q} t={args.t} b={args.b} trials={args.trials}")
    for op in ("keygen", "encrypt", "decrypt"):
        print(f"{op:<8} median wall time: {result.median_ns(op) / 1e3:.1f} us")
    print(f"finite-field ops: {result.field_ops}")
    print(f"xor ops per decode: {sorted(result.xor_counts)}")
    print(f"compare ops per decode: {sorted(result.cmp_counts)}")
    print(f"depth model: syndrome={d.syndrome_depth} vote={d.vote_depth} "
          f"compare={d.compare_depth} correct={d.correct_depth} total={d.total}")
    print(f"sequential bounded-distance model: {result.sequential_steps} iterations (grows with n)")
    if args.csv:
        buf = io.StringIO()
        result.write_csv(buf)
        codec.atomic_write(args.csv, buf.getvalue().encode())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="olsc-mceliece",
        description="McEliece encryption with non-binary orthogonal Latin square codes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def code_args(p):
        p.add_argument("--q", type=int, required=True, help="prime Latin square order")
        p.add_argument("--t", type=int, required=True, help="correctable symbol errors")
        p.add_argument("--b", type=int, required=True, help="bits per symbol")

    p = sub.add_parser("keygen", help="generate a key pair")
    code_args(p)
    p.add_argument("--pub", required=True)
    p.add_argument("--priv", required=True)
    p.add_argument("--seed", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a file")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a file")
    p.add_argument("--priv", required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("bench", help="time operations and report decoder op counts")
    code_args(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_UsageError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except FramingError as exc:
        print(f"error: {exc}; wrong key or corrupted ciphertext", file=sys.stderr)
        return EXIT_INTEGRITY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
