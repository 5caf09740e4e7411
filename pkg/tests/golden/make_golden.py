"""Regenerate the golden key/ciphertext files (run from the repo root).

The keys are fixed by construction, not drawn from an RNG, so the files do
not depend on the random stream of any numpy version.
"""

from pathlib import Path

import numpy as np

from olsc_mceliece import codec
from olsc_mceliece.bitlinalg import BitMatrix, Permutation
from olsc_mceliece.mceliece import private_key_from_parts

HERE = Path(__file__).parent


def golden_private_key():
    s = BitMatrix.from_dense(np.triu(np.ones((9, 9), dtype=np.uint8)))
    p = Permutation(np.arange(15)[::-1])
    return private_key_from_parts(3, 1, 4, s, p)


def golden_ciphertext():
    return (np.arange(30, dtype=np.uint64) * 7 % 16).reshape(2, 15)


def main():
    sk = golden_private_key()
    (HERE / "pub_q3_t1_b4.bin").write_bytes(codec.dumps_public(sk.public_key()))
    (HERE / "priv_q3_t1_b4.bin").write_bytes(codec.dumps_private(sk))
    (HERE / "ct_q3_t1_b4.bin").write_bytes(codec.dumps_ciphertext(codec.CodeParams(3, 1, 4), golden_ciphertext()))


if __name__ == "__main__":
    main()
