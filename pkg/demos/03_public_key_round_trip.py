"""
Key generation, encryption and decryption
=========================================

``G' = S G P`` hides the code behind a random invertible scrambler and a
column permutation.  Encryption adds exactly t nonzero symbol errors;
decryption undoes the permutation, decodes, and unscrambles.
"""

import io

import numpy as np

from olsc_mceliece import SymbolVector, codec, decrypt, encrypt, key_metrics, keygen, make_rng

rng = make_rng()  # OS entropy
pk, sk = keygen(7, 4, 8, rng)
print(key_metrics(pk))

message = SymbolVector(np.frombuffer(b"orthogonal latin squares: 49 bytes fill one block", dtype=np.uint8), 8)
ciphertext = encrypt(pk, message, rng)
print("ciphertext symbols:", ciphertext.payload.length)

plaintext, report = decrypt(sk, ciphertext)
print(bytes(plaintext.tolist()))
print(report)

###############################################################################
# Keys serialize to a compact binary format.  The private file stores only
# S and the permutation; everything else is rebuilt on load.
pub_bytes = codec.dumps_public(pk)
priv_bytes = codec.dumps_private(sk)
print(len(pub_bytes), "byte public key,", len(priv_bytes), "byte private key")
restored = codec.read_private(io.BytesIO(priv_bytes))
print("restored key decrypts:", decrypt(restored, ciphertext)[0] == message)
