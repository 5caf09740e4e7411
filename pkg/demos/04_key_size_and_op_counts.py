"""
Key size and decoder cost across parameter sets
===============================================

A k x n public matrix carries k*b plaintext bits per block, b times what a
binary code with the same matrix carries.  The decoder performs no
finite-field multiplications, and its XOR/compare counts and critical-path
depth depend only on (q, t).
"""

from olsc_mceliece import build_code, depth_model, key_metrics, keygen, make_rng
from olsc_mceliece.bench import run_bench

rng = make_rng()
print(f"{'q':>3} {'t':>3} {'b':>3} {'matrix bits':>12} {'pt bits':>8} {'factor':>7}")
for q, t in [(3, 2), (5, 3), (7, 4), (11, 6)]:
    for b in (1, 8, 32):
        m = key_metrics(keygen(q, t, b, rng)[0])
        print(f"{q:>3} {t:>3} {b:>3} {m.matrix_bits:>12} {m.plaintext_bits:>8} {m.factor:>7}")

###############################################################################
# Decoder work per block.  Depth stays small while the length n grows.
print()
print(f"{'q':>3} {'t':>3} {'n':>5} {'xor':>6} {'cmp':>6} {'depth':>6} {'ff ops':>7}")
for q, t in [(3, 2), (5, 3), (7, 4), (11, 6)]:
    result = run_bench(q, t, 8, 3, rng)
    row = result.decrypt_rows()[0]
    n = build_code(q, t, 8).n
    print(f"{q:>3} {t:>3} {n:>5} {row.xor_ops:>6} {row.cmp_ops:>6} {depth_model(q, t).total:>6} {row.ff_ops:>7}")
