"""
One-step majority-logic decoding of b-bit symbols
=================================================

The decoder computes the syndrome once, hands each data symbol the 2t
syndrome values of its checks, and corrects it by any nonzero value that
appears more than t times.  Only XORs and equality tests are involved.
"""

import numpy as np

from olsc_mceliece import SymbolVector, build_code, decode, encode, make_rng, syndrome

rng = make_rng(bytes(32))
code = build_code(5, 3, 8)          # corrects any 3 symbol errors among 55

message = SymbolVector(rng.integers(0, 256, code.k, dtype=np.uint64), 8)
codeword = encode(code, message)
print("systematic:", codeword.tolist()[: code.k] == message.tolist())

###############################################################################
# Corrupt three symbols: two data symbols and one parity symbol
noisy = codeword.symbols.copy()
noisy[[4, 17, 40]] ^= np.array([0x3C, 0x01, 0xFF], dtype=np.uint64)
received = SymbolVector(noisy, 8)

s = syndrome(code, received)
print("votes for position 4:", s.symbols[code.checks_of[4]].tolist())

decoded, report = decode(code, received)
print("recovered:", decoded == message)
print(report)

###############################################################################
# The amount of work does not depend on the received word
_, clean_report = decode(code, codeword)
print("same op counts:", (clean_report.xor_ops, clean_report.cmp_ops) == (report.xor_ops, report.cmp_ops))
