"""
Orthogonal Latin squares and the code built from them
=====================================================

Cyclic squares ``(a*i + j) mod q`` give q - 1 mutually orthogonal Latin
squares for prime q.  Together with the row and column partitions of a
q x q grid they define the parity checks of an orthogonal Latin square code.
"""

import numpy as np

from olsc_mceliece import are_orthogonal, build_code, cyclic_mols, is_latin

###############################################################################
# Two orthogonal squares of order 3
family = cyclic_mols(3, 2)
for square in family:
    print(square.cells, "latin:", is_latin(square))
print("orthogonal:", are_orthogonal(family[0], family[1]))

###############################################################################
# Superimposing them yields every ordered pair exactly once
pairs = sorted(zip(family[0].cells.ravel().tolist(), family[1].cells.ravel().tolist()))
print(pairs)

###############################################################################
# The check matrix H = [M | I] for q=3, t=2: 2t = 4 blocks of 3 checks over
# the 9 data positions, then a 12 x 12 identity for the parity symbols.
code = build_code(3, 2, 8)
print(f"k={code.k} r={code.r} n={code.n}")
print(code.H.dense[:, : code.k])

###############################################################################
# Every data position sits in exactly 2t checks and two positions never
# share more than one, so each symbol gets 2t independent votes.
m = code.H.dense[:, : code.k].astype(int)
overlap = m.T @ m
np.fill_diagonal(overlap, 0)
print("column weights:", set(m.sum(axis=0).tolist()), "max overlap:", overlap.max())
