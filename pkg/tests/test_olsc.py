import itertools

import numpy as np
import pytest

from olsc_mceliece.bitlinalg import BitMatrix, SymbolVector, make_rng, mat_mul
from olsc_mceliece.errors import DimensionMismatch, ParameterError
from olsc_mceliece.olsc import (
    build_code,
    decode,
    decode_array,
    depth_model,
    encode,
    encode_array,
    syndrome,
)

from oracles import all_codewords, error_patterns, nearest_codeword_message, scalar_syndrome

LEGAL = [(q, t) for q in (2, 3, 5, 7, 11) for t in range(1, (q + 1) // 2 + 1)]


def random_message(code, rng):
    return SymbolVector(rng.integers(0, 2**code.b - 1, code.k, dtype=np.uint64, endpoint=True), code.b)


@pytest.mark.parametrize("q,t,b,k,r,n", [(3, 1, 8, 9, 6, 15), (3, 2, 8, 9, 12, 21)])
def test_dimensions(q, t, b, k, r, n):
    code = build_code(q, t, b)
    assert (code.k, code.r, code.n) == (k, r, n)
    assert code.G.shape == (k, n) and code.H.shape == (r, n)


@pytest.mark.parametrize("q,t,b", [(3, 3, 1), (4, 1, 8), (5, 4, 8), (3, 0, 8), (3, 1, 0), (3, 1, 65)])
def test_bad_parameters(q, t, b):
    with pytest.raises(ParameterError):
        build_code(q, t, b)


@pytest.mark.parametrize("q,t", LEGAL)
def test_structure_invariants(q, t):
    code = build_code(q, t, 1)
    k, r = code.k, code.r
    g, h = code.G.dense.astype(int), code.H.dense.astype(int)
    m = h[:, :k]
    assert np.array_equal(h[:, k:], np.eye(r, dtype=int))
    assert np.array_equal(g, np.hstack([np.eye(k, dtype=int), m.T]))
    assert not ((g @ h.T) % 2).any()
    assert (m.sum(axis=0) == 2 * t).all()
    blocks = m.reshape(2 * t, q, k)
    assert (blocks.sum(axis=1) == 1).all()
    assert (blocks.sum(axis=2) == q).all()
    overlap = m.T @ m
    np.fill_diagonal(overlap, 0)
    assert overlap.max() <= 1
    for i in range(k):
        assert sorted(code.checks_of[i]) == sorted(np.flatnonzero(m[:, i]))
    assert mat_mul(code.G, code.H.T) == BitMatrix.zeros(k, r)


def test_encode_examples():
    code = build_code(3, 1, 2)
    assert encode(code, SymbolVector.zeros(9, 2)).tolist() == [0] * 15
    e0 = SymbolVector([1] + [0] * 8, 2)
    c = encode(code, e0).tolist()
    assert c[:9] == e0.tolist()
    parity = c[9:]
    assert sorted(i for i, x in enumerate(parity) if x) == [0, 3]
    assert all(x == 1 for x in parity if x)


@pytest.mark.parametrize("q,t,b", [(3, 2, 8), (5, 3, 4), (7, 4, 1)])
def test_encode_systematic_and_zero_syndrome(q, t, b):
    code = build_code(q, t, b)
    rng = make_rng(bytes(32))
    for _ in range(20):
        m = random_message(code, rng)
        c = encode(code, m)
        assert c.tolist()[: code.k] == m.tolist()
        assert syndrome(code, c).weight() == 0


@pytest.mark.parametrize("q,t,b", [(3, 2, 4), (5, 2, 8)])
def test_syndrome_matches_scalar_definition(q, t, b):
    code = build_code(q, t, b)
    rng = make_rng(bytes(32))
    h = code.H.dense.tolist()
    for _ in range(10):
        v = rng.integers(0, 2**b, code.n, dtype=np.uint64)
        assert syndrome(code, SymbolVector(v, b)).tolist() == scalar_syndrome(h, v)


def test_single_error_syndrome_hits_exactly_its_checks():
    code = build_code(5, 3, 8)
    rng = make_rng(bytes(32))
    c = encode(code, random_message(code, rng)).symbols.copy()
    for i in range(code.k):
        v = c.copy()
        v[i] ^= 0xA5
        s = syndrome(code, SymbolVector(v, 8)).symbols
        assert sorted(np.flatnonzero(s)) == sorted(code.checks_of[i])
        assert set(s[code.checks_of[i]].tolist()) == {0xA5}


def test_decode_clean_codeword():
    code = build_code(3, 2, 8)
    m = random_message(code, make_rng(bytes(32)))
    got, report = decode(code, encode(code, m))
    assert got == m
    assert (report.corrected, report.ambiguous, report.field_ops) == (0, 0, 0)


def test_exhaustive_weight_two_patterns_q3_t2_b2():
    code = build_code(3, 2, 2)
    patterns = error_patterns(code.n, 2, 2)
    assert len(patterns) == 1954
    rng = make_rng(bytes(32))
    for _ in range(5):
        m = random_message(code, rng)
        received = encode(code, m).symbols ^ patterns
        data, corrected, ambiguous, _, _ = decode_array(code, received)
        assert (data == m.symbols).all()
        assert (ambiguous == 0).all()
        assert (corrected == np.count_nonzero(patterns[:, : code.k], axis=1)).all()


@pytest.mark.parametrize("q,t", [(3, 1), (3, 2)])
@pytest.mark.parametrize("b", [1, 2])
def test_exhaustive_all_messages_small(q, t, b):
    code = build_code(q, t, b)
    patterns = error_patterns(code.n, t, b)
    msgs = np.array(list(itertools.product(range(2**b), repeat=code.k)), dtype=np.uint64)
    if len(msgs) > 64:
        msgs = msgs[make_rng(bytes(32)).choice(len(msgs), 64, replace=False)]
    codewords = encode_array(code, msgs)
    for m, c in zip(msgs, codewords):
        data, _, ambiguous, _, _ = decode_array(code, c ^ patterns)
        assert (data == m).all()
        assert (ambiguous == 0).all()


def test_binary_decode_matches_nearest_codeword():
    code = build_code(3, 2, 1)
    msgs, words = all_codewords(code.G.dense)
    patterns = error_patterns(code.n, 2, 1).astype(np.int64)
    rng = make_rng(bytes(32))
    for idx in rng.choice(len(msgs), 16, replace=False):
        received = (words[idx] ^ patterns).astype(np.uint64)
        data, _, _, _, _ = decode_array(code, received)
        for row, got in zip(received, data):
            expected = nearest_codeword_message(msgs, words, row.astype(np.int64), 2)
            assert expected is not None
            assert got.tolist() == expected.tolist()


@pytest.mark.parametrize("q,t,b", [(5, 2, 8), (5, 3, 4), (7, 3, 8), (7, 4, 2), (11, 6, 16)])
def test_random_weight_t_patterns(q, t, b):
    code = build_code(q, t, b)
    rng = make_rng(bytes(32))
    trials = 2000
    msgs = rng.integers(0, 2**b, (trials, code.k), dtype=np.uint64)
    errors = np.zeros((trials, code.n), dtype=np.uint64)
    weights = rng.integers(0, t + 1, trials)
    for row, w in zip(errors, weights):
        pos = rng.choice(code.n, w, replace=False)
        row[pos] = rng.integers(1, 2**b, w, dtype=np.uint64)
    data, _, ambiguous, _, _ = decode_array(code, encode_array(code, msgs) ^ errors)
    assert (data == msgs).all()
    assert (ambiguous == 0).all()


def test_binary_vote_rule_is_unsatisfied_check_count():
    code = build_code(5, 2, 1)
    rng = make_rng(bytes(32))
    for _ in range(200):
        v = rng.integers(0, 2, code.n, dtype=np.uint64)
        s = syndrome(code, SymbolVector(v, 1)).symbols
        got, _ = decode(code, SymbolVector(v, 1))
        flips = (s[code.checks_of].sum(axis=1) > code.t).astype(np.uint64)
        assert got.tolist() == (v[: code.k] ^ flips).tolist()


def test_overweight_errors_do_not_crash():
    code = build_code(3, 1, 4)
    m = random_message(code, make_rng(bytes(32)))
    c = encode(code, m).symbols
    patterns = error_patterns(code.n, 2, 1)[1 + code.n:]
    data, corrected, ambiguous, _, _ = decode_array(code, c ^ patterns)
    assert data.shape == (len(patterns), code.k)
    assert ambiguous.min() >= 0


def test_op_counts_are_constant():
    code = build_code(5, 3, 8)
    rng = make_rng(bytes(32))
    counts = set()
    for _ in range(200):
        v = SymbolVector(rng.integers(0, 256, code.n, dtype=np.uint64), 8)
        _, report = decode(code, v)
        counts.add((report.xor_ops, report.cmp_ops, report.field_ops))
    assert len(counts) == 1
    xor_ops, cmp_ops, field_ops = counts.pop()
    assert field_ops == 0
    assert xor_ops == code.r * code.q + code.k


def test_decode_dimension_errors():
    code = build_code(3, 1, 4)
    with pytest.raises(DimensionMismatch):
        decode(code, SymbolVector.zeros(14, 4))
    with pytest.raises(DimensionMismatch):
        decode(code, SymbolVector.zeros(15, 3))
    with pytest.raises(DimensionMismatch):
        encode(code, SymbolVector.zeros(8, 4))


def test_depth_model():
    d = depth_model(3, 2)
    assert (d.syndrome_depth, d.vote_depth) == (3, 2)
    assert d.total == 7
    assert depth_model(7, 4).syndrome_depth == 4
