import random

import pytest

from khrank.gf2 import BitMatrix, gf2_rank


def naive_rank(entries):
    """Row reduction over nested lists, used as an oracle."""
    m = [row[:] for row in entries]
    rank = 0
    ncols = len(m[0]) if m else 0
    col = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                m[r] = [(a + b) % 2 for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def rand_entries(rng, nrows, ncols, density=0.5):
    return [[1 if rng.random() < density else 0 for _ in range(ncols)]
            for _ in range(nrows)]


def test_rank_small_cases():
    assert gf2_rank([]) == 0
    assert gf2_rank([0, 0]) == 0
    assert gf2_rank([0b1, 0b10, 0b11]) == 2
    assert BitMatrix.identity(5).rank() == 5


def test_rank_against_naive_oracle():
    rng = random.Random(31337)
    for _ in range(100):
        nrows = rng.randint(1, 24)
        ncols = rng.randint(1, 24)
        entries = rand_entries(rng, nrows, ncols, rng.choice([0.1, 0.5, 0.9]))
        m = BitMatrix.from_entries(entries)
        assert m.rank() == naive_rank(entries)


def test_rank_invariances():
    rng = random.Random(5)
    for _ in range(50):
        entries = rand_entries(rng, rng.randint(1, 16), rng.randint(1, 16))
        m = BitMatrix.from_entries(entries)
        assert m.rank() == m.transpose().rank()
        assert m.rank() <= min(m.nrows, m.ncols)


def test_multiply_and_transpose():
    rng = random.Random(8)
    for _ in range(30):
        a = BitMatrix.from_entries(rand_entries(rng, 6, 9))
        b = BitMatrix.from_entries(rand_entries(rng, 9, 4))
        c = a * b
        for i in range(a.nrows):
            for j in range(b.ncols):
                want = sum(a.get(i, k) * b.get(k, j) for k in range(9)) % 2
                assert c.get(i, j) == want
        assert (a * b).transpose() == b.transpose() * a.transpose()
        assert (a * BitMatrix.identity(9)).rows == a.rows
        assert (a * b).rank() <= min(a.rank(), b.rank())


def test_shape_checks():
    with pytest.raises(ValueError):
        BitMatrix(2, 2, [0b100, 0])
    with pytest.raises(ValueError):
        BitMatrix(2, 2, [0])
    with pytest.raises(ValueError):
        BitMatrix.from_entries([[1, 0]]) * BitMatrix.from_entries([[1, 0]])
