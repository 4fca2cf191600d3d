import random

from hardgi.gf2 import (BitMatrix, f2_nullspace_basis, f2_rank, incidence_matrix, row_basis,
                        span_extension)
from hardgi.graph import BipartiteBaseGraph

from conftest import random_base


def span_size(rows):
    """Size of the row span by closing under xor; independent of elimination."""
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    return len(span)


def test_fig2_incidence(fig2):
    assert incidence_matrix(fig2).to_strings() == ["111000", "011100", "000111"]


def test_empty_and_single_edge():
    m = incidence_matrix(BipartiteBaseGraph.from_neighborhoods(4, []))
    assert m.row_count == 0 and m.col_count == 4
    one = incidence_matrix(BipartiteBaseGraph.from_neighborhoods(1, [[0]]))
    assert one.to_strings() == ["1"]


def test_rank_examples(fig2):
    assert f2_rank(BitMatrix.identity(3)) == 3
    assert f2_rank(incidence_matrix(fig2)) == 3
    assert f2_rank(BitMatrix.from_strings(["101", "101"])) == 1


def test_rank_leaves_input_alone():
    m = BitMatrix.from_strings(["110", "011", "101"])
    before = m.rows
    assert f2_rank(m) == 2
    assert m.rows == before


def test_nullspace_examples(fig2):
    assert f2_nullspace_basis(BitMatrix.identity(4)) == []
    z = BitMatrix.zeros(2, 3)
    assert sorted(f2_nullspace_basis(z)) == [1, 2, 4]
    a = incidence_matrix(fig2)
    basis = f2_nullspace_basis(a)
    assert len(basis) == 3
    assert all(a.mul_vector(x) == 0 for x in basis)


def test_rank_matches_span_oracle():
    rng = random.Random(3)
    for _ in range(200):
        rows = [rng.getrandbits(7) for _ in range(rng.randint(0, 7))]
        m = BitMatrix(tuple(rows), 7)
        assert 2 ** f2_rank(m) == span_size(rows)


def test_nullspace_properties():
    rng = random.Random(4)
    for _ in range(100):
        g = random_base(rng, rng.randint(1, 6), rng.randint(1, 6), 3)
        a = incidence_matrix(g)
        basis = f2_nullspace_basis(a)
        assert len(basis) == a.col_count - f2_rank(a)
        assert all(a.mul_vector(x) == 0 for x in basis)
        assert f2_rank(BitMatrix(tuple(basis), a.col_count)) == len(basis)
        assert f2_rank(a) <= min(g.left_count, g.right_count)


def test_span_extension_completes_basis():
    rng = random.Random(5)
    for _ in range(100):
        width = rng.randint(1, 8)
        rows = [rng.getrandbits(width) for _ in range(rng.randint(0, 5))]
        extra = span_extension(rows, width)
        assert len(extra) == width - f2_rank(BitMatrix(tuple(rows), width))
        assert span_size(rows + [1 << w for w in extra]) == 2 ** width


def test_row_basis_picks_independent_rows():
    rows = [0b011, 0b011, 0b110, 0b101]
    basis = row_basis(rows)
    assert basis == [0, 2]
    assert span_size([rows[i] for i in basis]) == span_size(rows)


def test_transpose_roundtrip():
    m = BitMatrix.from_strings(["1100", "0111"])
    assert m.transpose().transpose() == m
    assert m.transpose().to_strings() == ["10", "11", "01", "01"]
