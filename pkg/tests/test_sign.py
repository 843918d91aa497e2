"""Tests for scarpis.matrix.sign (SignMatrix, kronecker, normalize, core)."""
import numpy as np
import pytest

from scarpis.construction.paley import paley_hadamard
from scarpis.errors import MatrixError
from scarpis.field.gf import field_make
from scarpis.matrix.sign import (
    SignMatrix,
    core,
    from_signs,
    kronecker,
    normalize,
    sylvester_hadamard,
)
from scarpis.matrix.verify import check_hadamard
from tests.helpers import naive_dot, random_signs


def scramble(matrix: SignMatrix, rng: np.random.Generator) -> SignMatrix:
    """Random row/column permutations and negations (preserve Hadamard)."""
    signs = matrix.to_array()
    m = signs.shape[0]
    signs = signs[rng.permutation(m)][:, rng.permutation(m)]
    signs = signs * rng.choice([1, -1], size=(m, 1)) * rng.choice([1, -1], size=(1, m))
    return SignMatrix.from_array(signs)


class TestEntries:
    """Test suite for entry access and allocation."""

    def test_set_get_round_trip(self) -> None:
        matrix = SignMatrix(3, 70)
        matrix.set_entry(2, 69, -1)
        assert matrix.entry(2, 69) == -1
        matrix.set_entry(2, 69, 1)
        assert matrix.entry(2, 69) == 1

    def test_fill(self) -> None:
        assert SignMatrix(2, 5, fill=-1).row(1).tolist() == [-1] * 5
        assert SignMatrix(2, 5).row(0).tolist() == [1] * 5

    def test_out_of_range(self) -> None:
        matrix = SignMatrix(4, 4)
        with pytest.raises(MatrixError, match="out of range"):
            matrix.entry(4, 0)
        with pytest.raises(MatrixError, match="out of range"):
            matrix.set_entry(0, -1, 1)
        with pytest.raises(MatrixError, match="out of range"):
            matrix.dot_rows(0, 9)

    def test_bad_sign(self) -> None:
        with pytest.raises(MatrixError, match="Sign"):
            SignMatrix(2, 2).set_entry(0, 0, 0)

    def test_bad_dimensions(self) -> None:
        with pytest.raises(MatrixError):
            SignMatrix(0, 3)
        with pytest.raises(MatrixError):
            SignMatrix(4, 4, max_order=3)

    def test_from_array_rejects_zero(self) -> None:
        with pytest.raises(MatrixError, match="\\+1 or -1"):
            SignMatrix.from_array(np.array([[1, 0], [1, 1]]))

    def test_to_array(self, h2: SignMatrix) -> None:
        assert h2.to_array().tolist() == [[1, 1], [1, -1]]

    def test_set_row_bits(self, rng: np.random.Generator) -> None:
        signs = random_signs(rng, 9, 70)
        matrix = SignMatrix(9, 70, fill=-1)
        matrix.set_row_bits(0, signs[:4] == 1)
        matrix.set_row_bits(4, signs[4:] == 1)
        assert np.array_equal(matrix.to_array(), signs)
        assert matrix.dot_rows(3, 3) == 70

    def test_set_row_bits_keeps_other_rows(self) -> None:
        matrix = SignMatrix(3, 5)
        matrix.set_row_bits(1, np.zeros((1, 5), dtype=np.uint8))
        assert matrix.to_array()[:, 0].tolist() == [1, -1, 1]
        assert matrix.row_sum(0) == 5

    def test_set_row_bits_rejects_bad_block(self) -> None:
        matrix = SignMatrix(3, 5)
        with pytest.raises(MatrixError, match="5 columns"):
            matrix.set_row_bits(0, np.ones((1, 4), dtype=np.uint8))
        with pytest.raises(MatrixError, match="5 columns"):
            matrix.set_row_bits(0, np.ones(5, dtype=np.uint8))
        with pytest.raises(MatrixError, match="out of range"):
            matrix.set_row_bits(2, np.ones((2, 5), dtype=np.uint8))
        with pytest.raises(MatrixError, match="out of range"):
            matrix.set_row_bits(-1, np.ones((1, 5), dtype=np.uint8))


class TestDotRows:
    """Test suite for the packed dot product."""

    @pytest.mark.parametrize("cols", [1, 7, 63, 64, 65, 128, 130])
    def test_self_dot_is_cols(self, cols: int, rng: np.random.Generator) -> None:
        matrix = SignMatrix.from_array(random_signs(rng, 5, cols))
        for i in range(5):
            assert matrix.dot_rows(i, i) == cols

    def test_self_dot_after_negation(self) -> None:
        matrix = SignMatrix(2, 70)
        matrix.negate_row(0)
        assert matrix.dot_rows(0, 0) == 70
        assert matrix.dot_rows(0, 1) == -70

    def test_orthogonal_pair(self) -> None:
        matrix = from_signs([[1, 1, 1, 1], [1, -1, 1, -1]])
        assert matrix.dot_rows(0, 1) == 0

    def test_core_rows_of_h4(self, h4_normalized: SignMatrix) -> None:
        c = core(h4_normalized)
        assert c.dot_rows(0, 1) == -1
        assert c.dot_rows(1, 2) == -1
        assert c.dot_rows(0, 0) == 3

    def test_matches_naive_sum(self, rng: np.random.Generator) -> None:
        for _ in range(100):
            rows, cols = rng.integers(1, 33, size=2)
            signs = random_signs(rng, int(rows), int(cols))
            matrix = SignMatrix.from_array(signs)
            i, j = rng.integers(0, rows, size=2)
            assert matrix.dot_rows(int(i), int(j)) == naive_dot(signs, int(i), int(j))

    def test_later_rows_match_dot_rows(self, rng: np.random.Generator) -> None:
        matrix = SignMatrix.from_array(random_signs(rng, 9, 100))
        dots = matrix.dots_with_later_rows(3)
        assert dots.tolist() == [matrix.dot_rows(3, j) for j in range(4, 9)]
        assert matrix.dots_with_later_rows(8).size == 0

    def test_row_and_col_sums(self) -> None:
        matrix = from_signs([[1, 1, -1], [-1, -1, -1]])
        assert matrix.row_sum(0) == 1
        assert matrix.row_sum(1) == -3
        assert matrix.col_sum(0) == 0
        assert matrix.col_sum(2) == -2


class TestNegation:
    """Test suite for negate_row and negate_col."""

    def test_negate_row_is_involutive(self, rng: np.random.Generator) -> None:
        matrix = SignMatrix.from_array(random_signs(rng, 4, 90))
        original = matrix.copy()
        matrix.negate_row(2)
        assert matrix != original
        matrix.negate_row(2)
        assert matrix == original

    def test_negate_all_plus_row(self) -> None:
        matrix = SignMatrix(2, 66)
        matrix.negate_row(1)
        assert matrix.row(1).tolist() == [-1] * 66
        assert matrix.row_sum(1) == -66

    def test_negate_col(self, h4_normalized: SignMatrix) -> None:
        matrix = h4_normalized.copy()
        matrix.negate_col(0)
        assert matrix.to_array()[:, 0].tolist() == [-1, -1, -1, -1]
        matrix.negate_col(0)
        assert matrix == h4_normalized

    def test_negated(self, h2: SignMatrix) -> None:
        assert h2.negated().to_array().tolist() == [[-1, -1], [-1, 1]]
        assert h2.negated().negated() == h2


class TestKronecker:
    """Test suite for kronecker and sylvester_hadamard."""

    def test_identity(self, h2: SignMatrix) -> None:
        assert kronecker(from_signs([[1]]), h2) == h2

    def test_negation(self, h2: SignMatrix) -> None:
        assert kronecker(from_signs([[-1]]), h2) == h2.negated()

    def test_blocks(self, rng: np.random.Generator) -> None:
        x = random_signs(rng, 3, 2)
        y = random_signs(rng, 4, 5)
        result = kronecker(SignMatrix.from_array(x), SignMatrix.from_array(y))
        assert (result.rows, result.cols) == (12, 10)
        signs = result.to_array()
        for i in range(3):
            for j in range(2):
                block = signs[4 * i : 4 * i + 4, 5 * j : 5 * j + 5]
                assert np.array_equal(block, x[i, j] * y)

    def test_h2_squared_is_hadamard(self, h2: SignMatrix) -> None:
        h4 = kronecker(h2, h2)
        assert h4.rows == 4
        assert check_hadamard(h4).is_hadamard

    def test_product_of_hadamards(self, paley4: SignMatrix) -> None:
        h8 = paley_hadamard(field_make(7, 1))
        assert check_hadamard(kronecker(paley4, h8)).is_hadamard

    def test_size_bound(self, h2: SignMatrix) -> None:
        with pytest.raises(MatrixError, match="exceeds"):
            kronecker(h2, h2, max_order=3)

    @pytest.mark.parametrize("order", [1, 2, 8, 64])
    def test_sylvester(self, order: int) -> None:
        matrix = sylvester_hadamard(order)
        assert matrix.rows == order
        assert matrix.is_normalized()
        assert check_hadamard(matrix).is_hadamard

    def test_sylvester_rejects_non_power_of_two(self) -> None:
        with pytest.raises(MatrixError, match="power of two"):
            sylvester_hadamard(12)


class TestNormalize:
    """Test suite for normalize."""

    def test_normalized_input_unchanged(self, h4_normalized: SignMatrix) -> None:
        assert normalize(h4_normalized) == h4_normalized

    def test_negated_h2(self, h2: SignMatrix) -> None:
        assert normalize(h2.negated()) == h2

    def test_paley4(self, paley4: SignMatrix, h4_normalized: SignMatrix) -> None:
        assert h4_normalized.to_array().tolist() == [
            [1, 1, 1, 1],
            [1, -1, 1, -1],
            [1, -1, -1, 1],
            [1, 1, -1, -1],
        ]
        assert paley4 != h4_normalized

    def test_does_not_mutate_input(self, paley4: SignMatrix) -> None:
        before = paley4.copy()
        normalize(paley4)
        assert paley4 == before

    def test_idempotent_and_preserves_hadamard(self, rng: np.random.Generator) -> None:
        sources = [sylvester_hadamard(16), paley_hadamard(field_make(11, 1))]
        for source in sources:
            for _ in range(10):
                scrambled = scramble(source, rng)
                once = normalize(scrambled)
                assert once.is_normalized()
                assert normalize(once) == once
                assert check_hadamard(once).is_hadamard

    def test_non_square_rejected(self) -> None:
        with pytest.raises(MatrixError, match="square"):
            normalize(SignMatrix(2, 3))


class TestCore:
    """Test suite for core."""

    def test_core_of_h4(self, h4_normalized: SignMatrix) -> None:
        c = core(h4_normalized)
        assert (c.rows, c.cols) == (3, 3)
        assert c.to_array().tolist() == [[-1, 1, -1], [-1, -1, 1], [1, -1, -1]]
        assert [c.row_sum(i) for i in range(3)] == [-1, -1, -1]
        assert [c.col_sum(j) for j in range(3)] == [-1, -1, -1]

    def test_core_requires_normalized(self, paley4: SignMatrix) -> None:
        with pytest.raises(MatrixError, match="normalized"):
            core(paley4)

    @pytest.mark.parametrize("p", [7, 11, 19])
    def test_core_facts(self, p: int) -> None:
        c = core(normalize(paley_hadamard(field_make(p, 1))))
        for i in range(c.rows):
            assert c.row_sum(i) == -1
            assert c.col_sum(i) == -1
            assert c.dot_rows(i, i) == p
            assert all(d == -1 for d in c.dots_with_later_rows(i).tolist())
