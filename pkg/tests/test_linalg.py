import random
from fractions import Fraction

import pytest
import sympy

from bcdof.core import AntennaConfig
from bcdof.linalg import (
    DEFAULT_ENTRY_BOUND, LiftedChannel, Matrix, block_diag, float_rank,
    hstack, lift_channels, nullspace_basis, rank, sample_generic, solve_square,
    spawn_seed, vstack,
)


def sympy_rank(m: Matrix) -> int:
    """Independent oracle: sympy's exact rank over the rationals."""
    if m.cols == 0 or m.rows == 0:
        return 0
    return sympy.Matrix([[sympy.Rational(x) for x in m.row(i)]
                         for i in range(m.rows)]).rank()


class TestRank:
    def test_identity(self):
        assert rank(Matrix.identity(3)) == 3

    def test_proportional_rows(self):
        assert rank(Matrix([[1, 2, 3], [2, 4, 6]])) == 1

    def test_zero_and_empty(self):
        assert rank(Matrix.zeros(2, 3)) == 0
        assert rank(Matrix.empty(4)) == 0

    def test_generic_full_rank_over_seeds(self):
        for seed in range(100):
            assert rank(sample_generic(4, 6, seed)) == 4

    def test_fractional_entries(self):
        m = Matrix([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), Fraction(1)]])
        assert rank(m) == sympy_rank(m)

    def test_structured_sparse_regression(self):
        # rows 4 and 5 are combinations of rows 0..3 through a sparse pattern
        # that exercises zero multipliers inside the elimination
        m = Matrix([
            [2, 3, 0, 0], [5, 7, 0, 0],
            [0, 0, 11, 13], [0, 0, 17, 19],
            [8, 12, 99, 117],
            [12, 18, 34, 38],
        ])
        assert rank(m) == 4
        assert sympy_rank(m) == 4

    def test_against_sympy_oracle_random(self):
        rng = random.Random(2024)
        for _ in range(60):
            r, c = rng.randint(1, 6), rng.randint(1, 6)
            target = rng.randint(0, min(r, c))
            left = sample_generic(r, target, rng, bound=50)
            right = sample_generic(target, c, rng, bound=50)
            m = left @ right if target else Matrix.zeros(r, c)
            assert rank(m) == sympy_rank(m) == target

    def test_product_rank_bound(self):
        rng = random.Random(5)
        for _ in range(40):
            a = sample_generic(rng.randint(1, 5), rng.randint(1, 5), rng, bound=99)
            b = sample_generic(a.cols, rng.randint(1, 5), rng, bound=99)
            assert rank(a @ b) <= min(rank(a), rank(b))

    def test_block_diag_rank_is_sum(self):
        rng = random.Random(6)
        for _ in range(20):
            blocks = [sample_generic(rng.randint(1, 3), rng.randint(1, 3), rng)
                      for _ in range(rng.randint(1, 4))]
            assert rank(block_diag(blocks)) == sum(rank(b) for b in blocks)

    def test_generic_image_keeps_column_count(self):
        # rank(H V) = k for generic H (n x m), V (m x k), k <= min(m, n)
        rng = random.Random(7)
        for _ in range(1000):
            m = rng.randint(1, 4)
            n = rng.randint(1, 4)
            k = rng.randint(1, min(m, n))
            h = sample_generic(n, m, rng, bound=10**6)
            v = sample_generic(m, k, rng, bound=10**6)
            assert rank(h @ v) == k


class TestNullspace:
    def test_identity_trivial_kernel(self):
        assert nullspace_basis(Matrix.identity(4)).cols == 0

    def test_generic_wide(self):
        m = sample_generic(2, 5, 11)
        basis = nullspace_basis(m)
        assert basis.cols == 3
        assert (m @ basis).is_zero()

    def test_zero_matrix_full_kernel(self):
        basis = nullspace_basis(Matrix.zeros(2, 3))
        assert basis.cols == 3
        assert rank(basis) == 3

    def test_dimension_theorem(self):
        rng = random.Random(8)
        for _ in range(50):
            m = sample_generic(rng.randint(1, 5), rng.randint(1, 5), rng, bound=30)
            assert rank(m) + nullspace_basis(m).cols == m.cols

    def test_multiply_back_always_zero(self):
        rng = random.Random(9)
        for _ in range(50):
            r, c = rng.randint(1, 4), rng.randint(1, 6)
            m = sample_generic(r, c, rng, bound=20)
            assert (m @ nullspace_basis(m)).is_zero()


class TestSampling:
    def test_same_seed_identical(self):
        assert sample_generic(3, 5, 42) == sample_generic(3, 5, 42)

    def test_requested_shape_and_bound(self):
        m = sample_generic(3, 5, 1)
        assert m.shape == (3, 5)
        assert all(abs(m[i, j]) <= DEFAULT_ENTRY_BOUND
                   for i in range(3) for j in range(5))
        assert rank(m) == 3

    def test_distinct_seeds_stack_to_full_rank(self):
        # independence across slots: two draws stacked keep maximal rank
        for s in range(50):
            a = sample_generic(2, 4, spawn_seed(s, "a"))
            b = sample_generic(2, 4, spawn_seed(s, "b"))
            assert rank(vstack(a, b)) == 4

    def test_spawn_seed_stable_and_distinct(self):
        assert spawn_seed(7, "H", 1, 0) == spawn_seed(7, "H", 1, 0)
        assert spawn_seed(7, "H", 1, 0) != spawn_seed(7, "H", 2, 0)
        assert 0 <= spawn_seed(123, "x") < 2**64


class TestLiftedChannels:
    def test_shapes_small(self):
        h1, h2 = lift_channels(AntennaConfig(2, 2, 1), 1, 0)
        assert h1.block_diag.shape == (2, 2)
        assert h2.block_diag.shape == (1, 2)

    def test_shapes_multi_slot(self):
        h1, h2 = lift_channels(AntennaConfig(5, 4, 2), 3, 0)
        assert h1.block_diag.shape == (12, 15)
        assert h2.block_diag.shape == (6, 15)

    def test_block_structure_zeros(self):
        h1, _ = lift_channels(AntennaConfig(3, 2, 1), 3, 5)
        bd = h1.block_diag
        for i in range(bd.rows):
            for j in range(bd.cols):
                if i // 2 != j // 3:
                    assert bd[i, j] == 0

    def test_determinism_and_slot_independence(self):
        h1a, _ = lift_channels(AntennaConfig(3, 2, 2), 2, 9)
        h1b, _ = lift_channels(AntennaConfig(3, 2, 2), 2, 9)
        assert h1a.block_diag == h1b.block_diag
        assert h1a.slot(0) != h1a.slot(1)

    def test_zeroed_slots(self):
        h1, _ = lift_channels(AntennaConfig(3, 2, 1), 3, 5)
        z = h1.with_zeroed_slots([2])
        assert z.slot(2).is_zero() and z.slot(0) == h1.slot(0)


class TestSolveSquare:
    def test_unique_solution(self):
        a = Matrix([[2, 1], [1, 3]])
        x = solve_square(a, [5, 10])
        assert x == (Fraction(1), Fraction(3))

    def test_singular_returns_none(self):
        assert solve_square(Matrix([[1, 2], [2, 4]]), [1, 1]) is None


class TestFloatRank:
    def test_identity(self):
        assert float_rank(Matrix.identity(5)) == 5

    def test_agreement_with_exact_on_generic_samples(self):
        rng = random.Random(77)
        agree = 0
        for _ in range(1000):
            r, c = rng.randint(1, 6), rng.randint(1, 6)
            m = sample_generic(r, c, rng)
            agree += float_rank(m) == rank(m)
        assert agree == 1000

    def test_tolerance_cliff_documented(self):
        # a row scaled by 1e-30 is full rank exactly but drops under the
        # default floating policy
        m = sample_generic(4, 4, 3)
        assert rank(m) == 4
        rows = m.to_float()
        rows[2] = [x * 1e-30 for x in rows[2]]
        assert float_rank(rows) == 3


class TestMatrixOps:
    def test_hstack_vstack_empty(self):
        a = sample_generic(3, 2, 0)
        e = Matrix.empty(3)
        assert hstack(a, e).shape == (3, 2)
        assert hstack(e, e).cols == 0

    def test_matmul_with_fraction(self):
        a = Matrix([[Fraction(1, 2), 0], [0, 1]])
        b = Matrix([[4, 2], [1, 1]])
        assert (a @ b).to_lists() == [[2, 1], [1, 1]]

    def test_from_columns_roundtrip(self):
        m = sample_generic(4, 3, 12)
        assert Matrix.from_columns(m.columns(), 4) == m

    def test_entries_normalized_to_int(self):
        m = Matrix([[Fraction(4, 2)]])
        assert isinstance(m[0, 0], int) and m[0, 0] == 2
