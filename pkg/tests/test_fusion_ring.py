"""Fusion ring construction, exact axioms and FP dimensions."""

import math

import numpy as np
import pytest

from coxfusion.chebyshev import delta, evaluate
from coxfusion.fusion_ring import (
    FusionRing,
    FusionRingError,
    even_subring,
    fib_ring,
    multiply,
    verlinde_ring,
)
from coxfusion.report import all_passed, failures


def basis(ring, i):
    return ring.basis_element(i)


class TestVerlindeRing:
    def test_rank_two(self):
        ring = verlinde_ring(2)
        assert ring.rank == 2
        prod = basis(ring, 1) * basis(ring, 1)
        assert prod == basis(ring, 0)

    def test_rank_four_product(self):
        ring = verlinde_ring(4)
        prod = basis(ring, 1) * basis(ring, 2)
        assert prod == basis(ring, 1) + basis(ring, 3)

    def test_rank_three_top_square(self):
        ring = verlinde_ring(3)
        assert basis(ring, 2) * basis(ring, 2) == basis(ring, 0)

    def test_rejects_zero(self):
        with pytest.raises(FusionRingError):
            verlinde_ring(0)

    @pytest.mark.parametrize("n", range(1, 16))
    def test_axioms_exact(self, n):
        assert all_passed(verlinde_ring(n).verify_axioms())

    @pytest.mark.parametrize("n", range(1, 16))
    def test_constants_multiplicity_free(self, n):
        constants = verlinde_ring(n).constants
        assert set(np.unique(constants)) <= {0, 1}

    @pytest.mark.parametrize("n", range(2, 16))
    def test_delta1_matrix_is_path_adjacency(self, n):
        ring = verlinde_ring(n)
        path = np.zeros((n, n), dtype=np.int64)
        for i in range(n - 1):
            path[i, i + 1] = path[i + 1, i] = 1
        assert np.array_equal(ring.left_mult_matrix(1), path)


class TestFibRing:
    def test_constants(self):
        ring = fib_ring()
        assert ring.constants[1, 1, 0] == 1
        assert ring.constants[1, 1, 1] == 1

    def test_unit_law(self):
        ring = fib_ring()
        assert basis(ring, 0) * basis(ring, 1) == basis(ring, 1)

    def test_axioms(self):
        assert all_passed(fib_ring().verify_axioms())

    def test_x_squared(self):
        ring = fib_ring()
        x = basis(ring, 1)
        assert x * x == basis(ring, 0) + x


class TestEvenSubring:
    def test_rank_three(self):
        sub, embedding = even_subring(verlinde_ring(3))
        assert sub.rank == 2
        assert embedding == (0, 2)
        assert sub.basis_element(1) * sub.basis_element(1) == sub.basis_element(0)

    def test_rank_two_trivial(self):
        sub, embedding = even_subring(verlinde_ring(2))
        assert sub.rank == 1
        assert embedding == (0,)

    def test_rank_five(self):
        sub, embedding = even_subring(verlinde_ring(5))
        assert sub.rank == 3
        assert embedding == (0, 2, 4)
        square = sub.basis_element(1) * sub.basis_element(1)
        expected = sub.basis_element(0) + sub.basis_element(1) + sub.basis_element(2)
        assert square == expected

    @pytest.mark.parametrize("n", range(1, 16))
    def test_axioms_exact(self, n):
        sub, _ = even_subring(verlinde_ring(n))
        assert all_passed(sub.verify_axioms())


class TestMultiply:
    def test_unit(self):
        ring = verlinde_ring(6)
        elem = ring.element([1, 0, 2, 0, 1, 3])
        assert multiply(ring.one(), elem) == elem

    def test_linear_combination(self):
        ring = verlinde_ring(4)
        lhs = (basis(ring, 1) + basis(ring, 2)) * basis(ring, 1)
        expected = basis(ring, 0) + basis(ring, 1) + basis(ring, 2) + basis(ring, 3)
        assert lhs == expected

    def test_ring_mismatch(self):
        with pytest.raises(FusionRingError):
            multiply(verlinde_ring(3).one(), verlinde_ring(4).one())


class TestLeftMultMatrix:
    def test_unit_is_identity(self):
        ring = verlinde_ring(5)
        assert np.array_equal(ring.left_mult_matrix(0), np.eye(5, dtype=np.int64))

    def test_fib(self):
        assert fib_ring().left_mult_matrix(1).tolist() == [[0, 1], [1, 1]]

    def test_verlinde_three(self):
        expected = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
        assert verlinde_ring(3).left_mult_matrix(1).tolist() == expected

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            verlinde_ring(3).left_mult_matrix(3)


class TestFPDim:
    def test_unit(self):
        assert verlinde_ring(7).fp_dim(0) == pytest.approx(1.0, abs=1e-12)

    def test_fib_golden_ratio(self):
        phi = (1.0 + math.sqrt(5.0)) / 2.0
        assert fib_ring().fp_dim(1) == pytest.approx(phi, abs=1e-11)

    @pytest.mark.parametrize("n", range(1, 31))
    def test_matches_closed_form(self, n):
        ring = verlinde_ring(n)
        y = math.pi / (n + 1)
        for k in range(n):
            assert ring.fp_dim(k) == pytest.approx(
                math.sin((k + 1) * y) / math.sin(y), abs=1e-10
            )

    @pytest.mark.parametrize("n", range(1, 13))
    def test_matches_polynomial_evaluation(self, n):
        # Direct Horner evaluation only for small degrees, where the large
        # alternating integer coefficients do not yet dominate the rounding.
        ring = verlinde_ring(n)
        arg = 2.0 * math.cos(math.pi / (n + 1))
        for k in range(n):
            assert ring.fp_dim(k) == pytest.approx(evaluate(delta(k), arg), abs=1e-10)

    @pytest.mark.parametrize("n", range(1, 31))
    def test_multiplicative_on_basis_products(self, n):
        ring = verlinde_ring(n)
        fp = ring.fp_dims()
        outer = fp[:, None] * fp[None, :]
        via_constants = np.einsum("ijk,k->ij", ring.constants.astype(float), fp)
        assert np.max(np.abs(outer - via_constants)) < 1e-9

    def test_multiplicative_fib(self):
        fp = fib_ring().fp_dims()
        assert fp[1] * fp[1] == pytest.approx(fp[0] + fp[1], abs=1e-10)


class TestVerifyAxiomsReporting:
    def test_injected_based_defect(self):
        ring = verlinde_ring(3)
        bad = np.array(ring.constants)
        bad[1, 1, 0] = 2
        report = FusionRing(ring.labels, bad).verify_axioms()
        names = [check.name for check in failures(report)]
        assert "based condition" in names

    def test_witness_on_failure(self):
        ring = verlinde_ring(3)
        bad = np.array(ring.constants)
        bad[2, 2, 2] = 1  # breaks associativity and the anti-automorphism symmetry
        report = FusionRing(ring.labels, bad).verify_axioms()
        bad_checks = failures(report)
        assert bad_checks and all(check.witness is not None for check in bad_checks)


def test_even_part_generated_by_first_nontrivial_element():
    # Exact rational span check: every left multiplication matrix of the
    # even ring is an integer polynomial in the Delta_2 one.
    sympy = pytest.importorskip("sympy")
    for n in range(3, 16):
        sub, _ = even_subring(verlinde_ring(n))
        gen = sympy.Matrix(sub.left_mult_matrix(1).tolist())
        powers = [sympy.eye(sub.rank)]
        for _ in range(sub.rank - 1):
            powers.append(powers[-1] * gen)
        basis_vecs = sympy.Matrix([[p[r, c] for p in powers]
                                   for r in range(sub.rank) for c in range(sub.rank)])
        for k in range(sub.rank):
            target = sympy.Matrix(sub.left_mult_matrix(k).tolist())
            flat = sympy.Matrix([target[r, c] for r in range(sub.rank) for c in range(sub.rank)])
            solution = basis_vecs.solve_least_squares(sympy.Matrix(flat))
            assert sympy.simplify(basis_vecs * solution - flat).norm() == 0


def test_json_round_trip():
    ring = verlinde_ring(4)
    clone = FusionRing.from_dict(ring.to_dict())
    assert clone.labels == ring.labels
    assert np.array_equal(clone.constants, ring.constants)
    assert clone.unit == ring.unit
    assert clone.involution == ring.involution


def test_rejects_negative_constants():
    with pytest.raises(FusionRingError):
        FusionRing(("1",), [[[-1]]])
