"""Verification suites: worked examples with independent oracles, plus
budget behavior on non-orthonormal frames."""

import numpy as np
import pytest

from framelab.coorbit import MixedSpaceSpec
from framelab.frames import Frame, canonical_dual
from framelab.generators import (
    finite_gabor,
    gaussian_window,
    mercedes,
    onb,
    random_operator,
    substream,
)
from framelab.localisation import poly_weight
from framelab.numeric import PreconditionError
from framelab.tensor_kernels import galerkin, synthesize_kernel
from framelab.theorems import (
    compress_operator,
    compressions_to_csv,
    reports_to_csv,
    schatten_check,
    schur_characterization,
    verify_frame_independence,
    verify_inner,
    verify_outer,
    verify_projective,
)

O22 = np.array([[1.0, 2.0], [3.0, 4.0]])


def e1e1e2_pair():
    return canonical_dual(
        Frame.from_vectors(np.array([[1, 0], [1, 0], [0, 1]], dtype=complex))
    )


def gabor_pair(N=8):
    return finite_gabor(N, 2, 2, gaussian_window(N))


class TestVerifyOuter:
    def test_onb_example(self):
        pair = canonical_dual(onb(2))
        rep = verify_outer(O22, pair, pair, np.ones(2), np.ones(2))
        assert rep.lhs == pytest.approx(4.0)
        assert rep.rhs == pytest.approx(4.0)
        assert rep.ratio == pytest.approx(1.0)
        assert rep.passed

    def test_identity(self):
        pair = canonical_dual(onb(3))
        rep = verify_outer(np.eye(3), pair, pair, np.ones(3), np.ones(3))
        assert rep.lhs == rep.rhs == pytest.approx(1.0)

    def test_onb_extreme_point_oracle_with_weights(self):
        d = 5
        pair = canonical_dual(onb(d))
        w = poly_weight(pair.frame.index_set, 1.0)
        O = random_operator(d, d, seed=1)
        rep = verify_outer(O, pair, pair, w, w)
        oracle = max(
            abs(O[j, i]) / (w[i] * w[j]) for i in range(d) for j in range(d)
        )
        assert rep.lhs == pytest.approx(oracle, rel=1e-9)
        assert rep.rhs == pytest.approx(oracle, rel=1e-9)
        assert rep.passed

    def test_gabor_within_budget(self):
        pair = canonical_dual(gabor_pair())
        n = pair.frame.cardinality
        w = np.ones(n)
        for t in range(20):
            O = random_operator(8, 8, seed=100 + t)
            rep = verify_outer(O, pair, pair, w, w, seed=t)
            assert rep.passed
            assert rep.constant_budget >= 1.0


class TestVerifyInner:
    def test_onb_example(self):
        pair = canonical_dual(onb(2))
        deco, rep = verify_inner(O22, pair, pair, np.ones(2), np.ones(2))
        assert len(deco.terms) == 4
        assert deco.nuclear_sum == pytest.approx(10.0)
        assert rep.rhs == pytest.approx(10.0)
        assert rep.ratio == pytest.approx(1.0)
        assert rep.passed

    def test_zero_kernel(self):
        pair = canonical_dual(onb(2))
        deco, rep = verify_inner(np.zeros((2, 2)), pair, pair, np.ones(2), np.ones(2))
        assert deco.terms == []
        assert deco.nuclear_sum == 0.0
        assert rep.passed

    def test_rank_one_reconstruction(self):
        pair = canonical_dual(onb(3))
        rng = substream(2, "test-theorems", "rank1")
        f = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        g = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        K = np.outer(g, f.conj())
        deco, rep = verify_inner(K, pair, pair, np.ones(3), np.ones(3))
        assert rep.details["reconstruction_residual"] <= 1e-9
        l1f = np.sum(np.abs(f))
        l1g = np.sum(np.abs(g))
        assert deco.nuclear_sum <= l1f * l1g * (1 + 1e-9)

    def test_mercedes_within_budget(self):
        pair = canonical_dual(mercedes())
        O = random_operator(2, 2, seed=3)
        deco, rep = verify_inner(O, pair, pair, np.ones(3), np.ones(3))
        assert rep.passed
        assert rep.ratio >= 1.0 - 1e-9
        assert rep.ratio <= rep.constant_budget * (1 + 1e-9)


class TestVerifyProjective:
    def test_onb_equality(self):
        pair = canonical_dual(onb(2))
        rep = verify_projective(O22, pair, pair, np.ones(2), np.ones(2))
        assert rep.lhs == pytest.approx(10.0)
        assert rep.rhs == pytest.approx(10.0)
        assert rep.passed

    def test_zero(self):
        pair = canonical_dual(onb(2))
        rep = verify_projective(np.zeros((2, 2)), pair, pair, np.ones(2), np.ones(2))
        assert rep.lhs == rep.rhs == 0.0
        assert rep.passed

    def test_mercedes_sandwich(self):
        pair = canonical_dual(mercedes())
        for t in range(10):
            K = random_operator(2, 2, seed=200 + t)
            rep = verify_projective(K, pair, pair, np.ones(3), np.ones(3))
            assert rep.passed
            assert rep.lhs <= rep.rhs * (1 + 1e-12)
            assert rep.rhs <= rep.constant_budget * rep.lhs * (1 + 1e-9)


class TestSchurCharacterization:
    def test_variant_i_p2_onb(self):
        pair = canonical_dual(onb(2))
        rep = schur_characterization(
            O22, pair, pair, np.ones(2), np.ones(2), 2.0, "i"
        )
        # extreme points: column 2-norms sqrt(10), sqrt(20)
        assert rep.lhs == pytest.approx(np.sqrt(20.0))
        assert rep.rhs == pytest.approx(np.sqrt(20.0))
        assert rep.passed

    def test_variant_ii_row_sum_onb(self):
        pair = canonical_dual(onb(2))
        rep = schur_characterization(
            O22, pair, pair, np.ones(2), np.ones(2), np.inf, "ii"
        )
        assert rep.lhs == pytest.approx(7.0)  # max(1+2, 3+4)
        assert rep.rhs == pytest.approx(7.0)
        assert rep.passed

    def test_variant_ii_p1_matches_outer(self):
        pair = canonical_dual(onb(2))
        rep = schur_characterization(
            O22, pair, pair, np.ones(2), np.ones(2), 1.0, "ii"
        )
        assert rep.lhs == pytest.approx(4.0)
        assert rep.rhs == pytest.approx(4.0)
        outer = verify_outer(O22, pair, pair, np.ones(2), np.ones(2))
        assert rep.rhs == pytest.approx(outer.lhs)

    @pytest.mark.parametrize("p", [1.0, 2.0, np.inf])
    @pytest.mark.parametrize("variant", ["i", "ii"])
    def test_onb_oracle_all_exponents(self, p, variant):
        d = 4
        pair = canonical_dual(onb(d))
        w1 = poly_weight(pair.frame.index_set, 1.0)
        w2 = np.ones(d)
        O = random_operator(d, d, seed=4)
        rep = schur_characterization(O, pair, pair, w1, w2, p, variant)
        q = np.inf if p == 1.0 else (1.0 if np.isinf(p) else p / (p - 1.0))

        def pn(values, e):
            values = np.asarray(values)
            if np.isinf(e):
                return values.max()
            return float((values**e).sum() ** (1.0 / e))

        if variant == "i":
            # columns of O in the destination norm, per unit source atom
            oracle = max(
                pn(np.abs(O[:, i]) / w2, p) / w1[i] for i in range(d)
            )
        else:
            oracle = max(
                pn(np.abs(O[j, :]) / w1, q) / w2[j] for j in range(d)
            )
        assert rep.lhs == pytest.approx(oracle, rel=1e-9)
        assert rep.rhs == pytest.approx(oracle, rel=1e-9)
        assert rep.passed

    def test_gabor_within_budget(self):
        pair = canonical_dual(gabor_pair())
        n = pair.frame.cardinality
        w = np.ones(n)
        for t in range(10):
            O = random_operator(8, 8, seed=300 + t)
            for p, variant in ((1.0, "i"), (2.0, "i"), (2.0, "ii"), (np.inf, "ii")):
                rep = schur_characterization(O, pair, pair, w, w, p, variant, seed=t)
                assert rep.passed

    def test_bad_variant(self):
        pair = canonical_dual(onb(2))
        with pytest.raises(PreconditionError):
            schur_characterization(O22, pair, pair, np.ones(2), np.ones(2), 2.0, "iii")


class TestFrameIndependence:
    def test_identical_families(self):
        pair = canonical_dual(onb(3))
        spec = MixedSpaceSpec(np.inf, np.inf, 0, np.ones((3, 3)))
        O = random_operator(3, 3, seed=5)
        rep = verify_frame_independence(O, (pair, pair), (pair, pair), spec)
        assert rep.ratio == pytest.approx(1.0)
        assert rep.passed

    def test_rotated_onb(self):
        d = 4
        pair_a = canonical_dual(onb(d))
        rng = substream(6, "test-theorems", "rot")
        q, _ = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
        pair_b = canonical_dual(Frame.from_vectors(q))
        spec = MixedSpaceSpec(np.inf, np.inf, 0, np.ones((d, d)))
        for t in range(20):
            O = random_operator(d, d, seed=400 + t)
            rep = verify_frame_independence(O, (pair_a, pair_a), (pair_b, pair_b), spec)
            assert rep.passed

    def test_redundant_family_different_grid(self):
        pair_a = canonical_dual(onb(2))
        pair_b = e1e1e2_pair()
        spec = MixedSpaceSpec(1.0, 1.0, 0, np.ones((2, 2)))
        O = random_operator(2, 2, seed=7)
        rep = verify_frame_independence(O, (pair_a, pair_a), (pair_b, pair_b), spec)
        assert rep.passed
        assert rep.ratio >= 1.0 / rep.constant_budget - 1e-9
        assert rep.ratio <= rep.constant_budget + 1e-9

    def test_outer_sup_route(self):
        pair_a = canonical_dual(onb(2))
        pair_b = e1e1e2_pair()
        spec = MixedSpaceSpec(2.0, np.inf, 1, np.ones((2, 2)))
        O = random_operator(2, 2, seed=8)
        rep = verify_frame_independence(O, (pair_a, pair_a), (pair_b, pair_b), spec)
        assert rep.passed

    def test_unsupported_mixed_exponents(self):
        pair = canonical_dual(onb(2))
        spec = MixedSpaceSpec(1.0, 2.0, 0, np.ones((2, 2)))
        with pytest.raises(PreconditionError):
            verify_frame_independence(
                random_operator(2, 2, seed=9), (pair, pair), (pair, pair), spec
            )

    def test_incompatible_dimensions(self):
        pair2 = canonical_dual(onb(2))
        pair3 = canonical_dual(onb(3))
        spec = MixedSpaceSpec(1.0, 1.0, 0, np.ones((2, 2)))
        with pytest.raises(PreconditionError):
            verify_frame_independence(
                np.eye(2), (pair2, pair2), (pair3, pair3), spec
            )


class TestSchattenCheck:
    def test_diag_p1(self):
        pair = canonical_dual(onb(2))
        rep = schatten_check(np.diag([3.0, 4.0]), pair, pair, 1.0)
        assert rep.lhs == pytest.approx(7.0)
        assert rep.rhs == pytest.approx(7.0)
        assert rep.passed

    def test_diag_p2_frobenius(self):
        pair = canonical_dual(onb(2))
        rep = schatten_check(np.diag([3.0, 4.0]), pair, pair, 2.0)
        assert rep.lhs == pytest.approx(5.0)
        assert rep.rhs == pytest.approx(5.0)
        assert rep.details["frobenius"] == pytest.approx(5.0)

    def test_random_inequality(self):
        pair = canonical_dual(onb(8))
        for t in range(10):
            O = random_operator(8, 8, seed=500 + t)
            rep = schatten_check(O, pair, pair, 1.0)
            assert rep.lhs <= rep.rhs * (1 + 1e-12)
            assert rep.passed

    def test_three_way_identity_p2(self):
        pair = canonical_dual(onb(6))
        O = random_operator(6, 6, seed=10)
        rep = schatten_check(O, pair, pair, 2.0)
        assert rep.lhs == pytest.approx(rep.details["frobenius"], abs=1e-10)
        assert rep.lhs == pytest.approx(rep.details["kernel_h2p"], abs=1e-10)

    def test_general_frame_budget(self):
        pair = canonical_dual(mercedes())
        O = random_operator(2, 2, seed=11)
        rep = schatten_check(O, pair, pair, 1.5)
        assert rep.constant_budget == pytest.approx(np.sqrt(1.5))
        assert rep.passed

    def test_p_out_of_range(self):
        pair = canonical_dual(onb(2))
        with pytest.raises(PreconditionError):
            schatten_check(np.eye(2), pair, pair, 3.0)


class TestCompressOperator:
    def test_identity_onb(self):
        pair = canonical_dual(onb(4))
        k_tau, rep = compress_operator(
            np.eye(4), pair, pair, np.ones(4), np.ones(4), 0.5
        )
        assert rep.kept == 4
        assert rep.error_surrogate == 0.0
        np.testing.assert_allclose(k_tau, np.eye(4))

    def test_tau_zero_dense(self):
        pair = canonical_dual(onb(3))
        O = random_operator(3, 3, seed=12)
        _, rep = compress_operator(O, pair, pair, np.ones(3), np.ones(3), 0.0)
        assert rep.kept == rep.total == 9
        assert rep.error_surrogate == 0.0

    def test_gabor_sweep_monotone(self):
        frame = gabor_pair(8)
        pair = canonical_dual(frame)
        n = pair.frame.cardinality
        w = np.ones(n)
        # circular convolution operator: columns are shifts of a filter
        h = np.exp(-np.arange(8.0) ** 2 / 2.0)
        C = np.array([np.roll(h, s) for s in range(8)]).T
        k = galerkin(C, pair, pair)
        mags = np.sort(np.abs(k).ravel())
        taus = [float(mags[int(f * (len(mags) - 1))]) for f in (0.0, 0.3, 0.6, 0.9)]
        reports = []
        for tau in taus:
            k_tau, rep = compress_operator(C, pair, pair, w, w, tau)
            assert rep.error_surrogate <= tau
            reports.append(rep)
        sparsities = [r.sparsity for r in reports]
        assert all(a >= b for a, b in zip(sparsities, sparsities[1:]))
        assert sparsities[0] > sparsities[-1]
        errors = [r.error_surrogate for r in reports]
        assert all(a <= b + 1e-15 for a, b in zip(errors, errors[1:]))

    def test_weighted_rule(self):
        pair = canonical_dual(onb(2))
        w1 = np.array([1.0, 10.0])
        w2 = np.ones(2)
        O = np.array([[1.0, 5.0], [0.2, 1.0]])
        k_tau, rep = compress_operator(O, pair, pair, w1, w2, 0.3)
        # normalized magnitudes: |k_ij| / (w1_i w2_j); k = O^T here
        norms = np.abs(galerkin(O, pair, pair)) / np.outer(w1, w2)
        assert rep.kept == int((norms > 0.3).sum())

    def test_exact_error_detail(self):
        pair = canonical_dual(onb(3))
        O = random_operator(3, 3, seed=13)
        k_tau, rep = compress_operator(
            O, pair, pair, np.ones(3), np.ones(3), 0.2, exact_error=True
        )
        direct = np.linalg.norm(O - synthesize_kernel(k_tau, pair, pair), 2)
        assert rep.details["spectral_error"] == pytest.approx(direct)

    def test_negative_tau(self):
        pair = canonical_dual(onb(2))
        with pytest.raises(PreconditionError):
            compress_operator(np.eye(2), pair, pair, np.ones(2), np.ones(2), -1.0)


class TestCsvExport:
    def test_verification_rows(self):
        pair = canonical_dual(onb(2))
        rep = verify_outer(O22, pair, pair, np.ones(2), np.ones(2))
        text = reports_to_csv([rep])
        assert text.startswith("name,lhs,rhs,ratio,budget,pass,seed")
        assert "outer" in text

    def test_compression_rows(self):
        pair = canonical_dual(onb(2))
        _, rep = compress_operator(np.eye(2), pair, pair, np.ones(2), np.ones(2), 0.1)
        text = compressions_to_csv([rep])
        assert text.splitlines()[0] == "threshold,kept,total,sparsity,error_surrogate"
