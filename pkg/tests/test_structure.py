import pytest
import sympy
from hypothesis import given, settings, strategies as st

from matalg import (
    GF,
    QQ,
    Conjugator,
    D,
    E,
    FrameCase,
    Mat,
    WitnessKind,
    canonical,
    classify_gamma_max,
    classify_omega_max,
    conjugate_algebra,
    gamma_bound_check,
    idempotent_normal_form,
    jacobson_radical,
    radical_frame,
    rank_one_factor,
    recognize_max_nonunital,
    recognize_parabolic,
    span,
    transpose_algebra,
)
from matalg.algebra import compress_by_idempotent, unit_span
from matalg.errors import (
    DimensionTooSmall,
    FrameViolation,
    NotGammaMax,
    NotIdempotent,
    NotInOmega,
    NotMaxNonunital,
    NotParabolic,
    WrongCharacteristic,
    WrongRank,
)
from matalg.linalg import block_diag, invert
from matalg.search import Rng, random_conjugator, random_idempotent, random_invertible
from matalg.structure import joint_image, joint_kernel, omega_bound_check

from oracles import sym


def corner_pair(n):
    u = canonical("ZeroPattern", n, rows={n}, cols={n})
    a = Mat.identity(n) + E(n, n - 1, n)
    return u, conjugate_algebra(u, Conjugator(invert(a), a))


def corner_conjugator(g):
    return Conjugator(block_diag(g, 1), block_diag(invert(g), 1))


class TestIdempotentNormalForm:
    def test_already_diagonal(self):
        s, r = idempotent_normal_form(D(2, 4))
        assert r == 2 and s.is_identity()

    def test_hand_example(self):
        e = Mat.from_rows([[1, 1], [0, 0]])
        s, r = idempotent_normal_form(e)
        assert r == 1 and s.g == Mat.from_rows([[1, 1], [0, -1]])
        # oracle: sympy computes S^{-1} e S directly
        S = sym(s.g)
        assert S.inv() * sym(e) * S == sympy.Matrix([[1, 0], [0, 0]])

    def test_zero(self):
        s, r = idempotent_normal_form(Mat.zeros(3))
        assert r == 0 and s.is_identity()

    def test_rejects_non_idempotent(self):
        with pytest.raises(NotIdempotent):
            idempotent_normal_form(E(1, 2, 2))

    @given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))), st.integers(0, 2**32))
    @settings(max_examples=80, deadline=None)
    def test_random_idempotents(self, nr, seed):
        n, r = nr
        e = random_idempotent(n, r, Rng(seed))
        s, rank = idempotent_normal_form(e)
        assert rank == r == sym(e).rank()
        assert s.apply(e) == D(r, n)

    def test_prime_field(self):
        F = GF(5)
        e = Mat.from_rows([[1, 1], [0, 0]], F)
        s, r = idempotent_normal_form(e)
        assert s.apply(e) == D(1, 2, F)


class TestRadical:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_full_algebra_is_semisimple(self, n):
        assert jacobson_radical(canonical("Full", n)).dim == 0

    def test_parabolic_three(self):
        assert jacobson_radical(canonical("ParabolicP", 3)) == span([E(1, 3, 3), E(2, 3, 3)])

    def test_upper_triangular(self):
        upper = unit_span([(i, j) for i in range(1, 4) for j in range(i, 4)], 3, QQ)
        strict = unit_span([(1, 2), (1, 3), (2, 3)], 3, QQ)
        assert jacobson_radical(upper) == strict

    @pytest.mark.parametrize("n", range(2, 7))
    def test_parabolic_dimension(self, n):
        j = jacobson_radical(canonical("ParabolicP", n))
        assert j.dim == n - 1
        assert j == unit_span([(i, n) for i in range(1, n)], n, QQ)

    def test_nilpotent_algebra_is_its_own_radical(self):
        a = unit_span([(1, 2), (1, 3), (2, 3)], 3, QQ)
        assert jacobson_radical(a) == a

    def test_prime_field_refused(self):
        with pytest.raises(WrongCharacteristic):
            jacobson_radical(canonical("Full", 2, GF(3)))

    @given(st.integers(0, 2**32), st.sampled_from(["ParabolicP", "W", "OmegaMaxRow"]), st.integers(3, 4))
    @settings(max_examples=30, deadline=None)
    def test_equivariance(self, seed, tag, n):
        a = canonical(tag, n)
        g = random_conjugator(n, 3, Rng(seed))
        assert jacobson_radical(conjugate_algebra(a, g)) == conjugate_algebra(jacobson_radical(a), g)


class TestRankOne:
    def test_unit(self):
        f = rank_one_factor(E(1, 3, 3))
        assert f.y == (1, 0, 0) and f.mu == (0, 0, 1)

    def test_outer_product(self):
        x = Mat.from_rows([[1, 2], [2, 4]])
        f = rank_one_factor(x)
        assert f.y == (1, 2) and f.mu == (1, 2)
        assert sym_outer(f.y, f.mu) == sym(x)

    def test_leading_entry_normalized(self):
        f = rank_one_factor(Mat.from_rows([[0, 0], [3, 6]]))
        assert f.y == (0, 1) and f.mu == (3, 6)

    def test_wrong_rank(self):
        with pytest.raises(WrongRank):
            rank_one_factor(Mat.identity(2))
        with pytest.raises(WrongRank):
            rank_one_factor(Mat.zeros(2))


def sym_outer(y, mu):
    return sympy.Matrix(len(y), 1, list(y)) * sympy.Matrix(1, len(mu), list(mu))


class TestRadicalFrame:
    def test_common_functional(self):
        case, g = radical_frame(span([E(1, 3, 3), E(2, 3, 3)]))
        assert case is FrameCase.COMMON_FUNCTIONAL and g.is_identity()

    def test_common_vector(self):
        case, g = radical_frame(span([E(3, 1, 3), E(3, 2, 3)]))
        assert case is FrameCase.COMMON_VECTOR and g.is_identity()

    def test_n2_prefers_common_functional(self):
        case, _ = radical_frame(span([E(1, 2, 2)]))
        assert case is FrameCase.COMMON_FUNCTIONAL

    @pytest.mark.parametrize("seed", range(10))
    def test_round_trip(self, seed):
        j = span([E(1, 4, 4), E(2, 4, 4), E(3, 4, 4)])
        g0 = random_conjugator(4, 3, Rng(seed))
        moved = conjugate_algebra(j, g0)
        case, g = radical_frame(moved)
        assert case is FrameCase.COMMON_FUNCTIONAL
        assert conjugate_algebra(moved, g) == j

    def test_violations(self):
        with pytest.raises(FrameViolation):
            radical_frame(span([E(1, 3, 3)]))
        with pytest.raises(FrameViolation):
            radical_frame(span([E(1, 2, 3), E(2, 3, 3)]))  # E12 E23 != 0
        with pytest.raises(FrameViolation):
            radical_frame(span([E(1, 3, 3), E(3, 2, 3)]))  # mixed pattern


class TestJointImageKernel:
    def test_w(self):
        w = canonical("W", 3)
        assert joint_image(w) == [(1, 0, 0)]
        assert joint_kernel(w) == [(0, 0, 1)]


class TestParabolic:
    def test_identity_witness(self):
        w = recognize_parabolic(canonical("ParabolicP", 4))
        assert w.kind is WitnessKind.PARABOLIC_P and w.conj.is_identity() and w.certified

    @pytest.mark.parametrize("n", range(2, 6))
    @pytest.mark.parametrize("tag", ["ParabolicP", "ParabolicPTranspose"])
    def test_round_trip(self, n, tag):
        rng = Rng(11, (n,))
        a = conjugate_algebra(canonical(tag, n), random_conjugator(n, 3, rng))
        w = recognize_parabolic(a)
        assert w.kind.value == tag if n > 2 else w.kind.value.startswith("Parabolic")
        assert w.verify(a)

    def test_p_prime_reported_as_transpose(self):
        w = recognize_parabolic(canonical("ParabolicPPrime", 4))
        assert w.kind is WitnessKind.PARABOLIC_P_TRANSPOSE and w.verify(canonical("ParabolicPPrime", 4))

    def test_rejections(self):
        with pytest.raises(NotParabolic):
            recognize_parabolic(canonical("Full", 3))
        # right dimension, wrong structure: not closed
        bogus = span(list(canonical("ParabolicP", 3).basis[:-1]) + [E(3, 1, 3)])
        assert bogus.dim == 7
        with pytest.raises(NotParabolic):
            recognize_parabolic(bogus)


class TestMaxNonunital:
    def test_row_identity(self):
        w = recognize_max_nonunital(canonical("ZeroPattern", 3, rows={3}))
        assert w.kind is WitnessKind.ROW_ALGEBRA and w.conj.is_identity()

    def test_corner_case_two(self):
        a = span([E(1, 2, 2), E(2, 2, 2)])
        w = recognize_max_nonunital(a)
        assert w.kind is WitnessKind.COLUMN_ALGEBRA and w.verify(a)

    @pytest.mark.parametrize("seed", range(5))
    def test_random_conjugate(self, seed):
        a = conjugate_algebra(canonical("ZeroPattern", 4, rows={4}), random_conjugator(4, 3, Rng(seed)))
        w = recognize_max_nonunital(a)
        assert w.kind is WitnessKind.ROW_ALGEBRA and w.verify(a)

    def test_rejections(self):
        with pytest.raises(NotMaxNonunital):
            recognize_max_nonunital(canonical("ParabolicP", 3))
        # dim 6 in M_3 but unital: M_2 corner plus E33 plus E13, E23
        unital = unit_span([(1, 1), (1, 2), (2, 1), (2, 2), (3, 3), (1, 3)], 3, QQ)
        with pytest.raises(NotMaxNonunital):
            recognize_max_nonunital(unital)


class TestGamma:
    def test_w3(self):
        w = classify_gamma_max(canonical("W", 3))
        assert w.kind is WitnessKind.GAMMA_W and w.conj.is_identity()

    def test_w_transpose(self):
        w = classify_gamma_max(canonical("WTranspose", 4))
        assert w.kind is WitnessKind.GAMMA_W_TRANSPOSE and w.verify(canonical("WTranspose", 4))

    def test_random_conjugate_n5(self):
        a = conjugate_algebra(canonical("W", 5), random_conjugator(5, 3, Rng(5)))
        w = classify_gamma_max(a)
        assert w.kind is WitnessKind.GAMMA_W and w.verify(a)

    @pytest.mark.parametrize("n", range(3, 7))
    def test_corner_pair_intersection(self, n):
        u, v = corner_pair(n)
        from matalg import subspace_intersect

        w = classify_gamma_max(subspace_intersect(u, v))
        assert w.kind is WitnessKind.GAMMA_W

    def test_small_n(self):
        with pytest.raises(DimensionTooSmall):
            classify_gamma_max(span([E(1, 1, 2)]))

    def test_planted_non_example(self):
        # nonunital, right dimension for n = 4, but not conjugate to W or W^T
        fake = unit_span([(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (1, 4)], 4, QQ)
        with pytest.raises(NotGammaMax):
            classify_gamma_max(fake)

    def test_wrong_dimension(self):
        with pytest.raises(NotGammaMax):
            classify_gamma_max(canonical("ZeroPattern", 3, rows={3}, cols={3}))


class TestGammaBound:
    def test_corner_pair_tight(self):
        rep = gamma_bound_check(*corner_pair(3))
        assert rep.is_gamma and rep.dim_n == 2 and rep.bound_ok and rep.tight
        assert rep.normalizer is not None

    def test_full_pair_not_gamma(self):
        m = canonical("Full", 3)
        rep = gamma_bound_check(m, m)
        assert not rep.is_gamma and rep.bound_ok

    def test_unital_intersection_is_not_gamma(self):
        u = conjugate_algebra(canonical("ZeroPattern", 4, rows={4}, cols={4}), random_conjugator(4, 2, Rng(3)))
        rep = gamma_bound_check(u, canonical("Full", 4))
        assert not rep.is_gamma and rep.normalizer is None

    @pytest.mark.parametrize("seed", range(4))
    def test_conjugated_pair_is_normalized(self, seed):
        g = random_conjugator(4, 3, Rng(seed))
        u, v = (conjugate_algebra(x, g) for x in corner_pair(4))
        rep = gamma_bound_check(u, v)
        assert rep.tight and rep.dim_n == 6
        corner = canonical("ZeroPattern", 4, rows={4}, cols={4})
        assert rep.conjugated[0].issubset(corner)


class TestOmega:
    def test_canonical_row(self):
        b = canonical("OmegaMaxRow", 4)
        w = classify_omega_max(b)
        assert w.kind is WitnessKind.OMEGA_MAX_ROW and w.conj.is_identity() and b.dim == 11

    def test_n3_first_kind(self):
        upper = unit_span([(i, j) for i in range(1, 4) for j in range(i, 4)], 3, QQ)
        assert classify_omega_max(upper).kind is WitnessKind.OMEGA_MAX_COLUMN

    @pytest.mark.parametrize("n", [4, 5])
    @pytest.mark.parametrize("tag", ["OmegaMaxColumn", "OmegaMaxRow"])
    def test_round_trip(self, n, tag):
        g = random_invertible(n - 1, 3, Rng(23, (n,)))
        b = conjugate_algebra(canonical(tag, n), corner_conjugator(g))
        w = classify_omega_max(b)
        assert w.kind.value == tag and w.verify(b)

    def test_preconditions(self):
        with pytest.raises(NotInOmega):
            classify_omega_max(canonical("ParabolicP", 4))
        with pytest.raises(NotInOmega):
            classify_omega_max(canonical("W", 4))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_side_claim_on_full_corner(self, n):
        # b·e = M[R_n,C_n] forces dim b <= n^2 - 2n + 2
        corner = canonical("ZeroPattern", n, rows={n}, cols={n})
        b = span(list(corner.basis) + [E(n, n, n)])
        rep = omega_bound_check(b)
        assert rep["full_corner"] and rep["in_omega"]
        assert b.dim == n * n - 2 * n + 2 and rep["side_ok"]
        assert compress_by_idempotent(b, D(n - 1, n)) == corner


def test_witness_kinds_round_trip_through_values():
    for k in WitnessKind:
        assert WitnessKind(k.value) is k


def test_transpose_swaps_row_and_column_witnesses():
    a = transpose_algebra(canonical("ZeroPattern", 3, rows={3}))
    assert recognize_max_nonunital(a).kind is WitnessKind.COLUMN_ALGEBRA
