import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PAULI_X, SWAP, random_signed_osr
from src.errors import (
    DimensionMismatch,
    InvalidMetric,
    NumericalBreakdown,
    ScaleOutOfRange,
    SignPatternMismatch,
    TargetTooSmall,
)
from src.linalg import frob_norm, relative_distance
from src.equivalence import (
    EquivalentNoWitness,
    EquivalentWithWitness,
    Metric,
    NotEquivalent,
    NoWitnessReason,
    complete_to_pseudo_unitary,
    find_equivalence,
    is_left_pseudo_unitary,
    is_pseudo_unitary,
    metric_defect,
    metric_from_signs,
    metric_matrix,
    mix_osr,
    pad_osr,
    random_pseudo_unitary,
    random_unitary,
    transform_osr,
    verify_equivalence,
)
from src.mapio import gen_fixture, osr_from_document
from src.maps import ChoiMatrix, SignedOSR, choi_from_osr, osr_from_choi


def transpose_osr() -> SignedOSR:
    return osr_from_choi(ChoiMatrix(dim=2, matrix=SWAP))


class TestMetric:
    def test_signs_and_size(self):
        m = Metric(2, 1)
        assert m.size == 3
        npt.assert_array_equal(m.signs, [1, 1, -1])
        npt.assert_array_equal(metric_matrix(m), np.diag([1, 1, -1]))

    def test_from_signs(self):
        assert metric_from_signs([1, 1, -1, -1]) == Metric(2, 2)
        assert Metric.of(transpose_osr()) == Metric(3, 1)
        with pytest.raises(SignPatternMismatch):
            metric_from_signs([1, -1, 1])

    def test_rejects_empty_and_negative(self):
        with pytest.raises(InvalidMetric):
            Metric(0, 0)
        with pytest.raises(InvalidMetric):
            Metric(-1, 2)


class TestGroup:
    def test_identity_and_boost(self):
        m = Metric(1, 1)
        assert is_pseudo_unitary(np.eye(2), m)
        t = 0.8
        boost = np.array([[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]])
        assert is_pseudo_unitary(boost, m)
        # a boost is not unitary
        assert not is_pseudo_unitary(boost, Metric(2, 0))

    def test_size_mismatch(self):
        with pytest.raises(DimensionMismatch):
            metric_defect(np.eye(3), Metric(1, 1))

    @pytest.mark.parametrize("p,q", [(1, 0), (2, 1), (3, 1), (2, 2), (1, 3)])
    def test_random_samples_are_members(self, p, q):
        m = Metric(p, q)
        for seed in range(5):
            u = random_pseudo_unitary(m, seed=seed, scale=1.0)
            assert metric_defect(u, m) <= 1e-10

    def test_random_sample_is_deterministic(self):
        m = Metric(2, 1)
        npt.assert_array_equal(random_pseudo_unitary(m, seed=7), random_pseudo_unitary(m, seed=7))

    def test_scale_zero_gives_identity(self):
        npt.assert_allclose(random_pseudo_unitary(Metric(2, 2), seed=1, scale=0.0), np.eye(4))

    def test_scale_out_of_range(self):
        with pytest.raises(ScaleOutOfRange):
            random_pseudo_unitary(Metric(1, 1), scale=-0.1)
        with pytest.raises(ScaleOutOfRange):
            random_pseudo_unitary(Metric(1, 1), scale=10.0)

    def test_random_unitary(self):
        u = random_unitary(4, seed=3)
        npt.assert_allclose(u.conj().T @ u, np.eye(4), atol=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_group_closure(self, seed):
        m = Metric(2, 2)
        a = random_pseudo_unitary(m, seed=seed)
        b = random_pseudo_unitary(m, seed=seed + 100)
        assert is_pseudo_unitary(a @ b, m, tol=1e-7)
        assert is_pseudo_unitary(np.linalg.inv(a), m, tol=1e-7)

    def test_left_pseudo_unitary(self):
        isometry = np.array([[1, 0], [0, 1], [0, 0]], dtype=complex)
        assert is_left_pseudo_unitary(isometry, [1, 1], [1, 1, 1])
        assert not is_left_pseudo_unitary(isometry, [1, 1], [1, -1, 1])
        with pytest.raises(DimensionMismatch):
            is_left_pseudo_unitary(isometry, [1, 1, 1], [1, 1, 1])


class TestCompletion:
    def test_completes_single_column(self):
        w = np.array([[1], [1]], dtype=complex) / np.sqrt(2)
        completion = complete_to_pseudo_unitary(w, Metric(2, 0))
        npt.assert_array_equal(completion.column_signs, [1, 1])
        full = completion.matrix
        npt.assert_allclose(full[:, 0], w[:, 0])
        npt.assert_allclose(full.conj().T @ full, np.eye(2), atol=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_completes_indefinite_columns(self, seed):
        m = Metric(2, 2)
        u = random_pseudo_unitary(m, seed=seed)
        partial = u[:, [0, 3]]
        completion = complete_to_pseudo_unitary(partial, m)
        full = completion.matrix
        npt.assert_array_equal(completion.column_signs, [1, -1, 1, -1])
        gram = full.conj().T @ metric_matrix(m) @ full
        npt.assert_allclose(gram, np.diag(completion.column_signs), atol=1e-9)

    def test_completes_boost_column(self):
        t = 0.6
        column = np.array([[np.cosh(t)], [np.sinh(t)]], dtype=complex)
        completion = complete_to_pseudo_unitary(column, Metric(1, 1))
        npt.assert_array_equal(completion.column_signs, [1, -1])
        npt.assert_allclose(np.abs(completion.matrix[:, 1]), [np.sinh(t), np.cosh(t)], atol=1e-12)
        assert is_pseudo_unitary(completion.matrix, Metric(1, 1))

    def test_square_input_is_unchanged(self):
        m = Metric(2, 1)
        u = random_pseudo_unitary(m, seed=2)
        completion = complete_to_pseudo_unitary(u, m)
        npt.assert_array_equal(completion.matrix, u)
        npt.assert_array_equal(completion.column_signs, m.signs)

    def test_empty_partial(self):
        completion = complete_to_pseudo_unitary(np.zeros((3, 0), dtype=complex), Metric(1, 2))
        npt.assert_array_equal(completion.column_signs, [1, -1, -1])

    def test_rejects_non_orthonormal_columns(self):
        with pytest.raises(NumericalBreakdown):
            complete_to_pseudo_unitary(np.array([[2], [0]], dtype=complex), Metric(2, 0))
        with pytest.raises(DimensionMismatch):
            complete_to_pseudo_unitary(np.eye(3), Metric(2, 0))


class TestFreedom:
    @pytest.mark.parametrize("seed", range(100))
    def test_unitary_freedom_of_cp_maps(self, seed):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 4))
        n = int(rng.integers(1, 5))
        osr = random_signed_osr(seed, d, n, 0)
        mixed = transform_osr(osr, random_unitary(n, seed=seed + 1000))
        assert relative_distance(choi_from_osr(mixed).matrix, choi_from_osr(osr).matrix) <= 1e-10

    @pytest.mark.parametrize("seed", range(100))
    def test_pseudo_unitary_freedom(self, seed):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 4))
        p, q = int(rng.integers(1, 4)), int(rng.integers(1, 3))
        osr = random_signed_osr(seed, d, p, q)
        u = random_pseudo_unitary(Metric(p, q), seed=seed + 1000, scale=1.0)
        mixed = transform_osr(osr, u)
        assert relative_distance(choi_from_osr(mixed).matrix, choi_from_osr(osr).matrix) <= 1e-8

    def test_non_member_changes_the_map(self):
        osr = random_signed_osr(1, 2, 2, 0)
        mixed = transform_osr(osr, np.diag([2.0, 1.0]))
        assert relative_distance(choi_from_osr(mixed).matrix, choi_from_osr(osr).matrix) > 1e-3

    def test_transform_checks(self):
        osr = SignedOSR(dim=2, terms=((-1, np.eye(2)), (1, np.eye(2))))
        with pytest.raises(SignPatternMismatch):
            transform_osr(osr, np.eye(2))
        ordered = SignedOSR(dim=2, terms=((1, np.eye(2)), (-1, np.eye(2))))
        with pytest.raises(DimensionMismatch):
            transform_osr(ordered, np.eye(3))
        with pytest.raises(SignPatternMismatch):
            transform_osr(ordered, np.eye(2), metric=Metric(2, 0))

    def test_rectangular_mixing(self):
        osr = random_signed_osr(4, 2, 2, 0)
        isometry = np.array([[1, 0], [0, 1], [0, 0]], dtype=complex)
        rotation = random_unitary(3, seed=9)
        t = rotation @ isometry
        assert is_left_pseudo_unitary(t, osr.signs, [1, 1, 1])
        mixed = mix_osr(osr, t, [1, 1, 1])
        assert len(mixed) == 3
        assert relative_distance(choi_from_osr(mixed).matrix, choi_from_osr(osr).matrix) <= 1e-12

    def test_pad_osr(self):
        osr = transpose_osr()
        padded = pad_osr(osr, 4, 2)
        npt.assert_array_equal(padded.signs, [1, 1, 1, 1, -1, -1])
        npt.assert_allclose(choi_from_osr(padded).matrix, choi_from_osr(osr).matrix, atol=1e-15)
        assert frob_norm(padded.ops[3]) == 0
        with pytest.raises(TargetTooSmall):
            pad_osr(osr, 2, 1)


class TestFindEquivalence:
    def test_identity_versus_transpose(self):
        identity = SignedOSR.kraus([np.eye(2)])
        result = find_equivalence(identity, transpose_osr())
        assert isinstance(result.verdict, NotEquivalent)
        assert not result.equivalent
        # the two Choi matrices differ by ±1 in four entries
        assert result.verdict.choi_distance == pytest.approx(2.0, abs=1e-9)

    def test_self_equivalence(self):
        osr = transpose_osr()
        result = find_equivalence(osr, osr)
        witness = result.witness
        assert witness is not None
        assert witness.metric == Metric(3, 1)
        assert verify_equivalence(witness.source, witness.target, witness.u, witness.metric, tol=1e-8)

    def test_different_term_counts(self):
        half = np.eye(2) / np.sqrt(2)
        split = SignedOSR.kraus([half, half])
        single = SignedOSR.kraus([np.eye(2)])
        result = find_equivalence(split, single)
        witness = result.witness
        assert witness is not None
        assert witness.padded_size == 2
        npt.assert_allclose(witness.target.ops[0], np.eye(2), atol=1e-12)
        npt.assert_allclose(witness.target.ops[1], np.zeros((2, 2)))
        assert is_pseudo_unitary(witness.u, witness.metric)
        mapped = np.tensordot(witness.u, np.stack(witness.source.ops), axes=1)
        npt.assert_allclose(mapped, np.stack(witness.target.ops), atol=1e-10)

    def test_unordered_input_is_canonicalised(self):
        osr = transpose_osr()
        shuffled = SignedOSR(dim=2, terms=(osr.terms[3],) + osr.terms[:3])
        result = find_equivalence(shuffled, osr)
        witness = result.witness
        assert witness is not None
        npt.assert_array_equal(witness.source.signs, [1, 1, 1, -1])

    def test_global_phase(self):
        result = find_equivalence(SignedOSR.kraus([np.eye(2)]), SignedOSR.kraus([1j * np.eye(2)]))
        witness = result.witness
        assert witness is not None
        assert witness.metric == Metric(1, 0)
        npt.assert_allclose(witness.u, [[1j]], atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            find_equivalence(SignedOSR.kraus([np.eye(2)]), SignedOSR.kraus([np.eye(3)]))

    @pytest.mark.parametrize("tol,scale", [(1e-6, 0.5), (None, 1.0)])
    @pytest.mark.parametrize("seed", range(100))
    def test_witness_recovery(self, seed, tol, scale):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 4))
        p = int(rng.integers(1, 4))
        q = int(rng.integers(0, min(3, d * d - p + 1)))
        osr_c = random_signed_osr(seed, d, p, q)
        metric = Metric(p, q)
        u_true = random_pseudo_unitary(metric, seed=seed + 5000, scale=scale)
        osr_d = transform_osr(osr_c, u_true)

        result = find_equivalence(osr_c, osr_d, tol=tol)
        assert isinstance(result.verdict, EquivalentWithWitness), result.verdict
        witness = result.verdict
        assert metric_defect(witness.u, witness.metric) <= 1e-6
        mapped = np.tensordot(witness.u, np.stack(witness.source.ops), axes=1)
        residuals = [frob_norm(t - m) for t, m in zip(witness.target.ops, mapped)]
        assert max(residuals) <= 1e-6

    @pytest.mark.parametrize("seed", range(25))
    def test_witness_recovery_over_complete(self, seed):
        p, q = [(3, 2), (4, 1), (4, 2), (5, 1)][seed % 4]
        # more terms than the d² = 4 dimensional operator space
        osr_c = random_signed_osr(seed, 2, p, q)
        assert len(osr_c) > 4
        osr_d = transform_osr(osr_c, random_pseudo_unitary(Metric(p, q), seed=seed + 7000, scale=0.5))

        result = find_equivalence(osr_c, osr_d, tol=1e-6)
        witness = result.witness
        assert witness is not None, result.verdict
        assert witness.padded_size >= p + q
        assert verify_equivalence(witness.source, witness.target, witness.u, witness.metric, tol=1e-6)

    @pytest.mark.parametrize("seed", range(25))
    def test_cp_witness_is_unitary(self, seed):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(2, 4))
        n = int(rng.integers(1, 5))
        osr_c = random_signed_osr(seed, d, n, 0)
        osr_d = transform_osr(osr_c, random_unitary(n, seed=seed + 3000))

        witness = find_equivalence(osr_c, osr_d).witness
        assert witness is not None
        assert witness.metric.q == 0
        u = witness.u
        assert frob_norm(u.conj().T @ u - np.eye(u.shape[0])) <= 1e-8

    @pytest.mark.parametrize("name,params", [
        ("identity", {}),
        ("transpose", {"d": 3}),
        ("depolarizing", {"p": 0.5}),
        ("completely_depolarizing", {}),
        ("amplitude_damping", {"gamma": 0.3}),
        ("random_hp", {"p": 2, "q": 1, "seed": 4}),
    ])
    def test_every_fixture_is_equivalent_to_itself(self, name, params):
        osr = osr_from_document(gen_fixture(name, **params))
        witness = find_equivalence(osr, osr).witness
        assert witness is not None
        assert verify_equivalence(witness.source, witness.target, witness.u, witness.metric, tol=1e-8)

    def test_cancelling_pair_outside_the_support(self):
        padded = SignedOSR(dim=2, terms=((1, np.eye(2)), (1, PAULI_X), (-1, PAULI_X)))
        identity = SignedOSR.kraus([np.eye(2)])
        result = find_equivalence(padded, identity)
        assert result.equivalent
        assert isinstance(result.verdict, EquivalentNoWitness)
        assert result.verdict.reason is NoWitnessReason.SUPPORT_VIOLATION
        assert result.diagnostics["expansion_residual_source"] > 0.5

    def test_verify_rejects_wrong_signs(self):
        osr = transpose_osr()
        with pytest.raises(SignPatternMismatch):
            verify_equivalence(osr, osr, np.eye(4), Metric(4, 0))

    def test_verify_rejects_non_member(self):
        osr = transpose_osr()
        assert not verify_equivalence(osr, osr, 2 * np.eye(4), Metric(3, 1))


@given(seed=st.integers(0, 2**32 - 1))
@settings(deadline=None, max_examples=25)
def test_equivalence_result_shape(seed):
    osr_c = random_signed_osr(seed, 2, 2, 1)
    osr_d = random_signed_osr(seed + 1, 2, 2, 1)
    result = find_equivalence(osr_c, osr_d)
    assert isinstance(result.verdict, (NotEquivalent, EquivalentNoWitness, EquivalentWithWitness))
    assert result.diagnostics['choi_distance'] >= 0
    if isinstance(result.verdict, NotEquivalent):
        assert result.verdict.choi_distance == result.diagnostics['choi_distance']
