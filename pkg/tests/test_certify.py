import numpy as np
import pytest

from umeb import bases, certify, construct, hsmat
from umeb.bases import BasisSet
from umeb.certify import SearchConfig, Verdict
from umeb.errors import DomainError

from conftest import random_mes_basis

FAST = SearchConfig(restarts=40, max_iterations=400)


def prefix(b, n):
    return BasisSet(b.dim_a, b.dim_b, b.members[:n], b.labels[:n])


def comp_of(b):
    return hsmat.complement(b.span())


class TestBasicChecks:
    def test_weyl4_orthonormal(self):
        r = certify.check_orthonormal(bases.weyl_ub(4))
        assert r.passed and r.max_deviation < 1e-12

    def test_repeated_member(self):
        w = bases.weyl_ub(2)
        b = BasisSet(2, 2, w.members[[0, 1, 1]], ("a", "b", "c"))
        r = certify.check_orthonormal(b)
        assert not r.passed and r.max_deviation == pytest.approx(1)

    def test_bravyi_orthonormal(self):
        assert certify.check_orthonormal(bases.bravyi33()).passed

    def test_sv1b_entangled(self):
        assert certify.check_max_entangled(bases.shift_phase_sv1b(3, 6)).passed

    def test_product_state_fails(self):
        m = np.zeros((2, 3))
        m[0, 0] = 1
        r = certify.check_max_entangled(BasisSet(2, 3, [m], ("prod",)))
        assert not r.passed and r.max_deviation == pytest.approx(1 / np.sqrt(2))

    def test_theorem1_entangled(self):
        assert certify.check_max_entangled(construct.theorem1_scale(bases.bravyi33(), 2)).passed

    def test_wide_rejected(self):
        with pytest.raises(DomainError):
            certify.check_max_entangled(BasisSet(3, 2, [np.ones((3, 2)) / np.sqrt(6)], ("x",)))


class TestStructural:
    def test_two_by_three(self):
        cert = certify.structural_certificate(comp_of(construct.theorem2_truncate(2, 3, 1)))
        assert cert is not None and cert.max_rank == 1 and cert.columns == (2,)

    def test_theorem2_case_i(self):
        cert = certify.structural_certificate(comp_of(construct.theorem2_truncate(3, 7, 2)))
        assert cert is not None and cert.max_rank == 2

    def test_bravyi_none(self):
        assert certify.structural_certificate(comp_of(bases.bravyi33())) is None


class TestNumeric:
    def test_rank_one_subspace(self):
        m = np.zeros((2, 3))
        m[1, 2] = 1
        ev = certify.numeric_unextendibility(hsmat.orthonormalize([m]), FAST)
        assert ev.best_value == 0 and ev.witness is None

    def test_empty_complement(self):
        ev = certify.numeric_unextendibility(comp_of(bases.weyl_ub(2)), FAST)
        assert isinstance(ev, certify.NotApplicable)

    @pytest.mark.parametrize("seed", range(5))
    def test_two_qubit_triples_extend(self, seed):
        mats = random_mes_basis(np.random.default_rng(seed))
        ev = certify.numeric_unextendibility(hsmat.complement(hsmat.orthonormalize(mats[:3])), FAST)
        assert ev.best_value == pytest.approx(1, abs=1e-12)
        # the witness is the fourth basis state up to a phase
        assert abs(abs(hsmat.hs_inner(ev.witness, mats[3])) - 1) < 1e-12

    def test_bravyi_complement(self):
        ev = certify.numeric_unextendibility(comp_of(bases.bravyi33()))
        assert ev.best_value < 1 - 1e-3

    def test_bravyi_complement_is_antisymmetric(self):
        # an odd-dimensional antisymmetric matrix is singular, so f vanishes identically
        comp = comp_of(bases.bravyi33())
        assert comp.dim == 3
        assert np.abs(comp.basis + np.transpose(comp.basis, (0, 2, 1))).max() < 1e-12

    @pytest.mark.parametrize("b", [bases.weyl_ub(3), bases.shift_phase_sv1b(2, 4), bases.weyl_ub(4)])
    def test_finds_hidden_member(self, b):
        # a prefix leaves the remaining members in the complement
        ev = certify.numeric_unextendibility(comp_of(prefix(b, len(b) // 2)), FAST)
        assert ev.witness is not None
        s = np.linalg.svd(ev.witness, compute_uv=False)
        assert np.abs(s - 1 / np.sqrt(b.dim_a)).max() < 1e-9

    def test_objective_range(self, rng):
        comp = comp_of(prefix(bases.weyl_ub(3), 4))
        c = rng.standard_normal((100, comp.dim)) + 1j * rng.standard_normal((100, comp.dim))
        c /= np.linalg.norm(c, axis=1, keepdims=True)
        f = certify.sigma_min_objective(comp, c)
        assert np.all(f >= 0) and np.all(f <= 1 + 1e-12)

    @pytest.mark.parametrize("d,dp,i", [(2, 3, 1), (3, 7, 2), (3, 5, 1), (4, 6, 2)])
    def test_structural_cases_agree_with_search(self, d, dp, i):
        ev = certify.numeric_unextendibility(comp_of(construct.theorem2_truncate(d, dp, i)), FAST)
        assert ev.best_value < 1e-12

    def test_monotone_on_prefixes(self):
        b = bases.bravyi33()
        vals = [certify.numeric_unextendibility(comp_of(prefix(b, k)), FAST).best_value for k in range(2, 7)]
        assert all(later <= earlier + 1e-9 for earlier, later in zip(vals, vals[1:]))
        assert vals[-1] < 1e-3 and vals[-2] == pytest.approx(1, abs=1e-9)

    def test_deterministic(self):
        comp = comp_of(prefix(bases.weyl_ub(3), 5))
        a = certify.numeric_unextendibility(comp, FAST)
        b = certify.numeric_unextendibility(comp, FAST)
        assert a.best_value == b.best_value
        np.testing.assert_array_equal(a.witness, b.witness)


class TestCertify:
    def test_two_by_three_certified(self):
        r = certify.certify(construct.theorem2_truncate(2, 3, 1), FAST)
        assert r.verdict is Verdict.CERTIFIED_UMEB
        assert r.unextendibility.max_rank == 1 and r.complement_dim == 2

    def test_bravyi_evidence(self):
        r = certify.certify(bases.bravyi33(), FAST)
        assert r.verdict is Verdict.EVIDENCE_UMEB
        assert isinstance(r.unextendibility, certify.NumericalEvidence)

    def test_complete_basis(self):
        r = certify.certify(bases.weyl_ub(3), FAST)
        assert r.verdict is Verdict.COMPLETE_BASIS
        assert isinstance(r.unextendibility, certify.NotApplicable)
        assert r.orthonormality.passed and r.entanglement.passed

    def test_failed_basic(self):
        m = np.zeros((2, 2))
        m[0, 0] = 1
        r = certify.certify(BasisSet(2, 2, [m], ("prod",)), FAST)
        assert r.verdict is Verdict.FAILED_BASIC_CHECKS

    def test_extendible_witness_valid(self):
        b = prefix(bases.shift_phase_sv1b(2, 3), 5)
        r = certify.certify(b, FAST)
        assert r.verdict is Verdict.EXTENDIBLE
        assert certify.check_max_entangled(BasisSet(2, 3, [r.witness], ("w",)), 1e-9).passed
        assert max(abs(hsmat.hs_inner(r.witness, m)) for m in b.members) < 1e-9

    def test_report_dict(self):
        d = certify.certify(construct.theorem2_truncate(2, 3, 1), FAST).to_dict()
        assert d["verdict"] == "certifiedUMEB"
        assert d["unextendibility"] == {"kind": "StructuralRankCertificate", "maxRank": 1, "columns": [2]}

    def test_seed_reproducible(self):
        b = construct.prop2_compose(3, 6, bases.bravyi33())
        assert certify.certify(b, FAST).to_dict() == certify.certify(b, FAST).to_dict()

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SearchConfig(restarts=0)
        with pytest.raises(ValueError):
            SearchConfig(evidence_margin=0)
