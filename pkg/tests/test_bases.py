import itertools

import numpy as np
import pytest
import sympy as sp

from umeb import bases, hsmat
from umeb.bases import BasisSet, Claim
from umeb.errors import DomainError


def assert_orthonormal_sv1(b, tol=1e-12):
    assert np.abs(b.gram() - np.eye(len(b))).max() < tol
    s = np.linalg.svd(b.members, compute_uv=False)
    assert np.abs(s - 1 / np.sqrt(b.dim_a)).max() < tol


class TestWeyl:
    def test_d1(self):
        w = bases.weyl_ub(1)
        assert len(w) == 1 and w.members[0, 0, 0] == 1

    def test_d2_paulis(self):
        w = bases.weyl_ub(2)
        x = np.array([[0, 1], [1, 0]])
        z = np.diag([1, -1])
        expected = [np.eye(2), x, z, z @ x]
        for got, exp in zip(w.members, expected):
            np.testing.assert_allclose(got, exp / np.sqrt(2), atol=1e-16)
        assert w.labels == ("W(0,0)", "W(0,1)", "W(1,0)", "W(1,1)")

    def test_d3_count_and_singular_values(self):
        w = bases.weyl_ub(3)
        assert len(w) == 9 and w.claim is Claim.UB
        for m in w.members:
            np.testing.assert_allclose(np.linalg.svd(m, compute_uv=False), [3**-0.5] * 3, atol=1e-15)

    @pytest.mark.parametrize("d", range(1, 9))
    def test_invariants(self, d):
        assert_orthonormal_sv1(bases.weyl_ub(d))

    def test_domain(self):
        with pytest.raises(DomainError):
            bases.weyl_ub(0)


class TestShiftPhase:
    @pytest.mark.parametrize("d,m", [(d, m) for m in range(1, 9) for d in range(1, m + 1)])
    def test_invariants(self, d, m):
        b = bases.shift_phase_sv1b(d, m)
        assert len(b) == d * m and b.claim is Claim.SV1B
        assert_orthonormal_sv1(b)

    @pytest.mark.parametrize("d", [1, 2, 3, 5])
    def test_square_equals_weyl(self, d):
        np.testing.assert_array_equal(bases.shift_phase_sv1b(d, d).members, bases.weyl_ub(d).members)

    def test_2x3_pattern(self):
        b = bases.shift_phase_sv1b(2, 3)
        r = 1 / np.sqrt(2)
        np.testing.assert_allclose(b.members[0][:, :2], [[r, 0], [0, r]])  # |phi_1>
        np.testing.assert_allclose(b.members[3][:, :2], [[r, 0], [0, -r]])  # |phi_2>
        assert len(b) == 6

    def test_3x6_gram(self):
        b = bases.shift_phase_sv1b(3, 6)
        assert len(b) == 18
        assert np.abs(b.gram() - np.eye(18)).max() < 1e-12

    def test_d_exceeds_m(self):
        with pytest.raises(DomainError):
            bases.shift_phase_sv1b(3, 2)


def _exact_bravyi():
    b = (1 + sp.sqrt(5)) / 2
    a = sp.sqrt(1 + b**2)
    e = sp.eye(3)
    vecs = []
    for i in range(3):
        for s in (1, -1):
            vecs.append((e[:, i] + s * b * e[:, (i + 1) % 3]) / a)
    return vecs


class TestBravyi:
    def test_exact_overlaps_one_fifth(self):
        vecs = _exact_bravyi()
        for j, k in itertools.combinations(range(6), 2):
            assert sp.simplify((vecs[j].T * vecs[k])[0] ** 2 - sp.Rational(1, 5)) == 0

    def test_exact_trace_vanishes(self):
        c = sp.Rational(-7, 8)
        # Tr(U_j^dag U_k) = 3 - 2(1 - cos) + |1 - e^{i t}|^2 |<psi_j|psi_k>|^2
        trace = 3 - 2 * (1 - c) + (2 - 2 * c) * sp.Rational(1, 5)
        assert sp.simplify(trace - (1 + 2 * c + (2 - 2 * c) / 5)) == 0
        assert trace == 0

    def test_numeric_overlaps(self):
        psi = bases.bravyi_vectors()
        g = np.abs(psi @ psi.T) ** 2
        off = g[~np.eye(6, dtype=bool)]
        assert np.abs(off - 0.2).max() < 1e-12

    def test_members(self):
        b = bases.bravyi33()
        assert len(b) == 6 and b.dim_a * b.dim_b == 9 and b.claim is Claim.UMEB
        assert np.abs(b.gram() - np.eye(6)).max() < 1e-12
        for m in b.members:
            u = np.sqrt(3) * m
            assert np.abs(u @ u.conj().T - np.eye(3)).max() < 1e-12

    def test_matches_state_definition(self):
        # |u_j> = (I (x) U_j)|Phi+>, read back through the state/matrix map
        phi = np.eye(3).reshape(-1) / np.sqrt(3)
        for u, m in zip(bases.bravyi_unitaries(), bases.bravyi33().members):
            state = np.kron(np.eye(3), u) @ phi
            np.testing.assert_allclose(hsmat.state_to_matrix(hsmat.StateVector(3, 3, state)), m, atol=1e-15)

    def test_phase_convention(self):
        u = bases.bravyi_unitaries()[0]
        ev = np.linalg.eigvals(u)
        special = ev[np.abs(ev - 1) > 1e-6][0]
        assert special.real == pytest.approx(-7 / 8) and special.imag > 0


class TestEmbeddings:
    def test_pad_zero(self):
        b = bases.weyl_ub(2)
        p = bases.pad_columns(b, 2)
        np.testing.assert_array_equal(p.members, b.members)
        assert p.claim is Claim.NONE

    def test_pad_two_by_three(self):
        p = bases.pad_columns(bases.shift_phase_sv1b(2, 2), 3)
        r = 1 / np.sqrt(2)
        two_by_three = [
            [[r, 0, 0], [0, r, 0]],
            [[r, 0, 0], [0, -r, 0]],
            [[0, r, 0], [r, 0, 0]],
            [[0, r, 0], [-r, 0, 0]],
        ]
        for target in two_by_three:
            assert any(np.allclose(m, target, atol=1e-15) for m in p.members)

    def test_pad_preserves_gram(self):
        b = bases.bravyi33()
        np.testing.assert_array_equal(bases.pad_columns(b, 7).gram(), b.gram())

    def test_pad_shrink(self):
        with pytest.raises(DomainError):
            bases.pad_columns(bases.weyl_ub(3), 2)

    def test_embed_identity(self):
        b = bases.bravyi33()
        np.testing.assert_array_equal(bases.embed_block(b, 0, 0, 3, 3).members, b.members)

    def test_embed_three_by_six_block(self):
        e = bases.embed_block(bases.bravyi33(), 0, 3, 3, 6)
        assert np.all(e.members[:, :, :3] == 0)
        np.testing.assert_array_equal(e.members[:, :, 3:], bases.bravyi33().members)

    def test_disjoint_blocks_jointly_orthonormal(self):
        left = bases.embed_block(bases.weyl_ub(2), 0, 0, 2, 5)
        right = bases.embed_block(bases.weyl_ub(2), 0, 3, 2, 5)
        both = bases.concat([left, right], {"name": "test"})
        assert np.abs(both.gram() - np.eye(8)).max() < 1e-15

    def test_embed_overflow(self):
        with pytest.raises(DomainError):
            bases.embed_block(bases.weyl_ub(3), 0, 2, 3, 4)


class TestBasisSetInvariants:
    def test_complete_claim_count(self):
        w = bases.weyl_ub(2)
        with pytest.raises(ValueError):
            BasisSet(2, 2, w.members[:3], w.labels[:3], claim=Claim.MEB)

    def test_unextendible_claim_count(self):
        w = bases.weyl_ub(2)
        with pytest.raises(ValueError):
            w.with_claim(Claim.UMEB)

    def test_unit_norm_required(self):
        with pytest.raises(ValueError):
            BasisSet(2, 2, [np.eye(2)], ("x",))

    def test_labels_match(self):
        with pytest.raises(ValueError):
            BasisSet(2, 2, [np.eye(2) / np.sqrt(2)], ())
