import cmath
import math

import numpy as np
import pytest

from pqsphere import (AssocIndex, GroupSignature, RepLabel, SpecialGroup,
                      assoc_horn, assoc_oracle, assoc_series, index_map,
                      lambda_kernel, lambda_kernel_angles, lambda_power,
                      norm_constant_a, norm_constant_integral, principal_sigma,
                      zonal_horn, zonal_oracle, zonal_q1, zonal_series,
                      zonal_special)


class TestTypes:
    def test_signature_validation(self):
        with pytest.raises(ValueError):
            GroupSignature(1, 1)
        with pytest.raises(ValueError):
            GroupSignature(3, 0)
        assert GroupSignature(4, 2).swapped == GroupSignature(2, 4)

    def test_principal_line(self):
        sig = GroupSignature(3, 2)
        assert principal_sigma(sig, 1.5) == complex(-1.5, 1.5)
        lab = RepLabel.principal(sig, 2.0)
        assert lab.sigma == complex(-1.5, 2.0) and lab.epsilon == 0

    def test_rep_label_general(self):
        assert RepLabel.general(0.5 + 2j).sigma == 0.5 + 2j
        with pytest.raises(ValueError):
            RepLabel(1.0, epsilon=2)

    def test_index_map(self):
        assert index_map(0, 0) == AssocIndex(0, 0, 0)
        assert index_map(3, 1) == AssocIndex(1, 1, 0)
        assert index_map(2, 4) == AssocIndex(0, 1, 2)
        with pytest.raises(ValueError):
            index_map(2, 1)

    def test_index_orders(self):
        idx = AssocIndex(1, 2, 0)
        assert idx.lam == 5 and idx.mu == 1
        with pytest.raises(ValueError):
            AssocIndex(2, 0, 0)


class TestKernel:
    def test_identity_boost(self):
        assert lambda_kernel(0.0, 0.3, -0.8) == 1.0

    def test_corner_value(self):
        for alpha in (0.2, 1.0):
            assert abs(lambda_kernel(alpha, 1.0, 1.0) - math.exp(-2 * alpha)) < 1e-14

    def test_two_algebraic_forms_agree(self):
        alpha, x, y = 0.7, 0.3, -0.5
        chi, phi = math.acos(x), math.acos(y)
        a = lambda_kernel(alpha, x, y)
        b = lambda_kernel_angles(alpha, phi, chi)
        assert abs(a - b) < 1e-14

    def test_domain_checked(self):
        with pytest.raises(ValueError):
            lambda_kernel(0.5, 1.2, 0.0)

    def test_power_trivials(self):
        assert lambda_power(0.4, 0.3, 0.1, 0.0) == 1.0
        assert lambda_power(0.0, 0.3, 0.1, -1.5 + 1j) == 1.0

    def test_power_quarter(self):
        # kernel equals 4 at alpha = log 2, x = 1, y = -1
        alpha = math.log(2.0)
        assert abs(lambda_kernel(alpha, 1.0, -1.0) - 4.0) < 1e-14
        assert abs(lambda_power(alpha, 1.0, -1.0, -2.0) - 0.25) < 1e-15

    def test_broadcasting(self):
        xs = np.linspace(-1, 1, 5)
        vals = lambda_kernel(0.3, xs[:, None], xs[None, :])
        assert vals.shape == (5, 5)
        assert np.all(vals > 0)


class TestZonal:
    @pytest.mark.parametrize("pq", [(2, 1), (3, 2), (4, 4), (6, 1)])
    def test_unit_at_zero_boost(self, pq):
        sig = GroupSignature(*pq)
        sv = zonal_series(sig, principal_sigma(sig, 0.7), 0.0)
        assert abs(sv.value - 1.0) < 1e-12

    @pytest.mark.parametrize("alpha", [0.0, 0.5, 1.5])
    def test_unit_at_zero_degree(self, alpha):
        # the shared truncation rule bounds single terms, not the geometric
        # tail, so accuracy is a small multiple of tol; 1e-10 is the
        # acceptance tolerance for this family
        sig = GroupSignature(4, 3)
        assert abs(zonal_series(sig, 0.0, alpha).value - 1.0) < 1e-10

    def test_q1_closed_form(self):
        sig = GroupSignature(4, 1)
        got = zonal_series(sig, -1.5, 0.5).value
        want = zonal_q1(4, -1.5, 0.5)
        assert abs(got - want) <= 1e-10 * abs(want)

    def test_complex_sigma_vs_oracle(self):
        sig = GroupSignature(3, 2)
        sigma = -1.5 + 2j
        got = zonal_series(sig, sigma, 0.6).value
        want = zonal_oracle(sig, sigma, 0.6)
        assert abs(got - want) <= 1e-9 * abs(want)

    def test_conjugation_symmetry(self):
        sig = GroupSignature(4, 2)
        sigma = principal_sigma(sig, 1.3)
        a = zonal_series(sig, sigma, 0.8).value
        b = zonal_series(sig, sigma.conjugate(), 0.8).value
        assert abs(a - b.conjugate()) <= 1e-12 * abs(a)

    def test_negative_boost_rejected(self):
        with pytest.raises(ValueError):
            zonal_series(GroupSignature(3, 2), -1.0, -0.1)


class TestZonalHorn:
    def test_unit_at_zero_boost(self):
        sig = GroupSignature(5, 3)
        assert abs(zonal_horn(sig, principal_sigma(sig, 0.4), 0.0).value - 1.0) < 1e-12

    def test_paired_form_symmetry(self):
        sig = GroupSignature(4, 3)
        a = zonal_horn(sig, -2.5, 0.4).value
        b = zonal_horn(sig.swapped, -2.5, 0.4).value
        assert abs(a - b) <= 1e-10 * abs(a)

    def test_matches_series(self):
        sig = GroupSignature(3, 2)
        a = zonal_horn(sig, -1.5, 0.3).value
        b = zonal_series(sig, -1.5, 0.3).value
        assert abs(a - b) <= 1e-11 * abs(b)

    def test_symmetric_form_matches_series(self):
        sig = GroupSignature(4, 2)
        sigma = principal_sigma(sig, 1.0)
        a = zonal_horn(sig, sigma, 0.6, symmetric=True).value
        b = zonal_series(sig, sigma, 0.6).value
        assert abs(a - b) <= 1e-11 * abs(b)

    def test_q1_signature_supported(self):
        sig = GroupSignature(2, 1)
        sigma = principal_sigma(sig, 1.0)
        a = zonal_horn(sig, sigma, 0.5).value
        b = zonal_series(sig, sigma, 0.5).value
        assert abs(a - b) <= 1e-11 * abs(b)


class TestZonalSpecial:
    def test_trivials(self):
        assert abs(zonal_special(SpecialGroup.SO41, -1.7, 0.0).value - 1.0) < 1e-13
        assert abs(zonal_special(SpecialGroup.SO32, 0.0, 0.9).value - 1.0) < 1e-12

    @pytest.mark.parametrize("group,pq", [(SpecialGroup.SO41, (4, 1)),
                                          (SpecialGroup.SO32, (3, 2)),
                                          (SpecialGroup.SO42, (4, 2))])
    def test_matches_general_series(self, group, pq):
        sig = GroupSignature(*pq)
        for sigma in (-2.0 - 1j, principal_sigma(sig, 0.5)):
            for alpha in (0.25, 0.5):
                a = zonal_special(group, sigma, alpha).value
                b = zonal_series(sig, sigma, alpha).value
                assert abs(a - b) <= 1e-10 * abs(b)

    def test_accepts_plain_string(self):
        v = zonal_special("so42", -2 - 1j, 0.5).value
        w = zonal_series(GroupSignature(4, 2), -2 - 1j, 0.5).value
        assert abs(v - w) <= 1e-10 * abs(w)


class TestAssociated:
    def test_zonal_reduction(self):
        for pq in ((3, 3), (3, 2), (2, 2)):
            sig = GroupSignature(*pq)
            sigma = principal_sigma(sig, 0.8)
            a = assoc_series(sig, sigma, AssocIndex(0, 0, 0), 0.5).value
            b = zonal_series(sig, sigma, 0.5).value
            assert abs(a - b) <= 1e-12 * abs(b)

    def test_vanishes_at_identity(self):
        sig = GroupSignature(3, 2)
        sigma = principal_sigma(sig, 0.5)
        for idx in (AssocIndex(0, 1, 0), AssocIndex(1, 0, 0), AssocIndex(0, 1, 2)):
            assert abs(assoc_series(sig, sigma, idx, 0.0).value) < 1e-14

    def test_against_oracle(self):
        sig = GroupSignature(3, 2)
        sigma = -1.5
        idx = AssocIndex(0, 0, 1)
        got = assoc_series(sig, sigma, idx, 0.4).value
        want = assoc_oracle(sig, sigma, idx.lam, idx.mu, 0.4)
        assert abs(got - want) <= 1e-9 * max(abs(want), 1e-3)

    def test_swap_symmetry(self):
        for pq in ((3, 2), (4, 3), (2, 2)):
            sig = GroupSignature(*pq)
            sigma = principal_sigma(sig, 1.0)
            for idx in (AssocIndex(0, 1, 0), AssocIndex(1, 0, 1), AssocIndex(0, 2, 1)):
                a = assoc_series(sig, sigma, idx, 0.35).value
                b = assoc_series(sig.swapped, sigma,
                                 AssocIndex(idx.nu, idx.s, idx.r), 0.35).value
                assert abs(a - b) <= 1e-10 * max(abs(a), 1e-6)

    def test_horn_route_matches_series(self):
        for pq, idx in (((3, 3), AssocIndex(0, 0, 1)),
                        ((4, 2), AssocIndex(1, 0, 1)),
                        ((2, 2), AssocIndex(0, 1, 2)),
                        ((3, 2), AssocIndex(0, 2, 0))):   # s < r goes via the swap
            sig = GroupSignature(*pq)
            sigma = principal_sigma(sig, 0.8)
            a = assoc_horn(sig, sigma, idx, 0.45).value
            b = assoc_series(sig, sigma, idx, 0.45).value
            assert abs(a - b) <= 1e-10 * max(abs(b), 1e-8)

    def test_q1_rejected(self):
        with pytest.raises(ValueError):
            assoc_series(GroupSignature(3, 1), -1.0, AssocIndex(0, 0, 0), 0.3)


class TestNormConstants:
    def test_fourier_variant_value(self):
        # p = 3, mu = m = 0: the basis function is e^{i lam phi}/sqrt(4 pi),
        # so the constant is 1/(2 sqrt(pi))
        got = norm_constant_a(GroupSignature(3, 2), 0, 0, 0, 0)
        assert abs(got - 1.0 / (2.0 * math.sqrt(math.pi))) < 1e-14

    def test_gegenbauer_variant_value(self):
        # p = q = 3, all indices zero: constant 1/2 normalizes the flat basis
        got = norm_constant_a(GroupSignature(3, 3), 0, 0, 0, 0)
        assert abs(got - 0.5) < 1e-14

    def test_fourier_fourier_variant(self):
        assert abs(norm_constant_a(GroupSignature(2, 2), 0, 0, 0, 0)
                   - 1.0 / (2.0 * math.pi)) < 1e-15

    def test_ordering_validated(self):
        with pytest.raises(ValueError):
            norm_constant_a(GroupSignature(3, 3), 1, 2, 0, 0)

    def test_positive_on_a_grid(self):
        sig = GroupSignature(5, 4)
        for lam in range(4):
            for l in range(lam + 1):
                for mu in range(4):
                    for m in range(mu + 1):
                        assert norm_constant_a(sig, lam, l, mu, m) > 0

    def test_integral_constant_values(self):
        assert abs(norm_constant_integral(GroupSignature(3, 3), 1, 1) - 0.75) < 1e-13
        assert abs(norm_constant_integral(GroupSignature(3, 3), 0, 0) - 0.25) < 1e-13
        assert abs(norm_constant_integral(GroupSignature(3, 2), 0, 0)
                   - 1.0 / (4.0 * math.pi)) < 1e-15
        assert abs(norm_constant_integral(GroupSignature(2, 2), 3, 1)
                   - 1.0 / (4.0 * math.pi ** 2)) < 1e-18

    def test_integral_constant_mirrored(self):
        a = norm_constant_integral(GroupSignature(2, 4), 2, 0)
        b = norm_constant_integral(GroupSignature(4, 2), 0, 2)
        assert a == b


class TestSigmaReflection:
    def test_reflection_observed(self):
        # Z at sigma and at 2-p-q-sigma agree numerically; recorded as an
        # observation (equivalent representations), not a contractual claim.
        sig = GroupSignature(3, 2)
        sigma = -1.2 + 0.8j
        refl = 2 - sig.p - sig.q - sigma
        a = zonal_series(sig, sigma, 0.6).value
        b = zonal_series(sig, refl, 0.6).value
        assert abs(a - b) <= 1e-10 * abs(a)
