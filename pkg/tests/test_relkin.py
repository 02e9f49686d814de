import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relbell import (
    FourMomentum,
    LorentzBoost,
    PacketSpec,
    Rapidity,
    apply_boost,
    decoherence_factor,
    gaussian_amplitude,
    integrate_2d,
    rapidity_from_velocity,
    spinor_coefficients,
    wigner_matrix,
)
from _support import random_onshell


class TestRapidity:
    def test_sign_convention(self):
        # receding detector (v > 0) carries negative rapidity
        assert rapidity_from_velocity(0.5).alpha == pytest.approx(
            -0.5493061443340548, abs=1e-15
        )
        assert rapidity_from_velocity(0.0).alpha == 0.0
        assert rapidity_from_velocity(-0.5).alpha > 0.0

    def test_rejects_superluminal(self):
        for v in (1.0, -1.0, 1.5, math.inf):
            with pytest.raises(ValueError):
                rapidity_from_velocity(v)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(-7.0, 7.0))
    def test_velocity_round_trip(self, alpha):
        # atanh amplifies an ulp of v by e^(2|alpha|); stay where that is small
        v = Rapidity(alpha).velocity()
        assert abs(v) < 1.0
        assert rapidity_from_velocity(v).alpha == pytest.approx(
            alpha, rel=1e-9, abs=1e-9
        )


class TestFourMomentum:
    def test_from_spatial_is_onshell(self):
        p = FourMomentum.from_spatial(3.0, 4.0, 12.0)
        assert p.q0 == pytest.approx(math.sqrt(1.0 + 9.0 + 16.0 + 144.0), rel=1e-15)

    def test_rest(self):
        p = FourMomentum.rest()
        assert (p.q0, p.qx, p.qy, p.qz) == (1.0, 0.0, 0.0, 0.0)

    def test_offshell_rejected(self):
        with pytest.raises(ValueError):
            FourMomentum(1.0, 1.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            FourMomentum(-math.sqrt(2.0), 1.0, 0.0, 0.0)


class TestBoost:
    def test_matches_matrix_oracle(self, rng):
        for p in random_onshell(rng, 50):
            a = float(rng.uniform(-5.0, 5.0))
            ca, sa = math.cosh(a), math.sinh(a)
            mat = np.array(
                [[ca, sa, 0, 0], [sa, ca, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
            )
            want = mat @ np.array([p.q0, p.qx, p.qy, p.qz])
            got = apply_boost(LorentzBoost(a), p)
            np.testing.assert_allclose(
                [got.q0, got.qx, got.qy, got.qz], want, rtol=1e-12, atol=1e-12
            )

    def test_inverse_round_trip(self, rng):
        b = LorentzBoost(1.7)
        for p in random_onshell(rng, 20):
            q = apply_boost(b.inverse(), apply_boost(b, p))
            assert q.q0 == pytest.approx(p.q0, rel=1e-12)
            assert q.qx == pytest.approx(p.qx, rel=1e-12, abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(
        a=st.floats(-8.0, 8.0),
        b=st.floats(-8.0, 8.0),
        qx=st.floats(-50.0, 50.0),
        qy=st.floats(-50.0, 50.0),
        qz=st.floats(-50.0, 50.0),
    )
    def test_composition_and_mass_shell(self, a, b, qx, qy, qz):
        p = FourMomentum.from_spatial(qx, qy, qz)
        once = apply_boost(LorentzBoost(a + b), p)
        twice = apply_boost(LorentzBoost(a), apply_boost(LorentzBoost(b), p))
        # counter-aligned boosts cancel up to e^(2|a|) relative amplification
        assert once.q0 == pytest.approx(twice.q0, rel=1e-8)
        assert once.qx == pytest.approx(twice.qx, rel=1e-8, abs=1e-8)
        mass2 = once.q0**2 - once.qx**2 - once.qy**2 - once.qz**2
        assert mass2 == pytest.approx(1.0, abs=max(1e-10, once.q0**2 * 1e-13))


class TestWignerMatrix:
    def test_identity_at_zero_rapidity_exact(self, rng):
        for p in random_onshell(rng, 10):
            d = wigner_matrix(0.0, p).entries
            assert np.array_equal(d, np.eye(2, dtype=complex))

    def test_rest_frame_trivial(self):
        p = FourMomentum.rest()
        for a in np.linspace(-20.0, 20.0, 11):
            d = wigner_matrix(float(a), p).entries
            assert np.max(np.abs(d - np.eye(2))) <= 1e-12

    def test_high_precision_oracle(self):
        # entries recomputed at 50 digits for alpha=1, spatial (sqrt3, 1, 1)
        p = FourMomentum.from_spatial(math.sqrt(3.0), 1.0, 1.0)
        d = wigner_matrix(1.0, p).entries
        assert d[0, 0] == pytest.approx(
            0.9883821264080411 + 0.10747272257907839j, abs=1e-14
        )
        assert d[0, 1] == pytest.approx(-0.10747272257907839, abs=1e-14)
        assert d[1, 0] == pytest.approx(+0.10747272257907839, abs=1e-14)
        assert d[1, 1] == pytest.approx(
            0.9883821264080411 - 0.10747272257907839j, abs=1e-14
        )

    def test_rotation_angle_identity(self):
        # for momentum along y the rotation is about x with
        # tan(angle/2) = tanh(alpha/2) * tanh(momentum rapidity / 2)
        qmag = 2.4
        p = FourMomentum.from_spatial(0.0, qmag, 0.0)
        alpha = 1.3
        d = wigner_matrix(alpha, p).entries
        half = math.atan2(d[0, 0].imag, d[0, 0].real)
        b = math.asinh(qmag)
        want = math.atan(math.tanh(alpha / 2.0) * math.tanh(b / 2.0))
        assert half == pytest.approx(want, rel=1e-12)

    def test_unitary_over_random_momenta(self, rng):
        momenta = random_onshell(rng, 10_000)
        alphas = rng.uniform(-20.0, 20.0, size=len(momenta))
        worst = 0.0
        for p, a in zip(momenta, alphas):
            d = wigner_matrix(float(a), p).entries
            worst = max(worst, float(np.max(np.abs(d.conj().T @ d - np.eye(2)))))
        assert worst <= 1e-10

    def test_determinant_one(self, rng):
        for p in random_onshell(rng, 50):
            d = wigner_matrix(float(rng.uniform(-10, 10)), p).entries
            assert np.linalg.det(d) == pytest.approx(1.0, abs=1e-11)


def _cyl_integral(alpha_d, packet, component, azimuth_y, azimuth_z, weight):
    """Reduce an azimuthally even |coefficient|^2 integral over p to 2D.

    The integration variable is the momentum seen by the moving detector;
    the invariant measure supplies the p0/q0 factor.
    """
    boost = LorentzBoost(alpha_d)

    def h(qx, qr):
        qx = np.asarray(qx, dtype=float)
        qr = np.asarray(qr, dtype=float)
        out = np.zeros(np.broadcast(qx, qr).shape)
        bx = np.broadcast_to(qx, out.shape)
        br = np.broadcast_to(qr, out.shape)
        for idx in np.ndindex(out.shape):
            vr = float(br[idx])
            q = FourMomentum.from_spatial(float(bx[idx]), azimuth_y * vr, azimuth_z * vr)
            p = apply_boost(boost, q)
            c = spinor_coefficients(alpha_d, p, packet, "A")
            if component == "sum":
                val = abs(c.first) ** 2 + abs(c.second) ** 2
            else:
                val = abs(c.second) ** 2
            out[idx] = weight * vr * (p.q0 / q.q0) * val
        return out

    t = 10.0 * packet.w
    return integrate_2d(h, packet.k - t, packet.k + t, 0.0, t, rel_tol=1e-8).value


class TestSpinorCoefficients:
    def test_collapse_at_zero_detector_rapidity(self):
        packet = PacketSpec(0.5, 1.0)
        p = FourMomentum.from_spatial(0.3, -0.2, 0.9)
        a1, a2 = spinor_coefficients(0.0, p, packet, "A")
        assert a1 == pytest.approx(gaussian_amplitude(p, packet), rel=1e-14)
        assert a2 == 0.0
        b1, b2 = spinor_coefficients(0.0, p, packet, "B")
        assert b1 == 0.0
        assert b2 == pytest.approx(gaussian_amplitude(p, packet), rel=1e-14)

    def test_side_validation(self):
        packet = PacketSpec(0.5, 1.0)
        with pytest.raises(ValueError):
            spinor_coefficients(1.0, FourMomentum.rest(), packet, "C")

    def test_pointwise_norm_identity(self, rng):
        # |a1|^2 + |a2|^2 = (q0/p0) f(q)^2: rotation unitarity before integration
        packet = PacketSpec(0.5, 1.0)
        for p in random_onshell(rng, 30, qmax=10.0):
            for a in (-2.0, 0.7, 3.0):
                q = apply_boost(LorentzBoost(-a), p)
                a1, a2 = spinor_coefficients(a, p, packet, "A")
                want = (q.q0 / p.q0) * gaussian_amplitude(q, packet) ** 2
                got = abs(a1) ** 2 + abs(a2) ** 2
                assert got == pytest.approx(want, rel=1e-12, abs=1e-300)

    def test_sides_mirror(self, rng):
        packet = PacketSpec(0.5, 1.0)
        for p in random_onshell(rng, 20, qmax=10.0):
            a1, a2 = spinor_coefficients(1.3, p, packet, "A")
            b1, b2 = spinor_coefficients(1.3, p, packet, "B")
            assert abs(b1) == pytest.approx(abs(a2), rel=1e-12, abs=1e-300)
            assert abs(b2) == pytest.approx(abs(a1), rel=1e-12, abs=1e-300)

    def test_norm_integral_is_one(self):
        # total probability carried by both spin components, any azimuth
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        total = _cyl_integral(
            2.0, PacketSpec(0.5, 1.0), "sum", inv_sqrt2, inv_sqrt2, 2.0 * math.pi
        )
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_norm_integral_azimuth_independent(self):
        total = _cyl_integral(2.0, PacketSpec(0.5, 1.0), "sum", 0.0, 1.0, 2.0 * math.pi)
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_flip_amplitude_matches_decoherence_factor(self):
        # the z-aligned |a2|^2 carries sin^2 of the azimuth, averaging to pi;
        # a detector receding at alpha corresponds to detector rapidity -alpha
        for alpha, k, w in [(2.0, 0.01, 4.0), (1.0, 1.0, 1.0)]:
            packet = PacketSpec(k, w)
            got = _cyl_integral(-alpha, packet, "flip", 0.0, 1.0, math.pi)
            want = decoherence_factor(alpha, packet).value
            assert got == pytest.approx(want, abs=1e-6)
