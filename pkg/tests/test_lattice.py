import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import freqwalk as fw
from freqwalk import Polarization as P

CFG = fw.LatticeConfig(8)


def test_single_site_delta():
    s = fw.make_single_site(0, P.H, CFG)
    assert s.amp[0, CFG.index(0)] == 1.0
    assert s.norm() == pytest.approx(1.0, abs=1e-15)
    assert np.count_nonzero(s.amp) == 1


def test_single_site_out_of_range():
    with pytest.raises(fw.ConfigurationError):
        fw.make_single_site(9, P.H, CFG)


def test_single_site_zero_diffusion():
    assert fw.diffusion_distance(fw.make_single_site(0, P.H, CFG)) == 0.0


def test_gaussian_too_wide_rejected():
    with pytest.raises(fw.ConfigurationError):
        fw.make_gaussian(fw.WavepacketSpec(delta=8.0, q=0.0, spin=(1, 0)), CFG)


def test_gaussian_narrow_envelope_localized():
    s = fw.make_gaussian(fw.WavepacketSpec(delta=0.3, q=0.0, spin=(1, 0)), CFG)
    assert fw.probability_distribution(s)[CFG.index(0)] >= 0.999


def test_gaussian_unit_norm():
    s = fw.make_gaussian(
        fw.WavepacketSpec(delta=25.0, q=0.27 * np.pi, spin=(0.6, 0.8j)),
        fw.LatticeConfig(512),
    )
    assert s.norm() == pytest.approx(1.0, abs=1e-12)


def test_probability_indicator_and_sum():
    s = fw.make_single_site(3, P.V, CFG)
    p = fw.probability_distribution(s)
    assert p[CFG.index(3)] == 1.0
    assert p.sum() == pytest.approx(1.0, abs=1e-12)


def test_diffusion_two_point():
    amp = np.zeros((2, CFG.n_sites), dtype=complex)
    amp[0, CFG.index(2)] = amp[0, CFG.index(-2)] = np.sqrt(0.5)
    assert fw.diffusion_distance(fw.LatticeState(CFG, amp)) == pytest.approx(2.0)


def test_diffusion_matches_brute_force():
    rng = np.random.default_rng(7)
    amp = rng.normal(size=(2, CFG.n_sites)) + 1j * rng.normal(size=(2, CFG.n_sites))
    amp /= np.linalg.norm(amp)
    s = fw.LatticeState(CFG, amp)
    brute = sum(
        m * m * (abs(amp[0, CFG.index(m)]) ** 2 + abs(amp[1, CFG.index(m)]) ** 2)
        for m in range(-8, 9)
    )
    assert fw.diffusion_distance(s) ** 2 == pytest.approx(brute, abs=1e-14)


def test_centroid():
    assert fw.centroid(fw.make_single_site(3, P.H, CFG)) == pytest.approx(3.0)
    sym = np.zeros((2, CFG.n_sites), dtype=complex)
    sym[0, CFG.index(1)] = sym[0, CFG.index(-1)] = np.sqrt(0.5)
    assert fw.centroid(fw.LatticeState(CFG, sym)) == pytest.approx(0.0, abs=1e-15)


def test_return_probability_cases():
    a = fw.make_single_site(0, P.H, CFG)
    b = fw.make_single_site(0, P.V, CFG)
    assert fw.return_probability(a, a) == pytest.approx(1.0)
    assert fw.return_probability(b, a) == 0.0
    with pytest.raises(fw.ConfigurationError):
        fw.return_probability(a, fw.make_single_site(0, P.H, fw.LatticeConfig(9)))


def test_spin_projection_inverts_construction():
    spin = (0.6, 0.8 * np.exp(0.7j))
    s = fw.make_gaussian(
        fw.WavepacketSpec(delta=10.0, q=0.4, spin=spin), fw.LatticeConfig(80)
    )
    v = fw.spin_projection_at_q(s, 0.4)
    assert abs(np.vdot(v, np.array(spin))) ** 2 > 1 - 1e-10


def test_spin_projection_linearity():
    cfg = fw.LatticeConfig(40)
    s1 = fw.make_gaussian(fw.WavepacketSpec(delta=5.0, q=0.3, spin=(1, 0)), cfg)
    s2 = fw.make_gaussian(fw.WavepacketSpec(delta=5.0, q=0.3, spin=(0, 1)), cfg)
    mixed = fw.LatticeState(cfg, (s1.amp + s2.amp) / np.sqrt(2))
    v1 = fw.spin_projection_at_q(s1, 0.3, normalized=False)
    v2 = fw.spin_projection_at_q(s2, 0.3, normalized=False)
    vm = fw.spin_projection_at_q(mixed, 0.3, normalized=False)
    assert np.allclose(vm, (v1 + v2) / np.sqrt(2), atol=1e-12)


def test_spin_projection_no_support():
    s = fw.make_single_site(0, P.H, CFG)
    empty = s.with_amp(np.zeros_like(s.amp))
    with pytest.raises(fw.ConfigurationError):
        fw.spin_projection_at_q(empty, 0.1)


@settings(max_examples=40, deadline=None)
@given(
    delta=st.floats(0.3, 15.0),
    q=st.floats(-np.pi, np.pi, exclude_max=True),
    ang=st.floats(0, np.pi),
    ph=st.floats(0, 2 * np.pi),
)
def test_constructors_always_unit_norm(delta, q, ang, ph):
    spin = (np.cos(ang / 2), np.sin(ang / 2) * np.exp(1j * ph))
    s = fw.make_gaussian(fw.WavepacketSpec(delta=delta, q=q, spin=spin),
                         fw.LatticeConfig(128))
    assert abs(s.norm() - 1.0) < 1e-12
    assert fw.probability_distribution(s).sum() == pytest.approx(1.0, abs=1e-12)
