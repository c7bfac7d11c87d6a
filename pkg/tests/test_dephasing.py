import json
import math

import numpy as np
import pytest

from expsums import (
    InvalidInputError,
    PulseSequence,
    SpectralDensity,
    decay_factor,
    evaluate,
    filter_expsum,
    filter_function,
    load_pulse_sequence,
    load_spectral_density,
    min_separation,
    sequence_to_json,
    uhrig_filter_magnitude,
    uhrig_pulse_times,
    vanishing_order_filter,
)

ECHO = PulseSequence(times=(0.0, 0.5, 1.0))
FREE = PulseSequence(times=(0.0, 1.0))


def uniform_sequence(n, T=1.0):
    return PulseSequence.from_pulses([j * T / (n + 1) for j in range(1, n + 1)], T)


# ---------------------------------------------------------------------------
# sequences

def test_sequence_validation():
    with pytest.raises(InvalidInputError):
        PulseSequence(times=(0.5, 1.0))
    with pytest.raises(InvalidInputError):
        PulseSequence(times=(0.0,))
    with pytest.raises(InvalidInputError):
        PulseSequence(times=(0.0, 0.5, 0.5, 1.0))
    with pytest.raises(InvalidInputError):
        PulseSequence(times=(0.0, 0.7, 0.3, 1.0))


def test_sequence_accessors():
    seq = uhrig_pulse_times(2, 1.0)
    assert seq.n_pulses == 2
    assert seq.total_time == 1.0
    assert seq.min_separation == pytest.approx(0.25, abs=1e-15)
    assert min_separation(seq) == seq.min_separation


def test_from_pulses():
    seq = PulseSequence.from_pulses([0.25, 0.75], 1.0)
    assert seq.times == (0.0, 0.25, 0.75, 1.0)


def test_min_separation_includes_boundaries():
    assert PulseSequence(times=(0.0, 0.9, 1.0)).min_separation == pytest.approx(0.1)
    assert uhrig_pulse_times(1, 2.0).min_separation == pytest.approx(1.0)


def test_min_separation_edge_gaps_smallest_for_uhrig():
    # sin^2 symmetry makes the first and last gaps equal and minimal; roundoff
    # decides which one the scan lands on
    for n in range(1, 41):
        seq = uhrig_pulse_times(n, 1.0)
        gaps = [b - a for a, b in zip(seq.times, seq.times[1:])]
        assert min(range(len(gaps)), key=gaps.__getitem__) in (0, len(gaps) - 1)
        assert seq.min_separation == pytest.approx(
            math.sin(math.pi / (2 * n + 2)) ** 2, rel=1e-14
        )


# ---------------------------------------------------------------------------
# filter function

def test_filter_vanishes_at_zero_frequency():
    for seq in [FREE, ECHO, uhrig_pulse_times(4, 2.0), uniform_sequence(3)]:
        assert filter_function(seq, 0.0) == 0


def test_filter_no_pulses_closed_form():
    for w in np.linspace(-8.0, 8.0, 33):
        value = filter_function(FREE, w)
        assert value == pytest.approx(1 - np.exp(1j * w), abs=1e-14)
        assert abs(value) == pytest.approx(2 * abs(math.sin(w / 2)), abs=1e-14)


def test_filter_matches_expsum_route():
    rng = np.random.default_rng(11)
    sequences = [FREE, ECHO, uhrig_pulse_times(3, 1.0), uhrig_pulse_times(6, 0.7)]
    pulses = np.sort(rng.uniform(0.05, 0.95, size=5))
    sequences.append(PulseSequence.from_pulses(pulses, 1.0))
    for seq in sequences:
        g = filter_expsum(seq)
        for w in np.linspace(-20.0, 20.0, 41):
            direct = filter_function(seq, w)
            via_sum = evaluate(g, w)
            assert abs(direct - via_sum) <= 1e-13 * max(1.0, abs(direct))


def test_filter_expsum_coefficient_pattern():
    g = filter_expsum(uhrig_pulse_times(4, 1.0))
    assert g.coefficients == (1, -2, 2, -2, 2, -1)
    g = filter_expsum(uhrig_pulse_times(3, 1.0))
    assert g.coefficients == (1, -2, 2, -2, 1)
    assert filter_expsum(FREE).coefficients == (1, -1)


def test_filter_triangle_bound():
    for n in [0, 2, 5]:
        seq = uhrig_pulse_times(n, 1.0) if n else FREE
        bound = 2 * (seq.n_pulses + 1)
        ws = np.linspace(-100.0, 100.0, 501)
        assert all(abs(filter_function(seq, w)) <= bound + 1e-12 for w in ws)


def test_filter_time_scaling_covariance():
    base = uhrig_pulse_times(3, 1.0)
    s = 2.5
    stretched = PulseSequence(times=tuple(s * t for t in base.times))
    for w in np.linspace(0.1, 30.0, 25):
        assert abs(filter_function(stretched, w / s)) == pytest.approx(
            abs(filter_function(base, w)), abs=1e-13
        )


def test_filter_rejects_nonfinite_frequency():
    with pytest.raises(InvalidInputError):
        filter_function(FREE, math.inf)


# ---------------------------------------------------------------------------
# vanishing order of the filter

def test_filter_order_uhrig():
    for n in [1, 2, 3, 4]:
        assert vanishing_order_filter(uhrig_pulse_times(n, 1.0)) == n + 1


def test_filter_order_no_pulses():
    assert vanishing_order_filter(FREE) == 1


def test_filter_order_uniform_spacing_is_lower():
    # evenly spaced pulses stop cancelling beyond first order
    assert vanishing_order_filter(uniform_sequence(2)) == 1
    assert vanishing_order_filter(uhrig_pulse_times(2, 1.0)) == 3


def test_uhrig_filter_magnitude_agrees_at_moderate_frequency():
    for n, T in [(2, 1.0), (3, 0.5)]:
        seq = uhrig_pulse_times(n, T)
        for w in [0.7, 3.0, 11.0]:
            direct = abs(filter_function(seq, w))
            precise = uhrig_filter_magnitude(n, T, w)
            assert direct == pytest.approx(precise, rel=1e-12, abs=1e-13)


def test_uhrig_filter_magnitude_resolves_tiny_values():
    # at omega*T = 1e-3 the n=4 filter is ~1e-19, far below double noise
    value = uhrig_filter_magnitude(4, 1.0, 1e-3)
    assert 0.0 < value < 1e-17
    ratio = uhrig_filter_magnitude(4, 1.0, 2e-3) / value
    assert ratio == pytest.approx(2.0 ** 5, rel=1e-3)


def test_uhrig_filter_magnitude_validation():
    with pytest.raises(InvalidInputError):
        uhrig_filter_magnitude(0, 1.0, 1.0)
    with pytest.raises(InvalidInputError):
        uhrig_filter_magnitude(2, 0.0, 1.0)


# ---------------------------------------------------------------------------
# spectral densities

def test_density_validation():
    with pytest.raises(InvalidInputError):
        SpectralDensity(kind="pink")
    with pytest.raises(InvalidInputError):
        SpectralDensity(kind="hard-cutoff-flat", amplitude=-1.0, cutoff=1.0)
    with pytest.raises(InvalidInputError):
        SpectralDensity(kind="hard-cutoff-flat", amplitude=1.0)
    with pytest.raises(InvalidInputError):
        SpectralDensity(kind="ohmic-exponential", amplitude=1.0, cutoff=0.0)
    with pytest.raises(InvalidInputError):
        SpectralDensity(kind="tabulated", table=())
    with pytest.raises(InvalidInputError):
        SpectralDensity(kind="tabulated", table=((0.0, 1.0), (0.0, 2.0)))
    with pytest.raises(InvalidInputError):
        SpectralDensity(kind="tabulated", table=((0.0, 1.0), (1.0, -2.0)))


def test_flat_density_values():
    dens = SpectralDensity(kind="hard-cutoff-flat", amplitude=2.0, cutoff=1.5)
    assert dens(0.0) == 2.0
    assert dens(1.5) == 2.0
    assert dens(1.6) == 0.0
    assert dens.support_bound == 1.5


def test_ohmic_density_values():
    dens = SpectralDensity(kind="ohmic-exponential", amplitude=3.0, cutoff=2.0)
    w = 0.7
    assert dens(w) == pytest.approx(3.0 * w * math.exp(-w / 2.0), rel=1e-15)
    assert dens.support_bound is None
    assert dens.tail_weight(10.0) < dens.tail_weight(5.0)


def test_tabulated_density_interpolation():
    dens = SpectralDensity(
        kind="tabulated", table=((0.0, 0.0), (1.0, 2.0), (2.0, 0.0))
    )
    assert dens(0.5) == pytest.approx(1.0)
    assert dens(1.5) == pytest.approx(1.0)
    assert dens(2.5) == 0.0
    assert dens.support_bound == 2.0


def test_density_vectorized_call():
    dens = SpectralDensity(kind="hard-cutoff-flat", amplitude=1.0, cutoff=1.0)
    out = dens(np.array([0.5, 2.0]))
    assert out.tolist() == [1.0, 0.0]


# ---------------------------------------------------------------------------
# decay factor

def test_decay_zero_density():
    dens = SpectralDensity(kind="hard-cutoff-flat", amplitude=0.0, cutoff=1.0)
    assert decay_factor(FREE, dens) == 0.0


@pytest.mark.parametrize("cutoff,T", [(1.0, 1.0), (2.0, 0.5), (0.3, 4.0)])
def test_decay_no_pulses_closed_form(cutoff, T):
    # integral of 4*sin^2(T*w/2) over [0, cutoff]
    seq = PulseSequence(times=(0.0, T))
    dens = SpectralDensity(kind="hard-cutoff-flat", amplitude=1.0, cutoff=cutoff)
    closed = 2.0 * cutoff - (2.0 / T) * math.sin(cutoff * T)
    assert decay_factor(seq, dens, abs_tol=1e-12) == pytest.approx(closed, abs=1e-10)


def test_decay_more_pulses_suppress_low_frequency_noise():
    dens = SpectralDensity(kind="hard-cutoff-flat", amplitude=1.0, cutoff=1.0)
    chi2 = decay_factor(uhrig_pulse_times(2, 1.0), dens)
    chi4 = decay_factor(uhrig_pulse_times(4, 1.0), dens)
    assert 0.0 < chi4 < chi2


def test_decay_linear_in_amplitude():
    seq = uhrig_pulse_times(2, 1.0)
    one = SpectralDensity(kind="hard-cutoff-flat", amplitude=1.0, cutoff=2.0)
    five = SpectralDensity(kind="hard-cutoff-flat", amplitude=5.0, cutoff=2.0)
    assert decay_factor(seq, five) == pytest.approx(5 * decay_factor(seq, one), rel=1e-9)


def test_decay_ohmic_tail_truncation():
    seq = uhrig_pulse_times(2, 1.0)
    dens = SpectralDensity(kind="ohmic-exponential", amplitude=1.0, cutoff=1.0)
    loose = decay_factor(seq, dens, abs_tol=1e-8)
    tight = decay_factor(seq, dens, abs_tol=1e-12)
    assert loose == pytest.approx(tight, abs=2e-8)
    assert tight > 0.0


def test_decay_tabulated_matches_flat():
    seq = uhrig_pulse_times(2, 1.0)
    flat = SpectralDensity(kind="hard-cutoff-flat", amplitude=1.0, cutoff=1.0)
    table = SpectralDensity(kind="tabulated", table=((0.0, 1.0), (1.0, 1.0)))
    assert decay_factor(seq, table) == pytest.approx(decay_factor(seq, flat), abs=1e-10)


def test_decay_validation():
    dens = SpectralDensity(kind="hard-cutoff-flat", amplitude=1.0, cutoff=1.0)
    with pytest.raises(InvalidInputError):
        decay_factor(FREE, dens, abs_tol=0.0)


# ---------------------------------------------------------------------------
# file formats

def test_sequence_json_round_trip(tmp_path):
    seq = uhrig_pulse_times(3, 2.0)
    path = tmp_path / "seq.json"
    path.write_text(sequence_to_json(seq))
    assert load_pulse_sequence(path) == seq


def test_sequence_json_mismatched_total(tmp_path):
    path = tmp_path / "seq.json"
    path.write_text('{"times": [0.0, 0.5, 1.0], "T": 2.0}')
    with pytest.raises(InvalidInputError):
        load_pulse_sequence(path)


def test_sequence_json_malformed(tmp_path):
    path = tmp_path / "seq.json"
    path.write_text("{nope")
    with pytest.raises(InvalidInputError):
        load_pulse_sequence(path)
    with pytest.raises(InvalidInputError):
        load_pulse_sequence(tmp_path / "missing.json")
    path.write_text('{"T": 1.0}')
    with pytest.raises(InvalidInputError):
        load_pulse_sequence(path)


def test_density_json_round_trip(tmp_path):
    path = tmp_path / "dens.json"
    path.write_text(
        json.dumps({"kind": "ohmic-exponential", "amplitude": 2.0, "cutoff": 1.5})
    )
    dens = load_spectral_density(path)
    assert dens.kind == "ohmic-exponential"
    assert dens.amplitude == 2.0 and dens.cutoff == 1.5


def test_density_json_tabulated():
    dens = load_spectral_density(
        {"kind": "tabulated", "table": [[0.0, 1.0], [2.0, 3.0]]}
    )
    assert dens.table == ((0.0, 1.0), (2.0, 3.0))


def test_density_json_invalid():
    with pytest.raises(InvalidInputError):
        load_spectral_density({"kind": "nope"})
    with pytest.raises(InvalidInputError):
        load_spectral_density({"amplitude": 1.0})
