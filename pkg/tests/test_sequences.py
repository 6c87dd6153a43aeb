"""Coefficient encodings and the three coefficient-space homotopies."""

import numpy as np
import pytest

from imm0 import (
    AtPole,
    BasedLoopFunction,
    InvariantViolation,
    NotBased,
    OutOfRange,
    RapidSequence,
    TailTooLarge,
    ZeroSequence,
    contract_based_loop,
    loop_to_sequence,
    parameter_grid,
    sequence_to_loop,
    shuffle_homotopy,
    smooth_step,
    sphere_normalize,
    stereographic_contract,
)

THETA = parameter_grid(256)


def random_sequence(rng, m):
    return RapidSequence(rng.standard_normal(m) + 1j * rng.standard_normal(m))


# ---------------------------------------------------------------------------
# containers
# ---------------------------------------------------------------------------

def test_rapid_sequence_norms():
    b = RapidSequence([3 + 4j, 0.5j])
    assert abs(b.l2() - np.sqrt(25.25)) < 1e-12
    assert b.seminorm(0) == 5.0
    assert b.seminorm(2) == 5.0  # 5*1 beats 0.5*4
    assert b.seminorm(3) == 5.0  # 5*1 still beats 0.5*8
    assert RapidSequence([1.0, 1j]).seminorm(3) == 8.0


def test_rapid_sequence_padding():
    b = RapidSequence([1.0])
    out = b.padded(4)
    np.testing.assert_array_equal(out, [1.0, 0, 0, 0])
    assert len(b.padded(0)) == 1


def test_based_loop_rejects_nonzero_start():
    with pytest.raises(NotBased):
        BasedLoopFunction(np.cos(THETA))
    BasedLoopFunction(np.sin(THETA))


# ---------------------------------------------------------------------------
# coefficient transforms
# ---------------------------------------------------------------------------

def test_loop_to_sequence_known_coefficients():
    b = loop_to_sequence(BasedLoopFunction(np.sin(THETA)), 4)
    np.testing.assert_allclose(b.entries, [-0.5j, 0, 0, 0], atol=1e-14)


def test_loop_sequence_round_trip():
    f = BasedLoopFunction(np.sin(THETA) + 0.25 * np.cos(2 * THETA) - 0.25)
    g = sequence_to_loop(loop_to_sequence(f, 8), 256)
    np.testing.assert_allclose(g.samples, f.samples, atol=1e-12)
    assert g.samples[0] == 0.0


def test_truncation_loss_refused():
    f = BasedLoopFunction(np.sin(THETA) + 0.3 * (np.sin(50 * THETA) - 0.0))
    with pytest.raises(TailTooLarge):
        loop_to_sequence(f, 8)


def test_sequence_capacity_checked():
    b = RapidSequence(np.ones(40))
    with pytest.raises(InvariantViolation):
        sequence_to_loop(b, 64)


def test_constant_term_pins_basepoint():
    rng = np.random.default_rng(5)
    b = random_sequence(rng, 6)
    f = sequence_to_loop(b, 128)
    assert f.samples[0] == 0.0
    # and the synthesized function really has those coefficients
    again = loop_to_sequence(f, 6)
    np.testing.assert_allclose(again.entries, b.entries, atol=1e-12)


# ---------------------------------------------------------------------------
# smooth step
# ---------------------------------------------------------------------------

def test_smooth_step_endpoints_exact():
    assert smooth_step(0.0) == 0.0
    assert smooth_step(1.0) == 1.0
    assert smooth_step(-3.0) == 0.0
    assert smooth_step(7.0) == 1.0
    assert smooth_step(0.5) == 0.5


def test_smooth_step_monotone():
    xs = np.linspace(0, 1, 200)
    ys = [smooth_step(x) for x in xs]
    assert all(b >= a for a, b in zip(ys, ys[1:]))


# ---------------------------------------------------------------------------
# interleave homotopy
# ---------------------------------------------------------------------------

def test_shuffle_anchors_exact():
    rng = np.random.default_rng(0)
    b = random_sequence(rng, 12)
    np.testing.assert_array_equal(shuffle_homotopy(b, 0.0).entries, b.entries)
    out = shuffle_homotopy(b, 0.5)
    expect = np.zeros(23, complex)
    expect[::2] = b.entries
    np.testing.assert_array_equal(out.entries, expect)


def test_shuffle_small_times_are_identity():
    rng = np.random.default_rng(1)
    b = random_sequence(rng, 5)
    # stages above the support length freeze everything
    np.testing.assert_array_equal(shuffle_homotopy(b, 1.0 / 6.0).entries, b.entries)
    np.testing.assert_array_equal(shuffle_homotopy(b, 1e-12).entries, b.entries)


def test_shuffle_is_isometric():
    rng = np.random.default_rng(2)
    for _ in range(300):
        b = random_sequence(rng, int(rng.integers(1, 24)))
        t = float(rng.uniform(0.0, 0.5))
        assert abs(shuffle_homotopy(b, t).l2() - b.l2()) < 1e-12


def test_shuffle_decay_control():
    rng = np.random.default_rng(3)
    for _ in range(300):
        b = random_sequence(rng, int(rng.integers(1, 24)))
        t = float(rng.uniform(0.0, 0.5))
        out = shuffle_homotopy(b, t)
        for k in range(4):
            assert out.seminorm(k) <= 2**k * b.seminorm(k) + 1e-12


def test_shuffle_continuous_at_stage_boundary():
    rng = np.random.default_rng(4)
    b = random_sequence(rng, 10)
    for boundary in (1.0 / 4.0, 1.0 / 3.0):
        lo = shuffle_homotopy(b, boundary - 1e-10)
        hi = shuffle_homotopy(b, boundary + 1e-10)
        m = max(len(lo.entries), len(hi.entries))
        assert np.max(np.abs(lo.padded(m) - hi.padded(m))) < 1e-7


def test_shuffle_time_window():
    b = RapidSequence([1.0])
    with pytest.raises(OutOfRange):
        shuffle_homotopy(b, 0.6)
    with pytest.raises(OutOfRange):
        shuffle_homotopy(b, -0.1)


# ---------------------------------------------------------------------------
# norm interpolation
# ---------------------------------------------------------------------------

def test_sphere_normalize_linear_in_norm():
    b = RapidSequence([3.0, 4.0j])  # norm 5
    for t, expect in ((0.0, 5.0), (0.5, 3.0), (1.0, 1.0)):
        assert abs(sphere_normalize(b, t, 1.0).l2() - expect) < 1e-12


def test_sphere_normalize_rejects_zero():
    with pytest.raises(ZeroSequence):
        sphere_normalize(RapidSequence([0.0, 0.0]), 0.3, 1.0)


# ---------------------------------------------------------------------------
# stereographic chord
# ---------------------------------------------------------------------------

def equatorial_unit(rng, m=9):
    e = np.zeros(m, complex)
    e[::2] = rng.standard_normal((m + 1) // 2) + 1j * rng.standard_normal((m + 1) // 2)
    return RapidSequence(e / np.linalg.norm(e))


def test_stereographic_endpoints_exact():
    rng = np.random.default_rng(6)
    b = equatorial_unit(rng)
    np.testing.assert_array_equal(stereographic_contract(b, 0.0).entries, b.entries)
    out = stereographic_contract(b, 1.0)
    target = np.zeros(len(b.entries), complex)
    target[0] = -1j
    np.testing.assert_array_equal(out.entries, target)


def test_stereographic_stays_on_sphere_away_from_pole():
    rng = np.random.default_rng(7)
    b = equatorial_unit(rng)
    pole_at = 1  # 0-indexed slot of the chart pole
    for t in np.linspace(0.0, 1.0, 101):
        out = stereographic_contract(b, t)
        assert abs(out.l2() - 1.0) < 1e-9
        pole = np.zeros(len(out.entries), complex)
        pole[pole_at] = 1.0
        assert np.linalg.norm(out.entries - pole) >= np.sqrt(2) - 1e-9
        # only the pole coordinate is reintroduced; other even slots stay clear
        others = np.delete(out.entries[1::2], 0)
        if len(others):
            assert np.max(np.abs(others)) < 1e-9


def test_stereographic_chart_identity_oracle():
    # |x(b)|^2 = (1 + <b,q>)/(1 - <b,q>) for unit b: checked directly against
    # the chart used by the contraction
    from imm0.sequences import _chart, _chart_inverse

    rng = np.random.default_rng(8)
    for _ in range(50):
        raw = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        raw[1] = rng.uniform(-0.9, 0.9)  # real pole coordinate, away from 1
        b = raw / np.linalg.norm(raw)
        x = _chart(b)
        inner = b[1].real
        assert abs(np.sum(np.abs(x) ** 2) - (1 + inner) / (1 - inner)) < 1e-9
        np.testing.assert_allclose(_chart_inverse(x), b, atol=1e-10)


def test_stereographic_preconditions():
    rng = np.random.default_rng(9)
    b = equatorial_unit(rng)
    with pytest.raises(InvariantViolation):
        stereographic_contract(RapidSequence(2.0 * b.entries), 0.5)
    off = b.entries.copy()
    off[1] = 0.05  # even slot occupied
    off /= np.linalg.norm(off)
    with pytest.raises(InvariantViolation):
        stereographic_contract(RapidSequence(off), 0.5)
    pole = np.zeros(4, complex)
    pole[1] = 1.0
    with pytest.raises(AtPole):
        stereographic_contract(RapidSequence(pole), 0.5)
    with pytest.raises(OutOfRange):
        stereographic_contract(b, 1.5)


# ---------------------------------------------------------------------------
# full contraction of a based loop function
# ---------------------------------------------------------------------------

def test_contract_holds_sine_fixed():
    f = BasedLoopFunction(np.sin(THETA))
    for t in np.linspace(0.0, 1.0, 21):
        out = contract_based_loop(f, t, modes=8)
        assert np.max(np.abs(out.samples - f.samples)) < 1e-12


def test_contract_endpoint_is_sine():
    rng = np.random.default_rng(10)
    b = random_sequence(rng, 6)
    f = sequence_to_loop(b, 256)
    out = contract_based_loop(f, 1.0, modes=8)
    np.testing.assert_allclose(out.samples, np.sin(THETA), atol=1e-12)


def test_contract_norm_floor():
    f = BasedLoopFunction(np.sin(THETA) + 0.25 * np.cos(2 * THETA) - 0.25)
    start = loop_to_sequence(f, 8).l2()
    floor = min(start, 0.5)
    for t in np.linspace(0.0, 1.0, 81):
        out = contract_based_loop(f, t, modes=8)
        assert loop_to_sequence(out, 100).l2() >= floor - 1e-9


def test_contract_continuity_across_quarters():
    f = BasedLoopFunction(0.3 * np.sin(THETA) - 0.1 * np.cos(3 * THETA) + 0.1)
    for q in (0.25, 0.5, 0.75):
        a = contract_based_loop(f, q - 1e-9, modes=8)
        b = contract_based_loop(f, q + 1e-9, modes=8)
        assert np.max(np.abs(a.samples - b.samples)) < 1e-6


def test_contract_rejects_empty_function():
    with pytest.raises(ZeroSequence):
        contract_based_loop(BasedLoopFunction(np.zeros(256)), 0.5)


def test_contract_time_window():
    f = BasedLoopFunction(np.sin(THETA))
    with pytest.raises(OutOfRange):
        contract_based_loop(f, 1.2)
