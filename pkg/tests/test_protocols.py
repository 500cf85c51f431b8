"""Tests for jump functions, the protocol catalogue and the linear bounds."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from entbuffer.core.errors import AnalyticsUnavailableError, NotPurifiableError
from entbuffer.core.protocols.bounds import clifford_bounds, f_intersection, f_star, tangent_at_one
from entbuffer.core.protocols.catalogue import (
    NONTRIVIAL_PROTOCOLS,
    ProtocolId,
    best_protocol,
    catalogue_jump,
    evaluate_printed_row,
)
from entbuffer.core.protocols.jumps import LinearJump, RationalJump
from entbuffer.core.states import BellDiagonalState, random_bell_diagonal, werner_state

GRID = np.linspace(0.25, 1.0, 50)


@pytest.mark.parametrize("a, b", [(1.2, 0.0), (-0.1, 0.5), (0.5, 0.05), (0.5, 0.6)])
def test_linear_jump_range(a, b):
    with pytest.raises(ValidationError):
        LinearJump(a=a, b=b)


def test_linear_jump_trivial():
    assert LinearJump(a=1.0, b=0.0).is_trivial
    assert not LinearJump(a=1 / 3, b=0.6).is_trivial


def test_rational_jump_rejects_zero_success():
    with pytest.raises(ValidationError):
        RationalJump(at=0.5, bt=0.0, c=0.0, d=0.0)


def test_rational_jump_with_constant_success_linearizes():
    jump = RationalJump(at=0.3, bt=0.2, c=0.0, d=0.6)
    linear = jump.linearized()
    assert linear.a == pytest.approx(0.5)
    for f in GRID:
        assert jump(f) == pytest.approx(linear(f), abs=1e-12)


def test_rational_jump_with_varying_success_has_no_linear_form(band_rho):
    with pytest.raises(AnalyticsUnavailableError):
        catalogue_jump(1, band_rho).linearized()


def test_protocol_id_range():
    with pytest.raises(ValidationError):
        ProtocolId(index=8)
    assert ProtocolId(index=4).is_trivial
    assert not ProtocolId(index=2).is_trivial


def test_row_one_at_quarter(rng):
    for _ in range(50):
        rho = random_bell_diagonal(rng)
        assert catalogue_jump(1, rho)(0.25) == pytest.approx((rho.f + rho.l1) / 2, abs=1e-12)


def test_row_three_at_one(rng):
    for _ in range(50):
        rho = random_bell_diagonal(rng)
        assert catalogue_jump(3, rho)(1.0) == pytest.approx(rho.f / (rho.f + rho.l3), abs=1e-12)


def test_row_seven_replaces(band_rho):
    jump = catalogue_jump(7, band_rho)
    assert jump(0.6) == pytest.approx(0.8, abs=1e-12)
    assert jump.success_probability(0.6) == pytest.approx(0.7333333333333333, abs=1e-12)


@pytest.mark.parametrize("index", [4, 5, 6])
def test_trivial_rows_keep_fidelity(index, band_rho):
    jump = catalogue_jump(index, band_rho)
    for f in GRID:
        assert jump(f) == pytest.approx(f, abs=1e-12)
        assert jump.success_probability(f) == pytest.approx(band_rho.f + band_rho.lambdas[index - 4], abs=1e-12)


def test_printed_and_stored_rows_agree(rng):
    for _ in range(300):
        rho = random_bell_diagonal(rng)
        f = rng.uniform(0.25, 1.0)
        for index in range(1, 8):
            stored = catalogue_jump(index, rho)
            j, p = evaluate_printed_row(index, rho, f)
            assert stored(f) == pytest.approx(j, abs=1e-12)
            assert stored.success_probability(f) == pytest.approx(p, abs=1e-12)


def test_nontrivial_rows_are_increasing_and_concave(rng):
    h = GRID[1] - GRID[0]
    for _ in range(100):
        rho = random_bell_diagonal(rng)
        for index in NONTRIVIAL_PROTOCOLS:
            values = np.array([catalogue_jump(index, rho)(f) for f in GRID])
            assert np.all(np.diff(values) > 0)
            assert np.all(np.diff(values, 2) / (h * h) < 0)


def test_rows_order_above_intersection(rng):
    for _ in range(200):
        rho = random_bell_diagonal(rng)
        order = sorted(range(3), key=lambda i: -rho.lambdas[i])
        ordered = rho.permuted(order)  # l1 >= l2 >= l3
        for f in np.linspace(f_intersection(ordered), 1.0, 20):
            j1, j2, j3 = (catalogue_jump(i, ordered)(f) for i in NONTRIVIAL_PROTOCOLS)
            assert j3 >= j2 - 1e-12
            assert j2 >= j1 - 1e-12


def test_best_protocol_has_smallest_lambda():
    rho = BellDiagonalState(f=0.7, l1=0.15, l2=0.05, l3=0.1)
    assert best_protocol(rho).index == 2


def test_f_star_examples(band_rho):
    assert f_star(band_rho) == pytest.approx(1.0, abs=1e-12)
    rho = werner_state(0.8)
    fs = f_star(rho)
    assert 0.8 < fs < 1.0
    assert catalogue_jump(best_protocol(rho), rho)(fs) == pytest.approx(fs, abs=1e-12)


def test_f_star_requires_entanglement():
    with pytest.raises(NotPurifiableError):
        f_star(BellDiagonalState(f=0.5, l1=0.5, l2=0.0, l3=0.0))
    with pytest.raises(NotPurifiableError):
        f_intersection(BellDiagonalState(f=0.5, l1=0.2, l2=0.2, l3=0.1))


def test_fixed_points_residuals(rng):
    for _ in range(100):
        rho = random_bell_diagonal(rng)
        fs = f_star(rho)
        assert abs(catalogue_jump(best_protocol(rho), rho)(fs) - fs) < 1e-12
        fi = f_intersection(rho)
        for index in NONTRIVIAL_PROTOCOLS:
            assert abs(catalogue_jump(index, rho)(fi) - math.sqrt(rho.f / 2)) < 1e-12


def test_f_intersection_example(band_rho):
    fi = f_intersection(band_rho)
    assert fi == pytest.approx((1.2 + 3 * math.sqrt(1.6)) / 10.8, abs=1e-12)
    assert fi == pytest.approx(0.46244, abs=1e-4)
    for index in NONTRIVIAL_PROTOCOLS:
        assert catalogue_jump(index, band_rho)(fi) == pytest.approx(math.sqrt(0.4), abs=1e-12)


def test_f_intersection_symmetric_state():
    rho = werner_state(0.7)
    assert f_intersection(rho) == pytest.approx((4 * 0.7 - 2 + 3 * math.sqrt(1.4)) / (2 * (8 * 0.7 - 1)))


def test_clifford_bounds_example(band_rho):
    bounds = clifford_bounds(band_rho)
    assert bounds.a_u == pytest.approx(0.266667, abs=1e-6)
    assert bounds.b_u == pytest.approx(0.733333, abs=1e-6)
    assert bounds.p_l == 0.5
    assert bounds.p_u == pytest.approx(0.9, abs=1e-12)
    assert bounds.a_l == pytest.approx(5.28 / 8.1, abs=1e-12)
    assert bounds.b_l == pytest.approx(0.4 - 5.28 / 8.1 / 4, abs=1e-12)
    # anchored on the lowest jump at F = 1/4
    assert bounds.lower(0.25) == pytest.approx((band_rho.f + band_rho.lambda_min) / 2, abs=1e-12)


def test_bound_sandwich(rng):
    for _ in range(1000):
        rho = random_bell_diagonal(rng)
        bounds = clifford_bounds(rho)
        for index in NONTRIVIAL_PROTOCOLS:
            jump = catalogue_jump(index, rho)
            for f in np.linspace(0.25, bounds.f_star, 50):
                assert jump(f) - bounds.lower(f) >= -1e-10
                assert bounds.upper(f) - jump(f) >= -1e-10
                assert jump.success_probability(f) - bounds.p_l >= -1e-10
                assert bounds.p_u - jump.success_probability(f) >= -1e-10
            for f in GRID:
                assert bounds.upper(f) - jump(f) >= -1e-10


def test_bound_lines_are_valid_jumps(rng):
    for _ in range(200):
        bounds = clifford_bounds(random_bell_diagonal(rng))
        bounds.lower_jump()
        bounds.upper_jump()


def test_tangent_at_one_sits_between_best_jump_and_upper_line(rng):
    for _ in range(200):
        rho = random_bell_diagonal(rng)
        tangent = tangent_at_one(rho)
        best = catalogue_jump(best_protocol(rho), rho)
        upper = clifford_bounds(rho)
        assert tangent(1.0) == pytest.approx(best(1.0), abs=1e-12)
        for f in GRID:
            assert tangent(f) >= best(f) - 1e-10
            assert tangent(f) <= upper.upper(f) + 1e-10
