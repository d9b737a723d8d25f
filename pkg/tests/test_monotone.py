import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uncreg import fixtures
from uncreg.errors import ConstraintError, ContractError, DomainError
from uncreg.models import custom, gompertz, linear, michaelis_menten
from uncreg.monotone import (
    DECREASING,
    INCREASING,
    MonotoneSignature,
    check_nondecreasing,
    compose_inverse,
    residual_inverse,
)
from uncreg.pipeline import fit
from uncreg.udist import Linear, Normal, Point

GRID = np.arange(1, 100) / 100


def test_identity_composition():
    inv = compose_inverse(lambda x: x, [Linear(0, 1)], MonotoneSignature((INCREASING,)))
    np.testing.assert_allclose(inv(GRID), GRID, atol=1e-15)


def test_decreasing_argument_reads_one_minus_alpha():
    inv = compose_inverse(lambda x: -x, [Linear(0, 1)], MonotoneSignature((DECREASING,)))
    np.testing.assert_allclose(inv(GRID), -(1 - GRID), atol=1e-15)


def test_difference_of_two_variables():
    psi, phi = Normal(1, 2), Linear(0, 3)
    inv = compose_inverse(lambda y, x: y - x, [psi, phi], MonotoneSignature((INCREASING, DECREASING)))
    np.testing.assert_allclose(inv(GRID), psi.inverse(GRID) - phi.inverse(1 - GRID), atol=1e-12)


def test_signature_length_mismatch():
    with pytest.raises(ContractError):
        compose_inverse(lambda x: x, [Linear(0, 1), Linear(0, 1)], MonotoneSignature((INCREASING,)))


def test_invalid_direction():
    with pytest.raises(ContractError):
        MonotoneSignature((0,))


def test_composite_checks_alpha():
    inv = compose_inverse(lambda x: x, [Linear(0, 1)], MonotoneSignature((INCREASING,)))
    with pytest.raises(DomainError):
        inv(1.0)


def test_all_point_components_give_constant():
    inv = compose_inverse(lambda a, b: a * b, [Point(2), Point(3)], MonotoneSignature((INCREASING, INCREASING)))
    assert inv.constant == 6
    assert inv(0.3) == 6


@given(
    st.floats(-50, 50).filter(lambda c: abs(c) > 1e-3),
    st.floats(-50, 50),
    st.floats(-50, 50),
    st.floats(1e-2, 50),
)
def test_affine_flip_matches_transformed_linear(c, d, a, w):
    b = a + w
    sig = MonotoneSignature((INCREASING if c > 0 else DECREASING,))
    inv = compose_inverse(lambda x: c * x + d, [Linear(a, b)], sig)
    lo, hi = sorted((c * a + d, c * b + d))
    expected = (1 - GRID) * lo + GRID * hi
    np.testing.assert_allclose(inv(GRID), expected, rtol=1e-12, atol=1e-9)


def test_linear_residual_nonnegative_slope():
    y, x = Linear(20, 21), Linear(6, 7)
    beta = (2.4016, 2.9344)
    inv = residual_inverse(y, [x], linear(1), beta)
    np.testing.assert_allclose(inv(GRID), y.inverse(GRID) - 2.4016 - 2.9344 * x.inverse(1 - GRID), atol=1e-12)


def test_linear_residual_negative_slope_reads_alpha():
    y, x = Linear(20, 21), Linear(6, 7)
    inv = residual_inverse(y, [x], linear(1), (1.0, -2.0))
    np.testing.assert_allclose(inv(GRID), y.inverse(GRID) - 1.0 + 2.0 * x.inverse(GRID), atol=1e-12)


def test_michaelis_menten_residual():
    y, x = Linear(1, 2), Linear(3, 5)
    inv = residual_inverse(y, [x], michaelis_menten(), (2.0, 0.5))
    xr = x.inverse(1 - GRID)
    np.testing.assert_allclose(inv(GRID), y.inverse(GRID) - 2.0 * xr / (0.5 + xr), atol=1e-12)


def test_michaelis_menten_rejects_nonpositive_parameters():
    with pytest.raises(ConstraintError):
        residual_inverse(Linear(1, 2), [Linear(3, 5)], michaelis_menten(), (2.0, 0.0))


def _gompertz(x, beta):
    return beta[0] * np.exp(-beta[1] * np.exp(-beta[2] * x))


def test_gompertz_default_follows_increasing_argument_rule():
    y, x, beta = Linear(1, 2), Linear(0, 2), (2.0, 1.0, 0.7)
    inv = residual_inverse(y, [x], gompertz(), beta)
    np.testing.assert_allclose(inv(GRID), y.inverse(GRID) - _gompertz(x.inverse(1 - GRID), beta), atol=1e-12)
    check_nondecreasing(inv)


def test_gompertz_printed_form_behind_flag():
    y, x, beta = Linear(1, 2), Linear(0, 2), (2.0, 1.0, 0.7)
    inv = residual_inverse(y, [x], gompertz(), beta, strict_theorem_flip=True)
    np.testing.assert_allclose(inv(GRID), y.inverse(GRID) - _gompertz(x.inverse(GRID), beta), atol=1e-12)


def test_flag_ignored_for_other_models():
    y, x = Linear(1, 2), Linear(0, 2)
    a = residual_inverse(y, [x], linear(1), (0.5, 1.5))
    b = residual_inverse(y, [x], linear(1), (0.5, 1.5), strict_theorem_flip=True)
    np.testing.assert_array_equal(a(GRID), b(GRID))


@given(st.floats(-10, 10), st.floats(-100, 100), st.floats(-100, 100))
def test_zero_slope_makes_flip_irrelevant(beta0, ya, xa):
    y, x = Linear(ya, ya + 1), Linear(xa, xa + 2)
    inv = residual_inverse(y, [x], linear(1), (beta0, 0.0))
    np.testing.assert_array_equal(inv(GRID), y.inverse(GRID) - beta0)
    # the decreasing branch gives the same values at beta_1 = 0
    other = compose_inverse(
        lambda yv, xv: yv - beta0 - 0.0 * xv, [y, x], MonotoneSignature((INCREASING, INCREASING))
    )
    np.testing.assert_array_equal(inv(GRID), other(GRID))


def test_table1_residuals_nondecreasing_at_fit(table1):
    beta = fit(table1, linear(1), "lad").beta
    for o in table1.observations:
        values = residual_inverse(o.y, o.x, linear(1), beta)(GRID)
        assert np.all(np.diff(values) >= -1e-9)


def test_misdeclared_custom_model_rejected():
    # g increases in x but is declared decreasing
    model = custom(lambda xs, b: b[0] * xs[0], MonotoneSignature((DECREASING,)), p=1, dim=1)
    with pytest.raises(ContractError):
        residual_inverse(Linear(0, 0.1), [Linear(0, 10)], model, (1.0,))


def test_correct_custom_model_accepted():
    model = custom(lambda xs, b: b[0] * xs[0] ** 3, MonotoneSignature((INCREASING,)), p=1, dim=1)
    inv = residual_inverse(Linear(0, 1), [Linear(-1, 2)], model, (1.0,))
    check_nondecreasing(inv)


def test_check_nondecreasing_flags_drop():
    inv = compose_inverse(lambda x: -x, [Linear(0, 1)], MonotoneSignature((INCREASING,)))
    with pytest.raises(ContractError):
        check_nondecreasing(inv)


def test_predictor_count_mismatch():
    with pytest.raises(ContractError):
        residual_inverse(Linear(0, 1), [], linear(1), (0.0, 1.0))


def test_signature_reversed():
    assert MonotoneSignature((INCREASING, DECREASING)).reversed().directions == (DECREASING, INCREASING)
