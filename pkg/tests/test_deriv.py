import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import CORPUS, MAX_K, all_oracles, relative_error
from grossdiff.deriv import (
    H_GRID,
    INFINITE_PART_DETECTED,
    MAX_ORDER,
    BaselineResult,
    complex_step,
    differentiate,
    fd_backward,
    fd_central,
    fd_forward,
    minimal_root_scan,
    newton_root,
    taylor_coefficients,
)
from grossdiff.errors import DerivativeVanished, EvaluationError, GrossError, OrderTooLarge, PreconditionViolated
from grossdiff.expr import GrossDomain, parse

ORACLES = all_oracles()


# -- worked examples -----------------------------------------------------------


def test_cube_at_five():
    r = differentiate("x*x*x", 5, 3)
    assert r.derivatives == (125.0, 75.0, 30.0, 6.0)
    assert r.coefficients == (125.0, 75.0, 15.0, 1.0)
    assert r.warnings == ()


def test_truncated_sine_model_is_exact():
    assert differentiate("x + x - x*x*x/6", 0, 3).derivatives == (0.0, 2.0, 0.0, -1.0)


def test_library_sine():
    d = differentiate("x + sin(x)", 0, 3).derivatives
    assert d == pytest.approx([0, 2, 0, -1], abs=1e-12)


def test_rational_at_three():
    d = differentiate("(x*x+1)/x", 3, 3).derivatives
    assert d == pytest.approx([3.333333, 0.888889, 0.074074, -0.074074], abs=1e-6)
    assert d == pytest.approx([10 / 3, 8 / 9, 2 / 27, -2 / 27], abs=1e-12)


def test_taylor_coefficients_examples():
    assert taylor_coefficients("x*x*x", 5, 3) == [125, 75, 15, 1]
    assert taylor_coefficients("7", -1.25, 2) == [7, 0, 0]
    want = [1 / math.factorial(j) for j in range(5)]
    assert taylor_coefficients("exp(x)", 0, 4) == pytest.approx(want, rel=1e-15)


def test_json_record_shape():
    assert differentiate("x*x*x", 5, 3).to_json() == {
        "y": 5.0,
        "order": 3,
        "derivatives": [125.0, 75.0, 30.0, 6.0],
        "coefficients": [125.0, 75.0, 15.0, 1.0],
        "warnings": [],
    }


# -- against symbolic derivatives ----------------------------------------------


@pytest.mark.parametrize("text, y, want", ORACLES, ids=[f"{t}@{y}" for t, y, _ in ORACLES])
def test_oracle_suite(text, y, want):
    got = differentiate(text, y, MAX_K).derivatives
    for j, (g, w) in enumerate(zip(got, want)):
        assert relative_error(g, w) <= 1e-9, (j, g, w)


def test_corpus_is_large_enough():
    assert len(CORPUS) >= 10
    assert all(len(ys) >= 5 for _, _, ys in CORPUS)


class CountingDomain(GrossDomain):
    def __init__(self, floor):
        super().__init__(floor)
        self.calls = 0

    def variable(self, x):
        self.calls += 1
        return super().variable(x)


@pytest.mark.parametrize("text", [c[0] for c in CORPUS])
def test_single_evaluation(text):
    dom = CountingDomain(-4)
    differentiate(text, 1.0, 4, domain=dom)
    assert dom.calls == 1


def _best_central_error(text, y, exact):
    errs = []
    for h in H_GRID:
        try:
            errs.append(abs(fd_central(text, y, h).estimate - exact))
        except GrossError:
            pass
    return min(errs)


@pytest.mark.parametrize("text, y, want", ORACLES, ids=[f"{t}@{y}" for t, y, _ in ORACLES])
def test_no_worse_than_best_central_difference(text, y, want):
    g = abs(differentiate(text, y, 1).derivatives[1] - want[1])
    assert g <= _best_central_error(text, y, want[1])


@pytest.mark.parametrize("text", ["x*x*x", "(x*x+1)/x", "1/(1 + x*x)", "(x - 1)/(x + 2)^2"])
def test_strictly_better_on_polynomial_and_rational_items(text):
    rows = [(y, w) for t, y, w in ORACLES if t == text]
    g = max(abs(differentiate(text, y, 1).derivatives[1] - w[1]) for y, w in rows)
    c = max(_best_central_error(text, y, w[1]) for y, w in rows)
    assert g < c


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([c[0] for c in CORPUS]), st.floats(0.55, 2.9), st.integers(0, 17))
def test_order_prefix(text, y, k):
    lo = taylor_coefficients(text, y, k)
    hi = taylor_coefficients(text, y, k + 1)
    for a, b in zip(lo, hi):
        assert abs(a - b) <= 1e-12 * max(abs(a), abs(b), 1e-300)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([c[0] for c in CORPUS]), st.floats(0.55, 2.9), st.integers(0, MAX_ORDER))
def test_factorial_scaling_is_exact(text, y, k):
    r = differentiate(text, y, k)
    assert r.derivatives[0] == r.coefficients[0]
    for j, (c, d) in enumerate(zip(r.coefficients, r.derivatives)):
        # j! is exact in binary64, so d is the correctly rounded j!*c
        assert d == float(math.factorial(j)) * c
        if c != 0 and math.isfinite(d):
            assert d / c == pytest.approx(math.factorial(j), rel=2**-52)


# -- failure modes ---------------------------------------------------------------


def test_order_limits():
    differentiate("x", 0, MAX_ORDER)
    with pytest.raises(OrderTooLarge):
        differentiate("x", 0, MAX_ORDER + 1)
    with pytest.raises(ValueError):
        differentiate("x", 0, -1)
    with pytest.raises(ValueError):
        differentiate("x", math.nan, 1)


def test_infinite_part_is_reported_not_raised():
    r = differentiate("1/x", 0, 2)
    assert r.warnings == (INFINITE_PART_DETECTED,)
    assert r.value.has_infinite_part
    assert len(r.coefficients) == 3


def test_domain_error_carries_span():
    with pytest.raises(EvaluationError) as info:
        differentiate("x + ln(x - 2)", 1, 2)
    assert info.value.span == (4, 13)


# -- baselines -------------------------------------------------------------------------


def test_central_difference_on_cube():
    assert fd_central("x*x*x", 5, 1e-3).estimate == pytest.approx(75 + 1e-6, abs=1e-5)
    assert abs(fd_central("x*x*x", 5, 1e-13).estimate - 75) > 1e-3


def test_affine_is_exact_for_one_sided_differences():
    assert fd_forward("2*x", 3.0, 0.5).estimate == 2.0
    assert fd_backward("2*x", 3.0, 0.25).estimate == 2.0


def test_complex_step():
    assert complex_step("x*x*x", 5, 1e-100).estimate == pytest.approx(75, rel=1e-12)
    assert complex_step("x", 2.5, 1e-7).estimate == 1.0
    assert complex_step("sin(x)", 1, 1e-20).estimate == pytest.approx(math.cos(1), rel=1e-15)


def test_step_must_be_positive():
    for fn in (fd_forward, fd_backward, fd_central, complex_step):
        with pytest.raises(ValueError):
            fn("x", 0, 0.0)
    with pytest.raises(ValueError):
        BaselineResult("central", -1.0, 0.0)


# -- root finding -------------------------------------------------------------------------


def test_newton_examples():
    r = newton_root("x*x - 4", 3, tol=1e-12)
    assert r.converged and abs(r.root - 2) <= 1e-12 and r.iterations <= 8
    r = newton_root("x - 1", 100)
    assert r.root == 1 and r.iterations == 1
    assert not newton_root("x*x + 1", 1, max_iter=50).converged


def test_newton_flat_start():
    with pytest.raises(DerivativeVanished):
        newton_root("x*x + 1", 0)


def test_scan_examples():
    assert abs(minimal_root_scan("sin(x)", 1, 7, n=100) - math.pi) <= 1e-10
    assert minimal_root_scan("x*x + 1", 0, 10) is None
    assert abs(minimal_root_scan("(x-2)*(x-5)", 0, 10, n=100) - 2) <= 1e-12


def test_scan_preconditions():
    with pytest.raises(PreconditionViolated):
        minimal_root_scan("1 - x", 2, 3)
    with pytest.raises(PreconditionViolated):
        minimal_root_scan("1 - x", 3, 2)
    with pytest.raises(PreconditionViolated):
        minimal_root_scan("1 - x", 0, 2, n=1)


def test_parsed_expr_accepted():
    assert differentiate(parse("x*x"), 2, 1).derivatives == (4.0, 4.0)
