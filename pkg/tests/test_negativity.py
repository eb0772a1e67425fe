import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cvact.errors import SeriesNotConverged
from cvact.fock import fock_elements
from cvact.gaussian import direct_sum
from cvact.negativity import (
    bound_extrema,
    l1_norm,
    lower_bound,
    mixture_bound,
    negativity_coherent_mixture,
    negativity_l1,
    negativity_pure,
    negativity_truncated,
    pure_bound,
)
from cvact.states import coherent_mixture_cm, r_from_nbar, random_cm, thermal_cm, tmsv_cm, vacuum_cm

from oracles import mixture_elements


def test_vacuum_converges_immediately():
    res = negativity_truncated(vacuum_cm(2))
    assert res.value == 0 and res.cutoff_used == 0 and res.converged


def test_tmsv_nbar_one():
    r = r_from_nbar(1.0)
    res = negativity_truncated(tmsv_cm(r), max_cutoff=64, cap=64)
    assert res.converged
    assert res.value == pytest.approx(1 + np.sqrt(2), rel=1e-6)


@pytest.mark.parametrize("r", [0.1, 0.3, 0.5])
def test_tmsv_dual_route(r):
    res = negativity_truncated(tmsv_cm(r))
    assert res.value == pytest.approx(negativity_pure(r), abs=1e-6)


@pytest.mark.parametrize("s2", [0.1, 0.25, 0.5, 1.0])
def test_mixture_dual_route(s2):
    assert negativity_truncated(coherent_mixture_cm(s2)).value == pytest.approx(
        negativity_coherent_mixture(s2), abs=1e-6
    )


def test_not_converged_is_reported():
    res = negativity_truncated(tmsv_cm(1.2), max_cutoff=12)
    assert not res.converged and res.cutoff_used == 12
    assert res.tail_estimate > 1e-8


def test_monotone_partial_sums():
    tdm = fock_elements(coherent_mixture_cm(0.7), 20)
    sums = [l1_norm(tdm.truncate(d)) for d in range(21)]
    assert np.all(np.diff(sums) >= 0)


def test_schedule_matches_per_cutoff_builds():
    cm = coherent_mixture_cm(0.4)
    res = negativity_truncated(cm, tol=1e-6)
    tdm = fock_elements(cm, res.cutoff_used)
    offdiag = np.abs(tdm.as_matrix()).sum() - tdm.trace
    assert res.value == pytest.approx(0.5 * offdiag, rel=1e-13)


def test_rejects_nonpositive_tol():
    with pytest.raises(ValueError):
        negativity_truncated(vacuum_cm(2), tol=0)


# --- closed forms ---------------------------------------------------------------


def test_negativity_pure_examples():
    assert negativity_pure(0) == 0
    assert negativity_pure(0.5) == pytest.approx(0.5 * (np.e - 1), abs=1e-12)
    assert negativity_pure(np.arcsinh(1)) == pytest.approx(1 + np.sqrt(2), abs=1e-12)


def test_negativity_mixture_zero():
    assert negativity_coherent_mixture(0.0) == 0


def test_negativity_mixture_brute_force():
    # l1 shortcut applied to closed-form elements summed up to cutoff 40
    el = mixture_elements(1.0, 40)
    brute = 0.5 * (np.abs(el).sum() - 1)
    assert negativity_coherent_mixture(1.0) == pytest.approx(brute, abs=1e-6)


def test_negativity_mixture_not_converged():
    with pytest.raises(SeriesNotConverged):
        negativity_coherent_mixture(1.0, terms=3)


def test_l1_norm_examples():
    assert l1_norm(fock_elements(vacuum_cm(2), 4)) == pytest.approx(1)
    tdm = fock_elements(thermal_cm([0.3, 0.7]), 10)
    assert l1_norm(tdm) == pytest.approx(tdm.trace, abs=1e-14)
    assert l1_norm(fock_elements(tmsv_cm(0.3), 20)) == pytest.approx(np.exp(0.6), abs=1e-6)
    assert negativity_l1(fock_elements(vacuum_cm(2), 0)) == 0


# --- lower bounds ------------------------------------------------------------------


def test_lower_bound_vacuum():
    lb = lower_bound(vacuum_cm(2))
    assert lb.husimi_value == pytest.approx(1, abs=1e-14)
    assert lb.lower_bound == pytest.approx(0, abs=1e-14)


@pytest.mark.parametrize("x", [0.05, 0.3, 1.0, 2.5])
def test_lower_bound_specializes(x):
    assert lower_bound(tmsv_cm(x)).lower_bound == pytest.approx(pure_bound(x), abs=1e-12)
    assert lower_bound(coherent_mixture_cm(x)).lower_bound == pytest.approx(mixture_bound(x), abs=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_bound_dominance_random(seed):
    rng = np.random.default_rng(seed)
    cm = random_cm(2, rng, max_nbar=0.5, max_squeeze=0.3)
    res = negativity_truncated(cm, tol=1e-6, max_cutoff=24)
    assert lower_bound(cm).lower_bound <= res.value + res.tail_estimate + 1e-12


def test_bounds_vanish_at_zero():
    assert pure_bound(0.0) == 0
    assert mixture_bound(0.0) == 0


def test_bound_extrema_pure():
    ext = bound_extrema("pure")
    # stationary point of the closed form sits at nbar = golden ratio - 1
    assert ext.argmax_nbar == pytest.approx((np.sqrt(5) - 1) / 2, abs=1e-6)
    assert pure_bound(r_from_nbar(ext.zero_crossing_nbar)) == pytest.approx(0, abs=1e-10)


def test_bound_extrema_mixture():
    ext = bound_extrema("coherent-mixture")
    assert ext.argmax_nbar == pytest.approx(0.5, abs=1e-6)
    assert ext.max_value == pytest.approx(0.5 * (np.exp(1) / 2 - 1), abs=1e-12)
    assert mixture_bound(ext.zero_crossing_nbar) == pytest.approx(0, abs=1e-10)


# --- classical and nonclassical inputs ---------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_product_inputs_give_zero(seed):
    rng = np.random.default_rng(seed)
    res = negativity_truncated(direct_sum(random_cm(1, rng), random_cm(1, rng)))
    assert res.converged and res.value <= 1e-8


@pytest.mark.parametrize("s2", [0.1, 0.5, 1.0])
def test_separable_nonclassical_positive(s2):
    assert negativity_truncated(coherent_mixture_cm(s2)).value > 1e-7
