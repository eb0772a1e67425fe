r"""Output negativity of the CNOT activation protocol for two-mode Gaussian inputs.

The protocol output is maximally correlated, so its negativity is
:math:`\tfrac12(\sum_{m,n}|\tilde\rho_{m,n}| - 1)`, half the excess of the
Fock-basis :math:`\ell_1` norm over one. Values computed here use the
standard-form representative of the input (local Gaussian unitaries chosen
to reach standard form) and are therefore upper bounds on the negativity of
quantumness, exact for pure states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.special import gammaln, logsumexp

from .errors import SeriesNotConverged
from .fock import TruncatedDensityMatrix, build_r_matrix, hermite_table, husimi_at
from .gaussian import assemble_standard_form, check_covariance, standard_form_invariants

DEFAULT_TOL = 1e-8
DEFAULT_MAX_CUTOFF = 36
CUTOFF_STEP = 4


@dataclass(frozen=True)
class NegativityResult:
    value: float
    cutoff_used: int
    tail_estimate: float
    converged: bool


class BoundResult(NamedTuple):
    lower_bound: float
    #: (pi e)^2 times the Husimi function at alpha1 = alpha2 = 1
    husimi_value: float


def standardize(cm) -> np.ndarray:
    """Standard-form representative of a two-mode covariance matrix."""
    return assemble_standard_form(standard_form_invariants(check_covariance(cm)))


def l1_norm(tdm: TruncatedDensityMatrix) -> float:
    return float(np.abs(tdm.elements).sum())


def negativity_l1(tdm: TruncatedDensityMatrix) -> float:
    """Maximally-correlated output negativity of a (truncated) input matrix."""
    return 0.5 * (l1_norm(tdm) - 1.0)


def _schedule(max_cutoff: int, step: int) -> list[int]:
    pts = list(range(0, max_cutoff + 1, step))
    if pts[-1] != max_cutoff:
        pts.append(max_cutoff)
    return pts


def negativity_truncated(
    cm,
    tol: float = DEFAULT_TOL,
    max_cutoff: int = DEFAULT_MAX_CUTOFF,
    *,
    step: int = CUTOFF_STEP,
    standard_form: bool = True,
    cap: int | None = None,
) -> NegativityResult:
    """Output negativity from the truncated Fock-basis l1 sum, with adaptive cutoff.

    The reported value is half the off-diagonal absolute sum, which equals
    ``(l1 - 1) / 2`` in the limit and stays non-negative under truncation.

    The cutoff runs over ``0, step, 2*step, ...`` up to ``max_cutoff``.
    Convergence is declared at the first cutoff where both the growth of
    the absolute sum since the previous cutoff and the trace deficit are
    below ``tol``; at cutoff 0 the growth is taken to be the trace deficit.
    If ``max_cutoff`` is reached first the best value is returned with
    ``converged=False``.

    Tables are built at geometrically growing cutoffs and every scheduled
    sub-box is read from the largest table, which gives the same values as
    building each cutoff separately.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    cm = standardize(cm) if standard_form else check_covariance(cm)
    r = build_r_matrix(cm)
    norm = 1.0 / np.sqrt(r.det_factor)
    sched = _schedule(max_cutoff, step)

    sums: dict[int, float] = {}
    traces: dict[int, float] = {}
    deficits: dict[int, float] = {}
    last = None
    i_checked = 0
    build = min(2 * step, max_cutoff)
    while True:
        absval = np.abs(hermite_table(r, build, cap).values) * norm
        for d in sched:
            if d > build or d in sums:
                continue
            box = absval[: d + 1, : d + 1, : d + 1, : d + 1]
            sums[d] = float(box.sum())
            diag = np.einsum("ijij->", box)
            traces[d] = float(diag)
            deficits[d] = 1.0 - traces[d]
        while i_checked < len(sched) and sched[i_checked] in sums:
            d = sched[i_checked]
            incr = deficits[d] if i_checked == 0 else sums[d] - sums[sched[i_checked - 1]]
            deficit = max(deficits[d], 0.0)
            last = NegativityResult(0.5 * (sums[d] - traces[d]), d, abs(incr) + deficit, False)
            if abs(incr) < tol and deficit <= tol:
                return NegativityResult(last.value, d, last.tail_estimate, True)
            i_checked += 1
        if build >= max_cutoff:
            return last
        build = min(max(2 * build, build + step), max_cutoff)


# ---------------------------------------------------------------------------
# closed forms


def negativity_pure(r: float) -> float:
    """Output negativity of a two-mode squeezed vacuum with squeezing ``r``."""
    if r < 0:
        raise ValueError("r must be non-negative")
    return 0.5 * np.expm1(2 * r)


def negativity_coherent_mixture(sigma2: float, terms: int = 5000, tail_tol: float = 1e-10) -> float:
    """Output negativity of the symmetric Gaussian mixture of coherent states.

    Sums over total photon number ``M`` the quantity
    ``(sum_J sqrt(binom(M, J)))**2 / s(M)`` with
    ``s(M) = sigma2 * (1/sigma2 + 2)**(M + 1)``. Summation stops once a
    geometric-ratio estimate of the remaining tail is below ``tail_tol``.

    Raises:
        SeriesNotConverged: if the tail criterion is not met within ``terms``.
    """
    if sigma2 < 0:
        raise ValueError("sigma2 must be non-negative")
    if sigma2 == 0:
        return 0.0
    log_q = np.log(1.0 / sigma2 + 2.0)
    total = 0.0
    prev = None
    for M in range(terms):
        J = np.arange(M + 1)
        log_binom = gammaln(M + 1) - gammaln(J + 1) - gammaln(M - J + 1)
        log_term = 2 * logsumexp(0.5 * log_binom) - np.log(sigma2) - (M + 1) * log_q
        term = np.exp(log_term)
        total += term
        if prev is not None and prev > 0:
            ratio = term / prev
            if ratio < 1 and term * ratio / (1 - ratio) < tail_tol:
                return 0.5 * (total - 1.0)
        prev = term
    raise SeriesNotConverged(f"series for sigma2={sigma2} did not converge in {terms} terms")


def pure_bound(r: float) -> float:
    """Husimi lower bound for the two-mode squeezed vacuum."""
    return 0.5 * (np.exp(2 * np.tanh(r)) / np.cosh(r) ** 2 - 1.0)


def mixture_bound(sigma2: float) -> float:
    """Husimi lower bound for the coherent-state mixture."""
    u = 2 * sigma2 + 1
    return 0.5 * (np.exp(4 * sigma2 / u) / u - 1.0)


def lower_bound(cm, *, standard_form: bool = True) -> BoundResult:
    """Analytic lower bound ``(husimi_value - 1) / 2`` on the output negativity."""
    cm = standardize(cm) if standard_form else check_covariance(cm)
    q = (np.pi * np.e) ** 2 * husimi_at(cm, 1.0, 1.0)
    return BoundResult(0.5 * (q - 1.0), q)


# ---------------------------------------------------------------------------
# parameterisation by local mean photon number


def _pure_bound_nbar(nbar: float) -> float:
    return pure_bound(np.arcsinh(np.sqrt(nbar)))


BOUND_FAMILIES = {
    "pure": _pure_bound_nbar,
    "coherent-mixture": mixture_bound,
}


class BoundExtrema(NamedTuple):
    argmax_nbar: float
    max_value: float
    zero_crossing_nbar: float


def bound_extrema(family: str, xtol: float = 1e-9) -> BoundExtrema:
    """Maximum and positive zero crossing of a family's lower bound in ``nbar``.

    The maximum is found by bounded scalar minimisation on [0, 5] and the
    zero crossing by Brent's method to the right of the maximum.
    """
    f = BOUND_FAMILIES[family]
    res = minimize_scalar(lambda n: -f(n), bounds=(0.0, 5.0), method="bounded",
                          options={"xatol": xtol})
    hi = 2 * res.x + 1
    while f(hi) > 0:
        hi *= 2
    zero = brentq(f, res.x, hi, xtol=xtol)
    return BoundExtrema(float(res.x), float(-res.fun), float(zero))
