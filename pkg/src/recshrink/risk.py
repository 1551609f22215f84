"""Exact bias, MSE, and weighted-loss risk of the pre-test and shrinkage rules.

Write G_i for the gamma pivot of series i, so mle_i = theta_i * G_i / n_i
with shape m_i (= n_i for a known location, n_i - 1 otherwise).  The
acceptance event {c1 < mle1/mle2 < c2} becomes {d1 < B < d2} for
B = G1/(G1+G2) ~ Beta(m1, m2), with

    d_j = c_j*n1*delta / (c_j*n1*delta + n2),       delta = theta2/theta1.

Truncated pivot moments then reduce to differences of the regularized
incomplete beta at shifted shapes, and under the weighted loss
L(d; t) = (d-t)^2/t^2 the risk of the shrinkage rule is an exact quadratic
in the coefficient k:

    risk(delta, k) = h2(delta)*k^2 + h1(delta)*k + h0,    h0 = 1/n1,

with k = 1 giving the pre-test rule and k = 0 the bare MLE.  An alternative
linear map d_j = 1 - n2/(c_j*n1*delta) is kept behind
``BoundConvention.PAPER_LINEAR`` for comparison; the Monte Carlo validation
run (``sim.convention_validation``, ``recshrink validate``) rejects it and
selects ``DERIVED_RATIO``, which is the default everywhere.

Every bracketed beta term is evaluated as a single difference of
regularized values (never expanded) to avoid cancellation.
"""

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .estimators import critical_values
from .records import DesignPair, Variant
from .special import reg_inc_beta, reg_inc_beta_grid


class BoundConvention(enum.Enum):
    """Map from F critical values to Beta-scale acceptance bounds."""

    PAPER_LINEAR = "paper"
    DERIVED_RATIO = "derived"


DEFAULT_CONVENTION = BoundConvention.DERIVED_RATIO

# shape shifts (i, j) of the regularized-beta brackets the moments need
_SHIFTS = ((1, 0), (0, 1), (2, 0), (0, 2), (1, 1))


@dataclass(frozen=True)
class IntegrationBounds:
    d1: float
    d2: float
    convention: BoundConvention


@dataclass(frozen=True)
class RiskParams:
    """Inputs of a single bias/MSE evaluation; risk itself is theta1-free."""

    design: DesignPair
    delta: float
    alpha: float
    k: float = 1.0
    theta1: float = 1.0
    convention: BoundConvention = DEFAULT_CONVENTION

    def __post_init__(self):
        if not self.delta > 0.0:
            raise ValueError(f"delta must be positive, got {self.delta}")
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not (0.0 <= self.k <= 1.0):
            raise ValueError(f"k must lie in [0, 1], got {self.k}")
        if not self.theta1 > 0.0:
            raise ValueError(f"theta1 must be positive, got {self.theta1}")


def d_bounds(
    design: DesignPair,
    delta: float,
    c1: float,
    c2: float,
    convention: BoundConvention = DEFAULT_CONVENTION,
) -> IntegrationBounds:
    """Beta-scale acceptance bounds for the given critical values, clamped to [0, 1]."""
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if c1 > c2:
        raise ValueError(f"need c1 <= c2, got ({c1}, {c2})")
    n1, n2 = design.n1, design.n2

    def to_beta(c: float) -> float:
        t = c * n1 * delta
        if convention is BoundConvention.DERIVED_RATIO:
            v = t / (t + n2)
        else:
            v = 1.0 - n2 / t if t > 0.0 else -math.inf
        return min(1.0, max(0.0, v))

    return IntegrationBounds(to_beta(c1), to_beta(c2), convention)


def _brackets(design: DesignPair, bounds: IntegrationBounds) -> dict:
    """I_{d2} - I_{d1} at the five shifted shape pairs, as single differences."""
    m1, m2 = design.shapes
    out = {}
    for i, j in _SHIFTS:
        a, b = m1 + i, m2 + j
        out[(i, j)] = reg_inc_beta(bounds.d2, a, b) - reg_inc_beta(bounds.d1, a, b)
    return out


def _coeffs_from_brackets(design: DesignPair, delta, br) -> tuple:
    """(h2, h1, h0) of the risk quadratic; delta may be a scalar or an array."""
    n1, n2 = design.n1, design.n2
    m1, m2 = design.shapes
    lam = design.lam
    e1 = m1 / n1
    v2 = delta * m2 / n2
    q1 = m1 * (m1 + 1) / n1**2
    q2 = delta**2 * m2 * (m2 + 1) / n2**2
    q12 = delta * m1 * m2 / (n1 * n2)
    h2 = lam * lam * (q1 * br[(2, 0)] - 2.0 * q12 * br[(1, 1)] + q2 * br[(0, 2)])
    h1 = 2.0 * lam * (-q1 * br[(2, 0)] + q12 * br[(1, 1)] + e1 * br[(1, 0)] - v2 * br[(0, 1)])
    h0 = q1 - 2.0 * e1 + 1.0
    return h2, h1, h0


def risk_k_coefficients(
    design: DesignPair,
    delta: float,
    alpha: float,
    convention: BoundConvention = DEFAULT_CONVENTION,
) -> tuple[float, float, float]:
    """(h2, h1, h0) with risk(delta, k) = h2*k^2 + h1*k + h0."""
    c1, c2 = critical_values(design, alpha)
    br = _brackets(design, d_bounds(design, delta, c1, c2, convention))
    return _coeffs_from_brackets(design, delta, br)


def risk_k_coefficients_grid(
    design: DesignPair,
    deltas,
    alpha: float,
    convention: BoundConvention = DEFAULT_CONVENTION,
):
    """Vectorized risk_k_coefficients over an array of delta values."""
    dv = np.asarray(deltas, dtype=float)
    if np.any(dv <= 0.0):
        raise ValueError("delta values must be positive")
    c1, c2 = critical_values(design, alpha)
    n1, n2 = design.n1, design.n2
    if convention is BoundConvention.DERIVED_RATIO:
        t1 = c1 * n1 * dv
        t2 = c2 * n1 * dv
        d1 = t1 / (t1 + n2)
        d2 = t2 / (t2 + n2)
    else:
        with np.errstate(divide="ignore"):
            d1 = 1.0 - n2 / (c1 * n1 * dv)
            d2 = 1.0 - n2 / (c2 * n1 * dv)
    d1 = np.clip(d1, 0.0, 1.0)
    d2 = np.clip(d2, 0.0, 1.0)
    m1, m2 = design.shapes
    br = {}
    for i, j in _SHIFTS:
        a, b = m1 + i, m2 + j
        br[(i, j)] = reg_inc_beta_grid(d2, a, b) - reg_inc_beta_grid(d1, a, b)
    return _coeffs_from_brackets(design, dv, br)


def shrink_risk(
    design: DesignPair,
    delta: float,
    alpha: float,
    k: float,
    convention: BoundConvention = DEFAULT_CONVENTION,
) -> float:
    """Weighted-loss risk of the shrinkage rule; free of theta1."""
    if not (0.0 <= k <= 1.0):
        raise ValueError(f"k must lie in [0, 1], got {k}")
    h2, h1, h0 = risk_k_coefficients(design, delta, alpha, convention)
    return h2 * k * k + h1 * k + h0


def pt_risk(
    design: DesignPair,
    delta: float,
    alpha: float,
    convention: BoundConvention = DEFAULT_CONVENTION,
) -> float:
    """Weighted-loss risk of the pre-test rule (shrinkage at k = 1)."""
    return shrink_risk(design, delta, alpha, 1.0, convention)


def shrink_risk_grid(
    design: DesignPair,
    deltas,
    alpha: float,
    k: float,
    convention: BoundConvention = DEFAULT_CONVENTION,
) -> np.ndarray:
    """Vectorized shrink_risk over an array of delta values."""
    if not (0.0 <= k <= 1.0):
        raise ValueError(f"k must lie in [0, 1], got {k}")
    h2, h1, h0 = risk_k_coefficients_grid(design, deltas, alpha, convention)
    return h2 * k * k + h1 * k + h0


def shrink_moments(params: RiskParams) -> tuple[float, float]:
    """(bias, mse) of the shrinkage estimator in original units."""
    design = params.design
    th1 = params.theta1
    th2 = params.delta * th1
    n1, n2 = design.n1, design.n2
    m1, m2 = design.shapes
    lam, k = design.lam, params.k
    c1, c2 = critical_values(design, params.alpha)
    br = _brackets(design, d_bounds(design, params.delta, c1, c2, params.convention))

    mean_mle = th1 * m1 / n1
    e1a = th1 * (m1 / n1) * br[(1, 0)]                       # E[mle1; accept]
    e2a = th2 * (m2 / n2) * br[(0, 1)]                       # E[mle2; accept]
    e11a = th1 * th1 * m1 * (m1 + 1) / n1**2 * br[(2, 0)]    # E[mle1^2; accept]
    e22a = th2 * th2 * m2 * (m2 + 1) / n2**2 * br[(0, 2)]
    e12a = th1 * th2 * m1 * m2 / (n1 * n2) * br[(1, 1)]

    mean = mean_mle - k * lam * e1a + k * lam * e2a
    second = (
        th1 * th1 * m1 * (m1 + 1) / n1**2
        + (k * k * lam * lam - 2.0 * k * lam) * e11a
        + 2.0 * (k * lam - k * k * lam * lam) * e12a
        + k * k * lam * lam * e22a
    )
    bias = mean - th1
    mse = second - 2.0 * th1 * mean + th1 * th1
    return bias, mse


def pt_moments(params: RiskParams) -> tuple[float, float]:
    """(bias, mse) of the pre-test estimator; k in the params is ignored."""
    return shrink_moments(replace(params, k=1.0))


def pooled_risk_quadratic(design: DesignPair) -> tuple[float, float, float]:
    """(a, b, c) with r0(delta) = a*delta^2 + b*delta + c, the always-pool risk."""
    n1, n2 = design.n1, design.n2
    m1, m2 = design.shapes
    lam = design.lam
    e1 = m1 / n1
    v2 = m2 / n2
    q1 = m1 * (m1 + 1) / n1**2
    w2 = m2 * (m2 + 1) / n2**2
    w12 = m1 * m2 / (n1 * n2)
    a = lam * lam * w2
    b = 2.0 * lam * ((1.0 - lam) * w12 - v2)
    c = (1.0 - lam) ** 2 * q1 - 2.0 * (1.0 - lam) * e1 + 1.0
    return a, b, c


def boundary_risks(design: DesignPair, delta: float) -> tuple[float, float]:
    """(r0, r1): risks of always pooling and of the single-sample MLE.

    r1 = 1/n1 under both variants (the location-scale MLE trades bias for
    variance at no MSE cost).
    """
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    n1, n2 = design.n1, design.n2
    if design.variant is Variant.KNOWN_LOCATION:
        r0 = (n1 + n2 * delta * delta + n2 * n2 * delta * delta + n2 * n2
              - 2.0 * n2 * n2 * delta) / (n1 + n2) ** 2
    else:
        a, b, c = pooled_risk_quadratic(design)
        r0 = a * delta * delta + b * delta + c
    return r0, 1.0 / n1
