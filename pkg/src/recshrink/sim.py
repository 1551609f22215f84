"""Seeded Monte Carlo: the estimator-comparison study and the risk oracle.

Everything is reproducible from a single root seed.  ``mc_compare`` spawns
one child stream per theta2 cell (``numpy.random.SeedSequence.spawn``), so
cells may be computed in any order, or concurrently, without changing any
number; within a cell the draws happen in one fixed batch order.
``mc_oracle_risk`` simulates the estimators straight from their chi-square
pivot representations and is the independent check on every closed form in
``risk``.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .estimators import critical_values
from .records import DesignPair, Variant
from .risk import DEFAULT_CONVENTION, BoundConvention, shrink_risk

CSV_COLUMNS = ("n1", "n2", "theta2", "bias_mle", "bias_pt", "bias_s", "eff_pt", "eff_s")


@dataclass(frozen=True)
class SimConfig:
    """One estimator-comparison run over a grid of theta2 values."""

    design: DesignPair
    theta2_grid: tuple[float, ...]
    seed: int
    theta1: float = 1.0
    alpha: float = 0.16
    k: float = 1.0
    replicates: int = 100_000

    def __post_init__(self):
        object.__setattr__(self, "theta2_grid", tuple(float(t) for t in self.theta2_grid))
        if not self.theta2_grid:
            raise ValueError("theta2_grid is empty")
        if any(t <= 0.0 for t in self.theta2_grid):
            raise ValueError("theta2 values must be positive")
        if not self.theta1 > 0.0:
            raise ValueError(f"theta1 must be positive, got {self.theta1}")
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not (0.0 <= self.k <= 1.0):
            raise ValueError(f"k must lie in [0, 1], got {self.k}")
        if self.replicates < 1:
            raise ValueError(f"need at least one replicate, got {self.replicates}")


@dataclass(frozen=True)
class McRow:
    """Bias/MSE/efficiency estimates for one theta2 cell."""

    theta2: float
    bias_mle: float
    bias_pt: float
    bias_s: float
    se_bias_mle: float
    se_bias_pt: float
    se_bias_s: float
    mse_mle: float
    mse_pt: float
    mse_s: float
    se_mse_mle: float
    se_mse_pt: float
    se_mse_s: float
    eff_pt: float
    eff_s: float
    se_eff_pt: float
    se_eff_s: float


@dataclass(frozen=True)
class McReport:
    """All cells of a comparison run, with the config that produced them."""

    config: SimConfig
    rows: tuple[McRow, ...]

    def to_csv_rows(self):
        """Rows in the compact table layout (no standard errors)."""
        d = self.config.design
        out = [list(CSV_COLUMNS)]
        for r in self.rows:
            out.append([d.n1, d.n2, r.theta2, r.bias_mle, r.bias_pt, r.bias_s,
                        r.eff_pt, r.eff_s])
        return out

    def to_json_dict(self):
        """Full-precision dict including standard errors and the config."""
        cfg = self.config
        return {
            "design": {"n1": cfg.design.n1, "n2": cfg.design.n2,
                       "variant": cfg.design.variant.value},
            "theta1": cfg.theta1,
            "alpha": cfg.alpha,
            "k": cfg.k,
            "replicates": cfg.replicates,
            "seed": cfg.seed,
            "rows": [asdict(r) for r in self.rows],
        }


def _mle_batch(rng: np.random.Generator, n: int, scale: float, reps: int,
               variant: Variant) -> np.ndarray:
    """Replicated record-sample MLEs.

    Records are cumulative sums of inverse-CDF exponential gaps, matching
    ``records.sample_exponential_records``; the MLE only needs the gap sums,
    so the cumulative sum itself is never materialized.
    """
    gaps = -scale * np.log1p(-rng.random((reps, n)))
    if variant is Variant.KNOWN_LOCATION:
        return gaps.sum(axis=1) / n           # X_{U(n)} / n
    return gaps[:, 1:].sum(axis=1) / n        # (X_{U(n)} - X_{U(1)}) / n


def _mean_se(x: np.ndarray) -> tuple[float, float]:
    m = float(x.mean())
    if x.size < 2:
        return m, math.nan
    return m, float(x.std(ddof=1) / math.sqrt(x.size))


def _ratio_se(num: np.ndarray, den: np.ndarray) -> float:
    """Delta-method SE of mean(num)/mean(den) from paired replicate values."""
    reps = num.size
    if reps < 2:
        return math.nan
    m1, m2 = num.mean(), den.mean()
    v11 = num.var(ddof=1) / reps
    v22 = den.var(ddof=1) / reps
    v12 = float(np.cov(num, den, ddof=1)[0, 1]) / reps
    var = (m1 / m2) ** 2 * (v11 / m1**2 + v22 / m2**2 - 2.0 * v12 / (m1 * m2))
    return math.sqrt(max(var, 0.0))


def mc_compare(config: SimConfig) -> McReport:
    """Bias, MSE, and MSE efficiency of the MLE, pre-test, and shrinkage rules.

    All three target theta1; efficiency is mse(mle)/mse(rule).  Identical
    configs produce bit-identical reports.
    """
    design = config.design
    c1, c2 = critical_values(design, config.alpha)
    children = np.random.SeedSequence(config.seed).spawn(len(config.theta2_grid))
    rows = []
    for theta2, child in zip(config.theta2_grid, children):
        rng = np.random.default_rng(child)
        t1 = _mle_batch(rng, design.n1, config.theta1, config.replicates, design.variant)
        t2 = _mle_batch(rng, design.n2, theta2, config.replicates, design.variant)
        ratio = t1 / t2
        accepted = (ratio > c1) & (ratio < c2)
        pool = (design.n1 * t1 + design.n2 * t2) / (design.n1 + design.n2)
        pt = np.where(accepted, pool, t1)
        sh = np.where(accepted, config.k * pool + (1.0 - config.k) * t1, t1)

        e_mle = t1 - config.theta1
        e_pt = pt - config.theta1
        e_sh = sh - config.theta1
        sq_mle, sq_pt, sq_sh = e_mle**2, e_pt**2, e_sh**2
        bias_mle, se_b_mle = _mean_se(e_mle)
        bias_pt, se_b_pt = _mean_se(e_pt)
        bias_sh, se_b_sh = _mean_se(e_sh)
        mse_mle, se_m_mle = _mean_se(sq_mle)
        mse_pt, se_m_pt = _mean_se(sq_pt)
        mse_sh, se_m_sh = _mean_se(sq_sh)
        rows.append(McRow(
            theta2=theta2,
            bias_mle=bias_mle, bias_pt=bias_pt, bias_s=bias_sh,
            se_bias_mle=se_b_mle, se_bias_pt=se_b_pt, se_bias_s=se_b_sh,
            mse_mle=mse_mle, mse_pt=mse_pt, mse_s=mse_sh,
            se_mse_mle=se_m_mle, se_mse_pt=se_m_pt, se_mse_s=se_m_sh,
            eff_pt=mse_mle / mse_pt, eff_s=mse_mle / mse_sh,
            se_eff_pt=_ratio_se(sq_mle, sq_pt), se_eff_s=_ratio_se(sq_mle, sq_sh),
        ))
    return McReport(config, tuple(rows))


def mc_oracle_risk(
    design: DesignPair,
    delta: float,
    alpha: float,
    k: float,
    replicates: int,
    seed: int,
) -> tuple[float, float]:
    """(estimate, standard error) of the weighted-loss shrinkage risk.

    Draws the scale MLEs straight from their chi-square pivots
    (2*n_i*mle_i/theta_i ~ chi2 with the variant's df), applies the
    shrinkage rule, and averages the weighted squared error.  This path
    shares nothing with the closed forms in ``risk`` beyond the critical
    values, which is what makes it an oracle for them.
    """
    if not delta > 0.0:
        raise ValueError(f"delta must be positive, got {delta}")
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if not (0.0 <= k <= 1.0):
        raise ValueError(f"k must lie in [0, 1], got {k}")
    if replicates < 2:
        raise ValueError("need at least two replicates for a standard error")
    m1, m2 = design.shapes
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    t1 = rng.standard_gamma(m1, replicates) / design.n1          # theta1 = 1
    t2 = delta * rng.standard_gamma(m2, replicates) / design.n2
    c1, c2 = critical_values(design, alpha)
    ratio = t1 / t2
    accepted = (ratio > c1) & (ratio < c2)
    pool = (design.n1 * t1 + design.n2 * t2) / (design.n1 + design.n2)
    est = np.where(accepted, k * pool + (1.0 - k) * t1, t1)
    wse = (est - 1.0) ** 2
    return float(wse.mean()), float(wse.std(ddof=1) / math.sqrt(replicates))


@dataclass(frozen=True)
class ValidationCell:
    """Closed-form vs oracle comparison at one parameter point."""

    n1: int
    n2: int
    delta: float
    alpha: float
    k: float
    convention: str
    closed_form: float
    mc_estimate: float
    mc_se: float
    z: float
    ok: bool


DEFAULT_VALIDATION_DESIGNS = ((2, 2), (5, 6), (10, 7))
DEFAULT_VALIDATION_DELTAS = (0.5, 1.0, 2.0)
DEFAULT_VALIDATION_ALPHAS = (0.16, 0.38)
DEFAULT_VALIDATION_KS = (0.21, 1.0)


def convention_validation(
    replicates: int = 200_000,
    seed: int = 20260811,
    designs=DEFAULT_VALIDATION_DESIGNS,
    deltas=DEFAULT_VALIDATION_DELTAS,
    alphas=DEFAULT_VALIDATION_ALPHAS,
    ks=DEFAULT_VALIDATION_KS,
    variant: Variant = Variant.KNOWN_LOCATION,
    z_limit: float = 3.0,
) -> dict:
    """Compare both bound conventions against the Monte Carlo oracle.

    Returns per-cell results and the list of conventions whose closed form
    stayed within ``z_limit`` oracle standard errors at every cell.  The MC
    estimate is shared between conventions, so the comparison is paired.
    """
    cells = []
    cell_seed = np.random.SeedSequence(seed).generate_state(1)[0]
    for idx, ((n1, n2), delta, alpha, k) in enumerate(
        (dsn, d, a, kk) for dsn in designs for d in deltas for a in alphas for kk in ks
    ):
        design = DesignPair(n1, n2, variant)
        mc, se = mc_oracle_risk(design, delta, alpha, k, replicates, int(cell_seed) + idx)
        for conv in BoundConvention:
            cf = shrink_risk(design, delta, alpha, k, conv)
            z = (cf - mc) / se
            cells.append(ValidationCell(
                n1, n2, delta, alpha, k, conv.value, cf, mc, se, z, abs(z) <= z_limit
            ))
    surviving = [
        conv.value
        for conv in BoundConvention
        if all(c.ok for c in cells if c.convention == conv.value)
    ]
    return {
        "replicates": replicates,
        "seed": seed,
        "z_limit": z_limit,
        "cells": cells,
        "surviving_conventions": surviving,
        "default_convention": DEFAULT_CONVENTION.value,
        "default_ok": DEFAULT_CONVENTION.value in surviving,
    }
