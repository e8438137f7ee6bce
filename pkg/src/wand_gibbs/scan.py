"""Activity-grid scanning: per-point solution tables with regime labels."""

from __future__ import annotations

from dataclasses import dataclass

from .model import DEFAULT_RESIDUAL_TOL, ModelParams
from .solver import solve_symmetric, find_asymmetric
from .chain import transition_matrix, spectrum
from .extremality import kappa, gamma_bound
from .rootfind import grid

__all__ = [
    "CLASS_NONEXTREMAL_KS",
    "CLASS_EXTREMAL_MSW",
    "CLASS_UNDETERMINED",
    "CSV_COLUMNS",
    "ScanRow",
    "classify",
    "theta_grid",
    "scan_row",
    "scan_rows",
    "format_value",
]

CLASS_NONEXTREMAL_KS = "nonextremal-KS"
CLASS_EXTREMAL_MSW = "extremal-MSW"
CLASS_UNDETERMINED = "undetermined"

#: flat-table column order, stable across releases
CSV_COLUMNS = (
    "theta", "z_sym", "z_asym_1", "z_asym_2", "tisgm_count",
    "s1", "s2", "lambda2", "ks_value", "kappa", "gamma", "product",
    "classification",
)


@dataclass(frozen=True)
class ScanRow:
    """One activity grid point: solutions, spectra, and regime label.

    All spectral and certificate quantities refer to the symmetric law.
    The asymmetric columns hold the representative root with z1 > z2 and
    are None above the critical activity.
    """

    theta: float
    z_sym: float
    z_asym_1: float | None
    z_asym_2: float | None
    tisgm_count: int
    s1: float
    s2: float
    lambda2: float
    ks_value: float
    kappa: float
    gamma: float
    product: float
    classification: str

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in CSV_COLUMNS}


def classify(ks_value: float, product: float) -> str:
    """Regime label from the two criteria; both inequalities are strict.

    The Kesten-Stigum side is checked first, so the two labelled regimes
    are mutually exclusive by construction; the boundary ks_value = 1 is
    undetermined, never non-extremal.
    """
    if ks_value > 1.0:
        return CLASS_NONEXTREMAL_KS
    if product < 1.0:
        return CLASS_EXTREMAL_MSW
    return CLASS_UNDETERMINED


def theta_grid(theta_min: float, theta_max: float, steps: int, scale: str = "linear") -> list:
    """Grid with exact endpoints; ``scale`` is ``linear`` or ``log``."""
    if not theta_min > 0.0 or not theta_max > theta_min:
        raise ValueError(f"need 0 < theta_min < theta_max, got ({theta_min}, {theta_max})")
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    if scale not in ("linear", "log"):
        raise ValueError(f"scale must be 'linear' or 'log', got {scale!r}")
    return grid(theta_min, theta_max, steps, log_scale=scale == "log")


def scan_row(params: ModelParams, p0: float = 0.5,
             tol: float = DEFAULT_RESIDUAL_TOL) -> ScanRow:
    """Solve everything at one (k, theta) and classify the regime."""
    sym = solve_symmetric(params, tol)
    asym = find_asymmetric(params, tol=tol)
    report = spectrum(transition_matrix(sym, params.theta), params.k)
    kap = kappa(sym, params.theta)
    gam = gamma_bound(p0, sym, params.theta)
    product = params.k * kap * gam
    z_asym_1 = z_asym_2 = None
    if asym:
        z_asym_1, z_asym_2 = asym[0].z1, asym[0].z2
    return ScanRow(
        theta=params.theta,
        z_sym=sym.z1,
        z_asym_1=z_asym_1,
        z_asym_2=z_asym_2,
        tisgm_count=1 + len(asym),
        s1=report.s1,
        s2=report.s2,
        lambda2=report.lambda2,
        ks_value=report.ks_value,
        kappa=kap,
        gamma=gam,
        product=product,
        classification=classify(report.ks_value, product),
    )


def scan_rows(k: int, thetas, p0: float = 0.5,
              tol: float = DEFAULT_RESIDUAL_TOL) -> list:
    """ScanRow per grid point, in grid order."""
    return [scan_row(ModelParams(k, theta), p0, tol) for theta in thetas]


def format_value(value) -> str:
    """Deterministic cell formatting: 17 significant digits for floats."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return format(value, ".17g")
