"""Fixed-point machinery for translation-invariant boundary laws.

Translation-invariant splitting Gibbs measures of the constrained model
correspond to positive solutions of the two-component fixed-point system

    z1 = ((theta + z1) / (theta * (z1 + z2)))**k
    z2 = ((theta + z2) / (theta * (z1 + z2)))**k        (wand graph)

or, for a generic constraint graph with adjacency a_ij and the convention
z(-1) = z2, z(0) = 1, z(+1) = z1,

    z_i = ( sum_j a_ij theta^((i-j)^2) z_j  /  sum_j a_0j theta^(j^2) z_j )**k.

The symmetric root z1 = z2 = z* always exists and is unique: the gain map
f(z) = ((theta+z)/(2 theta z))**k is strictly decreasing, so z - f(z) has a
single sign change and bracketed bisection is unconditionally convergent.
The asymmetric pair exists exactly below the critical activity

    theta_cr(k) = (k^k (k-1) / 2^k)^(1/(k+1))

and is found by damped two-dimensional Newton iteration with analytic
Jacobian, multi-seeded around z* and at the residual minima of a coarse
log-log grid.  Roots are certified by their residual, never by iteration
count alone.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .model import (
    DEFAULT_RESIDUAL_TOL,
    BoundaryLaw,
    InteractionGraph,
    ModelParams,
    wand_graph,
)
from .rootfind import NoBracketError, grid as _grid

__all__ = [
    "SolverError",
    "DegenerateDenominatorError",
    "IterationFailureError",
    "QuarticDomainError",
    "NearBifurcationWarning",
    "TisgmSet",
    "rhs_general",
    "boundary_law",
    "symmetric_gain",
    "solve_symmetric",
    "solve_ferrari_k3",
    "theta_critical",
    "find_asymmetric",
    "detect_bifurcation_onset",
    "tisgm_set",
]


class SolverError(RuntimeError):
    """Base class for fixed-point solver failures."""


class DegenerateDenominatorError(SolverError):
    """The 0-spin field sum vanished, so the fixed-point map is undefined."""


class IterationFailureError(SolverError):
    """An iteration or bracket-expansion budget was exhausted."""


class QuarticDomainError(SolverError):
    """A radicand in the closed-form quartic solution went negative."""


class NearBifurcationWarning(UserWarning):
    """The activity sits within 1e-4 of the critical value; the asymmetric
    pair nearly merges with the symmetric root and the reported count is
    governed by the deduplication tolerance."""


_WAND = wand_graph()

#: relative separation below which a root counts as the symmetric one
_ASYM_SEPARATION = 1e-7

#: relative distance below which two roots are deduplicated
_DEDUP_TOL = 1e-8


def _field_sums(graph: InteractionGraph, theta: float, z1: float, z2: float) -> tuple:
    """Per-spin field sums (w_minus, w_zero, w_plus).

    w_i = sum_j a_ij theta^((i-j)^2) z_j with z = (z2, 1, z1) in spin order.
    """
    a = graph.adjacency
    # index distance d = |i - j| maps to spin difference d, exponent d^2
    pows = (1.0, theta, theta ** 4)
    z = (z2, 1.0, z1)
    return tuple(
        sum(a[i][j] * pows[abs(i - j)] * z[j] for j in range(3))
        for i in range(3)
    )


def _rhs(z1: float, z2: float, k: int, theta: float, graph: InteractionGraph) -> tuple:
    w_minus, w_zero, w_plus = _field_sums(graph, theta, z1, z2)
    if w_zero == 0.0:
        raise DegenerateDenominatorError(
            "the 0-spin field sum a(0,-1)*theta*z2 + a(0,0) + a(0,1)*theta*z1 is zero"
        )
    return (w_plus / w_zero) ** k, (w_minus / w_zero) ** k


def _residual(z1: float, z2: float, k: int, theta: float, graph: InteractionGraph) -> float:
    r1, r2 = _rhs(z1, z2, k, theta, graph)
    return max(abs(z1 - r1) / max(1.0, z1), abs(z2 - r2) / max(1.0, z2))


def rhs_general(law: BoundaryLaw, params: ModelParams, graph: InteractionGraph | None = None) -> tuple:
    """Right-hand sides of the fixed-point system at ``law`` for a generic graph.

    Returns the pair (rhs for z1, rhs for z2) under the translation-invariant
    ansatz, i.e. the per-successor field ratio raised to the k-th power.
    Raises DegenerateDenominatorError when the 0-spin field sum vanishes.
    """
    graph = _WAND if graph is None else graph
    return _rhs(law.z1, law.z2, params.k, params.theta, graph)


def boundary_law(z1: float, z2: float, params: ModelParams,
                 graph: InteractionGraph | None = None) -> BoundaryLaw:
    """A BoundaryLaw carrying the fixed-point residual evaluated at (z1, z2)."""
    graph = _WAND if graph is None else graph
    return BoundaryLaw(z1, z2, _residual(float(z1), float(z2), params.k, params.theta, graph))


def symmetric_gain(z: float, params: ModelParams) -> float:
    """The symmetric gain map f(z) = ((theta + z) / (2 theta z))**k."""
    if z <= 0.0:
        raise ValueError("z must be positive")
    theta = params.theta
    return ((theta + z) / (2.0 * theta * z)) ** params.k


def solve_symmetric(params: ModelParams, tol: float = DEFAULT_RESIDUAL_TOL) -> BoundaryLaw:
    """The unique symmetric root z1 = z2 = z* of the fixed-point system.

    Bisects the strictly increasing log-gap
        d(z) = (1+k) ln z + k ln(2 theta) - k ln(theta + z),
    whose zero is the fixed point of f; working with logs keeps the bracket
    expansion overflow-free even when z* is astronomically large (theta -> 0).
    The bracket starts at [1e-12, 1] and the upper end doubles until the gap
    turns positive (at most 200 doublings); bisection then runs to relative
    width 1e-15.  An exact zero hit is returned as-is, which in particular
    yields z* = 1.0 exactly at theta = 1.
    """
    k, theta = params.k, params.theta
    log_2theta = math.log(2.0 * theta)

    def gap(z: float) -> float:
        return (1.0 + k) * math.log(z) + k * log_2theta - k * math.log(theta + z)

    lo = 1e-12
    shrinks = 0
    glo = gap(lo)
    while glo > 0.0:
        # cannot occur for valid params (f blows up at 0); defensive
        lo *= 0.5
        shrinks += 1
        if shrinks > 200:
            raise IterationFailureError("lower bracket shrink exceeded 200 halvings")
        glo = gap(lo)
    if glo == 0.0:
        z = lo
    else:
        hi = 1.0
        ghi = gap(hi)
        doublings = 0
        while ghi < 0.0:
            hi *= 2.0
            doublings += 1
            if doublings > 200:
                raise IterationFailureError("bracket expansion exceeded 200 doublings")
            ghi = gap(hi)
        if ghi == 0.0:
            z = hi
        else:
            for _ in range(200):
                if hi - lo <= 1e-15 * hi:
                    break
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                gmid = gap(mid)
                if gmid == 0.0:
                    lo = hi = mid
                    break
                if gmid > 0.0:
                    hi = mid
                else:
                    lo = mid
            z = 0.5 * (lo + hi)

    residual = abs(z - symmetric_gain(z, params)) / max(1.0, z)
    if residual > tol:
        raise IterationFailureError(
            f"symmetric root residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )
    return BoundaryLaw(z, z, residual)


def theta_critical(k: int) -> float:
    """Critical activity (k^k (k-1) / 2^k)^(1/(k+1)); below it three
    translation-invariant measures exist, at or above it exactly one."""
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise ValueError(f"tree order k must be an integer >= 2, got {k!r}")
    k = int(k)
    return (k ** k * (k - 1) / 2 ** k) ** (1.0 / (k + 1))


def _sqrt_clamped(x: float, what: str) -> float:
    # tiny negatives are rounding noise; anything beyond -1e-12 signals a
    # transcription error in the closed form
    if x < 0.0:
        if x < -1e-12:
            raise QuarticDomainError(f"negative radicand {x!r} in {what}")
        x = 0.0
    return math.sqrt(x)


def solve_ferrari_k3(theta: float) -> float:
    """Closed-form symmetric root at k = 3 via Ferrari's quartic resolution.

    The k = 3 symmetric fixed point is equivalent to the quartic
    8 theta^3 z^4 = (theta + z)^3; its unique positive root is

        z = ( sqrt(A) + 1/(16 theta^3)
              + sqrt( (sqrt(A) + 1/(16 theta^3))^2 - 4 (y/2 - sqrt(C)) ) ) / 2

    with resolvent intermediates

        w = cbrt( 108 theta^4 + 12 sqrt(6144 theta^12 + 81 theta^8) )
        y = ( w/24 - 4 theta^4 / w - 1/8 ) / theta^2
        A = 1/(256 theta^6) + 3/(8 theta^2) + y
        C = y^2/4 + 1/8.

    All radicands are positive for theta > 0; values dipping below -1e-12
    raise QuarticDomainError, smaller negatives are clamped to zero.
    """
    theta = float(theta)
    if not (math.isfinite(theta) and theta > 0.0):
        raise ValueError(f"theta must be positive and finite, got {theta!r}")
    t2 = theta * theta
    t3 = t2 * theta
    t4 = t2 * t2
    inner_root = _sqrt_clamped(6144.0 * t4 ** 3 + 81.0 * t4 * t4, "the cube-root argument")
    w = (108.0 * t4 + 12.0 * inner_root) ** (1.0 / 3.0)
    y = (w / 24.0 - 4.0 * t4 / w - 0.125) / t2
    a_val = 1.0 / (256.0 * t3 * t3) + 3.0 / (8.0 * t2) + y
    c_val = 0.25 * y * y + 0.125
    lead = _sqrt_clamped(a_val, "the leading radical") + 1.0 / (16.0 * t3)
    inner = lead * lead - 4.0 * (0.5 * y - _sqrt_clamped(c_val, "the resolvent radical"))
    return 0.5 * (lead + _sqrt_clamped(inner, "the final radical"))


def _log_defect(u, v, k, theta, graph):
    """max(|G1|, |G2|) for the log system G_i = ln z_i - ln rhs_i.

    The components of the fixed-point system span enormous dynamic ranges
    (roots near 1e-8 coexist with roots near 1e4), so the iteration and its
    merit function live in log coordinates, where everything is O(1)."""
    z1, z2 = math.exp(u), math.exp(v)
    w_minus, w_zero, w_plus = _field_sums(graph, theta, z1, z2)
    if w_zero == 0.0:
        raise DegenerateDenominatorError("zero 0-spin field sum during Newton iteration")
    if w_minus <= 0.0 or w_plus <= 0.0:
        return None
    g1 = u - k * (math.log(w_plus) - math.log(w_zero))
    g2 = v - k * (math.log(w_minus) - math.log(w_zero))
    return max(abs(g1), abs(g2))


def _log_system(u, v, k, theta, graph):
    """Log-system values and analytic Jacobian at (u, v) = (ln z1, ln z2)."""
    z1, z2 = math.exp(u), math.exp(v)
    a = graph.adjacency
    pows = (1.0, theta, theta ** 4)
    z = (z2, 1.0, z1)
    w = [sum(a[i][j] * pows[abs(i - j)] * z[j] for j in range(3)) for i in range(3)]
    if w[1] == 0.0:
        raise DegenerateDenominatorError("zero 0-spin field sum during Newton iteration")
    if w[0] <= 0.0 or w[2] <= 0.0:
        return None
    g1 = u - k * (math.log(w[2]) - math.log(w[1]))
    g2 = v - k * (math.log(w[0]) - math.log(w[1]))
    # dw_i/du = (dw_i/dz1) z1 touches column +1 (index 2); dv analogous
    dw_du = [a[i][2] * pows[abs(i - 2)] * z1 for i in range(3)]
    dw_dv = [a[i][0] * pows[i] * z2 for i in range(3)]
    j11 = 1.0 - k * (dw_du[2] / w[2] - dw_du[1] / w[1])
    j12 = -k * (dw_dv[2] / w[2] - dw_dv[1] / w[1])
    j21 = -k * (dw_du[0] / w[0] - dw_du[1] / w[1])
    j22 = 1.0 - k * (dw_dv[0] / w[0] - dw_dv[1] / w[1])
    return g1, g2, j11, j12, j21, j22


def _newton_root(z1, z2, k, theta, graph, max_iter=100):
    """Damped Newton from one seed, in log coordinates.

    Returns (z1, z2, residual) at the best point reached, or None when the
    seed was unusable (vanishing field sum or singular Jacobian)."""
    u, v = math.log(z1), math.log(z2)
    for _ in range(max_iter):
        out = _log_system(u, v, k, theta, graph)
        if out is None:
            return None
        g1, g2, j11, j12, j21, j22 = out
        err = max(abs(g1), abs(g2))
        if err <= 1e-14:
            break
        det = j11 * j22 - j12 * j21
        if det == 0.0 or not math.isfinite(det):
            return None
        du = (-g1 * j22 + g2 * j12) / det
        dv = (-g2 * j11 + g1 * j21) / det
        # cap the log step so exp() stays finite on wild early iterations
        width = max(abs(du), abs(dv))
        if width > 60.0:
            du *= 60.0 / width
            dv *= 60.0 / width
        lam = 1.0
        improved = False
        for _halving in range(60):
            cand = _log_defect(u + lam * du, v + lam * dv, k, theta, graph)
            if cand is not None and cand < err:
                u, v = u + lam * du, v + lam * dv
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
    z1, z2 = math.exp(u), math.exp(v)
    return z1, z2, _residual(z1, z2, k, theta, graph)


def _grid_seeds(k, theta, graph, z_star, points=40, keep=8):
    """Local minima of the log defect on a points x points log-log grid."""
    lo = 1e-6 * min(1.0, z_star, theta)
    hi = 1e4 * max(1.0, z_star, 1.0 / theta)
    us = [math.log(x) for x in _grid(lo, hi, points, log_scale=True)]
    inf = math.inf
    defect = [
        [_log_defect(u, v, k, theta, graph) for v in us]
        for u in us
    ]
    defect = [[inf if d is None else d for d in row] for row in defect]
    seeds = []
    for i in range(1, points - 1):
        for j in range(1, points - 1):
            d = defect[i][j]
            if d < inf and all(
                d < defect[i + di][j + dj]
                for di in (-1, 0, 1)
                for dj in (-1, 0, 1)
                if (di, dj) != (0, 0)
            ):
                seeds.append((d, math.exp(us[i]), math.exp(us[j])))
    seeds.sort()
    return [(x, y) for _, x, y in seeds[:keep]]


def _relative_distance(a, b):
    return max(
        abs(a[0] - b[0]) / max(a[0], b[0]),
        abs(a[1] - b[1]) / max(a[1], b[1]),
    )


def find_asymmetric(params: ModelParams, tol: float = DEFAULT_RESIDUAL_TOL) -> list:
    """All certified fixed points with z1 != z2, as a swap-closed list.

    Below the critical activity this returns exactly the two coordinate
    swaps of the asymmetric pair, ordered by decreasing z1; at or above it,
    the empty list.  A root counts as asymmetric only when the coordinates
    are separated by more than 1e-7 relatively, which prevents the symmetric
    root from being double-counted near the bifurcation.  Any additional
    residual-certified roots would be returned rather than suppressed.
    """
    graph = _WAND
    k, theta = params.k, params.theta
    z_star = solve_symmetric(params).z1

    seeds = []
    for delta in (0.1, 0.5, 0.9):
        seeds.append((z_star * (1.0 + delta), z_star * (1.0 - delta)))
        seeds.append((z_star * (1.0 - delta), z_star * (1.0 + delta)))
    seeds.extend(_grid_seeds(k, theta, graph, z_star))

    roots = []
    for seed in seeds:
        out = _newton_root(seed[0], seed[1], k, theta, graph)
        if out is None:
            continue
        z1, z2, res = out
        if res <= tol:
            roots.append((z1, z2, res))
    # swap closure: the system is invariant under (z1, z2) -> (z2, z1)
    roots.extend([(z2, z1, res) for z1, z2, res in list(roots)])

    asymmetric = [
        (z1, z2, res)
        for z1, z2, res in roots
        if abs(z1 - z2) > _ASYM_SEPARATION * max(z1, z2)
    ]
    asymmetric.sort(key=lambda t: (-t[0], -t[1]))
    unique = []
    for cand in asymmetric:
        if all(_relative_distance(cand, kept) > _DEDUP_TOL for kept in unique):
            unique.append(cand)

    if abs(theta - theta_critical(k)) < 1e-4:
        warnings.warn(
            f"theta={theta} lies within 1e-4 of the critical activity; "
            "the asymmetric pair nearly merges and the reported count is "
            "governed by the deduplication tolerance",
            NearBifurcationWarning,
            stacklevel=2,
        )
    return [BoundaryLaw(z1, z2, res) for z1, z2, res in unique]


def detect_bifurcation_onset(k: int, theta_lo: float = 0.05, theta_hi: float = 10.0,
                             xtol: float = 1e-7, points: int = 33) -> float:
    """Empirical onset of the asymmetric pair, located without the closed form.

    Scans a log grid for the activity where ``find_asymmetric`` switches from
    two roots to none, then bisects the predicate to ``xtol``.  Raises
    NoBracketError when the pair exists everywhere or nowhere on the scan.
    """

    def has_pair(theta: float) -> bool:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NearBifurcationWarning)
            return len(find_asymmetric(ModelParams(k, theta))) >= 2

    xs = _grid(theta_lo, theta_hi, points, log_scale=True)
    flags = [has_pair(x) for x in xs]
    bracket = None
    for i in range(points - 1):
        if flags[i] and not flags[i + 1]:
            bracket = (xs[i], xs[i + 1])
    if bracket is None:
        raise NoBracketError(
            f"no onset of asymmetric solutions on ({theta_lo}, {theta_hi}) at k={k}"
        )
    lo, hi = bracket
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if has_pair(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class TisgmSet:
    """The complete translation-invariant solution set at one (k, theta).

    ``symmetric`` is always present; ``asymmetric`` holds the swap pair when
    theta < theta_cr and is empty otherwise, so ``count`` is 1 or 3.
    """

    params: ModelParams
    symmetric: BoundaryLaw
    asymmetric: tuple
    theta_cr: float

    @property
    def count(self) -> int:
        return 1 + len(self.asymmetric)

    @property
    def laws(self) -> tuple:
        return (self.symmetric,) + self.asymmetric


def tisgm_set(params: ModelParams, tol: float = DEFAULT_RESIDUAL_TOL) -> TisgmSet:
    """Solve for every translation-invariant measure at ``params`` (wand graph)."""
    return TisgmSet(
        params=params,
        symmetric=solve_symmetric(params, tol),
        asymmetric=tuple(find_asymmetric(params, tol=tol)),
        theta_cr=theta_critical(params.k),
    )
