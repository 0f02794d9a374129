"""Intrinsic generic radius of convergence and overconvergence diagnostics.

For a direction i at radii rho, the derivative operator of the ambient
ring has spectral norm p**(-1/(p-1)) / rho_i, and the intrinsic radius of
the module in that direction is

    IR_i = min(1, p**(-1/(p-1)) * rho_i**(-1) * liminf_s |G_{i,s}|_rho**(-1/s)).

On the log scale this reads max(0, 1/(p-1) - r_i - w_s/s) for the window
estimates, where w_s is the Gauss-norm exponent of G_{i,s}.  The liminf
is approximated by the worst (largest-exponent) estimate over a trailing
window of depths; when some G_{i,s} vanishes identically the direction is
exactly 1 and is flagged as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from .connection import (
    DEFAULT_DEPTH_CAP,
    ConnectionModule,
    DepthCapError,
    PolyMatrix,
    iter_deriv_matrices,
    require_integrable,
)
from .laurent import RadiusVector
from .padic import LogNorm, LogRadius, NORM_ONE


def spectral_base_exponent(prime: int) -> Fraction:
    """Exponent of the ambient derivative norm constant p**(-1/(p-1))."""
    return Fraction(1, prime - 1)


def factorial_valuation(s: int, prime: int) -> int:
    """v_p(s!) via the exact floor sum."""
    if s < 0:
        raise ValueError("factorial of a negative integer")
    v = 0
    q = prime
    while q <= s:
        v += s // q
        q *= prime
    return v


@dataclass(frozen=True)
class DirectionRadius:
    """Windowed intrinsic-radius estimates for a single direction."""

    direction: int
    window_start: int
    estimates: Tuple[LogNorm, ...]
    point_estimate: LogNorm
    stability: Fraction
    exact: bool
    vanished_at: Optional[int]

    def to_json_dict(self) -> dict:
        return {
            "direction": self.direction,
            "window_start": self.window_start,
            "window_estimates": [e.exponent_str() for e in self.estimates],
            "point_estimate": self.point_estimate.exponent_str(),
            "stability": str(self.stability),
            "exact": self.exact,
            "vanished_at": self.vanished_at,
        }


@dataclass(frozen=True)
class RadiusReport:
    """Full intrinsic-radius report at one radius vector."""

    prime: int
    rho: RadiusVector
    depth: int
    window: Fraction
    directions: Tuple[DirectionRadius, ...]
    ir_estimate: LogNorm
    exact_flag: bool

    def to_json_dict(self) -> dict:
        return {
            "rho": self.rho.exponent_strs(),
            "depth": self.depth,
            "window": str(self.window),
            "directions": [d.to_json_dict() for d in self.directions],
            "ir_exponent": self.ir_estimate.exponent_str(),
            "exact": self.exact_flag,
        }


def _window_start(depth: int, window: Fraction) -> int:
    return max(1, math.ceil((1 - window) * depth))


def _direction_radius(
    module: ConnectionModule,
    direction: int,
    rho: RadiusVector,
    depth: int,
    window: Fraction,
) -> DirectionRadius:
    base = spectral_base_exponent(module.prime)
    r_i = rho[direction].exponent
    start = _window_start(depth, window)
    estimates: list[Fraction] = []
    vanished: Optional[int] = None
    for s, G in enumerate(iter_deriv_matrices(module, direction)):
        if s == 0:
            continue
        if G.is_zero:
            vanished = s
            break
        if s >= start:
            w = G.gauss_lognorm(rho).exponent
            assert w is not None
            est = base - r_i - w / s
            estimates.append(est if est > 0 else Fraction(0))
        if s == depth:
            break
    if vanished is not None:
        return DirectionRadius(
            direction=direction,
            window_start=vanished,
            estimates=(NORM_ONE,),
            point_estimate=NORM_ONE,
            stability=Fraction(0),
            exact=True,
            vanished_at=vanished,
        )
    point = max(estimates)
    return DirectionRadius(
        direction=direction,
        window_start=start,
        estimates=tuple(LogNorm(e) for e in estimates),
        point_estimate=LogNorm(point),
        stability=point - min(estimates),
        exact=False,
        vanished_at=None,
    )


def intrinsic_radius(
    module: ConnectionModule,
    rho: RadiusVector,
    depth: int,
    window: Fraction = Fraction(1, 4),
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> RadiusReport:
    """Windowed intrinsic-radius estimates in every direction at radii rho."""
    if depth < 8:
        raise ValueError("depth must be at least 8")
    if depth > depth_cap:
        raise DepthCapError(f"depth {depth} exceeds cap {depth_cap}")
    window = Fraction(window)
    if not 0 < window <= 1:
        raise ValueError("window must lie in (0, 1]")
    if len(rho) != module.dims:
        raise ValueError(f"radius vector has {len(rho)} entries, expected {module.dims}")
    for entry in rho.entries:
        if entry.is_center:
            raise ValueError("intrinsic radius requires strictly positive radii")
    require_integrable(module)
    directions = tuple(
        _direction_radius(module, i, rho, depth, window)
        for i in range(module.dims)
    )
    ir = min(d.point_estimate for d in directions)
    exact_flag = all(d.exact for d in directions)
    return RadiusReport(
        prime=module.prime,
        rho=rho,
        depth=depth,
        window=window,
        directions=directions,
        ir_estimate=ir,
        exact_flag=exact_flag,
    )


class Verdict(str, Enum):
    OVERCONVERGENT_EVIDENCE = "OVERCONVERGENT_EVIDENCE"
    NOT_OVERCONVERGENT_EVIDENCE = "NOT_OVERCONVERGENT_EVIDENCE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class OcVerdict:
    verdict: Verdict
    witness_direction: Optional[int]
    rationale: str
    report: RadiusReport

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness_direction": self.witness_direction,
            "rationale": self.rationale,
            "radius_report": self.report.to_json_dict(),
        }


def oc_ir_test(
    module: ConnectionModule,
    depth: int,
    tol: Fraction = Fraction(1, 20),
    window: Fraction = Fraction(1, 4),
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> OcVerdict:
    """Evidence for or against IR = 1 at the unit polyradius.

    A direction counts as positive when its window estimates sit within
    tol of 1 (exponent <= tol) or are exactly 1; it counts as a negative
    witness when every window estimate stays at least tol away from 1 and
    the window spread does not exceed tol.  Anything else is inconclusive.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    report = intrinsic_radius(
        module, RadiusVector.ones(module.dims), depth, window, depth_cap
    )
    negative: list[DirectionRadius] = []
    undecided: list[DirectionRadius] = []
    for d in report.directions:
        if d.exact:
            continue
        exps = [e.exponent for e in d.estimates]
        if max(exps) <= tol:
            continue
        if min(exps) >= tol and d.stability <= tol:
            negative.append(d)
        else:
            undecided.append(d)
    if negative:
        witness = max(negative, key=lambda d: (d.point_estimate.exponent, -d.direction))
        return OcVerdict(
            Verdict.NOT_OVERCONVERGENT_EVIDENCE,
            witness.direction,
            (
                f"direction {witness.direction} is stably below 1: window exponents"
                f" >= {min(e.exponent for e in witness.estimates)} with spread"
                f" {witness.stability} <= tol {tol}"
            ),
            report,
        )
    if undecided:
        dirs = ", ".join(str(d.direction) for d in undecided)
        return OcVerdict(
            Verdict.INCONCLUSIVE,
            None,
            f"direction(s) {dirs} neither approach 1 within tol {tol} nor stay stably below",
            report,
        )
    return OcVerdict(
        Verdict.OVERCONVERGENT_EVIDENCE,
        None,
        f"every direction's window estimates are within tol {tol} of 1",
        report,
    )


class ProbeOutcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TaylorReport:
    """Decay diagnostics of normalized Taylor terms over the subannulus."""

    outcome: ProbeOutcome
    witness: Optional[Tuple[int, ...]]
    eta: LogRadius
    lam: LogRadius
    j_bound: int
    level_minima: Tuple[Tuple[int, Optional[Fraction]], ...]

    def to_json_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "eta_exponent": self.eta.exponent_str(),
            "lambda_exponent": self.lam.exponent_str(),
            "bound": self.j_bound,
            "levels": [
                {"total": k, "min_exponent": "inf" if e is None else str(e)}
                for k, e in self.level_minima
            ],
        }


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def taylor_probe(
    module: ConnectionModule,
    eta: LogRadius,
    lam: LogRadius,
    j_bound: int,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> TaylorReport:
    """Probe the decay of ||(1/j!) * D^j e_a|| * eta^|j| for |j| <= j_bound.

    Multi-index values are bounded by products of single-direction terms,
    with norms taken as sup norms over the subannulus with inner radius
    lam.  The probe passes when every level minimum beyond j_bound/2 stays
    strictly below 1 (positive exponent) with no net loss across the tail;
    it fails with a witness index when some tail value exceeds 1 and the
    tail trends downward; anything else is inconclusive.
    """
    if j_bound < 8:
        raise ValueError("multi-index bound must be at least 8")
    if j_bound > depth_cap:
        raise DepthCapError(f"bound {j_bound} exceeds cap {depth_cap}")
    if eta.is_center or eta.exponent is None or eta.exponent <= 0:
        raise ValueError("eta must satisfy 0 < eta < 1 (positive exponent)")
    if lam.is_center:
        raise ValueError("lambda must be strictly positive")
    require_integrable(module)
    p = module.prime
    h = eta.exponent
    dims = module.dims

    # e_l(s): exponent of ||(1/s!) d_l^s|| * eta^s, None for an exact zero.
    per_direction: list[list[Optional[Fraction]]] = []
    for l in range(dims):
        exps: list[Optional[Fraction]] = [Fraction(0)]
        for s, G in enumerate(iter_deriv_matrices(module, l)):
            if s == 0:
                continue
            if G.is_zero:
                exps.extend(None for _ in range(s, j_bound + 1))
                break
            w = G.sup_vertex_lognorm(lam).exponent
            assert w is not None
            exps.append(w - factorial_valuation(s, p) + s * h)
            if s == j_bound:
                break
        per_direction.append(exps)

    level_minima: list[tuple[int, Optional[Fraction]]] = []
    level_argmin: dict[int, Tuple[int, ...]] = {}
    for k in range(j_bound + 1):
        best: Optional[Fraction] = None
        best_j: Optional[Tuple[int, ...]] = None
        for j in _compositions(k, dims):
            total: Optional[Fraction] = Fraction(0)
            for l, jl in enumerate(j):
                e = per_direction[l][jl]
                if e is None:
                    total = None
                    break
                total += e
            if total is None:
                continue
            if best is None or total < best:
                best = total
                best_j = j
        level_minima.append((k, best))
        if best_j is not None:
            level_argmin[k] = best_j

    tail = [(k, e) for k, e in level_minima if k > j_bound // 2]
    finite_tail = [(k, e) for k, e in tail if e is not None]

    def _cmp_key(e: Optional[Fraction]) -> tuple[int, Fraction]:
        # None (exact zero norm) sorts above every finite exponent
        return (1, Fraction(0)) if e is None else (0, e)

    first_e = tail[0][1]
    last_e = tail[-1][1]
    all_positive = all(e is None or e > 0 for _, e in tail)
    if all_positive and _cmp_key(last_e) >= _cmp_key(first_e):
        outcome, witness = ProbeOutcome.PASS, None
    elif finite_tail and min(e for _, e in finite_tail) < 0 and _cmp_key(last_e) <= _cmp_key(first_e):
        worst_k = min(finite_tail, key=lambda ke: ke[1])[0]
        outcome, witness = ProbeOutcome.FAIL, level_argmin[worst_k]
    else:
        outcome, witness = ProbeOutcome.INCONCLUSIVE, None
    return TaylorReport(
        outcome=outcome,
        witness=witness,
        eta=eta,
        lam=lam,
        j_bound=j_bound,
        level_minima=tuple(level_minima),
    )
