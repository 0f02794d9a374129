"""Constructive dominant-term certificates on closed aligned intervals.

A one-variable Laurent polynomial a = sum a_n t^n is examined on a closed
interval I = [alpha, beta] of radii inside (0, 1), stored by exponents
r_alpha >= r_beta > 0 (radius p**(-r)).  Each term contributes the line
l_n(r) = v(a_n) + n*r on the log scale; the sup norm of a over I is the
smallest line value at the appropriate endpoint, and there is always a
term index n0 whose line can be made strictly smallest on a closed
subinterval I' of positive length.  The certificate records n0, I' and a
strictness margin; `unit_certificate_check` re-verifies it through Gauss
norms, certifying a = a_{n0} t^{n0} (1 + f) with |f| < 1 on I', so a is
a unit there with |a| = |a_{n0}| * rho^{n0}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Optional, Tuple

from .laurent import LaurentPoly, RadiusVector, SignatureError
from .padic import LogNorm, LogRadius, fraction_valuation


@dataclass(frozen=True)
class AlignedInterval:
    """Closed radius interval [alpha, beta] inside (0, 1).

    alpha <= beta as radii, hence exponent(alpha) >= exponent(beta) > 0.
    """

    alpha: LogRadius
    beta: LogRadius

    def __post_init__(self) -> None:
        if self.alpha.is_center or self.beta.is_center:
            raise ValueError("interval endpoints must be positive radii")
        if self.beta.exponent <= 0:
            raise ValueError("outer radius must be < 1 (exponent > 0)")
        if self.alpha.exponent < self.beta.exponent:
            raise ValueError("alpha must not exceed beta as a radius")

    @classmethod
    def from_exponents(cls, r_alpha: Fraction, r_beta: Fraction) -> "AlignedInterval":
        return cls(LogRadius(Fraction(r_alpha)), LogRadius(Fraction(r_beta)))

    @property
    def r_alpha(self) -> Fraction:
        return self.alpha.exponent  # type: ignore[return-value]

    @property
    def r_beta(self) -> Fraction:
        return self.beta.exponent  # type: ignore[return-value]

    def to_json_dict(self) -> dict:
        return {
            "alpha_exponent": str(self.r_alpha),
            "beta_exponent": str(self.r_beta),
        }


def _line_data(a: LaurentPoly) -> dict[int, Fraction]:
    """Map term degree -> coefficient valuation, for one-variable input."""
    if a.nvars_annulus != 1 or a.nvars_disc != 0:
        raise SignatureError("expected a one-variable Laurent polynomial")
    if a.is_zero:
        raise ValueError("the zero polynomial has no dominant term")
    out: dict[int, Fraction] = {}
    for (n,), coeff in a.terms.items():
        v = fraction_valuation(coeff, a.prime)
        assert v is not None
        out[n] = Fraction(v)
    return out


def sup_norm_on_interval(a: LaurentPoly, interval: AlignedInterval) -> LogNorm:
    """Sup of |a| over the interval: nonpositive degrees peak at alpha,
    nonnegative degrees at beta."""
    lines = _line_data(a)
    ra, rb = interval.r_alpha, interval.r_beta
    best: Optional[Fraction] = None
    for n, v in lines.items():
        if n <= 0:
            e = v + n * ra
            if best is None or e < best:
                best = e
        if n >= 0:
            e = v + n * rb
            if best is None or e < best:
                best = e
    assert best is not None
    return LogNorm(best)


@dataclass(frozen=True)
class DominantTerm:
    A: FrozenSet[int]
    B: FrozenSet[int]
    n0: int


def dominant_term(a: LaurentPoly, interval: AlignedInterval) -> DominantTerm:
    """Degrees attaining the sup at each endpoint, and the selected n0:
    the largest attaining degree <= 0 if any, else the smallest >= 0."""
    lines = _line_data(a)
    sup = sup_norm_on_interval(a, interval).exponent
    ra, rb = interval.r_alpha, interval.r_beta
    A = frozenset(n for n, v in lines.items() if n <= 0 and v + n * ra == sup)
    B = frozenset(n for n, v in lines.items() if n >= 0 and v + n * rb == sup)
    if A:
        n0 = max(A)
    else:
        assert B, "the sup must be attained at an endpoint"
        n0 = min(B)
    return DominantTerm(A=A, B=B, n0=n0)


@dataclass(frozen=True)
class DominanceCertificate:
    """Strict dominance of term n0 on the subinterval, with margin.

    margin is the smallest exponent gap between any other term line and
    the n0 line at the endpoints of the subinterval; None encodes an
    infinite margin (monomials)."""

    n0: int
    interval: AlignedInterval
    sup_norm: LogNorm
    margin: Optional[Fraction]

    def to_json_dict(self) -> dict:
        return {
            "n0": self.n0,
            "interval": self.interval.to_json_dict(),
            "sup_exponent": self.sup_norm.exponent_str(),
            "margin": "inf" if self.margin is None else str(self.margin),
        }


def shrink_interval(a: LaurentPoly, interval: AlignedInterval) -> DominanceCertificate:
    """Certificate that term n0 strictly dominates on a subinterval.

    The strict-dominance constraints of the other term lines carve an
    open window around the favorable endpoint; open sides are cut at the
    midpoint of the feasible exponent range, closed sides are kept.
    """
    lines = _line_data(a)
    sup = sup_norm_on_interval(a, interval)
    n0 = dominant_term(a, interval).n0
    v0 = lines[n0]
    ra, rb = interval.r_alpha, interval.r_beta

    lo, hi = rb, ra
    lo_open = hi_open = False
    for n, v in lines.items():
        if n == n0:
            continue
        # strictness: (n - n0) * r > v0 - v
        slope = n - n0
        bound = Fraction(v0 - v, slope)
        if slope > 0:
            if bound >= lo:
                lo, lo_open = bound, True
        else:
            if bound <= hi:
                hi, hi_open = bound, True
    if lo > hi or (lo == hi and (lo_open or hi_open)):
        raise ValueError("no dominance window of positive length exists")
    if lo_open and hi_open:
        quarter = (hi - lo) / 4
        new_lo, new_hi = lo + quarter, hi - quarter
    elif hi_open:
        new_lo, new_hi = lo, (lo + hi) / 2
    elif lo_open:
        new_lo, new_hi = (lo + hi) / 2, hi
    else:
        new_lo, new_hi = lo, hi
    sub = AlignedInterval.from_exponents(new_hi, new_lo)

    margin: Optional[Fraction] = None
    for n, v in lines.items():
        if n == n0:
            continue
        for r in (new_lo, new_hi):
            gap = (v + n * r) - (v0 + n0 * r)
            if margin is None or gap < margin:
                margin = gap
    if margin is not None and margin <= 0:
        raise ValueError("internal error: dominance margin is not positive")
    return DominanceCertificate(n0=n0, interval=sub, sup_norm=sup, margin=margin)


@dataclass(frozen=True)
class UnitCheck:
    ok: bool
    counterexample: Optional[LogRadius]
    sampled: Tuple[LogRadius, ...]

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "counterexample": (
                None if self.counterexample is None else self.counterexample.exponent_str()
            ),
            "samples": [r.exponent_str() for r in self.sampled],
        }


def unit_certificate_check(
    a: LaurentPoly,
    certificate: DominanceCertificate,
    samples: int = 20,
) -> UnitCheck:
    """Re-verify a dominance certificate through Gauss norms.

    At evenly spaced rational exponents across the certified interval,
    f = sum_{n != n0} (a_n / a_{n0}) t^{n - n0} must have norm < 1
    (positive exponent) and |a| must equal |a_{n0}| * rho^{n0}.  The
    first radius violating either condition is returned as a
    counterexample.
    """
    if samples < 1:
        raise ValueError("need at least one sample radius")
    lines = _line_data(a)
    n0 = certificate.n0
    if n0 not in lines:
        raise ValueError(f"certificate names absent term {n0}")
    c0 = a.coefficient((n0,))
    f = LaurentPoly(
        a.prime,
        1,
        0,
        {
            (n - n0,): coeff / c0.value
            for (n,), coeff in a.terms.items()
            if n != n0
        },
    )
    v0 = lines[n0]
    hi = certificate.interval.r_alpha
    lo = certificate.interval.r_beta
    if samples == 1 or hi == lo:
        grid = [lo]
    else:
        step = (hi - lo) / (samples - 1)
        grid = [lo + k * step for k in range(samples)]
    sampled = tuple(LogRadius(r) for r in grid)
    for radius in sampled:
        rho = RadiusVector((radius,))
        f_exp = f.gauss_lognorm(rho).exponent
        if f_exp is not None and f_exp <= 0:
            return UnitCheck(False, radius, sampled)
        a_exp = a.gauss_lognorm(rho).exponent
        if a_exp != v0 + n0 * radius.exponent:
            return UnitCheck(False, radius, sampled)
    return UnitCheck(True, None, sampled)
