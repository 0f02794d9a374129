"""Finitely supported Laurent polynomials on polyannuli, with Gauss norms.

A polynomial lives on a product of ``nvars_annulus`` annulus variables
(integer exponents of either sign) and ``nvars_disc`` disc variables
(exponents >= 0).  Terms map exponent vectors to exact rational
coefficients; zero coefficients are never stored.  The rho-Gauss norm of
a term p**v * t^J at radii rho_l = p**(-r_l) has exponent
v + sum_l J_l * r_l, and the norm of a polynomial is the largest term
norm, i.e. the smallest such exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

from .padic import (
    DISC_CENTER,
    LogNorm,
    LogRadius,
    NORM_ZERO,
    PAdicRational,
    check_prime,
    fraction_valuation,
    parse_fraction,
)

ExponentVector = Tuple[int, ...]
CoefficientLike = Union[PAdicRational, Fraction, int]


class SignatureError(ValueError):
    """Two operands live on polyannuli of different shapes."""


@dataclass(frozen=True)
class RadiusVector:
    """One radius per variable, annulus radii first."""

    entries: Tuple[LogRadius, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))

    @classmethod
    def ones(cls, dims: int) -> "RadiusVector":
        return cls(tuple(LogRadius.one() for _ in range(dims)))

    @classmethod
    def from_exponents(cls, exponents: Iterable[Union[Fraction, int, None]]) -> "RadiusVector":
        return cls(tuple(
            LogRadius.center() if e is None else LogRadius(Fraction(e))
            for e in exponents
        ))

    @classmethod
    def single(cls, dims: int, index: int, radius: LogRadius) -> "RadiusVector":
        """All-ones vector with one slot replaced."""
        if not 0 <= index < dims:
            raise IndexError(f"direction {index} out of range for {dims} variables")
        entries = [LogRadius.one()] * dims
        entries[index] = radius
        return cls(tuple(entries))

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> LogRadius:
        return self.entries[i]

    def exponent_strs(self) -> list[str]:
        return [e.exponent_str() for e in self.entries]


class LaurentPoly:
    """Immutable Laurent polynomial with exact rational coefficients."""

    __slots__ = ("prime", "nvars_annulus", "nvars_disc", "_terms")

    def __init__(
        self,
        prime: int,
        nvars_annulus: int,
        nvars_disc: int,
        terms: Mapping[ExponentVector, CoefficientLike] | Iterable[tuple[ExponentVector, CoefficientLike]] = (),
    ) -> None:
        check_prime(prime)
        if nvars_annulus < 0 or nvars_disc < 0:
            raise SignatureError("variable counts must be >= 0")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "nvars_annulus", nvars_annulus)
        object.__setattr__(self, "nvars_disc", nvars_disc)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[ExponentVector, Fraction] = {}
        dims = nvars_annulus + nvars_disc
        for key, coeff in items:
            key = tuple(key)
            if len(key) != dims:
                raise SignatureError(
                    f"exponent vector {key} has length {len(key)}, expected {dims}"
                )
            if any(not isinstance(j, int) for j in key):
                raise SignatureError(f"exponents must be integers: {key}")
            for l in range(nvars_annulus, dims):
                if key[l] < 0:
                    raise SignatureError(
                        f"disc variable {l} cannot have negative exponent in {key}"
                    )
            if isinstance(coeff, PAdicRational):
                if coeff.prime != prime:
                    raise SignatureError(
                        f"coefficient prime {coeff.prime} != polynomial prime {prime}"
                    )
                value = coeff.value
            else:
                value = Fraction(coeff)
            if value == 0:
                continue
            if key in clean:
                raise SignatureError(f"duplicate exponent vector {key}")
            clean[key] = value
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("LaurentPoly is immutable")

    # -- construction helpers -------------------------------------------

    @classmethod
    def _new(cls, prime: int, n: int, m: int, terms: dict[ExponentVector, Fraction]) -> "LaurentPoly":
        """Internal fast path: trusted keys, drops zero coefficients."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "prime", prime)
        object.__setattr__(obj, "nvars_annulus", n)
        object.__setattr__(obj, "nvars_disc", m)
        object.__setattr__(obj, "_terms", {k: v for k, v in terms.items() if v != 0})
        return obj

    @classmethod
    def zero(cls, prime: int, n: int, m: int) -> "LaurentPoly":
        return cls(prime, n, m, ())

    @classmethod
    def constant(cls, prime: int, n: int, m: int, value: CoefficientLike) -> "LaurentPoly":
        return cls(prime, n, m, {(0,) * (n + m): value})

    @classmethod
    def one(cls, prime: int, n: int, m: int) -> "LaurentPoly":
        return cls.constant(prime, n, m, 1)

    @classmethod
    def monomial(cls, prime: int, n: int, m: int, exps: Sequence[int], coeff: CoefficientLike) -> "LaurentPoly":
        return cls(prime, n, m, {tuple(exps): coeff})

    @classmethod
    def variable(cls, prime: int, n: int, m: int, index: int) -> "LaurentPoly":
        exps = [0] * (n + m)
        exps[index] = 1
        return cls.monomial(prime, n, m, exps, 1)

    # -- basic structure -------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.nvars_annulus + self.nvars_disc

    @property
    def terms(self) -> Mapping[ExponentVector, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Sequence[int]) -> PAdicRational:
        return PAdicRational(self._terms.get(tuple(exps), Fraction(0)), self.prime)

    def _check_signature(self, other: "LaurentPoly") -> None:
        if (
            self.prime != other.prime
            or self.nvars_annulus != other.nvars_annulus
            or self.nvars_disc != other.nvars_disc
        ):
            raise SignatureError(
                f"signature mismatch: (p={self.prime}, {self.nvars_annulus}+{self.nvars_disc} vars)"
                f" vs (p={other.prime}, {other.nvars_annulus}+{other.nvars_disc} vars)"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.prime == other.prime
            and self.nvars_annulus == other.nvars_annulus
            and self.nvars_disc == other.nvars_disc
            and self._terms == other._terms
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.is_zero:
            body = "0"
        else:
            bits = []
            for key in sorted(self._terms):
                bits.append(f"{self._terms[key]}*t^{key}")
            body = " + ".join(bits)
        return f"LaurentPoly(p={self.prime}, {self.nvars_annulus}+{self.nvars_disc} vars, {body})"

    # -- ring operations --------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_signature(other)
        acc = dict(self._terms)
        for key, v in other._terms.items():
            w = acc.get(key)
            if w is None:
                acc[key] = v
            else:
                s = w + v
                if s == 0:
                    del acc[key]
                else:
                    acc[key] = s
        return LaurentPoly._new(self.prime, self.nvars_annulus, self.nvars_disc, acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._new(
            self.prime,
            self.nvars_annulus,
            self.nvars_disc,
            {k: -v for k, v in self._terms.items()},
        )

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def scalar_mul(self, scalar: CoefficientLike) -> "LaurentPoly":
        if isinstance(scalar, PAdicRational):
            if scalar.prime != self.prime:
                raise SignatureError("scalar prime mismatch")
            scalar = scalar.value
        c = Fraction(scalar)
        if c == 0:
            return LaurentPoly._new(self.prime, self.nvars_annulus, self.nvars_disc, {})
        return LaurentPoly._new(
            self.prime,
            self.nvars_annulus,
            self.nvars_disc,
            {k: v * c for k, v in self._terms.items()},
        )

    def __mul__(self, other: object) -> "LaurentPoly":
        if isinstance(other, (PAdicRational, Fraction, int)):
            return self.scalar_mul(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_signature(other)
        acc: dict[ExponentVector, Fraction] = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                prod = v1 * v2
                w = acc.get(key)
                if w is None:
                    acc[key] = prod
                else:
                    s = w + prod
                    if s == 0:
                        del acc[key]
                    else:
                        acc[key] = s
        return LaurentPoly._new(self.prime, self.nvars_annulus, self.nvars_disc, acc)

    def __rmul__(self, other: object) -> "LaurentPoly":
        if isinstance(other, (PAdicRational, Fraction, int)):
            return self.scalar_mul(other)
        return NotImplemented

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers of polynomials are not supported")
        result = LaurentPoly.one(self.prime, self.nvars_annulus, self.nvars_disc)
        for _ in range(k):
            result = result * self
        return result

    # -- calculus ----------------------------------------------------------

    def partial(self, direction: int) -> "LaurentPoly":
        """Coordinate derivative d/dt_direction (0-based direction index)."""
        if not 0 <= direction < self.nvars:
            raise IndexError(f"direction {direction} out of range")
        acc: dict[ExponentVector, Fraction] = {}
        for key, v in self._terms.items():
            j = key[direction]
            if j == 0:
                continue
            shifted = key[:direction] + (j - 1,) + key[direction + 1:]
            acc[shifted] = v * j
        return LaurentPoly._new(self.prime, self.nvars_annulus, self.nvars_disc, acc)

    # -- norms ---------------------------------------------------------------

    def gauss_lognorm(self, radii: RadiusVector) -> LogNorm:
        """rho-Gauss norm.  Annulus radii must be positive; a disc radius
        of zero silences every term with a positive exponent there."""
        if len(radii) != self.nvars:
            raise SignatureError(
                f"radius vector has {len(radii)} entries, expected {self.nvars}"
            )
        exps = [r.exponent for r in radii.entries]
        for l in range(self.nvars_annulus):
            if exps[l] is None:
                raise ValueError("annulus radii must be strictly positive")
        best: Optional[Fraction] = None
        for key, coeff in self._terms.items():
            acc: Fraction | int = fraction_valuation(coeff, self.prime)  # type: ignore[assignment]
            dead = False
            for l, j in enumerate(key):
                if j == 0:
                    continue
                r = exps[l]
                if r is None:
                    dead = True  # disc center kills t_l**j for j > 0
                    break
                acc = acc + j * r
            if dead:
                continue
            accf = Fraction(acc)
            if best is None or accf < best:
                best = accf
        return NORM_ZERO if best is None else LogNorm(best)

    def sup_vertex_lognorm(self, lam: LogRadius) -> LogNorm:
        """Sup norm over the subannulus with inner radius lam: the largest
        Gauss norm over the vertex radius vectors {lam, 1}^n x {1}^m."""
        if lam.is_center:
            raise ValueError("inner radius must be strictly positive")
        L = lam.exponent
        corners = (Fraction(0),) if L == 0 else (L, Fraction(0))
        disc_part = tuple(LogRadius.one() for _ in range(self.nvars_disc))
        best: Optional[LogNorm] = None
        for combo in product(corners, repeat=self.nvars_annulus):
            rho = RadiusVector(tuple(LogRadius(c) for c in combo) + disc_part)
            norm = self.gauss_lognorm(rho)
            if best is None or best < norm:
                best = norm
        assert best is not None
        return best

    # -- substitution -----------------------------------------------------

    def specialize(self, direction: int, coords: Sequence[PAdicRational]) -> "LaurentPoly":
        """Substitute unit scalars for every variable except `direction`,
        producing a one-variable polynomial in that variable."""
        if not 0 <= direction < self.nvars:
            raise IndexError(f"direction {direction} out of range")
        others = [l for l in range(self.nvars) if l != direction]
        if len(coords) != len(others):
            raise SignatureError(
                f"expected {len(others)} coordinates, got {len(coords)}"
            )
        values: list[Fraction] = []
        for c in coords:
            if not isinstance(c, PAdicRational):
                raise TypeError("specialization points must be PAdicRational units")
            if c.prime != self.prime:
                raise SignatureError("coordinate prime mismatch")
            if not c.is_unit:
                raise ValueError(f"coordinate {c} is not a unit (valuation != 0)")
            values.append(c.value)
        acc: dict[ExponentVector, Fraction] = {}
        for key, coeff in self._terms.items():
            c = coeff
            for l, cl in zip(others, values):
                j = key[l]
                if j:
                    c = c * cl ** j
            k = (key[direction],)
            w = acc.get(k)
            if w is None:
                acc[k] = c
            else:
                s = w + c
                if s == 0:
                    del acc[k]
                else:
                    acc[k] = s
        if direction < self.nvars_annulus:
            n, m = 1, 0
        else:
            n, m = 0, 1
        return LaurentPoly._new(self.prime, n, m, acc)

    # -- serialization ------------------------------------------------------

    def to_records(self) -> list[dict]:
        """Term list ordered lexicographically by exponent vector."""
        return [
            {"exps": list(key), "coeff": str(self._terms[key])}
            for key in sorted(self._terms)
        ]

    @classmethod
    def from_records(cls, prime: int, n: int, m: int, records: Iterable[Mapping]) -> "LaurentPoly":
        terms: list[tuple[ExponentVector, Fraction]] = []
        for rec in records:
            exps = rec.get("exps")
            coeff = rec.get("coeff")
            if not isinstance(exps, (list, tuple)) or not isinstance(coeff, str):
                raise SignatureError(f"malformed term record {rec!r}")
            terms.append((tuple(exps), parse_fraction(coeff)))
        return cls(prime, n, m, terms)
