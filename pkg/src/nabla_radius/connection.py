"""Integrable connections on polyannuli and their iterated derivatives.

A module of rank mu over n annulus and m disc variables is given by
square matrices N_1 .. N_{n+m} of Laurent polynomials: the operator in
direction i acts on coefficient columns as d/dt_i + N_i.  Integrability
is the vanishing of every curvature
    d_i(N_j) - d_j(N_i) + N_i N_j - N_j N_i.
The iterated single-direction matrices satisfy G_{i,0} = identity and
G_{i,s+1} = d_i(G_{i,s}) + N_i G_{i,s}, so that the s-th power of the
direction-i operator sends the basis column e_a to column a of G_{i,s}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

from .laurent import LaurentPoly, LogNorm, LogRadius, RadiusVector, SignatureError
from .padic import NORM_ZERO, PAdicRational

DEFAULT_DEPTH_CAP = 512


class NotIntegrableError(ValueError):
    """Raised when an operation requires integrability and curvature is nonzero."""


class DepthCapError(RuntimeError):
    """Raised when an iteration depth exceeds the configured cap."""


class PolyMatrix:
    """Immutable square matrix of Laurent polynomials with shared signature."""

    __slots__ = ("prime", "nvars_annulus", "nvars_disc", "rows")

    def __init__(self, rows: Sequence[Sequence[LaurentPoly]]) -> None:
        rows = tuple(tuple(row) for row in rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise SignatureError("matrix must be square and nonempty")
        first = rows[0][0]
        for row in rows:
            for entry in row:
                first._check_signature(entry)
        object.__setattr__(self, "prime", first.prime)
        object.__setattr__(self, "nvars_annulus", first.nvars_annulus)
        object.__setattr__(self, "nvars_disc", first.nvars_disc)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PolyMatrix is immutable")

    @classmethod
    def identity(cls, prime: int, n: int, m: int, size: int) -> "PolyMatrix":
        one = LaurentPoly.one(prime, n, m)
        zero = LaurentPoly.zero(prime, n, m)
        return cls(tuple(
            tuple(one if i == j else zero for j in range(size))
            for i in range(size)
        ))

    @classmethod
    def zeros(cls, prime: int, n: int, m: int, size: int) -> "PolyMatrix":
        zero = LaurentPoly.zero(prime, n, m)
        return cls(tuple(tuple(zero for _ in range(size)) for _ in range(size)))

    @classmethod
    def from_scalar_rows(cls, prime: int, n: int, m: int, rows: Sequence[Sequence]) -> "PolyMatrix":
        """Convenience constructor lifting scalars to constant polynomials."""
        return cls(tuple(
            tuple(
                e if isinstance(e, LaurentPoly) else LaurentPoly.constant(prime, n, m, e)
                for e in row
            )
            for row in rows
        ))

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def is_zero(self) -> bool:
        return all(entry.is_zero for row in self.rows for entry in row)

    def _check_compatible(self, other: "PolyMatrix") -> None:
        if self.size != other.size:
            raise SignatureError("matrix size mismatch")
        self.rows[0][0]._check_signature(other.rows[0][0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.size == other.size and self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"PolyMatrix(size={self.size}, p={self.prime})"

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        self._check_compatible(other)
        return PolyMatrix(tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.rows, other.rows)
        ))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        self._check_compatible(other)
        return PolyMatrix(tuple(
            tuple(a - b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.rows, other.rows)
        ))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        self._check_compatible(other)
        size = self.size
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                acc = None
                for k in range(size):
                    left = self.rows[i][k]
                    if left.is_zero:
                        continue
                    term = left * other.rows[k][j]
                    acc = term if acc is None else acc + term
                if acc is None:
                    acc = LaurentPoly.zero(self.prime, self.nvars_annulus, self.nvars_disc)
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(tuple(out))

    def partial(self, direction: int) -> "PolyMatrix":
        return PolyMatrix(tuple(
            tuple(entry.partial(direction) for entry in row)
            for row in self.rows
        ))

    def gauss_lognorm(self, radii: RadiusVector) -> LogNorm:
        """Largest entry Gauss norm; the zero norm for the zero matrix."""
        best = NORM_ZERO
        for row in self.rows:
            for entry in row:
                norm = entry.gauss_lognorm(radii)
                if best < norm:
                    best = norm
        return best

    def sup_vertex_lognorm(self, lam: LogRadius) -> LogNorm:
        best = NORM_ZERO
        for row in self.rows:
            for entry in row:
                norm = entry.sup_vertex_lognorm(lam)
                if best < norm:
                    best = norm
        return best

    def specialize(self, direction: int, coords: Sequence[PAdicRational]) -> "PolyMatrix":
        return PolyMatrix(tuple(
            tuple(entry.specialize(direction, coords) for entry in row)
            for row in self.rows
        ))

    def to_records(self) -> list[list[list[dict]]]:
        return [[entry.to_records() for entry in row] for row in self.rows]


@dataclass(frozen=True)
class IntegrabilityViolation:
    """First nonzero curvature found, with the offending direction pair."""

    i: int
    j: int
    curvature: PolyMatrix


@dataclass(frozen=True)
class ConnectionModule:
    """A rank-mu module with one connection matrix per variable."""

    prime: int
    nvars_annulus: int
    nvars_disc: int
    rank: int
    matrices: Tuple[PolyMatrix, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if self.rank < 1:
            raise SignatureError("rank must be >= 1")
        if self.nvars_annulus < 0 or self.nvars_disc < 0 or self.dims < 1:
            raise SignatureError("need at least one variable")
        if len(self.matrices) != self.dims:
            raise SignatureError(
                f"expected {self.dims} connection matrices, got {len(self.matrices)}"
            )
        for N in self.matrices:
            if N.size != self.rank:
                raise SignatureError("connection matrix size != rank")
            if (
                N.prime != self.prime
                or N.nvars_annulus != self.nvars_annulus
                or N.nvars_disc != self.nvars_disc
            ):
                raise SignatureError("connection matrix signature mismatch")

    @property
    def dims(self) -> int:
        return self.nvars_annulus + self.nvars_disc


def curvature(module: ConnectionModule, i: int, j: int) -> PolyMatrix:
    """d_i(N_j) - d_j(N_i) + [N_i, N_j] for a direction pair (0-based)."""
    Ni = module.matrices[i]
    Nj = module.matrices[j]
    return Nj.partial(i) - Ni.partial(j) + (Ni @ Nj) - (Nj @ Ni)


def integrability_check(module: ConnectionModule) -> Optional[IntegrabilityViolation]:
    """None when every curvature vanishes, else the first violation."""
    for i in range(module.dims):
        for j in range(i + 1, module.dims):
            K = curvature(module, i, j)
            if not K.is_zero:
                return IntegrabilityViolation(i, j, K)
    return None


def require_integrable(module: ConnectionModule) -> None:
    violation = integrability_check(module)
    if violation is not None:
        raise NotIntegrableError(
            f"curvature in directions ({violation.i}, {violation.j}) is nonzero"
        )


def iter_deriv_matrices(module: ConnectionModule, direction: int) -> Iterator[PolyMatrix]:
    """Yield G_{direction,0} = identity, G_{direction,1}, ... indefinitely.

    Callers bound the iteration; integrability is not re-checked here.
    """
    if not 0 <= direction < module.dims:
        raise IndexError(f"direction {direction} out of range")
    N = module.matrices[direction]
    G = PolyMatrix.identity(module.prime, module.nvars_annulus, module.nvars_disc, module.rank)
    while True:
        yield G
        G = G.partial(direction) + (N @ G)


@dataclass(frozen=True)
class DerivMatrixSequence:
    """G_{i,0} .. G_{i,depth} for one direction."""

    direction: int
    matrices: Tuple[PolyMatrix, ...]

    @property
    def depth(self) -> int:
        return len(self.matrices) - 1

    def __getitem__(self, s: int) -> PolyMatrix:
        return self.matrices[s]


def iterated_matrices(
    module: ConnectionModule,
    direction: int,
    depth: int,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> DerivMatrixSequence:
    """Collect G_{direction,s} for s = 0..depth (module must be integrable)."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if depth > depth_cap:
        raise DepthCapError(f"depth {depth} exceeds cap {depth_cap}")
    require_integrable(module)
    out = []
    for s, G in enumerate(iter_deriv_matrices(module, direction)):
        out.append(G)
        if s == depth:
            break
    return DerivMatrixSequence(direction, tuple(out))
