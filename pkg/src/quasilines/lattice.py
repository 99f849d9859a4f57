"""Exact intersection theory on the Picard lattice of Bl_n(P^2), 0 <= n <= 8.

Basis convention, fixed for the whole package: (H, E_1, ..., E_n) with Gram
matrix diag(1, -1, ..., -1).  H is the pullback of a line, the E_i are the
exceptional classes of the n blown-up points, and the canonical class is
K = -3H + E_1 + ... + E_n.  A divisor class is stored as the integer
coefficient vector (h; e_1, ..., e_n) in this basis and serialized as the
JSON array [h, e_1, ..., e_n]; a surface model serializes as {"n": n}.

All values are immutable and every operation is pure, so the module is safe
for unrestricted concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatchError, DomainError

MAX_BLOWUPS = 8


@dataclass(frozen=True)
class DivisorClass:
    """Integer class h*H + e_1*E_1 + ... + e_n*E_n."""

    h: int
    e: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(self.e))
        for coeff in (self.h, *self.e):
            if not isinstance(coeff, int):
                raise TypeError(f"divisor coefficients must be integers, got {coeff!r}")

    @property
    def n(self) -> int:
        return len(self.e)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_rank(other)
        return DivisorClass(self.h + other.h, tuple(a + b for a, b in zip(self.e, other.e)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same_rank(other)
        return DivisorClass(self.h - other.h, tuple(a - b for a, b in zip(self.e, other.e)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.h, tuple(-a for a in self.e))

    def __rmul__(self, scalar: int) -> "DivisorClass":
        if not isinstance(scalar, int):
            raise TypeError("divisor classes only scale by integers")
        return DivisorClass(scalar * self.h, tuple(scalar * a for a in self.e))

    def _same_rank(self, other: "DivisorClass") -> None:
        if len(self.e) != len(other.e):
            raise DimensionMismatchError(
                f"classes live on different lattices: {len(self.e)} vs {len(other.e)} exceptional coefficients"
            )

    @property
    def label(self) -> str:
        """Human-readable form such as "E1", "H-E1-E2" or "2H-E1-E2-E3-E4-E5"."""
        parts = []
        if self.h:
            parts.append({1: "H", -1: "-H"}.get(self.h, f"{self.h}H"))
        for i, c in enumerate(self.e, start=1):
            if c == 0:
                continue
            magnitude = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{'+' if c > 0 else '-'}{magnitude}E{i}")
        if not parts:
            return "0"
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    def to_json(self) -> list[int]:
        return [self.h, *self.e]

    @classmethod
    def from_json(cls, data) -> "DivisorClass":
        if not isinstance(data, (list, tuple)) or len(data) < 1:
            raise DomainError(f"divisor class JSON must be a non-empty array, got {data!r}")
        return cls(data[0], tuple(data[1:]))

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class SurfaceModel:
    """The blow-up of the projective plane in n general points.

    n is restricted to 0..8: beyond eight points the anticanonical class
    stops being ample and the finite curve classification below breaks down.
    """

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int):
            raise TypeError(f"n must be an integer, got {self.n!r}")
        if not 0 <= self.n <= MAX_BLOWUPS:
            raise DomainError(f"n must be in 0..{MAX_BLOWUPS}, got {self.n}")

    def hyperplane(self) -> DivisorClass:
        return DivisorClass(1, (0,) * self.n)

    def exceptional(self, i: int) -> DivisorClass:
        """The class E_i, 1-based."""
        if not 1 <= i <= self.n:
            raise DomainError(f"exceptional index must be in 1..{self.n}, got {i}")
        return DivisorClass(0, tuple(1 if j == i else 0 for j in range(1, self.n + 1)))

    def to_json(self) -> dict:
        return {"n": self.n}

    @classmethod
    def from_json(cls, data) -> "SurfaceModel":
        if not isinstance(data, dict) or "n" not in data:
            raise DomainError(f'surface model JSON must be {{"n": k}}, got {data!r}')
        return cls(data["n"])


def _check_on(s: SurfaceModel, a: DivisorClass) -> None:
    if len(a.e) != s.n:
        raise DimensionMismatchError(
            f"class has {len(a.e)} exceptional coefficients but the surface has n={s.n}"
        )


def intersect(s: SurfaceModel, a: DivisorClass, b: DivisorClass) -> int:
    """Intersection product a.b = a_h*b_h - sum_i a_i*b_i; symmetric and bilinear."""
    _check_on(s, a)
    _check_on(s, b)
    return a.h * b.h - sum(x * y for x, y in zip(a.e, b.e))


def self_intersection(s: SurfaceModel, a: DivisorClass) -> int:
    return intersect(s, a, a)


def canonical_class(s: SurfaceModel) -> DivisorClass:
    """K = -3H + E_1 + ... + E_n, with K^2 = 9 - n."""
    return DivisorClass(-3, (1,) * s.n)


def anticanonical_degree(s: SurfaceModel, a: DivisorClass) -> int:
    """Degree of a class with respect to -K."""
    return -intersect(s, canonical_class(s), a)
