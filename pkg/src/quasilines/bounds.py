"""Exact evaluators for the quasi-line counting bounds.

Every bound is computed in exact integer or rational arithmetic; the only
floating point anywhere is the display-only log10 field of a report.  The
headline evaluators:

* dichotomy_bound      -- 16 (deg l)^3 / deg X, the split-leaf counting bound.
* chow_component_bound -- binom(h0 * max(d, surf_deg), h0 - 1) ** (d^2 * h0),
  the Chow-component bound for quasi-line families on an embedded leaf
  surface.  With the default h0 = (d+1)(d+2)/2 the lower binomial index is
  h0 - 1 = d(d+3)/2 and the exponent is d^2 (d+1)(d+2)/2, which is the
  classical form of the estimate; passing a sharper section count h0 lowers
  the bound (h0 = 5 for the anticanonical quintic case).
* leaf_section_bound   -- the largest guaranteed value of E.l extracted from
  the singular-locus inequality  sing_dim < rank - 1 + ((d-1)/d)(n - rank).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError


@dataclass(frozen=True)
class FoliationProfile:
    """Numerical profile of a singular foliation on an n-fold.

    sing_dim is the local dimension of the singular locus at the basepoint;
    saturation forces codimension >= 2, hence sing_dim <= n - 2.
    """

    n: int
    rank: int
    sing_dim: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"ambient dimension must be positive, got {self.n}")
        if not 1 <= self.rank <= self.n:
            raise DomainError(f"rank must be in 1..{self.n}, got {self.rank}")
        if not 0 <= self.sing_dim <= self.n - 2:
            raise DomainError(
                f"sing_dim must be in 0..{self.n - 2} (codimension >= 2), got {self.sing_dim}"
            )

    def is_consistent(self) -> bool:
        """Whether sing_dim >= rank - 1, the lower bound every actual foliation obeys."""
        return self.sing_dim >= self.rank - 1


@dataclass(frozen=True)
class DegreeData:
    """Validated bag of degree parameters accepted by the bound evaluators.

    Any subset of the fields may be supplied; every supplied value must be a
    strictly positive integer.
    """

    deg_l: int | None = None
    deg_x: int | None = None
    d: int | None = None
    surf_deg: int | None = None
    h0: int | None = None

    def __post_init__(self):
        for name in ("deg_l", "deg_x", "d", "surf_deg", "h0"):
            value = getattr(self, name)
            if value is None:
                continue
            if not isinstance(value, int) or value < 1:
                raise DomainError(f"{name} must be a strictly positive integer, got {value!r}")


def _log10_positive_int(value: int) -> float:
    # str-prefix trick keeps full float accuracy for integers too large for float().
    if value <= 0:
        raise DomainError(f"log10 needs a positive value, got {value}")
    digits = str(value)
    if len(digits) <= 15:
        return math.log10(value)
    return (len(digits) - 18) + math.log10(int(digits[:18]))


def _log10_exact(value: int | Fraction) -> float:
    if isinstance(value, Fraction):
        return _log10_positive_int(value.numerator) - _log10_positive_int(value.denominator)
    return _log10_positive_int(value)


@dataclass(frozen=True)
class BoundReport:
    """An evaluated bound: exact value plus the inputs it came from.

    value is a python int or Fraction, never a float; log10 is display-only.
    structure, when present, records a compact power form for huge values,
    e.g. {"binom": [60, 9], "exponent": 90}.
    """

    statement: str
    inputs: dict
    value: int | Fraction
    log10: float
    structure: dict | None = None

    @property
    def digit_count(self) -> int | None:
        """Decimal digits of an integer value; None for non-integers."""
        if isinstance(self.value, int):
            return len(str(self.value))
        return None

    def to_json_dict(self, max_value_digits: int = 10_000) -> dict:
        out: dict = {"statement": self.statement, "inputs": dict(self.inputs), "log10": self.log10}
        if isinstance(self.value, Fraction):
            out["value"] = f"{self.value.numerator}/{self.value.denominator}"
        elif self.digit_count is not None and self.digit_count > max_value_digits:
            compact = {"digits": self.digit_count}
            if self.structure:
                compact.update(self.structure)
            out["value"] = compact
        else:
            out["value"] = str(self.value)
        return out


def dichotomy_bound(deg_l: int, deg_x: int) -> BoundReport:
    """Counting bound 16 (deg l)^3 / deg X for split-leaf threefolds (exact rational)."""
    if deg_l < 1 or deg_x < 1:
        raise DomainError(f"degrees must be >= 1, got deg_l={deg_l}, deg_x={deg_x}")
    value: int | Fraction = Fraction(16 * deg_l**3, deg_x)
    if value.denominator == 1:
        value = int(value)
    return BoundReport(
        statement="dichotomy",
        inputs={"deg_l": deg_l, "deg_x": deg_x},
        value=value,
        log10=_log10_exact(value),
    )


def chow_component_bound(d: int, surf_deg: int, h0: int | None = None) -> BoundReport:
    """Chow-component bound binom(h0 * max(d, surf_deg), h0 - 1) ** (d^2 * h0).

    d is the hyperplane degree of the quasi-line, surf_deg the degree of the
    embedded leaf surface, and h0 the section count of the embedding line
    bundle, defaulting to the plane-curve estimate (d+1)(d+2)/2.
    """
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    if surf_deg < 1:
        raise DomainError(f"surf_deg must be >= 1, got {surf_deg}")
    defaulted = h0 is None
    if defaulted:
        h0 = (d + 1) * (d + 2) // 2
    if h0 < 1:
        raise DomainError(f"h0 must be >= 1, got {h0}")
    binom_n = h0 * max(d, surf_deg)
    binom_k = h0 - 1
    exponent = d * d * h0
    base = math.comb(binom_n, binom_k)
    value = base**exponent
    return BoundReport(
        statement="chow_component",
        inputs={"d": d, "surf_deg": surf_deg, "h0": h0, "h0_defaulted": defaulted},
        value=value,
        log10=exponent * _log10_exact(base) if base > 1 else 0.0,
        structure={"binom": [binom_n, binom_k], "exponent": exponent},
    )


def leaf_section_bound(profile: FoliationProfile) -> int:
    """Largest guaranteed bound on E.l for a leaf-cutting divisor E.

    Scans d = 2, 3, ... for the first d with
    sing_dim < rank - 1 + ((d-1)/d)(n - rank) and returns d - 1 (the strict
    inequality E.l < d turned into an integer bound).  The right-hand side
    increases to n - 1 > sing_dim, so the scan terminates; a hard cap at
    d = n(n+1) guards the loop.
    """
    if profile.rank >= profile.n:
        raise DomainError("the foliation must be non-trivial: rank < n")
    n, rank, sing = profile.n, profile.rank, profile.sing_dim
    d = 2
    # integer form of sing < rank - 1 + ((d-1)/d)(n - rank)
    while not d * (sing - rank + 1) < (d - 1) * (n - rank):
        d += 1
        assert d <= n * (n + 1), "scan escaped its termination bound"
    return d - 1


def sing_dim_lower_bound(profile: FoliationProfile) -> int:
    """Every foliation of this rank has singular locus of dimension >= rank - 1."""
    return profile.rank - 1


def hodge_surface_check(d2: int, h2: int, dh: int) -> bool:
    """Index inequality on a surface: D^2 * H^2 <= (D.H)^2 for ample H (H^2 > 0)."""
    if h2 <= 0:
        raise DomainError(f"H^2 must be positive, got {h2}")
    return d2 * h2 <= dh * dh


def hodge_threefold_check(d2h: int, h3: int, dh2: int) -> bool:
    """Index inequality on a threefold: (D^2.H)(H^3) <= (D.H^2)^2 for ample H."""
    if h3 <= 0:
        raise DomainError(f"H^3 must be positive, got {h3}")
    return d2h * h3 <= dh2 * dh2


def leaf_degree_bound(deg_l: int) -> int:
    """Comb-smoothing degree bound 4 (deg l)^2 for a leaf swept by degree-l curves."""
    if deg_l < 1:
        raise DomainError(f"deg_l must be >= 1, got {deg_l}")
    return 4 * deg_l * deg_l


def h0_and_embedding_bounds(d: int) -> tuple[int, int]:
    """Section bound (d+1)(d+2)/2 and ambient dimension bound d(d+3)/2 = first - 1."""
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    return ((d + 1) * (d + 2) // 2, d * (d + 3) // 2)
