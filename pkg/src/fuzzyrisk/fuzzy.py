"""Membership functions, linguistic variables, and discretized set algebra.

All types are immutable after construction and all operations are pure, so
shared instances can be evaluated concurrently without locking.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DimensionError

DEFAULT_LABELS = ("veryLow", "low", "medium", "high", "veryHigh")
DEFAULT_RANGE = (0.0, 10.0)
DEFAULT_SAMPLES = 1001


@dataclass(frozen=True)
class TriangularMF:
    """Triangle with feet at a and b and peak at m.

    a == m or m == b encodes a shoulder: the degenerate ramp collapses to
    the plateau value 1 at the shared point, so the extremes of a partition
    reach full membership.
    """

    a: float
    m: float
    b: float

    def __post_init__(self):
        if not (self.a <= self.m <= self.b):
            raise ConfigError(f"triangular MF requires a <= m <= b, got ({self.a}, {self.m}, {self.b})")
        if self.a == self.b:
            raise ConfigError("triangular MF must have positive width (a < b)")

    def __call__(self, x: float) -> float:
        if x < self.a or x > self.b:
            return 0.0
        if x == self.m:
            return 1.0
        if x < self.m:
            return (x - self.a) / (self.m - self.a)
        if x < self.b:
            return (self.b - x) / (self.b - self.m)
        return 0.0

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        # Same arithmetic as the scalar path so grid values match it exactly.
        y = np.zeros_like(xs, dtype=float)
        inside = (xs >= self.a) & (xs <= self.b)
        if self.m > self.a:
            left = inside & (xs < self.m)
            y[left] = (xs[left] - self.a) / (self.m - self.a)
        if self.b > self.m:
            right = inside & (xs > self.m) & (xs < self.b)
            y[right] = (self.b - xs[right]) / (self.b - self.m)
        y[xs == self.m] = 1.0
        return y

    def prototype(self) -> float:
        """The x of maximal membership."""
        return self.m


@dataclass(frozen=True)
class TrapezoidalMF:
    """Trapezoid with feet at a and d and a plateau of degree 1 on [b, c]."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not (self.a <= self.b <= self.c <= self.d):
            raise ConfigError(
                f"trapezoidal MF requires a <= b <= c <= d, got ({self.a}, {self.b}, {self.c}, {self.d})"
            )
        if self.a == self.d:
            raise ConfigError("trapezoidal MF must have positive width (a < d)")

    def __call__(self, x: float) -> float:
        if x < self.a or x > self.d:
            return 0.0
        if self.b <= x <= self.c:
            return 1.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        return (self.d - x) / (self.d - self.c)

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        y = np.zeros_like(xs, dtype=float)
        if self.b > self.a:
            left = (xs >= self.a) & (xs < self.b)
            y[left] = (xs[left] - self.a) / (self.b - self.a)
        if self.d > self.c:
            right = (xs > self.c) & (xs <= self.d)
            y[right] = (self.d - xs[right]) / (self.d - self.c)
        y[(xs >= self.b) & (xs <= self.c)] = 1.0
        return y

    def prototype(self) -> float:
        """Plateau midpoint."""
        return (self.b + self.c) / 2.0


MembershipFunction = TriangularMF | TrapezoidalMF


@dataclass(frozen=True)
class Universe:
    """A closed interval [lo, hi] sampled at n_samples uniform points."""

    lo: float = DEFAULT_RANGE[0]
    hi: float = DEFAULT_RANGE[1]
    n_samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ConfigError(f"universe requires lo < hi, got [{self.lo}, {self.hi}]")
        if self.n_samples < 2:
            raise ConfigError(f"universe needs at least 2 samples, got {self.n_samples}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n_samples)

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)


@dataclass(frozen=True)
class DiscretizedFuzzySet:
    """Membership degrees sampled on a universe's uniform grid."""

    universe: Universe
    degrees: np.ndarray = field(compare=False)

    def __post_init__(self):
        degrees = np.array(self.degrees, dtype=float)
        if degrees.shape != (self.universe.n_samples,):
            raise DimensionError(
                f"expected {self.universe.n_samples} degrees, got shape {degrees.shape}"
            )
        if degrees.size and (degrees.min() < 0.0 or degrees.max() > 1.0):
            raise DimensionError("membership degrees must lie in [0, 1]")
        degrees.setflags(write=False)
        object.__setattr__(self, "degrees", degrees)

    def _check_compatible(self, other: "DiscretizedFuzzySet") -> None:
        if self.universe != other.universe:
            raise DimensionError(
                f"universe mismatch: {self.universe} vs {other.universe}"
            )

    def union(self, other: "DiscretizedFuzzySet") -> "DiscretizedFuzzySet":
        self._check_compatible(other)
        return DiscretizedFuzzySet(self.universe, np.maximum(self.degrees, other.degrees))

    def intersection(self, other: "DiscretizedFuzzySet") -> "DiscretizedFuzzySet":
        self._check_compatible(other)
        return DiscretizedFuzzySet(self.universe, np.minimum(self.degrees, other.degrees))

    def clip(self, level: float) -> "DiscretizedFuzzySet":
        return DiscretizedFuzzySet(self.universe, np.minimum(self.degrees, level))

    def is_zero(self) -> bool:
        return not bool(np.any(self.degrees > 0.0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiscretizedFuzzySet)
            and self.universe == other.universe
            and np.array_equal(self.degrees, other.degrees)
        )


def eval_mf(mf: MembershipFunction, x: float) -> float:
    """Degree of membership of a crisp value; total over the reals."""
    return mf(x)


def discretize(mf: MembershipFunction, universe: Universe) -> DiscretizedFuzzySet:
    return DiscretizedFuzzySet(universe, mf.evaluate_array(universe.grid()))


def fuzzy_union(a: DiscretizedFuzzySet, b: DiscretizedFuzzySet) -> DiscretizedFuzzySet:
    """Pointwise maximum of two sets over the same universe."""
    return a.union(b)


def fuzzy_intersection(a: DiscretizedFuzzySet, b: DiscretizedFuzzySet) -> DiscretizedFuzzySet:
    """Pointwise minimum of two sets over the same universe."""
    return a.intersection(b)


@dataclass(frozen=True)
class LinguisticVariable:
    """A named universe with an ordered set of labeled terms."""

    name: str
    universe: Universe
    terms: tuple[tuple[str, MembershipFunction], ...]

    def __post_init__(self):
        labels = [label for label, _ in self.terms]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"variable {self.name!r} has duplicate term labels")
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.terms)

    def mf(self, label: str) -> MembershipFunction:
        for term_label, mf in self.terms:
            if term_label == label:
                return mf
        raise ConfigError(f"variable {self.name!r} has no term {label!r}")

    def term_index(self, label: str) -> int:
        for i, (term_label, _) in enumerate(self.terms):
            if term_label == label:
                return i
        raise ConfigError(f"variable {self.name!r} has no term {label!r}")


def make_uniform_partition(
    universe: Universe, labels: tuple[str, ...] | list[str], name: str = ""
) -> LinguisticVariable:
    """Evenly spaced triangular terms with shoulder triangles at the ends.

    Peaks sit at lo + i*(hi-lo)/(k-1); each interior term spans its two
    neighbouring peaks, so degrees sum to one everywhere (Ruspini partition).
    """
    labels = tuple(labels)
    if len(labels) < 2:
        raise ConfigError(f"a partition needs at least 2 labels, got {len(labels)}")
    k = len(labels)
    step = (universe.hi - universe.lo) / (k - 1)
    peaks = [universe.lo + i * step for i in range(k)]
    terms = []
    for i, label in enumerate(labels):
        a = peaks[i - 1] if i > 0 else peaks[i]
        b = peaks[i + 1] if i < k - 1 else peaks[i]
        terms.append((label, TriangularMF(a, peaks[i], b)))
    return LinguisticVariable(name=name, universe=universe, terms=tuple(terms))


def default_variable(name: str, universe: Universe | None = None) -> LinguisticVariable:
    """The standard five-term veryLow..veryHigh variable over [0, 10]."""
    return make_uniform_partition(universe or Universe(), DEFAULT_LABELS, name=name)
