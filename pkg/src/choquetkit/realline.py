"""Kernels and capacities on the real line.

Two capacity variants are supported on :class:`IntervalUnion` sets:

* distorted Lebesgue, ``mu(A) = gamma(length(A))`` with a concave
  nondecreasing distortion (the distortion acts on arbitrary lengths,
  not just [0, 1]);
* possibility, ``mu(A) = sup of a unimodal kernel over A``, which turns
  unions into maxima: ``mu(A | B) = max(mu(A), mu(B))``.

The kernels are the two convolution-type bumps the operators use,
``exp(-n |t - x|)`` and ``exp(-n (t - x)**2)``; both peak at ``x`` with
value 1, so their supremum over an interval is attained at the endpoint
nearest ``x`` (or is 1 when ``x`` lies inside).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .capacity import DistortionFunction
from .intervals import IntervalUnion

LAPLACE = "laplace"
GAUSS = "gauss"


@dataclass(frozen=True)
class Kernel:
    family: str
    n: float
    x: float

    def __post_init__(self):
        if self.family not in (LAPLACE, GAUSS):
            raise ValueError(f"unknown kernel family {self.family!r}")
        if not self.n > 0:
            raise ValueError("kernel parameter n must be positive")

    @staticmethod
    def laplace(n: float, x: float) -> "Kernel":
        return Kernel(LAPLACE, float(n), float(x))

    @staticmethod
    def gauss(n: float, x: float) -> "Kernel":
        return Kernel(GAUSS, float(n), float(x))

    def __call__(self, t: float) -> float:
        if self.family == LAPLACE:
            return math.exp(-self.n * abs(t - self.x))
        return math.exp(-self.n * (t - self.x) ** 2)

    def sup_on(self, a: float, b: float) -> float:
        """Supremum over the closed interval [a, b]."""
        if a <= self.x <= b:
            return 1.0
        nearest = a if self.x < a else b
        return self(nearest)

    def level_set(self, alpha: float) -> IntervalUnion:
        if self.family == LAPLACE:
            return level_set_laplace(self.n, self.x, alpha)
        return level_set_gauss(self.n, self.x, alpha)


def level_set_laplace(n: float, x: float, alpha: float) -> IntervalUnion:
    """{t : exp(-n |t - x|) >= alpha}: empty above 1, else [x + ln(a)/n, x - ln(a)/n]."""
    if alpha <= 0:
        raise ValueError("level must be positive")
    if alpha > 1:
        return IntervalUnion.empty()
    r = -math.log(alpha) / n
    return IntervalUnion.single(x - r, x + r)


def level_set_gauss(n: float, x: float, alpha: float) -> IntervalUnion:
    """{t : exp(-n (t - x)**2) >= alpha}: radius sqrt(-ln(a)/n)."""
    if alpha <= 0:
        raise ValueError("level must be positive")
    if alpha > 1:
        return IntervalUnion.empty()
    r = math.sqrt(-math.log(alpha) / n)
    return IntervalUnion.single(x - r, x + r)


@dataclass(frozen=True)
class RealCapacity:
    """Capacity on interval unions: distorted Lebesgue or possibility."""

    kind: str  # "distorted_lebesgue" | "possibility"
    gamma: DistortionFunction | None = None
    kernel: Kernel | None = None

    @staticmethod
    def distorted_lebesgue(gamma: DistortionFunction) -> "RealCapacity":
        return RealCapacity("distorted_lebesgue", gamma=gamma)

    @staticmethod
    def sqrt_lebesgue() -> "RealCapacity":
        return RealCapacity.distorted_lebesgue(DistortionFunction.sqrt())

    @staticmethod
    def lebesgue() -> "RealCapacity":
        return RealCapacity.distorted_lebesgue(DistortionFunction.identity())

    @staticmethod
    def possibility(kernel: Kernel) -> "RealCapacity":
        return RealCapacity("possibility", kernel=kernel)

    def value(self, A: IntervalUnion) -> float:
        if A.is_empty:
            return 0.0
        if self.kind == "distorted_lebesgue":
            length = A.total_length
            return self.gamma(length) if length > 0 else 0.0
        return max(self.kernel.sup_on(a, b) for a, b in A.intervals)


def evaluate_real(cap: RealCapacity, A: IntervalUnion) -> float:
    return cap.value(A)
