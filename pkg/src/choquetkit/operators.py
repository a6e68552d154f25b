"""Approximation operators: classical Bernstein and Picard baselines and
their Choquet counterparts.

The Bernstein-Choquet operator integrates ``i -> f(i/n)`` against a
perturbed Bernstein-basis capacity: the singleton at one index ``i0``
carries extra mass ``theta * min of the other basis weights`` (the largest
perturbation that keeps the set function monotone), every other set gets
the plain basis sum, and the full ground set is pinned to 1.  With
``theta = 0`` the capacity is additive and the operator collapses to the
classical Bernstein polynomial.

The kernel operators divide a real-line Choquet integral of
``f(t) * kernel(t)`` by the integral of the bare kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .capacity import DiscreteCapacity
from .continuous import (DEFAULT_QUADRATURE, QuadratureConfig,
                         integrate_adaptive, kernel_normalizer,
                         choquet_integral_real, product_level_function)
from .discrete import choquet_integral
from .functions import FunctionSpec
from .realline import Kernel, RealCapacity


def bernstein_basis(n: int, i: int, x: float) -> float:
    """Basis polynomial C(n, i) * x**i * (1 - x)**(n - i)."""
    if not 0 <= i <= n:
        raise ValueError("basis index must satisfy 0 <= i <= n")
    if not 0.0 <= x <= 1.0:
        raise ValueError("basis argument must lie in [0, 1]")
    return math.comb(n, i) * x ** i * (1.0 - x) ** (n - i)


def bernstein_basis_vector(n: int, x: float) -> list[float]:
    return [bernstein_basis(n, i, x) for i in range(n + 1)]


def bernstein_classical(f: Callable[[float], float], n: int, x: float) -> float:
    """B_n(f)(x) = sum of f(i/n) weighted by the basis."""
    p = bernstein_basis_vector(n, x)
    return math.fsum(f(i / n) * p[i] for i in range(n + 1))


@dataclass(frozen=True)
class PerturbationProfile:
    """Position of the perturbed singleton and how far into the admissible
    band it sits (0 = additive lower edge, 1 = largest admissible value)."""

    i0: int = 1
    theta: float = 1.0

    def __post_init__(self):
        if self.i0 < 0:
            raise ValueError("perturbed index must be nonnegative")
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError("theta must lie in [0, 1]")


DEFAULT_PROFILE = PerturbationProfile()


def perturbation_gap(n: int, x: float, profile: PerturbationProfile = DEFAULT_PROFILE) -> float:
    """The perturbed singleton mass minus its basis weight:
    theta * min over the other basis weights."""
    p = bernstein_basis_vector(n, x)
    return profile.theta * min(p[i] for i in range(n + 1) if i != profile.i0)


def bernstein_choquet_capacity(n: int, x: float,
                               profile: PerturbationProfile = DEFAULT_PROFILE
                               ) -> DiscreteCapacity:
    """Perturbed Bernstein-basis capacity on {0, ..., n}.

    Monotone, subadditive, normalized; additive exactly when theta = 0 or
    the perturbation gap vanishes (x in {0, 1}).
    """
    if n < 2:
        raise ValueError("perturbed basis capacity needs n >= 2")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    i0 = profile.i0
    if i0 > n:
        raise ValueError("perturbed index outside the ground set")
    p = bernstein_basis_vector(n, x)
    gap = profile.theta * min(p[i] for i in range(n + 1) if i != i0)
    size = n + 1
    full = frozenset(range(size))

    def rule(subset: frozenset) -> float:
        if not subset:
            return 0.0
        if len(subset) == size:
            return 1.0
        total = math.fsum(p[i] for i in subset)
        if i0 in subset:
            total += gap
        return total

    def tails(order: Sequence[int]) -> list[float]:
        out = [0.0] * (size + 1)
        pos = order.index(i0)
        acc = 0.0
        for k in range(size - 1, -1, -1):
            acc += p[order[k]]
            out[k] = acc + (gap if k <= pos else 0.0)
        out[0] = 1.0
        return out

    return DiscreteCapacity(size, rule, normalized=True,
                            name=f"bernstein_perturbed(n={n})", tails_fn=tails)


def bernstein_choquet(f: Callable[[float], float], n: int, x: float,
                      profile: PerturbationProfile = DEFAULT_PROFILE) -> float:
    """Choquet integral of i -> f(i/n) against the perturbed basis capacity.

    Valid for arbitrary f; the sorting formula handles non-monotone values.
    """
    cap = bernstein_choquet_capacity(n, x, profile)
    return choquet_integral([f(i / n) for i in range(n + 1)], cap)


def bernstein_choquet_closedform(spec: FunctionSpec, n: int, x: float,
                                 profile: PerturbationProfile = DEFAULT_PROFILE) -> float:
    """Closed form for monotone f: the classical polynomial plus a single
    correction proportional to the perturbation gap.

    nondecreasing: B_n(f)(x) + [f(i0/n) - f(0)] * gap
    nonincreasing: B_n(f)(x) + [f(i0/n) - f(1)] * gap
    """
    if spec.monotone not in ("nondecreasing", "nonincreasing"):
        raise ValueError("closed form requires monotone metadata on the spec")
    if n < 2:
        raise ValueError("perturbed basis capacity needs n >= 2")
    base = bernstein_classical(spec.fn, n, x)
    gap = perturbation_gap(n, x, profile)
    anchor = 0.0 if spec.monotone == "nondecreasing" else 1.0
    return base + (spec.fn(profile.i0 / n) - spec.fn(anchor)) * gap


# ---------------------------------------------------------------------------
# kernel operators


def _kernel_choquet(spec: FunctionSpec, kernel: Kernel, mu: RealCapacity,
                    cfg: QuadratureConfig) -> float:
    g = product_level_function(spec, kernel)
    numerator = choquet_integral_real(g, mu, cfg)
    return numerator / kernel_normalizer(kernel, mu, cfg)


def picard_choquet(spec: FunctionSpec, n: float, x: float, mu: RealCapacity,
                   cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Normalized Choquet integral of f against the two-sided exponential kernel."""
    return _kernel_choquet(spec, Kernel.laplace(n, x), mu, cfg)


def weierstrass_choquet(spec: FunctionSpec, n: float, x: float, mu: RealCapacity,
                        cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """Normalized Choquet integral of f against the Gaussian kernel."""
    return _kernel_choquet(spec, Kernel.gauss(n, x), mu, cfg)


def picard_classical(f: Callable[[float], float], n: float, x: float,
                     cfg: QuadratureConfig = DEFAULT_QUADRATURE,
                     tail: float = 40.0) -> float:
    """(n/2) * integral of f(t) exp(-n|t - x|) dt.

    The domain is truncated to |t - x| <= tail/n (the discarded mass is
    below exp(-tail)); the kernel kink at x splits the quadrature.
    """
    r = tail / n

    def integrand(t: float) -> float:
        return f(t) * math.exp(-n * abs(t - x))

    left, _ = integrate_adaptive(integrand, x - r, x, cfg)
    right, _ = integrate_adaptive(integrand, x, x + r, cfg)
    return n / 2.0 * (left + right)
