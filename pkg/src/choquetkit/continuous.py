"""Choquet integration of nonnegative functions on the real line.

The integral is computed from the layer-cake representation: integrate
``alpha -> mu({g >= alpha})`` over ``(0, sup g]``.  A function enters the
engine as a :class:`LevelSetFunction`, i.e. bundled with an oracle that
returns each super-level set as an :class:`IntervalUnion`.

Two things keep the quadrature honest:

* the integration variable is substituted ``alpha = exp(-s)`` for
  kernel-type integrands, whose level sets grow logarithmically as
  ``alpha -> 0`` (the substituted integrand is smooth and decays
  exponentially, which adaptive quadrature handles well);
* the domain is split at every level where the super-level set changes
  component structure (level of a knot, of a local extremum, ...), since
  adaptive refinement across such kinks is not trusted.

Level sets of the registered products are closed forms where possible
(constants, decaying exponentials, the deviation ``|t - x|`` against its
own kernel via Lambert W) and bracketed root-finding on the piecewise
monotone profile otherwise.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.optimize import brentq
from scipy.special import lambertw

from .errors import CapabilityError, DivergenceError, QuadratureError
from .functions import FunctionSpec
from .intervals import IntervalUnion
from .realline import LAPLACE, Kernel, RealCapacity

_ROOT_XTOL = 1e-13
_EXP_BRANCH_MIN = -1.0 / math.e


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-9
    rel_tol: float = 1e-8
    max_subdivisions: int = 2000
    rule: str = "adaptive-gk21"

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ValueError("max_subdivisions too small")


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class LevelSetFunction:
    """A nonnegative function together with its super-level-set oracle."""

    value: Callable[[float], float]
    level: Callable[[float], IntervalUnion]
    sup_value: float
    alpha_breakpoints: tuple = ()
    log_substitution: bool = True
    label: str = ""


def kernel_level_function(kernel: Kernel) -> LevelSetFunction:
    """The bare kernel as a level-set function (sup is 1 at the peak)."""
    return LevelSetFunction(kernel.__call__, kernel.level_set, 1.0,
                            label=f"{kernel.family}-kernel")


def indicator_plateau(height: float, a: float, b: float) -> LevelSetFunction:
    """height * indicator of [a, b]: a single layer of the given height."""
    if height < 0:
        raise ValueError("plateau height must be nonnegative")
    if a > b:
        raise ValueError("plateau needs a <= b")

    def level(alpha: float) -> IntervalUnion:
        if alpha <= 0:
            raise ValueError("level must be positive")
        return IntervalUnion.single(a, b) if alpha <= height else IntervalUnion.empty()

    return LevelSetFunction(
        lambda t: height if a <= t <= b else 0.0, level, height,
        log_substitution=False, label="plateau")


# ---------------------------------------------------------------------------
# products  f(t) * kernel(t)


def _lambert_pair(arg: float) -> tuple[float, float]:
    """Both real solutions w of w * exp(w) = arg for arg in [-1/e, 0)."""
    arg = max(arg, _EXP_BRANCH_MIN)
    return float(lambertw(arg, 0).real), float(lambertw(arg, -1).real)


def _product_exp_neg(spec: FunctionSpec, kernel: Kernel) -> LevelSetFunction:
    lam = spec.param("lam", 1.0)
    scale = spec.param("scale", 1.0)
    n, x = kernel.n, kernel.x

    def value(t: float) -> float:
        return scale * math.exp(-lam * t) * kernel(t)

    if kernel.family == LAPLACE:
        if n <= lam:
            raise DivergenceError(
                f"exp_neg(lam={lam}) against a Laplace kernel needs n > lam, got n={n}")
        sup = scale * math.exp(-lam * x)

        def level(alpha: float) -> IntervalUnion:
            if alpha <= 0:
                raise ValueError("level must be positive")
            if alpha > sup:
                return IntervalUnion.empty()
            la = math.log(alpha / scale)
            lo = (n * x + la) / (n - lam)
            hi = (n * x - la) / (n + lam)
            return IntervalUnion.single(min(lo, hi), max(lo, hi))

    else:
        # exponential times Gaussian always decays; the exponent is a
        # downward parabola with vertex x - lam/(2n)
        sup = scale * math.exp(-lam * x + lam * lam / (4 * n))

        def level(alpha: float) -> IntervalUnion:
            if alpha <= 0:
                raise ValueError("level must be positive")
            if alpha > sup:
                return IntervalUnion.empty()
            la = math.log(alpha / scale)
            disc = max(lam * lam - 4 * n * lam * x - 4 * n * la, 0.0)
            root = math.sqrt(disc)
            lo = ((2 * n * x - lam) - root) / (2 * n)
            hi = ((2 * n * x - lam) + root) / (2 * n)
            return IntervalUnion.single(lo, hi)

    return LevelSetFunction(value, level, sup, label=f"exp_neg*{kernel.family}")


def _product_abs_dev_centered(kernel: Kernel) -> LevelSetFunction:
    """|t - x| * kernel(t) with the deviation centered at the kernel peak.

    Substituting y = |t - x| the profile is y*exp(-n*y) (or y*exp(-n*y**2)),
    so each super-level set is an annulus around x whose radii come from
    the two real Lambert W branches.
    """
    n, x = kernel.n, kernel.x

    def value(t: float) -> float:
        return abs(t - x) * kernel(t)

    if kernel.family == LAPLACE:
        sup = 1.0 / (n * math.e)

        def radii(alpha: float) -> tuple[float, float]:
            w0, wm1 = _lambert_pair(-n * alpha)
            return -w0 / n, -wm1 / n

    else:
        sup = 1.0 / math.sqrt(2.0 * n * math.e)

        def radii(alpha: float) -> tuple[float, float]:
            w0, wm1 = _lambert_pair(-2.0 * n * alpha * alpha)
            return math.sqrt(-w0 / (2 * n)), math.sqrt(-wm1 / (2 * n))

    def level(alpha: float) -> IntervalUnion:
        if alpha <= 0:
            raise ValueError("level must be positive")
        if alpha > sup:
            return IntervalUnion.empty()
        y1, y2 = radii(alpha)
        return IntervalUnion.from_pairs([(x - y2, x - y1), (x + y1, x + y2)])

    return LevelSetFunction(value, level, sup, label=f"abs_dev*{kernel.family}")


def _linear_pieces(spec: FunctionSpec) -> list[tuple[float, float, float, float]]:
    """(lo, hi, a, b) pieces with f = a + b*t covering the line."""
    if spec.name == "abs_dev":
        c = spec.param("center", 0.0)
        return [(-math.inf, c, c, -1.0), (c, math.inf, -c, 1.0)]
    knots = spec.param("knots")
    ts = [t for t, _ in knots]
    vs = [v for _, v in knots]
    pieces = [(-math.inf, ts[0], vs[0], 0.0)]
    for j in range(len(ts) - 1):
        b = (vs[j + 1] - vs[j]) / (ts[j + 1] - ts[j])
        a = vs[j] - b * ts[j]
        pieces.append((ts[j], ts[j + 1], a, b))
    pieces.append((ts[-1], math.inf, vs[-1], 0.0))
    return pieces


def _linear_stationaries(pieces, kernel: Kernel) -> list[float]:
    """Interior zeros of d/dt[(a + b t) * kernel(t)] for every piece."""
    n, x = kernel.n, kernel.x
    out = []
    for lo, hi, a, b in pieces:
        if kernel.family == LAPLACE:
            # split at the kernel kink; on each side K = exp(s*n*(t-x))
            for plo, phi, s in ((lo, min(hi, x), 1.0), (max(lo, x), hi, -1.0)):
                if plo >= phi or b == 0.0:
                    continue
                t_star = -1.0 / (s * n) - a / b
                if plo < t_star < phi:
                    out.append(t_star)
        else:
            if b == 0.0:
                if lo < x < hi and a != 0.0:
                    out.append(x)
                continue
            # 2nb t^2 + 2n(a - bx) t - (2nax + b) = 0
            coeffs = [2 * n * b, 2 * n * (a - b * x), -(2 * n * a * x + b)]
            for r in np.roots(coeffs):
                if abs(r.imag) < 1e-12 and lo < r.real < hi:
                    out.append(float(r.real))
    return out


def _sqrt_stationaries(shift: float, kernel: Kernel) -> list[float]:
    n, x = kernel.n, kernel.x
    if kernel.family == LAPLACE:
        t_star = 1.0 / (2 * n) - shift
        return [t_star] if t_star > x else []
    # 1 = 4n(t - x)(t + shift)
    coeffs = [4 * n, 4 * n * (shift - x), -(4 * n * x * shift + 1.0)]
    return [float(r.real) for r in np.roots(coeffs)
            if abs(r.imag) < 1e-12 and r.real + shift > 0]


def _expand_left(g, start: float, alpha: float, step: float) -> float:
    t = start - step
    for _ in range(200):
        if g(t) < alpha:
            return t
        step *= 2.0
        t = start - step
    raise DivergenceError("product does not decay to the left")


def _expand_right(g, start: float, alpha: float, step: float) -> float:
    t = start + step
    for _ in range(200):
        if g(t) < alpha:
            return t
        step *= 2.0
        t = start + step
    raise DivergenceError("product does not decay to the right")


def _generic_product(spec: FunctionSpec, kernel: Kernel) -> LevelSetFunction:
    """Bracketed root-finding on the piecewise monotone product profile."""
    f = spec.fn

    def g(t: float) -> float:
        return f(t) * kernel(t)

    if spec.name in ("pw_linear", "abs_dev"):
        pieces = _linear_pieces(spec)
        knots = [p for piece in pieces for p in piece[:2] if math.isfinite(p)]
        stationaries = _linear_stationaries(pieces, kernel)
    elif spec.name == "sqrt":
        shift = spec.param("shift", 0.0)
        knots = [-shift]
        stationaries = _sqrt_stationaries(shift, kernel)
    else:
        raise CapabilityError(
            f"no level-set construction for function family {spec.name!r}")

    pts = sorted(set(knots) | {kernel.x} | set(stationaries))
    sup = max(g(p) for p in pts)
    step0 = max(1.0, 1.0 / kernel.n)

    def level(alpha: float) -> IntervalUnion:
        if alpha <= 0:
            raise ValueError("level must be positive")
        if alpha > sup:
            return IntervalUnion.empty()
        vals = [g(p) for p in pts]
        out = []
        open_start = None
        if vals[0] >= alpha:
            lo = _expand_left(g, pts[0], alpha, step0)
            open_start = brentq(lambda t: g(t) - alpha, lo, pts[0], xtol=_ROOT_XTOL)
        for j in range(len(pts) - 1):
            inside_next = vals[j + 1] >= alpha
            if open_start is not None and not inside_next:
                c = brentq(lambda t: g(t) - alpha, pts[j], pts[j + 1], xtol=_ROOT_XTOL)
                out.append((open_start, c))
                open_start = None
            elif open_start is None and inside_next:
                open_start = brentq(lambda t: alpha - g(t), pts[j], pts[j + 1],
                                    xtol=_ROOT_XTOL)
        if open_start is not None:
            hi = _expand_right(g, pts[-1], alpha, step0)
            c = brentq(lambda t: g(t) - alpha, pts[-1], hi, xtol=_ROOT_XTOL)
            out.append((open_start, c))
        return IntervalUnion.from_pairs(out)

    alpha_breaks = tuple(sorted(v for v in {g(p) for p in pts} if 0.0 < v < sup))
    return LevelSetFunction(g, level, sup, alpha_breakpoints=alpha_breaks,
                            label=f"{spec.name}*{kernel.family}")


def product_level_function(spec: FunctionSpec, kernel: Kernel) -> LevelSetFunction:
    """Level-set function of t -> f(t) * kernel(t) for a registered spec."""
    if not spec.nonneg_real_line:
        raise ValueError(
            f"function {spec.name!r} is not nonnegative on the real line")
    if spec.name == "const":
        c = spec.param("c", 1.0)
        if c == 0.0:
            return LevelSetFunction(lambda t: 0.0,
                                    lambda a: IntervalUnion.empty(), 0.0)

        def level(alpha: float) -> IntervalUnion:
            if alpha <= 0:
                raise ValueError("level must be positive")
            return kernel.level_set(alpha / c)

        return LevelSetFunction(lambda t: c * kernel(t), level, c,
                                label=f"const*{kernel.family}")
    if spec.name == "exp_neg":
        return _product_exp_neg(spec, kernel)
    if spec.name == "abs_dev" and spec.param("center", 0.0) == kernel.x:
        return _product_abs_dev_centered(kernel)
    return _generic_product(spec, kernel)


def level_set_product(spec: FunctionSpec, kernel: Kernel, alpha: float) -> IntervalUnion:
    """One super-level set of the product (see :func:`product_level_function`)."""
    return product_level_function(spec, kernel).level(alpha)


# ---------------------------------------------------------------------------
# quadrature


def integrate_adaptive(fn, a: float, b: float,
                       cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> tuple[float, float]:
    """Adaptive quadrature of ``fn`` on [a, b] honoring the config tolerances.

    Raises :class:`QuadratureError` (carrying the partial value and error
    estimate) instead of silently returning a non-converged result.
    """
    return _quad_piece(fn, a, b, cfg)


def _quad_piece(fn, a: float, b: float, cfg: QuadratureConfig) -> tuple[float, float]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, err = quad(fn, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol,
                          limit=cfg.max_subdivisions)
    bad = [w for w in caught if issubclass(w.category, IntegrationWarning)]
    if bad:
        raise QuadratureError(
            f"quadrature did not converge on [{a}, {b}]: {bad[0].message}",
            value=value, error_estimate=err)
    return value, err


def choquet_integral_real_with_error(g: LevelSetFunction, mu: RealCapacity,
                                     cfg: QuadratureConfig = DEFAULT_QUADRATURE
                                     ) -> tuple[float, float]:
    """Layer-cake Choquet integral with the quadrature error estimate."""
    sup = g.sup_value
    if not math.isfinite(sup):
        raise DivergenceError("integrand has an infinite supremum")
    if sup <= 0:
        return 0.0, 0.0

    def h(alpha: float) -> float:
        return mu.value(g.level(alpha))

    total = 0.0
    err = 0.0
    if g.log_substitution:
        s0 = -math.log(sup)
        edges = [s0] + sorted(-math.log(b) for b in g.alpha_breakpoints
                              if 0.0 < b < sup) + [math.inf]

        def integrand(s: float) -> float:
            a = math.exp(-s)
            if a == 0.0:  # underflow deep in the tail
                return 0.0
            return h(a) * a

    else:
        edges = [0.0] + sorted(b for b in g.alpha_breakpoints if 0.0 < b < sup) + [sup]
        integrand = h

    for a, b in zip(edges[:-1], edges[1:]):
        if a >= b:
            continue
        v, e = _quad_piece(integrand, a, b, cfg)
        total += v
        err += e
    return total, err


def choquet_integral_real(g: LevelSetFunction, mu: RealCapacity,
                          cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    return choquet_integral_real_with_error(g, mu, cfg)[0]


def choquet_integral_real_grid(g: LevelSetFunction, mu: RealCapacity,
                               num: int = 4001, s_span: float = 60.0) -> float:
    """Fixed-grid Simpson evaluation of the same layer-cake integral.

    Deliberately independent of the adaptive path; used as a cross-check
    engine (and by the CLI to report both paths).
    """
    sup = g.sup_value
    if sup <= 0:
        return 0.0

    def h(alpha: float) -> float:
        return mu.value(g.level(alpha))

    total = 0.0
    if g.log_substitution:
        s0 = -math.log(sup)
        edges = [s0] + sorted(-math.log(b) for b in g.alpha_breakpoints
                              if 0.0 < b < sup) + [s0 + s_span]

        def fn(s: float) -> float:
            a = math.exp(-s)
            return h(a) * a if a > 0.0 else 0.0
    else:
        edges = [0.0] + sorted(b for b in g.alpha_breakpoints if 0.0 < b < sup) + [sup]
        fn = h
    span = edges[-1] - edges[0]
    for a, b in zip(edges[:-1], edges[1:]):
        if a >= b:
            continue
        m = max(8, int(num * (b - a) / span))
        m += m % 2  # Simpson needs an even cell count
        # smoothstep substitution clusters nodes at both piece ends, where
        # the level-set length can vanish with a square-root profile
        us = np.linspace(0.0, 1.0, m + 1)
        ts = a + (b - a) * (3.0 * us ** 2 - 2.0 * us ** 3)
        dts = (b - a) * 6.0 * us * (1.0 - us)
        ys = np.array([fn(float(t)) for t in ts]) * dts
        wts = np.ones(m + 1)
        wts[1:-1:2] = 4.0
        wts[2:-1:2] = 2.0
        total += 1.0 / m / 3.0 * float(wts @ ys)
    return total


def kernel_normalizer(kernel: Kernel, mu: RealCapacity,
                      cfg: QuadratureConfig = DEFAULT_QUADRATURE,
                      force_quadrature: bool = False) -> float:
    """Choquet integral of the bare kernel (the operator normalizer).

    For a possibility capacity whose own kernel peaks at the same point,
    every nonempty level set contains the peak, so the integrand is 1 on
    (0, 1] and the normalizer is exactly 1 -- no quadrature involved.
    """
    if (not force_quadrature and mu.kind == "possibility"
            and mu.kernel.x == kernel.x):
        return 1.0
    return choquet_integral_real(kernel_level_function(kernel), mu, cfg)


def has_finite_integral(g: LevelSetFunction, mu: RealCapacity,
                        probes: Iterable[float] = (20.0, 30.0, 40.0)) -> bool:
    """Heuristic finiteness check: finite sup and a decaying substituted tail.

    There is no general algorithm for unbounded integrands; this probes the
    transformed integrand at a few points deep in the tail and requires it
    to be decreasing and small.
    """
    if not math.isfinite(g.sup_value):
        return False
    if g.sup_value <= 0:
        return True
    vals = []
    for s in probes:
        alpha = g.sup_value * math.exp(-s)
        vals.append(mu.value(g.level(alpha)) * alpha)
    return all(b <= a for a, b in zip(vals, vals[1:])) and vals[-1] < 1e-6
