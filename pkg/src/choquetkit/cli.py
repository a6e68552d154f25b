"""Command-line driver.

Subcommands
-----------
integrate   one-shot Choquet integral (discrete or real-line), computed by
            two independent engines, with their difference
operator    error table for one operator over an (n, x) grid
verify      randomized property suites; exit code 1 on any violation
compare     classical vs Choquet operator side by side

Configuration is a single JSON document (``--config``); every field has a
default and individual flags override the file.  Exit codes: 0 success,
1 property violation, 2 configuration error, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import capacity as cap_mod
from .capacity import (DiscreteCapacity, check_properties, distortion_by_name,
                       dual, possibility_capacity, random_monotone_capacity)
from .continuous import (QuadratureConfig, choquet_integral_real,
                         choquet_integral_real_grid, kernel_level_function,
                         product_level_function)
from .discrete import (choquet_integral, choquet_integral_layer_cake,
                       property_suite)
from .errors import ConfigError, DivergenceError, QuadratureError
from .estimates import (ErrorTable, chebyshev_check, delta_rule, format_float,
                        modulus_of_continuity, quantitative_bound)
from .functions import FunctionSpec, function_spec
from .intervals import IntervalUnion
from .operators import (PerturbationProfile, bernstein_choquet,
                        bernstein_choquet_capacity, bernstein_classical,
                        perturbation_gap, picard_choquet, picard_classical,
                        weierstrass_choquet)
from .realline import Kernel, RealCapacity

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

OPERATORS = ("bernstein", "bernstein_choquet", "picard", "picard_choquet",
             "weierstrass_choquet")
SUITES = ("capacity", "integral", "chebyshev", "bounds")


# ---------------------------------------------------------------------------
# config assembly


def _load_config(args: argparse.Namespace) -> dict:
    cfg: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
    for key in ("operator", "capacity", "function", "seed", "out", "theta",
                "i0", "suite", "trials", "mode", "pair"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "n", None):
        cfg["n_list"] = args.n
    if getattr(args, "xgrid", None):
        cfg["x_grid"] = args.xgrid
    return cfg


def _parse_n_list(raw) -> list[int]:
    if raw is None:
        raw = [4, 8, 16, 32]
    if isinstance(raw, str):
        raw = [part for part in raw.split(",") if part]
    try:
        ns = [int(v) for v in raw]
    except (TypeError, ValueError):
        raise ConfigError(f"invalid n list: {raw!r}") from None
    if not ns or any(n <= 0 for n in ns):
        raise ConfigError("n list must be nonempty and positive")
    return ns


def _parse_x_grid(raw) -> np.ndarray:
    if raw is None:
        raw = {"min": 0.0, "max": 1.0, "count": 11}
    if isinstance(raw, str):
        parts = raw.split(":")
        if len(parts) != 3:
            raise ConfigError("xgrid must look like min:max:count")
        raw = {"min": parts[0], "max": parts[1], "count": parts[2]}
    try:
        lo, hi, count = float(raw["min"]), float(raw["max"]), int(raw["count"])
    except (KeyError, TypeError, ValueError):
        raise ConfigError(f"invalid x grid: {raw!r}") from None
    if count < 2:
        raise ConfigError("x grid needs at least 2 points")
    if not lo < hi:
        raise ConfigError("x grid needs min < max")
    return np.linspace(lo, hi, count)


def _parse_profile(cfg: dict) -> PerturbationProfile:
    pert = cfg.get("perturbation", {})
    theta = float(cfg.get("theta", pert.get("theta", 1.0)))
    i0 = int(cfg.get("i0", pert.get("i0", 1)))
    try:
        return PerturbationProfile(i0=i0, theta=theta)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_quadrature(cfg: dict) -> QuadratureConfig:
    q = cfg.get("quadrature", {})
    try:
        return QuadratureConfig(
            abs_tol=float(q.get("abs_tol", 1e-9)),
            rel_tol=float(q.get("rel_tol", 1e-8)),
            max_subdivisions=int(q.get("max_subdivisions", 2000)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_function(raw) -> FunctionSpec:
    if raw is None:
        raw = "exp_neg"
    if isinstance(raw, str):
        raw = {"name": raw}
    params = {k: v for k, v in raw.items() if k != "name"}
    if "knots" in params:
        params["knots"] = [tuple(k) for k in params["knots"]]
    try:
        return function_spec(raw["name"], **params)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid function spec {raw!r}: {exc}") from exc


def _parse_gamma(raw):
    if raw is None:
        raw = "sqrt"
    if isinstance(raw, str):
        raw = {"name": raw}
    try:
        return distortion_by_name(raw["name"], **{k: v for k, v in raw.items()
                                                  if k != "name"})
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"invalid distortion {raw!r}: {exc}") from exc


def _parse_kernel(raw, default_n=1.0, default_x=0.0) -> Kernel:
    raw = raw or {}
    try:
        return Kernel(raw.get("family", "laplace"), float(raw.get("n", default_n)),
                      float(raw.get("x", default_x)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_discrete_capacity(raw: dict) -> DiscreteCapacity:
    rule = raw.get("rule", "additive")
    try:
        if rule == "additive":
            return cap_mod.additive_capacity(raw["weights"])
        if rule == "possibility":
            return possibility_capacity(raw["weights"])
        if rule == "distorted_uniform":
            return cap_mod.counting_distortion(_parse_gamma(raw.get("gamma")),
                                               int(raw["size"]))
        if rule == "bernstein_perturbed":
            profile = PerturbationProfile(i0=int(raw.get("i0", 1)),
                                          theta=float(raw.get("theta", 1.0)))
            return bernstein_choquet_capacity(int(raw["n"]), float(raw["x"]),
                                              profile)
        if rule == "table":
            return cap_mod.capacity_from_table(int(raw["size"]), raw["values"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid discrete capacity {raw!r}: {exc}") from exc
    raise ConfigError(f"unknown discrete capacity rule {rule!r}")


def _real_capacity_factory(raw):
    """Returns kernel -> RealCapacity; possibility without an explicit kernel
    follows the operator's kernel (the capacity family mu_{n,x})."""
    if raw is None:
        raw = {"kind": "possibility"}
    if isinstance(raw, str):
        raw = {"kind": {"sqrt_lebesgue": "distorted_lebesgue",
                        "lebesgue": "identity_lebesgue"}.get(raw, raw)}
        if raw["kind"] == "identity_lebesgue":
            raw = {"kind": "distorted_lebesgue", "gamma": "identity"}
    kind = raw.get("kind")
    if kind == "distorted_lebesgue":
        mu = RealCapacity.distorted_lebesgue(_parse_gamma(raw.get("gamma")))
        return lambda kernel: mu
    if kind == "possibility":
        if "kernel" in raw:
            mu = RealCapacity.possibility(_parse_kernel(raw["kernel"]))
            return lambda kernel: mu
        return lambda kernel: RealCapacity.possibility(
            Kernel.laplace(kernel.n, kernel.x))
    raise ConfigError(f"unknown real capacity spec {raw!r}")


def _open_out(cfg: dict):
    path = cfg.get("out")
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline="\n"), True


# ---------------------------------------------------------------------------
# integrate


def cmd_integrate(cfg: dict) -> int:
    mode = cfg.get("mode", "discrete")
    quad_cfg = _parse_quadrature(cfg)
    if mode == "discrete":
        raw_cap = cfg.get("capacity")
        if not isinstance(raw_cap, dict) or raw_cap.get("kind") != "discrete":
            raise ConfigError('discrete integrate needs capacity {"kind": "discrete", ...}')
        cap = _parse_discrete_capacity(raw_cap)
        values = cfg.get("values")
        if not isinstance(values, list) or len(values) != cap.size:
            raise ConfigError("values must list one number per ground element")
        values = [float(v) for v in values]
        primary = choquet_integral(values, cap)
        check = choquet_integral_layer_cake(values, cap)
        engines = ("sorted_tail_sum", "layer_cake_exact")
    elif mode == "real":
        factory = _real_capacity_factory(cfg.get("capacity"))
        kernel = _parse_kernel(cfg.get("kernel"), default_n=2.0)
        mu = factory(kernel)
        spec = _parse_function(cfg.get("function", "e0"))
        if spec.name == "const" and spec.param("c", 1.0) == 1.0:
            g = kernel_level_function(kernel)
        else:
            g = product_level_function(spec, kernel)
        primary = choquet_integral_real(g, mu, quad_cfg)
        check = choquet_integral_real_grid(g, mu)
        engines = ("adaptive_levels", "simpson_grid")
    else:
        raise ConfigError(f"unknown integrate mode {mode!r}")

    stream, close = _open_out(cfg)
    try:
        stream.write("mode,primary_engine,primary_value,check_engine,check_value,abs_difference\n")
        stream.write(",".join([mode, engines[0], format_float(primary),
                               engines[1], format_float(check),
                               format_float(abs(primary - check))]) + "\n")
    finally:
        if close:
            stream.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# operator / compare


def _omega_window(x_grid) -> tuple[float, float]:
    return float(np.min(x_grid)) - 1.0, float(np.max(x_grid)) + 1.0


def _bernstein_bound(spec: FunctionSpec, n: int, profile: PerturbationProfile) -> float:
    if spec.monotone == "nondecreasing":
        return abs(spec.fn(profile.i0 / n) - spec.fn(0.0)) * 2.0 ** -n
    if spec.monotone == "nonincreasing":
        return abs(spec.fn(profile.i0 / n) - spec.fn(1.0)) * 2.0 ** -n
    return math.nan


def _kernel_bound(op_name: str, spec: FunctionSpec, n: int, x: float,
                  mu: RealCapacity, quad_cfg: QuadratureConfig, window) -> float:
    phi = function_spec("abs_dev", center=x)
    deviation = weierstrass_choquet if op_name == "weierstrass_choquet" else picard_choquet
    tn_phi = deviation(phi, n, x, mu, quad_cfg)
    delta = delta_rule(tn_phi, n)
    return quantitative_bound(tn_phi, delta, modulus_of_continuity(spec, delta, window))


def _evaluate_operator(name: str, spec: FunctionSpec, n: int, x: float,
                       profile: PerturbationProfile, factory,
                       quad_cfg: QuadratureConfig) -> float:
    if name == "bernstein":
        return bernstein_classical(spec.fn, n, x)
    if name == "bernstein_choquet":
        return bernstein_choquet(spec.fn, n, x, profile)
    if name == "picard":
        return picard_classical(spec.fn, n, x, quad_cfg)
    if name == "picard_choquet":
        return picard_choquet(spec, n, x, factory(Kernel.laplace(n, x)), quad_cfg)
    if name == "weierstrass_choquet":
        return weierstrass_choquet(spec, n, x, factory(Kernel.gauss(n, x)), quad_cfg)
    raise ConfigError(f"unknown operator {name!r}; choose from {OPERATORS}")


def cmd_operator(cfg: dict) -> int:
    name = cfg.get("operator", "bernstein_choquet")
    if name not in OPERATORS:
        raise ConfigError(f"unknown operator {name!r}; choose from {OPERATORS}")
    spec = _parse_function(cfg.get("function"))
    n_list = _parse_n_list(cfg.get("n_list"))
    x_grid = _parse_x_grid(cfg.get("x_grid"))
    profile = _parse_profile(cfg)
    quad_cfg = _parse_quadrature(cfg)
    factory = _real_capacity_factory(cfg.get("capacity"))
    window = _omega_window(x_grid)

    if name.startswith("bernstein") and (np.min(x_grid) < 0 or np.max(x_grid) > 1):
        raise ConfigError("bernstein operators need an x grid inside [0, 1]")

    table = ErrorTable()
    for n in n_list:
        for x in x_grid:
            x = float(x)
            value = _evaluate_operator(name, spec, n, x, profile, factory, quad_cfg)
            if name.startswith("bernstein"):
                bound = _bernstein_bound(spec, n, profile)
            else:
                op_kernel = (Kernel.gauss(n, x) if name == "weierstrass_choquet"
                             else Kernel.laplace(n, x))
                bound = _kernel_bound(name, spec, n, x, factory(op_kernel),
                                      quad_cfg, window)
            table.add(n, x, value, spec.fn(x), bound)

    stream, close = _open_out(cfg)
    try:
        table.to_csv(stream)
    finally:
        if close:
            stream.close()
    return EXIT_OK


def cmd_compare(cfg: dict) -> int:
    pair = cfg.get("pair", "bernstein")
    if pair not in ("bernstein", "picard"):
        raise ConfigError("compare pairs: bernstein | picard")
    spec = _parse_function(cfg.get("function"))
    n_list = _parse_n_list(cfg.get("n_list"))
    x_grid = _parse_x_grid(cfg.get("x_grid"))
    profile = _parse_profile(cfg)
    quad_cfg = _parse_quadrature(cfg)
    factory = _real_capacity_factory(cfg.get("capacity"))
    window = _omega_window(x_grid)

    if pair == "bernstein" and (np.min(x_grid) < 0 or np.max(x_grid) > 1):
        raise ConfigError("bernstein operators need an x grid inside [0, 1]")

    rows = []
    for n in n_list:
        for x in x_grid:
            x = float(x)
            fx = spec.fn(x)
            if pair == "bernstein":
                classical = bernstein_classical(spec.fn, n, x)
                choquet = bernstein_choquet(spec.fn, n, x, profile)
                bound = _bernstein_bound(spec, n, profile)
            else:
                mu = factory(Kernel.laplace(n, x))
                classical = picard_classical(spec.fn, n, x, quad_cfg)
                choquet = picard_choquet(spec, n, x, mu, quad_cfg)
                bound = _kernel_bound("picard_choquet", spec, n, x, mu,
                                      quad_cfg, window)
            rows.append((n, x, fx, classical, choquet,
                         abs(classical - fx), abs(choquet - fx), bound))

    stream, close = _open_out(cfg)
    try:
        stream.write("n,x,f,classical,choquet,err_classical,err_choquet,bound\n")
        for n, x, fx, cl, ch, ec, eh, bd in rows:
            stream.write(",".join([str(n)] + [format_float(v) for v in
                                              (x, fx, cl, ch, ec, eh, bd)]) + "\n")
    finally:
        if close:
            stream.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _verify_capacity(rng: np.random.Generator, trials: int,
                     inject_nonmonotone: bool) -> list[str]:
    bad: list[str] = []
    for t in range(trials):
        size = int(rng.integers(2, 6))
        cap = random_monotone_capacity(rng, size)
        report = check_properties(cap)
        if not report.monotone:
            bad.append(f"trial {t}: generated capacity not monotone: {report.witnesses}")
        if abs(cap.value(())) > 1e-12:
            bad.append(f"trial {t}: mu(empty) != 0")
        if report.submodular and not report.subadditive:
            bad.append(f"trial {t}: submodular without subadditive")
        dd = dual(dual(cap))
        for mask in range(1 << size):
            subset = frozenset(i for i in range(size) if mask >> i & 1)
            if abs(dd.evaluator(subset) - cap.evaluator(subset)) > 1e-12:
                bad.append(f"trial {t}: dual is not an involution on {sorted(subset)}")
                break
        # possibility axiom on random interval unions
        kernel = Kernel.laplace(float(rng.uniform(0.5, 4.0)),
                                float(rng.uniform(-1.0, 1.0)))
        mu = RealCapacity.possibility(kernel)
        pts = np.sort(rng.uniform(-3.0, 3.0, size=6))
        a = IntervalUnion.from_pairs([(pts[0], pts[1]), (pts[2], pts[3])])
        b = IntervalUnion.from_pairs([(pts[4], pts[5])])
        if abs(mu.value(a.union(b)) - max(mu.value(a), mu.value(b))) > 1e-12:
            bad.append(f"trial {t}: possibility max rule violated")
    if inject_nonmonotone:
        broken = cap_mod.capacity_from_table(2, [0.0, 0.8, 0.2, 0.3], name="broken")
        report = check_properties(broken)
        if not report.monotone:
            bad.append(f"injected: capacity not monotone, witness {report.witnesses['monotone']}")
    return bad


def _verify_integral(rng: np.random.Generator, trials: int) -> list[str]:
    bad: list[str] = []
    for t in range(trials):
        size = int(rng.integers(2, 7))
        weights = rng.uniform(0.0, 1.0, size=size)
        additive = cap_mod.additive_capacity(weights.tolist())
        x = rng.uniform(-3.0, 3.0, size=size)
        exact = float(weights @ x)
        got = choquet_integral(x, additive)
        if abs(got - exact) > 1e-12:
            bad.append(f"trial {t}: additive reduction off by {abs(got - exact):.2e}")

        cap = random_monotone_capacity(rng, size)
        y = rng.uniform(0.0, 4.0, size=size)
        a = choquet_integral(y, cap)
        b = choquet_integral_layer_cake(y, cap)
        if abs(a - b) > 1e-9:
            bad.append(f"trial {t}: layer cake mismatch {abs(a - b):.2e}")
    if trials:
        cap = random_monotone_capacity(rng, 5)
        rep = property_suite(cap, trials=min(trials, 200), seed=int(rng.integers(1 << 31)))
        for v in rep.violations:
            bad.append(f"property suite: {v[0]}")
    return bad


def _verify_chebyshev(rng: np.random.Generator, trials: int) -> list[str]:
    bad: list[str] = []
    for t in range(trials):
        size = int(rng.integers(2, 7))
        cap = random_monotone_capacity(rng, size)
        x = rng.uniform(-3.0, 3.0, size=size)
        r = float(rng.uniform(0.05, 3.0))
        res = chebyshev_check(x, cap, r)
        if not res.holds:
            bad.append(f"trial {t}: deviation inequality violated "
                       f"lhs={res.lhs:.6g} rhs={res.rhs:.6g}")
    return bad


def _verify_bounds(rng: np.random.Generator, trials: int) -> list[str]:
    bad: list[str] = []
    if trials == 0:
        return bad
    for n in (2, 4, 8, 16, 32):
        for x in np.linspace(0.0, 1.0, 101):
            gap = perturbation_gap(n, float(x))
            if not -1e-15 <= gap <= 2.0 ** -n + 1e-15:
                bad.append(f"band violated at n={n}, x={x:.3f}: gap={gap:.3e}")
    window = (-2.0, 3.0)
    spec = function_spec("exp_neg")
    quad_cfg = QuadratureConfig()
    for n in (2, 4, 8):
        for x in (-1.0, 0.0, 1.5):
            mu = RealCapacity.possibility(Kernel.laplace(n, x))
            if abs(picard_choquet(function_spec("e0"), n, x, mu, quad_cfg) - 1.0) > 1e-9:
                bad.append(f"T_n(e0) != 1 at n={n}, x={x}")
            tn = picard_choquet(spec, n, x, mu, quad_cfg)
            phi = function_spec("abs_dev", center=x)
            tn_phi = picard_choquet(phi, n, x, mu, quad_cfg)
            delta = delta_rule(tn_phi, n)
            bound = quantitative_bound(tn_phi, delta,
                                       modulus_of_continuity(spec, delta, window))
            if abs(tn - spec.fn(x)) > bound + 1e-6:
                bad.append(f"quantitative bound violated at n={n}, x={x}")
    return bad


def cmd_verify(cfg: dict) -> int:
    suite = cfg.get("suite", "capacity")
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {SUITES}")
    trials = int(cfg.get("trials", 200))
    if trials < 0:
        raise ConfigError("trials must be nonnegative")
    seed = int(cfg.get("seed", 0))
    rng = np.random.default_rng(seed)
    inject = bool(cfg.get("inject_nonmonotone", False))

    if suite == "capacity":
        violations = _verify_capacity(rng, trials, inject)
    elif suite == "integral":
        violations = _verify_integral(rng, trials)
    elif suite == "chebyshev":
        violations = _verify_chebyshev(rng, trials)
    else:
        violations = _verify_bounds(rng, trials)

    for v in violations:
        print(f"VIOLATION [{suite}] {v}")
    print(f"suite={suite} trials={trials} violations={len(violations)}")
    return EXIT_VIOLATION if violations else EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="choquetkit",
        description="Choquet integrals and Choquet-integral approximation operators")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--seed", type=int, help="random seed")
        p.add_argument("--out", help="output CSV path (default stdout)")

    p = sub.add_parser("integrate", help="one-shot integral, two engines")
    common(p)
    p.add_argument("--mode", choices=("discrete", "real"))

    for name in ("operator", "compare"):
        p = sub.add_parser(name)
        common(p)
        if name == "operator":
            p.add_argument("--operator", choices=OPERATORS)
        else:
            p.add_argument("--pair", choices=("bernstein", "picard"))
        p.add_argument("--capacity", help="capacity shorthand (possibility, sqrt_lebesgue, lebesgue)")
        p.add_argument("--function", help="function spec name")
        p.add_argument("--n", help="comma-separated n values")
        p.add_argument("--xgrid", help="min:max:count")
        p.add_argument("--theta", type=float, help="perturbation size in [0, 1]")
        p.add_argument("--i0", type=int, help="perturbed index")

    p = sub.add_parser("verify", help="randomized property suites")
    common(p)
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--trials", type=int)
    p.add_argument("--inject-nonmonotone", action="store_true",
                   dest="inject_nonmonotone",
                   help="negative control: add a broken capacity to the suite")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        if args.command == "verify" and getattr(args, "inject_nonmonotone", False):
            cfg["inject_nonmonotone"] = True
        if args.command == "integrate":
            return cmd_integrate(cfg)
        if args.command == "operator":
            return cmd_operator(cfg)
        if args.command == "compare":
            return cmd_compare(cfg)
        return cmd_verify(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureError, DivergenceError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
