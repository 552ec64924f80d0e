"""Command-line front end.

    qweyl <command> [--dim N] [--epsilon X | --q RE,IM | --rho R] [--cutoff D]
                    [--modes M1,M2,...] [--tol T] [--format json|csv]
                    [--out PATH] [--seed S]

Commands: ``verify-qwh``, ``verify-weyl``, ``bogoliubov``, ``foliation-scan``.
Exit status is 0 when every check passes, 1 on a usage or configuration
error and 2 when at least one check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .bargmann import (
    BargmannPoly,
    Deformation,
    apply_annihilation,
    dilation,
    number_exponential_identity_check,
    q_commutator,
    q_derivative,
)
from .checks import CheckResult
from .errors import QWeylError
from .fock import (
    BogoliubovCoefficients,
    ccr_matrix,
    equivalence_convergence,
    generator_equivalence_check,
    transformed_ladder,
)
from .foliation import (
    closed_form_overlap,
    foliation_scan,
    overlap_convergence,
    per_mode_vacuum_overlap,
)
from .weyl import (
    TruncationWarning,
    composition_check,
    composition_convergence,
    scaled_composition_check,
    symplectic_invariance_check,
    weyl_relation_checks,
)

COMMANDS = ("verify-qwh", "verify-weyl", "bogoliubov", "foliation-scan")
DEFAULT_TOL = {
    "verify-qwh": 1e-10,
    "verify-weyl": 1e-6,
    "bogoliubov": 1e-8,
    "foliation-scan": 1e-4,
}
EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    dim: int = 64
    epsilon: complex | None = None
    q: complex | None = None
    rho: float | None = None
    cutoff_degree: int = 16
    mode_counts: list[int] = field(default_factory=lambda: [1, 10, 100, 1000])
    tolerance: float | None = None
    output_format: str = "json"
    output_path: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        given = [k for k in ("epsilon", "q", "rho") if getattr(self, k) is not None]
        if len(given) > 1:
            raise UsageError(f"give at most one of --epsilon/--q/--rho, got {given}")
        if self.tolerance is None:
            self.tolerance = DEFAULT_TOL[self.command]
        if not self.tolerance > 0:
            raise UsageError(f"tolerance must be > 0, got {self.tolerance}")
        if self.dim < 2:
            raise UsageError(f"dim must be >= 2, got {self.dim}")
        if self.cutoff_degree < 1:
            raise UsageError(f"cutoff must be >= 1, got {self.cutoff_degree}")
        if self.output_format not in ("json", "csv"):
            raise UsageError(f"format must be json or csv, got {self.output_format!r}")
        if self.rho is not None and (self.rho == 0 or not math.isfinite(self.rho)):
            raise UsageError(f"rho must be finite and nonzero, got {self.rho}")

    def deformation(self, default_epsilon: float | None = None) -> Deformation | None:
        try:
            if self.epsilon is not None:
                return Deformation.from_epsilon(self.epsilon)
            if self.q is not None:
                return Deformation.from_q(self.q)
            if self.rho is not None:
                return Deformation.from_rho(self.rho)
        except (QWeylError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        if default_epsilon is None:
            return None
        return Deformation.from_epsilon(default_epsilon)

    def real_epsilon(self, default: float) -> float:
        d = self.deformation(default)
        if not d.is_real:
            raise UsageError(f"{self.command} needs a real deformation, got epsilon={d.epsilon}")
        return d.epsilon.real

    def params(self) -> dict:
        return {
            "dim": self.dim,
            "epsilon": _num(self.epsilon),
            "q": _num(self.q),
            "rho": _num(self.rho),
            "cutoff_degree": self.cutoff_degree,
            "mode_counts": list(self.mode_counts),
            "tolerance": self.tolerance,
            "output_format": self.output_format,
        }


@dataclass
class Report:
    command: str
    params: dict
    seed: int
    checks: list[CheckResult] = field(default_factory=list)
    convergence: list[dict] = field(default_factory=list)
    scan: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    timing: float = 0.0
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        out = {
            "command": self.command,
            "params": self.params,
            "checks": [c.as_dict() for c in self.checks],
            "convergence": self.convergence,
            "scan": self.scan,
            "seed": self.seed,
            "version": self.version,
            "pass": self.passed,
        }
        out.update(self.extra)
        out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.as_dict()), indent=2, allow_nan=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "name", "value", "tolerance", "pass"])
        for c in self.checks:
            w.writerow(["check", c.name, _fmt(c.deviation), _fmt(c.tolerance), int(c.passed)])
        for row in self.convergence:
            w.writerow(["convergence", row["dim"], _fmt(row["deviation"]), "", ""])
        for row in self.scan:
            w.writerow(["scan", row["M"], _fmt(row["overlap"]), "", ""])
        return buf.getvalue()


def _num(x):
    if x is None:
        return None
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _random_polys(rng: np.random.Generator, count: int, max_degree: int) -> list[BargmannPoly]:
    polys = []
    for _ in range(count):
        deg = int(rng.integers(0, max_degree + 1))
        r = np.sqrt(rng.uniform(0, 1, deg + 1))
        theta = rng.uniform(-np.pi, np.pi, deg + 1)
        polys.append(BargmannPoly(r * np.exp(1j * theta)))
    return polys


def _unit_disc_points(rng: np.random.Generator, count: int) -> list[complex]:
    r = np.sqrt(rng.uniform(0, 1, count))
    theta = rng.uniform(-np.pi, np.pi, count)
    return [complex(z) for z in r * np.exp(1j * theta)]


def run_verify_qwh(cfg: RunConfig) -> Report:
    d = cfg.deformation(default_epsilon=0.3)
    if d.is_trivial:
        raise UsageError("verify-qwh needs q != 1 (epsilon != 0)")
    rng = np.random.default_rng(cfg.seed)
    rep = Report(cfg.command, cfg.params(), cfg.seed)

    worst = 0.0
    for p in _random_polys(rng, 200, cfg.cutoff_degree):
        diff = q_commutator(p, d).coeffs - dilation(p, d).coeffs
        scale = max(np.max(np.abs(p.coeffs)), np.finfo(float).tiny)
        worst = max(worst, float(np.max(np.abs(diff))) / scale)
    rep.checks.append(CheckResult.compare("q_commutator_equals_dilation", worst, cfg.tolerance))

    # first-order convergence of D_q to d/dzeta as q -> 1
    p = _random_polys(rng, 1, cfg.cutoff_degree)[0].with_cutoff(cfg.cutoff_degree)
    errs = []
    for h in (1e-2, 1e-4, 1e-6):
        dq = Deformation.from_q(1 + h)
        errs.append(float(np.max(np.abs(q_derivative(p, dq).coeffs - apply_annihilation(p).coeffs))))
    orders = [math.log10(errs[i] / errs[i + 1]) / 2 for i in range(2) if errs[i + 1] > 0]
    order_dev = max((abs(o - 1) for o in orders), default=0.0)
    rep.checks.append(CheckResult.compare("classical_limit_first_order", order_dev, 0.05))
    rep.extra["classical_limit"] = [
        {"h": h, "deviation": e} for h, e in zip((1e-2, 1e-4, 1e-6), errs)
    ]

    D = max(cfg.cutoff_degree, 2)
    rep.checks.append(number_exponential_identity_check(D, d, cfg.tolerance))
    rep.convergence = [
        {"dim": m + 1, "deviation": number_exponential_identity_check(m, d, np.inf).deviation}
        for m in (4, 8, 16, 32) if m <= D
    ]
    return rep


def run_verify_weyl(cfg: RunConfig) -> Report:
    if cfg.epsilon is not None or cfg.q is not None:
        d = cfg.deformation()
        if not d.is_real or d.rho.real <= 0:
            raise UsageError("verify-weyl needs a real positive rho = 1/q")
        rhos = [d.rho.real]
    elif cfg.rho is not None:
        rhos = [float(cfg.rho)]
    else:
        rhos = [0.5, 2.0]
    rng = np.random.default_rng(cfg.seed)
    rep = Report(cfg.command, cfg.params(), cfg.seed)
    points = _unit_disc_points(rng, 5)
    n = cfg.dim

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        worst = max(composition_check(n, a, b, np.inf).deviation for a in points for b in points)
        rep.checks.append(CheckResult.compare(f"composition[n={n}]", worst, cfg.tolerance))
        a1, a2, b1, b2 = rng.uniform(-1, 1, 4)
        rep.checks.extend(weyl_relation_checks(n, a1, a2, b1, b2, cfg.tolerance))
        for rho in rhos:
            worst = max(
                scaled_composition_check(n, a, b, rho, np.inf).deviation
                for a in points for b in points
            )
            rep.checks.append(
                CheckResult.compare(f"scaled_composition[n={n},rho={rho:g}]", worst, cfg.tolerance)
            )

    worst = 0.0
    for _ in range(1000):
        z1, z2 = (complex(*rng.uniform(-1, 1, 2)) for _ in range(2))
        rho = float(10 ** rng.uniform(-1, 1))
        worst = max(worst, symplectic_invariance_check(z1, z2, rho, 1e-14).deviation)
    rep.checks.append(CheckResult.compare("symplectic_invariance", worst, 1e-14))

    dims = [m for m in (32, 64, 128, 256) if m <= n] or [n]
    table = composition_convergence(points, dims)
    rep.convergence = [{"dim": m, "deviation": dev} for m, dev in table]
    devs = [dev for _, dev in table]
    monotone = all(b <= a or b < 1e-13 for a, b in zip(devs, devs[1:]))
    rep.extra["converged"] = bool(monotone and devs[-1] <= cfg.tolerance)
    rep.extra["points"] = points
    return rep


def run_bogoliubov(cfg: RunConfig) -> Report:
    eps = cfg.real_epsilon(default=0.3)
    rng = np.random.default_rng(cfg.seed)
    rep = Report(cfg.command, cfg.params(), cfg.seed)
    n = cfg.dim
    block = max(1, n // 4)
    rep.checks.append(generator_equivalence_check(n, eps, block, cfg.tolerance))

    # beyond about |log10 rho| > 1.5 the doubles u, v cannot satisfy u**2 - v**2 = 1
    # to 1e-12 absolute (ulp(u) * 2u exceeds it), so the seeded grid stays in [0.1, 10]
    grid = list(np.logspace(-1, 1, 21)) + list(10 ** rng.uniform(-1, 1, 20))
    grid.append(math.exp(-eps))
    if cfg.rho is not None:
        grid.append(float(cfg.rho))
    coeffs = [BogoliubovCoefficients.from_rho(float(r)) for r in grid]
    rep.checks.append(
        CheckResult.compare("u2_minus_v2", max(c.symplectic_defect for c in coeffs), 1e-12)
    )
    ref = BogoliubovCoefficients.from_epsilon(eps)
    cosh_sinh = max(abs(ref.u - math.cosh(eps)), abs(ref.v + math.sinh(eps)))
    rep.checks.append(CheckResult.compare("uv_cosh_sinh", cosh_sinh, 1e-12))

    c_rho, cdag_rho, _ = transformed_ladder(n, math.exp(-eps))
    ccr = ccr_matrix(c_rho, cdag_rho)[: n - 1, : n - 1]
    rep.checks.append(
        CheckResult.compare("transformed_ccr", float(np.max(np.abs(ccr - np.eye(n - 1)))), 1e-10)
    )

    dims = [m for m in (n // 2, n, 2 * n) if m >= 2 and m // 2 >= block]
    rep.convergence = [
        {"dim": m, "deviation": dev} for m, dev in equivalence_convergence(eps, dims, block)
    ]
    rep.extra["coefficients"] = [
        {"rho": c.rho, "u": c.u, "v": c.v} for c in coeffs[:21]
    ]
    return rep


def run_foliation_scan(cfg: RunConfig) -> Report:
    eps = cfg.real_epsilon(default=0.5)
    if not cfg.mode_counts:
        raise UsageError("foliation-scan needs at least one mode count")
    if any(m < 1 for m in cfg.mode_counts):
        raise UsageError(f"mode counts must be >= 1, got {cfg.mode_counts}")
    if cfg.dim < 16:
        raise UsageError("foliation-scan needs dim >= 16")
    rep = Report(cfg.command, cfg.params(), cfg.seed)
    scan = foliation_scan(eps, cfg.mode_counts, cfg.dim)
    rep.scan = scan.rows()

    ref = closed_form_overlap(eps)
    rep.checks.append(
        CheckResult.compare("per_mode_vs_closed_form", abs(scan.per_mode_overlap - ref), cfg.tolerance)
    )
    drift = abs(per_mode_vacuum_overlap(eps, 2 * cfg.dim) - scan.per_mode_overlap)
    rep.checks.append(CheckResult.compare("per_mode_truncation_drift", drift, 1e-6))
    fact = max(
        abs(p - scan.per_mode_overlap**m) / abs(scan.per_mode_overlap**m)
        for m, p in zip(scan.mode_counts, scan.products)
    )
    rep.checks.append(CheckResult.compare("factorization", fact, 1e-12))
    if eps != 0:
        ordered = [p for _, p in sorted(zip(scan.mode_counts, scan.products))]
        increases = max(
            (b - a for a, b in zip(ordered, ordered[1:]) if b >= a), default=0.0
        )
        strict = all(b < a for a, b in zip(ordered, ordered[1:]))
        rep.checks.append(
            CheckResult("decay_in_mode_count", float(increases), 0.0, bool(strict))
        )
    rep.extra["per_mode_overlap"] = scan.per_mode_overlap
    rep.convergence = [
        {"dim": m, "deviation": dev} for m, dev in overlap_convergence(eps, (16, 32, 64, 128))
    ]
    return rep


RUNNERS = {
    "verify-qwh": run_verify_qwh,
    "verify-weyl": run_verify_weyl,
    "bogoliubov": run_bogoliubov,
    "foliation-scan": run_foliation_scan,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_q(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")


def _parse_modes(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(m) for m in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qweyl", description="q-deformed Weyl-Heisenberg verification suites")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--dim", type=int, default=64, help="Fock dimension")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--epsilon", type=complex, help="deformation epsilon = log q (complex syntax allowed, e.g. 0.1j)")
    group.add_argument("--q", type=_parse_q, help="deformation q as RE,IM")
    group.add_argument("--rho", type=float, help="scaling rho = 1/q")
    p.add_argument("--cutoff", type=int, default=16, help="polynomial cutoff degree")
    p.add_argument("--modes", type=_parse_modes, default=[1, 10, 100, 1000])
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="report path (stdout when omitted)")
    p.add_argument("--seed", type=int, default=0)
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    eps = ns.epsilon
    if eps is not None and eps.imag == 0:
        eps = complex(eps.real, 0.0)
    return RunConfig(
        command=ns.command,
        dim=ns.dim,
        epsilon=eps,
        q=ns.q,
        rho=ns.rho,
        cutoff_degree=ns.cutoff,
        mode_counts=ns.modes,
        tolerance=ns.tol,
        output_format=ns.format,
        output_path=ns.out,
        seed=ns.seed,
    )


def run(cfg: RunConfig) -> Report:
    start = time.perf_counter()
    try:
        rep = RUNNERS[cfg.command](cfg)
    except QWeylError as exc:
        raise UsageError(str(exc)) from exc
    rep.timing = time.perf_counter() - start
    return rep


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the target directory, then rename over ``path``."""
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".qweyl-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None) -> int:
    try:
        cfg = config_from_args(argv)
        rep = run(cfg)
    except UsageError as exc:
        print(f"qweyl: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = rep.to_json() if cfg.output_format == "json" else rep.to_csv()
    if cfg.output_path:
        write_atomic(cfg.output_path, text)
    else:
        sys.stdout.write(text)
    for c in rep.checks:
        if not c.passed:
            print(f"FAIL {c.name}: {c.deviation:.3e} > {c.tolerance:.3e}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
