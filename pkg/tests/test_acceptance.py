"""Acceptance gate: one test per exit criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` (or ``python3 tests/test_acceptance.py``)
to see the summary lines. Tolerances are fixed here and never tuned.
"""

import cmath
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from qweyl.bargmann import (
    BargmannPoly,
    Deformation,
    dilation,
    number_exponential_identity_check,
    q_commutator,
)
from qweyl.fock import BogoliubovCoefficients, cross_representation_check, generator_equivalence_check
from qweyl.foliation import (
    TestFunction,
    closed_form_overlap,
    foliation_scan,
    per_mode_vacuum_overlap,
    scalar_product,
    scale_test_function,
)
from qweyl.weyl import (
    composition_convergence,
    scale_label,
    symplectic_area,
)

SEED = 1994
WEYL_POINTS = [0.0, 1.0, 1j, -0.6 + 0.8j, -0.5 - 0.5j]


ACCEPTANCE_LINES: list[str] = []


def report(tag: str, ok: bool, detail: str) -> None:
    # collected by conftest and printed in the terminal summary
    line = f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _random_poly(rng):
    deg = int(rng.integers(0, 33))
    r = np.sqrt(rng.uniform(0, 1, deg + 1))
    return BargmannPoly(r * np.exp(1j * rng.uniform(-np.pi, np.pi, deg + 1)))


def _random_q(rng):
    # |q| in [exp(-0.5), exp(0.15)], any phase; |q - 1| >= 1e-3 by rejection
    while True:
        q = cmath.exp(complex(rng.uniform(-0.5, 0.15), rng.uniform(-np.pi, np.pi)))
        if abs(q - 1) >= 1e-3:
            return q


def test_c1_qwh_exactness():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    polys = [_random_poly(rng) for _ in range(1000)]
    qs = [_random_q(rng) for _ in range(98)]
    # include the edge of the admissible region
    qs += [1 + 1e-3, 1 + 1e-3 * cmath.exp(2j)]
    worst = 0.0
    for q in qs:
        d = Deformation.from_q(q)
        for p in polys:
            norm = np.abs(p.coeffs).max()
            diff = np.abs(q_commutator(p, d).coeffs - dilation(p, d).coeffs).max()
            worst = max(worst, diff / norm)
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-12 and elapsed < 5.0
    report("C1 q-WH exactness", ok, f"max rel dev {worst:.2e} (tol 1e-12), {elapsed:.2f}s (<5s)")
    assert ok


def test_c2_generator_identity():
    start = time.perf_counter()
    results = [
        number_exponential_identity_check(D, Deformation.from_epsilon(eps), 1e-10)
        for D in (4, 8, 16, 32)
        for eps in (0.1, -0.1, 0.5, -0.5, 0.3j)
    ]
    elapsed = time.perf_counter() - start
    worst = max(r.deviation for r in results)
    ok = all(r.passed for r in results) and elapsed < 5.0
    report("C2 generator identity", ok, f"{len(results)} cases, max dev {worst:.2e} (tol 1e-10), {elapsed:.2f}s (<5s)")
    assert ok


def test_c3_bogoliubov_equivalence():
    start = time.perf_counter()
    r64 = generator_equivalence_check(64, 0.3, 16, 1e-8)
    r128 = generator_equivalence_check(128, 0.3, 16, 1e-8)
    elapsed = time.perf_counter() - start
    ok = r64.passed and r128.deviation < r64.deviation and elapsed < 30.0
    report("C3a Bogoliubov conjugation", ok,
           f"n=64 dev {r64.deviation:.2e} (tol 1e-8), n=128 dev {r128.deviation:.2e} (< n=64), {elapsed:.2f}s")
    assert ok


def test_c3_symplectic_coefficients():
    grid = np.logspace(-3, 3, 61)
    defects = np.array([BogoliubovCoefficients.from_rho(float(r)).symplectic_defect for r in grid])
    worst = float(defects.max())
    bad = grid[defects > 1e-12]
    ok = worst <= 1e-12
    detail = f"max |u^2 - v^2 - 1| {worst:.2e} (tol 1e-12) over 61 rho in [1e-3, 1e3]"
    if not ok:
        detail += f"; exceeded at {len(bad)} points, |log10 rho| >= {np.abs(np.log10(bad)).min():.1f}"
    report("C3b u^2 - v^2 = 1", ok, detail)
    assert ok


def test_c4_weyl_composition():
    start = time.perf_counter()
    table = composition_convergence(WEYL_POINTS, (32, 64, 128))
    devs = [d for _, d in table]
    ok = devs[-1] <= 1e-6 and all(b < a for a, b in zip(devs, devs[1:]))
    details = [f"unscaled {['%.1e' % d for d in devs]}"]
    for rho in (0.5, 2.0):
        sdevs = [d for _, d in composition_convergence(WEYL_POINTS, (32, 64, 128), rho=rho)]
        ok = ok and sdevs[-1] <= 1e-6 and all(b < a for a, b in zip(sdevs, sdevs[1:]))
        details.append(f"rho={rho} {['%.1e' % d for d in sdevs]}")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 60.0
    report("C4 Weyl composition", ok, f"n=32,64,128: {'; '.join(details)} (tol 1e-6), {elapsed:.1f}s (<60s)")
    assert ok


def test_c5_symplectic_invariants():
    start = time.perf_counter()
    rng = np.random.default_rng(SEED + 5)
    worst_area = 0.0
    for _ in range(1000):
        z1, z2 = (complex(*rng.uniform(-1, 1, 2)) for _ in range(2))
        rho = 10 ** rng.uniform(-3, 3)
        s1, s2 = scale_label(z1, rho), scale_label(z2, rho)
        before = symplectic_area(s1.base, s2.base)
        after = symplectic_area(s1.scaled, s2.scaled)
        scale = abs(z1.real * z2.imag) + abs(z1.imag * z2.real)
        worst_area = max(worst_area, abs(after - before) / scale)
    worst_tf = 0.0
    for _ in range(1000):
        f1, g1, f2, g2 = rng.normal(size=(4, 64))
        w = rng.uniform(0.01, 1)
        F1, F2 = TestFunction(f1, g1, w), TestFunction(f2, g2, w)
        rho = 10 ** rng.uniform(-3, 3)
        before = scalar_product(F1, F2).imag
        after = scalar_product(scale_test_function(F1, rho), scale_test_function(F2, rho)).imag
        scale = w * (np.abs(f1 * g2).sum() + np.abs(f2 * g1).sum())
        worst_tf = max(worst_tf, abs(after - before) / scale)
    elapsed = time.perf_counter() - start
    ok = worst_area <= 1e-14 and worst_tf <= 1e-14 and elapsed < 1.0
    report("C5 symplectic invariants", ok,
           f"area {worst_area:.1e}, Im<F1,F2> {worst_tf:.1e} (tol 1e-14 rel), {elapsed:.2f}s (<1s)")
    assert ok


def test_c6_foliation_decay():
    start = time.perf_counter()
    v64 = per_mode_vacuum_overlap(0.5, 64)
    v128 = per_mode_vacuum_overlap(0.5, 128)
    oracle = closed_form_overlap(0.5)
    scan = foliation_scan(0.5, [1, 10, 100, 1000], 64)
    # independent route: sum of M per-mode log overlaps
    logs = {m: math.fsum([math.log(v64)] * m) for m in scan.mode_counts}
    fact = max(abs(p - math.exp(logs[m])) / math.exp(logs[m])
               for m, p in zip(scan.mode_counts, scan.products))
    elapsed = time.perf_counter() - start
    ok = (
        abs(v64 - 0.94172) <= 1e-4
        and abs(v64 - oracle) <= 1e-4
        and abs(v128 - v64) < 1e-6
        and fact <= 1e-12
        and scan.products[-1] < 1e-20
        and elapsed < 10.0
    )
    report("C6 foliation decay", ok,
           f"overlap {v64:.6f} vs cosh^-1/2 {oracle:.6f}, drift {abs(v128 - v64):.1e}, "
           f"factorization {fact:.1e}, M=1000 product {scan.products[-1]:.2e}, {elapsed:.2f}s")
    assert ok


def test_c7_cross_representation():
    r = cross_representation_check(128, 0.3, 1e-6)
    report("C7 cross-representation", r.passed, f"leading 32 block, max |eig - e^(0.3k)| {r.deviation:.2e} (tol 1e-6)")
    assert r.passed


def test_c8_cli_contract(tmp_path):
    cmd = [sys.executable, "-m", "qweyl.cli"]
    reports = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        proc = subprocess.run([*cmd, "verify-weyl", "--dim", "64", "--seed", "11", "--out", str(out)])
        assert proc.returncode == 0
        rep = json.loads(out.read_text())
        rep.pop("timing")
        reports.append(rep)
    failing = subprocess.run(
        [*cmd, "bogoliubov", "--tol", "1e-30", "--out", str(tmp_path / "fail.json")],
        stderr=subprocess.DEVNULL,
    )
    ok = reports[0] == reports[1] and failing.returncode == 2
    report("C8 CLI contract", ok, f"identical reports: {reports[0] == reports[1]}, forced failure exit {failing.returncode}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
