"""Acceptance criteria 1-13.

Each test records one PASS/FAIL line (shown in the pytest terminal summary and
printed when this file is run as a script).  Oracles come from mpmath and
scipy, independent of the package's own summation.
"""

from __future__ import annotations

import csv
import math
import random
import time

import mpmath
import numpy as np
import pytest
from scipy import integrate, special

from acceptance_log import record
from unibessel import (FamilyParams, IdentityId, IntegralVariant, check_identity, evaluate,
                       hyp, integral_rep, kaiser_general, laplace_series, mellin_product_series,
                       mellin_rho_series, mellin_z_series, neumann_expansion, triple_integral,
                       WindowSpec)
from unibessel.cli import figure_definitions, figure_grid, main
from unibessel.identities import pde35_residual

SEED = 7


def rel_diff(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def test_criterion_01_classical_reductions():
    worst = 0.0
    start = time.perf_counter()
    values = []
    for nu in (0.0, 0.5, 1.0, 1.5, 2.0):
        for z in (0.5, 1.0, 2.0, 5.0, 10.0):
            for b in (1.0, -1.0):
                values.append((nu, z, b, evaluate(FamilyParams.unified(b, 1.0, nu), z).value))
    elapsed = time.perf_counter() - start
    for nu, z, b, got in values:
        ref = float(mpmath.besselj(nu, z) if b > 0 else mpmath.besseli(nu, z))
        worst = max(worst, rel_diff(got, ref))
    ok = worst <= 1e-9 and elapsed < 1.0
    record(1, ok, f"max rel diff {worst:.2e} (<= 1e-9), {elapsed:.3f} s (< 1 s)")
    assert worst <= 1e-9
    assert elapsed < 1.0


def test_criterion_02_laplace_closed_forms():
    worst = 0.0
    j0, i0 = FamilyParams.bessel_j(1.0, 0.0), FamilyParams.modified_i(1.0, 0.0)
    for s in (1.0, 1.5, 2.0, 3.0):
        worst = max(worst, rel_diff(laplace_series(j0, s).value, 1.0 / math.sqrt(s * s + 1.0)))
    for s in (1.5, 2.0, 3.0):
        worst = max(worst, rel_diff(laplace_series(i0, s).value, 1.0 / math.sqrt(s * s - 1.0)))
    record(2, worst <= 1e-8, f"max rel diff {worst:.2e} (<= 1e-8)")
    assert worst <= 1e-8


def test_criterion_03_mellin_closed_form():
    j0 = FamilyParams.bessel_j(1.0, 0.0)
    at_one = abs(mellin_z_series(j0, 1.0).value - 2.0 ** -0.5)
    worst = at_one
    for s in (0.5, 1.0, 1.5):
        closed = math.gamma(s) * hyp([s / 2.0, (s + 1.0) / 2.0], [1.0], -1.0)
        worst = max(worst, rel_diff(mellin_z_series(j0, s).value, closed))
    record(3, worst <= 1e-8, f"|M(1) - 2^-1/2| = {at_one:.2e}, max diff vs 2F1 form {worst:.2e}")
    assert worst <= 1e-8


def _random_g_point(rng: random.Random, rho: float):
    b = rng.choice((1.0, -1.0)) * rng.uniform(0.2, 1.0)
    c = rng.uniform(0.5, 3.0)
    nu = rng.uniform(0.0, 2.0)
    z = rng.uniform(0.2, 5.0)
    return FamilyParams.unified(b, c, nu, rho), z


def test_criterion_04_integral_representation():
    rng = random.Random(SEED)
    worst = 0.0
    start = time.perf_counter()
    for i in range(10):
        p, z = _random_g_point(rng, (0.0, 0.5, 1.0)[i % 3])
        ref = evaluate(p, z).value
        for variant in IntegralVariant:
            res = integral_rep(p, z, variant)
            assert res.converged
            worst = max(worst, abs(res.value - ref) / max(abs(ref), 1e-12))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-7 and elapsed < 30.0
    record(4, ok, f"max rel diff {worst:.2e} (<= 1e-7), {elapsed:.1f} s (< 30 s)")
    assert worst <= 1e-7
    assert elapsed < 30.0


def test_criterion_05_triple_integral():
    points = [((1.0, 1.0, 1.0, 0.0), 1.0), ((-1.0, 1.5, 0.5, 0.0), 2.0),
              ((1.0, 2.0, 1.0, 0.5), 1.5)]
    worst = 0.0
    start = time.perf_counter()
    for (b, c, nu, rho), z in points:
        p = FamilyParams.unified(b, c, nu, rho)
        res = triple_integral(p, z)
        worst = max(worst, rel_diff(res.value, evaluate(p, z).value))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-5 and elapsed < 300.0
    record(5, ok, f"max rel diff {worst:.2e} (<= 1e-5), {elapsed:.1f} s (< 300 s)")
    assert worst <= 1e-5
    assert elapsed < 300.0


def test_criterion_06_generating_function():
    points = [dict(b=b, c=c, rho=rho, z=z, t=t, N=25)
              for b, c, rho in ((1.0, 1.0, 0.0), (-1.0, 1.0, 0.0), (1.0, 1.5, 0.4))
              for z, t in ((0.5, 0.7), (1.0, 1.3))]
    report = check_identity(IdentityId.GenFunc22, points, tolerance=1e-9)
    worst = report.max_relative_residual
    record(6, worst < 1e-9, f"max residual {worst:.2e} (< 1e-9) over {len(points)} points")
    assert worst < 1e-9


def test_criterion_07_full_identity_suite(tmp_path):
    out = tmp_path / "verify.json"
    start = time.perf_counter()
    code = main(["verify", "--output", str(out)])
    elapsed = time.perf_counter() - start
    import json
    reports = json.loads(out.read_text())
    covered = {r["id"] for r in reports}
    all_ids = {i.value for i in IdentityId}
    ok = code == 0 and covered == all_ids and elapsed < 600.0
    record(7, ok, f"exit {code}, {len(covered)}/{len(all_ids)} ids, {elapsed:.1f} s (< 600 s)")
    assert covered == all_ids
    assert code == 0
    assert elapsed < 600.0


def test_criterion_08_pde_residual():
    rng = random.Random(SEED)
    points = [(1.0, 3.0, 1.5, 0.4, 1.2)]
    for _ in range(4):
        points.append((rng.choice((1.0, -1.0)) * rng.uniform(0.3, 1.5), rng.uniform(2.2, 4.5),
                       rng.uniform(0.0, 2.5), rng.uniform(0.0, 1.0), rng.uniform(0.4, 4.0)))
    worst = max(pde35_residual(FamilyParams.unified(b, c, nu, rho), z)
                for b, c, nu, rho, z in points)
    record(8, worst <= 1e-6, f"max assembled residual {worst:.2e} (<= 1e-6), 5 points")
    assert worst <= 1e-6


def test_criterion_09_neumann_expansion():
    rng = random.Random(SEED)
    worst = 0.0
    for _ in range(20):
        p, z = _random_g_point(rng, rng.choice((0.0, 0.3, 1.0)))
        mu = rng.uniform(0.0, 2.0)
        while abs(mu - p.nu) < 1e-3:
            mu = rng.uniform(0.0, 2.0)
        got = neumann_expansion(p, mu, z, m_max=40, n_max=20).value
        ref = evaluate(p, z).value
        worst = max(worst, abs(got - ref) / max(abs(ref), 1e-12))
    record(9, worst <= 1e-6, f"max rel diff {worst:.2e} (<= 1e-6), 20 points")
    assert worst <= 1e-6


def test_criterion_10_kaiser_reduction():
    worst, symmetric, centre_ok = 0.0, True, True
    for n_len, alpha in ((11, 1.0), (31, 2.0), (64, 3.0)):
        w = kaiser_general(WindowSpec(n_len, alpha)).as_array()
        classical = np.kaiser(n_len, math.pi * alpha)
        worst = max(worst, float(np.max(np.abs(w - classical))))
        symmetric &= bool(np.array_equal(w, w[::-1]))
        if n_len % 2:
            centre_ok &= w[n_len // 2] == 1.0
        else:
            # even length: no centre sample; the central pair is the maximum
            mid = w[n_len // 2 - 1: n_len // 2 + 1]
            centre_ok &= bool(mid[0] == mid[1] == w.max())
    ok = worst <= 1e-12 and symmetric and centre_ok
    record(10, ok, f"max |w - kaiser| {worst:.2e} (<= 1e-12), symmetric={symmetric}, "
                   f"centre={centre_ok}")
    assert worst <= 1e-12
    assert symmetric and centre_ok


def test_criterion_11_figure_data(tmp_path):
    code = main(["plotdata", "--outdir", str(tmp_path)])
    files = sorted(tmp_path.glob("figure-*.csv"))
    figs = {n: p for n, p, _ in figure_definitions()}
    worst_j0, worst_gen = 0.0, 0.0
    for path in files:
        number = int(path.stem.split("-")[1])
        with path.open() as fh:
            rows = [(float(r["x"]), float(r["y"])) for r in csv.DictReader(fh)]
        p = figs[number]
        assert np.allclose([x for x, _ in rows], figure_grid(p), rtol=0, atol=1e-15)
        for x, y in rows:
            if number == 1:
                worst_j0 = max(worst_j0, abs(y - special.j0(x)) / max(1.0, abs(y)))
            if p.c > 1:
                ref = evaluate(p, x).value
                worst_gen = max(worst_gen, abs(y - ref) / max(1.0, abs(ref)))
    ok = code == 0 and len(files) == 18 and worst_j0 <= 1e-8 and worst_gen <= 1e-8
    record(11, ok, f"{len(files)} files, figure-1 vs J0 {worst_j0:.2e}, "
                   f"generalized vs eval {worst_gen:.2e} (<= 1e-8)")
    assert code == 0 and len(files) == 18
    assert worst_j0 <= 1e-8 and worst_gen <= 1e-8


def test_criterion_12_mellin_in_rho():
    cases = [(FamilyParams.bessel_j(1.5, 0.5), 1.0), (FamilyParams.modified_i(2.0, 1.0), 0.8),
             (FamilyParams.unified(0.5, 1.2, 0.0), 2.0)]
    worst = 0.0
    start = time.perf_counter()
    for p, z in cases:
        series = mellin_rho_series(p, z, 1.0).value
        direct, _ = integrate.quad(lambda r: evaluate(p.replace(rho=r), z).value, 0.0, np.inf,
                                   epsabs=1e-12, epsrel=1e-10, limit=200)
        worst = max(worst, rel_diff(series, direct))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-5 and elapsed < 120.0
    record(12, ok, f"max rel diff {worst:.2e} (<= 1e-5), {elapsed:.1f} s (< 120 s)")
    assert worst <= 1e-5
    assert elapsed < 120.0


def test_criterion_13_product_transform():
    j0 = FamilyParams.bessel_j(1.0, 0.0)
    alpha = beta = 0.2
    series = mellin_product_series(j0, j0, alpha, beta, 1.0).value
    direct, _ = integrate.quad(lambda z: z * math.exp(-z) * special.j0(alpha * z)
                               * special.j0(beta * z), 0.0, np.inf, epsabs=1e-14, epsrel=1e-12)
    diff = rel_diff(series, direct)
    record(13, diff <= 1e-6, f"rel diff {diff:.2e} (<= 1e-6)")
    assert diff <= 1e-6


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
