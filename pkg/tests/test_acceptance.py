"""Acceptance suite: one PASS/FAIL line per criterion (see the summary block)."""

import math
import os
import subprocess
import sys
import time

import numpy as np

from secrecy_ic.analysis import divergence_window, phi_thresholds, select_scheme
from secrecy_ic.channel import LN2, ChannelConfig
from secrecy_ic.low_snr import (
    Regime, eb_n0_min, slope_constants, slope_region_boundary, slopes_multiplexed, product_constant,
)
from secrecy_ic.oracle import ALPHAS, THETAS, verify_containment, verify_derivatives, verify_eb_limit
from secrecy_ic.rates import (
    HighSnrQuery, NoiseRole, Scheme, achievable_region, artificial_noise_kernel,
    artificial_noise_rates, hausdorff_distance, high_snr_limits, multiplexed_kernel,
    multiplexed_rates, tdma_rates,
)

FIG1 = ChannelConfig(1.0, 0.04, 0.04, 1.0, sigma2=1.0, p1=0.1, p2=0.1)
FIG4 = ChannelConfig(1.0, 0.4, 0.5, 1.0)
FIG5 = ChannelConfig(1.0, 0.1, 0.2, 1.0)


def test_minimum_energy_per_bit(criterion):
    start = time.perf_counter()
    closed = eb_n0_min(FIG1, Regime.SECRECY)
    plain = eb_n0_min(FIG1, Regime.NO_SECRECY)
    ladder_sec = verify_eb_limit(FIG1, Regime.SECRECY, tol=1e-4)
    ladder_plain = verify_eb_limit(FIG1, Regime.NO_SECRECY, tol=1e-4)
    elapsed = time.perf_counter() - start
    target = LN2 / 0.96
    ok = (all(abs(v - target) <= 1e-12 * target for v in closed)
          and all(abs(v - LN2) <= 1e-12 for v in plain)
          and ladder_sec.passed and ladder_plain.passed and elapsed < 1.0)
    assert criterion(
        "min_energy_per_bit", ok,
        f"secrecy {closed[0]:.8f}, ladder rel err {max(ladder_sec.limit_deltas):.2e} (tol 1e-4), "
        f"no-secrecy |eb - ln2| {max(abs(v - LN2) for v in plain):.1e}, {elapsed:.3f} s")


def test_zero_snr_derivative_suite(criterion, random_configs):
    start = time.perf_counter()
    failures, worst, checks = 0, 0.0, 0
    for cfg in random_configs:
        for scheme, params in ((Scheme.TDMA, ALPHAS), (Scheme.MULTIPLEXED, THETAS)):
            for p in params:
                check = verify_derivatives(cfg, scheme, p, h=1e-4, tol=1e-3)
                checks += 1
                failures += not check.passed
                worst = max(worst, check.worst)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 30.0
    assert criterion("zero_snr_derivative_suite", ok,
                     f"{checks} checks, {failures} failures, worst rel err {worst:.2e} "
                     f"(tol 1e-3), {elapsed:.2f} s")


def test_slope_identity_suite(criterion, random_configs):
    worst, points = 0.0, 0
    for cfg in [FIG1, FIG4, FIG5, *random_configs]:
        for regime in Regime:
            for scheme in (Scheme.TDMA, Scheme.MULTIPLEXED):
                b = slope_region_boundary(cfg, scheme, regime, 101)
                worst = max(worst, max(b.identity_residual(p) for p in b.points))
                points += len(b.points)
    s1, s2 = slopes_multiplexed(FIG1, 1.0)
    s_ref = 1.92 / (1.04 + 0.08 / 0.96)
    phi = product_constant(FIG1)
    phi_ref = 0.0064 / 0.9984 ** 2
    spot = (abs(s1 - s_ref) <= 1e-12 * s_ref and abs(s2 - s_ref) <= 1e-12 * s_ref
            and abs(phi - phi_ref) <= 1e-12 * phi_ref)
    ok = worst <= 1e-9 and spot
    assert criterion("slope_identity_suite", ok,
                     f"{points} points, worst residual {worst:.1e} (tol 1e-9); "
                     f"spot S1={s1:.9f} S2={s2:.9f} phi={phi:.9f}")


def test_penalty_containment(criterion, random_configs):
    violations, worst = 0, -math.inf
    for cfg in random_configs:
        phi, phi0 = phi_thresholds(cfg)
        k = slope_constants(cfg)
        violations += not (phi > phi0 and 0.0 < k.A < 1.0 and 0.0 < k.B < 1.0)
        for scheme in (Scheme.TDMA, Scheme.MULTIPLEXED):
            inner = slope_region_boundary(cfg, scheme, Regime.SECRECY, 101)
            outer = slope_region_boundary(cfg, scheme, Regime.NO_SECRECY, 101)
            report = verify_containment(inner, outer)
            strict = (report.worst_violation < 0.0 and inner.s1_max < outer.s1_max
                      and inner.s2_max < outer.s2_max)
            violations += not strict
            worst = max(worst, report.worst_violation)
    assert criterion("penalty_containment", violations == 0,
                     f"{len(random_configs)} configs, {violations} violations, "
                     f"worst outer margin {worst:.3e} (must be < 0)")


def test_scheme_selection(criterion, random_configs):
    v4, v5 = select_scheme(FIG4), select_scheme(FIG5)
    fig4 = (abs(v4.phi - 0.8 / (0.75 * 0.84)) <= 1e-12 and abs(v4.phi0 - 0.8) <= 1e-12
            and v4.verdict_secrecy.value == "tdma_optimal"
            and v4.verdict_no_secrecy.value == "multiplexed_optimal" and v4.divergent)
    fig5 = (abs(v5.phi - 0.08 / (0.96 * 0.99)) <= 1e-12
            and v5.verdict_secrecy.value == v5.verdict_no_secrecy.value == "multiplexed_optimal"
            and not v5.divergent)
    discrepancies, inside = 0, 0
    for cfg in random_configs:
        phi, phi0 = phi_thresholds(cfg)
        window = divergence_window(cfg)
        inside += window
        discrepancies += window != (phi > 1.0 and phi0 < 1.0)
    ok = fig4 and fig5 and discrepancies == 0
    assert criterion("scheme_selection", ok,
                     f"fig4 phi={v4.phi:.8f} phi0={v4.phi0:.8f} "
                     f"({v4.verdict_secrecy.value}, {v4.verdict_no_secrecy.value}, "
                     f"divergent={v4.divergent}); fig5 phi={v5.phi:.8f}; window discrepancies "
                     f"{discrepancies}/{len(random_configs)} ({inside} inside)")


def test_fig1_tdma_multiplexed_hausdorff(criterion):
    d = hausdorff_distance(achievable_region(FIG1, "tdma", 101), achievable_region(FIG1, "mux", 101))
    assert criterion("fig1_hausdorff_tdma_vs_mux", d < 2e-4, f"distance {d:.3e} nats (tol 2e-4)")


def test_fig1_an_zero_lambda_is_multiplexed(criterion):
    s = np.linspace(0.0, 0.1, 101)
    S1, S2 = np.meshgrid(s, s, indexing="ij")
    an = artificial_noise_kernel(1.0, 0.04, 0.04, 1.0, S1, S2, 0.0)
    mux = multiplexed_kernel(1.0, 0.04, 0.04, 1.0, S1, S2)
    kernel = max(float(np.max(np.abs(a - m))) for a, m in zip(an, mux))
    region = hausdorff_distance(achievable_region(FIG1, "an", 101, lam=0.0),
                                achievable_region(FIG1, "mux", 101))
    ok = kernel <= 1e-12 and region <= 1e-12
    assert criterion("fig1_an_lambda0_equals_mux", ok,
                     f"max rate diff {kernel:.1e}, frontier distance {region:.1e} (tol 1e-12)")


def test_fig1_an_half_lambda_intercept(criterion):
    lam = 0.5
    r2 = artificial_noise_rates(FIG1, 0.0, 0.1, lam, NoiseRole.FROM_TX2).r2
    predicted = (1.0 - lam) * 0.96 * 0.1
    gap = abs(r2 - predicted)
    assert criterion("fig1_an_lambda05_intercept", gap <= 5e-4,
                     f"r2 intercept {r2:.6f} vs {predicted:.6f}, gap {gap:.2e} (tol 5e-4)")


def test_high_snr(criterion, random_configs):
    worst, bad = 0.0, 0
    for cfg in [FIG1, FIG4, FIG5, *random_configs[:200]]:
        big = ChannelConfig(cfg.g11, cfg.g12, cfg.g21, cfg.g22, p1=1e8, p2=1e8)
        mux = multiplexed_rates(big, 1e8, 1e8)
        bad += not (mux.r1 == 0.0 and mux.r2 == 0.0 and mux.clamped1 and mux.clamped2)
        t = tdma_rates(big, 1e8, 1e8, 0.5)
        lim = (0.5 * math.log(cfg.g11 / cfg.g21), 0.5 * math.log(cfg.g22 / cfg.g12))
        err = max(abs(t.r1 - lim[0]), abs(t.r2 - lim[1]))
        worst = max(worst, err)
        bad += err > 1e-3
    assert criterion("high_snr", bad == 0,
                     f"{len(random_configs[:200]) + 3} configs, multiplexed clamped to 0, "
                     f"tdma worst gap {worst:.2e} nats (tol 1e-3), {bad} failures")


CLI_CASES = {
    "validate": ["validate"],
    "region_tdma": ["region", "--scheme", "tdma", "--grid", "51"],
    "region_mux_bits": ["region", "--scheme", "mux", "--grid", "51", "--units", "bits"],
    "region_an": ["region", "--scheme", "an", "--grid", "21"],
    "lowsnr": ["lowsnr", "--scheme", "mux", "--theta", "2"],
    "slopes": ["slopes", "--grid", "51"],
    "select": ["select"],
    "penalty": ["penalty"],
    "verify": ["verify"],
}


def _cli(args, env_seed):
    env = dict(os.environ, PYTHONHASHSEED=str(env_seed))
    return subprocess.run([sys.executable, "-m", "secrecy_ic", *args], env=env,
                          capture_output=True, check=False)


def test_cli_determinism(criterion, tmp_path):
    cfg = tmp_path / "fig4.cfg"
    cfg.write_text("g11=1\ng12=0.4\ng21=0.5\ng22=1\nsigma2=1\np1=1\np2=1\n")
    differing, failed = [], []
    for name, args in CLI_CASES.items():
        outs = []
        for run_idx in range(2):
            out = tmp_path / f"{name}_{run_idx}.{'csv' if name != 'validate' else 'txt'}"
            proc = _cli([*args, "--config", str(cfg), "--output", str(out)], run_idx)
            if proc.returncode != 0:
                failed.append(name)
            outs.append(out.read_bytes() if out.exists() else b"")
        if outs[0] != outs[1] or not outs[0]:
            differing.append(name)
    verify_seed = ["verify", "--seed", "7", "--count", "20"]
    for fig in range(1, 6):
        dirs = [tmp_path / f"fig{fig}_{i}" for i in range(2)]
        for i, d in enumerate(dirs):
            if _cli(["reproduce-fig", "--fig", str(fig), "--output", str(d), "--grid", "51"],
                    i).returncode != 0:
                failed.append(f"fig{fig}")
        names = sorted(p.name for p in dirs[0].iterdir()) if dirs[0].exists() else []
        if not names or names != sorted(p.name for p in dirs[1].iterdir()) or any(
                (dirs[0] / n).read_bytes() != (dirs[1] / n).read_bytes() for n in names):
            differing.append(f"reproduce-fig {fig}")
    seeded = [_cli([*verify_seed, "--output", str(tmp_path / f"v{i}.csv")], i) for i in range(2)]
    if any(p.returncode for p in seeded):
        failed.append("verify --seed")
    if (tmp_path / "v0.csv").read_bytes() != (tmp_path / "v1.csv").read_bytes():
        differing.append("verify --seed")
    ok = not differing and not failed
    assert criterion("cli_determinism", ok,
                     f"{len(CLI_CASES) + 6} subcommand runs doubled, differing: {differing or 'none'}, "
                     f"nonzero exit: {failed or 'none'}")
