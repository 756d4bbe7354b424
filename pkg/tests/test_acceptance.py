"""Acceptance criteria, one test per criterion, at their stated tolerances.

Each test prints a single PASS/FAIL line (visible with pytest -s or in the
captured output) and asserts the criterion.
"""

import json
import math
import time

import numpy as np
import pytest
from click.testing import CliRunner

import semihilbert as sh
from semihilbert import Operator, make_weight
from semihilbert import geometry as geo
from semihilbert import harness as hz
from semihilbert.cli import main as cli_main


def _report(num: int, ok: bool, msg: str):
    print(f"criterion {num:02d} {'PASS' if ok else 'FAIL'}: {msg}")
    assert ok, f"criterion {num:02d} failed: {msg}"


def _normalized_pair(t, s):
    return hz.normalized(t), hz.normalized(s)


def test_criterion_01_signflip_example():
    """diag(1,2) weight, diag(1,-1) operator: all canonical values at 1e-9."""
    tol = 1e-9

    def compute():
        w = make_weight(np.diag([1.0, 2.0]))
        t = Operator(w, np.diag([1.0, -1.0]))
        nt = sh.seminorm(t)
        nt1 = sh.seminorm(Operator(w, t.matrix + np.eye(2)))
        pr = sh.is_parallel(t, sh.identity(w))
        dg = sh.daugavet_check(t)
        om = sh.numerical_radius(t)
        dw = sh.davis_wielandt_radius(t)
        return nt, nt1, pr, dg, om, dw

    compute()  # warm BLAS/caches; the budget is per-analysis compute
    t0 = time.perf_counter()
    nt, nt1, pr, dg, om, dw = compute()
    elapsed = time.perf_counter() - t0

    ok = (
        abs(nt - 1.0) <= tol
        and abs(nt1 - 2.0) <= tol
        and pr.certificate.verdict and pr.consensus
        and abs(pr.lambda_star - 1.0) <= tol
        and dg.verdict and dg.details["consensus"]
        and abs(dw - math.sqrt(2.0)) <= tol
        and abs(dw - math.sqrt(om * om + nt ** 4)) <= tol
        and elapsed < 0.1
    )
    _report(1, ok, f"values at 1e-9, runtime {elapsed * 1e3:.1f} ms < 100 ms")


@pytest.mark.parametrize("lam", [0.5, 1.0, 3.0])
def test_criterion_02_truncated_pair(lam):
    """Rank-one weight diag(0,1,0): both norms lam, sum 2*lam, witness e2."""
    tol = 1e-9
    w = make_weight(np.diag([0.0, 1.0, 0.0]))
    t = Operator(w, np.diag([0.0, lam, 1.0]))
    s = Operator(w, np.diag([lam, lam, 1.0]))
    pr = sh.is_parallel(t, s)
    x = pr.certificate.witness_vector
    ok = (
        abs(sh.seminorm(t) - lam) <= tol
        and abs(sh.seminorm(s) - lam) <= tol
        and abs(sh.seminorm(Operator(w, t.matrix + s.matrix)) - 2 * lam) <= tol
        and pr.certificate.verdict and pr.consensus
        and abs(abs(x[1]) - 1.0) <= tol and abs(x[0]) <= tol and abs(x[2]) <= tol
    )
    _report(2, ok, f"lam={lam}: norms, sum and e2-supported witness at 1e-9")


def test_criterion_03_projection_counterexample():
    """diag(1,1,0) weight, diag(2,-1,1): one-sided orthogonality exactly."""
    tol = 1e-9
    w = make_weight(np.diag([1.0, 1.0, 0.0]))
    t = Operator(w, np.diag([2.0, -1.0, 1.0]))
    ident = sh.identity(w)
    d_ti = sh.distance_to_line(t, ident).distance
    d_it = sh.distance_to_line(ident, t).distance
    ok = (
        abs(d_ti - 1.5) <= tol
        and abs(sh.seminorm(t) - 2.0) <= tol
        and abs(d_it - 1.0) <= tol
        and not sh.is_bj_orthogonal(t, ident).verdict
        and sh.is_bj_orthogonal(ident, t).verdict
    )
    _report(3, ok, "d(T,CI)=1.5, d(I,CT)=1, bj(T,I)=False, bj(I,T)=True at 1e-9")


def test_criterion_04_equivalence_cluster_consensus():
    """1000 instances: parallelism routes and the five BJ forms agree."""
    tol = 1e-6
    disagreements = 0
    checked = 0
    for i, (spec, w, t, s) in enumerate(sh.instance_stream(1000, seed=401)):
        t, s = _normalized_pair(t, s)
        if i % 2 == 0:
            rng = np.random.default_rng(spec.seed ^ 0xACCE)
            s = hz.dependent_pair(t, rng)
        pr = geo.is_parallel(t, s, tol)
        if not pr.consensus:
            disagreements += 1
            continue
        nt, ns = sh.seminorm(t), sh.seminorm(s)
        lam = pr.lambda_star
        r1 = geo.snap_zero(Operator(w, ns * t.matrix - lam * nt * s.matrix),
                           2.0 * nt * ns)
        r2 = geo.snap_zero(Operator(w, lam * nt * s.matrix - ns * t.matrix),
                           2.0 * nt * ns)
        c2 = geo.is_bj_orthogonal(t, r1, tol)
        c3 = geo.is_bj_orthogonal(s, r2, tol)
        if not (pr.certificate.verdict == c2.verdict == c3.verdict):
            disagreements += 1
            continue
        if pr.certificate.verdict and nt * ns > 0:
            x = pr.certificate.witness_vector
            res4 = w.semi_norm(t.matrix @ x - lam * (nt / ns) * (s.matrix @ x))
            res5 = w.semi_norm(s.matrix @ x
                               - np.conj(lam) * (ns / nt) * (t.matrix @ x))
            if max(res4, res5) > tol:
                disagreements += 1
                continue
        checked += 1
    ok = disagreements == 0 and checked >= 990
    _report(4, ok, f"{checked} instances consistent, "
                   f"{disagreements} disagreements (residual 1e-6)")


def test_criterion_05_normaloid_cluster():
    """500 instances: the four attainment/normaloid conditions coincide."""
    tol = 1e-7
    psd_floor = 1e-8
    disagreements = 0
    true_count = 0
    for spec, w, t, _ in sh.instance_stream(
            500, seed=501,
            families=("diagonal", "generic", "a_normal", "nilpotent_reduced",
                      "a_selfadjoint", "rank_one")):
        t = hz.normalized(t)
        nt = sh.seminorm(t)
        om = sh.numerical_radius(t)
        dw = sh.davis_wielandt_radius(t)
        upper = math.sqrt(om * om + nt ** 4)
        window = upper - max(om, nt * nt)
        v1 = window <= 0.0 or abs(upper - dw) <= tol * window
        v2 = geo.is_parallel(t, sh.identity(w), tol).certificate.verdict
        v3 = abs(sh.spectral_radius(t) - nt) <= tol * max(1.0, nt)
        h = om * om * w.matrix - t.matrix.conj().T @ w.matrix @ t.matrix
        h = (h + h.conj().T) / 2.0
        v4 = float(np.linalg.eigvalsh(h)[0]) >= -psd_floor * float(w.eigvals[0])
        if not v1 == v2 == v3 == v4:
            disagreements += 1
        elif v1:
            true_count += 1
    ok = disagreements == 0 and true_count > 50
    _report(5, ok, f"500 instances, {disagreements} verdict splits, "
                   f"{true_count} normaloid-true")


def test_criterion_06_inequality_chains():
    """1000 instances: every certified inequality holds at 1e-8."""
    tol = 1e-8
    violations = 0
    worst = 0.0
    for i, (spec, w, t, s) in enumerate(sh.instance_stream(1000, seed=601)):
        t, s = _normalized_pair(t, s)
        nt = sh.seminorm(t)
        om = sh.numerical_radius(t)
        dw = sh.davis_wielandt_radius(t)
        bad = 0.0
        bad = max(bad, 0.5 * nt - om, om - nt)                      # radius bounds
        bad = max(bad, max(om, nt * nt) - dw,
                  dw - math.sqrt(om * om + nt ** 4))                # dw sandwich
        om2 = sh.numerical_radius(sh.operator_power(t, 2))
        for r in (1, 2, 3):
            bad = max(bad, om ** (2 * r) - 0.5 * (om2 ** r + nt ** (2 * r)))
        ident = sh.identity(w)
        d_ti = geo._distance_value(t, ident)[0]
        d_it = geo._distance_value(ident, t)[0]
        bad = max(bad, (nt * nt - om * om) - d_ti * d_ti)           # lower chain
        bad = max(bad, d_ti - nt * d_it)                            # compdist
        if i % 2 == 0 and sh.seminorm(s) > 0:
            s_inv = hz.bounded_below(s)
            t_bj = hz.shift_to_bj(t, s_inv)
            cert = sh.is_bj_orthogonal(t_bj, s_inv)
            if cert.verdict:
                ntb = sh.seminorm(t_bj)
                m_s = sh.min_modulus(s_inv)
                radii = np.linspace(0.2, 2.0, 5) * max(ntb, 1.0)
                angles = np.exp(2j * np.pi * np.arange(5) / 5)
                gammas = (radii[:, None] * angles[None, :]).ravel()
                stack = t_bj.reduced[None] + gammas[:, None, None] \
                    * s_inv.reduced[None]
                vals = np.linalg.svd(stack, compute_uv=False)[:, 0]
                bound = ntb * ntb + (np.abs(gammas) * m_s) ** 2
                bad = max(bad, float(np.max(bound - vals ** 2)))
        worst = max(worst, bad)
        if bad > tol:
            violations += 1
    ok = violations == 0
    _report(6, ok, f"1000 instances, {violations} violations, "
                   f"worst slack {worst:.2e} (tol 1e-8)")


def test_criterion_07_oracle_equivalence():
    """200 small-rank instances: grid oracle matches the eigen routes."""
    lin_tol, dw_tol = 5e-3, 1e-2
    failures = 0
    worst_lin = worst_dw = 0.0
    count = 0
    for spec, w, t, s in sh.instance_stream(
            200, seed=701, sizes=(2, 3, 4), families=hz.FAMILIES):
        if w.rank > 3:
            continue
        if sh.seminorm(t) == 0.0 or sh.seminorm(s) == 0.0:
            continue
        t, s = _normalized_pair(t, s)
        oracle = sh.brute_oracle(w, t, s, grid_density=200)
        dlin = max(abs(sh.seminorm(t) - oracle.seminorm),
                   abs(sh.numerical_radius(t) - oracle.omega),
                   abs(geo._distance_value(t, s)[0] - oracle.distance))
        ddw = abs(sh.davis_wielandt_radius(t) - oracle.davis_wielandt)
        worst_lin = max(worst_lin, dlin)
        worst_dw = max(worst_dw, ddw)
        if dlin > lin_tol or ddw > dw_tol:
            failures += 1
        count += 1
    ok = failures == 0 and count >= 150
    _report(7, ok, f"{count} instances, worst linear {worst_lin:.2e} "
                   f"(5e-3), worst dw {worst_dw:.2e} (1e-2)")


def test_criterion_08_disc_containment():
    """200 instances: all 512 range samples inside the covering disc."""
    slack_floor = -1e-7
    worst = 0.0
    for spec, w, t, _ in sh.instance_stream(200, seed=801):
        t = hz.normalized(t)
        if sh.seminorm(t) == 0.0:
            continue
        dist, gamma = geo._distance_value(t, sh.identity(w))
        center = -gamma
        samples = sh.numerical_range_samples(t, 512)
        slack = dist - float(np.max(np.abs(samples - center)))
        worst = min(worst, slack)
    ok = worst >= slack_floor
    _report(8, ok, f"200 instances, worst slack {worst:.2e} >= -1e-7")


def test_criterion_09_rank_one_closed_forms():
    """500 pairs: closed forms at 1e-8 and dependence/parallelism agreement."""
    tol = 1e-8
    worst = 0.0
    disagreements = 0
    rng = np.random.default_rng(901)
    for i in range(500):
        n = int(rng.integers(2, 6))
        r = int(rng.integers(1, n + 1))
        spec = sh.InstanceSpec(dim=n, rank=r, seed=int(rng.integers(1 << 31)),
                               family="rank_one")
        w, _, _ = sh.generate(spec)
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        if i % 5 == 0:
            y = complex(rng.standard_normal() + 1j * rng.standard_normal()) * x
        else:
            y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        nx, ny = w.semi_norm(x), w.semi_norm(y)
        if nx > 0:
            x = (w.proj_range @ x) / nx
        if ny > 0:
            y = (w.proj_range @ y) / ny
        op = sh.rank_one(w, x, y)
        nx, ny = w.semi_norm(x), w.semi_norm(y)
        pairing = abs(w.semi_inner(x, y))
        worst = max(worst, abs(sh.seminorm(op) - nx * ny))
        worst = max(worst,
                    abs(sh.numerical_radius(op) - 0.5 * (pairing + nx * ny)))
        cert = sh.rank_one_parallel_identity(w, x, y)
        if not cert.details["agreement"]:
            disagreements += 1
    ok = worst <= tol and disagreements == 0
    _report(9, ok, f"500 pairs, worst closed-form residual {worst:.2e} "
                   f"(1e-8), {disagreements} verdict disagreements")


def test_criterion_10_suite_determinism_and_runtime():
    """Two CLI suite runs: byte-identical scalar sections, < 60 s each."""
    runner = CliRunner()
    sections = []
    elapsed = []
    with runner.isolated_filesystem():
        for name in ("a.json", "b.json"):
            t0 = time.perf_counter()
            res = runner.invoke(cli_main, ["suite", "--trials", "100",
                                           "--seed", "7", "-o", name])
            elapsed.append(time.perf_counter() - t0)
            assert res.exit_code == 0, res.output
            with open(name) as fh:
                body = json.load(fh)
            sections.append(json.dumps(body["scalars"],
                                       sort_keys=True).encode())
    ok = sections[0] == sections[1] and max(elapsed) < 60.0
    _report(10, ok, f"byte-identical scalar sections, runs "
                    f"{elapsed[0]:.1f}s / {elapsed[1]:.1f}s < 60s")
