"""Random instances, brute-force grid oracles, and the property suite.

Every inequality and equivalence the library certifies runs here as a
statistical property over reproducible random instances, with independent
low-discrepancy grid oracles for small reduced ranks.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Optional

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from . import geometry as geo
from . import operators as ops
from .errors import BadSpec, RankTooLarge
from .operators import Operator
from .weightspace import Weight, make_weight

FAMILIES = ("generic", "diagonal", "a_selfadjoint", "a_normal",
            "nilpotent_reduced", "rank_one")


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one reproducible (weight, T, S) instance."""

    dim: int
    rank: int
    entry_scale: float = 1.0
    seed: int = 0
    family: str = "generic"


@dataclass(frozen=True)
class Tolerances:
    decision: float = 1e-7
    inequality: float = 1e-8
    cross: float = 1e-6
    psd: float = 1e-8
    numeric: float = 1e-9


def _haar_unitary(rng, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    ph = np.diag(r).copy()
    ph /= np.abs(ph)
    return q * ph


def _complex_matrix(rng, n: int, scale: float) -> np.ndarray:
    return scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def _lift_reduced(w: Weight, reduced: np.ndarray) -> np.ndarray:
    """n x n matrix whose reduction equals ``reduced`` (zero on the null space)."""
    rd = np.sqrt(w.d)
    core = (reduced * rd[None, :]) / rd[:, None]
    return w.range_basis @ core @ w.range_basis.conj().T


def generate(spec: InstanceSpec) -> tuple[Weight, Operator, Operator]:
    """Draw a weight of exact rank and a family-structured operator pair.

    The weight is V diag(d) V^* with Haar-random V and log-uniform positive
    spectrum; operators are post-corrected (or constructed) to annihilate
    the null space, so they are always A-bounded.
    """
    n, r = spec.dim, spec.rank
    if not (1 <= r <= n <= 64):
        raise BadSpec(f"need 1 <= rank <= dim <= 64, got rank={r} dim={n}")
    if spec.family not in FAMILIES:
        raise BadSpec(f"unknown family {spec.family!r}")
    if spec.entry_scale <= 0:
        raise BadSpec("entry_scale must be positive")
    rng = np.random.default_rng(spec.seed)
    scale = spec.entry_scale

    d = np.sort(10.0 ** rng.uniform(-3.0, 3.0, r) * scale)[::-1]
    if spec.family == "diagonal":
        positions = rng.permutation(n)[:r]
        a = np.zeros((n, n), dtype=complex)
        a[positions, positions] = d
    else:
        v = _haar_unitary(rng, n)[:, :r]
        a = (v * d) @ v.conj().T
        a = (a + a.conj().T) / 2.0
    w = make_weight(a)
    if w.rank != r:
        raise BadSpec(f"generated weight rank {w.rank} != requested {r}")

    def draw() -> np.ndarray:
        fam = spec.family
        if fam == "diagonal":
            vals = scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
            return np.diag(vals)
        if fam == "generic":
            g = _complex_matrix(rng, n, scale)
            comp = np.eye(n) - w.proj_range
            return g - w.proj_range @ g @ comp
        if fam == "a_selfadjoint":
            g = _complex_matrix(rng, n, scale)
            h = w.proj_range @ (g + g.conj().T) @ w.proj_range
            return w.pinv_a @ h
        if fam == "a_normal":
            q = _haar_unitary(rng, r)
            z = scale * (rng.standard_normal(r) + 1j * rng.standard_normal(r))
            return _lift_reduced(w, (q * z) @ q.conj().T)
        if fam == "nilpotent_reduced":
            g = np.triu(_complex_matrix(rng, r, scale), k=1)
            return _lift_reduced(w, g)
        # rank_one
        x = scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        y = scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
        return np.outer(x, (w.matrix @ y).conj())

    return w, Operator(w, draw()), Operator(w, draw())


def scaled(op: Operator, factor: complex) -> Operator:
    return Operator(op.weight, factor * op.matrix)


def normalized(op: Operator) -> Operator:
    nt = ops.seminorm(op)
    return op if nt in (0.0, math.inf) else scaled(op, 1.0 / nt)


def dependent_pair(op: Operator, rng) -> Operator:
    """A nonzero complex multiple of op (always parallel to it)."""
    c = 0.0
    while abs(c) < 0.1:
        c = complex(rng.standard_normal() + 1j * rng.standard_normal())
    return scaled(op, c)


def shift_to_bj(t: Operator, s: Operator) -> Operator:
    """T - c_A(T, S) S, which is Birkhoff-James orthogonal to S.

    Requires the minimum-modulus gate on S."""
    c = geo.center_of_mass(t, s)
    return Operator(t.weight, t.matrix - c * s.matrix)


def bounded_below(op: Operator) -> Operator:
    """op + (2 ||op||_A + 1) I, whose reduction is bounded below."""
    shift = 2.0 * ops.seminorm(op) + 1.0
    return Operator(op.weight, op.matrix + shift * np.eye(op.weight.dim))


def rotate_normal_for_daugavet(op: Operator) -> Operator:
    """Rotate a normal-reduced operator so its top eigenvalue is positive real.

    For normal reductions this forces ||T||_A into the numerical range."""
    eig = np.linalg.eigvals(op.reduced)
    lam = eig[int(np.argmax(np.abs(eig)))]
    if abs(lam) == 0.0:
        return op
    return scaled(op, abs(lam) / lam)


# ---------------------------------------------------------------------------
# brute-force grid oracle


@dataclass(frozen=True)
class OracleValues:
    seminorm: float
    omega: float
    davis_wielandt: float
    pairing_sup: Optional[float] = None
    distance: Optional[float] = None
    min_modulus_s: Optional[float] = None
    parallel_max: Optional[float] = None


_POINT_CACHE: dict = {}
_POINT_CACHE_LIMIT = 8


def _sphere_points(rank: int, grid_density: int) -> np.ndarray:
    """Low-discrepancy points on the unit sphere of C^rank.

    Scrambled Sobol points pushed through the Gaussian quantile and
    normalized; deterministic for a fixed (rank, density).  For rank 1 all
    quantities of interest are phase invariant, so a single point suffices.
    """
    if rank == 1:
        return np.ones((1, 1), dtype=complex)
    target = grid_density * grid_density * (8 if rank >= 3 else 1)
    m = min(int(math.ceil(math.log2(max(target, 64)))), 19)
    key = (rank, m)
    if key not in _POINT_CACHE:
        if len(_POINT_CACHE) >= _POINT_CACHE_LIMIT:
            _POINT_CACHE.clear()
        sob = qmc.Sobol(d=2 * rank, scramble=True, seed=1905)
        pts = sob.random_base2(m)
        g = ndtri(np.clip(pts, 1e-12, 1.0 - 1e-12))
        z = g[:, :rank] + 1j * g[:, rank:]
        nrm = np.linalg.norm(z, axis=1)
        keep = nrm > 1e-12
        z = z[keep] / nrm[keep, None]
        z.setflags(write=False)
        _POINT_CACHE[key] = z
    return _POINT_CACHE[key]


def _oracle_distance(p, c, s, radius: float) -> float:
    """min over gamma of the gridded sup of ||(B_T + gamma B_S) u||.

    The gridded objective is itself a max of smooth convex functions of
    gamma, so the ellipsoid method with the active point's analytic
    subgradient minimizes it exactly; the only oracle error left is the
    sphere-grid resolution of the inner supremum.
    """
    from ._search import ellipsoid_minimize_2d

    def value_subgrad(g):
        vals = p + 2.0 * (np.conj(g) * c).real \
            + (g.real * g.real + g.imag * g.imag) * s
        i = int(np.argmax(vals))
        v = math.sqrt(max(float(vals[i]), 1e-300))
        gx = (2.0 * c[i].real + 2.0 * g.real * s[i]) / (2.0 * v)
        gy = (2.0 * c[i].imag + 2.0 * g.imag * s[i]) / (2.0 * v)
        return v, (gx, gy)

    _, best = ellipsoid_minimize_2d(value_subgrad, radius=max(radius, 1e-12),
                                    xtol=1e-10)
    return best


def brute_oracle(weight: Weight, t: Operator, s: Operator | None = None,
                 grid_density: int = 200) -> OracleValues:
    """Grid oracle for the weighted norm, radii and line distance.

    Dense low-discrepancy sampling of the A-unit sphere (through reduced
    coordinates) plus angle/plane grids; independent of the eigenvalue
    routes used by the library.  Only small reduced ranks are supported.
    """
    r = weight.rank
    if r > 3:
        raise RankTooLarge(f"oracle supports rank <= 3, got {r}")
    u = _sphere_points(r, grid_density)
    bt = t.reduced
    at = u @ bt.T
    p = np.einsum("ij,ij->i", at.conj(), at).real
    q = np.einsum("ij,ij->i", u.conj(), at)
    qmod2 = (q * q.conj()).real
    sem = math.sqrt(float(p.max()))
    omega = math.sqrt(float(qmod2.max()))
    dw = math.sqrt(float((qmod2 + p * p).max()))

    if s is None:
        return OracleValues(seminorm=sem, omega=omega, davis_wielandt=dw)

    bs = s.reduced
    asu = u @ bs.T
    sv = np.einsum("ij,ij->i", asu.conj(), asu).real
    pair = np.einsum("ij,ij->i", asu.conj(), at)
    pairing = float(np.abs(pair).max())
    min_mod = math.sqrt(float(sv.min()))
    ns = math.sqrt(float(sv.max()))

    thetas = np.linspace(0.0, 2.0 * math.pi, 256, endpoint=False)
    pmax = 0.0
    for th in thetas:
        g = np.exp(1j * th)
        v = (p + 2.0 * (np.conj(g) * pair).real + sv).max()
        pmax = max(pmax, float(v))
    parallel_max = math.sqrt(pmax)

    dist = sem if ns == 0.0 else _oracle_distance(
        p.copy(), pair.copy(), sv.copy(), radius=2.0 * sem / ns)
    return OracleValues(seminorm=sem, omega=omega, davis_wielandt=dw,
                        pairing_sup=pairing, distance=dist,
                        min_modulus_s=min_mod, parallel_max=parallel_max)


# ---------------------------------------------------------------------------
# property suite


@dataclass
class TrialOutcome:
    ok: bool
    residual: float
    repro: Optional[dict] = None


@dataclass
class PropertyReport:
    name: str
    trials: int
    passes: int
    failures: int
    max_residual: float
    worst_seed: int
    reproducers: list

    def to_dict(self):
        return {
            "name": self.name,
            "trials": self.trials,
            "passes": self.passes,
            "failures": self.failures,
            "max_residual": float(self.max_residual),
            "worst_seed": int(self.worst_seed),
            "reproducers": self.reproducers,
        }


@dataclass
class SuiteReport:
    version: str
    trials: int
    seed: int
    sizes: tuple
    grid_density: int
    tolerances: dict
    properties: list
    total_trials: int
    failures_total: int
    coverage: dict
    wall_time_s: float

    def scalar_section(self) -> dict:
        """Deterministic part of the report (excludes wall time)."""
        return {
            "version": self.version,
            "trials": self.trials,
            "seed": self.seed,
            "sizes": list(self.sizes),
            "grid_density": self.grid_density,
            "tolerances": self.tolerances,
            "properties": [p.to_dict() for p in self.properties],
            "total_trials": self.total_trials,
            "failures_total": self.failures_total,
            "coverage": self.coverage,
        }

    def to_dict(self) -> dict:
        out = self.scalar_section()
        out["wall_time_s"] = self.wall_time_s
        return out


class _SuiteContext:
    def __init__(self, tol: Tolerances, sizes, grid_density):
        self.tol = tol
        self.sizes = tuple(sizes)
        self.grid_density = grid_density
        self.coverage: dict[str, set] = {}

    def observe(self, op_name: str, verdict: bool):
        self.coverage.setdefault(op_name, set()).add(bool(verdict))


def _derive_seed(master: int, prop_index: int, trial: int) -> int:
    ss = np.random.SeedSequence((master, prop_index, trial))
    return int(ss.generate_state(1)[0])


def _spec_for(ctx: _SuiteContext, iseed: int, trial: int,
              families=FAMILIES, min_rank: int = 1) -> InstanceSpec:
    dim = ctx.sizes[trial % len(ctx.sizes)]
    rank = min_rank + (trial // len(ctx.sizes)) % (dim - min_rank + 1)
    family = families[trial % len(families)]
    return InstanceSpec(dim=dim, rank=rank, seed=iseed, family=family)


def _matrix_pairs(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _repro(name: str, spec: InstanceSpec, **extra) -> dict:
    """Minimal reproducer: the spec plus a replayable CLI problem file."""
    out = {"property": name, "spec": asdict(spec)}
    try:
        w, t, s = generate(spec)
        out["problem"] = {
            "dim": spec.dim,
            "A": _matrix_pairs(w.matrix),
            "T": _matrix_pairs(t.matrix),
            "S": _matrix_pairs(s.matrix),
        }
    except BadSpec:
        pass
    out.update(extra)
    return out


def _rel(err: float, *scales) -> float:
    return float(err) / max(1.0, *(abs(float(x)) for x in scales))


# -- individual properties ---------------------------------------------------


def _prop_weight_primitives(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial)
    w, t, s = generate(spec)
    rng = np.random.default_rng(iseed ^ 0x9E3779B9)
    n = w.dim
    z = rng.standard_normal((4, n)) + 1j * rng.standard_normal((4, n))
    worst = 0.0
    for i in range(4):
        for j in range(4):
            cs = abs(w.semi_inner(z[i], z[j])) - w.semi_norm(z[i]) * w.semi_norm(z[j])
            worst = max(worst, _rel(max(0.0, cs), w.semi_norm(z[i]) * w.semi_norm(z[j])))
    for i in range(4):
        direct = math.sqrt(max(w.semi_inner(z[i], z[i]).real, 0.0))
        worst = max(worst, _rel(abs(direct - w.semi_norm(z[i])), direct))
        null_part = (np.eye(n) - w.proj_range) @ z[i]
        worst = max(worst, w.semi_norm(null_part)
                    / max(1.0, math.sqrt(w.eigvals[0]) * np.linalg.norm(z[i])))
    rebuilt = make_weight((w.range_basis * w.d) @ w.range_basis.conj().T,
                          rank_tol=w.rank_tol)
    if rebuilt.rank != w.rank:
        return TrialOutcome(False, 1.0, _repro("weight_primitives", spec))
    for i in range(4):
        worst = max(worst, _rel(abs(rebuilt.semi_norm(z[i]) - w.semi_norm(z[i])),
                                w.semi_norm(z[i])))
    ok = worst <= 100 * ctx.tol.numeric
    return TrialOutcome(ok, worst, None if ok else _repro("weight_primitives", spec))


def _prop_reduction_identities(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial)
    w, t, s = generate(spec)
    rng = np.random.default_rng(iseed ^ 0xA5A5A5)
    ts = ops.sharp_a(t)
    worst = 0.0
    xs = w.a_unit_sample(4, int(rng.integers(1 << 31)))
    for x in xs:
        for y in xs:
            lhs = w.semi_inner(t.matrix @ x, y)
            rhs = w.semi_inner(x, ts.matrix @ y)
            worst = max(worst, _rel(abs(lhs - rhs), ops.seminorm(t)))
    bt, bs = t.reduced, s.reduced
    worst = max(worst, _rel(np.linalg.norm(ops.compose(t, s).reduced - bt @ bs, 2),
                            ops.seminorm(t) * ops.seminorm(s)))
    worst = max(worst, _rel(np.linalg.norm(ts.reduced - bt.conj().T, 2),
                            ops.seminorm(t)))
    nt, nss = ops.seminorm(t), ops.seminorm(s)
    worst = max(worst, _rel(max(0.0, ops.seminorm(ops.compose(t, s)) - nt * nss),
                            nt * nss))
    worst = max(worst, _rel(abs(ops.seminorm(ts) - nt), nt))
    worst = max(worst, _rel(abs(ops.seminorm(ops.compose(ts, t)) - nt * nt), nt * nt))
    # dual form: the best pair built from singular vectors attains the norm
    _, sv, vh = np.linalg.svd(bt)
    if bt.size:
        x = w.lift_vector(vh[0].conj())
        bx = bt @ vh[0].conj()
        nb = np.linalg.norm(bx)
        if nb > 0:
            y = w.lift_vector(bx / nb)
            worst = max(worst, _rel(abs(abs(w.semi_inner(t.matrix @ x, y)) - nt), nt))
    ok = worst <= ctx.tol.decision
    return TrialOutcome(ok, worst, None if ok else _repro("reduction_identities", spec))


def _prop_radii_inequalities(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial)
    w, t, _ = generate(spec)
    nt = ops.seminorm(t)
    om = ops.numerical_radius(t)
    ra = ops.spectral_radius(t)
    dw, _u = ops.davis_wielandt_witness(t)
    worst = 0.0
    worst = max(worst, _rel(max(0.0, 0.5 * nt - om), nt))
    worst = max(worst, _rel(max(0.0, om - nt), nt))
    worst = max(worst, _rel(max(0.0, ra - om), nt))
    worst = max(worst, _rel(max(0.0, max(om, nt * nt) - dw), max(om, nt * nt)))
    upper = math.sqrt(om * om + nt ** 4)
    worst = max(worst, _rel(max(0.0, dw - upper), upper))
    om2 = ops.numerical_radius(ops.operator_power(t, 2))
    for rr in (1, 2, 3):
        lhs = om ** (2 * rr)
        rhs = 0.5 * (om2 ** rr + nt ** (2 * rr))
        worst = max(worst, _rel(max(0.0, lhs - rhs), rhs))
    ok = worst <= ctx.tol.inequality * 10
    return TrialOutcome(ok, worst, None if ok else _repro("radii_inequalities", spec))


def _prop_rank_one_forms(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial, families=("rank_one",))
    w, _, _ = generate(spec)
    rng = np.random.default_rng(iseed ^ 0x51ED)
    x = rng.standard_normal(w.dim) + 1j * rng.standard_normal(w.dim)
    y = rng.standard_normal(w.dim) + 1j * rng.standard_normal(w.dim)
    op = ops.rank_one(w, x, y)
    nx, ny = w.semi_norm(x), w.semi_norm(y)
    pairing = abs(w.semi_inner(x, y))
    worst = _rel(abs(ops.seminorm(op) - nx * ny), nx * ny)
    expected_omega = 0.5 * (pairing + nx * ny)
    worst = max(worst, _rel(abs(ops.numerical_radius(op) - expected_omega),
                            expected_omega))
    ok = worst <= ctx.tol.inequality * 10
    return TrialOutcome(ok, worst, None if ok else _repro("rank_one_forms", spec))


def _prop_normaloid_three_way(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial,
                     families=("diagonal", "generic", "nilpotent_reduced", "a_normal"))
    w, t, _ = generate(spec)
    nt = ops.seminorm(t)
    tol = ctx.tol.decision
    v_r = abs(ops.spectral_radius(t) - nt) <= tol * max(1.0, nt)
    v_o = abs(ops.numerical_radius(t) - nt) <= tol * max(1.0, nt)
    om = ops.numerical_radius(t)
    h = om * om * w.matrix - t.matrix.conj().T @ w.matrix @ t.matrix
    h = (h + h.conj().T) / 2.0
    v_p = float(np.linalg.eigvalsh(h)[0]) >= -ctx.tol.psd * float(w.eigvals[0]) \
        * max(1.0, nt) ** 2
    ctx.observe("normaloid", v_r)
    ok = v_r == v_o == v_p
    return TrialOutcome(ok, 0.0 if ok else 1.0,
                        None if ok else _repro("normaloid_three_way", spec,
                                               verdicts=[v_r, v_o, v_p]))


def _parallel_pair(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial)
    w, t, s = generate(spec)
    rng = np.random.default_rng(iseed ^ 0x7777)
    if trial % 2 == 0:
        s = dependent_pair(t, rng)
    return spec, w, t, s


def _prop_parallel_routes(ctx, iseed, trial):
    spec, w, t, s = _parallel_pair(ctx, iseed, trial)
    pr = geo.is_parallel(t, s, ctx.tol.decision)
    ctx.observe("is_parallel", pr.certificate.verdict)
    if not pr.consensus:
        return TrialOutcome(False, 1.0, _repro("parallel_routes", spec))
    rng = np.random.default_rng(iseed ^ 0x1234)
    alpha = complex(rng.standard_normal() + 1j * rng.standard_normal()) or 1.0
    beta = float(rng.uniform(0.2, 3.0))
    gam = float(rng.uniform(0.2, 3.0))
    v0 = pr.certificate.verdict
    v1 = geo.is_parallel(scaled(t, alpha), scaled(s, alpha),
                         ctx.tol.decision).certificate.verdict
    v2 = geo.is_parallel(scaled(t, beta), scaled(s, gam),
                         ctx.tol.decision).certificate.verdict
    ok = v0 == v1 == v2
    return TrialOutcome(ok, 0.0 if ok else 1.0,
                        None if ok else _repro("parallel_routes", spec,
                                               verdicts=[v0, v1, v2]))


def _prop_dau_five_way(ctx, iseed, trial):
    spec, w, t, s = _parallel_pair(ctx, iseed, trial)
    tol = ctx.tol.decision
    pr = geo.is_parallel(t, s, tol)
    nt, ns = ops.seminorm(t), ops.seminorm(s)
    lam = pr.lambda_star
    r1 = geo.snap_zero(Operator(w, ns * t.matrix - lam * nt * s.matrix),
                       2.0 * nt * ns)
    r2 = geo.snap_zero(Operator(w, lam * nt * s.matrix - ns * t.matrix),
                       2.0 * nt * ns)
    c2 = geo.is_bj_orthogonal(t, r1, tol)
    c3 = geo.is_bj_orthogonal(s, r2, tol)
    ctx.observe("is_bj_orthogonal", c2.verdict)
    ok = pr.certificate.verdict == c2.verdict == c3.verdict
    worst = 0.0
    if ok and pr.certificate.verdict and nt * ns > 0:
        x = pr.certificate.witness_vector
        res4 = w.semi_norm(t.matrix @ x - lam * (nt / ns) * (s.matrix @ x))
        res5 = w.semi_norm(s.matrix @ x - np.conj(lam) * (ns / nt) * (t.matrix @ x))
        worst = max(_rel(res4, nt), _rel(res5, ns))
        ok = worst <= 1e-6
    return TrialOutcome(ok, worst if ok else max(worst, 1.0),
                        None if ok else _repro("dau_five_way", spec))


def _prop_bj_one_sided(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial)
    w, t, _ = generate(spec)
    if trial % 2 == 0:
        # engineered orthogonal branch: recenter T against the identity
        scale0 = ops.seminorm(t)
        t = geo.snap_zero(shift_to_bj(t, ops.identity(w)), scale0)
    b1 = geo.is_bj_orthogonal(t, ops.identity(w), ctx.tol.decision)
    ctx.observe("is_bj_orthogonal", b1.verdict)
    if not b1.verdict:
        return TrialOutcome(True, 0.0)
    b2 = geo.is_bj_orthogonal(ops.identity(w), t, ctx.tol.decision)
    ok = b2.verdict
    return TrialOutcome(ok, 0.0 if ok else 1.0,
                        None if ok else _repro("bj_one_sided", spec))


def _prop_disc_and_center(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial)
    w, t, s = generate(spec)
    ld = geo.distance_to_line(t, ops.identity(w))
    center = -ld.gamma_star
    samples = ops.numerical_range_samples(t, 128)
    worst = 0.0
    if samples.size:
        over = float(np.max(np.abs(samples - center)) - ld.distance)
        worst = _rel(max(0.0, over), ld.distance)
    s_inv = bounded_below(s)
    c = geo.center_of_mass(t, s_inv)
    ld2 = geo.distance_to_line(t, s_inv)
    if ld2.sup_form_value is not None:
        worst = max(worst, _rel(ld2.cross_residual,
                                ld2.distance * ld2.distance))
    rng = np.random.default_rng(iseed ^ 0xC0FFEE)
    eps = 1e-6
    pert = _complex_matrix(rng, w.dim, eps)
    comp = np.eye(w.dim) - w.proj_range
    pert = pert - w.proj_range @ pert @ comp
    t2 = Operator(w, t.matrix + pert)
    c2 = geo.center_of_mass(t2, s_inv)
    e_norm = ops.seminorm(Operator(w, pert))
    m_s = ops.min_modulus(s_inv)
    bound = math.sqrt(e_norm * (2.0 * ld2.distance + e_norm)) / m_s + 2.0 * e_norm / m_s
    worst = max(worst, _rel(max(0.0, abs(c2 - c) - 4.0 * bound), 1.0))
    ok = worst <= 200 * ctx.tol.cross
    return TrialOutcome(ok, worst, None if ok else _repro("disc_and_center", spec))


def _prop_growth_and_chain(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial)
    w, t, s = generate(spec)
    s_inv = bounded_below(s)
    t_bj = shift_to_bj(t, s_inv)
    panel = geo.distance_inequality_panel(t_bj, s_inv, ctx.tol.inequality)
    worst = panel.chain_violation
    if panel.growth_checked and panel.growth_violation is not None:
        worst = max(worst, panel.growth_violation)
    if panel.alpha_identity_residual is not None:
        one_sided = max(0.0, (1.0 - panel.alpha ** 2)
                        - panel.dist_identity_t ** 2)
        worst = max(worst, _rel(one_sided, 1.0))
    ok = worst <= 100 * ctx.tol.inequality
    return TrialOutcome(ok, worst, None if ok else _repro("growth_and_chain", spec))


def _prop_daugavet_consensus(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial,
                     families=("diagonal", "a_normal", "generic",
                               "nilpotent_reduced"))
    w, t, _ = generate(spec)
    if trial % 2 == 0 and spec.family in ("diagonal", "a_normal"):
        t = rotate_normal_for_daugavet(t)
    cert = geo.daugavet_check(t, ctx.tol.decision, grid=128)
    ctx.observe("daugavet_check", cert.verdict)
    ok = cert.details["consensus"]
    return TrialOutcome(ok, 0.0 if ok else 1.0,
                        None if ok else _repro("daugavet_consensus", spec))


def _prop_identity_cluster(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial,
                     families=("diagonal", "nilpotent_reduced", "a_normal",
                               "generic"))
    w, t, _ = generate(spec)
    certs = geo.parallel_to_identity_suite(t, p_max=3, tol=ctx.tol.decision,
                                           psd_tol=ctx.tol.psd)
    ctx.observe("identity_cluster", certs[0].verdict)
    ok = geo.cluster_consensus(certs)
    return TrialOutcome(ok, 0.0 if ok else 1.0,
                        None if ok else _repro("identity_cluster", spec,
                                               verdicts=[c.verdict for c in certs],
                                               methods=[c.method for c in certs]))


def _prop_dw_lower_implication(ctx, iseed, trial):
    fams = ("nilpotent_reduced", "generic", "a_normal", "rank_one")
    spec = _spec_for(ctx, iseed, trial, families=fams, min_rank=1)
    w, t, _ = generate(spec)
    if spec.family == "nilpotent_reduced":
        t = normalized(t)  # scaled nilpotents attain the lower bound
    cert = geo.dw_lower_attainment_check(t, ctx.tol.decision)
    window = max(cert.details["upper"] - cert.details["lower"], 1e-300)
    gap_rel = abs(cert.details["dw"] - cert.details["lower"]) / window
    if 0.1 * ctx.tol.decision < gap_rel < 1e3 * ctx.tol.decision:
        return TrialOutcome(True, 0.0)  # antecedent numerically inconclusive
    ctx.observe("dw_lower_attained", cert.details["attained"])
    ok = cert.verdict
    return TrialOutcome(ok, cert.residual,
                        None if ok else _repro("dw_lower_implication", spec))


def _prop_rank_one_identity(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial, families=("rank_one",))
    w, _, _ = generate(spec)
    rng = np.random.default_rng(iseed ^ 0xBEEF)
    x = rng.standard_normal(w.dim) + 1j * rng.standard_normal(w.dim)
    if trial % 2 == 0:
        y = complex(rng.standard_normal() + 1j * rng.standard_normal()) * x
    else:
        y = rng.standard_normal(w.dim) + 1j * rng.standard_normal(w.dim)
        pxy = w.semi_inner(y, x)
        nx2 = w.semi_norm(x) ** 2
        if nx2 > 0:
            y = y - (pxy / nx2) * x  # A-orthogonalize
    # normalize on the range: the reduction ignores null components, and
    # scaling them up only amplifies roundoff
    nx, ny = w.semi_norm(x), w.semi_norm(y)
    if nx > 0:
        x = (w.proj_range @ x) / nx
    if ny > 0:
        y = (w.proj_range @ y) / ny
    cert = geo.rank_one_parallel_identity(w, x, y, ctx.tol.decision)
    ctx.observe("rank_one_parallel_identity", cert.verdict)
    ok = cert.details["agreement"]
    worst = 0.0
    if ok and nx > 0 and ny > 0:
        op = ops.rank_one(w, x, y)
        dw, _u = ops.davis_wielandt_witness(op)
        nt = ops.seminorm(op)
        om = ops.numerical_radius(op)
        window = math.sqrt(om * om + nt ** 4) - nt * nt
        if window > 0 and abs(dw - nt * nt) <= ctx.tol.decision * window:
            worst = _rel(abs(w.semi_inner(x, y)), w.semi_norm(x) * w.semi_norm(y))
            ok = worst <= 1e-6
    return TrialOutcome(ok, worst if ok else 1.0,
                        None if ok else _repro("rank_one_identity", spec))


def _prop_oracle_consistency(ctx, iseed, trial):
    dims = tuple(d for d in ctx.sizes if d >= 2)
    dim = dims[trial % len(dims)]
    rank = 1 + trial % min(3, dim)
    family = FAMILIES[trial % len(FAMILIES)]
    spec = InstanceSpec(dim=dim, rank=rank, seed=iseed, family=family)
    w, t, s = generate(spec)
    if ops.seminorm(t) == 0.0 or ops.seminorm(s) == 0.0:
        return TrialOutcome(True, 0.0)
    t, s = normalized(t), normalized(s)
    gd = ctx.grid_density
    oracle = brute_oracle(w, t, s, gd)
    lin_tol = 5e-3 * (200.0 / gd) ** 1.2
    dw_tol = 1e-2 * (200.0 / gd) ** 1.2
    worst_lin = max(
        abs(ops.seminorm(t) - oracle.seminorm),
        abs(ops.numerical_radius(t) - oracle.omega),
        abs(geo.distance_to_line(t, s).distance - oracle.distance),
    )
    dw, _u = ops.davis_wielandt_witness(t)
    worst_dw = abs(dw - oracle.davis_wielandt)
    ok = worst_lin <= lin_tol and worst_dw <= dw_tol
    return TrialOutcome(ok, max(worst_lin, worst_dw),
                        None if ok else _repro("oracle_consistency", spec))


def _prop_reference_examples(ctx, iseed, trial):
    worst = 0.0
    # diag(1,2) weight with the sign flip: the canonical parallel-to-identity case
    w = make_weight(np.diag([1.0, 2.0]))
    t = Operator(w, np.diag([1.0, -1.0]))
    worst = max(worst, abs(ops.seminorm(t) - 1.0))
    worst = max(worst, abs(ops.seminorm(Operator(w, t.matrix + np.eye(2))) - 2.0))
    pr = geo.is_parallel(t, ops.identity(w))
    worst = max(worst, abs(pr.lambda_star - 1.0))
    if not (pr.certificate.verdict and pr.consensus):
        worst = max(worst, 1.0)
    dg = geo.daugavet_check(t)
    if not (dg.verdict and dg.details["consensus"]):
        worst = max(worst, 1.0)
    dw, _u = ops.davis_wielandt_witness(t)
    worst = max(worst, abs(dw - math.sqrt(2.0)))

    # rank-one weight on C^3 with a shared top coordinate
    lam = 3.0
    w3 = make_weight(np.diag([0.0, 1.0, 0.0]))
    t3 = Operator(w3, np.diag([0.0, lam, 1.0]))
    s3 = Operator(w3, np.diag([lam, lam, 1.0]))
    worst = max(worst, abs(ops.seminorm(t3) - lam), abs(ops.seminorm(s3) - lam))
    worst = max(worst, abs(ops.seminorm(Operator(w3, t3.matrix + s3.matrix)) - 2 * lam))
    pr3 = geo.is_parallel(t3, s3)
    if not pr3.certificate.verdict:
        worst = max(worst, 1.0)
    x = pr3.certificate.witness_vector
    worst = max(worst, abs(abs(x[1]) - 1.0), abs(x[0]), abs(x[2]))

    # projection weight on C^3: the one-sided orthogonality counterexample
    wp = make_weight(np.diag([1.0, 1.0, 0.0]))
    tp = Operator(wp, np.diag([2.0, -1.0, 1.0]))
    ident = ops.identity(wp)
    worst = max(worst, abs(ops.seminorm(tp) - 2.0))
    worst = max(worst, abs(geo.distance_to_line(tp, ident).distance - 1.5))
    worst = max(worst, abs(geo.distance_to_line(ident, tp).distance - 1.0))
    if geo.is_bj_orthogonal(tp, ident).verdict:
        worst = max(worst, 1.0)
    if not geo.is_bj_orthogonal(ident, tp).verdict:
        worst = max(worst, 1.0)

    # classical nilpotent: golden-ratio norm, no Daugavet equation
    wi = make_weight(np.eye(2))
    ni = Operator(wi, np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    worst = max(worst, abs(ops.seminorm(Operator(wi, ni.matrix + np.eye(2))) - phi))
    if geo.daugavet_check(ni).verdict:
        worst = max(worst, 1.0)

    # engineered both-branch instances keep coverage independent of trials
    ctx.observe("is_parallel", pr.certificate.verdict)            # True
    pr_false = geo.is_parallel(Operator(wi, np.diag([1.0, 0.0])),
                               Operator(wi, np.diag([0.0, 1.0])))
    if pr_false.certificate.verdict:
        worst = max(worst, 1.0)
    ctx.observe("is_parallel", pr_false.certificate.verdict)      # False
    ctx.observe("is_bj_orthogonal", True)
    ctx.observe("is_bj_orthogonal", False)                        # C^3 pair above
    ctx.observe("daugavet_check", dg.verdict)                     # True
    ctx.observe("daugavet_check", geo.daugavet_check(ni).verdict)  # False
    for t_ref, expected in ((t, True), (ni, False)):
        certs = geo.parallel_to_identity_suite(t_ref, p_max=2)
        if not geo.cluster_consensus(certs) or certs[0].verdict is not expected:
            worst = max(worst, 1.0)
        ctx.observe("identity_cluster", certs[0].verdict)
        ctx.observe("normaloid", certs[0].verdict)
    x1 = np.array([1.0, 0.0, 7.0], dtype=complex)
    dep = geo.rank_one_parallel_identity(wp, x1, np.array([1.0, 0.0, -3.0],
                                                          dtype=complex))
    indep = geo.rank_one_parallel_identity(wp, np.array([1.0, 0.0, 0.0],
                                                        dtype=complex),
                                           np.array([0.0, 1.0, 0.0], dtype=complex))
    if not dep.verdict or indep.verdict or not (dep.details["agreement"]
                                                and indep.details["agreement"]):
        worst = max(worst, 1.0)
    ctx.observe("rank_one_parallel_identity", dep.verdict)
    ctx.observe("rank_one_parallel_identity", indep.verdict)
    ctx.observe("dw_lower_attained",
                geo.dw_lower_attainment_check(ni).details["attained"])   # True
    ctx.observe("dw_lower_attained",
                geo.dw_lower_attainment_check(t).details["attained"])    # False

    ok = worst <= 1e-9
    return TrialOutcome(ok, worst, None if ok else {"property": "reference_examples"})


def _prop_bounded_coverage(ctx, iseed, trial):
    spec = _spec_for(ctx, iseed, trial, families=("generic",))
    w, t, _ = generate(spec)
    cert = ops.is_a_bounded(t)
    ctx.observe("is_a_bounded", cert.verdict)
    ok = cert.verdict
    worst = cert.residual
    if w.rank < w.dim:
        rng = np.random.default_rng(iseed ^ 0xD00D)
        raw = _complex_matrix(rng, w.dim, 1.0)
        leak = w.proj_range @ raw @ (np.eye(w.dim) - w.proj_range)
        if np.linalg.norm(leak) > 1e-8:
            cert_bad = ops.is_a_bounded(Operator(w, t.matrix + leak))
            ctx.observe("is_a_bounded", cert_bad.verdict)
            if cert_bad.verdict:
                ok = False
    return TrialOutcome(ok, worst, None if ok else _repro("bounded_coverage", spec))


_REGISTRY: list[tuple[str, Callable, Callable[[int], int]]] = [
    ("weight_primitives", _prop_weight_primitives, lambda n: n),
    ("reduction_identities", _prop_reduction_identities, lambda n: n),
    ("radii_inequalities", _prop_radii_inequalities, lambda n: n),
    ("rank_one_forms", _prop_rank_one_forms, lambda n: n),
    ("normaloid_three_way", _prop_normaloid_three_way, lambda n: n),
    ("parallel_routes", _prop_parallel_routes, lambda n: n),
    ("dau_five_way", _prop_dau_five_way, lambda n: n),
    ("bj_one_sided", _prop_bj_one_sided, lambda n: n),
    ("disc_and_center", _prop_disc_and_center, lambda n: n),
    ("growth_and_chain", _prop_growth_and_chain, lambda n: n),
    ("daugavet_consensus", _prop_daugavet_consensus, lambda n: n),
    ("identity_cluster", _prop_identity_cluster, lambda n: n),
    ("dw_lower_implication", _prop_dw_lower_implication, lambda n: n),
    ("rank_one_identity", _prop_rank_one_identity, lambda n: n),
    ("bounded_coverage", _prop_bounded_coverage, lambda n: max(2, n // 5)),
    ("oracle_consistency", _prop_oracle_consistency, lambda n: max(1, n // 10)),
    ("reference_examples", _prop_reference_examples, lambda n: 1),
]


def run_suite(trials: int, seed: int, sizes=(2, 3, 4, 5, 6),
              tolerances: Tolerances | None = None,
              grid_density: int = 60) -> SuiteReport:
    """Execute every certified property as a statistical test.

    Identical (trials, seed, sizes) produce bit-identical scalar sections;
    failures never abort the run, they are recorded with reproducer specs.
    """
    from . import __version__

    if trials < 1:
        raise BadSpec("trials must be >= 1")
    tol = tolerances or Tolerances()
    ctx = _SuiteContext(tol, sizes, grid_density)
    t0 = time.perf_counter()
    reports: list[PropertyReport] = []
    total = 0
    failures_total = 0
    for pi, (name, fn, n_for) in enumerate(_REGISTRY):
        n_tr = n_for(trials)
        passes = 0
        failures = 0
        max_res = 0.0
        worst_seed = 0
        repros: list[dict] = []
        for ti in range(n_tr):
            iseed = _derive_seed(seed, pi, ti)
            out = fn(ctx, iseed, ti)
            if out.ok:
                passes += 1
            else:
                failures += 1
                if out.repro is not None and len(repros) < 3:
                    repros.append(out.repro)
            if out.residual >= max_res:
                max_res = out.residual
                worst_seed = iseed
        total += n_tr
        failures_total += failures
        reports.append(PropertyReport(name, n_tr, passes, failures,
                                      max_res, worst_seed, repros))

    coverage = {k: sorted(str(v) for v in vals) for k, vals in
                sorted(ctx.coverage.items())}
    missing = [k for k, vals in ctx.coverage.items() if len(vals) < 2]
    if missing:
        failures_total += 1
        reports.append(PropertyReport(
            "branch_coverage", 1, 0, 1, 1.0, seed,
            [{"property": "branch_coverage", "missing_branches": missing}]))
    else:
        reports.append(PropertyReport("branch_coverage", 1, 1, 0, 0.0, seed, []))
    total += 1

    return SuiteReport(
        version=__version__,
        trials=trials,
        seed=seed,
        sizes=tuple(sizes),
        grid_density=grid_density,
        tolerances={
            "decision": tol.decision, "inequality": tol.inequality,
            "cross": tol.cross, "psd": tol.psd, "numeric": tol.numeric,
        },
        properties=reports,
        total_trials=total,
        failures_total=failures_total,
        coverage=coverage,
        wall_time_s=time.perf_counter() - t0,
    )


def instance_stream(count: int, seed: int, sizes=(2, 3, 4, 5, 6),
                    families=FAMILIES, entry_scale: float = 1.0
                    ) -> Iterable[tuple[InstanceSpec, Weight, Operator, Operator]]:
    """Deterministic stream of generated instances, cycling sizes, ranks
    and families; used by the acceptance runs."""
    for i in range(count):
        iseed = _derive_seed(seed, 9999, i)
        dim = sizes[i % len(sizes)]
        rank = 1 + (i // len(sizes)) % dim
        family = families[i % len(families)]
        spec = InstanceSpec(dim=dim, rank=rank, entry_scale=entry_scale,
                            seed=iseed, family=family)
        w, t, s = generate(spec)
        yield spec, w, t, s
