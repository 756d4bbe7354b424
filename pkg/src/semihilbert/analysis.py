"""Report assembly: from a validated problem to a full analysis bundle."""

from __future__ import annotations

import hashlib
import json

import numpy as np

from . import __version__
from . import geometry as geo
from . import operators as ops
from .errors import MinModulusTooSmall, NotABounded
from .harness import Tolerances, run_suite
from .schemas import (
    AnalyzeReport,
    CertificateModel,
    ParallelismModel,
    Problem,
    ProvenanceModel,
    RangeResponse,
    ScalarsModel,
    SuiteRequest,
    SuiteResponse,
)
from .weightspace import make_weight


def problem_hash(problem: Problem) -> str:
    payload = json.dumps(problem.model_dump(by_alias=True), sort_keys=True,
                         separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def _build(problem: Problem):
    opts = problem.options
    w = make_weight(problem.weight_matrix(), rank_tol=opts.rank_tol)
    t = ops.Operator(w, problem.t_matrix())
    _require_bounded(t, "T")
    s_mat = problem.s_matrix()
    if s_mat is None:
        s = ops.identity(w)
    else:
        s = ops.Operator(w, s_mat)
        _require_bounded(s, "S")
    return w, t, s


def _require_bounded(op: ops.Operator, name: str):
    cert = ops.is_a_bounded(op)
    if not cert.verdict:
        raise NotABounded(
            f"operator {name} is not A-bounded "
            f"(Douglas residuals {cert.details['residual_seminorm']:.3e}, "
            f"{cert.details['residual_adjoint']:.3e})",
            residual_seminorm=cert.details["residual_seminorm"],
            residual_adjoint=cert.details["residual_adjoint"],
        )


def _cert_model(cert) -> CertificateModel:
    return CertificateModel(**cert.to_dict())


def analyze(problem: Problem) -> AnalyzeReport:
    """Run the full scalar/certificate analysis for one problem."""
    opts = problem.options
    tol = opts.tol
    w, t, s = _build(problem)
    ident = ops.identity(w)

    panel = geo.distance_inequality_panel(t)
    dw_t, _ = ops.davis_wielandt_witness(t)
    ld_ts = geo.distance_to_line(t, s)
    ld_st = geo.distance_to_line(s, t)

    center = None
    center_skipped = True
    try:
        c = geo.center_of_mass(t, s)
        center = [float(c.real), float(c.imag)]
        center_skipped = False
    except MinModulusTooSmall:
        pass
    c_ident = geo.center_of_mass(t, ident)

    scalars = ScalarsModel(
        seminorm_t=ops.seminorm(t),
        omega_t=ops.numerical_radius(t),
        spectral_radius_t=ops.spectral_radius(t),
        davis_wielandt_t=dw_t,
        min_modulus_t=ops.min_modulus(t),
        alpha_t=panel.alpha,
        seminorm_s=ops.seminorm(s),
        min_modulus_s=ops.min_modulus(s),
        distance_t_line_s=ld_ts.distance,
        distance_s_line_t=ld_st.distance,
        distance_t_line_identity=panel.dist_t_identity,
        distance_identity_line_t=panel.dist_identity_t,
        center_t_s=center,
        center_skipped=center_skipped,
        center_t_identity=[float(c_ident.real), float(c_ident.imag)],
    )

    pr = geo.is_parallel(t, s, tol)
    lam = complex(pr.lambda_star)
    parallel = ParallelismModel(
        certificate=_cert_model(pr.certificate),
        lambda_star=[lam.real, lam.imag],
        value_at_lambda=pr.value_at_lambda,
        omega_check=pr.omega_check,
        radius_check=pr.radius_check,
        product=pr.product,
        consensus=pr.consensus,
    )

    cluster = geo.parallel_to_identity_suite(t, p_max=opts.p_max, tol=tol)
    return AnalyzeReport(
        scalars=scalars,
        parallel=parallel,
        bj_t_s=_cert_model(geo.is_bj_orthogonal(t, s, tol)),
        bj_s_t=_cert_model(geo.is_bj_orthogonal(s, t, tol)),
        daugavet=_cert_model(geo.daugavet_check(t, tol, grid=opts.grid)),
        identity_cluster=[_cert_model(c) for c in cluster],
        identity_cluster_consensus=geo.cluster_consensus(cluster),
        provenance=ProvenanceModel(
            version=__version__,
            seed=opts.seed,
            tolerances={"tol": tol, "rank_tol": opts.rank_tol},
            input_sha256=problem_hash(problem),
        ),
    )


def range_report(problem: Problem) -> RangeResponse:
    """Numerical-range boundary samples plus the covering disc."""
    w, t, _ = _build(problem)
    grid = problem.options.grid
    samples = ops.numerical_range_samples(t, grid)
    ld = geo.distance_to_line(t, ops.identity(w))
    center = -ld.gamma_star
    thetas = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    return RangeResponse(
        theta=[float(x) for x in thetas],
        re=[float(z.real) for z in samples],
        im=[float(z.imag) for z in samples],
        center=[float(center.real), float(center.imag)],
        radius=ld.distance,
    )


def suite_report(request: SuiteRequest) -> SuiteResponse:
    tolerances = Tolerances(decision=request.tol) if request.tol else None
    report = run_suite(
        trials=request.trials,
        seed=request.seed,
        sizes=tuple(request.sizes),
        tolerances=tolerances,
        grid_density=request.grid_density,
    )
    return SuiteResponse(scalars=report.scalar_section(),
                         wall_time_s=report.wall_time_s)


def samples_csv(resp: RangeResponse) -> str:
    """Locale-independent CSV with a trailing disc-overlay comment row."""
    lines = ["theta,re,im"]
    for th, re_, im_ in zip(resp.theta, resp.re, resp.im):
        lines.append(f"{th!r},{re_!r},{im_!r}")
    lines.append(f"# center={resp.center[0]!r},{resp.center[1]!r} "
                 f"radius={resp.radius!r}")
    return "\n".join(lines) + "\n"
