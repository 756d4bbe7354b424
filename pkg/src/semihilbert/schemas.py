"""Pydantic request/response models for the analysis service.

Complex scalars travel as two-element [re, im] arrays and matrices as
dim x dim arrays of such pairs, which keeps the JSON unambiguous for any
client.
"""

from __future__ import annotations

from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

ComplexPair = list[float]
Matrix = list[list[ComplexPair]]


def to_complex_matrix(data: Matrix) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


class ProblemOptions(BaseModel):
    tol: float = Field(default=1e-7, gt=0)
    rank_tol: float = Field(default=1e-10, gt=0, lt=1)
    grid: int = Field(default=512, ge=8)
    seed: int = 0
    p_max: int = Field(default=3, ge=1, le=8)


def _check_matrix(name: str, data: Any, dim: int):
    arr = np.asarray(data, dtype=object)
    if arr.shape != (dim, dim, 2):
        raise ValueError(
            f"matrix {name!r} must have shape [{dim}][{dim}][2] of [re, im] pairs, "
            f"got {arr.shape}")


class Problem(BaseModel):
    """One (A, T[, S]) analysis problem."""

    model_config = ConfigDict(populate_by_name=True)

    dim: int = Field(ge=1, le=500)
    a: Matrix = Field(alias="A")
    t: Matrix = Field(alias="T")
    s: Optional[Matrix] = Field(default=None, alias="S")
    options: ProblemOptions = Field(default_factory=ProblemOptions)

    @model_validator(mode="after")
    def _shapes(self):
        _check_matrix("A", self.a, self.dim)
        _check_matrix("T", self.t, self.dim)
        if self.s is not None:
            _check_matrix("S", self.s, self.dim)
        return self

    def weight_matrix(self) -> np.ndarray:
        return to_complex_matrix(self.a)

    def t_matrix(self) -> np.ndarray:
        return to_complex_matrix(self.t)

    def s_matrix(self) -> Optional[np.ndarray]:
        return None if self.s is None else to_complex_matrix(self.s)


class CertificateModel(BaseModel):
    verdict: bool
    lhs: float
    rhs: float
    residual: float
    tol: float
    method: str
    witness_vector: Optional[list[ComplexPair]] = None
    witness_lambda: Optional[ComplexPair] = None
    details: dict = Field(default_factory=dict)


class ParallelismModel(BaseModel):
    certificate: CertificateModel
    lambda_star: ComplexPair
    value_at_lambda: float
    omega_check: float
    radius_check: float
    product: float
    consensus: bool


class ScalarsModel(BaseModel):
    seminorm_t: float
    omega_t: float
    spectral_radius_t: float
    davis_wielandt_t: float
    min_modulus_t: float
    alpha_t: float
    seminorm_s: float
    min_modulus_s: float
    distance_t_line_s: float
    distance_s_line_t: float
    distance_t_line_identity: float
    distance_identity_line_t: float
    center_t_s: Optional[ComplexPair] = None
    center_skipped: bool = False
    center_t_identity: ComplexPair


class ProvenanceModel(BaseModel):
    version: str
    seed: int
    tolerances: dict
    input_sha256: str


class AnalyzeReport(BaseModel):
    scalars: ScalarsModel
    parallel: ParallelismModel
    bj_t_s: CertificateModel
    bj_s_t: CertificateModel
    daugavet: CertificateModel
    identity_cluster: list[CertificateModel]
    identity_cluster_consensus: bool
    provenance: ProvenanceModel
    samples_path: Optional[str] = None


class RangeResponse(BaseModel):
    theta: list[float]
    re: list[float]
    im: list[float]
    center: ComplexPair
    radius: float


class SuiteRequest(BaseModel):
    trials: int = Field(default=100, ge=1)
    seed: int = 7
    sizes: list[int] = Field(default=[2, 3, 4, 5, 6])
    grid_density: int = Field(default=60, ge=8)
    tol: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _sizes_ok(self):
        if not self.sizes or any(not 1 <= n <= 64 for n in self.sizes):
            raise ValueError("sizes must be nonempty with entries in [1, 64]")
        return self


class SuiteResponse(BaseModel):
    scalars: dict
    wall_time_s: float


class ErrorInfo(BaseModel):
    code: str
    message: str
    residual_seminorm: Optional[float] = None
    residual_adjoint: Optional[float] = None
