import json

import numpy as np
import pytest

from semihilbert import Operator, make_weight


def pairs(m) -> list:
    """Matrix to the [re, im] JSON wire format."""
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def problem_dict(a, t, s=None, **options) -> dict:
    out = {"dim": int(np.asarray(a).shape[0]), "A": pairs(a), "T": pairs(t)}
    if s is not None:
        out["S"] = pairs(s)
    if options:
        out["options"] = options
    return out


def write_problem(path, a, t, s=None, **options) -> str:
    with open(path, "w") as fh:
        json.dump(problem_dict(a, t, s, **options), fh)
    return str(path)


@pytest.fixture
def w_diag12():
    """Weight diag(1, 2) on C^2."""
    return make_weight(np.diag([1.0, 2.0]))


@pytest.fixture
def t_signflip(w_diag12):
    """diag(1, -1), the canonical identity-parallel operator."""
    return Operator(w_diag12, np.diag([1.0, -1.0]))


@pytest.fixture
def w_proj3():
    """Rank-2 projection weight diag(1, 1, 0) on C^3."""
    return make_weight(np.diag([1.0, 1.0, 0.0]))


@pytest.fixture
def t_asym(w_proj3):
    """diag(2, -1, 1): the one-sided orthogonality counterexample."""
    return Operator(w_proj3, np.diag([2.0, -1.0, 1.0]))


def random_bounded(weight, rng, scale=1.0):
    """A random operator corrected to annihilate the weight null space."""
    n = weight.dim
    g = scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    comp = np.eye(n) - weight.proj_range
    return Operator(weight, g - weight.proj_range @ g @ comp)


def random_weight(n, rank, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    d = 10.0 ** rng.uniform(-2, 2, rank)
    a = (q[:, :rank] * d) @ q[:, :rank].conj().T
    return make_weight((a + a.conj().T) / 2.0)
