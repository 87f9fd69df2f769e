"""Fixed simplex witness geometry.

A witness is a frozen softmax readout of the latent mean over K regular
simplex directions with gain beta and log-prior offsets. Everything here
is deterministic and immutable once built; no part of it is trained.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import _kernels


class DimensionError(ValueError):
    pass


def build_simplex_vertices(K: int, d_z: int) -> np.ndarray:
    """K unit vectors in R^d_z with pairwise dot -1/(K-1), summing to zero.

    Construction: centered standard basis u_k = e_k - (1/K)1 in R^K,
    normalized, then expressed in a fixed orthonormal basis of the
    hyperplane orthogonal to 1 and embedded into the first K-1
    coordinates of d_z-space. The hyperplane basis comes from QR of
    [u_1 .. u_{K-1}] with each column's first nonzero entry made
    positive, so the vertices are stable across platforms up to rounding.
    """
    if K < 2:
        raise ValueError(f"need at least 2 components, got K={K}")
    if d_z < K - 1:
        raise DimensionError(f"d_z={d_z} cannot embed a {K}-vertex simplex (need >= {K - 1})")

    u = np.eye(K) - 1.0 / K
    q, _ = np.linalg.qr(u[:, : K - 1])
    for j in range(K - 1):
        col = q[:, j]
        lead = col[np.abs(col) > 1e-12][0]
        if lead < 0:
            q[:, j] = -col
    tilde = u / np.linalg.norm(u, axis=1, keepdims=True)
    coords = tilde @ q

    vertices = np.zeros((K, d_z))
    vertices[:, : K - 1] = coords
    return vertices


@dataclass(frozen=True)
class WitnessSpec:
    """Frozen witness: vertices (K x d_z), gain beta, log-prior offsets."""

    vertices: np.ndarray
    gain: float
    log_prior: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.vertices, dtype=np.float64)
        lp = np.ascontiguousarray(self.log_prior, dtype=np.float64)
        v.flags.writeable = False
        lp.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "log_prior", lp)
        K, d_z = v.shape
        if K < 2:
            raise ValueError("witness needs at least 2 components")
        if d_z < K - 1:
            raise DimensionError(f"d_z={d_z} cannot embed a {K}-vertex simplex")
        if self.gain <= 0:
            raise ValueError(f"gain must be positive, got {self.gain}")
        if lp.shape != (K,):
            raise ValueError("log_prior length must match vertex count")
        if d_z > K - 1 and np.any(v[:, K - 1 :] != 0.0):
            raise ValueError("coordinates outside the embedding subspace must be zero")
        gram = v @ v.T
        target = (K * np.eye(K) - 1.0) / (K - 1)
        if not np.allclose(gram, target, atol=1e-9):
            raise ValueError("vertices are not a regular simplex")
        if np.abs(v.sum(axis=0)).max() >= 1e-9:
            raise ValueError("vertices do not sum to zero")
        if abs(np.exp(lp).sum() - 1.0) >= 1e-9:
            raise ValueError("exp(log_prior) must sum to 1")

    @property
    def K(self) -> int:
        return self.vertices.shape[0]

    @property
    def d_z(self) -> int:
        return self.vertices.shape[1]

    @property
    def prior(self) -> np.ndarray:
        return np.exp(self.log_prior)

    def to_json(self) -> str:
        return json.dumps(
            {
                "K": self.K,
                "d_z": self.d_z,
                "beta": self.gain,
                "log_prior": self.log_prior.tolist(),
                "vertices": self.vertices.ravel().tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "WitnessSpec":
        obj = json.loads(text)
        vertices = np.array(obj["vertices"], dtype=np.float64).reshape(obj["K"], obj["d_z"])
        return cls(vertices=vertices, gain=float(obj["beta"]), log_prior=np.array(obj["log_prior"]))


def make_witness(K: int, d_z: int, beta: float, prior: np.ndarray | None = None) -> WitnessSpec:
    """Witness with freshly built simplex vertices. Uniform prior by default."""
    if prior is None:
        prior = np.full(K, 1.0 / K)
    prior = np.asarray(prior, dtype=np.float64)
    if prior.shape != (K,) or np.any(prior <= 0):
        raise ValueError("prior must be a length-K positive probability vector")
    prior = prior / prior.sum()
    return WitnessSpec(
        vertices=build_simplex_vertices(K, d_z), gain=float(beta), log_prior=np.log(prior)
    )


def witness_logits(w: WitnessSpec, mus: np.ndarray) -> np.ndarray:
    """Logits beta * V mu + log_prior for a batch of latent means (N x d_z)."""
    mus = np.atleast_2d(np.asarray(mus, dtype=np.float64))
    if mus.shape[1] != w.d_z:
        raise ValueError(f"latent dim {mus.shape[1]} != witness d_z {w.d_z}")
    return w.gain * (mus @ w.vertices.T) + w.log_prior


def witness_probs(w: WitnessSpec, z: np.ndarray) -> np.ndarray:
    """Softmax readout S(z) for a single latent point."""
    z = np.asarray(z, dtype=np.float64)
    if not np.all(np.isfinite(z)):
        raise FloatingPointError("latent point contains non-finite values")
    return _kernels.softmax_rows(witness_logits(w, z[None, :]))[0]


def witness_probs_batch(w: WitnessSpec, mus: np.ndarray) -> np.ndarray:
    """Softmax readout for a batch of latent means (N x d_z) -> (N x K)."""
    mus = np.asarray(mus, dtype=np.float64)
    if not np.all(np.isfinite(mus)):
        raise FloatingPointError("latent means contain non-finite values")
    return _kernels.softmax_rows(witness_logits(w, mus))


def escape_field(w: WitnessSpec, t_row: np.ndarray) -> np.ndarray:
    """Mean-space descent direction at the collapsed point, beta * sum_k (t_k - prior_k) v_k.

    This is the negative gradient of KL(t || S(mu)) with respect to mu at
    mu = 0; it vanishes for all rows only when the teacher is constant.
    """
    t_row = np.asarray(t_row, dtype=np.float64)
    if t_row.shape != (w.K,):
        raise ValueError(f"expected a length-{w.K} probability vector")
    if abs(t_row.sum() - 1.0) > 1e-6 or np.any(t_row < 0):
        raise ValueError("t_row must lie on the probability simplex")
    return w.gain * ((t_row - w.prior) @ w.vertices)
