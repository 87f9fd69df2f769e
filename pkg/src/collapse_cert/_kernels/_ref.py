"""Pure-numpy lane of the row kernels.

Same contracts as the compiled lane in ``_core.pyx``; see the package
``__init__`` for selection. Inputs are float64 2-D arrays; reductions are
per-row and deterministic.
"""

import numpy as np

CLAMP_FLOOR = 1e-12


def softmax_rows(logits):
    logits = np.ascontiguousarray(logits, dtype=np.float64)
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def logsumexp_rows(a):
    a = np.ascontiguousarray(a, dtype=np.float64)
    m = a.max(axis=1)
    return m + np.log(np.exp(a - m[:, None]).sum(axis=1))


def kl_rows(p, q):
    """Per-row KL(p || q) for probability rows.

    Entries below CLAMP_FLOOR are clamped inside the logs and counted;
    exact zeros in p contribute zero regardless.
    """
    p = np.ascontiguousarray(p, dtype=np.float64)
    q = np.ascontiguousarray(q, dtype=np.float64)
    clamps = int((p < CLAMP_FLOOR).sum() + (q < CLAMP_FLOOR).sum())
    logp = np.log(np.maximum(p, CLAMP_FLOOR))
    logq = np.log(np.maximum(q, CLAMP_FLOOR))
    return (p * (logp - logq)).sum(axis=1), clamps


def kl_rows_logits(p, logits):
    """Per-row KL(p || softmax(logits)), with log-softmax computed exactly."""
    p = np.ascontiguousarray(p, dtype=np.float64)
    logits = np.ascontiguousarray(logits, dtype=np.float64)
    clamps = int((p < CLAMP_FLOOR).sum())
    logp = np.log(np.maximum(p, CLAMP_FLOOR))
    log_s = logits - logsumexp_rows(logits)[:, None]
    return (p * (logp - log_s)).sum(axis=1), clamps


def softmax_residual(p, logits):
    """softmax(logits) - p, the logit gradient of KL(p || softmax(logits))."""
    p = np.ascontiguousarray(p, dtype=np.float64)
    return softmax_rows(logits) - p
