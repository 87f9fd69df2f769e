"""Row kernels with two interchangeable lanes.

The hot inner loops of training and certification are row-wise softmax/KL
reductions over (n, K) arrays. They exist twice with identical contracts:

* ``_core`` — Cython, single pass per row, compiled at install time;
* ``_ref``  — pure numpy, always available.

The compiled lane is used when importable. Set COLLAPSE_CERT_KERNELS to
``python`` or ``cython`` to force a lane (forcing ``cython`` raises if the
extension is missing). ``benchmarks/bench_kernels.py`` compares the two.
"""

import os

from . import _ref

CLAMP_FLOOR = _ref.CLAMP_FLOOR

_forced = os.environ.get("COLLAPSE_CERT_KERNELS", "").strip().lower()
if _forced not in ("", "python", "cython"):
    raise RuntimeError(
        f"COLLAPSE_CERT_KERNELS must be 'python' or 'cython', got {_forced!r}"
    )

_impl = None
if _forced != "python":
    try:
        from . import _core as _impl
    except ImportError:
        if _forced == "cython":
            raise RuntimeError(
                "COLLAPSE_CERT_KERNELS=cython but the compiled kernel "
                "extension is not built"
            )
        _impl = None

if _impl is None:
    _impl = _ref
    BACKEND = "python"
else:
    BACKEND = "cython"

softmax_rows = _impl.softmax_rows
logsumexp_rows = _impl.logsumexp_rows
kl_rows = _impl.kl_rows
kl_rows_logits = _impl.kl_rows_logits
softmax_residual = _impl.softmax_residual
