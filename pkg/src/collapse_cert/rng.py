"""Counter-based deterministic random numbers (splitmix64).

All stochastic operations in this package draw from one keyed, stateless
generator so that every experiment is reproducible bit-for-bit from its
seed, independent of call order, platform, and numpy version.

Construction
------------
State update and output finalizer are the splitmix64 ones:

    state_i = key + (i + 1) * 0x9E3779B97F4A7C15        (mod 2**64)
    out_i   = mix(state_i)

    mix(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
            z ^= z >> 27; z *= 0x94D049BB133111EB
            z ^= z >> 31

i.e. stream element i is splitmix64 seeded at `key` and skipped ahead i
steps, which makes the stream random-accessible (counter-based). Keys are
folded from mixed int/str parts with the same finalizer, so call sites can
use readable domain tags like ``("noise", seed, step)``.

Uniforms take the top 53 bits; normals use Box-Muller on uniform pairs.
"""

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix_int(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def fold_key(*parts) -> int:
    """Fold int/str parts into a single 64-bit key."""
    h = 0x8E51_2C4B_1D3A_F0E5
    for part in parts:
        if isinstance(part, str):
            for b in part.encode("utf-8"):
                h = _mix_int(h ^ ((b + 1) * _GOLDEN))
        elif isinstance(part, (int, np.integer)):
            h = _mix_int(h ^ _mix_int(int(part)))
        else:
            raise TypeError(f"key parts must be int or str, got {type(part)!r}")
    return h


def raw64(n: int, *key) -> np.ndarray:
    """n consecutive 64-bit outputs of the stream identified by key."""
    k = np.uint64(fold_key(*key))
    idx = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = k + idx * np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
    return z


def uniforms(shape, *key) -> np.ndarray:
    """Uniform [0,1) draws with 53-bit resolution."""
    shape = (shape,) if isinstance(shape, int) else tuple(shape)
    n = int(np.prod(shape)) if shape else 1
    u = (raw64(n, *key) >> np.uint64(11)).astype(np.float64) * 2.0**-53
    return u.reshape(shape)


def normals(shape, *key) -> np.ndarray:
    """Standard normal draws via Box-Muller."""
    shape = (shape,) if isinstance(shape, int) else tuple(shape)
    n = int(np.prod(shape)) if shape else 1
    m = (n + 1) // 2
    bits = raw64(2 * m, *key)
    # u1 in (0,1] so log(u1) is finite
    u1 = ((bits[:m] >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
    u2 = (bits[m:] >> np.uint64(11)).astype(np.float64) * 2.0**-53
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:n]
    return z.reshape(shape)


def permutation(n: int, *key) -> np.ndarray:
    """Deterministic permutation of range(n)."""
    return np.argsort(raw64(n, *key), kind="stable")


def integers(n: int, bound: int, *key) -> np.ndarray:
    """n draws uniform over [0, bound). Modulo bias is ~bound/2**64."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    return (raw64(n, *key) % np.uint64(bound)).astype(np.int64)


def choice_weighted(weights: np.ndarray, *key) -> int:
    """One index drawn proportionally to nonnegative weights."""
    w = np.asarray(weights, dtype=np.float64)
    total = w.sum()
    if not np.isfinite(total) or total <= 0:
        raise ValueError("weights must be nonnegative with positive sum")
    u = float(uniforms(1, *key)[0]) * total
    return int(np.searchsorted(np.cumsum(w), u, side="right").clip(0, len(w) - 1))
