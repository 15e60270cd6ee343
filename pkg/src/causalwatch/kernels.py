"""Log-space posterior kernels: numba-compiled hot path, numpy fallback.

Set CAUSALWATCH_DISABLE_NUMBA=1 to force the pure-numpy path (also used
automatically when numba is not importable). Both paths run the same
kernel source; neither is the oracle for the other in tests, which
recompute posteriors by direct enumeration.
"""

from __future__ import annotations

import math
import os

import numpy as np

_DISABLED = os.environ.get("CAUSALWATCH_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")

_NEG_INF = float("-inf")


def _log_scores_kernel(joint, class_counts, denom_add, labeled_total, n_classes, smooth):
    """Per-class log(prior) + sum_k log(likelihood_k); -inf marks a zero score.

    joint: (K, C) float64 counts N_ic for the K evidence cells.
    class_counts: (C,) float64. denom_add: (K,) additive smoothing
    denominator term per evidence cell (number of classes by default).
    """
    C = class_counts.shape[0]
    K = joint.shape[0]
    out = np.empty(C, dtype=np.float64)
    for c in range(C):
        nc = class_counts[c]
        if smooth:
            acc = math.log((nc + 1.0) / (labeled_total + n_classes))
        else:
            if nc <= 0.0:
                out[c] = _NEG_INF
                continue
            acc = math.log(nc / labeled_total)
        dead = False
        for k in range(K):
            if smooth:
                p = (joint[k, c] + 1.0) / (nc + denom_add[k])
            else:
                p = joint[k, c] / nc
            if p <= 0.0:
                dead = True
                break
            acc += math.log(p)
        out[c] = _NEG_INF if dead else acc
    return out


try:  # pragma: no cover - exercised through the public wrapper
    if _DISABLED:
        raise ImportError("numba disabled by env flag")
    from numba import njit

    _log_scores_numba = njit(cache=True)(_log_scores_kernel)
    HAVE_NUMBA = True
except ImportError:
    _log_scores_numba = None
    HAVE_NUMBA = False


def log_posterior_scores(joint, class_counts, denom_add, labeled_total, n_classes, smooth):
    joint = np.ascontiguousarray(joint, dtype=np.float64)
    class_counts = np.ascontiguousarray(class_counts, dtype=np.float64)
    denom_add = np.ascontiguousarray(denom_add, dtype=np.float64)
    fn = _log_scores_numba if HAVE_NUMBA else _log_scores_kernel
    return fn(joint, class_counts, denom_add, float(labeled_total), float(n_classes), smooth)


def normalize_log_scores(log_scores: np.ndarray) -> np.ndarray:
    """Softmax with -inf support; caller guarantees at least one finite entry."""
    m = np.max(log_scores)
    if m == _NEG_INF:
        raise ValueError("all log scores are -inf")
    w = np.exp(log_scores - m)
    return w / w.sum()
