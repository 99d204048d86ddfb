"""Sweep kernel backends.

Two interchangeable implementations of the hot loops: a pure numpy batch
backend (reference) and a Cython extension (_compiled). The extension is
preferred when its build succeeded; SPINRING_BACKEND=pure or =compiled
forces the choice, and =compiled fails loudly rather than falling back.

The module-level functions are the public entry points; they normalize and
broadcast arguments so both backends see identical inputs.
"""

import os

import numpy as np

from . import reference

_ENV_VAR = "SPINRING_BACKEND"


def _load_compiled():
    from . import _compiled

    return _compiled


def _select_backend():
    requested = os.environ.get(_ENV_VAR, "auto").strip().lower() or "auto"
    if requested == "pure":
        return reference
    if requested == "compiled":
        return _load_compiled()
    if requested == "auto":
        try:
            return _load_compiled()
        except ImportError:
            return reference
    raise ValueError(
        f"{_ENV_VAR} must be 'pure', 'compiled' or 'auto', not {requested!r}"
    )


_active = _select_backend()

BACKEND_NAME = _active.BACKEND_NAME


def available_backends():
    """Names of the backends importable in this installation."""
    names = ["pure"]
    try:
        _load_compiled()
    except ImportError:
        pass
    else:
        names.append("compiled")
    return tuple(names)


def _as_batch(*values):
    spread = np.broadcast_arrays(*[np.asarray(v, dtype=float) for v in values])
    shape = spread[0].shape
    return [np.ascontiguousarray(a.reshape(-1)) for a in spread], shape


def _reshape(out, shape):
    return out.reshape(shape) if shape else float(out[0])


def thermal_pair_concurrence(j, b, delta, t, pair=(1, 3)):
    """Thermal concurrence of a site pair on the four-site ring.

    Arguments broadcast; t entries equal to 0 select the ground-manifold
    mixture instead of a Gibbs state. pair is two distinct 1-based sites.
    """
    pair = tuple(int(s) for s in pair)
    if len(pair) != 2 or not 1 <= pair[0] < pair[1] <= 4:
        raise ValueError("pair must be two distinct 1-based sites in ascending order")
    (jj, bb, dd, tt), shape = _as_batch(j, b, delta, t)
    if not np.all(np.isfinite(tt)) or np.any(tt < 0.0):
        raise ValueError("temperature must be finite and >= 0")
    return _reshape(_active.thermal_pair_concurrence(jj, bb, dd, tt, pair), shape)


def alternate_concurrence_closed(j, b, t):
    """Closed-form alternate-pair concurrence (zero anisotropy), broadcast."""
    (jj, bb, tt), shape = _as_batch(j, b, t)
    if not np.all(np.isfinite(tt)) or np.any(tt <= 0.0):
        raise ValueError("temperature must be finite and positive")
    return _reshape(_active.alternate_concurrence_closed(jj, bb, tt), shape)
