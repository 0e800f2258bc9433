"""Fourth-order finite-difference derivatives on uniform grids."""

import numpy as np

from .errors import GridError

# one-sided rows for the first two points; the last two are mirrored
_D1_EDGE = (np.array([-25.0, 48.0, -36.0, 16.0, -3.0]),
            np.array([-3.0, -10.0, 18.0, -6.0, 1.0]))
_D2_EDGE = (np.array([45.0, -154.0, 214.0, -156.0, 61.0, -10.0]),
            np.array([10.0, -15.0, -4.0, 14.0, -6.0, 1.0]))


def d1(f, h):
    """First derivative, 5-point central interior, one-sided at the edges."""
    f = np.asarray(f)
    if f.size < 5:
        raise GridError(f"first-derivative stencil needs 5 points, got {f.size}")
    out = np.empty_like(f)
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    for i, w in enumerate(_D1_EDGE):
        out[i] = w @ f[0:5] / (12.0 * h)
        out[-1 - i] = -(w @ f[::-1][0:5]) / (12.0 * h)
    return out


def d2(f, h):
    """Second derivative, 5-point central interior, 6-point one-sided edges."""
    f = np.asarray(f)
    if f.size < 6:
        raise GridError(f"second-derivative stencil needs 6 points, got {f.size}")
    out = np.empty_like(f)
    out[2:-2] = (-f[:-4] + 16.0 * f[1:-3] - 30.0 * f[2:-2] + 16.0 * f[3:-1] - f[4:]) / (12.0 * h * h)
    for i, w in enumerate(_D2_EDGE):
        out[i] = w @ f[0:6] / (12.0 * h * h)
        out[-1 - i] = w @ f[::-1][0:6] / (12.0 * h * h)
    return out
