"""Pure-Python fallback for the obstruction-height kernel.

Mirrors the compiled hull sweep in ``_hullcore.pyx`` exactly; used when the
extension is unavailable or when ``PVG_PURE=1`` forces it.  Same algorithm,
same arithmetic, substantially slower.
"""

import numpy as np


def raw_height_matrix(x, t):
    """All-pairs unclamped maximum obstruction heights (see _hullcore)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    t = np.ascontiguousarray(t, dtype=np.float64)
    n = x.shape[0]
    out = np.full((n, n), -np.inf)
    ht = np.empty(n)
    hx = np.empty(n)
    for i in range(n - 2):
        ti = t[i]
        xi = x[i]
        m = 0
        for j in range(i + 2, n):
            tn = t[j - 1]
            xn = x[j - 1]
            while m >= 2 and (ht[m - 1] - ht[m - 2]) * (xn - hx[m - 2]) \
                    - (hx[m - 1] - hx[m - 2]) * (tn - ht[m - 2]) >= 0.0:
                m -= 1
            ht[m] = tn
            hx[m] = xn
            m += 1

            slope = (x[j] - xi) / (t[j] - ti)
            lo, hi = 0, m - 1
            while lo < hi:
                mid = (lo + hi) >> 1
                fa = hx[mid] - (xi + slope * (ht[mid] - ti))
                fb = hx[mid + 1] - (xi + slope * (ht[mid + 1] - ti))
                if fa < fb:
                    lo = mid + 1
                else:
                    hi = mid
            peak = hx[lo] - (xi + slope * (ht[lo] - ti))
            out[i, j] = peak
            out[j, i] = peak
    return out
