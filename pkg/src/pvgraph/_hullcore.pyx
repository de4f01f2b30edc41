# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for all-pairs obstruction heights.

For each left endpoint i the sweep over right endpoints j maintains the
upper convex hull of the intermediate points (t_n, x_n), i < n < j.  The
maximum height of any intermediate above the chord (i, j) is attained at a
hull vertex, and the height along the hull is unimodal, so a binary search
over hull vertices finds it.  Near-quadratic total cost versus the cubic
worst case of the naive per-pair scan.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def raw_height_matrix(double[::1] x, double[::1] t):
    """All-pairs unclamped maximum obstruction heights.

    Returns an (n, n) float64 symmetric matrix H with H[i, j] the largest
    x_n - chord_ij(t_n) over intermediate n.  Pairs with no intermediates
    (the diagonal and j == i + 1) are -inf.
    """
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.full((n, n), -np.inf)
    cdef double[:, ::1] h = out
    # hull scratch: times and values of hull vertices, left to right
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ht_arr = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hx_arr = np.empty(n)
    cdef double[::1] ht = ht_arr
    cdef double[::1] hx = hx_arr
    cdef Py_ssize_t i, j, m, lo, hi, mid
    cdef double ti, xi, tn, xn, slope, cross, fa, fb, peak

    for i in range(n - 2):
        ti = t[i]
        xi = x[i]
        m = 0
        for j in range(i + 2, n):
            # push intermediate j-1, keeping the chain concave
            tn = t[j - 1]
            xn = x[j - 1]
            while m >= 2:
                cross = (ht[m - 1] - ht[m - 2]) * (xn - hx[m - 2]) \
                    - (hx[m - 1] - hx[m - 2]) * (tn - ht[m - 2])
                if cross >= 0.0:
                    m -= 1
                else:
                    break
            ht[m] = tn
            hx[m] = xn
            m += 1

            slope = (x[j] - xi) / (t[j] - ti)
            # unimodal height over hull vertices: binary search for the peak
            lo = 0
            hi = m - 1
            while lo < hi:
                mid = (lo + hi) >> 1
                fa = hx[mid] - (xi + slope * (ht[mid] - ti))
                fb = hx[mid + 1] - (xi + slope * (ht[mid + 1] - ti))
                if fa < fb:
                    lo = mid + 1
                else:
                    hi = mid
            peak = hx[lo] - (xi + slope * (ht[lo] - ti))
            h[i, j] = peak
            h[j, i] = peak

    return out
