"""Pure-numpy versions of the hot kernels in ``_core.pyx``.

Both implementations compute every output entry independently with the same
floating-point expression, so they agree to rounding of ``exp``.
"""

import numpy as np


def sq_dists(a, b):
    a = np.ascontiguousarray(a, dtype=float)
    b = np.ascontiguousarray(b, dtype=float)
    diff = a[:, None, :] - b[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def gaussian_gram(a, b, sigma):
    return np.exp(-sq_dists(a, b) / (sigma * sigma))


def condensed_distances(rows):
    rows = np.ascontiguousarray(rows, dtype=float)
    i, j = np.triu_indices(rows.shape[0], k=1)
    diff = rows[i] - rows[j]
    return np.sqrt(np.einsum("ij,ij->i", diff, diff))


def bin_codes(samples, lo, hi, bins):
    samples = np.ascontiguousarray(samples, dtype=float)
    lo = np.asarray(lo, dtype=float)
    width = np.asarray(hi, dtype=float) - lo
    codes = np.zeros(samples.shape, dtype=np.int64)
    live = width > 0
    if np.any(live):
        scaled = (samples[:, live] - lo[live]) / width[live] * bins
        codes[:, live] = np.minimum(np.floor(scaled).astype(np.int64), bins - 1)
    return codes


def histogram_counts(samples, lo, hi, bins):
    codes = bin_codes(samples, lo, hi, bins)
    d = codes.shape[1]
    flat = np.zeros(codes.shape[0], dtype=np.int64)
    for k in range(d):
        flat = flat * bins + codes[:, k]
    return np.bincount(flat, minlength=bins**d).astype(np.int64)
