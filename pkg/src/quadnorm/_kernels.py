"""Batched determinant kernels over Z/m on int64 arrays.

Two interchangeable implementations of the Berkowitz recurrence:

* ``_det_mod_batch_numba``: per-matrix loops compiled with numba ``@njit``;
* ``_det_mod_batch_numpy``: the same recurrence vectorised over the batch axis.

``det_mod_batch`` dispatches to numba unless it is missing or the
environment variable ``QUADNORM_NUMBA`` is set to ``0``.  Residues are
reduced after every product, so moduli below 2**31 cannot overflow.
"""
from __future__ import annotations

import os

import numpy as np

MAX_MODULUS = 2**31

try:  # pragma: no cover - exercised implicitly when numba is present
    import numba
except ImportError:  # pragma: no cover
    numba = None


def _det_mod_batch_numpy(mats: np.ndarray, m: int) -> np.ndarray:
    batch, n, _ = mats.shape
    A = mats % m
    vect = np.zeros((batch, n + 1), dtype=np.int64)
    vect[:, 0] = 1 % m
    length = 1
    for r in range(n):
        toep = np.zeros((batch, r + 2), dtype=np.int64)
        toep[:, 0] = 1 % m
        toep[:, 1] = (-A[:, r, r]) % m
        w = A[:, :r, r].copy()
        row = A[:, r, :r]
        block = A[:, :r, :r]
        for k in range(r):
            acc = np.zeros(batch, dtype=np.int64)
            for j in range(r):
                acc = (acc + (row[:, j] * w[:, j]) % m) % m
            toep[:, k + 2] = (-acc) % m
            nxt = np.zeros_like(w)
            for j in range(r):
                nxt = (nxt + (block[:, :, j] * w[:, j, None]) % m) % m
            w = nxt
        new = np.zeros((batch, n + 1), dtype=np.int64)
        for i in range(r + 2):
            acc = np.zeros(batch, dtype=np.int64)
            for j in range(min(i + 1, length)):
                acc = (acc + toep[:, i - j] * vect[:, j]) % m
            new[:, i] = acc
        vect = new
        length = r + 2
    last = vect[:, n]
    return last % m if n % 2 == 0 else (-last) % m


def _det_mod_batch_loops(mats, m):
    batch, n, _ = mats.shape
    out = np.empty(batch, dtype=np.int64)
    vect = np.zeros(n + 1, dtype=np.int64)
    new = np.zeros(n + 1, dtype=np.int64)
    toep = np.zeros(n + 1, dtype=np.int64)
    w = np.zeros(n, dtype=np.int64)
    w2 = np.zeros(n, dtype=np.int64)
    for b in range(batch):
        A = mats[b]
        vect[:] = 0
        vect[0] = 1 % m
        for r in range(n):
            toep[0] = 1 % m
            toep[1] = (-(A[r, r] % m)) % m
            for i in range(r):
                w[i] = A[i, r] % m
            for k in range(r):
                acc = 0
                for i in range(r):
                    acc = (acc + (A[r, i] % m) * w[i]) % m
                toep[k + 2] = (-acc) % m
                for i in range(r):
                    s = 0
                    for j in range(r):
                        s = (s + (A[i, j] % m) * w[j]) % m
                    w2[i] = s
                for i in range(r):
                    w[i] = w2[i]
            for i in range(r + 2):
                acc = 0
                for j in range(min(i + 1, r + 1)):
                    acc = (acc + toep[i - j] * vect[j]) % m
                new[i] = acc
            for i in range(r + 2):
                vect[i] = new[i]
        last = vect[n] % m
        out[b] = last if n % 2 == 0 else (-last) % m
    return out


if numba is not None:
    _det_mod_batch_numba = numba.njit(cache=False)(_det_mod_batch_loops)
else:  # pragma: no cover
    _det_mod_batch_numba = None


def numba_enabled() -> bool:
    return _det_mod_batch_numba is not None and os.environ.get("QUADNORM_NUMBA", "1") != "0"


def det_mod_batch(mats: np.ndarray, m: int) -> np.ndarray:
    """Determinants mod ``m`` of a ``(batch, n, n)`` int64 array."""
    if not 1 <= m < MAX_MODULUS:
        raise ValueError(f"modulus must lie in [1, 2**31), got {m}")
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError(f"expected a (batch, n, n) array, got shape {mats.shape}")
    if numba_enabled():
        return _det_mod_batch_numba(mats, m)
    return _det_mod_batch_numpy(mats, m)
