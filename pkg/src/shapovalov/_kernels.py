"""Integer inner loops, compiled with numba when available.

Scalars inside these kernels are group-ring vectors: an ``int64`` array ``v``
of length ``L`` stands for ``sum_k v[k] z**(k - offset)``.  With ``modulus > 0``
(cyclotomic mode) exponents wrap modulo ``modulus`` and ``offset`` is 0; with
``modulus == 0`` (Laurent mode) the caller sizes the window so nothing falls
off the ends.

Set ``SHAPOVALOV_DISABLE_NUMBA=1`` to force the pure-numpy path.  Both paths
are always importable; ``USING_NUMBA`` says which one the public names bind to.
"""
from __future__ import annotations

import itertools
import os

import numpy as np

_DISABLED = os.environ.get("SHAPOVALOV_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised via the env flag
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


USING_NUMBA = NUMBA_AVAILABLE


# ---------------------------------------------------------------------------
# Gram matrix peeling step
# ---------------------------------------------------------------------------


def _gram_peel_block_py(rest_idx, col_letters, col_del, col_exp, col_arg, letter, prev, verma, modulus, out):
    """numpy version; returns the number of coefficients pushed off the window."""
    nr = rest_idx.shape[0]
    nc, depth = col_letters.shape
    L = out.shape[2]
    lost = 0
    if nr == 0 or nc == 0:
        return 0
    ks = np.arange(L)
    rows = prev[rest_idx]  # (nr, m, L)
    for p in range(depth):
        cols = np.flatnonzero(col_letters[:, p] == letter)
        if cols.size == 0:
            continue
        src = rows[:, col_del[cols, p], :]  # (nr, k, L)
        shifts = [col_exp[cols, p]]
        signs = [1]
        if verma:
            shifts.append(col_exp[cols, p] - 2 * col_arg[cols, p])
            signs.append(-1)
        for shift, sign in zip(shifts, signs):
            src_idx = ks[None, :] - shift[:, None]  # (k, L): out[k] <- src[k - shift]
            if modulus > 0:
                src_idx = src_idx % modulus
                gathered = src[:, np.arange(cols.size)[:, None], src_idx]
            else:
                valid = (src_idx >= 0) & (src_idx < L)
                clipped = np.clip(src_idx, 0, L - 1)
                gathered = src[:, np.arange(cols.size)[:, None], clipped] * valid[None, :, :]
                # mass that would land outside the window
                total = src.sum(axis=2)
                lost += int(np.abs(total - gathered.sum(axis=2)).sum())
            out[:, cols, :] += sign * gathered
    return lost


@njit(cache=True)
def _gram_peel_block_nb(rest_idx, col_letters, col_del, col_exp, col_arg, letter, prev, verma, modulus, out):
    nr = rest_idx.shape[0]
    nc = col_letters.shape[0]
    depth = col_letters.shape[1]
    L = out.shape[2]
    lost = 0
    for c in range(nc):
        for p in range(depth):
            if col_letters[c, p] != letter:
                continue
            d = col_del[c, p]
            e1 = col_exp[c, p]
            e2 = e1 - 2 * col_arg[c, p]
            for r in range(nr):
                src = prev[rest_idx[r], d]
                for k in range(L):
                    v = src[k]
                    if v == 0:
                        continue
                    t = k + e1
                    if modulus > 0:
                        t = t % modulus
                        out[r, c, t] += v
                    elif 0 <= t < L:
                        out[r, c, t] += v
                    else:
                        lost += abs(v)
                    if verma:
                        t = k + e2
                        if modulus > 0:
                            t = t % modulus
                            out[r, c, t] -= v
                        elif 0 <= t < L:
                            out[r, c, t] -= v
                        else:
                            lost += abs(v)
    return lost


# ---------------------------------------------------------------------------
# permutation sums (closed-form oracle)
# ---------------------------------------------------------------------------


def _matching_positions_py(K, Kp):
    n = K.shape[0]
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if sorted(K.tolist()) != sorted(Kp.tolist()):
        return np.zeros((0, n), dtype=np.int64)
    letters = sorted(set(K.tolist()))
    src = {x: [a for a in range(n) if K[a] == x] for x in letters}
    dst = {x: [s for s in range(n) if Kp[s] == x] for x in letters}
    choices = [list(itertools.permutations(dst[x])) for x in letters]
    out = []
    for combo in itertools.product(*choices):
        sig = [0] * n
        for x, slots in zip(letters, combo):
            for a, s in zip(src[x], slots):
                sig[a] = s
        out.append(sig)
    return np.array(out, dtype=np.int64).reshape(len(out), n)


@njit(cache=True)
def _matching_positions_nb(K, Kp):
    n = K.shape[0]
    # count matches: product of factorials of multiplicities
    total = 1
    for a in range(n):
        same_before = 0
        cnt_k = 0
        cnt_kp = 0
        for b in range(n):
            if K[b] == K[a]:
                cnt_k += 1
                if b < a:
                    same_before += 1
            if Kp[b] == K[a]:
                cnt_kp += 1
        if cnt_k != cnt_kp:
            return np.zeros((0, n), dtype=np.int64)
        total *= cnt_k - same_before
    out = np.zeros((total, n), dtype=np.int64)
    if n == 0:
        return out
    used = np.zeros(n, dtype=np.bool_)
    choice = np.full(n, -1, dtype=np.int64)
    a = 0
    row = 0
    while a >= 0:
        # advance choice[a] to next free matching slot
        s = choice[a] + 1
        if choice[a] >= 0:
            used[choice[a]] = False
        while s < n and (used[s] or Kp[s] != K[a]):
            s += 1
        if s == n:
            choice[a] = -1
            a -= 1
            continue
        choice[a] = s
        used[s] = True
        if a == n - 1:
            out[row, :] = choice
            row += 1
        else:
            a += 1
    return out


def _perm_sum_counts_py(K, sig, dot, lam, verma, modulus, offset, L):
    counts = np.zeros(L, dtype=np.int64)
    m, n = sig.shape
    if m == 0:
        return counts
    W = dot[K[:, None], K[None, :]]
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    later = sig[:, :, None] > sig[:, None, :]  # sig[a] > sig[b]
    twist = ((later & upper[None]) * W[None]).sum(axis=(1, 2))
    if verma:
        stays_after = sig[:, None, :] > sig[:, :, None]  # sig[b] > sig[a]
        args = lam[K][None, :] - ((stays_after & upper[None]) * W[None]).sum(axis=2)
    for t in range(m):
        poly = np.zeros(L, dtype=np.int64)
        poly[(twist[t] + offset) % modulus if modulus else twist[t] + offset] = 1
        if verma:
            for a in range(n):
                shift = -2 * int(args[t, a])
                if modulus:
                    poly = poly - np.roll(poly, shift % modulus)
                else:
                    moved = np.zeros_like(poly)
                    if shift >= 0:
                        moved[shift:] = poly[: L - shift]
                    else:
                        moved[: L + shift] = poly[-shift:]
                    poly = poly - moved
        counts += poly
    return counts


@njit(cache=True)
def _perm_sum_counts_nb(K, sig, dot, lam, verma, modulus, offset, L):
    counts = np.zeros(L, dtype=np.int64)
    m = sig.shape[0]
    n = sig.shape[1]
    poly = np.zeros(L, dtype=np.int64)
    tmp = np.zeros(L, dtype=np.int64)
    for t in range(m):
        e = 0
        for a in range(n):
            for b in range(a + 1, n):
                if sig[t, a] > sig[t, b]:
                    e += dot[K[a], K[b]]
        poly[:] = 0
        if modulus > 0:
            poly[(e + offset) % modulus] = 1
        else:
            poly[e + offset] = 1
        if verma:
            for a in range(n):
                arg = lam[K[a]]
                for b in range(a + 1, n):
                    if sig[t, b] > sig[t, a]:
                        arg -= dot[K[a], K[b]]
                shift = -2 * arg
                tmp[:] = 0
                for k in range(L):
                    if poly[k] == 0:
                        continue
                    j = k + shift
                    if modulus > 0:
                        tmp[j % modulus] += poly[k]
                    elif 0 <= j < L:
                        tmp[j] += poly[k]
                for k in range(L):
                    poly[k] -= tmp[k]
        for k in range(L):
            counts[k] += poly[k]
    return counts


if USING_NUMBA:
    gram_peel_block = _gram_peel_block_nb
    matching_positions = _matching_positions_nb
    perm_sum_counts = _perm_sum_counts_nb
else:
    gram_peel_block = _gram_peel_block_py
    matching_positions = _matching_positions_py
    perm_sum_counts = _perm_sum_counts_py

BACKENDS = {
    "numpy": (_gram_peel_block_py, _matching_positions_py, _perm_sum_counts_py),
    "numba": (_gram_peel_block_nb, _matching_positions_nb, _perm_sum_counts_nb),
}
