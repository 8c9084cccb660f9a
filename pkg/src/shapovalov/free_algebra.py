"""The free graded algebra on generators ``theta_i``, its twisted coproduct and form ``S``.

Elements are plain dicts mapping keys to nonzero scalars: a word (tuple of
generator indices, read left to right as ``theta_{w1} ... theta_{wN}``) for
the free algebra itself, a tuple of words for tensor powers.

Permutation convention.  For words ``K`` and ``K'`` of the same content a
matching is recorded as ``sig`` with ``K'[sig[a]] == K[a]`` (letter ``a`` of
``K`` lands in slot ``sig[a]``).  The braiding picked up by such a
rearrangement is ``z ** sum(K[a].K[b] for a < b with sig[a] > sig[b])``,
i.e. :func:`twisting_number` evaluated at ``sig``; in terms of the permutation
``tau`` with ``tau(K) = (K[tau(1)], ...) = K'`` this is the twisting number of
``tau**-1``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .cartan import CartanDatum, content as word_content, sub as deg_sub, unit

Word = tuple


class SizeMismatch(ValueError):
    pass


class PermutationEnumerationTooLarge(ValueError):
    pass


class NonHomogeneousInput(ValueError):
    pass


PERM_DEPTH_GUARD = 9


# ---------------------------------------------------------------------------
# sparse linear combinations
# ---------------------------------------------------------------------------


def add_term(acc: dict, key, coeff) -> None:
    if not coeff:
        return
    if key in acc:
        v = acc[key] + coeff
        if v:
            acc[key] = v
        else:
            del acc[key]
    else:
        acc[key] = coeff


def lin_add(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, v in y.items():
        add_term(out, k, v)
    return out


def lin_sub(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, v in y.items():
        add_term(out, k, -v)
    return out


def lin_scale(c, x: dict) -> dict:
    if not c:
        return {}
    return {k: c * v for k, v in x.items() if c * v}


def lin_equal(x: dict, y: dict) -> bool:
    return not lin_sub(x, y)


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------


def multiset_words(nu: Sequence[int]) -> list[Word]:
    """All words of content ``nu`` in lexicographic order."""
    counts = list(nu)
    total = sum(counts)
    out: list[Word] = []
    prefix: list[int] = []

    def rec():
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                prefix.append(i)
                rec()
                prefix.pop()
                counts[i] += 1

    rec()
    return out


def permute_word(K: Sequence[int], tau: Sequence[int]) -> Word:
    """``tau(K) = (K[tau(1)], ..., K[tau(N)])`` with 0-based ``tau``."""
    if len(tau) != len(K):
        raise SizeMismatch("permutation and word lengths differ")
    return tuple(K[t] for t in tau)


def invert_permutation(tau: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(tau)
    for a, t in enumerate(tau):
        inv[t] = a
    return tuple(inv)


class FreeAlgebra:
    """Free algebra over ``ring`` on the generators of a Cartan datum."""

    def __init__(self, cartan: CartanDatum, ring):
        self.cartan = cartan
        self.ring = ring
        self.rank = cartan.rank
        self.dot = cartan.dot
        self._dot_arr = np.array(cartan.dot, dtype=np.int64).reshape(self.rank, self.rank)
        self._words: dict[tuple, list[Word]] = {}
        self._index: dict[tuple, dict[Word, int]] = {}
        self._gram_counts_cache: dict = {}
        self._gram_cache: dict = {}
        self._s_memo: dict = {}

    def __repr__(self) -> str:
        return f"FreeAlgebra({self.cartan.name}, {self.ring.name})"

    # -- bookkeeping ------------------------------------------------------
    def words(self, nu: Sequence[int]) -> list[Word]:
        nu = tuple(nu)
        if nu not in self._words:
            ws = multiset_words(nu)
            self._words[nu] = ws
            self._index[nu] = {w: k for k, w in enumerate(ws)}
        return self._words[nu]

    def index(self, nu: Sequence[int]) -> dict[Word, int]:
        self.words(nu)
        return self._index[tuple(nu)]

    def content(self, w: Sequence[int]) -> tuple[int, ...]:
        return word_content(w, self.rank)

    def degree(self, x: dict) -> tuple[int, ...]:
        degs = {self.content(w) for w in x}
        if len(degs) > 1:
            raise NonHomogeneousInput(f"element spans degrees {sorted(degs)}")
        return degs.pop() if degs else (0,) * self.rank

    def dot_words(self, u: Sequence[int], v: Sequence[int]) -> int:
        d = self.dot
        return sum(d[a][b] for a in u for b in v)

    def dot_degree(self, nu: Sequence[int], mu: Sequence[int]) -> int:
        d = self.dot
        return sum(nu[i] * d[i][j] * mu[j] for i in range(self.rank) if nu[i] for j in range(self.rank) if mu[j])

    def zeta(self, e: int):
        return self.ring.zeta(e)

    def generator(self, i: int) -> dict:
        return {(i,): self.ring.one}

    def one(self) -> dict:
        return {(): self.ring.one}

    def monomial(self, w: Iterable[int], coeff=None) -> dict:
        return {tuple(w): self.ring.one if coeff is None else coeff}

    def homogeneous_parts(self, x: dict) -> dict:
        parts: dict = {}
        for w, c in x.items():
            parts.setdefault(self.content(w), {})[w] = c
        return parts

    # -- algebra ----------------------------------------------------------
    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for u, a in x.items():
            for v, b in y.items():
                add_term(out, u + v, a * b)
        return out

    def twisting_number(self, K: Sequence[int], tau: Sequence[int]):
        """``prod z^{K[a].K[b]}`` over ``a < b`` with ``tau[a] > tau[b]`` (0-based)."""
        return self.zeta(self.twist_exponent(K, tau))

    def twist_exponent(self, K: Sequence[int], tau: Sequence[int]) -> int:
        if len(tau) != len(K):
            raise SizeMismatch("permutation and word lengths differ")
        d = self.dot
        n = len(K)
        return sum(d[K[a]][K[b]] for a in range(n) for b in range(a + 1, n) if tau[a] > tau[b])

    def coproduct(self, x: dict) -> dict:
        """``Delta`` as a dict ``(left_word, right_word) -> coeff``."""
        out: dict = {}
        for w, c in x.items():
            for key, e in self._coproduct_word(w):
                add_term(out, key, c * self.zeta(e))
        return out

    def _coproduct_word(self, w: Word) -> Iterator[tuple[tuple[Word, Word], int]]:
        n = len(w)
        d = self.dot
        for mask in range(1 << n):
            left = tuple(w[p] for p in range(n) if mask >> p & 1)
            right = tuple(w[p] for p in range(n) if not mask >> p & 1)
            # a letter sent right precedes a letter sent left
            e = 0
            for k in range(n):
                if not mask >> k & 1:
                    for j in range(k + 1, n):
                        if mask >> j & 1:
                            e += d[w[k]][w[j]]
            yield (left, right), e

    def iterated_coproduct(self, x: dict, N: int) -> dict:
        """``Delta^(N)`` into ``N`` tensor factors, keys are ``N``-tuples of words."""
        if N < 1:
            raise ValueError("N must be >= 1")
        out: dict = {}
        d = self.dot
        for w, c in x.items():
            n = len(w)
            for assign in itertools.product(range(N), repeat=n):
                e = 0
                for a in range(n):
                    fa = assign[a]
                    for b in range(a + 1, n):
                        if fa > assign[b]:
                            e += d[w[a]][w[b]]
                key = tuple(tuple(w[p] for p in range(n) if assign[p] == f) for f in range(N))
                add_term(out, key, c * self.zeta(e))
        return out

    def tensor_multiply(self, X: dict, Y: dict) -> dict:
        """Product on tensor powers: ``z^{sum_{j<i} |x_i|.|y_j|} x_1 y_1 (x) ... (x) x_N y_N``."""
        out: dict = {}
        for xs, a in X.items():
            for ys, b in Y.items():
                if len(xs) != len(ys):
                    raise SizeMismatch("tensor lengths differ")
                e = 0
                for i in range(len(xs)):
                    for j in range(i):
                        e += self.dot_words(xs[i], ys[j])
                key = tuple(u + v for u, v in zip(xs, ys))
                add_term(out, key, a * b * self.zeta(e))
        return out

    def positive_part(self, X: dict) -> dict:
        """Projection of a tensor-power element onto ``(F^+)^{(x) N}``."""
        return {k: v for k, v in X.items() if all(len(f) for f in k)}

    def delta_i(self, i: int, x: dict) -> dict:
        out: dict = {}
        d = self.dot
        for w, c in x.items():
            e = 0
            for p, letter in enumerate(w):
                if letter == i:
                    add_term(out, w[:p] + w[p + 1 :], c * self.zeta(e))
                e += d[letter][i]
        return out

    # -- the form S: recursive (production) --------------------------------
    def form_S_rec(self, x: dict, y: dict):
        acc = self.ring.zero
        for u, a in x.items():
            for v, b in y.items():
                s = self._S_words(u, v)
                if s:
                    acc = acc + a * b * s
        return acc

    def _S_words(self, u: Word, v: Word):
        if len(u) != len(v):
            return self.ring.zero
        if not u:
            return self.ring.one
        key = (u, v)
        memo = self._s_memo
        if key in memo:
            return memo[key]
        if sorted(u) != sorted(v):
            memo[key] = self.ring.zero
            return memo[key]
        i = u[0]
        rest = u[1:]
        acc = self.ring.zero
        e = 0
        d = self.dot
        for p, letter in enumerate(v):
            if letter == i:
                s = self._S_words(rest, v[:p] + v[p + 1 :])
                if s:
                    acc = acc + self.zeta(e) * s
            e += d[letter][i]
        memo[key] = acc
        return acc

    # -- the form S: permutation sum (oracle) -------------------------------
    def form_S_perm(self, x: Sequence[int], y: Sequence[int]):
        """Sum over matchings ``tau(K) = K'`` of the braiding factor."""
        return perm_form(self, tuple(x), tuple(y), None)

    # -- Gram matrices -----------------------------------------------------
    def gram_matrix(self, nu: Sequence[int]) -> list[list]:
        return gram_matrix(self, tuple(nu), None)

    def gram_matrix_perm(self, nu: Sequence[int]) -> list[list]:
        ws = self.words(nu)
        return [[self.form_S_perm(u, v) for v in ws] for u in ws]

    # -- dual algebra --------------------------------------------------------
    def dual_multiply(self, phi: dict, psi: dict) -> dict:
        """Product on the graded dual, transpose to the coproduct."""
        out: dict = {}
        d = self.dot
        for u, a in phi.items():
            for v, b in psi.items():
                n = len(u) + len(v)
                for left_pos in itertools.combinations(range(n), len(u)):
                    mask = set(left_pos)
                    x = [0] * n
                    iu = iter(u)
                    iv = iter(v)
                    for p in range(n):
                        x[p] = next(iu) if p in mask else next(iv)
                    e = 0
                    for k in range(n):
                        if k not in mask:
                            for j in range(k + 1, n):
                                if j in mask:
                                    e += d[x[k]][x[j]]
                    add_term(out, tuple(x), a * b * self.zeta(e))
        return out

    def dual_pairing(self, phi: dict, x: dict):
        acc = self.ring.zero
        for w, c in x.items():
            if w in phi:
                acc = acc + phi[w] * c
        return acc

    def s_map(self, x: dict) -> dict:
        """``x -> S(x, -)`` as an element of the graded dual (dual word basis)."""
        out: dict = {}
        for nu, part in self.homogeneous_parts(x).items():
            ws = self.words(nu)
            idx = self.index(nu)
            G = self.gram_matrix(nu)
            for w, c in part.items():
                row = G[idx[w]]
                for k, v in enumerate(ws):
                    add_term(out, v, c * row[k])
        return out


# ---------------------------------------------------------------------------
# kernel-backed Gram and permutation sums (shared with Verma modules)
# ---------------------------------------------------------------------------


def _window(F: FreeAlgebra, depth: int, lam) -> tuple[int, int, int]:
    """``(L, offset, modulus)`` for group-ring vectors of the given depth."""
    ring = F.ring
    if ring.modulus:
        return ring.modulus, 0, ring.modulus
    mdot = max((abs(x) for row in F.dot for x in row), default=0)
    mlam = max((abs(x) for x in lam), default=0) if lam is not None else 0
    B = depth * (mdot * depth + 2 * (mlam + mdot * depth)) + 1
    return 2 * B + 1, B, 0


def _column_tables(F: FreeAlgebra, nu: tuple, lam):
    ws = F.words(nu)
    n, N = len(ws), sum(nu)
    letters = np.zeros((n, N), dtype=np.int64)
    dels = np.zeros((n, N), dtype=np.int64)
    exps = np.zeros((n, N), dtype=np.int64)
    args = np.zeros((n, N), dtype=np.int64)
    d = F.dot
    for c, w in enumerate(ws):
        for p, i in enumerate(w):
            letters[c, p] = i
            dels[c, p] = F.index(deg_sub(nu, unit(F.cartan, i)))[w[:p] + w[p + 1 :]]
            exps[c, p] = sum(d[i][w[q]] for q in range(p))
            if lam is not None:
                args[c, p] = lam[i] - sum(d[i][w[q]] for q in range(p + 1, N))
    return letters, dels, exps, args


def gram_counts(F: FreeAlgebra, nu: tuple, lam, L: int, offset: int, modulus: int) -> np.ndarray:
    key = (nu, lam, L, offset)
    cache = F._gram_counts_cache
    if key in cache:
        return cache[key]
    ws = F.words(nu)
    n = len(ws)
    out = np.zeros((n, n, L), dtype=np.int64)
    if sum(nu) == 0:
        out[0, 0, offset] = 1
        cache[key] = out
        return out
    letters, dels, exps, args = _column_tables(F, nu, lam)
    for i in range(F.rank):
        if not nu[i]:
            continue
        prev_nu = deg_sub(nu, unit(F.cartan, i))
        prev = gram_counts(F, prev_nu, lam, L, offset, modulus)
        rows = [r for r, w in enumerate(ws) if w[0] == i]
        pidx = F.index(prev_nu)
        rest = np.array([pidx[ws[r][1:]] for r in rows], dtype=np.int64)
        block = np.zeros((len(rows), n, L), dtype=np.int64)
        lost = _kernels.gram_peel_block(rest, letters, dels, exps, args, i, prev, lam is not None, modulus, block)
        if lost:
            raise OverflowError("Laurent exponent window too small")
        out[rows] = block
    cache[key] = out
    return out


def gram_matrix(F: FreeAlgebra, nu: tuple, lam) -> list[list]:
    key = (nu, lam)
    if key in F._gram_cache:
        return F._gram_cache[key]
    L, offset, modulus = _window(F, sum(nu), lam)
    counts = gram_counts(F, nu, lam, L, offset, modulus)
    ring = F.ring
    n = counts.shape[0]
    G = [[ring.from_counts(counts[r, c], offset) for c in range(n)] for r in range(n)]
    F._gram_cache[key] = G
    return G


def perm_form(F: FreeAlgebra, K: Word, Kp: Word, lam):
    if len(K) != len(Kp):
        return F.ring.zero
    if len(K) > PERM_DEPTH_GUARD:
        raise PermutationEnumerationTooLarge(f"depth {len(K)} exceeds guard {PERM_DEPTH_GUARD}")
    Ka = np.array(K, dtype=np.int64)
    Kpa = np.array(Kp, dtype=np.int64)
    sig = _kernels.matching_positions(Ka, Kpa)
    if sig.shape[0] == 0:
        return F.ring.zero
    L, offset, modulus = _window(F, len(K), lam)
    lam_arr = np.array(lam if lam is not None else [0] * F.rank, dtype=np.int64).reshape(F.rank)
    counts = _kernels.perm_sum_counts(Ka, sig, F._dot_arr, lam_arr, lam is not None, modulus, offset, L)
    return F.ring.from_counts(counts, offset)
