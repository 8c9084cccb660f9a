"""Verma modules ``V(Lambda)``: the operators ``epsilon_i``, the form ``S_Lambda`` and the coaction.

``V(Lambda)`` is the free rank-one module over the free algebra; an element is
a dict ``word -> scalar`` where the word ``w`` stands for ``theta_w v``.

The coaction formula consumes the vector ``theta_{i_N} ... theta_{i_1} v`` from
the right, so a stored word ``(w_1, ..., w_N)`` is read as ``i_k = w_{N+1-k}``.
Tensor elements of ``F (x) V(Lambda)`` are dicts ``(x_word, y_word) -> scalar``.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .cartan import RankMismatch
from .free_algebra import (
    FreeAlgebra,
    NonHomogeneousInput,
    add_term,
    gram_matrix,
    perm_form,
)


class EmptySubset(ValueError):
    pass


class VermaModule:
    def __init__(self, F: FreeAlgebra, weight: Sequence[int]):
        if len(weight) != F.rank:
            raise RankMismatch(f"weight has length {len(weight)}, rank is {F.rank}")
        self.F = F
        self.ring = F.ring
        self.weight = tuple(int(x) for x in weight)
        self._memo: dict = {}

    def __repr__(self) -> str:
        return f"VermaModule({self.F.cartan.name}, {self.weight}, {self.ring.name})"

    # -- gradings -----------------------------------------------------------
    def highest_vector(self) -> dict:
        return {(): self.ring.one}

    def pairing_after(self, i: int, w: Sequence[int]) -> int:
        """``<Lambda - lambda_{|w|}, i>``."""
        d = self.F.dot[i]
        return self.weight[i] - sum(d[a] for a in w)

    def x_degree(self, w: Sequence[int]) -> tuple[int, ...]:
        d = self.F.dot
        return tuple(self.weight[i] - sum(d[i][a] for a in w) for i in range(self.F.rank))

    def bracket(self, a: int):
        return self.ring.bracket(a)

    # -- module structure ----------------------------------------------------
    def act(self, x: dict, m: dict) -> dict:
        return self.F.multiply(x, m)

    def epsilon_i(self, i: int, m: dict) -> dict:
        out: dict = {}
        d = self.F.dot
        for w, c in m.items():
            e = 0
            for p, letter in enumerate(w):
                if letter == i:
                    arg = self.pairing_after(i, w[p + 1 :])
                    b = self.bracket(arg)
                    if b:
                        add_term(out, w[:p] + w[p + 1 :], c * self.F.zeta(e) * b)
                e += d[letter][i]
        return out

    # -- the form S_Lambda -------------------------------------------------
    def form_S_Lambda_rec(self, x: dict, y: dict):
        acc = self.ring.zero
        for u, a in x.items():
            for v, b in y.items():
                s = self._S_words(u, v)
                if s:
                    acc = acc + a * b * s
        return acc

    def _S_words(self, u: tuple, v: tuple):
        if len(u) != len(v):
            return self.ring.zero
        if not u:
            return self.ring.one
        key = (u, v)
        memo = self._memo
        if key in memo:
            return memo[key]
        if sorted(u) != sorted(v):
            memo[key] = self.ring.zero
            return memo[key]
        i = u[0]
        rest = u[1:]
        acc = self.ring.zero
        e = 0
        d = self.F.dot
        for p, letter in enumerate(v):
            if letter == i:
                b = self.bracket(self.pairing_after(i, v[p + 1 :]))
                if b:
                    s = self._S_words(rest, v[:p] + v[p + 1 :])
                    if s:
                        acc = acc + self.F.zeta(e) * b * s
            e += d[letter][i]
        memo[key] = acc
        return acc

    def form_S_Lambda_perm(self, x: Sequence[int], y: Sequence[int]):
        """Sum over matchings of braiding factor times a product of brackets.

        For the matching ``sig`` (``K'[sig[a]] == K[a]``) the bracket attached
        to letter ``a`` is ``[<Lambda - sum lambda_{K[b]}, K[a]>]`` over the
        letters ``b > a`` that stay to the right of ``a`` (``sig[b] > sig[a]``).
        """
        return perm_form(self.F, tuple(x), tuple(y), self.weight)

    def gram_matrix(self, nu: Sequence[int]) -> list[list]:
        return gram_matrix(self.F, tuple(nu), self.weight)

    def gram_matrix_perm(self, nu: Sequence[int]) -> list[list]:
        ws = self.F.words(nu)
        return [[self.form_S_Lambda_perm(u, v) for v in ws] for u in ws]

    def form_S_1(self, a: dict, b: dict):
        """``S_{1;Lambda}`` on ``F (x) V(Lambda)``: ``S(x, x') S_Lambda(y, y')``."""
        acc = self.ring.zero
        F = self.F
        for (x, y), c in a.items():
            for (x2, y2), c2 in b.items():
                s = F._S_words(x, x2)
                if not s:
                    continue
                t = self._S_words(y, y2)
                if t:
                    acc = acc + c * c2 * s * t
        return acc

    # -- coaction: defining formula ------------------------------------------
    def t_op(self, i: int, X: dict) -> dict:
        """``t_i(x (x) y) = theta_i x (x) y - z^{i.nu - 2<lambda,i>} x theta_i (x) y + z^{i.nu} x (x) theta_i y``."""
        out: dict = {}
        d = self.F.dot[i]
        zeta = self.F.zeta
        for (x, y), c in X.items():
            inu = sum(d[a] for a in x)
            lam_i = self.pairing_after(i, y)
            add_term(out, ((i,) + x, y), c)
            add_term(out, (x + (i,), y), -c * zeta(inu - 2 * lam_i))
            add_term(out, (x, (i,) + y), c * zeta(inu))
        return out

    def coaction(self, m: dict) -> dict:
        out: dict = {}
        for w, c in m.items():
            for key, v in self._coaction_word(tuple(w)).items():
                add_term(out, key, c * v)
        return out

    def _coaction_word(self, w: tuple) -> dict:
        N = len(w)
        out: dict = {((), w): self.ring.one}
        # index j <-> stored position N - j
        for j in range(1, N + 1):
            s = N - j
            b = self.bracket(self.pairing_after(w[s], w[s + 1 :]))
            if not b:
                continue
            X = {((w[s],), w[s + 1 :]): b}
            for t in range(s - 1, -1, -1):
                X = self.t_op(w[t], X)
            for key, v in X.items():
                add_term(out, key, v)
        return out

    # -- coaction via quantum commutators --------------------------------------
    def ad_theta(self, i: int, lam: Sequence[int], x: dict) -> dict:
        """``theta_i x - z^{i.nu - 2<lam,i>} x theta_i`` for ``x`` of degree ``nu``."""
        if not x:
            return {}
        nu = self.F.degree(x)
        inu = sum(self.F.dot[i][a] * n for a, n in enumerate(nu))
        f = self.F.zeta(inu - 2 * lam[i])
        out: dict = {}
        for w, c in x.items():
            add_term(out, (i,) + w, c)
            add_term(out, w + (i,), -c * f)
        return out

    def quantum_commutator(self, word: Sequence[int], Q: Iterable[int]) -> dict:
        """``[theta_{I,Q,Lambda}]`` for ``Q`` a set of 1-based indices (``i_k = word[N-k]``)."""
        word = tuple(word)
        N = len(word)
        Q = sorted(set(Q))
        if not Q:
            raise EmptySubset("Q must be nonempty")
        if Q[0] < 1 or Q[-1] > N:
            raise ValueError(f"Q must lie in [1, {N}]")

        def letter(k: int) -> int:
            return word[N - k]

        d = self.F.dot
        rank = self.F.rank
        qset = set(Q)
        # braiding of moving the Q letters to the front (display order)
        pos = [N - k for k in Q]
        e = 0
        for p in pos:
            for s in range(p):
                if N - s not in qset:
                    e += d[word[s]][word[p]]
        x = {(letter(Q[0]),): self.ring.one}
        used = {Q[0]}
        for ja in Q[1:]:
            lam = list(self.weight)
            for k in range(1, ja):
                if k not in used:
                    a = letter(k)
                    for i in range(rank):
                        lam[i] -= d[i][a]
            x = self.ad_theta(letter(ja), lam, x)
            used.add(ja)
        f = self.F.zeta(e)
        return {w: f * c for w, c in x.items() if f * c}

    def coaction_via_commutators(self, m: dict) -> dict:
        out: dict = {}
        for w, c in m.items():
            w = tuple(w)
            N = len(w)
            add_term(out, ((), w), c)
            for size in range(1, N + 1):
                for Q in _subsets(N, size):
                    j = Q[0]
                    b = self.bracket(self.pairing_after(w[N - j], w[N - j + 1 :]))
                    if not b:
                        continue
                    rest = tuple(w[N - k] for k in range(N, 0, -1) if k not in Q)
                    for x, v in self.quantum_commutator(w, Q).items():
                        add_term(out, (x, rest), c * b * v)
        return out

    def adjdelta_check(self, i: int, j: int, lam: Sequence[int], x: dict) -> dict:
        """Residual of the commutation of ``delta_i`` with ``ad_{theta_j, lam}``; zero when the identity holds."""
        F = self.F
        nu = F.degree(x)
        lhs = F.delta_i(i, self.ad_theta(j, lam, x))
        second = {}
        if x:
            dx = F.delta_i(i, x)
            if dx:
                second = self.ad_theta(j, lam, dx)
        out = dict(lhs)
        zij = F.zeta(F.dot[i][j])
        for w, c in second.items():
            add_term(out, w, -zij * c)
        if i == j:
            arg = lam[i] - sum(F.dot[i][a] * n for a, n in enumerate(nu))
            b = self.bracket(arg)
            for w, c in x.items():
                add_term(out, w, -b * c)
        return out

    # -- coassociativity ------------------------------------------------------
    def coassociativity_residual(self, m: dict) -> dict:
        """``(1 (x) Delta_Lambda) Delta_Lambda - (Delta (x) 1) Delta_Lambda`` with keys ``(a, b, y)``."""
        F = self.F
        D = self.coaction(m)
        out: dict = {}
        for (x, y), c in D.items():
            for (b, y2), c2 in self._coaction_word(y).items():
                add_term(out, (x, b, y2), c * c2)
            for (a, b), c2 in F.coproduct({x: F.ring.one}).items():
                add_term(out, (a, b, y), -c * c2)
        return out


def _subsets(N: int, size: int):
    return [tuple(q) for q in combinations(range(1, N + 1), size)]
