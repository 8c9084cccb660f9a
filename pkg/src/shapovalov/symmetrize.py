"""Unfoldings ``pi: J -> I`` and the averaging maps.

``J`` is the disjoint union of the fibers ``pi^{-1}(i)``, numbered ``0..N-1``
in ``(i, copy)`` order, with the pulled-back form ``j.j' = pi(j).pi(j')`` and
weights ``Lambda o pi``.  Averaging sends a word over ``I`` (or a tensor
chain, through the concatenation identification) to the sum of all its lifts
that use every element of ``J`` exactly once.  The dual averaging is
precomposition with ``pi``, so a square ``S_J(a(x), y) == S_I(x, pi(y))`` is
checked for every ``J``-side basis element ``y``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from . import linalg
from .cartan import CartanDatum, degrees_up_to, from_matrix
from .free_algebra import FreeAlgebra, add_term, lin_equal
from .hochschild import HochschildComplex
from .tensor import TensorModule
from .verma import VermaModule


class DegreeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Unfolding:
    nu: tuple
    pi: tuple  # pi[j] = generator of I
    labels: tuple  # (i, copy) per element of J

    @property
    def size(self) -> int:
        return len(self.pi)

    @property
    def sigma_order(self) -> int:
        out = 1
        for n in self.nu:
            out *= factorial(n)
        return out

    def fibers(self) -> list[list[int]]:
        return [[j for j, i in enumerate(self.pi) if i == k] for k in range(len(self.nu))]

    def cartan(self, base: CartanDatum) -> CartanDatum:
        d = base.dot
        return from_matrix([[d[a][b] for b in self.pi] for a in self.pi], f"{base.name}^pi")

    def weight(self, lam: Sequence[int]) -> tuple[int, ...]:
        return tuple(lam[i] for i in self.pi)

    def sigma_group(self) -> list[tuple[int, ...]]:
        """Fiber-preserving bijections of ``J`` as tuples ``sigma[j]``."""
        fibers = self.fibers()
        out = []
        for choice in itertools.product(*(itertools.permutations(f) for f in fibers)):
            sigma = [0] * self.size
            for fib, img in zip(fibers, choice):
                for a, b in zip(fib, img):
                    sigma[a] = b
            out.append(tuple(sigma))
        return out


def unfold(nu: Sequence[int]) -> Unfolding:
    nu = tuple(nu)
    pi, labels = [], []
    for i, n in enumerate(nu):
        for c in range(n):
            pi.append(i)
            labels.append((i, c))
    return Unfolding(nu, tuple(pi), tuple(labels))


def lifts(U: Unfolding, word: Sequence[int]) -> list[tuple]:
    """All bijective lifts ``(j_1..j_N)`` with ``pi(j_p) = word[p]``."""
    word = tuple(word)
    counts = [0] * len(U.nu)
    for a in word:
        counts[a] += 1
    if tuple(counts) != U.nu:
        raise DegreeMismatch(f"word content {tuple(counts)} differs from {U.nu}")
    fibers = U.fibers()
    out = []
    for choice in itertools.product(*(itertools.permutations(f) for f in fibers)):
        its = [iter(c) for c in choice]
        out.append(tuple(next(its[a]) for a in word))
    return out


def average(U: Unfolding, x: dict) -> dict:
    out: dict = {}
    for w, c in x.items():
        for lift in lifts(U, w):
            add_term(out, lift, c)
    return out


def average_chain(U: Unfolding, X: dict) -> dict:
    """Averaging on tensor chains: lift the concatenation, then split at the same lengths."""
    out: dict = {}
    for key, c in X.items():
        lengths = [len(w) for w in key]
        for lift in lifts(U, tuple(a for w in key for a in w)):
            parts, pos = [], 0
            for n in lengths:
                parts.append(lift[pos : pos + n])
                pos += n
            add_term(out, tuple(parts), c)
    return out


def project(U: Unfolding, y: dict) -> dict:
    out: dict = {}
    for w, c in y.items():
        add_term(out, tuple(U.pi[j] for j in w), c)
    return out


def project_chain(U: Unfolding, Y: dict) -> dict:
    out: dict = {}
    for key, c in Y.items():
        add_term(out, tuple(tuple(U.pi[j] for j in w) for w in key), c)
    return out


def act_sigma(sigma: Sequence[int], y: dict) -> dict:
    return {tuple(sigma[j] for j in w): c for w, c in y.items()}


def act_sigma_chain(sigma: Sequence[int], Y: dict) -> dict:
    return {tuple(tuple(sigma[j] for j in w) for w in key): c for key, c in Y.items()}


# ---------------------------------------------------------------------------
# squares
# ---------------------------------------------------------------------------


def _split_words(word: tuple, k: int) -> list[tuple]:
    out = []
    for cuts in itertools.combinations_with_replacement(range(len(word) + 1), k - 1):
        b = (0,) + cuts + (len(word),)
        out.append(tuple(word[b[t] : b[t + 1]] for t in range(k)))
    return out


class Symmetrizer:
    """I-side and J-side structures for one multidegree."""

    def __init__(self, F: FreeAlgebra, nu: Sequence[int]):
        self.F = F
        self.ring = F.ring
        self.U = unfold(nu)
        self.FJ = FreeAlgebra(self.U.cartan(F.cartan), F.ring)
        self.J_words = list(itertools.permutations(range(self.U.size)))

    def averaging_is_isomorphism(self) -> dict:
        """Injective, lands in invariants, and its image has the dimension of the invariants."""
        U, ring = self.U, self.ring
        I_words = self.F.words(U.nu)
        idx = {w: k for k, w in enumerate(self.J_words)}
        cols = []
        invariant = True
        group = U.sigma_group()
        for w in I_words:
            a = average(U, {w: ring.one})
            if any(not lin_equal(act_sigma(s, a), a) for s in group):
                invariant = False
            col = [ring.zero] * len(self.J_words)
            for v, c in a.items():
                col[idx[v]] = c
            cols.append(col)
        rank = linalg.rank(ring, cols) if cols else 0
        orbits = len(self.J_words) // U.sigma_order if self.J_words else 1
        composite = all(
            lin_equal(project(U, average(U, {w: ring.one})), {w: ring.one * U.sigma_order}) for w in I_words
        )
        return {
            "injective": rank == len(I_words),
            "invariant": invariant,
            "image_is_invariants": rank == orbits,
            "project_average": composite,
        }

    def s_square(self, lam: Sequence[int] | None = None) -> bool:
        """``S_J(a(x), y) == S_I(x, pi(y))`` for all words ``x`` and all ``J``-words ``y``."""
        U, ring = self.U, self.ring
        if lam is None:
            SI, SJ = self.F._S_words, self.FJ._S_words
        else:
            SI = VermaModule(self.F, lam)._S_words
            SJ = VermaModule(self.FJ, U.weight(lam))._S_words
        for x in self.F.words(U.nu):
            ax = average(U, {x: ring.one})
            for y in self.J_words:
                lhs = ring.zero
                for w, c in ax.items():
                    s = SJ(w, y)
                    if s:
                        lhs = lhs + c * s
                if lhs != SI(x, tuple(U.pi[j] for j in y)):
                    return False
        return True

    def coaction_square(self, lam: Sequence[int]) -> bool:
        """``Delta_{pi Lambda} o a == a o Delta_Lambda`` on every word of degree ``nu``."""
        U, ring = self.U, self.ring
        VI = VermaModule(self.F, lam)
        VJ = VermaModule(self.FJ, U.weight(lam))
        for x in self.F.words(U.nu):
            lhs = VJ.coaction(average(U, {x: ring.one}))
            rhs = average_chain(U, VI.coaction({x: ring.one}))
            if not lin_equal(lhs, rhs):
                return False
        return True

    def mfold_square(self, m: int, weights: Sequence[Sequence[int]]) -> bool:
        """``S_{m; pi Lambda..}(a(X), Y) == S_{m; Lambda..}(X, pi(Y))`` on all chains of degree ``nu``."""
        U, ring = self.U, self.ring
        TI = TensorModule(self.F, weights)
        TJ = TensorModule(self.FJ, [U.weight(w) for w in weights])
        k = m + len(weights)
        I_chains = {c for w in self.F.words(U.nu) for c in _split_words(w, k)}
        J_chains = {c for w in self.J_words for c in _split_words(w, k)}
        for X in sorted(I_chains):
            aX = average_chain(U, {X: ring.one})
            for Y in sorted(J_chains):
                if tuple(len(p) for p in Y) != tuple(len(p) for p in X):
                    continue
                lhs = TJ.form_S_tensor(aX, {Y: ring.one}, m)
                rhs = TI.form_S_tensor({X: ring.one}, project_chain(U, {Y: ring.one}), m)
                if lhs != rhs:
                    return False
        return True

    def hochschild_square(self, weights: Sequence[Sequence[int]]) -> list[dict]:
        """Averaging commutes with the bar differentials; I-side and invariant J-side homology agree."""
        U, ring = self.U, self.ring
        N = U.size
        HI = HochschildComplex(self.F, weights, "F", "verma", N)
        HJ = HochschildComplex(self.FJ, [U.weight(w) for w in weights], "F", "verma", N)
        chi = (1,) * N
        rows = []
        ranks_I, ranks_J, dims = {}, {}, {}
        for r in range(N + 1):
            basis = HI.cell_basis(r, U.nu)
            dims[r] = len(basis)
            commutes = True
            avg_cols = []
            jidx = HJ.cell_index(r, chi)
            for chain in basis:
                a = average_chain(U, {chain: ring.one})
                col = [ring.zero] * len(jidx)
                for key, c in a.items():
                    col[jidx[key]] = c
                avg_cols.append(col)
                if r >= 1:
                    lhs: dict = {}
                    for key, c in a.items():
                        for k2, c2 in HJ.apply_d(key, r).items():
                            add_term(lhs, k2, c * c2)
                    rhs = average_chain(U, HI.apply_d(chain, r))
                    if not lin_equal(lhs, rhs):
                        commutes = False
            # rank of d_J restricted to the averaged (invariant) subspace equals rank of d_I
            if r >= 1 and basis:
                dJ = HJ.differential(r, chi)
                A = linalg.transpose(avg_cols, len(jidx))
                ranks_J[r] = linalg.rank(ring, linalg.matmul(ring, dJ, A)) if dJ and dJ[0] else 0
                dI = HI.differential(r, U.nu)
                ranks_I[r] = linalg.rank(ring, dI) if dI and dI[0] else 0
            else:
                ranks_I[r] = ranks_J[r] = 0
            inj = linalg.rank(ring, avg_cols) == len(basis) if basis else True
            rows.append({"r": r, "commutes": commutes, "injective": inj})
        for row in rows:
            r = row["r"]
            hI = dims[r] - ranks_I[r] - ranks_I.get(r + 1, 0)
            hJ = dims[r] - ranks_J[r] - ranks_J.get(r + 1, 0)
            row.update({"dim_H_I": hI, "dim_H_J_invariant": hJ})
        return rows


def check_squares(F: FreeAlgebra, nu: Sequence[int], weights: Sequence[Sequence[int]], m: int = 1) -> dict:
    sym = Symmetrizer(F, nu)
    report = {"nu": list(sym.U.nu), "S_F": sym.s_square(None)}
    report["S_V"] = all(sym.s_square(w) for w in weights)
    report["coaction"] = all(sym.coaction_square(w) for w in weights)
    report["mfold"] = sym.mfold_square(m, weights)
    report["pass"] = all(report[k] for k in ("S_F", "S_V", "coaction", "mfold"))
    return report


def check_all_squares(F: FreeAlgebra, depth_max: int, weights, m: int = 1) -> list[dict]:
    return [check_squares(F, nu, weights, m) for nu in degrees_up_to(F.rank, depth_max)]
