"""Bar complexes ``C_A(M)`` for ``A`` the free algebra or its quotient ``f``.

A chain in ``C^{-r}`` is stored as the tuple ``(a_r, ..., a_1, y_0, ..., y_{n-1})``
of basis labels: words for the free algebra and Verma modules, representative
words for ``f`` and ``L(Lambda)``.  The differential is

    d(a_r|...|a_1|m) = sum_{p=1}^{r-1} (-1)^p a_r|...|a_{p+1} a_p|...|m + a_r|...|a_2|a_1 m

with the sign of the last term as written.  Matrices map ``C^{-r}`` (columns)
to ``C^{-r+1}`` (rows) inside one multidegree.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import linalg
from .cartan import degrees_of_depth, sub_degrees
from .free_algebra import FreeAlgebra, add_term
from .quotients import IrreducibleModule, QuotientAlgebra
from .tensor import TensorModule
from .verma import VermaModule


class ConfigError(ValueError):
    pass


class WindowExceeded(ValueError):
    pass


class NotARefinement(ValueError):
    pass


def compositions(nu: tuple, r: int, n: int) -> list[tuple]:
    """``(nu_r, ..., nu_1, mu_0, ..., mu_{n-1})`` summing to ``nu`` with ``nu_p != 0``."""
    out = []

    def rec(rest, k, acc):
        if k == r + n - 1:
            if k < r and not any(rest):
                return
            out.append(tuple(acc) + (rest,))
            return
        for part in sub_degrees(rest):
            if k < r and not any(part):
                continue
            rec(tuple(a - b for a, b in zip(rest, part)), k + 1, acc + [part])

    if r + n == 0:
        return [()] if not any(nu) else []
    rec(tuple(nu), 0, [])
    return out


@dataclass
class GradedComplex:
    nu: tuple
    bases: dict = field(default_factory=dict)  # r -> list of chain labels
    differentials: dict = field(default_factory=dict)  # r -> matrix C^{-r} -> C^{-r+1}

    def dims(self) -> dict:
        return {r: len(b) for r, b in self.bases.items()}


class HochschildComplex:
    """Cells of ``C_A(M_0 (x) ... (x) M_{n-1})`` over multidegrees ``nu``."""

    def __init__(
        self,
        F: FreeAlgebra,
        weights: Sequence[Sequence[int]],
        algebra: str = "F",
        module: str = "verma",
        depth_max: int = 4,
    ):
        if algebra not in ("F", "f"):
            raise ConfigError(f"algebra must be 'F' or 'f', got {algebra!r}")
        if module not in ("verma", "irreducible"):
            raise ConfigError(f"module must be 'verma' or 'irreducible', got {module!r}")
        if algebra == "f" and module == "verma":
            raise ConfigError("f does not act on Verma modules; use module='irreducible'")
        if (algebra == "f" or module == "irreducible") and not F.ring.is_field:
            raise ConfigError("quotients need the cyclotomic field")
        self.F = F
        self.ring = F.ring
        self.algebra = algebra
        self.module = module
        self.depth_max = depth_max
        self.T = TensorModule(F, weights)
        self.n = self.T.n
        self.fq = QuotientAlgebra(F, depth_max) if algebra == "f" else None
        self.Ls = [IrreducibleModule(V, depth_max) for V in self.T.factors] if module == "irreducible" else None
        self._basis_cache: dict = {}
        self._index_cache: dict = {}
        self._proj_cache: dict = {}
        self._d_cache: dict = {}

    # -- factor spaces --------------------------------------------------------
    def _check(self, nu):
        if sum(nu) > self.depth_max:
            raise WindowExceeded(f"{nu} exceeds the depth window {self.depth_max}")

    def algebra_labels(self, nu: tuple) -> list:
        self._check(nu)
        return self.fq.basis(nu).selected if self.fq else self.F.words(nu)

    def module_labels(self, k: int, nu: tuple) -> list:
        self._check(nu)
        return self.Ls[k].basis(nu).selected if self.Ls else self.F.words(nu)

    def _project(self, kind, word: tuple) -> dict:
        """Class of an ambient word in the factor space (identity on free factors)."""
        key = (kind, word)
        if key in self._proj_cache:
            return self._proj_cache[key]
        one = self.ring.one
        if kind == "A":
            space = self.fq
        else:
            space = self.Ls[kind] if self.Ls else None
        if space is None:
            out = {word: one}
        else:
            nu = self.F.content(word)
            B = space.basis(nu)
            coords = B.coordinates(self.ring, {word: one}, self.F.index(nu))
            out = {B.selected[k]: c for k, c in enumerate(coords) if c}
        self._proj_cache[key] = out
        return out

    # -- chain bases --------------------------------------------------------------
    def cell_basis(self, r: int, nu: Sequence[int]) -> list:
        nu = tuple(nu)
        key = (r, nu)
        if key not in self._basis_cache:
            self._check(nu)
            out = []
            for comp in compositions(nu, r, self.n):
                spaces = [self.algebra_labels(c) for c in comp[:r]]
                spaces += [self.module_labels(k, c) for k, c in enumerate(comp[r:])]
                out.extend(itertools.product(*spaces))
            self._basis_cache[key] = out
            self._index_cache[key] = {b: k for k, b in enumerate(out)}
        return self._basis_cache[key]

    def cell_index(self, r: int, nu) -> dict:
        self.cell_basis(r, nu)
        return self._index_cache[(r, tuple(nu))]

    def max_r(self, nu) -> int:
        return sum(nu)

    # -- differential -------------------------------------------------------------
    def apply_d(self, chain: tuple, r: int) -> dict:
        out: dict = {}
        one = self.ring.one
        for p in range(1, r):
            pos = r - p - 1  # index of a_{p+1}; a_p sits at pos + 1
            sign = -one if p % 2 else one
            prod = self._project("A", chain[pos] + chain[pos + 1])
            for lab, c in prod.items():
                add_term(out, chain[:pos] + (lab,) + chain[pos + 2 :], sign * c)
        if r >= 1:
            a1 = chain[r - 1]
            ys = chain[r:]
            acted = self.T.f_action({a1: one}, {ys: one})
            for zs, c in acted.items():
                parts = [self._project(k, z) for k, z in enumerate(zs)]
                for combo in itertools.product(*(p.items() for p in parts)):
                    v = c
                    for _, cz in combo:
                        v = v * cz
                    add_term(out, chain[: r - 1] + tuple(lab for lab, _ in combo), v)
        return out

    def differential(self, r: int, nu: Sequence[int]) -> list:
        """Matrix of ``d: C^{-r} -> C^{-r+1}`` in degree ``nu``."""
        nu = tuple(nu)
        key = (r, nu)
        if key in self._d_cache:
            return self._d_cache[key]
        src = self.cell_basis(r, nu)
        tgt_idx = self.cell_index(r - 1, nu) if r >= 1 else {}
        M = linalg.zeros(self.ring, len(tgt_idx), len(src))
        if r >= 1:
            for col, chain in enumerate(src):
                for lab, c in self.apply_d(chain, r).items():
                    M[tgt_idx[lab]][col] = M[tgt_idx[lab]][col] + c
        self._d_cache[key] = M
        return M

    def build(self, nu: Sequence[int]) -> GradedComplex:
        nu = tuple(nu)
        C = GradedComplex(nu)
        for r in range(self.max_r(nu) + 1):
            C.bases[r] = self.cell_basis(r, nu)
            C.differentials[r] = self.differential(r, nu)
        return C

    def _rank(self, M, rows: int, cols: int) -> int:
        if not rows or not cols:
            return 0
        return linalg.rank(self.ring, M)

    def homology(self, nu: Sequence[int]) -> list[dict]:
        nu = tuple(nu)
        top = self.max_r(nu)
        dims = [len(self.cell_basis(r, nu)) for r in range(top + 2)]
        ranks = [0] * (top + 2)
        for r in range(1, top + 1):
            ranks[r] = self._rank(self.differential(r, nu), dims[r - 1], dims[r])
        rows = []
        for r in range(top + 1):
            h = dims[r] - ranks[r] - ranks[r + 1]
            rows.append({"r": r, "nu": list(nu), "dim_C": dims[r], "dim_H": h})
        return rows

    def d_squared_zero(self, nu: Sequence[int]) -> bool:
        nu = tuple(nu)
        for r in range(2, self.max_r(nu) + 1):
            A = self.differential(r - 1, nu)
            B = self.differential(r, nu)
            if A and B and A[0] and B[0] and not linalg.is_zero_matrix(linalg.matmul(self.ring, A, B)):
                return False
        return True

    # -- the S morphism to the dual complex -------------------------------------
    def _require_free(self):
        if self.algebra != "F" or self.module != "verma":
            raise ConfigError("the S morphism starts from the free algebra with Verma modules")

    def apply_d_dual(self, chain: tuple, r: int) -> dict:
        """Differential of the dual complex on dual basis chains (``F*`` product and action)."""
        out: dict = {}
        one = self.ring.one
        F = self.F
        for p in range(1, r):
            pos = r - p - 1
            sign = -one if p % 2 else one
            prod = F.dual_multiply({chain[pos]: one}, {chain[pos + 1]: one})
            for lab, c in prod.items():
                add_term(out, chain[:pos] + (lab,) + chain[pos + 2 :], sign * c)
        if r >= 1:
            acted = self.T.dual_f_action({chain[r - 1]: one}, {chain[r:]: one})
            for zs, c in acted.items():
                add_term(out, chain[: r - 1] + zs, c)
        return out

    def dual_differential(self, r: int, nu: Sequence[int]) -> list:
        self._require_free()
        nu = tuple(nu)
        src = self.cell_basis(r, nu)
        tgt_idx = self.cell_index(r - 1, nu) if r >= 1 else {}
        M = linalg.zeros(self.ring, len(tgt_idx), len(src))
        if r >= 1:
            for col, chain in enumerate(src):
                for lab, c in self.apply_d_dual(chain, r).items():
                    M[tgt_idx[lab]][col] = M[tgt_idx[lab]][col] + c
        return M

    def s_matrix(self, r: int, nu: Sequence[int]) -> list:
        """``S_{r; Lambda_0..}`` on ``C^{-r}``: factorwise Gram matrices (block Kronecker products)."""
        self._require_free()
        nu = tuple(nu)
        basis = self.cell_basis(r, nu)
        idx = self.cell_index(r, nu)
        F = self.F
        M = linalg.zeros(self.ring, len(basis), len(basis))
        for col, chain in enumerate(basis):
            rows = []
            for k, w in enumerate(chain):
                deg = F.content(w)
                G = F.gram_matrix(deg) if k < r else self.T.factors[k - r].gram_matrix(deg)
                row = G[F.index(deg)[w]]
                rows.append([(z, v) for z, v in zip(F.words(deg), row) if v])
            for combo in itertools.product(*rows):
                v = self.ring.one
                for _, cz in combo:
                    v = v * cz
                M[idx[tuple(z for z, _ in combo)]][col] = v
        return M


def s_morphism(F: FreeAlgebra, weights, nu: Sequence[int], depth_max: int | None = None) -> list[dict]:
    """Per-cell report for ``S: C_F(V...) -> C_{F*}(V*...)`` against the ``f``-complex of ``L``'s.

    For each ``r``: commutation ``S_{r-1} d_r == d*_r S_r``, ``rank S_r`` against
    ``dim C_f^{-r}``, and the rank of the induced differential on the image
    against the rank of the ``f``-side differential.
    """
    nu = tuple(nu)
    depth_max = sum(nu) if depth_max is None else depth_max
    free = HochschildComplex(F, weights, "F", "verma", depth_max)
    quot = HochschildComplex(F, weights, "f", "irreducible", depth_max) if F.ring.is_field else None
    ring = F.ring
    rows = []
    for r in range(sum(nu) + 1):
        S_r = free.s_matrix(r, nu)
        n_src = len(S_r)
        commutes = True
        image_d_rank = 0
        if r >= 1:
            d = free.differential(r, nu)
            dd = free.dual_differential(r, nu)
            S_prev = free.s_matrix(r - 1, nu)
            if n_src and len(S_prev):
                lhs = linalg.matmul(ring, S_prev, d)
                rhs = linalg.matmul(ring, dd, S_r)
                commutes = lhs == rhs
                image_d_rank = linalg.rank(ring, rhs)
        rank_S = linalg.rank(ring, S_r) if n_src else 0
        row = {"r": r, "nu": list(nu), "dim_C": n_src, "rank_S": rank_S, "commutes": commutes, "image_d_rank": image_d_rank}
        if quot is not None:
            row["dim_C_f"] = len(quot.cell_basis(r, nu))
            dq = quot.differential(r, nu) if r >= 1 else []
            row["rank_d_f"] = linalg.rank(ring, dq) if dq and dq[0] else 0
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# combinatorial bases
# ---------------------------------------------------------------------------


def enumerate_rho(r: int, n: int, ground: Sequence) -> list[tuple]:
    """Maps ``ground -> [-n+1, r]`` (as value tuples) hitting every ``a`` in ``[1, r]``."""
    if r < 0 or n < 1:
        return []
    values = range(-n + 1, r + 1)
    need = set(range(1, r + 1))
    return [rho for rho in itertools.product(values, repeat=len(ground)) if need <= set(rho)]


def orders_refining(rho: Sequence[int]) -> list[tuple]:
    """Total orders ``tau`` (``tau[j]`` = position in ``1..N``) with ``rho(i) < rho(j) => tau(i) < tau(j)``."""
    N = len(rho)
    out = []
    for perm in itertools.permutations(range(1, N + 1)):
        if all(perm[a] < perm[b] for a in range(N) for b in range(N) if rho[a] < rho[b]):
            out.append(perm)
    return out


def refinement_basis(rho: Sequence[int], tau: Sequence[int], letters: Sequence[int], r: int, n: int) -> tuple:
    """The monomial ``theta_{rho <= tau}`` as a chain ``(a_r, ..., a_1, y_0, ..., y_{n-1})``.

    ``letters[j]`` is the generator carried by ground element ``j``; each block
    lists its letters in decreasing ``tau`` order.
    """
    N = len(rho)
    for a in range(N):
        for b in range(N):
            if rho[a] < rho[b] and not tau[a] < tau[b]:
                raise NotARefinement(f"tau={tuple(tau)} does not refine rho={tuple(rho)}")
    blocks = []
    for value in range(r, -n, -1):
        members = sorted((j for j in range(N) if rho[j] == value), key=lambda j: -tau[j])
        blocks.append(tuple(letters[j] for j in members))
    return tuple(blocks)


def refinement_basis_set(r: int, n: int, letters: Sequence[int]) -> list[tuple]:
    out = []
    for rho in enumerate_rho(r, n, letters):
        for tau in orders_refining(rho):
            out.append(refinement_basis(rho, tau, letters, r, n))
    return out


def homology_table(H: HochschildComplex, depth_max: int) -> list[dict]:
    rows = []
    for dep in range(depth_max + 1):
        for nu in degrees_of_depth(H.F.rank, dep):
            rows.extend(H.homology(nu))
    return rows
