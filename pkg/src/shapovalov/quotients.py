"""Radicals of the forms, the quotients ``f = F / Ker S`` and ``L(Lambda)``, and the small quantum group.

Quotient data for one multidegree comes from the reduced row echelon form of
the (symmetric) Gram matrix: pivot columns pick the representatives (greedy
in lexicographic word order), the nonzero rows express every ambient word in
those representatives modulo the kernel, and the nullspace is the kernel.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from . import linalg
from .cartan import CartanError, add as deg_add, degrees_up_to, sub as deg_sub, unit
from .free_algebra import FreeAlgebra, add_term
from .scalars import DivisionByZero, q_factorial_i
from .verma import VermaModule


class InconsistentDepth(ValueError):
    pass


class RootOfUnityError(ValueError):
    pass


@dataclass
class QuotientBasis:
    nu: tuple
    words: list  # ambient word basis
    selected: list  # representative words
    pivots: list  # their ambient indices
    projection: list  # dim x ambient: ambient word -> coordinates on representatives
    kernel: list = field(default_factory=list)  # ambient vectors

    @property
    def dim(self) -> int:
        return len(self.selected)

    @property
    def ambient_dim(self) -> int:
        return len(self.words)

    @property
    def kernel_dim(self) -> int:
        return self.ambient_dim - self.dim

    def coordinates(self, ring, x: dict, index: dict) -> list:
        """Coordinates of the class of an ambient element ``x``."""
        out = [ring.zero] * self.dim
        for w, c in x.items():
            k = index[w]
            for r in range(self.dim):
                v = self.projection[r][k]
                if v:
                    out[r] = out[r] + c * v
        return out


def check_small_quantum_l(l: int) -> None:
    if l <= 3 or gcd(l, 6) != 1:
        raise RootOfUnityError(f"l={l}: need l > 3 and gcd(l, 6) = 1 for the small quantum group")


def _quotient(ring, nu, words, G) -> QuotientBasis:
    if not ring.is_field:
        raise TypeError("quotient bases need the cyclotomic field")
    n = len(words)
    if n == 0:
        return QuotientBasis(nu, [], [], [], [], [])
    R, piv = linalg.rref(ring, G, n)
    kernel = linalg.nullspace(ring, G, n)
    return QuotientBasis(nu, list(words), [words[p] for p in piv], piv, R, kernel)


def radical_basis_f(F: FreeAlgebra, nu: Sequence[int]) -> QuotientBasis:
    nu = tuple(nu)
    return _quotient(F.ring, nu, F.words(nu), F.gram_matrix(nu))


def radical_basis_L(V: VermaModule, nu: Sequence[int]) -> QuotientBasis:
    nu = tuple(nu)
    return _quotient(V.ring, nu, V.F.words(nu), V.gram_matrix(nu))


def gram_rank(ring, G) -> int:
    return linalg.rank(ring, G)


# ---------------------------------------------------------------------------
# the quotient algebra f
# ---------------------------------------------------------------------------


class QuotientAlgebra:
    """``f = F / Ker(S)`` truncated at a depth window."""

    def __init__(self, F: FreeAlgebra, depth_max: int):
        self.F = F
        self.ring = F.ring
        self.depth_max = depth_max
        self._bases: dict = {}

    def basis(self, nu: Sequence[int]) -> QuotientBasis:
        nu = tuple(nu)
        if sum(nu) > self.depth_max:
            raise InconsistentDepth(f"{nu} is outside the depth window {self.depth_max}")
        if nu not in self._bases:
            self._bases[nu] = radical_basis_f(self.F, nu)
        return self._bases[nu]

    def dim(self, nu: Sequence[int]) -> int:
        return self.basis(nu).dim

    def multiply_reps(self, u: tuple, v: tuple) -> list:
        """Coordinates of ``[u][v]`` for representative words ``u``, ``v``."""
        nu = self.F.content(u + v)
        B = self.basis(nu)
        return B.coordinates(self.ring, {u + v: self.ring.one}, self.F.index(nu))

    def ideal_check(self, nu: Sequence[int]) -> bool:
        """Left and right multiples of kernel vectors by generators stay in the kernel."""
        nu = tuple(nu)
        F = self.F
        B = radical_basis_f(F, nu)
        for vec in B.kernel:
            k = {w: c for w, c in zip(B.words, vec) if c}
            for i in range(F.rank):
                for prod in (F.multiply(F.generator(i), k), F.multiply(k, F.generator(i))):
                    mu = deg_add(nu, unit(F.cartan, i))
                    for w in F.words(mu):
                        if F.form_S_rec(prod, {w: self.ring.one}):
                            return False
        return True


# ---------------------------------------------------------------------------
# L(Lambda) and the small quantum group
# ---------------------------------------------------------------------------


class IrreducibleModule:
    """``L(Lambda) = V(Lambda) / Ker(S_Lambda)`` truncated at a depth window."""

    def __init__(self, V: VermaModule, depth_max: int):
        self.V = V
        self.F = V.F
        self.ring = V.ring
        self.depth_max = depth_max
        self._bases: dict = {}

    def basis(self, nu: Sequence[int]) -> QuotientBasis:
        nu = tuple(nu)
        if sum(nu) > self.depth_max or min(nu, default=0) < 0:
            raise InconsistentDepth(f"{nu} is outside the depth window {self.depth_max}")
        if nu not in self._bases:
            self._bases[nu] = radical_basis_L(self.V, nu)
        return self._bases[nu]

    def dim(self, nu: Sequence[int]) -> int:
        return self.basis(nu).dim

    def degrees(self) -> list[tuple]:
        return degrees_up_to(self.F.rank, self.depth_max)

    def total_dim(self) -> int:
        return sum(self.dim(nu) for nu in self.degrees())

    # -- generator matrices ----------------------------------------------------
    def _project_images(self, src: QuotientBasis, tgt_nu: tuple, image) -> list:
        tgt = self.basis(tgt_nu)
        idx = self.F.index(tgt_nu)
        cols = [tgt.coordinates(self.ring, image(w), idx) for w in src.selected]
        return linalg.transpose(cols, tgt.dim) if cols else [[] for _ in range(tgt.dim)]

    def theta_matrix(self, i: int, nu: Sequence[int]) -> list:
        nu = tuple(nu)
        src = self.basis(nu)
        tgt_nu = deg_add(nu, unit(self.F.cartan, i))
        return self._project_images(src, tgt_nu, lambda w: {(i,) + w: self.ring.one})

    def epsilon_matrix(self, i: int, nu: Sequence[int]) -> list:
        nu = tuple(nu)
        src = self.basis(nu)
        if nu[i] == 0:
            return []
        tgt_nu = deg_sub(nu, unit(self.F.cartan, i))
        return self._project_images(src, tgt_nu, lambda w: self.V.epsilon_i(i, {w: self.ring.one}))

    def stored_pairing(self, i: int, nu: Sequence[int]) -> int:
        """``<i, lambda>`` in stored form (``d_i`` times the coroot pairing) on ``L_nu``."""
        d = self.F.dot[i]
        return self.V.weight[i] - sum(d[a] * n for a, n in enumerate(nu))

    def K_exponent(self, i: int, nu: Sequence[int]) -> int:
        """``K_i`` acts on ``L_nu`` as ``z`` to this power."""
        s = self.stored_pairing(i, nu)
        di = self.F.cartan.d[i]
        if s % di:
            raise CartanError(f"weight pairing {s} with generator {i} is not divisible by d_i={di}")
        return s // di

    def K_scalar(self, i: int, nu: Sequence[int], power: int = 1):
        return self.ring.zeta(power * self.K_exponent(i, nu))

    def Ktilde_scalar(self, i: int, nu: Sequence[int], power: int = 1):
        return self.ring.zeta(power * self.stored_pairing(i, nu))

    # -- relation checks --------------------------------------------------------
    def shifted(self, nu: Sequence[int], plus: int | None = None, minus: int | None = None):
        """``nu + plus - minus`` or None when it leaves ``N[I]``."""
        out = list(nu)
        if plus is not None:
            out[plus] += 1
        if minus is not None:
            out[minus] -= 1
        return tuple(out) if min(out, default=0) >= 0 else None

    def compose(self, A, B, rows: int, cols: int) -> list:
        """``A @ B`` as a ``rows x cols`` matrix, treating empty factors as zero maps."""
        if not rows or not cols or not A or not B or not B[0]:
            return linalg.zeros(self.ring, rows, cols)
        return linalg.matmul(self.ring, A, B)

    def u_relation_residuals(self) -> list[dict]:
        """``eps_i theta_j - z^{i.j} theta_j eps_i - delta_ij (1 - Kt_i^{-2})`` per component."""
        ring = self.ring
        out = []
        rank = self.F.rank
        for nu in degrees_up_to(rank, self.depth_max - 1):
            n = self.dim(nu)
            if n == 0:
                continue
            for i in range(rank):
                for j in range(rank):
                    tgt = self.shifted(nu, plus=j, minus=i)
                    if tgt is None:
                        continue
                    m = self.dim(tgt)
                    up = self.shifted(nu, plus=j)
                    M = self.compose(self.epsilon_matrix(i, up), self.theta_matrix(j, nu), m, n)
                    down = self.shifted(nu, minus=i)
                    if down is not None:
                        P = self.compose(self.theta_matrix(j, down), self.epsilon_matrix(i, nu), m, n)
                        M = linalg.sub(M, linalg.scale(ring, ring.zeta(self.F.dot[i][j]), P))
                    if i == j:
                        c = ring.one - self.Ktilde_scalar(i, nu, -2)
                        M = linalg.sub(M, linalg.scale(ring, c, linalg.identity(ring, n)))
                    out.append({"nu": nu, "i": i, "j": j, "zero": linalg.is_zero_matrix(M)})
        return out

    def singular_vector_check(self, depth_max: int | None = None) -> list[dict]:
        """For ``nu != 0``: the joint kernel of all ``eps_i`` on ``L_nu`` is zero."""
        depth_max = self.depth_max if depth_max is None else depth_max
        rows = []
        for nu in degrees_up_to(self.F.rank, depth_max):
            if sum(nu) == 0:
                continue
            n = self.dim(nu)
            if n == 0:
                rows.append({"nu": nu, "dim": 0, "pass": True})
                continue
            stacked = []
            for i in range(self.F.rank):
                if nu[i]:
                    stacked.extend(self.epsilon_matrix(i, nu))
            r = linalg.rank(self.ring, stacked) if stacked else 0
            rows.append({"nu": nu, "dim": n, "pass": r == n})
        return rows


class RImages:
    """``E_i = z_i^2/(z_i - z_i^-1) eps_i Kt_i`` and ``F_i = theta_i`` on ``L(Lambda)``."""

    def __init__(self, L: IrreducibleModule):
        if not L.ring.is_field:
            raise TypeError("R images need the cyclotomic field")
        self.L = L
        self.ring = L.ring
        self.d = L.F.cartan.d

    def coefficient(self, i: int):
        ring = self.ring
        di = self.d[i]
        den = ring.zeta(di) - ring.zeta(-di)
        if not den:
            raise DivisionByZero("z_i - z_i^-1 vanishes")
        return ring.zeta(2 * di) / den

    def F_matrix(self, i: int, nu) -> list:
        return self.L.theta_matrix(i, nu)

    def E_matrix(self, i: int, nu) -> list:
        nu = tuple(nu)
        if not nu[i]:
            return []
        E = self.L.epsilon_matrix(i, nu)
        return linalg.scale(self.ring, self.coefficient(i) * self.L.Ktilde_scalar(i, nu), E)

    def commutator_residuals(self) -> list[dict]:
        """``E_i F_j - F_j E_i - delta_ij (Kt_i - Kt_i^-1)/(z_i - z_i^-1)`` per component."""
        L, ring = self.L, self.ring
        rank = L.F.rank
        out = []
        for nu in degrees_up_to(rank, L.depth_max - 1):
            n = L.dim(nu)
            if not n:
                continue
            for i in range(rank):
                for j in range(rank):
                    tgt = L.shifted(nu, plus=j, minus=i)
                    if tgt is None:
                        continue
                    m = L.dim(tgt)
                    up = L.shifted(nu, plus=j)
                    M = L.compose(self.E_matrix(i, up), self.F_matrix(j, nu), m, n)
                    down = L.shifted(nu, minus=i)
                    if down is not None:
                        P = L.compose(self.F_matrix(j, down), self.E_matrix(i, nu), m, n)
                        M = linalg.sub(M, P)
                    if i == j:
                        di = self.d[i]
                        c = (L.Ktilde_scalar(i, nu) - L.Ktilde_scalar(i, nu, -1)) / (ring.zeta(di) - ring.zeta(-di))
                        M = linalg.sub(M, linalg.scale(ring, c, linalg.identity(ring, n)))
                    out.append({"nu": nu, "i": i, "j": j, "zero": linalg.is_zero_matrix(M)})
        return out

    def power_matrix(self, i: int, power: int, nu, which: str = "F") -> tuple[tuple | None, list]:
        """Matrix of ``F_i^power`` (or ``E_i^power``) on ``L_nu`` and its target degree."""
        L = self.L
        cur = tuple(nu)
        M = linalg.identity(self.ring, L.dim(cur))
        for _ in range(power):
            nxt = L.shifted(cur, plus=i) if which == "F" else L.shifted(cur, minus=i)
            if nxt is None:
                return None, []
            step = self.F_matrix(i, cur) if which == "F" else self.E_matrix(i, cur)
            M = L.compose(step, M, L.dim(nxt), L.dim(nu))
            cur = nxt
        return cur, M

    def power_vanishes(self, i: int, power: int, which: str = "F") -> bool:
        """``F_i^power`` (or ``E_i^power``) is zero on every component it maps inside the window."""
        L = self.L
        for nu in L.degrees():
            if not L.dim(nu):
                continue
            if which == "F" and sum(nu) + power > L.depth_max:
                continue
            _, M = self.power_matrix(i, power, nu, which)
            if M and not linalg.is_zero_matrix(M):
                return False
        return True


# ---------------------------------------------------------------------------
# Serre relations, theta powers, determinants
# ---------------------------------------------------------------------------


def serre_element(F: FreeAlgebra, i: int, j: int) -> dict:
    """``sum_p (-1)^p theta_i^(p) theta_j theta_i^(m-p)`` with ``m = 1 - <i, j'>``.

    Divided powers use ``[p]_i^!``; in the simply-laced case this is the
    classical element divided by ``[2]^!`` (``i.j = -1``) or the plain
    commutator (``i.j = 0``).
    """
    ring = F.ring
    m = 1 - F.cartan.cartan_integer(i, j)
    di = F.cartan.d[i]
    top = q_factorial_i(ring, m, di)
    out: dict = {}
    for p in range(m + 1):
        den = q_factorial_i(ring, p, di) * q_factorial_i(ring, m - p, di)
        # over the Laurent ring the element is scaled by [m]_i^! (Gaussian binomials)
        c = ring.one / den if ring.is_field else top.divexact(den)
        if p % 2:
            c = -c
        add_term(out, (i,) * p + (j,) + (i,) * (m - p), c)
    return out


def in_kernel_S(F: FreeAlgebra, x: dict) -> tuple[bool, tuple | None]:
    """Whether ``x`` pairs to zero with every word of its degree; else a witness word."""
    nu = F.degree(x)
    for w in F.words(nu):
        if F.form_S_rec(x, {w: F.ring.one}):
            return False, w
    return True, None


def serre_membership_check(F: FreeAlgebra) -> list[dict]:
    """Kernel membership of the simply-laced relations for each ordered pair ``i != j``."""
    if not F.cartan.simply_laced:
        raise CartanError("the simply-laced Serre check needs a simply-laced datum")
    ring = F.ring
    rows = []
    for i in range(F.rank):
        for j in range(F.rank):
            if i == j:
                continue
            ij = F.dot[i][j]
            if ij == 0:
                x = {(i, j): ring.one, (j, i): -ring.one}
            else:
                x = {(i, i, j): ring.one, (i, j, i): -(ring.zeta(1) + ring.zeta(-1)), (j, i, i): ring.one}
            ok, witness = in_kernel_S(F, x)
            rows.append({"i": i, "j": j, "dot": ij, "pass": ok, "witness": witness})
    return rows


def nsl_serre_check(F: FreeAlgebra) -> list[dict]:
    """Divided-power Serre elements lie in ``Ker(S)`` for each ordered pair ``i != j``."""
    rows = []
    for i in range(F.rank):
        for j in range(F.rank):
            if i == j:
                continue
            x = serre_element(F, i, j)
            ok, witness = in_kernel_S(F, x)
            rows.append({"i": i, "j": j, "order": 1 - F.cartan.cartan_integer(i, j), "pass": ok, "witness": witness})
    return rows


def theta_power_formula(ring, ii: int, a: int):
    """``prod_{p=1}^a (1 - z^{p ii}) / (1 - z^{ii})``."""
    den = ring.one - ring.zeta(ii)
    out = ring.one
    for p in range(1, a + 1):
        num = ring.one - ring.zeta(p * ii)
        if den:
            out = out * (num / den if ring.is_field else num.divexact(den))
        else:
            out = out * p  # z^{ii} = 1: the geometric sum has p equal terms
    return out


def theta_power_values(F: FreeAlgebra, i: int, a_max: int) -> list[dict]:
    ring = F.ring
    ii = F.dot[i][i]
    rows = []
    for a in range(1, a_max + 1):
        w = (i,) * a
        val = F._S_words(w, w)
        formula = theta_power_formula(ring, ii, a)
        rows.append({"a": a, "value": val, "formula": formula, "match": val == formula, "zero": val.is_zero()})
    return rows


def shapovalov_det(obj, nu: Sequence[int], max_dim: int | None = 200):
    """Exact determinant of the Gram matrix of ``S`` (free algebra) or ``S_Lambda`` (Verma)."""
    G = obj.gram_matrix(tuple(nu))
    return linalg.det(obj.ring, G, max_dim)
