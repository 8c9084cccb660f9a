"""Tensor products ``V(Lambda_0) (x) ... (x) V(Lambda_{n-1})`` and their duals.

An element is a dict from ``n``-tuples of words to scalars.  The free algebra
acts through the iterated coproduct and the twisted action of ``F^{(x) n}``;
the graded duals carry the matching action of ``F*`` (dual to the coaction on
each factor, with the same twist and with ``F*`` comultiplied by splitting
words).
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .free_algebra import FreeAlgebra, NonHomogeneousInput, add_term
from .verma import VermaModule


class LengthMismatch(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class TensorModule:
    def __init__(self, F: FreeAlgebra, weights: Sequence[Sequence[int]]):
        if not weights:
            raise LengthMismatch("need at least one weight")
        self.F = F
        self.ring = F.ring
        self.factors = [VermaModule(F, w) for w in weights]
        self.n = len(self.factors)
        self._dual_cache: dict = {}

    @property
    def weights(self) -> list[tuple[int, ...]]:
        return [V.weight for V in self.factors]

    def highest_vector(self) -> dict:
        return {((),) * self.n: self.ring.one}

    def _twist_exponent(self, us: Sequence[tuple], xs: Sequence[tuple]) -> int:
        """``-sum_{j<i} <lambda_j, nu_i>`` with ``lambda_j`` the X-degree of ``xs[j]``."""
        e = 0
        for i in range(1, len(us)):
            ui = us[i]
            if not ui:
                continue
            for j in range(i):
                V = self.factors[j]
                e -= sum(V.pairing_after(a, xs[j]) for a in ui)
        return e

    def tensor_algebra_action(self, u: Sequence[dict], x: dict) -> dict:
        """Action of ``u_0 (x) ... (x) u_{n-1}`` (homogeneous factors)."""
        if len(u) != self.n:
            raise LengthMismatch(f"expected {self.n} factors, got {len(u)}")
        for part in u:
            if part:
                self.F.degree(part)
        out: dict = {}
        zeta = self.F.zeta
        for terms in itertools.product(*(list(p.items()) for p in u)):
            us = tuple(w for w, _ in terms)
            c0 = self.ring.one
            for _, c in terms:
                c0 = c0 * c
            for xs, c in x.items():
                if len(xs) != self.n:
                    raise LengthMismatch("tensor element of the wrong length")
                key = tuple(a + b for a, b in zip(us, xs))
                add_term(out, key, c0 * c * zeta(self._twist_exponent(us, xs)))
        return out

    def f_action(self, x: dict, m: dict) -> dict:
        out: dict = {}
        zeta = self.F.zeta
        for us, c0 in self.F.iterated_coproduct(x, self.n).items():
            for xs, c in m.items():
                key = tuple(a + b for a, b in zip(us, xs))
                add_term(out, key, c0 * c * zeta(self._twist_exponent(us, xs)))
        return out

    def form_S_tensor(self, a: dict, b: dict, m: int = 0):
        """``prod S(x_i, x'_i) prod S_{Lambda_j}(y_j, y'_j)`` on ``F^{(x) m} (x) V_0 (x) ...``."""
        acc = self.ring.zero
        F = self.F
        for ka, ca in a.items():
            if len(ka) != m + self.n:
                raise ShapeMismatch(f"expected {m + self.n} tensor factors")
            for kb, cb in b.items():
                if len(kb) != len(ka):
                    raise ShapeMismatch("operands have different shapes")
                s = ca * cb
                for p in range(m):
                    s = s * F._S_words(ka[p], kb[p])
                    if not s:
                        break
                else:
                    for j in range(self.n):
                        s = s * self.factors[j]._S_words(ka[m + j], kb[m + j])
                        if not s:
                            break
                if s:
                    acc = acc + s
        return acc

    # -- dual side ----------------------------------------------------------
    def _dual_table(self, j: int, nu: tuple) -> dict:
        """``(u, y) -> [(z, c)]`` with ``c`` the coefficient of ``u (x) y`` in ``Delta_{Lambda_j}(z)``."""
        key = (j, nu)
        if key not in self._dual_cache:
            V = self.factors[j]
            table: dict = {}
            for z in self.F.words(nu):
                for (u, y), c in V._coaction_word(z).items():
                    table.setdefault((u, y), []).append((z, c))
            self._dual_cache[key] = table
        return self._dual_cache[key]

    def dual_factor_action(self, j: int, u: tuple, y: tuple) -> dict:
        """``theta*_u . theta*_y`` in ``V(Lambda_j)*``, transpose to the coaction."""
        nu = self.F.content(u + y)
        return {z: c for z, c in self._dual_table(j, nu).get((u, y), [])}

    def dual_f_action(self, phi: dict, psi: dict) -> dict:
        """Action of ``F*`` on ``V(Lambda_0)* (x) ... (x) V(Lambda_{n-1})*``."""
        out: dict = {}
        zeta = self.F.zeta
        n = self.n
        for w, c0 in phi.items():
            L = len(w)
            for cuts in itertools.combinations_with_replacement(range(L + 1), n - 1):
                bounds = (0,) + cuts + (L,)
                us = tuple(w[bounds[k] : bounds[k + 1]] for k in range(n))
                for ys, c in psi.items():
                    e = self._twist_exponent(us, ys)
                    pieces = [self.dual_factor_action(k, us[k], ys[k]) for k in range(n)]
                    if not all(pieces):
                        continue
                    f = c0 * c * zeta(e)
                    for combo in itertools.product(*(p.items() for p in pieces)):
                        v = f
                        for _, cz in combo:
                            v = v * cz
                        add_term(out, tuple(z for z, _ in combo), v)
        return out

    def s_map(self, m: dict) -> dict:
        """``m -> S(m, -)`` in the dual word basis, factorwise Gram rows."""
        out: dict = {}
        F = self.F
        for ys, c in m.items():
            rows = []
            for k, y in enumerate(ys):
                nu = F.content(y)
                G = self.factors[k].gram_matrix(nu)
                row = G[F.index(nu)[y]]
                rows.append([(z, v) for z, v in zip(F.words(nu), row) if v])
            for combo in itertools.product(*rows):
                v = c
                for _, cz in combo:
                    v = v * cz
                add_term(out, tuple(z for z, _ in combo), v)
        return out


__all__ = ["TensorModule", "LengthMismatch", "ShapeMismatch", "NonHomogeneousInput"]
