"""Invariant batteries behind ``shapovalov verify``.

Each suite returns a list of check records ``{"suite", "check", "pass", ...}``;
a failing record carries a ``counterexample`` with the inputs and the residual.
Setting ``SHAPOVALOV_CORRUPT_COACTION_SIGN=1`` (or ``corrupt=True``) flips the
sign of the middle term of the ``t_i`` operators, a negative control for the
coaction suite.
"""
from __future__ import annotations

import itertools
import os
from typing import Sequence

from .cartan import degrees_up_to, minus_rho
from .free_algebra import FreeAlgebra, add_term, lin_equal, lin_sub
from .hochschild import HochschildComplex
from .quotients import IrreducibleModule, nsl_serre_check, serre_membership_check, theta_power_values
from .symmetrize import check_squares
from .verma import VermaModule

SUITES = ("forms", "coaction", "serre", "hochschild", "symmetrize")


class CorruptedVerma(VermaModule):
    """``t_i`` with the sign of its middle term flipped."""

    def t_op(self, i, X):
        out = {}
        d = self.F.dot[i]
        zeta = self.F.zeta
        for (x, y), c in X.items():
            inu = sum(d[a] for a in x)
            lam_i = self.pairing_after(i, y)
            add_term(out, ((i,) + x, y), c)
            add_term(out, (x + (i,), y), c * zeta(inu - 2 * lam_i))
            add_term(out, (x, (i,) + y), c * zeta(inu))
        return out


def corruption_requested() -> bool:
    return os.environ.get("SHAPOVALOV_CORRUPT_COACTION_SIGN", "").strip() not in ("", "0")


def _words(rank: int, depth: int):
    for d in range(depth + 1):
        yield from itertools.product(range(rank), repeat=d)


def _record(suite, check, ok, ring=None, **cex):
    rec = {"suite": suite, "check": check, "pass": bool(ok)}
    if not ok:
        rec["counterexample"] = {k: _plain(v, ring) for k, v in cex.items()}
    return rec


def _plain(v, ring):
    if isinstance(v, tuple):
        return [_plain(x, ring) for x in v]
    if isinstance(v, list):
        return [_plain(x, ring) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x, ring) for k, x in v.items()}
    if ring is not None and hasattr(v, "is_zero"):
        return ring.serialize(v)
    return v


def suite_forms(F: FreeAlgebra, weights, depth: int) -> list[dict]:
    ring = F.ring
    out = []
    bad = None
    for nu in degrees_up_to(F.rank, depth):
        ws = F.words(nu)
        G = F.gram_matrix(nu)
        for a, u in enumerate(ws):
            for b, v in enumerate(ws):
                p = F.form_S_perm(u, v)
                if not (p == F._S_words(u, v) == G[a][b] == G[b][a]):
                    bad = (u, v, p, F._S_words(u, v))
                    break
            if bad:
                break
        if bad:
            break
    out.append(_record("forms", "S perm == rec == gram, symmetric", bad is None, ring,
                       **({"x": bad[0], "y": bad[1], "perm": bad[2], "rec": bad[3]} if bad else {})))
    for lam in weights:
        V = VermaModule(F, lam)
        bad = None
        for nu in degrees_up_to(F.rank, depth):
            ws = F.words(nu)
            for u in ws:
                for v in ws:
                    p = V.form_S_Lambda_perm(u, v)
                    if p != V._S_words(u, v) or V._S_words(u, v) != V._S_words(v, u):
                        bad = (u, v, p, V._S_words(u, v))
                        break
                if bad:
                    break
            if bad:
                break
        out.append(_record("forms", f"S_Lambda perm == rec, Lambda={list(lam)}", bad is None, ring,
                           **({"x": bad[0], "y": bad[1], "perm": bad[2], "rec": bad[3]} if bad else {})))
    return out


def suite_coaction(F: FreeAlgebra, weights, depth: int, corrupt: bool | None = None) -> list[dict]:
    corrupt = corruption_requested() if corrupt is None else corrupt
    cls = CorruptedVerma if corrupt else VermaModule
    ring = F.ring
    out = []
    for lam in weights:
        V = cls(F, lam)
        fails = {"formula": None, "coassoc": None, "shapovalov": None}
        for w in _words(F.rank, depth):
            m = {w: ring.one}
            D = V.coaction(m)
            if fails["formula"] is None:
                C = V.coaction_via_commutators(m)
                if not lin_equal(D, C):
                    fails["formula"] = {"word": w, "residual": lin_sub(D, C)}
            if fails["coassoc"] is None:
                res = V.coassociativity_residual(m)
                if res:
                    fails["coassoc"] = {"word": w, "residual": res}
            if fails["shapovalov"] is None:
                for k in range(len(w) + 1):
                    for x in itertools.product(range(F.rank), repeat=k):
                        for y in itertools.product(range(F.rank), repeat=len(w) - k):
                            lhs = V._S_words(x + y, w)
                            rhs = V.form_S_1({(x, y): ring.one}, D)
                            if lhs != rhs:
                                fails["shapovalov"] = {"x": x, "y": y, "z": w, "lhs": lhs, "rhs": rhs}
                                break
                        if fails["shapovalov"]:
                            break
                    if fails["shapovalov"]:
                        break
        names = {
            "formula": "coaction == commutator formula",
            "coassoc": "coaction coassociative",
            "shapovalov": "S_Lambda(xy, z) == S_1(x (x) y, coaction z)",
        }
        for key, label in names.items():
            f = fails[key]
            out.append(_record("coaction", f"{label}, Lambda={list(lam)}", f is None, ring, **(f or {})))
    return out


def suite_serre(F: FreeAlgebra, weights, depth: int) -> list[dict]:
    ring = F.ring
    out = []
    if not ring.is_field:
        return [{"suite": "serre", "check": "skipped in generic mode", "pass": True}]
    rows = serre_membership_check(F) if F.cartan.simply_laced else nsl_serre_check(F)
    for r in rows:
        out.append(_record("serre", f"Serre element ({r['i']},{r['j']}) in Ker S", r["pass"], ring, witness=r["witness"]))
    l = ring.l
    for i in range(F.rank):
        vals = theta_power_values(F, i, l + 2)
        ok = all(v["match"] for v in vals)
        if F.dot[i][i] == 2:
            ok = ok and all(v["zero"] == (v["a"] >= l) for v in vals)
        bad = next((v for v in vals if not v["match"]), None)
        out.append(_record("serre", f"S(theta_{i}^a, theta_{i}^a) product formula, a<={l + 2}", ok, ring,
                           **({"a": bad["a"], "value": bad["value"], "formula": bad["formula"]} if bad else {})))
    for lam in list(weights) + [minus_rho(F.cartan)]:
        L = IrreducibleModule(VermaModule(F, lam), depth)
        res = L.u_relation_residuals()
        bad = next((r for r in res if not r["zero"]), None)
        out.append(_record("serre", f"u relations on L({list(lam)})", bad is None, ring, **(bad or {})))
        sv = L.singular_vector_check()
        bad = next((r for r in sv if not r["pass"]), None)
        out.append(_record("serre", f"no singular vectors in L({list(lam)})", bad is None, ring, **(bad or {})))
    return out


def suite_hochschild(F: FreeAlgebra, weights, depth: int) -> list[dict]:
    ring = F.ring
    out = []
    configs = [("F", "verma")]
    if ring.is_field:
        configs.append(("f", "irreducible"))
    for alg, mod in configs:
        H = HochschildComplex(F, [tuple(w) for w in weights], alg, mod, depth)
        bad_d2 = bad_free = bad_euler = None
        for nu in degrees_up_to(F.rank, depth):
            if bad_d2 is None and not H.d_squared_zero(nu):
                bad_d2 = {"nu": nu}
            rows = H.homology(nu)
            if alg == "F" and bad_free is None and any(r["dim_H"] for r in rows if r["r"] >= 1):
                bad_free = {"nu": nu, "rows": rows}
            chi_C = sum((-1) ** r["r"] * r["dim_C"] for r in rows)
            chi_H = sum((-1) ** r["r"] * r["dim_H"] for r in rows)
            if bad_euler is None and chi_C != chi_H:
                bad_euler = {"nu": nu, "chi_C": chi_C, "chi_H": chi_H}
        out.append(_record("hochschild", f"d^2 = 0 over {alg} with {mod}", bad_d2 is None, ring, **(bad_d2 or {})))
        out.append(_record("hochschild", f"Euler characteristic over {alg} with {mod}", bad_euler is None, ring, **(bad_euler or {})))
        if alg == "F":
            out.append(_record("hochschild", "bar complex of free modules is acyclic", bad_free is None, ring, **(bad_free or {})))
    return out


def suite_symmetrize(F: FreeAlgebra, weights, depth: int) -> list[dict]:
    out = []
    for nu in degrees_up_to(F.rank, depth):
        rep = check_squares(F, nu, [tuple(w) for w in weights], m=1)
        out.append(_record("symmetrize", f"averaging squares at nu={list(nu)}", rep["pass"], F.ring,
                           **({k: rep[k] for k in ("S_F", "S_V", "coaction", "mfold")} if not rep["pass"] else {})))
    return out


RUNNERS = {
    "forms": suite_forms,
    "coaction": suite_coaction,
    "serre": suite_serre,
    "hochschild": suite_hochschild,
    "symmetrize": suite_symmetrize,
}


def run_suite(name: str, F: FreeAlgebra, weights: Sequence[Sequence[int]], depth: int) -> list[dict]:
    if name == "all":
        out = []
        for s in SUITES:
            out.extend(RUNNERS[s](F, weights, depth))
        return out
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    return RUNNERS[name](F, weights, depth)
