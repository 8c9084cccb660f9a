"""``shapovalov`` command line: dimension tables, Gram matrices, determinants,
Hochschild homology and the verification suites.

Exit codes: 0 ok, 1 invariant failure, 2 config error, 3 resource guard.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from . import linalg
from .cartan import CartanDatum, CartanError, RankMismatch, degrees_up_to, load
from .free_algebra import FreeAlgebra, PermutationEnumerationTooLarge
from .hochschild import ConfigError, HochschildComplex, WindowExceeded
from .quotients import RootOfUnityError, check_small_quantum_l
from .scalars import make_ring
from .verify import SUITES, run_suite
from .verma import VermaModule

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3
MAX_TENSOR_FACTORS = 4

CONFIG_ERRORS = (CartanError, RankMismatch, ConfigError, RootOfUnityError)
RESOURCE_ERRORS = (WindowExceeded, linalg.MatrixTooLarge, PermutationEnumerationTooLarge, OverflowError, MemoryError)


class UsageError(ValueError):
    pass


class ResourceGuard(RuntimeError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    cartan: CartanDatum
    l: int | str
    weights: tuple = ()
    nu: tuple | None = None
    depth_max: int = 4
    algebra: str = "F"
    module: str = "verma"
    fmt: str = "json"
    jobs: int = 1
    max_dim: int = 200
    suite: str | None = None

    def meta(self) -> dict:
        # --jobs and --format are left out so output is identical across job counts
        out = {
            "command": self.command,
            "cartan": self.cartan.to_json(),
            "l": self.l,
            "weights": [list(w) for w in self.weights],
            "nu": list(self.nu) if self.nu is not None else None,
            "depth_max": self.depth_max,
        }
        if self.command == "hochschild":
            out["algebra"] = self.algebra
            out["module"] = self.module
        if self.command == "verify":
            out["suite"] = self.suite
        return out


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _int_vector(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cartan", default="A1", help="preset name or path to a JSON Cartan file")
    common.add_argument("--l", type=int, default=None, help="order of the root of unity (default 5)")
    common.add_argument("--generic", action="store_true", help="work over Z[q, q^-1]")
    common.add_argument("--weight", type=_int_vector, action="append", default=[], help="a,b,... (repeatable)")
    common.add_argument("--nu", type=_int_vector, default=None, help="restrict to one multidegree")
    common.add_argument("--depth-max", type=int, default=4)
    common.add_argument("--algebra", choices=("f", "F"), default="F")
    common.add_argument("--module", choices=("verma", "irreducible"), default="verma")
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "table"), default="json")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    common.add_argument("--max-dim", type=int, default=200, help="largest Gram matrix handled")

    p = _Parser(prog="shapovalov", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("dims", parents=[common], help="dimension, kernel and quotient per degree")
    sub.add_parser("gram", parents=[common], help="Gram matrix of S or S_Lambda at --nu")
    sub.add_parser("shapovalov", parents=[common], help="Gram determinants per degree")
    sub.add_parser("hochschild", parents=[common], help="chain and homology dimensions")
    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("suite", choices=SUITES + ("all",))
    return p


def make_config(args: argparse.Namespace) -> RunConfig:
    if args.generic and args.l is not None:
        raise UsageError("--l and --generic are mutually exclusive")
    l = "generic" if args.generic else (5 if args.l is None else args.l)
    if l != "generic" and l < 1:
        raise UsageError("--l must be positive")
    if args.depth_max < 0:
        raise UsageError("--depth-max must be nonnegative")
    cartan = load(args.cartan)
    weights = tuple(tuple(w) for w in args.weight)
    for w in weights:
        if len(w) != cartan.rank:
            raise RankMismatch(f"weight {list(w)} has length {len(w)}, rank is {cartan.rank}")
    nu = tuple(args.nu) if args.nu is not None else None
    if nu is not None:
        if len(nu) != cartan.rank:
            raise RankMismatch(f"nu {list(nu)} has length {len(nu)}, rank is {cartan.rank}")
        if any(x < 0 for x in nu):
            raise UsageError("nu must be nonnegative")
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if jobs < 1:
        raise UsageError("--jobs must be positive")
    cfg = RunConfig(
        command=args.command,
        cartan=cartan,
        l=l,
        weights=weights,
        nu=nu,
        depth_max=args.depth_max,
        algebra=args.algebra,
        module=args.module,
        fmt=args.fmt,
        jobs=jobs,
        max_dim=args.max_dim,
        suite=getattr(args, "suite", None),
    )
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    quotient = cfg.command == "dims" or cfg.algebra == "f" or cfg.module == "irreducible"
    if cfg.command == "verify" and cfg.suite in ("serre", "all"):
        quotient = True
    if quotient and cfg.l != "generic":
        check_small_quantum_l(cfg.l)
    if cfg.command == "gram" and cfg.nu is None:
        raise UsageError("gram needs --nu")
    if cfg.command == "hochschild":
        if not cfg.weights:
            raise UsageError("hochschild needs at least one --weight")
        if cfg.l == "generic" and (cfg.algebra == "f" or cfg.module == "irreducible"):
            raise ConfigError("quotients need a root of unity; drop --generic")
    if len(cfg.weights) > MAX_TENSOR_FACTORS:
        raise ResourceGuard(f"at most {MAX_TENSOR_FACTORS} weights")


# ---------------------------------------------------------------------------
# per-degree jobs (pure; each worker rebuilds its objects from the config)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _algebra(cartan: CartanDatum, l) -> FreeAlgebra:
    return FreeAlgebra(cartan, make_ring(l))


def _guard(cfg: RunConfig, F: FreeAlgebra, nu) -> None:
    n = factorial(sum(nu))
    for k in nu:
        n //= factorial(k)
    if n > cfg.max_dim:
        raise linalg.MatrixTooLarge(f"dim at nu={list(nu)} is {n} > --max-dim {cfg.max_dim}")


def _form_target(cfg: RunConfig, F: FreeAlgebra, weight):
    return F if weight is None else VermaModule(F, weight)


def _targets(cfg: RunConfig):
    return list(cfg.weights) if cfg.weights else [None]


def _dims_job(cfg: RunConfig, nu: tuple) -> list[dict]:
    F = _algebra(cfg.cartan, cfg.l)
    _guard(cfg, F, nu)
    rows = []
    for w in _targets(cfg):
        G = _form_target(cfg, F, w).gram_matrix(nu)
        n = len(G)
        r = linalg.rank(F.ring, G) if n else 0
        row = {"nu": list(nu)}
        if w is not None:
            row["weight"] = list(w)
        row.update({"dim_ambient": n, "dim_kernel": n - r, "dim_quotient": r})
        rows.append(row)
    return rows


def _det_job(cfg: RunConfig, nu: tuple) -> list[dict]:
    F = _algebra(cfg.cartan, cfg.l)
    _guard(cfg, F, nu)
    rows = []
    for w in _targets(cfg):
        G = _form_target(cfg, F, w).gram_matrix(nu)
        d = linalg.det(F.ring, G, cfg.max_dim) if G else F.ring.one
        row = {"nu": list(nu)}
        if w is not None:
            row["weight"] = list(w)
        row.update({"dim": len(G), "det": F.ring.serialize(d), "nonzero": not d.is_zero()})
        rows.append(row)
    return rows


def _gram_job(cfg: RunConfig, nu: tuple) -> list[dict]:
    F = _algebra(cfg.cartan, cfg.l)
    _guard(cfg, F, nu)
    words = F.words(nu)
    rows = []
    for w in _targets(cfg):
        G = _form_target(cfg, F, w).gram_matrix(nu)
        for a, x in enumerate(words):
            for b, y in enumerate(words):
                row = {"nu": list(nu)}
                if w is not None:
                    row["weight"] = list(w)
                row.update({"row": a, "col": b, "x": list(x), "y": list(y), "value": F.ring.serialize(G[a][b])})
                rows.append(row)
    return rows


@lru_cache(maxsize=None)
def _complex(cfg: RunConfig) -> HochschildComplex:
    F = _algebra(cfg.cartan, cfg.l)
    return HochschildComplex(F, list(cfg.weights), cfg.algebra, cfg.module, cfg.depth_max)


def _hochschild_job(cfg: RunConfig, nu: tuple) -> list[dict]:
    return _complex(cfg).homology(nu)


JOBS = {"dims": _dims_job, "shapovalov": _det_job, "gram": _gram_job, "hochschild": _hochschild_job}


def _run_one(args):
    cfg, nu = args
    return JOBS[cfg.command](cfg, nu)


def degrees(cfg: RunConfig) -> list[tuple]:
    if cfg.nu is not None:
        return [cfg.nu]
    return degrees_up_to(cfg.cartan.rank, cfg.depth_max)


def collect_rows(cfg: RunConfig) -> list[dict]:
    if cfg.command == "hochschild" and cfg.nu is not None and sum(cfg.nu) > cfg.depth_max:
        raise WindowExceeded(f"nu={list(cfg.nu)} lies outside --depth-max {cfg.depth_max}")
    tasks = [(cfg, nu) for nu in degrees(cfg)]
    if cfg.jobs == 1 or len(tasks) <= 1:
        parts = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            parts = list(pool.map(_run_one, tasks))
    return [row for part in parts for row in part]


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def to_json(meta: dict, rows: list[dict]) -> str:
    return json.dumps({"meta": meta, "rows": rows}, indent=2)


def _cell(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    return str(v)


def _columns(rows: list[dict]) -> list[str]:
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    return cols


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    cols = _columns(rows)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in cols])
    return buf.getvalue()


def to_table(rows: list[dict]) -> str:
    cols = _columns(rows)
    if not cols:
        return "(no rows)\n"
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * wd for wd in widths))
    lines += ["  ".join(v.ljust(wd) for v, wd in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def render(cfg: RunConfig, rows: list[dict]) -> str:
    if cfg.fmt == "json":
        return to_json(cfg.meta(), rows) + "\n"
    if cfg.fmt == "csv":
        return to_csv(rows)
    return to_table(rows)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _verify_rows(cfg: RunConfig) -> list[dict]:
    F = _algebra(cfg.cartan, cfg.l)
    weights = list(cfg.weights) or [tuple(0 for _ in range(cfg.cartan.rank))]
    return run_suite(cfg.suite, F, weights, cfg.depth_max)


def _glue_negative_vectors(argv: list[str]) -> list[str]:
    """``--weight -2,-3`` -> ``--weight=-2,-3`` so argparse does not read an option."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in ("--weight", "--nu"):
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_vectors(sys.argv[1:] if argv is None else list(argv)))
    try:
        cfg = make_config(args)
        if cfg.command == "verify":
            rows = _verify_rows(cfg)
        else:
            rows = collect_rows(cfg)
    except (UsageError, *CONFIG_ERRORS) as exc:
        print(f"shapovalov: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ResourceGuard, *RESOURCE_ERRORS) as exc:
        print(f"shapovalov: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    sys.stdout.write(render(cfg, rows))
    if cfg.command == "verify" and not all(r["pass"] for r in rows):
        failed = sum(1 for r in rows if not r["pass"])
        print(f"shapovalov: {failed} invariant check(s) failed", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
