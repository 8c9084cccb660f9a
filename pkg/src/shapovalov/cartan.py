"""Cartan data, multidegrees and weights.

A weight is stored as the vector of its pairings with the generators of
``Z[I]``; ``lambda_nu(nu)`` is the weight ``i -> i.nu``.  For non-simply-laced
data the coroot pairing ``<i, lambda>`` used with ``z_i = z**d_i`` relates to
the stored value by ``stored_i = d_i * <i, lambda>`` (see
:func:`from_coroot_pairings`), so a single bracket ``[stored_i]`` serves both
readings.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence


class RankMismatch(ValueError):
    pass


class CartanError(ValueError):
    pass


PRESETS: dict[str, tuple[tuple[int, ...], ...]] = {
    "A0": (),
    "A1": ((2,),),
    "A1xA1": ((2, 0), (0, 2)),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    # i short (d=1), j long (d=2)
    "B2": ((2, -2), (-2, 4)),
    # i short (d=1), j long (d=3)
    "G2": ((2, -3), (-3, 6)),
}


@dataclass(frozen=True)
class CartanDatum:
    dot: tuple[tuple[int, ...], ...]
    name: str = "custom"

    def __post_init__(self):
        n = len(self.dot)
        for row in self.dot:
            if len(row) != n:
                raise CartanError("dot matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.dot[i][j] != self.dot[j][i]:
                    raise CartanError("dot matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.dot)

    @property
    def d(self) -> tuple[int, ...]:
        return tuple(self.dot[i][i] // 2 for i in range(self.rank))

    @property
    def simply_laced(self) -> bool:
        n = self.rank
        return all(self.dot[i][i] == 2 for i in range(n)) and all(
            self.dot[i][j] in (0, -1) for i in range(n) for j in range(n) if i != j
        )

    def is_finite_type_shape(self) -> bool:
        n = self.rank
        return all(self.dot[i][i] in (2, 4, 6) for i in range(n)) and all(
            self.dot[i][j] <= 0 for i in range(n) for j in range(n) if i != j
        )

    def cartan_integer(self, i: int, j: int) -> int:
        """``<i, j'> = 2 (i.j) / (i.i)``."""
        num = 2 * self.dot[i][j]
        if num % self.dot[i][i]:
            raise CartanError(f"2 i.j / i.i not integral for ({i},{j})")
        return num // self.dot[i][i]

    def to_json(self) -> dict:
        if self.name in PRESETS and PRESETS[self.name] == self.dot:
            return {"preset": self.name}
        return {"rank": self.rank, "dot": [list(r) for r in self.dot]}


def preset(name: str) -> CartanDatum:
    key = name.replace("×", "x").replace("X", "x")
    if key not in PRESETS:
        raise CartanError(f"unknown preset {name!r}; known: {sorted(PRESETS)}")
    return CartanDatum(PRESETS[key], key)


def from_matrix(dot: Sequence[Sequence[int]], name: str = "custom") -> CartanDatum:
    return CartanDatum(tuple(tuple(int(x) for x in row) for row in dot), name)


def from_json(obj: dict) -> CartanDatum:
    if "preset" in obj:
        return preset(obj["preset"])
    if "dot" not in obj:
        raise CartanError("cartan config needs 'preset' or 'dot'")
    c = from_matrix(obj["dot"], obj.get("name", "custom"))
    if "rank" in obj and int(obj["rank"]) != c.rank:
        raise CartanError("'rank' does not match the size of 'dot'")
    return c


def load(name: str) -> CartanDatum:
    """A preset name or a path to a JSON file."""
    key = name.replace("×", "x")
    if key in PRESETS:
        return preset(key)
    path = Path(name)
    if not path.exists():
        raise CartanError(f"{name!r} is neither a preset nor a file")
    return from_json(json.loads(path.read_text()))


# ---------------------------------------------------------------------------
# degrees and weights
# ---------------------------------------------------------------------------


def _check(c: CartanDatum, *vectors: Sequence[int]) -> None:
    for v in vectors:
        if len(v) != c.rank:
            raise RankMismatch(f"expected length {c.rank}, got {len(v)}")


def dot_product(c: CartanDatum, nu: Sequence[int], mu: Sequence[int]) -> int:
    _check(c, nu, mu)
    return sum(nu[i] * c.dot[i][j] * mu[j] for i in range(c.rank) for j in range(c.rank) if nu[i] and mu[j])


def lambda_nu(c: CartanDatum, nu: Sequence[int]) -> tuple[int, ...]:
    _check(c, nu)
    return tuple(sum(c.dot[i][j] * nu[j] for j in range(c.rank)) for i in range(c.rank))


def pairing(weight: Sequence[int], nu: Sequence[int]) -> int:
    if len(weight) != len(nu):
        raise RankMismatch("weight and degree have different lengths")
    return sum(w * n for w, n in zip(weight, nu))


def minus_rho(c: CartanDatum) -> tuple[int, ...]:
    """The weight with ``<i, -rho> = -1`` for every coroot ``i``."""
    return from_coroot_pairings(c, [-1] * c.rank)


def from_coroot_pairings(c: CartanDatum, values: Sequence[int]) -> tuple[int, ...]:
    """Stored weight for coroot pairings ``<i, lambda>`` (multiply by ``d_i``)."""
    _check(c, values)
    return tuple(d * v for d, v in zip(c.d, values))


def unit(c: CartanDatum, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(c.rank))


def add(nu: Sequence[int], mu: Sequence[int]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(nu, mu))


def sub(nu: Sequence[int], mu: Sequence[int]) -> tuple[int, ...]:
    return tuple(a - b for a, b in zip(nu, mu))


def depth(nu: Sequence[int]) -> int:
    return sum(nu)


def content(word: Sequence[int], rank: int) -> tuple[int, ...]:
    counts = [0] * rank
    for letter in word:
        counts[letter] += 1
    return tuple(counts)


def degrees_up_to(rank: int, max_depth: int) -> list[tuple[int, ...]]:
    """All multidegrees of depth ``<= max_depth``, by depth then lexicographically."""
    out: list[tuple[int, ...]] = []
    for dep in range(max_depth + 1):
        out.extend(degrees_of_depth(rank, dep))
    return out


def degrees_of_depth(rank: int, dep: int) -> list[tuple[int, ...]]:
    if rank == 0:
        return [()] if dep == 0 else []
    if rank == 1:
        return [(dep,)]
    out = []
    for first in range(dep, -1, -1):
        for rest in degrees_of_depth(rank - 1, dep - first):
            out.append((first,) + rest)
    return out


def sub_degrees(nu: Sequence[int]) -> list[tuple[int, ...]]:
    """All ``mu <= nu`` componentwise."""
    out = [()]
    for n in nu:
        out = [m + (k,) for m in out for k in range(n + 1)]
    return out
