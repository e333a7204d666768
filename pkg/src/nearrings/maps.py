"""Candidate nearring multiplications as mapping triples (alpha, beta, gamma).

A multiplication with identity a on G(p^m, p^n, p^d) is fully determined
by the products x * b, stored as three dense rank-indexed tables:

    x * b = a*alpha(x) + b*beta(x) + c*gamma(x).

The full product x * y is then evaluated by the closed formula derived
from left distributivity and the commutation rules (see mul_row).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cayley import max_order
from .pgroup import (
    Element,
    GroupParams,
    coordinate_arrays,
    make_params,
    rank,
    unrank,
)


def _comb2(r):
    return r * (r - 1) // 2


@dataclass(frozen=True)
class MapTriple:
    """Dense tables alpha mod p^m, beta mod p^n, gamma mod p^d, by rank."""

    params: GroupParams
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]

    def __post_init__(self):
        g = self.params
        n = g.order
        if not (len(self.alpha) == len(self.beta) == len(self.gamma) == n):
            raise ValueError(f"map tables must have length {n}")
        if any(not 0 <= v < g.pm for v in self.alpha):
            raise ValueError("alpha values must be canonical residues mod p^m")
        if any(not 0 <= v < g.pn for v in self.beta):
            raise ValueError("beta values must be canonical residues mod p^n")
        if any(not 0 <= v < g.pd for v in self.gamma):
            raise ValueError("gamma values must be canonical residues mod p^d")
        ra = rank(g, (1, 0, 0))
        if (self.alpha[ra], self.beta[ra], self.gamma[ra]) != (0, 1, 0):
            raise ValueError(
                "forced row violated: the identity a must satisfy a*b = b, "
                "i.e. (alpha(a), beta(a), gamma(a)) = (0, 1, 0)"
            )

    def row(self, x: Element) -> tuple[int, int, int]:
        r = rank(self.params, x)
        return (self.alpha[r], self.beta[r], self.gamma[r])

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (
            np.asarray(self.alpha, dtype=np.int64),
            np.asarray(self.beta, dtype=np.int64),
            np.asarray(self.gamma, dtype=np.int64),
        )

    def to_json_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "alpha": list(self.alpha),
            "beta": list(self.beta),
            "gamma": list(self.gamma),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "MapTriple":
        pp = doc["params"]
        g = make_params(pp["p"], pp["m"], pp["n"], pp["d"])
        return cls(
            params=g,
            alpha=tuple(int(v) for v in doc["alpha"]),
            beta=tuple(int(v) for v in doc["beta"]),
            gamma=tuple(int(v) for v in doc["gamma"]),
        )


def dumps_triple(maps: MapTriple) -> str:
    """Canonical JSON text; loads/dumps round-trips byte-identically."""
    return json.dumps(maps.to_json_dict(), sort_keys=True, separators=(",", ":")) + "\n"


def loads_triple(text: str) -> MapTriple:
    return MapTriple.from_json_dict(json.loads(text))


def canonical_maps(g: GroupParams) -> MapTriple:
    """alpha == 0, beta(x) = x1 mod p^n, gamma == 0 for every x."""
    alpha = [0] * g.order
    beta = [x[0] % g.pn for x in _all_elements(g)]
    gamma = [0] * g.order
    return MapTriple(params=g, alpha=tuple(alpha), beta=tuple(beta), gamma=tuple(gamma))


def _all_elements(g: GroupParams):
    return (unrank(g, k) for k in range(g.order))


def xb(g: GroupParams, maps: MapTriple, x: Element) -> Element:
    """The product x * b, read off the map tables (c is central, so the
    table row already is the normal form)."""
    al, be, ga = maps.row(x)
    return (al, be, ga)


def mul_row(g: GroupParams, row: tuple[int, int, int], x: Element, y: Element) -> Element:
    """Product x * y given the table row (alpha(x), beta(x), gamma(x)).

    Binomials are taken over the integers on canonical representatives;
    the c-coefficient is accumulated as one signed integer and reduced
    once mod p^d.
    """
    al, be, ga = row
    x1, x2, x3 = x
    y1, y2, y3 = y
    a_co = (x1 * y1 + y2 * al) % g.pm
    b_co = (x2 * y1 + y2 * be) % g.pn
    c_co = (
        -x1 * x2 * _comb2(y1)
        - _comb2(y2) * al * be
        - x2 * y1 * y2 * al
        + x3 * y1
        + y2 * ga
        + x1 * y3 * be
        - x2 * y3 * al
    ) % g.pd
    return (a_co, b_co, c_co)


def mul(g: GroupParams, maps: MapTriple, x: Element, y: Element) -> Element:
    """Full product x * y by the closed formula."""
    return mul_row(g, maps.row(x), x, y)


def left_mul_table(g: GroupParams, maps: MapTriple, x: Element) -> list[int]:
    """Rank table of y -> x * y (an additive endomorphism when the
    nearring axioms hold)."""
    row = maps.row(x)
    return [rank(g, mul_row(g, row, x, unrank(g, k))) for k in range(g.order)]


def mul_table(g: GroupParams, maps: MapTriple) -> np.ndarray:
    """Dense N x N multiplication table of ranks (int32), vectorized."""
    if g.order > max_order():
        raise ValueError(f"group order {g.order} exceeds table bound {max_order()}")
    x1, x2, x3 = coordinate_arrays(g)
    al, be, ga = maps.arrays
    y1, y2, y3 = x1, x2, x3
    c2y1 = y1 * (y1 - 1) // 2
    c2y2 = y2 * (y2 - 1) // 2
    a_co = (x1[:, None] * y1[None, :] + y2[None, :] * al[:, None]) % g.pm
    b_co = (x2[:, None] * y1[None, :] + y2[None, :] * be[:, None]) % g.pn
    c_co = (
        -(x1 * x2)[:, None] * c2y1[None, :]
        - (al * be)[:, None] * c2y2[None, :]
        - (x2 * al)[:, None] * (y1 * y2)[None, :]
        + x3[:, None] * y1[None, :]
        + ga[:, None] * y2[None, :]
        + (x1 * be)[:, None] * y3[None, :]
        - (x2 * al)[:, None] * y3[None, :]
    ) % g.pd
    return ((a_co * g.pn + b_co) * g.pd + c_co).astype(np.int32)


def triple_from_tables(g: GroupParams, alpha, beta, gamma) -> MapTriple:
    return MapTriple(
        params=g,
        alpha=tuple(int(v) % g.pm for v in alpha),
        beta=tuple(int(v) % g.pn for v in beta),
        gamma=tuple(int(v) % g.pd for v in gamma),
    )
