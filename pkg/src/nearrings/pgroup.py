"""Coordinate arithmetic for the additively written group G(p^m, p^n, p^d).

G(p^m, p^n, p^d) is the two-generated class-2 group

    < a, b, c | a^(p^m) = b^(p^n) = c^(p^d) = 1, a^b = a c, c central >

with p an odd prime and 1 <= d <= n <= m.  Every element has a unique
normal form a^x1 b^x2 c^x3, so we represent elements as canonical
coordinate triples (x1, x2, x3) with 0 <= x1 < p^m, 0 <= x2 < p^n,
0 <= x3 < p^d.  The group is written additively throughout.

All arithmetic is exact (Python integers), so there is no overflow to
guard against; table materialization is bounded separately (see
:mod:`nearrings.cayley`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

Element = tuple[int, int, int]

ZERO: Element = (0, 0, 0)


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    f = 3
    while f * f <= k:
        if k % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class GroupParams:
    """The tuple (p, m, n, d) fixing one group G(p^m, p^n, p^d)."""

    p: int
    m: int
    n: int
    d: int

    @cached_property
    def pm(self) -> int:
        return self.p**self.m

    @cached_property
    def pn(self) -> int:
        return self.p**self.n

    @cached_property
    def pd(self) -> int:
        return self.p**self.d

    @cached_property
    def order(self) -> int:
        return self.pm * self.pn * self.pd

    @cached_property
    def exponent(self) -> int:
        return self.pm

    def as_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "n": self.n, "d": self.d}


def make_params(p: int, m: int, n: int, d: int) -> GroupParams:
    """Validate and build GroupParams.

    Rejects p even or composite and any violation of 1 <= d <= n <= m.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p == 2:
        raise ValueError("p = 2 is excluded; p must be an odd prime")
    if not (1 <= d <= n <= m):
        raise ValueError(f"exponents must satisfy 1 <= d <= n <= m, got m={m}, n={n}, d={d}")
    return GroupParams(p, m, n, d)


def generators(g: GroupParams) -> tuple[Element, Element, Element]:
    """The generator triple (a, b, c) in coordinates."""
    return (1, 0, 0), (0, 1, 0), (0, 0, 1)


def add(g: GroupParams, x: Element, y: Element) -> Element:
    """Group addition in canonical coordinates.

    The c-correction term -x2*y1 is what moving a^y1 left past b^x2
    costs under the commutation rule b + a = -c + a + b.
    """
    return (
        (x[0] + y[0]) % g.pm,
        (x[1] + y[1]) % g.pn,
        (x[2] + y[2] - x[1] * y[0]) % g.pd,
    )


def neg(g: GroupParams, x: Element) -> Element:
    """Additive inverse: (-x1, -x2, -x3 - x1*x2) reduced componentwise."""
    return (
        (-x[0]) % g.pm,
        (-x[1]) % g.pn,
        (-x[2] - x[0] * x[1]) % g.pd,
    )


def _comb2(r: int) -> int:
    return r * (r - 1) // 2


def scalar(g: GroupParams, x: Element, r: int) -> Element:
    """r-fold sum of x, r >= 0, by the closed form with binomial correction.

    The binomial C(r, 2) is taken over the integers before reduction;
    well-definedness mod p^d relies on p being odd and d <= m.
    """
    if r < 0:
        raise ValueError("scalar multiplier must be non-negative")
    return (
        (x[0] * r) % g.pm,
        (x[1] * r) % g.pn,
        (x[2] * r - x[0] * x[1] * _comb2(r)) % g.pd,
    )


def commutator(g: GroupParams, x: Element, y: Element) -> Element:
    """-x - y + x + y.  For x = (k,0,0), y = (0,l,0) this is (0, 0, k*l)."""
    return add(g, add(g, neg(g, x), neg(g, y)), add(g, x, y))


def element_order(g: GroupParams, x: Element) -> int:
    """Least r >= 1 with scalar(x, r) = 0; always a power of p dividing p^m."""
    for e in range(g.m + 1):
        if scalar(g, x, g.p**e) == ZERO:
            return g.p**e
    raise AssertionError("element order must divide the exponent p^m")


def rank(g: GroupParams, x: Element) -> int:
    """Position of x in the fixed enumeration (x1*p^n + x2)*p^d + x3."""
    return (x[0] * g.pn + x[1]) * g.pd + x[2]


def unrank(g: GroupParams, k: int) -> Element:
    if not 0 <= k < g.order:
        raise ValueError(f"rank {k} out of range [0, {g.order})")
    k, x3 = divmod(k, g.pd)
    x1, x2 = divmod(k, g.pn)
    return (x1, x2, x3)


def elements(g: GroupParams) -> Iterator[Element]:
    """All elements in rank order."""
    for x1 in range(g.pm):
        for x2 in range(g.pn):
            for x3 in range(g.pd):
                yield (x1, x2, x3)


def subgroup_closure(g: GroupParams, gens: Iterable[Element]) -> set[Element]:
    """Least subset containing gens, 0, and closed under add and neg."""
    seen: set[Element] = {ZERO}
    frontier = [ZERO]
    gens = [x for x in gens]
    # BFS over right-addition by generators and their inverses.
    step = gens + [neg(g, x) for x in gens]
    while frontier:
        cur = frontier.pop()
        for s in step:
            nxt = add(g, cur, s)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def coordinate_arrays(g: GroupParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(x1, x2, x3) int64 arrays indexed by rank."""
    k = np.arange(g.order, dtype=np.int64)
    x3 = k % g.pd
    t = k // g.pd
    x2 = t % g.pn
    x1 = t // g.pn
    return x1, x2, x3


def add_table(g: GroupParams) -> np.ndarray:
    """Dense N x N addition table of ranks (int32)."""
    x1, x2, x3 = coordinate_arrays(g)
    a1 = (x1[:, None] + x1[None, :]) % g.pm
    a2 = (x2[:, None] + x2[None, :]) % g.pn
    a3 = (x3[:, None] + x3[None, :] - x2[:, None] * x1[None, :]) % g.pd
    return ((a1 * g.pn + a2) * g.pd + a3).astype(np.int32)


def neg_table(g: GroupParams) -> np.ndarray:
    """Rank-indexed table of additive inverses (int32)."""
    x1, x2, x3 = coordinate_arrays(g)
    n1 = (-x1) % g.pm
    n2 = (-x2) % g.pn
    n3 = (-x3 - x1 * x2) % g.pd
    return ((n1 * g.pn + n2) * g.pd + n3).astype(np.int32)


def order_vector(g: GroupParams) -> np.ndarray:
    """Additive order of every element, indexed by rank."""
    x1, x2, x3 = coordinate_arrays(g)
    orders = np.empty(g.order, dtype=np.int64)
    for e in range(g.m + 1):
        r = g.p**e
        is_zero = (
            ((x1 * r) % g.pm == 0)
            & ((x2 * r) % g.pn == 0)
            & ((x3 * r - x1 * x2 * _comb2(r)) % g.pd == 0)
        )
        if e == 0:
            done = is_zero
            orders[is_zero] = 1
        else:
            newly = is_zero & ~done
            orders[newly] = r
            done |= newly
    return orders


def element_to_text(x: Element) -> str:
    return f"{x[0]},{x[1]},{x[2]}"


def element_from_text(s: str) -> Element:
    parts = s.split(",")
    if len(parts) != 3:
        raise ValueError(f"element text must be 'x1,x2,x3', got {s!r}")
    x1, x2, x3 = (int(t) for t in parts)
    return (x1, x2, x3)
