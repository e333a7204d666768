"""Generic finite groups as dense operation tables.

Carrier for desk-scale constructions: Frattini subgroups of p-groups,
semidirect products R+ x| (i + L), and the maximal-subgroup cross-oracle.
Tables are capped at MAX_ORDER elements (override with the environment
variable NEARRING_MAX_ORDER).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from . import kernels
from .pgroup import GroupParams, add_table


DEFAULT_MAX_ORDER = 4096


def max_order() -> int:
    raw = os.environ.get("NEARRING_MAX_ORDER")
    return int(raw) if raw else DEFAULT_MAX_ORDER


@dataclass(frozen=True)
class CayleyGroup:
    """A finite group given by its full operation table on 0..order-1."""

    op: np.ndarray  # (order, order) int32; op[i, j] = index of i * j
    identity: int

    @property
    def order(self) -> int:
        return self.op.shape[0]

    def __post_init__(self):
        if self.op.ndim != 2 or self.op.shape[0] != self.op.shape[1]:
            raise ValueError("operation table must be square")
        if self.op.shape[0] > max_order():
            raise ValueError(
                f"group order {self.op.shape[0]} exceeds table bound {max_order()}"
            )
        if not (0 <= self.identity < self.op.shape[0]):
            raise ValueError("identity index out of range")

    @classmethod
    def from_table(cls, op: np.ndarray) -> "CayleyGroup":
        op = np.ascontiguousarray(op, dtype=np.int32)
        n = op.shape[0]
        ident = None
        for e in range(n):
            if np.array_equal(op[e], np.arange(n)) and np.array_equal(op[:, e], np.arange(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("table has no two-sided neutral element")
        return cls(op=op, identity=ident)

    def audit(self) -> None:
        """Exhaustively check the group axioms; raise on violation."""
        n = self.order
        bad = kernels.assoc_counterexample(self.op)
        if bad is not None:
            raise ValueError(f"operation table not associative at {bad}")
        if not (np.array_equal(self.op[self.identity], np.arange(n))
                and np.array_equal(self.op[:, self.identity], np.arange(n))):
            raise ValueError("identity is not two-sided neutral")
        inverses(self)  # raises if some element has no two-sided inverse


def group_from_params(g: GroupParams) -> CayleyGroup:
    """G(p^m, p^n, p^d) as a CayleyGroup over the rank enumeration."""
    return CayleyGroup(op=add_table(g), identity=0)


def inverses(group: CayleyGroup) -> np.ndarray:
    """inv[i] with op[i, inv[i]] = op[inv[i], i] = identity."""
    n = group.order
    mask = (group.op == group.identity) & (group.op.T == group.identity)
    rows, cols = np.nonzero(mask)
    inv = np.full(n, -1, dtype=np.int32)
    inv[rows] = cols
    if (inv < 0).any():
        missing = int(np.nonzero(inv < 0)[0][0])
        raise ValueError(f"element {missing} has no two-sided inverse")
    return inv


def pow_index(group: CayleyGroup, i: int, e: int) -> int:
    acc = group.identity
    for _ in range(e):
        acc = int(group.op[acc, i])
    return acc


def closure_indices(group: CayleyGroup, gens: Sequence[int]) -> list[int]:
    """Subgroup generated by gens, as a sorted index list."""
    inv = inverses(group)
    step = sorted(set(int(x) for x in gens) | set(int(inv[x]) for x in gens))
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        cur = frontier.pop()
        for s in step:
            nxt = int(group.op[cur, s])
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return sorted(seen)


def _prime_power_base(n: int) -> int | None:
    """p if n is a nontrivial power of the prime p, else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
        p += 1
    return n  # n itself prime


def frattini_pgroup(group: CayleyGroup) -> list[int]:
    """Frattini subgroup of a finite p-group.

    Generated by all p-th powers and all commutators; raises if the
    group order is not a prime power.
    """
    p = _prime_power_base(group.order)
    if p is None:
        raise ValueError(f"order {group.order} is not a prime power")
    inv = inverses(group)
    gens: set[int] = set()
    for i in range(group.order):
        gens.add(pow_index(group, i, p))
    op = group.op
    for i in range(group.order):
        for j in range(group.order):
            gens.add(int(op[op[op[inv[i], inv[j]], i], j]))
    gens.discard(group.identity)
    return closure_indices(group, sorted(gens))


def generating_set(group: CayleyGroup) -> list[int]:
    """A small (greedy) generating set."""
    gens: list[int] = []
    have = {group.identity}
    for i in range(group.order):
        if i not in have:
            gens.append(i)
            have = set(closure_indices(group, gens))
            if len(have) == group.order:
                break
    return gens


def maximal_subgroups(group: CayleyGroup) -> list[frozenset[int]]:
    """All maximal subgroups of a finite p-group.

    Found as kernels of the nontrivial homomorphisms onto Z_p: in a
    finite p-group every maximal subgroup is normal of index p, so the
    two collections coincide.  Independent of frattini_pgroup's
    power/commutator computation, which makes this a usable cross-oracle.
    """
    p = _prime_power_base(group.order)
    if p is None:
        raise ValueError(f"order {group.order} is not a prime power")
    gens = generating_set(group)
    op = group.op
    n = group.order
    kernels_found: set[frozenset[int]] = set()
    for assignment in product(range(p), repeat=len(gens)):
        if not any(assignment):
            continue
        f = np.full(n, -1, dtype=np.int64)
        f[group.identity] = 0
        known = [group.identity]
        ok = True
        while known and ok:
            cur = known.pop()
            for gi, val in zip(gens, assignment):
                nxt = int(op[cur, gi])
                fv = (f[cur] + val) % p
                if f[nxt] < 0:
                    f[nxt] = fv
                    known.append(nxt)
                elif f[nxt] != fv:
                    ok = False
                    break
        if not ok or (f < 0).any():
            continue
        if not np.array_equal(f[op], (f[:, None] + f[None, :]) % p):
            continue
        kernels_found.add(frozenset(np.nonzero(f == 0)[0].tolist()))
    return sorted(kernels_found, key=sorted)


def frattini_via_maximal(group: CayleyGroup) -> list[int]:
    """Intersection of all maximal subgroups (cross-oracle for p-groups)."""
    maxes = maximal_subgroups(group)
    if not maxes:
        return list(range(group.order))
    acc = set(maxes[0])
    for m in maxes[1:]:
        acc &= m
    return sorted(acc)


def semidirect_product(carrier: CayleyGroup, actors: Sequence[np.ndarray]) -> CayleyGroup:
    """Group on pairs (r, u): (r1,u1)*(r2,u2) = (r1 + u1(r2), u1 o u2).

    Each actor must be an automorphism table of carrier and the actor
    list must be closed under composition and contain the identity map.
    Pair (r, u) lives at index r * len(actors) + u.
    """
    n = carrier.order
    k = len(actors)
    if n * k > max_order():
        raise ValueError(f"semidirect product order {n * k} exceeds table bound {max_order()}")
    op = carrier.op
    acts = [np.ascontiguousarray(a, dtype=np.int32) for a in actors]
    index: dict[bytes, int] = {}
    for u, a in enumerate(acts):
        if sorted(a.tolist()) != list(range(n)):
            raise ValueError(f"actor {u} is not a bijection")
        if not np.array_equal(a[op], op[a[:, None], a[None, :]]):
            raise ValueError(f"actor {u} is not an automorphism of the carrier")
        index[a.tobytes()] = u
    ident_u = index.get(np.arange(n, dtype=np.int32).tobytes())
    if ident_u is None:
        raise ValueError("actor set does not contain the identity map")
    comp = np.empty((k, k), dtype=np.int32)
    for u1 in range(k):
        for u2 in range(k):
            key = acts[u1][acts[u2]].astype(np.int32).tobytes()
            if key not in index:
                raise ValueError("actor set is not closed under composition")
            comp[u1, u2] = index[key]
    table = np.empty((n * k, n * k), dtype=np.int32)
    view = table.reshape(n, k, n, k)
    for u1 in range(k):
        act = acts[u1]
        for u2 in range(k):
            # entry [(r1,u1), (r2,u2)] = (op[r1, act[r2]], comp[u1,u2])
            view[:, u1, :, u2] = op[:, act] * k + comp[u1, u2]
    return CayleyGroup(op=table, identity=ident_u)


def sd_index(r: int, u: int, num_actors: int) -> int:
    """Index of the pair (r, u) inside a semidirect product table."""
    return r * num_actors + u
