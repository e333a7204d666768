"""Brute-force automorphism computation for G(p^m, p^n, p^d).

An automorphism is determined by the images a' of a and b' of b; the
image of c is forced to c' = [a', b'].  The candidate map sends
a^x1 b^x2 c^x3 to a'^x1 b'^x2 c'^x3; it extends to a homomorphism iff
the defining relations hold for (a', b', c') (orders dividing p^m, p^n,
p^d; the commutation rule holds by construction and c' is central
because the derived subgroup is), and it is an automorphism iff it is
additionally bijective.  A full table-level homomorphism audit is
available behind full_audit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .pgroup import (
    Element,
    GroupParams,
    add,
    add_table,
    commutator,
    coordinate_arrays,
    element_order,
    order_vector,
    rank,
    scalar,
    unrank,
)

DEFAULT_BOUND = 729


@dataclass
class AutRecord:
    params: GroupParams
    brute_order: int
    formula_order: int
    match: bool
    pairs: list[tuple[int, int]]     # (rank of a', rank of b'), all of them
    elapsed: float
    full_audit: bool
    closure_ok: bool | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self, max_pairs: int | None = 50) -> dict:
        pairs = self.pairs if max_pairs is None else self.pairs[:max_pairs]
        return {
            "params": self.params.as_dict(),
            "brute_order": self.brute_order,
            "formula_order": self.formula_order,
            "match": self.match,
            "pairs": [list(p) for p in pairs],
            "pairs_truncated": max_pairs is not None and len(self.pairs) > max_pairs,
            "elapsed_seconds": round(self.elapsed, 6),
            "full_audit": self.full_audit,
            "closure_ok": self.closure_ok,
            "details": self.details,
        }


def aut_order_formula(g: GroupParams) -> int:
    """Closed-form |Aut(G)|: p^(2d+4m-5)(p^2-1)(p-1) when m = n,
    p^(2d+3n+m-2)(p-1)^2 when m > n."""
    p = g.p
    if g.m == g.n:
        return p ** (2 * g.d + 4 * g.m - 5) * (p**2 - 1) * (p - 1)
    return p ** (2 * g.d + 3 * g.n + g.m - 2) * (p - 1) ** 2


def _scalar_rank_table(g: GroupParams, x: Element, count: int) -> np.ndarray:
    """ranks of x*0, x*1, ..., x*(count-1)."""
    out = np.empty(count, dtype=np.int64)
    cur = (0, 0, 0)
    for k in range(count):
        out[k] = rank(g, cur)
        cur = add(g, cur, x)
    return out


def candidate_perm(g: GroupParams, A: np.ndarray, a_img: Element, b_img: Element) -> np.ndarray:
    """Rank table of the normal-form map a^x1 b^x2 c^x3 -> a'^x1 b'^x2 c'^x3."""
    c_img = commutator(g, a_img, b_img)
    sa = _scalar_rank_table(g, a_img, g.pm)
    sb = _scalar_rank_table(g, b_img, g.pn)
    sc = _scalar_rank_table(g, c_img, g.pd)
    x1, x2, x3 = coordinate_arrays(g)
    return A[A[sa[x1], sb[x2]], sc[x3]]


def _is_permutation(perm: np.ndarray) -> bool:
    return bool((np.bincount(perm, minlength=perm.size) == 1).all())


def aut_brute(g: GroupParams, bound: int = DEFAULT_BOUND, full_audit: bool = False) -> AutRecord:
    """Enumerate Aut(G) by scanning candidate (a', b') pairs.

    a' runs over elements of order exactly p^m (order is preserved by
    automorphisms), b' over elements of order dividing p^n with
    [a', b'] of order dividing p^d; survivors are kept iff the induced
    normal-form map is a bijection.
    """
    if g.order > bound:
        raise ValueError(f"group order {g.order} exceeds bound {bound}")
    t0 = time.perf_counter()
    A = add_table(g)
    orders = order_vector(g)
    a_candidates = np.flatnonzero(orders == g.pm)
    b_candidates = np.flatnonzero(g.pn % orders == 0)
    pairs: list[tuple[int, int]] = []
    audited_ok = True
    for raw_a in a_candidates:
        a_img = unrank(g, int(raw_a))
        for raw_b in b_candidates:
            b_img = unrank(g, int(raw_b))
            c_img = commutator(g, a_img, b_img)
            if g.pd % element_order(g, c_img) != 0:
                continue
            perm = candidate_perm(g, A, a_img, b_img)
            if not _is_permutation(perm):
                continue
            if full_audit and not np.array_equal(
                perm[A], A[perm[:, None], perm[None, :]]
            ):
                audited_ok = False
                continue
            pairs.append((int(raw_a), int(raw_b)))
    formula = aut_order_formula(g)
    return AutRecord(
        params=g,
        brute_order=len(pairs),
        formula_order=formula,
        match=len(pairs) == formula,
        pairs=pairs,
        elapsed=time.perf_counter() - t0,
        full_audit=full_audit,
        details={"relation_rejections_audited": audited_ok} if full_audit else {},
    )


def closure_audit(g: GroupParams, record: AutRecord) -> bool:
    """Exhaustively check that the found set is a group: contains the
    identity, closed under composition and inversion."""
    if record.brute_order > 4000:
        raise ValueError("closure audit limited to 4000 automorphisms")
    A = add_table(g)
    perms = [
        np.ascontiguousarray(
            candidate_perm(g, A, unrank(g, ra), unrank(g, rb)), dtype=np.int64
        )
        for ra, rb in record.pairs
    ]
    index = {p.tobytes(): i for i, p in enumerate(perms)}
    if len(index) != len(perms):
        record.closure_ok = False
        return False
    n = g.order
    if np.arange(n, dtype=np.int64).tobytes() not in index:
        record.closure_ok = False
        return False
    ok = True
    for p1 in perms:
        for p2 in perms:
            if p1[p2].tobytes() not in index:
                ok = False
                break
        inv = np.empty(n, dtype=p1.dtype)
        inv[p1] = np.arange(n)
        if inv.tobytes() not in index:
            ok = False
        if not ok:
            break
    record.closure_ok = ok
    return ok


def check_generator_companions(g: GroupParams, bound: int = DEFAULT_BOUND) -> dict:
    """For every element x of order p^m, search for a companion y such
    that (x, y) generate the group under the defining relations, i.e.
    the pair induces an automorphism sending a to x."""
    if g.order > bound:
        raise ValueError(f"group order {g.order} exceeds bound {bound}")
    t0 = time.perf_counter()
    A = add_table(g)
    orders = order_vector(g)
    x_ranks = np.flatnonzero(orders == g.pm)
    b_candidates = np.flatnonzero(g.pn % orders == 0)
    failures: list[int] = []
    witnesses: dict[int, int] = {}
    for raw_x in x_ranks:
        x_img = unrank(g, int(raw_x))
        found = None
        for raw_b in b_candidates:
            b_img = unrank(g, int(raw_b))
            c_img = commutator(g, x_img, b_img)
            if g.pd % element_order(g, c_img) != 0:
                continue
            perm = candidate_perm(g, A, x_img, b_img)
            if _is_permutation(perm):
                found = int(raw_b)
                break
        if found is None:
            failures.append(int(raw_x))
        else:
            witnesses[int(raw_x)] = found
    return {
        "params": g.as_dict(),
        "order_pm_count": int(x_ranks.size),
        "failures": failures,
        "all_admit_companion": not failures,
        "witnesses": witnesses,
        "elapsed_seconds": round(time.perf_counter() - t0, 6),
    }
