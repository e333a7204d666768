"""Structural analysis of a verified candidate multiplication.

Invertible elements are always found by exhaustive two-sided inverse
search; the x1-criterion is a checked claim, never a shortcut.  Localness
is a computed classification: local iff the non-invertible set is closed
under addition and negation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cayley import (
    CayleyGroup,
    frattini_pgroup,
    frattini_via_maximal,
    group_from_params,
    max_order,
    semidirect_product,
)
from .maps import MapTriple, mul_table
from .pgroup import (
    GroupParams,
    add_table,
    coordinate_arrays,
    neg_table,
    order_vector,
    rank,
    subgroup_closure,
    unrank,
)


@dataclass
class StructureProfile:
    params: GroupParams
    units: list[int]                 # ranks of invertible elements, sorted
    nonunits: list[int]              # ranks of L, sorted
    unit_count: int
    l_is_subgroup: bool
    is_local: bool
    l_index: int | None              # |R+ : L| when L is a subgroup
    index_p: bool
    x1_criterion_holds: bool
    identity_additive_order: int
    exponent: int
    mult_group: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "units": self.units,
            "nonunits": self.nonunits,
            "unit_count": self.unit_count,
            "l_is_subgroup": self.l_is_subgroup,
            "is_local": self.is_local,
            "l_index": self.l_index,
            "index_p": self.index_p,
            "x1_criterion_holds": self.x1_criterion_holds,
            "identity_additive_order": self.identity_additive_order,
            "exponent": self.exponent,
            "mult_group": self.mult_group,
        }


def _unit_mask(M: np.ndarray, ra: int) -> np.ndarray:
    both = (M == ra) & (M.T == ra)
    return both.any(axis=1)


def invertible_set(g: GroupParams, maps: MapTriple, tables=None) -> StructureProfile:
    """Exhaustive two-sided inverse search plus the locality classification."""
    A = tables[0] if tables else add_table(g)
    M = tables[1] if tables else mul_table(g, maps)
    n = g.order
    ra = rank(g, (1, 0, 0))
    mask = _unit_mask(M, ra)
    units = np.flatnonzero(mask)
    nonunits = np.flatnonzero(~mask)

    neg = neg_table(g)
    nset = set(nonunits.tolist())
    closed = all(int(A[x, y]) in nset for x in nset for y in nset) and all(
        int(neg[x]) in nset for x in nset
    )
    l_index = n // len(nset) if closed and len(nset) and n % len(nset) == 0 else None

    x1 = coordinate_arrays(g)[0]
    x1_crit = bool(np.array_equal(mask, x1 % g.p != 0))

    orders = order_vector(g)
    return StructureProfile(
        params=g,
        units=[int(u) for u in units],
        nonunits=[int(u) for u in nonunits],
        unit_count=int(mask.sum()),
        l_is_subgroup=closed,
        is_local=closed,
        l_index=l_index,
        index_p=l_index == g.p,
        x1_criterion_holds=x1_crit,
        identity_additive_order=int(orders[ra]),
        exponent=int(orders.max()),
    )


def check_unit_structure(g: GroupParams, maps: MapTriple, profile: StructureProfile | None = None,
                   tables=None) -> dict:
    """The five index/criterion claims about L and R*:

      (i)   L closed under add and neg
      (ii)  |R+ : L| = p
      (iii) |R*| = p^(m+n+d-1) * (p-1)
      (iv)  x invertible iff x1 != 0 mod p, element by element
      (v)   L equals the subgroup generated by {a*p, b, c} setwise
    """
    if profile is None:
        profile = invertible_set(g, maps, tables=tables)
    expected_units = g.p ** (g.m + g.n + g.d - 1) * (g.p - 1)
    pa = ((g.p) % g.pm, 0, 0)
    span = subgroup_closure(g, [pa, (0, 1, 0), (0, 0, 1)])
    span_ranks = sorted(rank(g, x) for x in span)
    return {
        "l_is_subgroup": profile.l_is_subgroup,
        "index_p": profile.index_p,
        "unit_count": profile.unit_count,
        "unit_count_expected": expected_units,
        "unit_count_matches": profile.unit_count == expected_units,
        "x1_criterion_holds": profile.x1_criterion_holds,
        "l_equals_span": span_ranks == profile.nonunits,
        "l_size": len(profile.nonunits),
        "passed": (
            profile.l_is_subgroup
            and profile.index_p
            and profile.unit_count == expected_units
            and profile.x1_criterion_holds
            and span_ranks == profile.nonunits
        ),
    }


def check_identity_order(g: GroupParams, maps: MapTriple, profile: StructureProfile | None = None,
                         tables=None) -> dict:
    """Additive order of the identity equals the exponent p^m and equals
    the additive order of every unit."""
    if profile is None:
        profile = invertible_set(g, maps, tables=tables)
    orders = order_vector(g)
    unit_orders = set(int(orders[u]) for u in profile.units)
    return {
        "identity_additive_order": profile.identity_additive_order,
        "exponent": profile.exponent,
        "expected": g.pm,
        "all_units_have_exponent_order": unit_orders == {g.pm},
        "unit_order_set": sorted(unit_orders),
        "passed": profile.identity_additive_order == g.pm == profile.exponent
        and unit_orders == {g.pm},
    }


def lambda_embedding(g: GroupParams, maps: MapTriple, profile: StructureProfile | None = None,
                     tables=None) -> dict:
    """u -> (left multiplication by u) as a monoid embedding of R* into
    the additive automorphisms of R+, with orbit of the identity = R*."""
    A = tables[0] if tables else add_table(g)
    M = tables[1] if tables else mul_table(g, maps)
    if profile is None:
        profile = invertible_set(g, maps, tables=(A, M))
    n = g.order
    ra = rank(g, (1, 0, 0))
    units = profile.units
    perms = {}
    additive = True
    bijective = True
    for u in units:
        lam = M[u]
        if sorted(lam.tolist()) != list(range(n)):
            bijective = False
        if not np.array_equal(lam[A], A[lam[:, None], lam[None, :]]):
            additive = False
        perms[u] = lam
    distinct = len({p.tobytes() for p in perms.values()})
    orbit = sorted(int(M[u, ra]) for u in units)
    hom = all(
        np.array_equal(perms[u][perms[v]], M[int(M[u, v])])
        for u in units
        for v in units
    )
    return {
        "unit_count": len(units),
        "all_additive_automorphisms": additive and bijective,
        "distinct_automorphisms": distinct,
        "injective": distinct == len(units),
        "orbit_of_identity_equals_units": orbit == units,
        "monoid_homomorphism": hom,
        "passed": additive and bijective and distinct == len(units)
        and orbit == units and hom,
    }


def check_frattini_characterization(g: GroupParams, maps: MapTriple, profile: StructureProfile | None = None,
                           tables=None, cross_oracle_bound: int = 243) -> dict:
    """Build H = R+ x| (i + L) and check L = R+ intersect Phi(H) and
    Phi(R+) <= L.  Skips with an explicit status when H would exceed the
    table bound."""
    A = tables[0] if tables else add_table(g)
    M = tables[1] if tables else mul_table(g, maps)
    if profile is None:
        profile = invertible_set(g, maps, tables=(A, M))
    if not profile.is_local:
        return {"status": "not_local", "passed": False}
    n = g.order
    ra = rank(g, (1, 0, 0))
    l_ranks = profile.nonunits
    coset = sorted(int(A[ra, l]) for l in l_ranks)  # i + L
    # the coset must be a group under the nearring multiplication
    coset_set = set(coset)
    mult_closed = all(int(M[u, v]) in coset_set for u in coset for v in coset)
    if n * len(coset) > max_order():
        return {"status": "size_bound_exceeded", "h_order": n * len(coset), "passed": False}
    actors = [np.ascontiguousarray(M[u], dtype=np.int32) for u in coset]
    carrier = CayleyGroup(op=np.ascontiguousarray(A, dtype=np.int32), identity=0)
    H = semidirect_product(carrier, actors)
    k = len(actors)
    ident_bytes = np.arange(n, dtype=np.int32).tobytes()
    ident_u = next(i for i, a in enumerate(actors) if a.tobytes() == ident_bytes)
    phi_h = set(frattini_pgroup(H))
    # R+ sits inside H as the pairs (r, identity actor)
    l_from_phi = sorted(r for r in range(n) if r * k + ident_u in phi_h)
    phi_r = sorted(frattini_pgroup(CayleyGroup(op=A, identity=0)))
    phi_r_in_l = set(phi_r) <= set(l_ranks)
    result = {
        "status": "ok",
        "h_order": H.order,
        "coset_is_mult_group": mult_closed,
        "l_equals_rplus_cap_phi_h": l_from_phi == l_ranks,
        "phi_rplus_subset_l": phi_r_in_l,
        "phi_rplus_size": len(phi_r),
        "passed": mult_closed and l_from_phi == l_ranks and phi_r_in_l,
    }
    if H.order <= cross_oracle_bound:
        result["phi_h_cross_oracle_agrees"] = sorted(phi_h) == frattini_via_maximal(H)
        result["passed"] = result["passed"] and result["phi_h_cross_oracle_agrees"]
    return result


def mult_group_structure(g: GroupParams, maps: MapTriple, profile: StructureProfile | None = None,
                         tables=None) -> dict:
    """Order, abelian flag and element-order histogram of (R*, *)."""
    A = tables[0] if tables else add_table(g)
    M = tables[1] if tables else mul_table(g, maps)
    if profile is None:
        profile = invertible_set(g, maps, tables=(A, M))
    units = profile.units
    ra = rank(g, (1, 0, 0))
    sub = M[np.ix_(units, units)]
    abelian = bool(np.array_equal(sub, sub.T))
    histogram: dict[int, int] = {}
    for u in units:
        order = 1
        cur = u
        while cur != ra:
            cur = int(M[cur, u])
            order += 1
        histogram[order] = histogram.get(order, 0) + 1
    return {
        "order": len(units),
        "abelian": abelian,
        "order_histogram": {str(k): v for k, v in sorted(histogram.items())},
    }


def full_profile(g: GroupParams, maps: MapTriple, tables=None,
                 with_frattini: bool = True) -> StructureProfile:
    """Profile with the multiplicative-group descriptors filled in."""
    A = tables[0] if tables else add_table(g)
    M = tables[1] if tables else mul_table(g, maps)
    profile = invertible_set(g, maps, tables=(A, M))
    profile.mult_group = mult_group_structure(g, maps, profile, tables=(A, M))
    return profile
