"""Exhaustive backtracking enumeration of local nearring multiplications.

The search assigns map-table rows (alpha(x), beta(x), gamma(x)) element
by element.  Assigned rows propagate: when rows for x and y are known,
the product z = x*y is computable from x's row alone, and z's row is
forced by the product congruences (row(z) = x * (y*b)); a mismatch with
an existing assignment kills the branch.  The pointwise conditions
(alpha == 0 mod p; beta == 0 mod p only when x1 == 0 mod p) are used as
pruning heuristics, which are necessary for locality but not assumed
sufficient for anything: every complete assignment is fed through the
full verifier and the locality classification before being emitted.

Emission order is deterministic (DFS with lexicographic row candidates)
and independent of the worker count.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import dsl
from .analyze import invertible_set
from .aut import AutRecord, aut_brute, candidate_perm
from .maps import MapTriple, mul_row, mul_table
from .pgroup import GroupParams, add_table, coordinate_arrays, make_params, rank, unrank
from .verify import verify_all


@dataclass
class SearchStats:
    nodes: int = 0
    conflicts: int = 0
    completions: int = 0
    solutions: int = 0
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "conflicts": self.conflicts,
            "completions": self.completions,
            "solutions": self.solutions,
            "elapsed_seconds": round(self.elapsed, 6),
        }

    def absorb(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.conflicts += other.conflicts
        self.completions += other.completions
        self.solutions += other.solutions


@dataclass
class SearchResult:
    params: GroupParams
    solutions: list[MapTriple]
    stats: SearchStats
    options: dict = field(default_factory=dict)


DEFAULT_ORDER_BOUND = 81

Row = tuple[int, int, int]


class _Searcher:
    def __init__(self, g: GroupParams, prune: bool, zero_symmetric: bool, fixed):
        self.g = g
        self.prune = prune
        self.zero_symmetric = zero_symmetric
        self.fixed_alpha, self.fixed_beta, self.fixed_gamma = fixed
        self.coords = [unrank(g, k) for k in range(g.order)]
        self.add = add_table(g)
        self.rows: list[Row | None] = [None] * g.order
        self.assigned: list[int] = []
        self.stats = SearchStats()
        self.solutions: list[MapTriple] = []
        self.max_solutions: int | None = None
        self._alpha_cands = self._component_candidates(g.pm, g.p if prune else 1)
        self._gamma_cands = list(range(g.pd))

    @staticmethod
    def _component_candidates(modulus: int, step: int) -> list[int]:
        return list(range(0, modulus, step))

    def _row_candidates(self, r: int) -> list[Row]:
        x1 = self.coords[r][0]
        alphas = (
            [self.fixed_alpha[r]]
            if self.fixed_alpha is not None
            else self._alpha_cands
        )
        if self.fixed_beta is not None:
            betas = [self.fixed_beta[r]]
        elif self.prune and x1 % self.g.p != 0:
            betas = [v for v in range(self.g.pn) if v % self.g.p != 0]
        else:
            betas = list(range(self.g.pn))
        gammas = (
            [self.fixed_gamma[r]] if self.fixed_gamma is not None else self._gamma_cands
        )
        out = []
        for al in alphas:
            if not self._alpha_ok(al):
                continue
            for be in betas:
                if not self._beta_ok(be, x1):
                    continue
                for ga in gammas:
                    out.append((al, be, ga))
        return out

    def _alpha_ok(self, al: int) -> bool:
        return not self.prune or al % self.g.p == 0

    def _beta_ok(self, be: int, x1: int) -> bool:
        return not self.prune or be % self.g.p != 0 or x1 % self.g.p == 0

    def _candidate_count(self, r: int) -> int:
        x1 = self.coords[r][0]
        na = 1 if self.fixed_alpha is not None else len(self._alpha_cands)
        if self.fixed_beta is not None:
            nb = 1
        elif self.prune and x1 % self.g.p != 0:
            nb = self.g.pn - self.g.pn // self.g.p
        else:
            nb = self.g.pn
        nc = 1 if self.fixed_gamma is not None else self.g.pd
        return na * nb * nc

    def _fixed_conflict(self, r: int, row: Row) -> bool:
        if self.fixed_alpha is not None and self.fixed_alpha[r] != row[0]:
            return True
        if self.fixed_beta is not None and self.fixed_beta[r] != row[1]:
            return True
        if self.fixed_gamma is not None and self.fixed_gamma[r] != row[2]:
            return True
        return False

    def _assign(self, r: int, row: Row, trail: list[int], queue: list[tuple[int, int]]) -> bool:
        """Place a row and seed propagation pairs; False on immediate conflict."""
        x1 = self.coords[r][0]
        if self._fixed_conflict(r, row):
            return False
        if not (self._alpha_ok(row[0]) and self._beta_ok(row[1], x1)):
            return False
        self.rows[r] = row
        self.assigned.append(r)
        trail.append(r)
        for w in self.assigned:
            queue.append((r, w))
            if w != r:
                queue.append((w, r))
        return True

    def _propagate(self, queue: list[tuple[int, int]], trail: list[int]) -> bool:
        g = self.g
        while queue:
            u, v = queue.pop()
            ru = self.rows[u]
            rv = self.rows[v]
            if ru is None or rv is None:
                continue
            xu = self.coords[u]
            xv = self.coords[v]
            z = rank(g, mul_row(g, ru, xu, xv))
            derived = mul_row(g, ru, xu, rv)
            existing = self.rows[z]
            if existing is None:
                if not self._assign(z, derived, trail, queue):
                    return False
            elif existing != derived:
                return False
        return True

    def _undo(self, trail: list[int]) -> None:
        for r in reversed(trail):
            self.rows[r] = None
            self.assigned.pop()

    def _select(self) -> int | None:
        best = None
        best_count = None
        for r in range(self.g.order):
            if self.rows[r] is None:
                cnt = self._candidate_count(r)
                if best_count is None or cnt < best_count:
                    best, best_count = r, cnt
        return best

    def _emit_if_valid(self) -> None:
        g = self.g
        self.stats.completions += 1
        rows = self.rows
        triple = MapTriple(
            params=g,
            alpha=tuple(row[0] for row in rows),
            beta=tuple(row[1] for row in rows),
            gamma=tuple(row[2] for row in rows),
        )
        tables = (self.add, mul_table(g, triple))
        report = verify_all(g, triple, tables=tables)
        if not report.passed:
            return
        if self.zero_symmetric and not report.check("zero_symmetric").passed:
            return
        profile = invertible_set(g, triple, tables=tables)
        if not profile.is_local:
            return
        self.solutions.append(triple)
        self.stats.solutions += 1

    def _done(self) -> bool:
        return self.max_solutions is not None and len(self.solutions) >= self.max_solutions

    def dfs(self) -> None:
        if self._done():
            return
        r = self._select()
        if r is None:
            self._emit_if_valid()
            return
        for cand in self._row_candidates(r):
            if self._done():
                return
            self.stats.nodes += 1
            trail: list[int] = []
            queue: list[tuple[int, int]] = []
            if self._assign(r, cand, trail, queue) and self._propagate(queue, trail):
                self.dfs()
            else:
                self.stats.conflicts += 1
            self._undo(trail)

    def seed(self) -> bool:
        """Forced rows before any branching; False if already inconsistent."""
        g = self.g
        trail: list[int] = []
        queue: list[tuple[int, int]] = []
        ra = rank(g, (1, 0, 0))
        if not self._assign(ra, (0, 1, 0), trail, queue):
            return False
        if self.zero_symmetric and self.rows[0] is None:
            if not self._assign(0, (0, 0, 0), trail, queue):
                return False
        # rows fully pinned by fixed expressions are assigned up front
        if (
            self.fixed_alpha is not None
            and self.fixed_beta is not None
            and self.fixed_gamma is not None
        ):
            for r in range(g.order):
                if self.rows[r] is None:
                    row = (self.fixed_alpha[r], self.fixed_beta[r], self.fixed_gamma[r])
                    if not self._assign(r, row, trail, queue):
                        return False
        return self._propagate(queue, trail)

    def force(self, r: int, row: Row) -> bool:
        trail: list[int] = []
        queue: list[tuple[int, int]] = []
        return self._assign(r, row, trail, queue) and self._propagate(queue, trail)


def _fixed_tables(g: GroupParams, fixed_exprs: dict | None):
    if not fixed_exprs:
        return (None, None, None)
    moduli = {"alpha": g.pm, "beta": g.pn, "gamma": g.pd}
    out = {}
    for name, expr in fixed_exprs.items():
        if name not in moduli:
            raise ValueError(f"unknown map name {name!r}; expected alpha, beta or gamma")
        ast = dsl.parse_map_expr(expr) if isinstance(expr, str) else expr
        out[name] = [
            dsl.eval_map_expr(ast, unrank(g, k), moduli[name]) for k in range(g.order)
        ]
    return (out.get("alpha"), out.get("beta"), out.get("gamma"))


def _make_searcher(g, prune, zero_symmetric, fixed_exprs) -> _Searcher:
    return _Searcher(g, prune, zero_symmetric, _fixed_tables(g, fixed_exprs))


def _run_subtree(args) -> tuple[list[dict], dict]:
    (p, m, n, d), prune, zero_symmetric, fixed_exprs, forced, max_solutions = args
    g = make_params(p, m, n, d)
    s = _make_searcher(g, prune, zero_symmetric, fixed_exprs)
    s.max_solutions = max_solutions
    if not s.seed():
        return [], s.stats.to_dict()
    for r, row in forced:
        s.stats.nodes += 1
        if not s.force(r, tuple(row)):
            s.stats.conflicts += 1
            return [], s.stats.to_dict()
    s.dfs()
    return [t.to_json_dict() for t in s.solutions], s.stats.to_dict()


def enumerate_local(
    g: GroupParams,
    *,
    max_solutions: int | None = None,
    workers: int = 1,
    prune: bool = True,
    zero_symmetric: bool = True,
    fixed_exprs: dict | None = None,
    order_bound: int = DEFAULT_ORDER_BOUND,
) -> SearchResult:
    """All map triples whose induced multiplication passes the full axiom
    verification, is zero-symmetric (unless disabled) and has a
    non-invertible set closed under addition and negation."""
    if g.order > order_bound:
        raise ValueError(
            f"group order {g.order} exceeds enumeration bound {order_bound}; "
            "raise order_bound explicitly to override"
        )
    t0 = time.perf_counter()
    options = {
        "prune": prune,
        "zero_symmetric": zero_symmetric,
        "fixed_exprs": dict(fixed_exprs) if fixed_exprs else None,
        "workers": workers,
        "max_solutions": max_solutions,
    }
    stats = SearchStats()
    solutions: list[MapTriple] = []
    probe = _make_searcher(g, prune, zero_symmetric, fixed_exprs)
    probe.max_solutions = max_solutions
    if not probe.seed():
        stats.elapsed = time.perf_counter() - t0
        return SearchResult(g, [], stats, options)
    root = probe._select()
    if workers <= 1 or root is None:
        probe.dfs()
        solutions = probe.solutions
        stats.absorb(probe.stats)
    else:
        cands = probe._row_candidates(root)
        jobs = [
            ((g.p, g.m, g.n, g.d), prune, zero_symmetric, fixed_exprs,
             [(root, list(cand))], None)
            for cand in cands
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for sols, st in pool.map(_run_subtree, jobs):
                for doc in sols:
                    solutions.append(MapTriple.from_json_dict(doc))
                sub = SearchStats(**{k: v for k, v in st.items() if k != "elapsed_seconds"})
                stats.absorb(sub)
        if max_solutions is not None:
            solutions = solutions[:max_solutions]
        stats.solutions = len(solutions)
    stats.elapsed = time.perf_counter() - t0
    return SearchResult(g, solutions, stats, options)


def enumerate_x1_subfamily(g: GroupParams) -> list[MapTriple]:
    """Independent brute-force oracle over the restricted subfamily of
    zero-symmetric maps with alpha == 0 and beta, gamma functions of x1
    only.  Every total table in the subfamily is built and fully
    verified; no search machinery is shared with enumerate_local."""
    x1s = coordinate_arrays(g)[0]
    free = list(range(2, g.pm))
    solutions = []
    for combo in product(product(range(g.pn), range(g.pd)), repeat=len(free)):
        beta0 = {0: 0, 1: 1}
        gamma0 = {0: 0, 1: 0}
        for x1, (bv, gv) in zip(free, combo):
            beta0[x1] = bv
            gamma0[x1] = gv
        triple = MapTriple(
            params=g,
            alpha=(0,) * g.order,
            beta=tuple(beta0[int(v)] for v in x1s),
            gamma=tuple(gamma0[int(v)] for v in x1s),
        )
        tables = (add_table(g), mul_table(g, triple))
        if not verify_all(g, triple, tables=tables).passed:
            continue
        if not invertible_set(g, triple, tables=tables).is_local:
            continue
        solutions.append(triple)
    return solutions


def dedup_up_to_aut(
    g: GroupParams, triples: list[MapTriple], record: AutRecord | None = None
) -> dict:
    """Partition solutions into orbits under the automorphisms of R+
    that fix the identity a; automorphisms moving a would transport the
    table to one whose identity is not a, and are counted as excluded."""
    if record is None:
        record = aut_brute(g)
    A = add_table(g)
    ra = rank(g, (1, 0, 0))
    rb = rank(g, (0, 1, 0))
    perms = [
        candidate_perm(g, A, unrank(g, pa), unrank(g, pb)) for pa, pb in record.pairs
    ]
    stabilizer = [p for p in perms if int(p[ra]) == ra]
    excluded = len(perms) - len(stabilizer)
    x1a, x2a, x3a = coordinate_arrays(g)

    def key(t: MapTriple):
        return (t.alpha, t.beta, t.gamma)

    seen: set = set()
    orbits = []
    for t in triples:
        if key(t) in seen:
            continue
        M = mul_table(g, t)
        orbit_keys = set()
        for p in stabilizer:
            pinv = np.empty_like(p)
            pinv[p] = np.arange(g.order)
            Mt = p[M[np.ix_(pinv, pinv)]]
            col = Mt[:, rb]
            transported = (
                tuple(int(v) for v in x1a[col]),
                tuple(int(v) for v in x2a[col]),
                tuple(int(v) for v in x3a[col]),
            )
            orbit_keys.add(transported)
        members = [u for u in triples if key(u) in orbit_keys]
        rep = min(key(u) for u in members)
        orbits.append(
            {
                "representative": MapTriple(params=g, alpha=rep[0], beta=rep[1], gamma=rep[2]),
                "orbit_size": len(orbit_keys),
                "members_in_input": len(members),
            }
        )
        seen |= {key(u) for u in members}
    return {
        "orbits": orbits,
        "orbit_count": len(orbits),
        "stabilizer_size": len(stabilizer),
        "excluded_automorphisms": excluded,
        "total_solutions": len(triples),
    }
