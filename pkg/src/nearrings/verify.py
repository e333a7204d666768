"""Axiom and condition verification for candidate multiplications.

Every check produces a CheckResult with a pass/fail status, the first
counterexample in rank-lexicographic order when failing, the number of
tuples examined and the elapsed wall time.  Counterexamples are element
text triples ("x1,x2,x3") and replay through nearrings.maps.mul.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .maps import MapTriple, mul_table
from .pgroup import (
    GroupParams,
    add_table,
    coordinate_arrays,
    element_to_text,
    rank,
    unrank,
)

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexample: tuple[str, ...] | None
    checked: int
    elapsed: float
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "checked": self.checked,
            "elapsed_seconds": round(self.elapsed, 6),
            "details": self.details,
        }


@dataclass
class VerificationReport:
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}

    def merged(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(self.checks + other.checks)


def _tables(g: GroupParams, maps: MapTriple, tables):
    if tables is not None:
        return tables
    return add_table(g), mul_table(g, maps)


def _ce(g: GroupParams, ranks) -> tuple[str, ...]:
    return tuple(element_to_text(unrank(g, int(r))) for r in ranks)


def _sample_ranks(n: int, samples: int, seed: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, n, size=(3, samples), dtype=np.int64)
    return draws[0], draws[1], draws[2]


def _require_mode(mode: str, seed) -> None:
    if mode not in (EXHAUSTIVE, SAMPLED):
        raise ValueError(f"mode must be {EXHAUSTIVE!r} or {SAMPLED!r}, got {mode!r}")
    if mode == SAMPLED and seed is None:
        raise ValueError("sampled mode requires an explicit seed")


def verify_left_distributive(
    g: GroupParams,
    maps: MapTriple,
    mode: str = EXHAUSTIVE,
    samples: int = 10**6,
    seed: int | None = None,
    tables=None,
) -> VerificationReport:
    """x(y+z) = xy + xz, exhaustively or on seeded samples plus the full
    (x, y, b) and (x, y, c) slices."""
    _require_mode(mode, seed)
    A, M = _tables(g, maps, tables)
    n = g.order
    checks = []
    t0 = time.perf_counter()
    if mode == EXHAUSTIVE:
        bad = kernels.ldist_counterexample(M, A)
        checks.append(
            CheckResult(
                name="left_distributive",
                passed=bad is None,
                counterexample=None if bad is None else _ce(g, bad),
                checked=n**3 if bad is None else _triple_index(n, bad) + 1,
                elapsed=time.perf_counter() - t0,
                details={"mode": EXHAUSTIVE},
            )
        )
    else:
        xs, ys, zs = _sample_ranks(n, samples, seed)
        hit = kernels.ldist_sampled(M, A, xs, ys, zs)
        bad = None if hit < 0 else (xs[hit], ys[hit], zs[hit])
        checks.append(
            CheckResult(
                name="left_distributive",
                passed=bad is None,
                counterexample=None if bad is None else _ce(g, bad),
                checked=samples if bad is None else hit + 1,
                elapsed=time.perf_counter() - t0,
                details={"mode": SAMPLED, "samples": samples, "seed": seed},
            )
        )
        checks.extend(_ldist_slices(g, A, M))
    return VerificationReport(checks)


def _triple_index(n: int, triple) -> int:
    x, y, z = triple
    return (x * n + y) * n + z


def _ldist_slices(g: GroupParams, A, M) -> list[CheckResult]:
    n = g.order
    out = []
    for gen_name, gen in (("b", (0, 1, 0)), ("c", (0, 0, 1))):
        t0 = time.perf_counter()
        rz = rank(g, gen)
        lhs = M[np.arange(n)[:, None], A[:, rz][None, :]]
        rhs = A[M, M[:, rz][:, None]]
        bad = np.argwhere(lhs != rhs)
        ce = None
        if bad.size:
            x, y = bad[0]
            ce = _ce(g, (x, y, rz))
        out.append(
            CheckResult(
                name=f"left_distributive_slice_{gen_name}",
                passed=not bad.size,
                counterexample=ce,
                checked=n * n,
                elapsed=time.perf_counter() - t0,
                details={"slice": gen_name},
            )
        )
    return out


def verify_associative(
    g: GroupParams,
    maps: MapTriple,
    mode: str = EXHAUSTIVE,
    samples: int = 10**6,
    seed: int | None = None,
    tables=None,
) -> VerificationReport:
    """(xy)z = x(yz), exhaustively or sampled plus generator slices."""
    _require_mode(mode, seed)
    A, M = _tables(g, maps, tables)
    n = g.order
    checks = []
    t0 = time.perf_counter()
    if mode == EXHAUSTIVE:
        bad = kernels.assoc_counterexample(M)
        checks.append(
            CheckResult(
                name="associative",
                passed=bad is None,
                counterexample=None if bad is None else _ce(g, bad),
                checked=n**3 if bad is None else _triple_index(n, bad) + 1,
                elapsed=time.perf_counter() - t0,
                details={"mode": EXHAUSTIVE},
            )
        )
    else:
        xs, ys, zs = _sample_ranks(n, samples, seed)
        hit = kernels.assoc_sampled(M, xs, ys, zs)
        bad = None if hit < 0 else (xs[hit], ys[hit], zs[hit])
        checks.append(
            CheckResult(
                name="associative",
                passed=bad is None,
                counterexample=None if bad is None else _ce(g, bad),
                checked=samples if bad is None else hit + 1,
                elapsed=time.perf_counter() - t0,
                details={"mode": SAMPLED, "samples": samples, "seed": seed},
            )
        )
        checks.extend(_assoc_slices(g, M))
    return VerificationReport(checks)


def _assoc_slices(g: GroupParams, M) -> list[CheckResult]:
    n = g.order
    out = []
    for gen_name, gen in (("b", (0, 1, 0)), ("c", (0, 0, 1))):
        t0 = time.perf_counter()
        rz = rank(g, gen)
        lhs = M[M, rz]
        rhs = M[:, M[:, rz]]
        bad = np.argwhere(lhs != rhs)
        ce = None
        if bad.size:
            x, y = bad[0]
            ce = _ce(g, (x, y, rz))
        out.append(
            CheckResult(
                name=f"associative_slice_{gen_name}",
                passed=not bad.size,
                counterexample=ce,
                checked=n * n,
                elapsed=time.perf_counter() - t0,
                details={"slice": gen_name},
            )
        )
    return out


def verify_identity(g: GroupParams, maps: MapTriple, tables=None) -> VerificationReport:
    """a = (1,0,0) is a two-sided multiplicative identity."""
    A, M = _tables(g, maps, tables)
    n = g.order
    ra = rank(g, (1, 0, 0))
    t0 = time.perf_counter()
    idx = np.arange(n)
    left_bad = np.flatnonzero(M[ra] != idx)
    right_bad = np.flatnonzero(M[:, ra] != idx)
    ce = None
    if left_bad.size:
        ce = _ce(g, (ra, left_bad[0]))
    elif right_bad.size:
        ce = _ce(g, (right_bad[0], ra))
    return VerificationReport(
        [
            CheckResult(
                name="identity",
                passed=ce is None,
                counterexample=ce,
                checked=2 * n,
                elapsed=time.perf_counter() - t0,
            )
        ]
    )


def verify_zero_symmetric(g: GroupParams, maps: MapTriple, tables=None) -> VerificationReport:
    """alpha(0) = beta(0) = gamma(0) = 0, plus an exhaustive 0*x = 0 audit."""
    A, M = _tables(g, maps, tables)
    t0 = time.perf_counter()
    row0 = (maps.alpha[0], maps.beta[0], maps.gamma[0])
    zero_rows_ok = row0 == (0, 0, 0)
    bad = np.flatnonzero(M[0] != 0)
    ce = None
    if not zero_rows_ok:
        ce = (element_to_text((0, 0, 0)),)
    elif bad.size:
        ce = _ce(g, (0, bad[0]))
    return VerificationReport(
        [
            CheckResult(
                name="zero_symmetric",
                passed=ce is None,
                counterexample=ce,
                checked=g.order + 1,
                elapsed=time.perf_counter() - t0,
                details={"zero_row": list(row0)},
            )
        ]
    )


def check_conditions(g: GroupParams, maps: MapTriple, tables=None) -> VerificationReport:
    """The five pointwise/pairwise congruence conditions on (alpha, beta,
    gamma) that a zero-symmetric local multiplication must satisfy:

      (1) alpha(x) == 0 mod p
      (2) beta(x) == 0 mod p implies x1 == 0 mod p
      (3) alpha(xy) == x1*alpha(y) + alpha(x)*beta(y)   mod p^m
      (4) beta(xy)  == x2*alpha(y) + beta(x)*beta(y)    mod p^n
      (5) gamma(xy) == the long c-coefficient congruence mod p^d
    """
    A, M = _tables(g, maps, tables)
    n = g.order
    x1, x2, x3 = coordinate_arrays(g)
    al, be, ga = maps.arrays
    checks = []

    t0 = time.perf_counter()
    bad = np.flatnonzero(al % g.p != 0)
    checks.append(
        CheckResult(
            name="condition_1_alpha_mod_p",
            passed=not bad.size,
            counterexample=None if not bad.size else _ce(g, (bad[0],)),
            checked=n,
            elapsed=time.perf_counter() - t0,
        )
    )

    t0 = time.perf_counter()
    bad = np.flatnonzero((be % g.p == 0) & (x1 % g.p != 0))
    checks.append(
        CheckResult(
            name="condition_2_beta_unit_criterion",
            passed=not bad.size,
            counterexample=None if not bad.size else _ce(g, (bad[0],)),
            checked=n,
            elapsed=time.perf_counter() - t0,
        )
    )

    c2al = al * (al - 1) // 2
    c2be = be * (be - 1) // 2

    t0 = time.perf_counter()
    want = (x1[:, None] * al[None, :] + al[:, None] * be[None, :]) % g.pm
    got = al[M]
    checks.append(_pair_check(g, "condition_3_alpha_product", got, want, t0))

    t0 = time.perf_counter()
    want = (x2[:, None] * al[None, :] + be[:, None] * be[None, :]) % g.pn
    got = be[M]
    checks.append(_pair_check(g, "condition_4_beta_product", got, want, t0))

    t0 = time.perf_counter()
    want = (
        -(x1 * x2)[:, None] * c2al[None, :]
        - (al * be)[:, None] * c2be[None, :]
        - (x2 * al)[:, None] * (al * be)[None, :]
        + x3[:, None] * al[None, :]
        + ga[:, None] * be[None, :]
        + (x1 * be)[:, None] * ga[None, :]
        - (x2 * al)[:, None] * ga[None, :]
    ) % g.pd
    got = ga[M]
    checks.append(_pair_check(g, "condition_5_gamma_product", got, want, t0))

    return VerificationReport(checks)


def _pair_check(g: GroupParams, name: str, got, want, t0: float) -> CheckResult:
    bad = np.argwhere(got != want)
    ce = None
    if bad.size:
        ce = _ce(g, tuple(bad[0]))
    return CheckResult(
        name=name,
        passed=not bad.size,
        counterexample=ce,
        checked=got.size,
        elapsed=time.perf_counter() - t0,
    )


def verify_all(
    g: GroupParams,
    maps: MapTriple,
    mode: str = EXHAUSTIVE,
    samples: int = 10**6,
    seed: int | None = None,
    tables=None,
) -> VerificationReport:
    """Bundle: identity, left distributivity, associativity, zero-symmetry.

    If all of identity, left distributivity and associativity pass
    exhaustively, (R, +, *) is a nearring with identity by definition.
    """
    tables = _tables(g, maps, tables)
    report = verify_identity(g, maps, tables=tables)
    report = report.merged(verify_left_distributive(g, maps, mode, samples, seed, tables=tables))
    report = report.merged(verify_associative(g, maps, mode, samples, seed, tables=tables))
    report = report.merged(verify_zero_symmetric(g, maps, tables=tables))
    return report


def default_mode_for(g: GroupParams) -> str:
    """Exhaustive up to order 243; sampled (with slice checks) above."""
    return EXHAUSTIVE if g.order <= 243 else SAMPLED
