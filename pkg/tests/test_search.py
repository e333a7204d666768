import pytest

from nearrings.analyze import invertible_set
from nearrings.maps import canonical_maps
from nearrings.pgroup import coordinate_arrays, make_params
from nearrings.search import (
    dedup_up_to_aut,
    enumerate_local,
    enumerate_x1_subfamily,
)
from nearrings.verify import check_conditions, verify_all


def keys(triples):
    return sorted((t.alpha, t.beta, t.gamma) for t in triples)


@pytest.fixture(scope="module")
def pruned27(g27):
    return enumerate_local(g27)


@pytest.fixture(scope="module")
def unpruned27(g27):
    return enumerate_local(g27, prune=False)


class TestEnumerate:
    def test_solution_count_and_stats(self, pruned27):
        assert len(pruned27.solutions) == 12
        assert pruned27.stats.solutions == 12
        assert pruned27.stats.completions == 12
        assert pruned27.stats.nodes == 342
        assert pruned27.stats.conflicts == 289

    def test_canonical_included(self, g27, pruned27):
        assert canonical_maps(g27) in pruned27.solutions

    def test_every_emission_reverifies(self, g27, pruned27):
        for t in pruned27.solutions:
            report = verify_all(g27, t)
            assert report.passed
            assert invertible_set(g27, t).is_local
            # pruned solutions additionally satisfy all five conditions
            assert check_conditions(g27, t).passed

    def test_deterministic_repeat(self, g27, pruned27):
        again = enumerate_local(g27)
        assert [
            (t.alpha, t.beta, t.gamma) for t in again.solutions
        ] == [(t.alpha, t.beta, t.gamma) for t in pruned27.solutions]

    def test_worker_count_does_not_change_output(self, g27, pruned27):
        par = enumerate_local(g27, workers=2)
        assert [(t.alpha, t.beta, t.gamma) for t in par.solutions] == [
            (t.alpha, t.beta, t.gamma) for t in pruned27.solutions
        ]

    def test_max_solutions_is_a_prefix(self, g27, pruned27):
        head = enumerate_local(g27, max_solutions=5)
        assert [(t.alpha, t.beta, t.gamma) for t in head.solutions] == [
            (t.alpha, t.beta, t.gamma) for t in pruned27.solutions[:5]
        ]

    def test_zero_symmetry_emerges_from_propagation(self, g27, pruned27):
        # even without the explicit filter, every complete local solution
        # on this group has the zero row forced
        free = enumerate_local(g27, zero_symmetric=False)
        assert keys(free.solutions) == keys(pruned27.solutions)

    def test_order_bound(self):
        with pytest.raises(ValueError, match="enumeration bound"):
            enumerate_local(make_params(3, 2, 2, 1))

    def test_options_recorded(self, pruned27):
        assert pruned27.options["prune"] is True
        assert pruned27.options["workers"] == 1


class TestSubfamilyPinning:
    def test_fixed_exprs_restrict(self, g27, pruned27):
        sub = enumerate_local(g27, fixed_exprs={"alpha": "0", "beta": "x1"})
        assert sub.solutions
        assert set(keys(sub.solutions)) <= set(keys(pruned27.solutions))
        for t in sub.solutions:
            assert all(v == 0 for v in t.alpha)
            x1 = coordinate_arrays(g27)[0]
            assert t.beta == tuple(int(v) % 3 for v in x1)

    def test_unknown_map_name(self, g27):
        with pytest.raises(ValueError, match="unknown map name"):
            enumerate_local(g27, fixed_exprs={"delta": "0"})


class TestX1SubfamilyCrossOracle:
    def test_independent_oracle_agrees(self, g27, unpruned27):
        """The brute-force subfamily enumerator (no search machinery) finds
        exactly the unpruned search solutions of subfamily shape."""
        sub = enumerate_x1_subfamily(g27)
        assert len(sub) == 6
        x1 = coordinate_arrays(g27)[0]

        def in_subfamily(t):
            if any(t.alpha):
                return False
            by_x1_beta, by_x1_gamma = {}, {}
            for k, v in enumerate(x1):
                v = int(v)
                if by_x1_beta.setdefault(v, t.beta[k]) != t.beta[k]:
                    return False
                if by_x1_gamma.setdefault(v, t.gamma[k]) != t.gamma[k]:
                    return False
            return True

        filtered = [t for t in unpruned27.solutions if in_subfamily(t)]
        assert keys(filtered) == keys(sub)


class TestPruningAudit:
    """The pointwise pruning conditions are not completeness-preserving on
    this group: the unpruned search finds 36 solutions, the pruned one 12.
    The two sets are equivalent up to additive automorphisms fixing the
    identity: same orbits, same representatives."""

    def test_pruned_subset_of_unpruned(self, pruned27, unpruned27):
        assert len(unpruned27.solutions) == 36
        assert set(keys(pruned27.solutions)) <= set(keys(unpruned27.solutions))

    def test_extras_are_genuine(self, g27, pruned27, unpruned27):
        extras = set(keys(unpruned27.solutions)) - set(keys(pruned27.solutions))
        assert len(extras) == 24
        from nearrings.maps import MapTriple

        for al, be, ga in extras:
            t = MapTriple(params=g27, alpha=al, beta=be, gamma=ga)
            assert verify_all(g27, t).passed
            assert invertible_set(g27, t).is_local
            # and they genuinely violate the pruning conditions
            assert not check_conditions(g27, t).passed

    def test_orbits_coincide(self, g27, pruned27, unpruned27):
        dp = dedup_up_to_aut(g27, pruned27.solutions)
        du = dedup_up_to_aut(g27, unpruned27.solutions)
        assert dp["orbit_count"] == du["orbit_count"] == 3
        assert sorted(o["orbit_size"] for o in dp["orbits"]) == [9, 9, 18]
        assert sorted(o["orbit_size"] for o in du["orbits"]) == [9, 9, 18]
        # unpruned input contains every orbit member; pruned only a slice
        assert sorted(o["members_in_input"] for o in du["orbits"]) == [9, 9, 18]
        assert sorted(o["members_in_input"] for o in dp["orbits"]) == [3, 3, 6]
        reps = lambda d: keys(o["representative"] for o in d["orbits"])
        assert reps(dp) == reps(du)


class TestDedup:
    def test_counts(self, g27, pruned27):
        d = dedup_up_to_aut(g27, pruned27.solutions)
        assert d["total_solutions"] == 12
        assert d["stabilizer_size"] == 18
        assert d["excluded_automorphisms"] == 414
        assert sum(o["members_in_input"] for o in d["orbits"]) == 12

    def test_representatives_verify(self, g27, pruned27):
        d = dedup_up_to_aut(g27, pruned27.solutions)
        for o in d["orbits"]:
            assert verify_all(g27, o["representative"]).passed
