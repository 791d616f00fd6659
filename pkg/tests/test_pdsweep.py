import pytest
from hypothesis import given, settings, strategies as st

from foamcat.homology import link_homology
from foamcat.pdsweep import SweepError, compile_pd, pd_components, plan_sweep
from foamcat.qrep import link_poly
from foamcat.skewhowe import example, parse_pd

from oracles import braid_to_pd

KINKS = [[[1, 1, 2, 2]], [[2, 1, 1, 2]], [[1, 2, 2, 1]], [[2, 2, 1, 1]]]
BRAIDS = {"hopf+": ([1, 1], 2), "hopf-": ([-1, -1], 2), "trefoil+": ([1, 1, 1], 2),
          "trefoil-": ([-1, -1, -1], 2), "figure8": ([1, -2, 1, -2], 3)}


def faces(pd):
    """Faces of the 4-valent map given by the counterclockwise slot order."""
    ends = {}
    for ci, x in enumerate(pd):
        for s, e in enumerate(x):
            ends.setdefault(e, []).append((ci, s))
    other = {}
    for p, q in ends.values():
        other[p], other[q] = q, p
    seen, count = set(), 0
    for d in other:
        if d in seen:
            continue
        count += 1
        while d not in seen:
            seen.add(d)
            ci, s = other[d]
            d = (ci, (s - 1) % 4)
    return count


def pieces(pd):
    parent = list(range(len(pd)))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    ends = {}
    for ci, x in enumerate(pd):
        for e in x:
            ends.setdefault(e, []).append(ci)
    for cs in ends.values():
        parent[find(cs[0])] = find(cs[-1])
    return len({find(i) for i in range(len(pd))})


def is_planar(pd):
    return len(pd) - 2 * len(pd) + faces(pd) == 2 * pieces(pd)


def pd_of(name):
    word, k = BRAIDS[name]
    return braid_to_pd(word, k)


class TestPlan:
    def test_kink_events(self):
        assert plan_sweep([[1, 1, 2, 2]]) == [("cup", 0, 1), ("cross", 0, 0, 1), ("cap", 0, 2)]

    @pytest.mark.parametrize("name", sorted(BRAIDS))
    def test_every_crossing_placed_once(self, name):
        pd = pd_of(name)
        events = plan_sweep(pd)
        assert sorted(ev[2] for ev in events if ev[0] == "cross") == list(range(len(pd)))
        cups = sum(ev[0] == "cup" for ev in events)
        assert cups == sum(ev[0] == "cap" for ev in events)

    def test_virtual_diagram_rejected(self):
        with pytest.raises(SweepError):
            plan_sweep([[2, 3, 1, 4], [4, 2, 1, 3]])

    def test_budget(self):
        with pytest.raises(SweepError, match="budget"):
            plan_sweep(pd_of("figure8"), limit=1)

    @settings(max_examples=300, deadline=None)
    @given(st.integers(1, 3).flatmap(
        lambda n: st.permutations(list(range(1, 2 * n + 1)) * 2)))
    def test_sweep_exists_exactly_for_planar_codes(self, labels):
        pd = [list(labels[i:i + 4]) for i in range(0, len(labels), 4)]
        try:
            plan_sweep(pd)
            swept = True
        except SweepError:
            swept = False
        assert swept == is_planar(pd)


class TestComponents:
    @pytest.mark.parametrize("name,count", [("hopf+", 2), ("trefoil+", 1), ("figure8", 1)])
    def test_counts(self, name, count):
        assert pd_components(pd_of(name)) == count

    def test_kink_is_one_component(self):
        assert all(pd_components(pd) == 1 for pd in KINKS)


class TestCompiled:
    @pytest.mark.parametrize("pd", KINKS)
    @pytest.mark.parametrize("n", [2, 3])
    def test_kinks_are_unknots(self, pd, n):
        assert link_poly(parse_pd({"pd": pd}), n) == link_poly(example("unknot"), n)

    @pytest.mark.parametrize("pd", KINKS)
    def test_kink_homology(self, pd):
        assert link_homology(parse_pd({"pd": pd}), 2) == link_homology(example("unknot"), 2)

    @pytest.mark.parametrize("name", sorted(BRAIDS))
    @pytest.mark.parametrize("n", [2, 3])
    def test_polynomial_matches_braid(self, name, n):
        t = parse_pd({"pd": pd_of(name)})
        assert link_poly(t, n) == link_poly(example(name), n)

    @pytest.mark.parametrize("name", sorted(BRAIDS))
    def test_homology_matches_braid(self, name):
        t = parse_pd({"pd": pd_of(name)})
        assert link_homology(t, 2) == link_homology(example(name), 2)

    def test_compiled_domain_is_balanced(self):
        c = compile_pd(parse_pd({"pd": pd_of("trefoil+")}), 2)
        k = len(c.domain) // 2
        assert c.domain == (0,) * k + (2,) * k
        assert c.writhe == 3 and c.components == 1
