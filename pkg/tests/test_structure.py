import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_frustration, random_signed
from frustrix.census import CensusFilter, class_signature_masks, enumerate_subcubic
from frustrix.errors import CapacityError, RuleInapplicableError
from frustrix.families import (
    K4_GADGET,
    cubic_tree_path,
    gadget_chain,
    gamma,
    petersen_negative,
    triangle_tree_extremal,
)
from frustrix.reductions import (
    ADJ_TRIANGLES,
    ALL_RULES,
    DEGREE2_VERTEX,
    H1_SUBGRAPH,
    NEG_TRIANGLE,
    POS_2EDGECUT,
    RULE_ORDER,
    is_applicable,
)
from frustrix.sgcore import (
    SignatureBits,
    SignedGraph,
    SwitchState,
    negative_edge_count,
    subdivide_edge,
    switch,
)
from frustrix.solver import frustration_batch, frustration_bruteforce, frustration_index
from frustrix.structure import (
    apply_reduction,
    detect_all,
    detect_configuration,
    every_positive_edge_in_equilibrated_cut,
    is_critically_frustrated,
    key_inequality_report,
    minimize,
    reduce_to_fixpoint,
    violates_tc_free,
    xy_partition,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def minimal_classes(n_lo, n_hi, flt=CensusFilter()):
    """Minimal representative of every switching class of every census graph."""
    for n in range(n_lo, n_hi + 1):
        for g in enumerate_subcubic(n, flt):
            masks = class_signature_masks(g)
            _, states = frustration_batch(g, masks)
            for bits, s in zip(masks, states.tolist()):
                h = g.with_signature(SignatureBits(bits, g.m))
                yield switch(h, SwitchState.from_mask(g.n, int(s)))


def c6():
    return SignedGraph.from_pairs(6, [(i, (i + 1) % 6) for i in range(6)])


def negative_triangle():
    return SignedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, -1)])


class TestXYPartition:
    def test_triangle_one_negative(self):
        p = xy_partition(SignedGraph(3, [(0, 1, -1), (1, 2, 1), (0, 2, 1)]))
        assert p.X == {2} and p.Y == {0, 1}
        assert p.X_strata[2] == {2} and p.Y_strata[1] == {0, 1}
        assert sum(len(s) for s in p.X_strata + p.Y_strata) == 3

    def test_all_positive(self):
        p = xy_partition(petersen_negative().all_positive())
        assert p.X == set(range(10)) and not p.Y

    def test_gamma1(self):
        # every vertex meets a negative edge, so there is no X and each Y
        # vertex has zero X-neighbours
        p = xy_partition(gamma(1))
        assert p.X == frozenset() and p.Y == frozenset(range(4))
        assert p.Y0 == frozenset(range(4)) and not p.Y2 and not p.X3

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_strata_partition(self, seed):
        g = random_signed(random.Random(seed), 1, 12)
        p = xy_partition(g)
        cells = list(p.X_strata) + list(p.Y_strata)
        assert set().union(*cells) == set(range(g.n))
        assert sum(len(c) for c in cells) == g.n
        assert p.X | p.Y == set(range(g.n)) and not p.X & p.Y

    def test_minimal_y_vertices_have_y_neighbours(self):
        for h in minimal_classes(2, 7):
            p = xy_partition(h)
            for v in p.Y:
                assert any(w in p.Y for w in h.neighbors(v))

    def test_y0_empty_on_minimal_cubic_negative_triangle_free(self):
        checked = 0
        for h in minimal_classes(4, 10, CensusFilter(cubic=True)):
            if detect_configuration(h, NEG_TRIANGLE) is not None:
                continue
            checked += 1
            assert not xy_partition(h).Y0
        assert checked > 0


class TestKeyInequality:
    def test_triangle(self):
        p = xy_partition(SignedGraph(3, [(0, 1, -1), (1, 2, 1), (0, 2, 1)]))
        assert key_inequality_report(p) == (0, 0, True)

    def test_all_positive(self):
        assert key_inequality_report(xy_partition(c6())) == (0, 0, True)

    def test_census_distribution_is_reported(self):
        dist = {}
        for h in minimal_classes(3, 8, CensusFilter(two_edge_connected=True)):
            lhs, rhs, ok = key_inequality_report(xy_partition(h))
            assert ok == (lhs <= rhs)
            dist[(lhs, rhs)] = dist.get((lhs, rhs), 0) + 1
        assert sum(dist.values()) > 0


class TestTreeCycleFree:
    def test_minimal_signatures_are_free(self):
        for h in minimal_classes(1, 7):
            assert violates_tc_free(h, 2) is None

    def test_negative_triangle_vertex(self):
        w = violates_tc_free(SignedGraph(3, [(0, 1, -1), (1, 2, -1), (0, 2, -1)]), 2)
        assert w.kind == "tree" and w.k == 0 and len(w.vertices) == 1
        assert w.negative_boundary == 2

    def test_positive_triangle_with_negative_spokes(self):
        g = SignedGraph(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (0, 3, -1), (1, 4, -1), (2, 5, -1)])
        w = violates_tc_free(g, 2)
        assert w is not None and w.kind == "cycle" and w.k == 1
        assert set(w.vertices) == {0, 1, 2} and w.negative_boundary == 3


class TestCriticality:
    @pytest.mark.parametrize("i,k", [(1, 2), (2, 2), (3, 3), (4, 3), (5, 3)])
    def test_gammas_critical(self, i, k):
        assert is_critically_frustrated(gamma(i), k)
        assert every_positive_edge_in_equilibrated_cut(gamma(i))

    def test_wrong_k(self):
        assert not is_critically_frustrated(gamma(1), 3)

    def test_all_positive(self):
        assert not is_critically_frustrated(c6(), 0)

    def test_positive_bridge(self):
        tri = [(0, 1, 1), (1, 2, 1), (0, 2, 1)]
        g = SignedGraph(6, tri + [(u + 3, v + 3, s) for u, v, s in tri] + [(2, 3, 1)])
        assert not every_positive_edge_in_equilibrated_cut(g)

    def test_capacity(self):
        g = SignedGraph.from_pairs(21, [(i, i + 1) for i in range(20)])
        with pytest.raises(CapacityError):
            every_positive_edge_in_equilibrated_cut(g)

    def test_equivalence_on_minimal_signatures_up_to_six(self):
        for h in minimal_classes(1, 6):
            f = frustration_index(h)
            assert is_critically_frustrated(h, f) == every_positive_edge_in_equilibrated_cut(h)

    def test_equivalence_needs_a_minimal_signature(self):
        # one negative edge: balanced, so not critical, yet no positive edge
        # exists to violate the cut condition
        g = SignedGraph(2, [(0, 1, -1)])
        assert not is_critically_frustrated(g, 0)
        assert every_positive_edge_in_equilibrated_cut(g)


class TestDetection:
    def test_gamma3_adjacent_triangles(self):
        m = detect_configuration(gamma(3), ADJ_TRIANGLES)
        assert m is not None and m.rule == ADJ_TRIANGLES

    def test_gamma1_negative_triangle_detected_but_blocked(self):
        m = detect_configuration(gamma(1), NEG_TRIANGLE)
        assert m is not None and m.rule == NEG_TRIANGLE
        assert not is_applicable(m)
        with pytest.raises(RuleInapplicableError):
            apply_reduction(gamma(1), m)

    @pytest.mark.parametrize("rule", [r for r in ALL_RULES if r != DEGREE2_VERTEX])
    def test_positive_c6_matches_no_structural_rule(self, rule):
        assert detect_configuration(c6(), rule) is None

    def test_positive_c6_has_suppressible_two_vertices(self):
        m = detect_configuration(c6(), DEGREE2_VERTEX)
        assert m.variant == "suppress" and m.vertices == (0, 1, 5)
        step = apply_reduction(c6(), m)
        assert step.offset == 0 and step.output.n == 5

    def test_priority_order(self):
        assert RULE_ORDER[0] == DEGREE2_VERTEX and RULE_ORDER[1] == NEG_TRIANGLE
        assert len(RULE_ORDER) == 8 and POS_2EDGECUT not in RULE_ORDER

    def test_match_edges_touch_matched_vertices(self):
        for i in range(1, 6):
            for rule, m in detect_all(gamma(i)).items():
                if m is None:
                    continue
                vs = {v for v in m.vertices if v is not None}
                for e in m.edges:
                    assert set(gamma(i).edges[e][:2]) & vs

    def test_deterministic(self):
        g = gadget_chain("tgt")
        assert detect_all(g) == detect_all(g)

    def test_two_edge_cut_detect_only(self):
        # two positive triangles joined by two positive edges, one endpoint
        # carrying a negative edge inside its triangle
        g = SignedGraph(6, [(0, 1, -1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1),
                            (0, 3, 1), (1, 4, 1)])
        m = detect_configuration(g, POS_2EDGECUT)
        if m is not None:
            with pytest.raises(RuleInapplicableError):
                apply_reduction(g, m)


class TestRewrites:
    def test_negative_triangle_in_chain_lowers_f_by_one(self):
        for t in range(2, 9):
            g = gadget_chain("t" * t)
            m = detect_configuration(g, NEG_TRIANGLE)
            step = apply_reduction(g, m)
            assert step.offset == 1
            assert frustration_index(g) - frustration_index(step.output) == 1

    def test_h1_in_chain(self):
        g = gadget_chain("tg")
        m = detect_configuration(g, H1_SUBGRAPH)
        assert m is not None and is_applicable(m)
        step = apply_reduction(g, m)
        assert step.offset == 1
        assert frustration_index(g) - frustration_index(step.output) == 1
        # the subdivided K4 collapses to a negative triangle with a 2-vertex
        tri = detect_configuration(step.output, NEG_TRIANGLE)
        assert tri is not None
        assert any(step.output.degree(v) == 2 for v in tri.vertices[:3])

    def test_degree_two_suppression(self):
        base = petersen_negative()
        g = subdivide_edge(base, 0)
        m = detect_configuration(g, DEGREE2_VERTEX)
        assert m.variant == "suppress"
        step = apply_reduction(g, m)
        assert step.offset == 0 and step.output.n == base.n
        assert frustration_index(step.output) == frustration_index(g) == 3

    def test_conditions_are_recorded(self):
        g = gadget_chain("tt")
        step = apply_reduction(g, detect_configuration(g, NEG_TRIANGLE))
        assert step.conditions_checked and all(ok for _, ok in step.conditions_checked)

    def test_minimize(self):
        g = SignedGraph(3, [(0, 1, -1), (1, 2, -1), (0, 2, -1)])
        h, st_ = minimize(g)
        assert negative_edge_count(h) == 1 and switch(g, st_) == h
        same, ident = minimize(gamma(1))
        assert same == gamma(1) and ident == SwitchState.identity(4)


class TestFixpoint:
    @pytest.mark.parametrize("t", range(2, 9))
    def test_triangle_chain(self, t):
        final, total, steps = reduce_to_fixpoint(gadget_chain("t" * t))
        assert total == t
        assert frustration_index(final) == 0 and final.n <= 3

    def test_all_positive_graphs(self):
        for g in (petersen_negative().all_positive(), gamma(1).all_positive(), gamma(5).all_positive()):
            final, total, steps = reduce_to_fixpoint(g)
            assert steps == [] and total == 0 and final == g

    def test_gadget_chain_uses_h1(self):
        final, total, steps = reduce_to_fixpoint(gadget_chain("gtg"))
        assert H1_SUBGRAPH in [s.rule for s in steps]
        assert frustration_index(gadget_chain("gtg")) == frustration_index(final) + total

    def test_tritree(self):
        g = triangle_tree_extremal(cubic_tree_path(1))
        final, total, _ = reduce_to_fixpoint(g)
        assert frustration_index(g) == frustration_index(final) + total

    def test_random_soundness(self):
        rng = random.Random(1)
        fired = set()
        for _ in range(500):
            g = random_signed(rng, 3, 14)
            final, total, steps = reduce_to_fixpoint(g)
            assert len(steps) <= g.n
            for s in steps:
                assert s.output.n < s.input.n
                assert frustration_index(s.input) - frustration_index(s.output) == s.offset
                fired.add(s.rule)
            assert frustration_index(g) == frustration_index(final) + total
        assert {DEGREE2_VERTEX, NEG_TRIANGLE} <= fired

    def test_census_soundness_up_to_seven(self):
        for n in range(1, 8):
            for g in enumerate_subcubic(n):
                for bits in class_signature_masks(g):
                    h = g.with_signature(SignatureBits(bits, g.m))
                    final, total, steps = reduce_to_fixpoint(h)
                    if steps:
                        assert naive_frustration(h) == naive_frustration(final) + total


def test_gadget_endpoints_have_degree_two():
    cnt, edges, x, y = K4_GADGET.build()
    g = SignedGraph(cnt, edges)
    assert frustration_bruteforce(g).f == 2
    assert g.degree(x) == g.degree(y) == 2
