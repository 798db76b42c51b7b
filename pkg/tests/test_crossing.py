"""
良交叉对与交叉分类测试
"""

import pytest

from onion_framework.core.crossing import (
    Crossing, CrossingAnalysis, CrossingClass, WellCrossingPair, check_well_crossing, classify_crossing,
    dangerous_paths, intersection_graph, is_well_crossing,
)
from onion_framework.core.digraph import MultiDigraph, Path
from onion_framework.core.utils import ContractViolation


def crossing_arc(grid, i, j):
    return grid.marks["crossings"][f"{i},{j}"]


def test_grid_is_well_crossing(grid_3x2):
    ctx = grid_3x2.well_crossing_pair()
    assert is_well_crossing(ctx.digraph, ctx.P, ctx.Q, ctx.root)
    assert ctx.sizes() == (3, 2)
    assert intersection_graph(ctx.P, ctx.Q).is_complete()
    check_well_crossing(ctx)


def test_well_crossing_clauses(grid_3x2):
    ctx = grid_3x2.well_crossing_pair()
    d, P, Q, root = ctx.digraph, ctx.P, ctx.Q, ctx.root
    assert is_well_crossing(d, P, Q, 999).clause == "root"
    assert is_well_crossing(d, [P[0], P[0]], Q, root).clause == "p-disjoint"
    assert is_well_crossing(d, P, [Q[0], Q[0]], root).clause == "q-disjoint"
    assert is_well_crossing(d, [Path(P[0].arcs[1:])], Q, root).clause == "p-start"
    assert is_well_crossing(d, P, [Path(Q[0].arcs[:-1])], root).clause == "q-end"
    assert is_well_crossing(d, [Path()], Q, root).clause == "path"

    two = MultiDigraph([0, 1], {0: (0, 1), 1: (1, 0)})
    report = is_well_crossing(two, [Path.of(0)], [Path.of(1)], 0)
    assert not report and report.clause == "complete-intersection"
    with pytest.raises(ContractViolation) as info:
        check_well_crossing(WellCrossingPair(two, [Path.of(0)], [Path.of(1)], 0))
    assert info.value.error_code == "NOT_WELL_CROSSING"


def test_simple_clause():
    d = MultiDigraph(range(3), {0: (0, 1), 1: (1, 0), 2: (0, 2), 3: (2, 0)})
    assert is_well_crossing(d, [Path.of(0, 1, 2)], [Path.of(3)], 0).clause == "simple"


def test_classification_on_grid(grid_3x2):
    ctx = grid_3x2.well_crossing_pair()
    analysis = CrossingAnalysis(ctx)
    assert analysis.threshold == 1
    assert len(analysis.crossings()) == 6
    for i in range(3):
        # Q_0 是每条 P 的第一次交叉：没有其它 Q 先于它
        first = Crossing(crossing_arc(grid_3x2, i, 0), i, 0)
        second = Crossing(crossing_arc(grid_3x2, i, 1), i, 1)
        assert analysis.classify(first) is CrossingClass.DANGEROUS
        assert analysis.classify(second) is CrossingClass.SAFE
        assert classify_crossing(second, ctx) is CrossingClass.SAFE
    assert analysis.dangerous_paths(0, ctx.Q[0]) == [0, 1, 2]
    assert dangerous_paths(ctx, 1, ctx.Q[1]) == []
    assert dangerous_paths(ctx, 0, Path()) == []


def test_crossings_follow_q_order(grid_3x2):
    ctx = grid_3x2.well_crossing_pair()
    analysis = CrossingAnalysis(ctx)
    # Q 降序：依次遇到 P_2, P_1, P_0
    assert [c.p_index for c in analysis.crossings_on(0)] == [2, 1, 0]
    report = analysis.report()
    assert report[0] == {"arc": crossing_arc(grid_3x2, 2, 0), "p": 2, "q": 0, "class": "dangerous"}


def test_classification_contract(grid_3x2):
    ctx = grid_3x2.well_crossing_pair()
    analysis = CrossingAnalysis(ctx)
    with pytest.raises(ContractViolation) as info:
        analysis.classify(Crossing(crossing_arc(grid_3x2, 0, 0), 1, 0))
    assert info.value.error_code == "NOT_A_CROSSING"
    q = ctx.Q[0]
    with pytest.raises(ContractViolation) as info:
        analysis.dangerous_paths(0, Path((q.arcs[0], q.arcs[2])))
    assert info.value.error_code == "NOT_A_TRIMMING"
    with pytest.raises(ContractViolation):
        analysis.dangerous_paths(0, ctx.Q[1])
