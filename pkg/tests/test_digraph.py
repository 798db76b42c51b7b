"""
有向多重图、路径与文本格式测试
"""

import pytest

from onion_framework.core.digraph import (
    DigraphBuilder, Direction, MultiDigraph, Path, TrimMode, boundary, concatenate, concatenate_all,
    crossing_members, family_arcs, format_edge_list, format_path_family, is_simple, parse_edge_list,
    parse_path_family, reverse, trim, are_arc_disjoint,
)
from onion_framework.core.utils import AnchorNotFoundError, ArcNotFoundError, ContractViolation, ParseError


@pytest.fixture
def chain():
    """0→1→2→3 加一条平行弧 1→2 和回弧 3→0"""
    builder = DigraphBuilder()
    builder.add_vertices(4)
    builder.add_arc(0, 1)
    builder.add_arc(1, 2)
    builder.add_arc(2, 3)
    builder.add_arc(1, 2)
    builder.add_arc(3, 0)
    return builder.build()


def test_builder_assigns_sequential_ids(chain):
    assert chain.vertices == (0, 1, 2, 3)
    assert chain.arc_ids == (0, 1, 2, 3, 4)
    assert chain.out_arcs(1) == (1, 3)
    assert chain.in_arcs(2) == (1, 3)
    assert chain.endpoints(3) == (1, 2)
    assert chain.out_degree(1) == 2 and chain.in_degree(0) == 1
    assert chain.next_vertex_id() == 4 and chain.next_arc_id() == 5


def test_loops_and_unknown_arcs_rejected(chain):
    with pytest.raises(ContractViolation) as info:
        MultiDigraph([0, 1], {0: (1, 1)})
    assert info.value.error_code == "LOOP_ARC"
    with pytest.raises(ContractViolation) as info:
        MultiDigraph([0, 1], {0: (0, 5)})
    assert info.value.error_code == "UNKNOWN_VERTEX"
    with pytest.raises(ArcNotFoundError):
        chain.endpoints(99)


def test_with_additions_keeps_original(chain):
    bigger = chain.with_additions([4], {5: (3, 4)})
    assert bigger.num_arcs == 6 and chain.num_arcs == 5
    with pytest.raises(ContractViolation) as info:
        chain.with_additions([], {0: (0, 1)})
    assert info.value.error_code == "ARC_ID_CONFLICT"


def test_path_queries(chain):
    p = Path.of(0, 3, 2)
    assert chain.is_valid_path(p)
    assert chain.source_of(p) == 0 and chain.target_of(p) == 3
    assert chain.path_vertices(p) == [0, 1, 2, 3]
    assert is_simple(p, chain)
    assert not is_simple(Path.of(0, 1, 2, 4), chain)
    assert not chain.is_valid_path(Path.of(0, 2))
    assert chain.is_valid_path(Path())
    assert p.precedes(0, 2)
    with pytest.raises(ContractViolation):
        Path.of(1, 1)


def test_trim_modes():
    p = Path.of(10, 11, 12, 13, 14)
    assert trim(p, 12, TrimMode.BEFORE_OPEN).arcs == (10, 11)
    assert trim(p, 12, TrimMode.BEFORE_CLOSED).arcs == (10, 11, 12)
    assert trim(p, 12, TrimMode.AFTER_OPEN).arcs == (13, 14)
    assert trim(p, 12, TrimMode.AFTER_CLOSED).arcs == (12, 13, 14)
    assert trim(p, 11, TrimMode.BETWEEN, 14).arcs == (12, 13)
    assert trim(p, 10, TrimMode.BEFORE_OPEN).is_empty
    with pytest.raises(AnchorNotFoundError):
        trim(p, 99, TrimMode.AFTER_OPEN)
    with pytest.raises(ContractViolation):
        trim(p, 13, TrimMode.BETWEEN, 11)


def test_concatenate(chain):
    assert concatenate(Path.of(0), Path.of(1, 2), chain).arcs == (0, 1, 2)
    assert concatenate(Path(), Path.of(4), chain).arcs == (4,)
    assert concatenate_all([Path.of(0), Path(), Path.of(3), Path.of(2)], chain).arcs == (0, 3, 2)
    with pytest.raises(ContractViolation) as info:
        concatenate(Path.of(0), Path.of(2), chain)
    assert info.value.error_code == "CONCAT_MISMATCH"
    with pytest.raises(ContractViolation) as info:
        concatenate(Path.of(0, 1, 2, 4), Path.of(0), chain)
    assert info.value.error_code == "CONCAT_SHARED_ARC"


def test_reverse(chain):
    r = reverse(chain)
    assert r.endpoints(0) == (1, 0)
    assert reverse(Path.of(0, 3, 2)).arcs == (2, 3, 0)
    assert r.is_valid_path(reverse(Path.of(0, 3, 2)))
    with pytest.raises(ContractViolation):
        reverse("not a digraph")


def test_boundary(chain):
    assert boundary(chain, {0, 1}, Direction.OUT) == frozenset({1, 3})
    assert boundary(chain, {0, 1}, Direction.IN) == frozenset({4})
    with pytest.raises(ContractViolation):
        boundary(chain, {9}, Direction.OUT)


def test_family_helpers():
    family = [Path.of(0, 1), Path.of(2), Path.of(3, 4)]
    assert family_arcs(family) == frozenset({0, 1, 2, 3, 4})
    assert crossing_members(family, Path.of(4, 1)) == [0, 2]
    assert are_arc_disjoint(family)
    assert not are_arc_disjoint(family + [Path.of(2)])


def test_edge_list_round_trip(chain):
    text = format_edge_list(chain)
    assert text.splitlines()[0] == "4 5"
    assert parse_edge_list(text) == chain


def test_edge_list_comments_and_blank_lines():
    d = parse_edge_list("# onion\n2 3\n\n0 1\n0 1  # parallel\n1 0\n")
    assert d.num_vertices == 2 and d.num_arcs == 3
    assert d.endpoints(2) == (1, 0)


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("2\n", 1),
    ("2 1\n0 x\n", 2),
    ("2 2\n0 1\n", 2),
    ("2 1\n0 5\n", 2),
    ("3 2\n0 1\n\n2 2\n", 4),
])
def test_edge_list_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.line_number == line


def test_path_family_format(chain):
    family = parse_path_family("# P\n0 3 2\n\n4 0\n", chain)
    assert [p.arcs for p in family] == [(0, 3, 2), (4, 0)]
    assert format_path_family(family) == "0 3 2\n4 0\n"
    with pytest.raises(ParseError) as info:
        parse_path_family("0 1\n0 2\n", chain)
    assert info.value.line_number == 2
    with pytest.raises(ParseError) as info:
        parse_path_family("0 a\n")
    assert info.value.line_number == 1
