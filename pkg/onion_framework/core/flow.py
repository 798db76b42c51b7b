"""
Menger 流割工具
单位容量增广路求最大弧不交路径族、最小割，以及集合源/汇的推广 μ(y,Z)、μ(Z,y)
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from .digraph import (
    ArcId, Direction, MultiDigraph, Path, PathFamily, VertexId, boundary, is_simple,
)
from .utils import AlgorithmDefect, ContractViolation, OnionLogger

logger = OnionLogger.get_logger("flow")

VertexSpec = Union[VertexId, Iterable[VertexId]]


@dataclass(frozen=True)
class CutResult:
    """割 (A, B)，size = |δ⁺(A)|"""
    A: FrozenSet[VertexId]
    B: FrozenSet[VertexId]
    size: int


@dataclass
class DisjointPathFamily:
    """两两弧不交的简单路径族及其源/汇说明"""
    paths: PathFamily
    source: FrozenSet[VertexId]
    sink: FrozenSet[VertexId]

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)


def _as_vertex_set(spec: VertexSpec) -> FrozenSet[VertexId]:
    if isinstance(spec, int):
        return frozenset((spec,))
    return frozenset(spec)


class UnitCapacityFlow:
    """
    单位容量最大流（BFS 增广，按弧编号最小优先）

    剩余网络中：未饱和弧可正向通过，已饱和弧可反向通过。
    """

    def __init__(self, d: MultiDigraph, source: VertexId, sink: VertexId):
        self.d = d
        self.source = source
        self.sink = sink
        self.flow: Set[ArcId] = set()

    def _residual_moves(self, v: VertexId) -> List[Tuple[ArcId, VertexId]]:
        moves = [(a, self.d.head(a)) for a in self.d.out_arcs(v) if a not in self.flow]
        moves.extend((a, self.d.tail(a)) for a in self.d.in_arcs(v) if a in self.flow)
        moves.sort()
        return moves

    def _find_augmenting_path(self) -> Optional[List[ArcId]]:
        parent: Dict[VertexId, Tuple[VertexId, ArcId]] = {}
        visited = {self.source}
        queue = deque([self.source])
        while queue:
            v = queue.popleft()
            for arc, w in self._residual_moves(v):
                if w in visited:
                    continue
                visited.add(w)
                parent[w] = (v, arc)
                if w == self.sink:
                    route = []
                    while w != self.source:
                        w, arc_used = parent[w]
                        route.append(arc_used)
                    route.reverse()
                    return route
                queue.append(w)
        return None

    def solve(self) -> Set[ArcId]:
        """反复增广直至不存在增广路，返回流的支撑弧集"""
        while True:
            route = self._find_augmenting_path()
            if route is None:
                return set(self.flow)
            # 正向弧加入流，反向弧退流
            self.flow.symmetric_difference_update(route)

    def residual_reachable(self) -> FrozenSet[VertexId]:
        visited = {self.source}
        queue = deque([self.source])
        while queue:
            v = queue.popleft()
            for _, w in self._residual_moves(v):
                if w not in visited:
                    visited.add(w)
                    queue.append(w)
        return frozenset(visited)


def decompose_flow(d: MultiDigraph, arc_set: Iterable[ArcId],
                   source: VertexSpec, sink: VertexSpec) -> PathFamily:
    """
    将单位流的支撑分解为两两弧不交的简单路径，支撑中的环被丢弃

    Args:
        d: 有向图
        arc_set: 单位流支撑弧集
        source: 源顶点或顶点集
        sink: 汇顶点或顶点集

    Returns:
        覆盖流值的简单路径列表

    Raises:
        ContractViolation: arc_set 不是合法单位流支撑
    """
    sources = _as_vertex_set(source)
    sinks = _as_vertex_set(sink)
    support = set(arc_set)
    for arc in support:
        if not d.has_arc(arc):
            raise ContractViolation(f"流支撑包含不存在的弧 {arc}", "FLOW_INVALID")

    balance: Dict[VertexId, int] = {}
    for arc in support:
        tail, head = d.endpoints(arc)
        balance[tail] = balance.get(tail, 0) + 1
        balance[head] = balance.get(head, 0) - 1

    for v, excess in balance.items():
        if v in sources and excess < 0:
            raise ContractViolation(f"源点 {v} 净流出为负", "FLOW_INVALID")
        if v in sinks and excess > 0:
            raise ContractViolation(f"汇点 {v} 净流入为负", "FLOW_INVALID")
        if v not in sources and v not in sinks and excess != 0:
            raise ContractViolation(f"顶点 {v} 不满足流守恒", "FLOW_INVALID")

    value = sum(excess for v, excess in balance.items() if v in sources)

    remaining_out: Dict[VertexId, List[ArcId]] = {}
    for arc in sorted(support):
        remaining_out.setdefault(d.tail(arc), []).append(arc)
    excess_left = {v: balance.get(v, 0) for v in sources}

    paths: PathFamily = []
    for _ in range(value):
        start = min(v for v, excess in excess_left.items() if excess > 0)
        walk_arcs: List[ArcId] = []
        position = {start: 0}
        v = start
        while v not in sinks:
            if not remaining_out.get(v):
                raise AlgorithmDefect(f"流分解在顶点 {v} 处无出弧", "FLOW_DEFECT")
            arc = remaining_out[v].pop(0)
            w = d.head(arc)
            walk_arcs.append(arc)
            if w in position:
                # 截掉闭合的环
                cut = position[w]
                for dropped in walk_arcs[cut:]:
                    del position[d.head(dropped)]
                walk_arcs = walk_arcs[:cut]
                position[w] = cut
            else:
                position[w] = len(walk_arcs)
            v = w
        excess_left[start] -= 1
        paths.append(Path(tuple(walk_arcs)))
    logger.debug(f"流分解完成: 流值 {value}, 支撑弧 {len(support)}")
    return paths


def _super_network(d: MultiDigraph, sources: FrozenSet[VertexId], sinks: FrozenSet[VertexId]):
    """为集合源/汇添加超级顶点，多重度 |A(d)|+1"""
    multiplicity = d.num_arcs + 1
    next_vertex = d.next_vertex_id()
    next_arc = d.next_arc_id()
    extra_arcs = {}

    if len(sources) == 1:
        super_source = next(iter(sources))
    else:
        super_source = next_vertex
        next_vertex += 1
        for member in sorted(sources):
            for _ in range(multiplicity):
                extra_arcs[next_arc] = (super_source, member)
                next_arc += 1

    if len(sinks) == 1:
        super_sink = next(iter(sinks))
    else:
        super_sink = next_vertex
        next_vertex += 1
        for member in sorted(sinks):
            for _ in range(multiplicity):
                extra_arcs[next_arc] = (member, super_sink)
                next_arc += 1

    new_vertices = [v for v in (super_source, super_sink) if not d.has_vertex(v)]
    network = d.with_additions(new_vertices, extra_arcs) if extra_arcs else d
    return network, super_source, super_sink, frozenset(extra_arcs)


def _validate_specs(d: MultiDigraph, sources: FrozenSet[VertexId], sinks: FrozenSet[VertexId]):
    if not sources or not sinks:
        raise ContractViolation("源与汇都不能为空", "FLOW_SPEC")
    unknown = (sources | sinks).difference(d.vertices)
    if unknown:
        raise ContractViolation(f"顶点不在图中: {sorted(unknown)}", "UNKNOWN_VERTEX")
    if sources & sinks:
        raise ContractViolation(f"源与汇相交: {sorted(sources & sinks)}", "FLOW_SPEC")


def max_disjoint_paths(d: MultiDigraph, source: VertexSpec, sink: VertexSpec) -> DisjointPathFamily:
    """
    求从 source 到 sink 的最大弧不交简单路径族

    Args:
        d: 有向图
        source: 源顶点或顶点集
        sink: 汇顶点或顶点集

    Returns:
        DisjointPathFamily，基数等于最小割大小（内部断言）

    Raises:
        ContractViolation: 源汇为空或相交
        AlgorithmDefect: 对偶性断言失败
    """
    sources = _as_vertex_set(source)
    sinks = _as_vertex_set(sink)
    _validate_specs(d, sources, sinks)

    network, s, t, extra = _super_network(d, sources, sinks)
    solver = UnitCapacityFlow(network, s, t)
    support = solver.solve()
    raw_paths = decompose_flow(network, support, s, t)

    paths: PathFamily = []
    for p in raw_paths:
        arcs = tuple(a for a in p.arcs if a not in extra)
        paths.append(Path(arcs))

    cut_side = solver.residual_reachable()
    cut_size = len(boundary(network, cut_side, Direction.OUT))
    if cut_size != len(paths):
        raise AlgorithmDefect(f"Menger 对偶断言失败: 路径数 {len(paths)} ≠ 割 {cut_size}", "FLOW_DEFECT")
    for p in paths:
        if p.is_empty or not is_simple(p, d):
            raise AlgorithmDefect(f"流分解得到非简单路径 {p.arcs}", "FLOW_DEFECT")

    logger.debug(f"最大弧不交路径: {sorted(sources)} → {sorted(sinks)}, 数量 {len(paths)}")
    return DisjointPathFamily(paths=paths, source=sources, sink=sinks)


def mu(d: MultiDigraph, source: VertexSpec, sink: VertexSpec) -> int:
    """μ(source, sink)"""
    return len(max_disjoint_paths(d, source, sink))


def min_cut(d: MultiDigraph, source: VertexId, sink: VertexId) -> CutResult:
    """
    最小 (source, sink)-割，A 为最终剩余网络中源可达的顶点集

    Raises:
        ContractViolation: source == sink 或顶点不存在
    """
    _validate_specs(d, frozenset((source,)), frozenset((sink,)))
    solver = UnitCapacityFlow(d, source, sink)
    value = len(decompose_flow(d, solver.solve(), source, sink))
    side_a = solver.residual_reachable()
    side_b = frozenset(d.vertices).difference(side_a)
    size = len(boundary(d, side_a, Direction.OUT))
    if size != value:
        raise AlgorithmDefect(f"最小割大小 {size} 与流值 {value} 不一致", "FLOW_DEFECT")
    return CutResult(A=side_a, B=side_b, size=size)
