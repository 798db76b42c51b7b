"""
桌面规模暴力验证器
浸入模型校验、精确浸入判定、反向弧不交路径对判定与弧不交路径最大数
"""

from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from .digraph import ArcId, MultiDigraph, Path, VertexId
from .utils import ContractViolation, OnionLogger, OracleRefusal
from ..config.settings import get_config

logger = OnionLogger.get_logger("oracle")


@dataclass
class ImmersionModel:
    """pattern 到 host 的浸入模型：单射顶点映射 + 弧到路径映射"""
    pattern: MultiDigraph
    host: MultiDigraph
    vertex_map: Dict[VertexId, VertexId]
    arc_map: Dict[ArcId, Path] = field(default_factory=dict)


@dataclass
class ModelReport:
    """模型校验结果，clause 为第一条违反的条款，locus 为违反位置"""
    ok: bool
    clause: Optional[str] = None
    locus: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_model(m: ImmersionModel) -> ModelReport:
    """
    校验浸入模型的全部条款（从不抛出异常）

    条款：mapping（顶点映射完整且落在 host 内）、injectivity、coverage（每条 pattern 弧都有路径）、
    membership（路径弧在 host 中且首尾相接）、endpoints、arc-disjointness
    """
    pattern, host = m.pattern, m.host
    for v in pattern.vertices:
        if v not in m.vertex_map:
            return ModelReport(False, "mapping", f"pattern 顶点 {v} 未映射")
        if not host.has_vertex(m.vertex_map[v]):
            return ModelReport(False, "mapping", f"pattern 顶点 {v} 映射到不存在的顶点 {m.vertex_map[v]}")
    images = [m.vertex_map[v] for v in pattern.vertices]
    if len(set(images)) != len(images):
        return ModelReport(False, "injectivity", f"顶点映射不是单射: {m.vertex_map}")

    used: Dict[ArcId, ArcId] = {}
    for arc, tail, head in pattern.arc_items():
        path = m.arc_map.get(arc)
        if path is None:
            return ModelReport(False, "coverage", f"pattern 弧 {arc} 没有对应路径")
        if path.is_empty or not host.is_valid_path(path):
            return ModelReport(False, "membership", f"pattern 弧 {arc} 的路径 {path.arcs} 不在 host 中成立")
        if host.source_of(path) != m.vertex_map[tail] or host.target_of(path) != m.vertex_map[head]:
            return ModelReport(False, "endpoints",
                               f"pattern 弧 {arc} 的路径端点为 {host.source_of(path)}→{host.target_of(path)}，"
                               f"应为 {m.vertex_map[tail]}→{m.vertex_map[head]}")
        for host_arc in path.arcs:
            if host_arc in used:
                return ModelReport(False, "arc-disjointness",
                                   f"pattern 弧 {used[host_arc]} 与 {arc} 共用 host 弧 {host_arc}")
            used[host_arc] = arc
    return ModelReport(True)


def _check_cap(d: MultiDigraph, cap: Optional[int], key: str) -> None:
    limit = cap if cap is not None else get_config(key)
    if limit is None or limit <= 0:
        raise ContractViolation(f"暴力搜索上限必须为正: {limit}")
    if d.num_arcs > limit:
        raise OracleRefusal(d.num_arcs, limit)


def simple_paths(d: MultiDigraph, source: VertexId, target: VertexId,
                 forbidden: FrozenSet[ArcId] = frozenset()) -> Iterator[Path]:
    """按弧编号字典序枚举避开 forbidden 的全部简单 source→target 路径"""
    if source == target:
        return
    stack_arcs: List[ArcId] = []
    on_path: Set[VertexId] = {source}

    def extend(v: VertexId) -> Iterator[Path]:
        for arc in d.out_arcs(v):
            if arc in forbidden:
                continue
            w = d.head(arc)
            if w in on_path:
                continue
            stack_arcs.append(arc)
            if w == target:
                yield Path(tuple(stack_arcs))
            else:
                on_path.add(w)
                yield from extend(w)
                on_path.discard(w)
            stack_arcs.pop()

    yield from extend(source)


def _distance(d: MultiDigraph, source: VertexId, target: VertexId) -> int:
    if source == target:
        return 0
    frontier = {source}
    seen = {source}
    steps = 0
    while frontier:
        steps += 1
        nxt = set()
        for v in frontier:
            for arc in d.out_arcs(v):
                w = d.head(arc)
                if w == target:
                    return steps
                if w not in seen:
                    seen.add(w)
                    nxt.add(w)
        frontier = nxt
    return d.num_arcs + 1


def _route(m_host: MultiDigraph, requests: List[Tuple[ArcId, VertexId, VertexId]],
           used: FrozenSet[ArcId], routed: Dict[ArcId, Path]) -> bool:
    if not requests:
        return True
    (arc, source, target), rest = requests[0], requests[1:]
    for path in simple_paths(m_host, source, target, used):
        routed[arc] = path
        if _route(m_host, rest, used | path.arc_set(), routed):
            return True
        del routed[arc]
    return False


def immersion_exists(pattern: MultiDigraph, host: MultiDigraph,
                     cap: Optional[int] = None) -> Optional[ImmersionModel]:
    """
    精确判定 pattern 是否浸入 host，存在时返回模型

    先枚举单射顶点映射（按出入度剪枝），再按距离下界降序逐条布线。

    Raises:
        OracleRefusal: host 弧数超出上限（默认 oracle.immersion_arc_cap）
    """
    _check_cap(host, cap, 'oracle.immersion_arc_cap')
    pattern_vertices = list(pattern.vertices)
    if len(pattern_vertices) > host.num_vertices or pattern.num_arcs > host.num_arcs:
        return None

    for images in permutations(host.vertices, len(pattern_vertices)):
        vertex_map = dict(zip(pattern_vertices, images))
        if any(pattern.out_degree(v) > host.out_degree(vertex_map[v]) or
               pattern.in_degree(v) > host.in_degree(vertex_map[v]) for v in pattern_vertices):
            continue
        requests = []
        for arc, tail, head in pattern.arc_items():
            source, target = vertex_map[tail], vertex_map[head]
            requests.append((arc, source, target, _distance(host, source, target)))
        if any(length > host.num_arcs for *_, length in requests):
            continue
        requests.sort(key=lambda r: (-r[3], r[0]))
        routed: Dict[ArcId, Path] = {}
        if _route(host, [r[:3] for r in requests], frozenset(), routed):
            model = ImmersionModel(pattern, host, vertex_map, dict(sorted(routed.items())))
            logger.debug(f"找到浸入模型: 顶点映射 {vertex_map}")
            return model
    return None


def opposite_pair_exists(d: MultiDigraph, x: VertexId, y: VertexId,
                         cap: Optional[int] = None) -> Optional[Tuple[Path, Path]]:
    """
    精确搜索弧不交的 (x→y, y→x) 路径对；简单路径足够（非简单路径可截短为弧子集）

    Raises:
        OracleRefusal: 弧数超出上限（默认 oracle.path_arc_cap）
    """
    _check_cap(d, cap, 'oracle.path_arc_cap')
    if x == y:
        raise ContractViolation("x 与 y 必须不同")
    for forward in simple_paths(d, x, y):
        backward = next(simple_paths(d, y, x, forward.arc_set()), None)
        if backward is not None:
            return forward, backward
    return None


def max_disjoint_brute(d: MultiDigraph, s: VertexId, t: VertexId, cap: Optional[int] = None) -> int:
    """
    穷举全部简单 s→t 路径，求两两弧不交的最大路径数

    Raises:
        OracleRefusal: 弧数超出上限（默认 oracle.path_arc_cap）
    """
    _check_cap(d, cap, 'oracle.path_arc_cap')
    if s == t:
        raise ContractViolation("s 与 t 必须不同")
    candidates = [p.arc_set() for p in simple_paths(d, s, t)]
    upper = min(d.out_degree(s), d.in_degree(t))
    best = 0

    def pack(start: int, used: FrozenSet[ArcId], count: int):
        nonlocal best
        best = max(best, count)
        if best >= upper:
            return
        for index in range(start, len(candidates)):
            if candidates[index].isdisjoint(used):
                pack(index + 1, used | candidates[index], count + 1)
                if best >= upper:
                    return

    pack(0, frozenset(), 0)
    return best
