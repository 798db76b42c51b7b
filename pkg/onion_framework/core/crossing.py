"""
良交叉对分析
交叉弧、交图、安全/危险交叉分类
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence

from .digraph import ArcId, MultiDigraph, Path, PathFamily, VertexId, is_simple
from .extremal import BipartiteGraph
from .utils import ContractViolation

IntersectionGraph = BipartiteGraph


@dataclass
class WellCrossingPair:
    """
    以 root 为根的良交叉对

    P 中路径从 root 出发，Q 中路径终止于 root；任意 P、Q 路径都有公共弧。
    """
    digraph: MultiDigraph
    P: PathFamily
    Q: PathFamily
    root: VertexId

    def sizes(self) -> tuple:
        return len(self.P), len(self.Q)


@dataclass(frozen=True)
class Crossing:
    """(P[p_index], Q[q_index]) 的公共弧"""
    arc: ArcId
    p_index: int
    q_index: int


class CrossingClass(Enum):
    SAFE = "safe"
    DANGEROUS = "dangerous"


@dataclass
class WellCrossingReport:
    """良交叉检查结果，clause 指出第一条违反的条款"""
    ok: bool
    clause: Optional[str] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def intersection_graph(P: Sequence[Path], Q: Sequence[Path]) -> IntersectionGraph:
    """P 与 Q 的交图：(i, j) 为边当且仅当 P[i] 与 Q[j] 有公共弧"""
    q_sets = [q.arc_set() for q in Q]
    rows = []
    for p in P:
        p_arcs = p.arc_set()
        row = 0
        for j, q_arcs in enumerate(q_sets):
            if not p_arcs.isdisjoint(q_arcs):
                row |= 1 << j
        rows.append(row)
    return BipartiteGraph(len(P), len(Q), rows)


def _family_violation(d: MultiDigraph, family: Sequence[Path], name: str) -> Optional[WellCrossingReport]:
    seen: Dict[ArcId, int] = {}
    for i, p in enumerate(family):
        if p.is_empty:
            return WellCrossingReport(False, "path", f"{name}[{i}] 为空路径")
        if not d.is_valid_path(p):
            return WellCrossingReport(False, "path", f"{name}[{i}] 不是图中的合法路径")
        if not is_simple(p, d):
            return WellCrossingReport(False, "simple", f"{name}[{i}] 不是简单路径")
        for arc in p.arcs:
            if arc in seen:
                return WellCrossingReport(False, f"{name.lower()}-disjoint",
                                          f"{name}[{seen[arc]}] 与 {name}[{i}] 共用弧 {arc}")
            seen[arc] = i
    return None


def is_well_crossing(d: MultiDigraph, P: Sequence[Path], Q: Sequence[Path], root: VertexId) -> WellCrossingReport:
    """
    检查良交叉对的全部条款，从不抛出异常

    条款顺序：path, simple, p-disjoint/q-disjoint, p-start, q-end, complete-intersection
    """
    if not d.has_vertex(root):
        return WellCrossingReport(False, "root", f"根 {root} 不在图中")
    for family, name in ((P, "P"), (Q, "Q")):
        violation = _family_violation(d, family, name)
        if violation is not None:
            return violation
    for i, p in enumerate(P):
        if d.source_of(p) != root:
            return WellCrossingReport(False, "p-start", f"P[{i}] 起点为 {d.source_of(p)}，不是根 {root}")
    for j, q in enumerate(Q):
        if d.target_of(q) != root:
            return WellCrossingReport(False, "q-end", f"Q[{j}] 终点为 {d.target_of(q)}，不是根 {root}")
    graph = intersection_graph(P, Q)
    for i in range(len(P)):
        for j in range(len(Q)):
            if not graph.has_edge(i, j):
                return WellCrossingReport(False, "complete-intersection", f"P[{i}] 与 Q[{j}] 没有公共弧")
    return WellCrossingReport(True)


def check_well_crossing(ctx: WellCrossingPair) -> None:
    """不是良交叉对时抛出 ContractViolation"""
    report = is_well_crossing(ctx.digraph, ctx.P, ctx.Q, ctx.root)
    if not report.ok:
        raise ContractViolation(f"不是良交叉对 [{report.clause}]: {report.detail}", "NOT_WELL_CROSSING")


class CrossingAnalysis:
    """
    良交叉对上的交叉分析（预计算位置表，供分类与收割反复查询）

    crossing e 在 P 上安全：Q∖{Q} 中至少 ⌈|Q|/3⌉ 条路径与 P 的 <_P-最小交叉严格先于 e。
    """

    def __init__(self, ctx: WellCrossingPair):
        self.ctx = ctx
        self.p_owner: Dict[ArcId, int] = {}
        self.q_owner: Dict[ArcId, int] = {}
        self.p_position: List[Dict[ArcId, int]] = []
        self.q_position: List[Dict[ArcId, int]] = []

        for i, p in enumerate(ctx.P):
            self.p_position.append({arc: k for k, arc in enumerate(p.arcs)})
            for arc in p.arcs:
                self.p_owner[arc] = i
        for j, q in enumerate(ctx.Q):
            self.q_position.append({arc: k for k, arc in enumerate(q.arcs)})
            for arc in q.arcs:
                self.q_owner[arc] = j

        # first_crossing[i][j]: P[i] 上与 Q[j] 的最小交叉位置
        self.first_crossing: List[Dict[int, int]] = []
        for i, p in enumerate(ctx.P):
            firsts: Dict[int, int] = {}
            for k, arc in enumerate(p.arcs):
                j = self.q_owner.get(arc)
                if j is not None and j not in firsts:
                    firsts[j] = k
            self.first_crossing.append(firsts)

        self.threshold = -(-len(ctx.Q) // 3)

    def crossings(self) -> List[Crossing]:
        """按 (q 下标, 在 Q 上的位置) 字典序列出全部交叉"""
        result = []
        for j, q in enumerate(self.ctx.Q):
            for arc in q.arcs:
                i = self.p_owner.get(arc)
                if i is not None:
                    result.append(Crossing(arc, i, j))
        return result

    def crossings_on(self, q_index: int, arcs: Optional[Sequence[ArcId]] = None) -> List[Crossing]:
        """Q[q_index]（或其给定弧段）上的交叉，按 Q 上顺序"""
        arcs = self.ctx.Q[q_index].arcs if arcs is None else arcs
        return [Crossing(arc, self.p_owner[arc], q_index) for arc in arcs if arc in self.p_owner]

    def is_crossing(self, e: Crossing) -> bool:
        return self.p_owner.get(e.arc) == e.p_index and self.q_owner.get(e.arc) == e.q_index

    def safe_count(self, e: Crossing) -> int:
        if not self.is_crossing(e):
            raise ContractViolation(f"弧 {e.arc} 不是 (P[{e.p_index}], Q[{e.q_index}]) 的交叉", "NOT_A_CROSSING")
        position = self.p_position[e.p_index][e.arc]
        return sum(1 for j, first in self.first_crossing[e.p_index].items()
                   if j != e.q_index and first < position)

    def classify(self, e: Crossing) -> CrossingClass:
        return CrossingClass.SAFE if self.safe_count(e) >= self.threshold else CrossingClass.DANGEROUS

    def is_dangerous(self, e: Crossing) -> bool:
        return self.classify(e) is CrossingClass.DANGEROUS

    def dangerous_paths(self, q_index: int, suffix: Path) -> List[int]:
        """在 Q 的连续裁剪段 suffix 上存在危险交叉的 P 下标（升序）"""
        q = self.ctx.Q[q_index]
        if suffix.is_empty:
            return []
        if suffix.first not in self.q_position[q_index]:
            raise ContractViolation("suffix 不是 Q 的裁剪段", "NOT_A_TRIMMING")
        start = self.q_position[q_index][suffix.first]
        if q.arcs[start:start + len(suffix)] != suffix.arcs:
            raise ContractViolation("suffix 不是 Q 的连续裁剪段", "NOT_A_TRIMMING")
        return sorted({e.p_index for e in self.crossings_on(q_index, suffix.arcs) if self.is_dangerous(e)})

    def report(self) -> List[dict]:
        """交叉及分类的 JSON 友好列表"""
        return [
            {"arc": e.arc, "p": e.p_index, "q": e.q_index, "class": self.classify(e).value}
            for e in self.crossings()
        ]


def classify_crossing(e: Crossing, ctx: WellCrossingPair) -> CrossingClass:
    """
    判定交叉安全或危险

    Raises:
        ContractViolation: e 不是对应路径对的交叉
    """
    return CrossingAnalysis(ctx).classify(e)


def dangerous_paths(ctx: WellCrossingPair, q_index: int, suffix: Path) -> List[int]:
    """
    返回 suffix（Q[q_index] 的裁剪段）上的危险 P 路径下标

    Raises:
        ContractViolation: suffix 不是连续裁剪段
    """
    return CrossingAnalysis(ctx).dangerous_paths(q_index, suffix)
