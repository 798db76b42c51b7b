"""
对偶流水线
洋葱星/不交叉二分法、连通集到洋葱星的流水线、度数受限有向图到洋葱星的嵌入
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..config.settings import get_config
from ..core.crossing import WellCrossingPair, intersection_graph
from ..core.digraph import ArcId, MultiDigraph, Path, PathFamily, VertexId, are_arc_disjoint, is_simple
from ..core.extremal import ThomasonTag, thomason_search, verify_thomason
from ..core.flow import max_disjoint_paths, mu
from ..core.oracle import ImmersionModel, verify_model
from ..core.utils import AlgorithmDefect, ContractViolation, OnionLogger
from .exceptions import PipelineDefect
from .generators import GeneratedInstance, generate, onion_star
from .harvest import harvest_onion_star
from .models import OnionStarModel
from .outcomes import DichotomyOutcome, Inconclusive, OutcomeTag
from .pipeline_base import PipelineBase

logger = OnionLogger.get_logger("duality")

Schedule = Callable[[int], int]


# ---- 二分法 ----

def _check_families(d: MultiDigraph, y: VertexId, Z: frozenset,
                    P: Sequence[Path], Q: Sequence[Path]) -> None:
    for name, family in (("P", P), ("Q", Q)):
        if not are_arc_disjoint(family):
            raise ContractViolation(f"{name} 中的路径不是两两弧不交的")
        for index, p in enumerate(family):
            if p.is_empty or not d.is_valid_path(p) or not is_simple(p, d):
                raise ContractViolation(f"{name}[{index}] 不是非空简单路径")
    for index, p in enumerate(P):
        if d.source_of(p) != y or d.target_of(p) not in Z:
            raise ContractViolation(f"P[{index}] 不是从 {y} 到 Z 的路径")
    for index, q in enumerate(Q):
        if d.source_of(q) not in Z or d.target_of(q) != y:
            raise ContractViolation(f"Q[{index}] 不是从 Z 到 {y} 的路径")


def _extend_biclique(graph, left: Iterable[int], right: Iterable[int]) -> Tuple[List[int], List[int]]:
    """把完全二部子图贪心扩张到极大（先左后右）"""
    right_mask = 0
    for j in right:
        right_mask |= 1 << j
    left_all = [i for i in range(graph.left_size) if graph.rows[i] & right_mask == right_mask]
    common = graph.full_mask
    for i in left_all:
        common &= graph.rows[i]
    right_all = [j for j in range(graph.right_size) if common >> j & 1]
    return left_all, right_all


def onion_or_uncross(d: MultiDigraph, y: VertexId, Z: Iterable[VertexId], t: int, k: int,
                     working_threshold: Optional[int] = None,
                     families: Optional[Tuple[Sequence[Path], Sequence[Path]]] = None) -> DichotomyOutcome:
    """
    洋葱星 / 不交叉二分法

    取 y→Z 与 Z→y 的最大弧不交路径族（或使用给定的 families），在交图上做 Thomason 搜索，
    规模 n = max(k, N_w)。完全二部分支扩张为极大良交叉对后收割 t-洋葱星；
    反完全分支返回各 k 条、全部两两弧不交的路径。

    Args:
        d: 有向图
        y: 中心
        Z: 目标顶点集（不含 y）
        t: 洋葱星参数
        k: 不交叉分支的路径数
        working_threshold: N_w（默认 pipeline.working_threshold）
        families: 可选的 (y→Z 路径族, Z→y 路径族)

    Raises:
        ContractViolation: y ∈ Z、Z 为空、参数非正或给定路径族非法
        PipelineDefect: 输出未通过校验
    """
    Z = frozenset(Z)
    if not Z:
        raise ContractViolation("Z 不能为空")
    if y in Z:
        raise ContractViolation(f"y = {y} 不能属于 Z")
    if t < 1 or k < 1:
        raise ContractViolation(f"t、k 必须为正整数: t={t}, k={k}")
    threshold = working_threshold if working_threshold is not None else get_config('pipeline.working_threshold', 2)
    if threshold < 1:
        raise ContractViolation(f"工作阈值必须为正: {threshold}")

    if families is None:
        P = max_disjoint_paths(d, y, Z).paths
        Q = max_disjoint_paths(d, Z, y).paths
    else:
        P, Q = list(families[0]), list(families[1])
        _check_families(d, y, Z, P, Q)

    n = max(k, threshold)
    logger.info(f"二分法: y={y}, |Z|={len(Z)}, |P|={len(P)}, |Q|={len(Q)}, n={n}")
    graph = intersection_graph(P, Q)
    outcome = thomason_search(graph, n)
    if outcome is None:
        reason = "路径族小于 n" if min(len(P), len(Q)) < n else "交图中没有 n×n 完全或反完全对"
        logger.info(f"二分法未决: {reason}")
        return DichotomyOutcome.from_inconclusive(
            Inconclusive("thomason", reason, {"P": len(P), "Q": len(Q), "n": n}))
    if not verify_thomason(graph, outcome, n):
        raise PipelineDefect(f"Thomason 见证未通过复核: {outcome}")

    if outcome.tag is ThomasonTag.BICLIQUE:
        left, right = _extend_biclique(graph, outcome.A, outcome.B)
        ctx = WellCrossingPair(d, [P[i] for i in left], [Q[j] for j in right], y)
        logger.info(f"交图含 {len(left)}×{len(right)} 良交叉对，收割 {t}-洋葱星")
        star = harvest_onion_star(ctx, t)
        if isinstance(star, Inconclusive):
            return DichotomyOutcome.from_inconclusive(star)
        return DichotomyOutcome.from_star(star)

    P_out = [P[i] for i in outcome.A[:k]]
    Q_out = [Q[j] for j in outcome.B[:k]]
    if len(P_out) != k or len(Q_out) != k or not are_arc_disjoint(P_out + Q_out):
        raise PipelineDefect("不交叉分支的路径不是 k + k 条两两弧不交的路径")
    logger.info(f"不交叉: {k} + {k} 条两两弧不交的路径")
    return DichotomyOutcome.uncrossed(P_out, Q_out)


# ---- 连通集到洋葱星 ----

@dataclass
class LinkedSetInstance:
    """有向图 d 中的 2t+1 个顶点 X"""
    d: MultiDigraph
    X: Tuple[VertexId, ...]
    t: int

    def __post_init__(self):
        self.X = tuple(sorted(set(self.X)))

    def validate(self) -> None:
        if self.t < 1:
            raise ContractViolation(f"t 必须为正整数，实际为 {self.t}")
        if len(self.X) != 2 * self.t + 1:
            raise ContractViolation(f"|X| 必须为 2t+1 = {2 * self.t + 1}，实际为 {len(self.X)}")
        unknown = [v for v in self.X if not self.d.has_vertex(v)]
        if unknown:
            raise ContractViolation(f"X 中的顶点不在图中: {unknown}", "UNKNOWN_VERTEX")


class NoCutPipeline(PipelineBase):
    """
    连通集到洋葱星

    X 升序排列为 y, x_1..x_2t。辅助图加顶点 v 和每个 x_i 的 B 条 v→x_i、x_i→v，
    取 v→y 与 y→v 的最大流并按叶子分组，随后按行优先对每个 (i, j) 调用二分法缩小路径族，
    全部不交叉时由每个叶子剩余的两条出入路径拼出以 y 为中心的洋葱星。
    """

    def __init__(self, inst: LinkedSetInstance, budget: Optional[int] = None,
                 schedule: Optional[Schedule] = None, working_threshold: Optional[int] = None):
        super().__init__("NoCutPipeline")
        inst.validate()
        self.inst = inst
        base = budget if budget is not None else self.settings.pipeline.budget
        self.schedule: Schedule = schedule or (lambda p: base)
        self.working_threshold = (working_threshold if working_threshold is not None
                                  else self.settings.pipeline.working_threshold)

    def _hypothesis_gap(self, needed: int) -> Optional[Inconclusive]:
        d = self.inst.d
        for a, b in permutations(self.inst.X, 2):
            value = mu(d, a, b)
            if value < needed:
                return Inconclusive("hypothesis", f"μ({a},{b}) = {value} < {needed}",
                                    {"pair": [a, b], "mu": value, "needed": needed})
        return None

    def _leaf_families(self, y: VertexId, leaves: Sequence[VertexId],
                       multiplicity: int) -> Tuple[Dict[VertexId, PathFamily], Dict[VertexId, PathFamily]]:
        d = self.inst.d
        v = d.next_vertex_id()
        next_arc = d.next_arc_id()
        extra: Dict[ArcId, Tuple[VertexId, VertexId]] = {}
        for leaf in leaves:
            for _ in range(multiplicity):
                extra[next_arc] = (v, leaf)
                extra[next_arc + 1] = (leaf, v)
                next_arc += 2
        auxiliary = d.with_additions([v], extra)

        to_y: Dict[VertexId, PathFamily] = {leaf: [] for leaf in leaves}
        from_y: Dict[VertexId, PathFamily] = {leaf: [] for leaf in leaves}
        for p in max_disjoint_paths(auxiliary, v, y).paths:
            stripped = Path(tuple(a for a in p.arcs if a not in extra))
            to_y[d.source_of(stripped)].append(stripped)
        for q in max_disjoint_paths(auxiliary, y, v).paths:
            stripped = Path(tuple(a for a in q.arcs if a not in extra))
            from_y[d.target_of(stripped)].append(stripped)

        for leaf in leaves:
            if len(to_y[leaf]) != multiplicity or len(from_y[leaf]) != multiplicity:
                raise PipelineDefect(
                    f"叶子 {leaf} 的路径数 {len(to_y[leaf])}/{len(from_y[leaf])} 不等于 {multiplicity}")
        return to_y, from_y

    def run(self) -> Union[OnionStarModel, Inconclusive]:
        inst = self.inst
        t = inst.t
        y, leaves = inst.X[0], list(inst.X[1:])
        multiplicity = self.schedule(0)
        if multiplicity < 2:
            raise ContractViolation(f"预算必须至少为 2，实际为 {multiplicity}")

        self._log_stage(f"检查连通性假设 μ ≥ {2 * t * multiplicity}")
        gap = self._hypothesis_gap(2 * t * multiplicity)
        if gap is not None:
            self._log_inconclusive(gap.stage, gap.reason)
            return gap

        to_y, from_y = self._leaf_families(y, leaves, multiplicity)
        self._log_stage(f"辅助图最大流: 每个叶子 {multiplicity} 条入 y、{multiplicity} 条出 y 路径")

        step = 0
        for i in leaves:
            for j in leaves:
                step += 1
                k = self.schedule(step)
                if len(to_y[i]) < k or len(from_y[j]) < k:
                    gap = Inconclusive("schedule", f"第 {step} 轮预算 {k} 超过剩余路径数",
                                       {"step": step, "k": k})
                    self._log_inconclusive(gap.stage, gap.reason)
                    return gap
                outcome = onion_or_uncross(inst.d, y, {i, j}, t, k, self.working_threshold,
                                           families=(from_y[j], to_y[i]))
                if outcome.tag is OutcomeTag.ONION_STAR:
                    self._log_stage(f"第 {step} 轮 ({i},{j}) 找到洋葱星")
                    return outcome.star
                if outcome.tag is OutcomeTag.INCONCLUSIVE:
                    details = dict(outcome.inconclusive.details, step=step, pair=[i, j])
                    gap = Inconclusive(f"dichotomy({i},{j})", outcome.inconclusive.reason, details)
                    self._log_inconclusive(gap.stage, gap.reason)
                    return gap

                from_y[j], to_y[i] = list(outcome.families[0]), list(outcome.families[1])
                for leaf in leaves:
                    if leaf != i:
                        to_y[leaf] = to_y[leaf][:k]
                    if leaf != j:
                        from_y[leaf] = from_y[leaf][:k]
                self.logger.debug(f"第 {step} 轮 ({i},{j}) 不交叉，路径族缩小到 {k}")

        for leaf in leaves:
            if len(to_y[leaf]) < 2 or len(from_y[leaf]) < 2:
                gap = Inconclusive("assembly", f"叶子 {leaf} 剩余路径不足 2 条", {"leaf": leaf})
                self._log_inconclusive(gap.stage, gap.reason)
                return gap

        arc_paths: Dict[ArcId, Path] = {}
        for index in range(t):
            y_leaf, z_leaf = leaves[index], leaves[t + index]
            base = 6 * index
            arc_paths[base] = from_y[y_leaf][0]
            arc_paths[base + 1] = from_y[y_leaf][1]
            arc_paths[base + 2] = to_y[y_leaf][0]
            arc_paths[base + 3] = to_y[z_leaf][0]
            arc_paths[base + 4] = to_y[z_leaf][1]
            arc_paths[base + 5] = from_y[z_leaf][0]
        star = OnionStarModel(y, leaves[:t], leaves[t:], arc_paths)
        report = verify_model(star.to_immersion_model(inst.d))
        if not report.ok:
            raise PipelineDefect(f"拼装的洋葱星未通过校验 [{report.clause}] {report.locus}")
        self._log_stage(f"拼装洋葱星: 中心 {y}, y 叶 {star.y_leaves}, z 叶 {star.z_leaves}")
        return star


def no_cut_to_onion_star(inst: LinkedSetInstance, budget: Optional[int] = None,
                         schedule: Optional[Schedule] = None,
                         working_threshold: Optional[int] = None) -> Union[OnionStarModel, Inconclusive]:
    """
    连通集 X 到以 min(X) 为中心的 t-洋葱星（已校验）或 Inconclusive

    Args:
        inst: 连通集实例
        budget: 每个叶子的工作预算 B（默认 pipeline.budget），schedule 缺省时各轮恒为 B
        schedule: 第 p 轮的预算 B_p（p = 0 为初始多重度）
        working_threshold: 传给二分法的 N_w

    Raises:
        ContractViolation: |X| ≠ 2t+1 或预算小于 2
    """
    return NoCutPipeline(inst, budget, schedule, working_threshold).execute()


# ---- 度数受限嵌入 ----

def _vertex_kind(h: MultiDigraph, v: VertexId) -> Tuple[bool, bool]:
    out_degree, in_degree = h.out_degree(v), h.in_degree(v)
    return out_degree <= 2 and in_degree <= 1, out_degree <= 1 and in_degree <= 2


def embed_degree_bounded(h: MultiDigraph, t: int) -> ImmersionModel:
    """
    把每个顶点满足 (出度 ≤ 2 且入度 ≤ 1) 或 (出度 ≤ 1 且入度 ≤ 2) 的 h 嵌入 t-洋葱星

    前一类映射到 z 叶，其余映射到 y 叶；两类都满足时放进剩余容量较多的一侧（并列取 z）。
    每条弧 u→w 走 leaf(u)→x→leaf(w)，各用一条尚未使用的弧。

    Raises:
        ContractViolation: |V(h)| > t 或度数条件不满足
        PipelineDefect: 模型未通过校验
    """
    if t < 1:
        raise ContractViolation(f"t 必须为正整数，实际为 {t}")
    if h.num_vertices > t:
        raise ContractViolation(f"|V(h)| = {h.num_vertices} 超过 t = {t}")
    kinds = {}
    for v in h.vertices:
        z_kind, y_kind = _vertex_kind(h, v)
        if not (z_kind or y_kind):
            raise ContractViolation(
                f"顶点 {v} 的出度 {h.out_degree(v)}、入度 {h.in_degree(v)} 不满足度数条件", "DEGREE_CONDITION")
        kinds[v] = (z_kind, y_kind)

    star = onion_star(t)
    host = star.digraph
    center = star.marks["center"]
    y_pool = list(star.marks["y"])
    z_pool = list(star.marks["z"])

    vertex_map: Dict[VertexId, VertexId] = {}
    for v in h.vertices:
        z_kind, y_kind = kinds[v]
        use_z = z_kind and (not y_kind or len(z_pool) >= len(y_pool))
        vertex_map[v] = z_pool.pop(0) if use_z else y_pool.pop(0)

    to_center: Dict[VertexId, List[ArcId]] = {}
    from_center: Dict[VertexId, List[ArcId]] = {}
    for arc, tail, head in host.arc_items():
        if head == center:
            to_center.setdefault(tail, []).append(arc)
        else:
            from_center.setdefault(head, []).append(arc)

    arc_map: Dict[ArcId, Path] = {}
    for arc, tail, head in h.arc_items():
        leaf_u, leaf_w = vertex_map[tail], vertex_map[head]
        if not to_center.get(leaf_u) or not from_center.get(leaf_w):
            raise AlgorithmDefect(f"弧 {arc} 没有可用的中心弧", "EMBED_DEFECT")
        arc_map[arc] = Path.of(to_center[leaf_u].pop(0), from_center[leaf_w].pop(0))

    model = ImmersionModel(h, host, vertex_map, arc_map)
    report = verify_model(model)
    if not report.ok:
        raise PipelineDefect(f"嵌入模型未通过校验 [{report.clause}] {report.locus}")
    logger.debug(f"嵌入完成: {vertex_map}")
    return model


__all__ = [
    "DichotomyOutcome", "GeneratedInstance", "LinkedSetInstance", "NoCutPipeline", "OutcomeTag",
    "embed_degree_bounded", "generate", "no_cut_to_onion_star", "onion_or_uncross",
]
