"""
洋葱收割
从良交叉对中提取洋葱浸入模型，迭代得到公共根的洋葱族，再拼装 t-洋葱星

所有非 Inconclusive 的输出在返回前都经过校验，校验失败抛出 HarvestDefect。
"""

from itertools import combinations
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

import numpy as np

from ..config.settings import get_config
from ..core.crossing import (
    CrossingAnalysis, WellCrossingPair, check_well_crossing, intersection_graph, is_well_crossing,
)
from ..core.digraph import (
    ArcId, Direction, Path, PathFamily, TrimMode, VertexId, concatenate, family_arcs, reverse, trim,
)
from ..core.extremal import biclique_search
from ..core.export import family_to_list
from ..core.oracle import verify_model
from ..core.utils import ContractViolation, OnionLogger
from .exceptions import HarvestDefect, SelectionDefect
from .models import HarvestResult, OnionModel, OnionStarModel
from .outcomes import Inconclusive
from .pipeline_base import PipelineBase

logger = OnionLogger.get_logger("harvest")

CASE_MANY_DANGEROUS = "case-1"
CASE_FEW_DANGEROUS = "case-2"


class HarvestBatch(NamedTuple):
    """t 个洋葱与剩余良交叉对"""
    onions: List[OnionModel]
    residual: WellCrossingPair

    def to_dict(self) -> Dict[str, Any]:
        return {
            "onions": [o.to_dict() for o in self.onions],
            "residual": {
                "P": family_to_list(self.residual.P),
                "Q": family_to_list(self.residual.Q),
                "root": self.residual.root,
            },
        }


def _as_direction(direction: Union[str, Direction]) -> Direction:
    if isinstance(direction, Direction):
        return direction
    try:
        return Direction(direction)
    except ValueError:
        raise ContractViolation(f"未知的收割方向: {direction!r}（可选 out / in）") from None


def _reversed_pair(ctx: WellCrossingPair) -> WellCrossingPair:
    """反转图上的交换对 (rev Q, rev P)，根不变"""
    return WellCrossingPair(
        reverse(ctx.digraph),
        [reverse(q) for q in ctx.Q],
        [reverse(p) for p in ctx.P],
        ctx.root,
    )


# ---- 校验 ----

def harvest_problems(ctx: WellCrossingPair, onion: OnionModel, residual: WellCrossingPair,
                     direction: Union[str, Direction] = Direction.OUT) -> List[str]:
    """
    列出收割结果违反的全部性质（空列表表示通过）

    out 方向：洋葱源为根，剩余公共弧不以洋葱汇为尾；
    in 方向：洋葱汇为根，剩余公共弧不以洋葱源为头。
    """
    direction = _as_direction(direction)
    d = ctx.digraph
    problems = []

    report = verify_model(onion.to_immersion_model(d))
    if not report.ok:
        problems.append(f"洋葱模型 [{report.clause}] {report.locus}")

    anchor = onion.source if direction is Direction.OUT else onion.sink
    if anchor != ctx.root:
        problems.append(f"洋葱的根端点 {anchor} 不是 {ctx.root}")

    crossing_report = is_well_crossing(d, residual.P, residual.Q, ctx.root)
    if not crossing_report.ok:
        problems.append(f"剩余对不是良交叉对 [{crossing_report.clause}] {crossing_report.detail}")

    if not family_arcs(residual.P) <= family_arcs(ctx.P):
        problems.append("剩余 P 含有输入 P 之外的弧")
    if not family_arcs(residual.Q) <= family_arcs(ctx.Q):
        problems.append("剩余 Q 含有输入 Q 之外的弧")

    shared = family_arcs(list(residual.P) + list(residual.Q)) & onion.arc_set()
    if shared:
        problems.append(f"剩余路径与洋葱共用弧 {sorted(shared)}")

    common = family_arcs(residual.P) & family_arcs(residual.Q)
    if direction is Direction.OUT:
        touching = sorted(a for a in common if d.tail(a) == onion.sink)
    else:
        touching = sorted(a for a in common if d.head(a) == onion.source)
    if touching:
        problems.append(f"剩余交叉弧 {touching} 触及洋葱的非根端点")
    return problems


def check_harvest(ctx: WellCrossingPair, result: HarvestResult,
                  direction: Union[str, Direction] = Direction.OUT) -> None:
    problems = harvest_problems(ctx, result.onion, result.residual, direction)
    if problems:
        raise HarvestDefect("; ".join(problems))


# ---- 单次收割 ----

def _suffix_counts(analysis: CrossingAnalysis, q_index: int) -> Tuple[List[int], List[int]]:
    """after[j] = |P(Q(a_j→))|，through[j] = |P(Q[a_j→))|"""
    arcs = analysis.ctx.Q[q_index].arcs
    after = [0] * len(arcs)
    through = [0] * len(arcs)
    seen: Set[int] = set()
    for j in range(len(arcs) - 1, -1, -1):
        after[j] = len(seen)
        owner = analysis.p_owner.get(arcs[j])
        if owner is not None:
            seen.add(owner)
        through[j] = len(seen)
    return after, through


def _pivot(analysis: CrossingAnalysis, q_index: int) -> Tuple[ArcId, Path]:
    q = analysis.ctx.Q[q_index]
    target = len(analysis.ctx.P) // 3
    after, through = _suffix_counts(analysis, q_index)
    for j, count in enumerate(after):
        if count == target:
            if through[j] != count + 1:
                raise HarvestDefect(f"枢轴弧 {q.arcs[j]} 处后缀计数恒等式不成立")
            return q.arcs[j], Path(q.arcs[j:])
    raise HarvestDefect(f"Q[{q_index}] 上没有后缀恰好遇到 {target} 条 P 路径")


def pivot_arc(ctx: WellCrossingPair, q_index: int) -> Tuple[ArcId, Path]:
    """
    Q[q_index] 上的枢轴弧 e 及 Q̃ = Q[e→)

    e 是使 Q(e→) 恰好遇到 ⌊|P|/3⌋ 条 P 路径的最靠前的弧。

    Raises:
        ContractViolation: ctx 不是良交叉对或下标越界
    """
    check_well_crossing(ctx)
    if not 0 <= q_index < len(ctx.Q):
        raise ContractViolation(f"q 下标越界: {q_index}")
    return _pivot(CrossingAnalysis(ctx), q_index)


def _select_residual(ctx: WellCrossingPair, p_pool: Sequence[Path], q_pool: Sequence[Path],
                     sink: VertexId, minimum: int, maximize: bool) -> Optional[Tuple[PathFamily, PathFamily]]:
    """
    在候选中挑选剩余对，排除含有“P* 中以 sink 为尾的弧”的 Q 路径

    maximize 时取 P* 前缀大小 m 使 min(m, |Q*_m|) 最大（并列取较大 m），否则两侧恰好 minimum 条。
    """
    d = ctx.digraph

    def admissible(p_star: Sequence[Path]) -> List[Path]:
        banned = {a for p in p_star for a in p.arcs if d.tail(a) == sink}
        return [q for q in q_pool if banned.isdisjoint(q.arcs)]

    if not maximize:
        if len(p_pool) < minimum:
            return None
        p_star = list(p_pool[:minimum])
        q_star = admissible(p_star)
        if len(q_star) < minimum:
            return None
        return p_star, q_star[:minimum]

    best = None
    for m in range(minimum, len(p_pool) + 1):
        q_star = admissible(p_pool[:m])
        score = min(m, len(q_star))
        if score >= minimum and (best is None or score >= best[0]):
            best = (score, list(p_pool[:m]), q_star)
    return (best[1], best[2]) if best else None


def _assert_disjoint(first: Path, second: Path, what: str) -> None:
    shared = first.arc_set() & second.arc_set()
    if shared:
        raise HarvestDefect(f"{what} 共用弧 {sorted(shared)}")


def _many_dangerous(analysis: CrossingAnalysis, q_index: int, e: ArcId,
                    minimum: int, maximize: bool) -> Union[HarvestResult, Inconclusive]:
    """Q̃ 上至少两条危险路径"""
    ctx = analysis.ctx
    d = ctx.digraph
    q = ctx.Q[q_index]
    position = analysis.q_position[q_index]
    dangerous = [c for c in analysis.crossings_on(q_index) if analysis.is_dangerous(c)]

    last = dangerous[-1]
    p2 = last.p_index
    e_prime = [c for c in dangerous if c.p_index != p2][-1]
    p1 = e_prime.p_index
    path1, path2 = ctx.P[p1], ctx.P[p2]

    d_prime = None
    for lower in (position[e], position[e_prime.arc] + 1):
        # 先取 Q̃ 上 P2 的最早交叉，不落在 e' 之后时改取 Q(e'→) 上的
        candidates = [c for c in analysis.crossings_on(q_index)
                      if c.p_index == p2 and position[c.arc] >= lower]
        if not candidates:
            continue
        first = min(candidates, key=lambda c: analysis.p_position[p2][c.arc])
        if position[first.arc] > position[e_prime.arc]:
            d_prime = first.arc
            break
        logger.debug(f"d' = {first.arc} 不在 e' = {e_prime.arc} 之后，改用 Q(e'→) 上的交叉")
    if d_prime is None:
        raise HarvestDefect(f"Q[{q_index}] 上找不到 P[{p2}] 在 e' 之后的交叉")

    prefix1 = trim(path1, e_prime.arc, TrimMode.BEFORE_CLOSED)
    _assert_disjoint(prefix1, trim(q, e_prime.arc, TrimMode.AFTER_OPEN), "P1(→e'] 与 Q(e'→)")
    _assert_disjoint(trim(path2, d_prime, TrimMode.BEFORE_OPEN),
                     trim(q, e_prime.arc, TrimMode.AFTER_CLOSED), "P2(→d') 与 Q[e'→)")

    sink = d.tail(d_prime)
    onion = OnionModel(
        source=ctx.root,
        sink=sink,
        out_paths=(concatenate(prefix1, trim(q, e_prime.arc, TrimMode.BETWEEN, d_prime), d),
                   trim(path2, d_prime, TrimMode.BEFORE_OPEN)),
        back_path=trim(q, d_prime, TrimMode.AFTER_CLOSED),
    )
    logger.debug(f"多危险情形: e={e}, e'={e_prime.arc}, d={last.arc}, d'={d_prime}, 汇 {sink}")

    blocked = prefix1.arc_set() | trim(path2, d_prime, TrimMode.BEFORE_CLOSED).arc_set()
    q_pool = [r for j, r in enumerate(ctx.Q) if j != q_index and blocked.isdisjoint(r.arcs)]
    tail_arcs = trim(q, e_prime.arc, TrimMode.AFTER_CLOSED).arc_set()
    p_pool = [p for i, p in enumerate(ctx.P) if i not in (p1, p2) and tail_arcs.isdisjoint(p.arcs)]

    selected = _select_residual(ctx, p_pool, q_pool, sink, minimum, maximize)
    if selected is None:
        return Inconclusive("harvest", "剩余族不足", {
            "case": CASE_MANY_DANGEROUS, "q_index": q_index,
            "p_candidates": len(p_pool), "q_candidates": len(q_pool), "needed": minimum,
        })
    residual = WellCrossingPair(d, selected[0], selected[1], ctx.root)
    return HarvestResult(onion, residual, CASE_MANY_DANGEROUS, q_index, e)


def _pair_order(size: int, rng: Optional[np.random.Generator]) -> List[Tuple[int, int]]:
    pairs = list(combinations(range(size), 2))
    if rng is not None:
        pairs = [pairs[i] for i in rng.permutation(len(pairs))]
    return pairs


def _few_dangerous(analysis: CrossingAnalysis, q_index: int, e: ArcId, suffix: Path,
                   dangerous: Sequence[int], minimum: int, maximize: bool,
                   rng: Optional[np.random.Generator]) -> Union[HarvestResult, Inconclusive]:
    """Q̃ 上至多一条危险路径"""
    ctx = analysis.ctx
    d = ctx.digraph
    q = ctx.Q[q_index]
    position = analysis.q_position[q_index]
    suffix_arcs = suffix.arc_set()

    met = sorted({c.p_index for c in analysis.crossings_on(q_index, suffix.arcs)})
    safe_members = [i for i in met if i not in dangerous]
    first_hit: Dict[int, ArcId] = {}
    s_trimmed: PathFamily = []
    for i in safe_members:
        first_hit[i] = next(a for a in ctx.P[i].arcs if a in suffix_arcs)
        s_trimmed.append(trim(ctx.P[i], first_hit[i], TrimMode.BEFORE_OPEN))

    others = [j for j in range(len(ctx.Q)) if j != q_index]
    graph = intersection_graph(s_trimmed, [ctx.Q[j] for j in others])
    lower = 2 * minimum + 2
    biclique = None
    for k in range(min(len(s_trimmed), len(others)), lower - 1, -1):
        biclique = biclique_search(graph, k)
        if biclique is not None:
            break
    if biclique is None:
        return Inconclusive("harvest", "截断 S 与 Q∖{Q} 之间没有足够大的完全二部子图", {
            "case": CASE_FEW_DANGEROUS, "q_index": q_index, "s_size": len(s_trimmed), "needed": lower,
        })

    s_prime = [safe_members[i] for i in biclique.left]
    s_prime_trimmed = [s_trimmed[i] for i in biclique.left]
    q_prime = [ctx.Q[others[j]] for j in biclique.right]
    logger.debug(f"少危险情形: e={e}, K_{{{len(s_prime)},{len(s_prime)}}} 于 S̃ 与 Q∖{{Q}}")

    for a, b in _pair_order(len(s_prime), rng):
        pair_arcs = ctx.P[s_prime[a]].arc_set() | ctx.P[s_prime[b]].arc_set()
        q_trimmed: PathFamily = []
        for r in q_prime:
            hits = [k for k, arc in enumerate(r.arcs) if arc in pair_arcs]
            q_trimmed.append(Path(r.arcs[hits[-1] + 1:]) if hits else r)

        inner = intersection_graph(s_prime_trimmed, q_trimmed)
        sizes = range(min(len(s_prime_trimmed), len(q_trimmed)), 2 * minimum - 1, -1) if maximize \
            else (2 * minimum,)
        found = None
        for k in sizes:
            found = biclique_search(inner, k)
            if found is not None:
                break
        if found is None:
            continue

        one, two = s_prime[a], s_prime[b]
        if position[first_hit[one]] > position[first_hit[two]]:
            one, two = two, one
        e1, e2 = first_hit[one], first_hit[two]
        sink = d.tail(e2)
        onion = OnionModel(
            source=ctx.root,
            sink=sink,
            out_paths=(trim(ctx.P[two], e2, TrimMode.BEFORE_OPEN),
                       concatenate(trim(ctx.P[one], e1, TrimMode.BEFORE_CLOSED),
                                   trim(q, e1, TrimMode.BETWEEN, e2), d)),
            back_path=trim(q, e2, TrimMode.AFTER_CLOSED),
        )
        p_pool = [s_prime_trimmed[i] for i in found.left]
        q_pool = [q_trimmed[j] for j in found.right]
        overlap = family_arcs(p_pool + q_pool) & onion.arc_set()
        if overlap:
            raise HarvestDefect(f"少危险情形的洋葱与 P°∪Q° 共用弧 {sorted(overlap)}")

        selected = _select_residual(ctx, p_pool, q_pool, sink, minimum, maximize)
        if selected is None:
            continue
        logger.debug(f"选中路径对 P[{one}], P[{two}]: e1={e1}, e2={e2}, 汇 {sink}")
        residual = WellCrossingPair(d, selected[0], selected[1], ctx.root)
        return HarvestResult(onion, residual, CASE_FEW_DANGEROUS, q_index, e)

    return Inconclusive("harvest", "没有路径对给出足够大的剩余完全二部子图", {
        "case": CASE_FEW_DANGEROUS, "q_index": q_index, "s_prime": len(s_prime), "needed": 2 * minimum,
    })


def _harvest_with(analysis: CrossingAnalysis, q_index: int, minimum: int, maximize: bool,
                  rng: Optional[np.random.Generator]) -> Union[HarvestResult, Inconclusive]:
    e, suffix = _pivot(analysis, q_index)
    dangerous = analysis.dangerous_paths(q_index, suffix)
    if len(dangerous) >= 2:
        return _many_dangerous(analysis, q_index, e, minimum, maximize)
    return _few_dangerous(analysis, q_index, e, suffix, dangerous, minimum, maximize, rng)


def _pair_rng(pair_order: Optional[str], seed: Optional[int]) -> Optional[np.random.Generator]:
    pair_order = pair_order or get_config('harvest.pair_order', 'lexicographic')
    if pair_order == "lexicographic":
        return None
    if pair_order == "shuffled":
        return np.random.default_rng(get_config('general.seed', 0) if seed is None else seed)
    raise ContractViolation(f"未知的路径对顺序: {pair_order!r}（可选 lexicographic / shuffled）")


def _harvest_once(ctx: WellCrossingPair, minimum: int, maximize: bool,
                  pair_order: Optional[str] = None, seed: Optional[int] = None) -> Union[HarvestResult, Inconclusive]:
    """依次尝试各条 Q，返回第一个成功且通过校验的收割结果"""
    analysis = CrossingAnalysis(ctx)
    rng = _pair_rng(pair_order, seed)
    attempts = get_config('harvest.max_q_attempts', 0) or len(ctx.Q)
    failures = []
    for q_index in range(min(attempts, len(ctx.Q))):
        outcome = _harvest_with(analysis, q_index, minimum, maximize, rng)
        if isinstance(outcome, Inconclusive):
            logger.debug(f"Q[{q_index}] 未决: {outcome.reason}")
            failures.append({"q_index": q_index, "reason": outcome.reason})
            continue
        check_harvest(ctx, outcome)
        return outcome
    return Inconclusive("harvest", "所有尝试的 Q 都未能收割", {
        "sizes": [len(ctx.P), len(ctx.Q)], "needed": minimum, "attempts": failures,
    })


def harvest_single(ctx: WellCrossingPair, n: int, pair_order: Optional[str] = None,
                   seed: Optional[int] = None) -> Union[HarvestResult, Inconclusive]:
    """
    从良交叉对中收割一个以根为源的洋葱，并保留 n×n 的剩余良交叉对

    Args:
        ctx: 良交叉对
        n: 剩余族大小
        pair_order: 路径对枚举顺序 lexicographic / shuffled（默认取配置）
        seed: shuffled 时的随机种子（默认取 general.seed）

    Returns:
        HarvestResult（已校验）或 Inconclusive

    Raises:
        ContractViolation: ctx 不是良交叉对或 n < 1
        HarvestDefect: 构造结果未通过校验
    """
    if n < 1:
        raise ContractViolation(f"n 必须为正整数，实际为 {n}")
    check_well_crossing(ctx)
    logger.info(f"单次收割: |P|={len(ctx.P)}, |Q|={len(ctx.Q)}, n={n}")
    outcome = _harvest_once(ctx, n, maximize=False, pair_order=pair_order, seed=seed)
    if isinstance(outcome, Inconclusive):
        logger.info(f"单次收割未决: {outcome.reason}")
    else:
        logger.info(f"单次收割成功: {outcome.case}, 汇 {outcome.onion.sink}")
    return outcome


def harvest_many(ctx: WellCrossingPair, t: int, n: int, direction: Union[str, Direction] = Direction.OUT,
                 pair_order: Optional[str] = None, seed: Optional[int] = None) -> Union[HarvestBatch, Inconclusive]:
    """
    迭代收割 t 个两两弧不交、共享根的洋葱

    out 方向：洋葱以根为源且汇两两不同；in 方向：在反转图上收割后映射回来，洋葱以根为汇且源两两不同。
    每轮保留尽可能大的剩余对，最终剩余对两侧至少 n 条路径。

    Raises:
        ContractViolation: ctx 非法、t < 0 或 n < 1
        HarvestDefect: 结果未通过校验
    """
    direction = _as_direction(direction)
    if t < 0:
        raise ContractViolation(f"t 不能为负，实际为 {t}")
    if n < 1:
        raise ContractViolation(f"n 必须为正整数，实际为 {n}")
    check_well_crossing(ctx)
    if t == 0:
        return HarvestBatch([], ctx)

    logger.info(f"批量收割({direction.value}): t={t}, n={n}, |P|={len(ctx.P)}, |Q|={len(ctx.Q)}")
    working = ctx if direction is Direction.OUT else _reversed_pair(ctx)
    onions: List[OnionModel] = []
    current = working
    for index in range(t):
        outcome = _harvest_once(current, n, maximize=True, pair_order=pair_order, seed=seed)
        if isinstance(outcome, Inconclusive):
            logger.info(f"第 {index + 1} 个洋葱未决: {outcome.reason}")
            details = dict(outcome.details, harvested=index, direction=direction.value)
            return Inconclusive(f"harvest-{direction.value}", outcome.reason, details)
        onions.append(outcome.onion)
        current = outcome.residual
        logger.debug(f"第 {index + 1} 个洋葱: 汇 {outcome.onion.sink}, 剩余 {len(current.P)}×{len(current.Q)}")

    if len({o.sink for o in onions}) != t:
        raise HarvestDefect(f"洋葱的非根端点有重复: {[o.sink for o in onions]}")

    if direction is Direction.IN:
        onions = [o.reversed() for o in onions]
        current = _reversed_pair(current)
        current = WellCrossingPair(ctx.digraph, current.P, current.Q, ctx.root)

    _check_batch(ctx, onions, current, direction, n)
    logger.info(f"批量收割完成: {t} 个洋葱, 剩余 {len(current.P)}×{len(current.Q)}")
    return HarvestBatch(onions, current)


def _check_batch(ctx: WellCrossingPair, onions: List[OnionModel], residual: WellCrossingPair,
                 direction: Direction, n: int) -> None:
    used: Dict[ArcId, int] = {}
    for index, o in enumerate(onions):
        problems = harvest_problems(ctx, o, residual, direction)
        if problems:
            raise HarvestDefect(f"第 {index + 1} 个洋葱: " + "; ".join(problems))
        for arc in o.arc_set():
            if arc in used:
                raise HarvestDefect(f"第 {used[arc] + 1} 与第 {index + 1} 个洋葱共用弧 {arc}")
            used[arc] = index
    if len(residual.P) < n or len(residual.Q) < n:
        raise HarvestDefect(f"剩余对 {len(residual.P)}×{len(residual.Q)} 小于 {n}")


# ---- 洋葱星 ----

def select_leaves(out_onions: List[OnionModel], in_onions: List[OnionModel],
                  t: int) -> Tuple[List[OnionModel], List[OnionModel]]:
    """
    取前 t 个出洋葱，再取前 t 个源不与所选汇冲突的入洋葱

    Raises:
        SelectionDefect: 候选不足
    """
    chosen_out = out_onions[:t]
    sinks = {o.sink for o in chosen_out}
    chosen_in = [o for o in in_onions if o.source not in sinks][:t]
    if len(chosen_out) < t or len(chosen_in) < t:
        raise SelectionDefect(
            f"无法选出 {t}+{t} 个叶子: 出洋葱 {len(out_onions)}, 可用入洋葱 {len(chosen_in)}")
    return chosen_out, chosen_in


class OnionStarHarvest(PipelineBase):
    """两阶段收割 t-洋葱星：2t 个出洋葱，随后在剩余对上 2t 个入洋葱"""

    def __init__(self, ctx: WellCrossingPair, t: int, pair_order: Optional[str] = None,
                 seed: Optional[int] = None):
        super().__init__("OnionStarHarvest")
        if t < 1:
            raise ContractViolation(f"t 必须为正整数，实际为 {t}")
        self.ctx = ctx
        self.t = t
        self.pair_order = pair_order or self.settings.harvest.pair_order
        self.seed = self.settings.general.seed if seed is None else seed

    def run(self) -> Union[OnionStarModel, Inconclusive]:
        check_well_crossing(self.ctx)
        self._log_stage(f"收割 {2 * self.t} 个出洋葱")
        first = harvest_many(self.ctx, 2 * self.t, 1, Direction.OUT, self.pair_order, self.seed)
        if isinstance(first, Inconclusive):
            self._log_inconclusive(first.stage, first.reason)
            return first

        self._log_stage(f"在 {len(first.residual.P)}×{len(first.residual.Q)} 剩余对上收割 {2 * self.t} 个入洋葱")
        second = harvest_many(first.residual, 2 * self.t, 1, Direction.IN, self.pair_order, self.seed)
        if isinstance(second, Inconclusive):
            self._log_inconclusive(second.stage, second.reason)
            return second

        chosen_out, chosen_in = select_leaves(first.onions, second.onions, self.t)
        star = OnionStarModel.assemble(self.ctx.root, chosen_out, chosen_in)
        report = verify_model(star.to_immersion_model(self.ctx.digraph))
        if not report.ok:
            raise HarvestDefect(f"洋葱星模型未通过校验 [{report.clause}] {report.locus}")
        self._log_stage(f"洋葱星: 中心 {star.center}, y 叶 {star.y_leaves}, z 叶 {star.z_leaves}")
        return star


def harvest_onion_star(ctx: WellCrossingPair, t: int, pair_order: Optional[str] = None,
                       seed: Optional[int] = None) -> Union[OnionStarModel, Inconclusive]:
    """
    从良交叉对收割以根为中心的 t-洋葱星（已校验）或 Inconclusive

    Raises:
        ContractViolation: ctx 非法或 t < 1
        HarvestDefect / SelectionDefect: 内部校验失败
    """
    return OnionStarHarvest(ctx, t, pair_order, seed).execute()
