"""
实例生成器
洋葱、t-洋葱星、反例网格、交叉网格与随机多重图
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from ..core.crossing import WellCrossingPair
from ..core.digraph import DigraphBuilder, MultiDigraph, Path, PathFamily, VertexId
from ..core.utils import ContractViolation, OnionLogger

logger = OnionLogger.get_logger("generators")

OrderSpec = Union[str, Sequence[int], Sequence[Sequence[int]]]

GENERATOR_KINDS = ("onion", "onion-star", "counterexample", "crossing-grid", "random")

_REQUIRED_PARAMS = {
    "onion-star": ("t",),
    "counterexample": ("k",),
    "crossing-grid": ("p", "q"),
    "random": ("n", "m"),
}


@dataclass
class GeneratedInstance:
    """生成的有向图及其标记顶点（marks）和可选的路径族"""
    kind: str
    digraph: MultiDigraph
    marks: Dict[str, Any] = field(default_factory=dict)
    P: Optional[PathFamily] = None
    Q: Optional[PathFamily] = None

    def well_crossing_pair(self) -> WellCrossingPair:
        if self.P is None or self.Q is None:
            raise ContractViolation(f"{self.kind} 实例不带良交叉对")
        return WellCrossingPair(self.digraph, list(self.P), list(self.Q), self.marks["root"])


def onion() -> GeneratedInstance:
    """洋葱：源 0，汇 1；弧 0、1 为 0→1，弧 2 为 1→0"""
    builder = DigraphBuilder()
    source, sink = builder.add_vertices(2)
    builder.add_parallel(source, sink, 2)
    builder.add_arc(sink, source)
    return GeneratedInstance("onion", builder.build(), {"source": source, "sink": sink})


def onion_star(t: int) -> GeneratedInstance:
    """
    t-洋葱星

    顶点 0 为中心，1..t 为 y 叶，t+1..2t 为 z 叶。
    第 i 片（弧 6(i-1)..6(i-1)+5）：x→y_i 两条，y_i→x，z_i→x 两条，x→z_i。
    """
    if t < 1:
        raise ContractViolation(f"t 必须为正整数，实际为 {t}")
    builder = DigraphBuilder()
    center = builder.add_vertex()
    y_leaves = builder.add_vertices(t)
    z_leaves = builder.add_vertices(t)
    for y, z in zip(y_leaves, z_leaves):
        builder.add_parallel(center, y, 2)
        builder.add_arc(y, center)
        builder.add_parallel(z, center, 2)
        builder.add_arc(center, z)
    marks = {"center": center, "y": list(y_leaves), "z": list(z_leaves), "t": t}
    return GeneratedInstance("onion-star", builder.build(), marks)


def counterexample(k: int) -> GeneratedInstance:
    """
    k×k 瓶颈网格：μ(x,y) ≥ k，μ(y,x) ≥ k，但不存在弧不交的 x→y、y→x 路径对

    每个格点 (i,j) 是一条瓶颈弧 u_ij→v_ij。蓝色连接 x→u_i1、v_ij→u_i,j+1、v_ik→y 横穿各行；
    红色连接 y→u_1j、v_ij→u_i+1,j、v_kj→x 纵穿各列。格内只能向右或向下走，
    任何左右穿越与任何上下穿越都共享某个格点的瓶颈弧。
    """
    if k < 1:
        raise ContractViolation(f"k 必须为正整数，实际为 {k}")
    builder = DigraphBuilder()
    x, y = builder.add_vertices(2)
    u: Dict[tuple, VertexId] = {}
    v: Dict[tuple, VertexId] = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            u[i, j] = builder.add_vertex()
            v[i, j] = builder.add_vertex()

    bottleneck = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            bottleneck[i, j] = builder.add_arc(u[i, j], v[i, j])

    for i in range(1, k + 1):
        builder.add_arc(x, u[i, 1])
        for j in range(1, k):
            builder.add_arc(v[i, j], u[i, j + 1])
        builder.add_arc(v[i, k], y)

    for j in range(1, k + 1):
        builder.add_arc(y, u[1, j])
        for i in range(1, k):
            builder.add_arc(v[i, j], u[i + 1, j])
        builder.add_arc(v[k, j], x)

    marks = {"x": x, "y": y, "k": k, "bottlenecks": [bottleneck[key] for key in sorted(bottleneck)]}
    return GeneratedInstance("counterexample", builder.build(), marks)


def _resolve_orders(spec: OrderSpec, count: int, size: int,
                    rng: Optional[np.random.Generator], name: str) -> List[List[int]]:
    """把顺序说明展开成 count 个 0..size-1 的排列"""
    if isinstance(spec, str):
        if spec == "ascending":
            return [list(range(size)) for _ in range(count)]
        if spec == "descending":
            return [list(range(size - 1, -1, -1)) for _ in range(count)]
        if spec == "random":
            rng = rng if rng is not None else np.random.default_rng(0)
            return [[int(value) for value in rng.permutation(size)] for _ in range(count)]
        raise ContractViolation(f"未知的顺序 {name}={spec!r}")

    items = list(spec)
    if items and all(isinstance(item, (int, np.integer)) for item in items):
        orders = [[int(value) for value in items] for _ in range(count)]
    else:
        orders = [[int(value) for value in item] for item in items]
        if len(orders) != count:
            raise ContractViolation(f"{name} 需要 {count} 个排列，实际为 {len(orders)}")
    for order in orders:
        if sorted(order) != list(range(size)):
            raise ContractViolation(f"{name} 中 {order} 不是 0..{size - 1} 的排列")
    return orders


def crossing_grid(p_count: int, q_count: int, p_order: OrderSpec = "ascending",
                  q_order: OrderSpec = "descending", seed: Optional[int] = None) -> GeneratedInstance:
    """
    交叉网格：根 x 出发的 P_i 与终止于 x 的 Q_j 恰好共享一条私有交叉弧 c_ij = u_ij→v_ij

    p_order 给出每条 P 依次遇到的 Q 下标，q_order 给出每条 Q 依次遇到的 P 下标；
    取值 "ascending"、"descending"、"random"、单个排列（所有路径共用）或每条路径一个排列。
    规模：1 + 2pq + p + q 个顶点，3pq + p + q 条弧。
    """
    if p_count < 1 or q_count < 1:
        raise ContractViolation(f"网格尺寸必须为正: {p_count}×{q_count}")
    rng = np.random.default_rng(seed) if seed is not None else None
    p_orders = _resolve_orders(p_order, p_count, q_count, rng, "p_order")
    q_orders = _resolve_orders(q_order, q_count, p_count, rng, "q_order")

    builder = DigraphBuilder()
    root = builder.add_vertex()
    u: Dict[tuple, VertexId] = {}
    v: Dict[tuple, VertexId] = {}
    for i in range(p_count):
        for j in range(q_count):
            u[i, j] = builder.add_vertex()
            v[i, j] = builder.add_vertex()
    p_ends = builder.add_vertices(p_count)
    q_starts = builder.add_vertices(q_count)

    crossing = {}
    for i in range(p_count):
        for j in range(q_count):
            crossing[i, j] = builder.add_arc(u[i, j], v[i, j])

    P: PathFamily = []
    for i, order in enumerate(p_orders):
        arcs = []
        previous = root
        for j in order:
            arcs.append(builder.add_arc(previous, u[i, j]))
            arcs.append(crossing[i, j])
            previous = v[i, j]
        arcs.append(builder.add_arc(previous, p_ends[i]))
        P.append(Path(tuple(arcs)))

    Q: PathFamily = []
    for j, order in enumerate(q_orders):
        arcs = []
        previous = q_starts[j]
        for i in order:
            arcs.append(builder.add_arc(previous, u[i, j]))
            arcs.append(crossing[i, j])
            previous = v[i, j]
        arcs.append(builder.add_arc(previous, root))
        Q.append(Path(tuple(arcs)))

    marks = {
        "root": root,
        "u": {f"{i},{j}": u[i, j] for i, j in sorted(u)},
        "v": {f"{i},{j}": v[i, j] for i, j in sorted(v)},
        "crossings": {f"{i},{j}": crossing[i, j] for i, j in sorted(crossing)},
    }
    return GeneratedInstance("crossing-grid", builder.build(), marks, P, Q)


def random_digraph(n: int, m: int, seed: int = 0) -> GeneratedInstance:
    """n 个顶点、m 条弧，端点独立均匀（无自环），同一 seed 结果确定"""
    if n < 0 or m < 0:
        raise ContractViolation(f"n、m 不能为负: n={n}, m={m}")
    if m > 0 and n < 2:
        raise ContractViolation("有弧时至少需要 2 个顶点")
    rng = np.random.default_rng(seed)
    builder = DigraphBuilder()
    builder.add_vertices(n)
    for _ in range(m):
        tail = int(rng.integers(n))
        head = int(rng.integers(n - 1))
        if head >= tail:
            head += 1
        builder.add_arc(tail, head)
    return GeneratedInstance("random", builder.build(), {"seed": seed})


def generate(kind: str, **params) -> GeneratedInstance:
    """
    按种类生成实例

    Args:
        kind: onion | onion-star | counterexample | crossing-grid | random
        **params: t / k / p, q, p_order, q_order, seed / n, m, seed

    Raises:
        ContractViolation: 未知种类或参数非法
    """
    logger.debug(f"生成实例: {kind} {params}")
    missing = [name for name in _REQUIRED_PARAMS.get(kind, ()) if params.get(name) is None]
    if missing:
        raise ContractViolation(f"生成 {kind} 缺少参数: {', '.join(missing)}")
    if kind == "onion":
        return onion()
    if kind == "onion-star":
        return onion_star(int(params["t"]))
    if kind == "counterexample":
        return counterexample(int(params["k"]))
    if kind == "crossing-grid":
        return crossing_grid(int(params["p"]), int(params["q"]),
                             params.get("p_order", "ascending"), params.get("q_order", "descending"),
                             params.get("seed"))
    if kind == "random":
        return random_digraph(int(params["n"]), int(params["m"]), int(params.get("seed", 0)))
    raise ContractViolation(f"未知的生成种类: {kind}（可选 {', '.join(GENERATOR_KINDS)}）")
