"""
二部图极值搜索与界函数
Thomason 二分（诱导 K_{n,n} 或反完全 n×n 对）、完全二部子图搜索，以及大整数界函数
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from .utils import ContractViolation, OnionLogger
from ..config.settings import get_config

logger = OnionLogger.get_logger("extremal")


class BipartiteGraph:
    """
    二部图，左侧每个顶点的邻接以整数位集存储

    rows[i] 的第 j 位为 1 表示左 i 与右 j 相邻。
    """

    def __init__(self, left_size: int, right_size: int, rows: Optional[Sequence[int]] = None):
        if left_size < 0 or right_size < 0:
            raise ContractViolation("二部图两侧大小不能为负")
        self.left_size = left_size
        self.right_size = right_size
        full = (1 << right_size) - 1
        rows = list(rows) if rows is not None else [0] * left_size
        if len(rows) != left_size:
            raise ContractViolation(f"邻接行数 {len(rows)} 与左侧大小 {left_size} 不符")
        if any(row & ~full for row in rows):
            raise ContractViolation("邻接位集超出右侧范围")
        self.rows: Tuple[int, ...] = tuple(int(row) for row in rows)
        self.full_mask = full

    @classmethod
    def from_edges(cls, left_size: int, right_size: int, edges: Iterable[Tuple[int, int]]) -> 'BipartiteGraph':
        rows = [0] * left_size
        for i, j in edges:
            if not (0 <= i < left_size and 0 <= j < right_size):
                raise ContractViolation(f"边 ({i}, {j}) 超出范围")
            rows[i] |= 1 << j
        return cls(left_size, right_size, rows)

    @classmethod
    def from_matrix(cls, matrix) -> 'BipartiteGraph':
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.ndim != 2:
            raise ContractViolation("邻接矩阵必须是二维的")
        left, right = matrix.shape
        weights = [1 << j for j in range(right)]
        rows = [sum(w for w, bit in zip(weights, row) if bit) for row in matrix.tolist()]
        return cls(left, right, rows)

    @classmethod
    def random(cls, left_size: int, right_size: int, density: float,
               rng: np.random.Generator) -> 'BipartiteGraph':
        return cls.from_matrix(rng.random((left_size, right_size)) < density)

    def to_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.left_size, self.right_size), dtype=bool)
        for i, row in enumerate(self.rows):
            for j in range(self.right_size):
                if row >> j & 1:
                    matrix[i, j] = True
        return matrix

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows) for j in range(self.right_size) if row >> j & 1]

    def edge_count(self) -> int:
        return sum(_popcount(row) for row in self.rows)

    def degree(self, i: int) -> int:
        return _popcount(self.rows[i])

    def is_complete(self) -> bool:
        return all(row == self.full_mask for row in self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (self.left_size, self.right_size, self.rows) == (other.left_size, other.right_size, other.rows)

    def __repr__(self) -> str:
        return f"BipartiteGraph({self.left_size}×{self.right_size}, edges={self.edge_count()})"


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _lowest_bits(mask: int, count: int) -> Tuple[int, ...]:
    picked = []
    j = 0
    while len(picked) < count and mask >> j:
        if mask >> j & 1:
            picked.append(j)
        j += 1
    return tuple(picked)


class ThomasonTag(Enum):
    BICLIQUE = "biclique"
    ANTICOMPLETE = "anticomplete"


@dataclass(frozen=True)
class ThomasonOutcome:
    """诱导 K_{n,n}（biclique）或反完全对（anticomplete）的见证"""
    tag: ThomasonTag
    A: Tuple[int, ...]
    B: Tuple[int, ...]


@dataclass(frozen=True)
class Biclique:
    """K_{k,k} 子图的两侧顶点"""
    left: Tuple
    right: Tuple


def verify_thomason(G: BipartiteGraph, outcome: ThomasonOutcome, n: int) -> bool:
    """O(n²) 复核见证"""
    if len(set(outcome.A)) != n or len(set(outcome.B)) != n:
        return False
    want = outcome.tag is ThomasonTag.BICLIQUE
    return all(G.has_edge(i, j) == want for i in outcome.A for j in outcome.B)


def thomason_search(G: BipartiteGraph, n: int) -> Optional[ThomasonOutcome]:
    """
    在二部图中搜索诱导 K_{n,n} 或反完全 n×n 对

    按度差（|deg - (right - deg)|）降序分支，公共邻居/公共非邻居计数剪枝。
    两类见证同时搜索，返回分支顺序下第一个找到的。

    Args:
        G: 二部图
        n: 目标大小

    Returns:
        ThomasonOutcome，不存在时返回 None

    Raises:
        ContractViolation: n ≤ 0
    """
    if n <= 0:
        raise ContractViolation(f"n 必须为正整数，实际为 {n}")
    if G.left_size < n or G.right_size < n:
        return None

    order = sorted(range(G.left_size),
                   key=lambda i: (-abs(2 * G.degree(i) - G.right_size), i))
    rows = [G.rows[i] for i in order]
    complements = [G.full_mask & ~row for row in rows]

    def search(start: int, chosen: List[int], common: int, common_non: int) -> Optional[ThomasonOutcome]:
        if len(chosen) == n:
            if common is not None and _popcount(common) >= n:
                return ThomasonOutcome(ThomasonTag.BICLIQUE, tuple(sorted(chosen)), _lowest_bits(common, n))
            return ThomasonOutcome(ThomasonTag.ANTICOMPLETE, tuple(sorted(chosen)), _lowest_bits(common_non, n))
        for position in range(start, len(order) - (n - len(chosen)) + 1):
            next_common = common & rows[position] if common is not None else None
            next_non = common_non & complements[position] if common_non is not None else None
            if next_common is not None and _popcount(next_common) < n:
                next_common = None
            if next_non is not None and _popcount(next_non) < n:
                next_non = None
            if next_common is None and next_non is None:
                continue
            found = search(position + 1, chosen + [order[position]], next_common, next_non)
            if found is not None:
                return found
        return None

    return search(0, [], G.full_mask, G.full_mask)


def _bitset_biclique(rows: Sequence[int], k: int,
                     full_mask: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """位集上的 K_{k,k} 精确搜索，左侧按度降序分支"""
    candidates = sorted((i for i, row in enumerate(rows) if _popcount(row) >= k),
                        key=lambda i: (-_popcount(rows[i]), i))

    def search(start: int, chosen: List[int], common: int):
        if len(chosen) == k:
            return tuple(sorted(chosen)), _lowest_bits(common, k)
        for position in range(start, len(candidates) - (k - len(chosen)) + 1):
            i = candidates[position]
            next_common = common & rows[i]
            if _popcount(next_common) < k:
                continue
            found = search(position + 1, chosen + [i], next_common)
            if found is not None:
                return found
        return None

    return search(0, [], full_mask)


def biclique_search(G: Union[BipartiteGraph, nx.Graph], k: int) -> Optional[Biclique]:
    """
    精确搜索（不必诱导的）K_{k,k} 子图

    Args:
        G: BipartiteGraph 或 networkx 一般图
        k: 目标大小

    Returns:
        Biclique；BipartiteGraph 时为左右下标，一般图时为节点；不存在返回 None
    """
    if k <= 0:
        raise ContractViolation(f"k 必须为正整数，实际为 {k}")

    if isinstance(G, BipartiteGraph):
        if G.left_size < k or G.right_size < k:
            return None
        found = _bitset_biclique(G.rows, k, G.full_mask)
        return Biclique(*found) if found else None

    if isinstance(G, nx.Graph):
        if G.is_directed():
            raise ContractViolation("biclique_search 需要无向图")
        nodes = sorted(G.nodes(), key=repr)
        index = {node: i for i, node in enumerate(nodes)}
        rows = [0] * len(nodes)
        for u, v in G.edges():
            if u == v:
                continue
            rows[index[u]] |= 1 << index[v]
            rows[index[v]] |= 1 << index[u]
        # 无自环时 v ∉ N(v)，公共邻居自然与所选一侧不相交
        found = _bitset_biclique(rows, k, (1 << len(nodes)) - 1) if len(nodes) >= 2 * k else None
        if not found:
            return None
        left, right = found
        return Biclique(tuple(nodes[i] for i in left), tuple(nodes[j] for j in right))

    raise ContractViolation(f"不支持的图类型: {type(G).__name__}")


# ---- 界函数 ----

class BigBound:
    """
    精确的非负大整数，或吸收性的 Overflow 标记
    """

    __slots__ = ("value", "cap")

    def __init__(self, value: Optional[int], cap: Optional[int] = None):
        if value is not None and value < 0:
            raise ContractViolation("BigBound 只表示非负整数")
        self.value = value
        self.cap = cap if cap is not None else get_config('extremal.digit_cap', 1_000_000)

    @classmethod
    def overflow(cls, cap: Optional[int] = None) -> 'BigBound':
        return cls(None, cap)

    @property
    def is_overflow(self) -> bool:
        return self.value is None

    def _combine(self, other: Union['BigBound', int], op: Callable[[int, int], int]) -> 'BigBound':
        other_value = other.value if isinstance(other, BigBound) else other
        if self.value is None or other_value is None:
            return BigBound.overflow(self.cap)
        return _capped(op(self.value, other_value), self.cap)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    __radd__ = __add__

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BigBound):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self) -> str:
        if self.value is None:
            return f"overflow(>{self.cap} digits)"
        return str(self.value)

    def __repr__(self) -> str:
        return f"BigBound({self})"


def _capped(value: int, cap: int) -> BigBound:
    if value > 0 and _digits_estimate(value) > cap:
        return BigBound.overflow(cap)
    return BigBound(value, cap)


def _digits_estimate(value: int) -> float:
    return math.log10(value) + 1 if value > 0 else 1


def _power(base: int, exponent: int, cap: int) -> BigBound:
    """先估计位数再求幂，避免物化超大整数"""
    if base in (0, 1) or exponent == 0:
        return BigBound(base ** exponent if exponent else 1, cap)
    # base ≥ 2 时位数至少为 exponent·log10(2) > exponent/4
    if exponent > 4 * cap:
        return BigBound.overflow(cap)
    if exponent * math.log10(base) > cap:
        return BigBound.overflow(cap)
    return _capped(base ** exponent, cap)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _bound_b(n: int, cap: int) -> BigBound:
    power = _power(2, n, cap)
    if power.is_overflow:
        return power
    return _capped(power.value * (n - 1) + 1, cap)


def _bound_c(k: int, cap: int) -> BigBound:
    return BigBound(k, cap)


def _bound_g(n: int, cap: int) -> BigBound:
    power = _power(16 * 2 * n, 2 * n, cap)
    if power.is_overflow:
        return power
    return _capped(max(8, _ceil_div(power.value, 2)), cap)


def _bound_f(n: int, cap: int) -> BigBound:
    g = _bound_g(n, cap)
    if g.is_overflow:
        return g
    power = _power(36 * g.value, g.value, cap)
    if power.is_overflow:
        return power
    return _capped(max(6 * n, 3 * _ceil_div(power.value, 4)), cap)


def _iterate(step: Callable[[int, int], BigBound], start: int, times: int, cap: int) -> BigBound:
    current = BigBound(start, cap)
    for _ in range(times):
        if current.is_overflow:
            return current
        current = step(current.value, cap)
    return current


def _bound_F(t: int, cap: int) -> BigBound:
    return _iterate(_bound_f, 1, 4 * t, cap)


def _bound_g_tk(t: int, k: int, cap: int) -> BigBound:
    F = _bound_F(t, cap)
    if F.is_overflow:
        return F
    N = max(k, F.value)
    return _bound_b(N, cap)


def _bound_f_thm(t: int, cap: int) -> BigBound:
    chain = _iterate(lambda k, c: _bound_g_tk(t, k, c), 2, 4 * t * t, cap)
    return chain * (2 * t)


_BOUNDS = {
    "b": (_bound_b, 1),
    "c": (_bound_c, 1),
    "g": (_bound_g, 1),
    "f": (_bound_f, 1),
    "F": (_bound_F, 1),
    "g_tk": (_bound_g_tk, 2),
    "f_thm": (_bound_f_thm, 1),
}

BOUND_NAMES = tuple(_BOUNDS)


def bounds(name: str, *args: int, digit_cap: Optional[int] = None) -> BigBound:
    """
    计算界函数

    b(n)=2^n(n-1)+1；c(k)=k；g(n)=max{8,⌈(16c(2n))^{2n}/2⌉}；
    f(n)=max{6n,3⌈(36c(g(n)))^{g(n)}/4⌉}；F(t)=f^{4t}(1)；
    g_tk(t,k)=b(max{k,F(t)})；f_thm(t)=2t·g_t^{4t²}(2)

    Args:
        name: 界函数名
        *args: 正整数参数
        digit_cap: 位数上限，None 使用配置 extremal.digit_cap

    Raises:
        ContractViolation: 未知名称、参数个数不符或参数非正
    """
    if name not in _BOUNDS:
        raise ContractViolation(f"未知界函数: {name}，可选 {', '.join(BOUND_NAMES)}")
    function, arity = _BOUNDS[name]
    if len(args) != arity:
        raise ContractViolation(f"界函数 {name} 需要 {arity} 个参数，实际 {len(args)} 个")
    if any(not isinstance(a, int) or a <= 0 for a in args):
        raise ContractViolation(f"界函数参数必须为正整数: {args}")
    cap = digit_cap if digit_cap is not None else get_config('extremal.digit_cap', 1_000_000)
    if cap <= 0:
        raise ContractViolation("digit_cap 必须为正")
    result = function(*args, cap)
    logger.debug(f"bounds({name}, {', '.join(map(str, args))}) = "
                 f"{'overflow' if result.is_overflow else f'{_digits_estimate(result.value):.0f} 位'}")
    return result
