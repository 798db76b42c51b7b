"""
有向多重图与路径演算
提供带弧身份的多重有向图、路径、裁剪、拼接、反转、边界以及边列表读写
"""

from dataclasses import dataclass
from enum import Enum
from functools import singledispatch
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .utils import ArcNotFoundError, AnchorNotFoundError, ContractViolation, ParseError

VertexId = int
ArcId = int


class Direction(Enum):
    """边界方向"""
    OUT = "out"
    IN = "in"


class TrimMode(Enum):
    """路径裁剪方式"""
    BEFORE_OPEN = "before-open"      # P(→a)
    BEFORE_CLOSED = "before-closed"  # P(→a]
    AFTER_OPEN = "after-open"        # P(a→)
    AFTER_CLOSED = "after-closed"    # P[a→)
    BETWEEN = "between"              # P(a,b)


@dataclass(frozen=True)
class Path:
    """
    路径：互不相同的弧编号组成的有序序列

    首尾相接的约束依赖于所在的有向图，由 MultiDigraph.check_path 校验。
    空序列表示空路径（裁剪结果可能为空）。
    """
    arcs: Tuple[ArcId, ...] = ()

    def __post_init__(self):
        arcs = tuple(self.arcs)
        object.__setattr__(self, 'arcs', arcs)
        if len(set(arcs)) != len(arcs):
            raise ContractViolation(f"路径包含重复弧: {arcs}", "PATH_INVALID")

    @classmethod
    def of(cls, *arcs: ArcId) -> 'Path':
        return cls(tuple(arcs))

    @property
    def is_empty(self) -> bool:
        return not self.arcs

    @property
    def first(self) -> ArcId:
        if not self.arcs:
            raise ContractViolation("空路径没有首弧")
        return self.arcs[0]

    @property
    def last(self) -> ArcId:
        if not self.arcs:
            raise ContractViolation("空路径没有末弧")
        return self.arcs[-1]

    def index(self, arc: ArcId) -> int:
        try:
            return self.arcs.index(arc)
        except ValueError:
            raise AnchorNotFoundError(arc) from None

    def precedes(self, a: ArcId, b: ArcId) -> bool:
        """a <_P b"""
        return self.index(a) < self.index(b)

    def arc_set(self) -> FrozenSet[ArcId]:
        return frozenset(self.arcs)

    def __contains__(self, arc: object) -> bool:
        return arc in self.arcs

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self) -> Iterator[ArcId]:
        return iter(self.arcs)


EMPTY_PATH = Path()

PathFamily = List[Path]


class MultiDigraph:
    """
    有向多重图（允许平行弧，不允许自环）

    顶点与弧都按编号升序迭代，构造后视为不可变。
    """

    def __init__(self, vertices: Iterable[VertexId] = (),
                 arcs: Optional[Mapping[ArcId, Tuple[VertexId, VertexId]]] = None):
        self._vertices: Tuple[VertexId, ...] = tuple(sorted(set(vertices)))
        vertex_set = set(self._vertices)
        self._arcs: Dict[ArcId, Tuple[VertexId, VertexId]] = {}
        self._out: Dict[VertexId, List[ArcId]] = {v: [] for v in self._vertices}
        self._in: Dict[VertexId, List[ArcId]] = {v: [] for v in self._vertices}

        for arc in sorted((arcs or {}).keys()):
            tail, head = arcs[arc]
            if tail == head:
                raise ContractViolation(f"不允许自环: 弧 {arc} ({tail}→{head})", "LOOP_ARC")
            if tail not in vertex_set or head not in vertex_set:
                raise ContractViolation(f"弧 {arc} 的端点未注册: {tail}→{head}", "UNKNOWN_VERTEX")
            self._arcs[arc] = (tail, head)
            self._out[tail].append(arc)
            self._in[head].append(arc)

    # ---- 基本查询 ----

    @property
    def vertices(self) -> Tuple[VertexId, ...]:
        return self._vertices

    @property
    def arc_ids(self) -> Tuple[ArcId, ...]:
        return tuple(self._arcs.keys())

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_arcs(self) -> int:
        return len(self._arcs)

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._out

    def has_arc(self, arc: ArcId) -> bool:
        return arc in self._arcs

    def endpoints(self, arc: ArcId) -> Tuple[VertexId, VertexId]:
        try:
            return self._arcs[arc]
        except KeyError:
            raise ArcNotFoundError(arc) from None

    def tail(self, arc: ArcId) -> VertexId:
        return self.endpoints(arc)[0]

    def head(self, arc: ArcId) -> VertexId:
        return self.endpoints(arc)[1]

    def out_arcs(self, v: VertexId) -> Tuple[ArcId, ...]:
        return tuple(self._out.get(v, ()))

    def in_arcs(self, v: VertexId) -> Tuple[ArcId, ...]:
        return tuple(self._in.get(v, ()))

    def out_degree(self, v: VertexId) -> int:
        return len(self._out.get(v, ()))

    def in_degree(self, v: VertexId) -> int:
        return len(self._in.get(v, ()))

    def arc_items(self) -> Iterator[Tuple[ArcId, VertexId, VertexId]]:
        for arc, (tail, head) in self._arcs.items():
            yield arc, tail, head

    def next_vertex_id(self) -> VertexId:
        return (self._vertices[-1] + 1) if self._vertices else 0

    def next_arc_id(self) -> ArcId:
        return (max(self._arcs) + 1) if self._arcs else 0

    def with_additions(self, vertices: Iterable[VertexId] = (),
                       arcs: Optional[Mapping[ArcId, Tuple[VertexId, VertexId]]] = None) -> 'MultiDigraph':
        """返回添加了顶点和弧的新图（原图不变）"""
        merged = dict(self._arcs)
        for arc, ends in (arcs or {}).items():
            if arc in merged:
                raise ContractViolation(f"弧编号冲突: {arc}", "ARC_ID_CONFLICT")
            merged[arc] = ends
        return MultiDigraph(list(self._vertices) + list(vertices), merged)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiDigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._arcs == other._arcs

    def __hash__(self):
        return hash((self._vertices, tuple(self._arcs.items())))

    def __repr__(self) -> str:
        return f"MultiDigraph(n={self.num_vertices}, m={self.num_arcs})"

    # ---- 路径查询 ----

    def check_path(self, p: Path) -> None:
        """校验路径的弧都在图中且首尾相接"""
        previous_head = None
        for arc in p.arcs:
            tail, head = self.endpoints(arc)
            if previous_head is not None and tail != previous_head:
                raise ContractViolation(f"路径在弧 {arc} 处断开: {previous_head} ≠ {tail}", "PATH_INVALID")
            previous_head = head

    def is_valid_path(self, p: Path) -> bool:
        try:
            self.check_path(p)
            return True
        except ContractViolation:
            return False

    def source_of(self, p: Path) -> VertexId:
        return self.tail(p.first)

    def target_of(self, p: Path) -> VertexId:
        return self.head(p.last)

    def path_vertices(self, p: Path) -> List[VertexId]:
        """路径依次经过的 k+1 个顶点"""
        if p.is_empty:
            return []
        visited = [self.tail(p.first)]
        for arc in p.arcs:
            visited.append(self.head(arc))
        return visited


class DigraphBuilder:
    """单线程构图器：按顺序分配顶点与弧编号"""

    def __init__(self):
        self._vertex_count = 0
        self._arcs: Dict[ArcId, Tuple[VertexId, VertexId]] = {}

    def add_vertex(self) -> VertexId:
        vertex = self._vertex_count
        self._vertex_count += 1
        return vertex

    def add_vertices(self, count: int) -> List[VertexId]:
        return [self.add_vertex() for _ in range(count)]

    def add_arc(self, tail: VertexId, head: VertexId) -> ArcId:
        arc = len(self._arcs)
        self._arcs[arc] = (tail, head)
        return arc

    def add_parallel(self, tail: VertexId, head: VertexId, multiplicity: int) -> List[ArcId]:
        return [self.add_arc(tail, head) for _ in range(multiplicity)]

    def build(self) -> MultiDigraph:
        return MultiDigraph(range(self._vertex_count), self._arcs)


# ---- 路径演算 ----

def is_simple(p: Path, d: MultiDigraph) -> bool:
    """
    判断路径是否简单（k+1 个经过的顶点两两不同）

    Raises:
        ArcNotFoundError: 路径中有弧不在图中
    """
    d.check_path(p)
    visited = d.path_vertices(p)
    return len(set(visited)) == len(visited)


def trim(p: Path, anchor: ArcId, mode: TrimMode, until: Optional[ArcId] = None) -> Path:
    """
    按锚点裁剪路径，结果可能为空路径

    Args:
        p: 原路径
        anchor: 锚点弧
        mode: 裁剪方式
        until: BETWEEN 模式下的右端锚点（须在 anchor 之后）

    Raises:
        AnchorNotFoundError: 锚点不在路径上
    """
    i = p.index(anchor)
    if mode is TrimMode.BEFORE_OPEN:
        return Path(p.arcs[:i])
    if mode is TrimMode.BEFORE_CLOSED:
        return Path(p.arcs[:i + 1])
    if mode is TrimMode.AFTER_OPEN:
        return Path(p.arcs[i + 1:])
    if mode is TrimMode.AFTER_CLOSED:
        return Path(p.arcs[i:])
    if until is None:
        raise ContractViolation("BETWEEN 裁剪需要右端锚点")
    j = p.index(until)
    if j <= i:
        raise ContractViolation(f"BETWEEN 裁剪要求 {anchor} 在 {until} 之前")
    return Path(p.arcs[i + 1:j])


def concatenate(p: Path, q: Path, d: MultiDigraph) -> Path:
    """
    拼接两条路径，空路径是单位元

    Raises:
        ContractViolation: 端点不衔接或存在公共弧
    """
    if p.is_empty:
        return q
    if q.is_empty:
        return p
    if p.arc_set() & q.arc_set():
        raise ContractViolation("拼接的两条路径存在公共弧", "CONCAT_SHARED_ARC")
    if d.head(p.last) != d.tail(q.first):
        raise ContractViolation(
            f"拼接端点不衔接: {d.head(p.last)} ≠ {d.tail(q.first)}", "CONCAT_MISMATCH")
    return Path(p.arcs + q.arcs)


def concatenate_all(paths: Sequence[Path], d: MultiDigraph) -> Path:
    result = EMPTY_PATH
    for piece in paths:
        result = concatenate(result, piece, d)
    return result


@singledispatch
def reverse(item):
    """反转有向图或路径"""
    raise ContractViolation(f"无法反转类型 {type(item).__name__}")


@reverse.register
def _(d: MultiDigraph) -> MultiDigraph:
    return MultiDigraph(d.vertices, {arc: (head, tail) for arc, tail, head in d.arc_items()})


@reverse.register
def _(p: Path) -> Path:
    return Path(tuple(reversed(p.arcs)))


def boundary(d: MultiDigraph, X: Iterable[VertexId], direction: Direction) -> FrozenSet[ArcId]:
    """δ⁺(X) 或 δ⁻(X)"""
    inside = set(X)
    unknown = inside.difference(d.vertices)
    if unknown:
        raise ContractViolation(f"顶点不在图中: {sorted(unknown)}", "UNKNOWN_VERTEX")
    if direction is Direction.OUT:
        return frozenset(a for a, tail, head in d.arc_items() if tail in inside and head not in inside)
    return frozenset(a for a, tail, head in d.arc_items() if head in inside and tail not in inside)


# ---- 路径族工具 ----

def family_arcs(family: Iterable[Path]) -> FrozenSet[ArcId]:
    """A(𝒫)"""
    arcs = set()
    for p in family:
        arcs.update(p.arcs)
    return frozenset(arcs)


def crossing_members(family: Sequence[Path], q: Path) -> List[int]:
    """𝒫(Q)：与 q 有公共弧的路径下标"""
    q_arcs = q.arc_set()
    return [i for i, p in enumerate(family) if q_arcs.intersection(p.arcs)]


def are_arc_disjoint(paths: Iterable[Path]) -> bool:
    seen = set()
    for p in paths:
        for arc in p.arcs:
            if arc in seen:
                return False
            seen.add(arc)
    return True


# ---- 边列表格式 ----

def parse_edge_list(text: str) -> MultiDigraph:
    """
    解析边列表文本：首行 `n m`，随后 m 行 `tail head`，弧编号按行序 0..m-1

    Raises:
        ParseError: 格式错误，报告行号
    """
    lines = [(number, raw.split('#', 1)[0].strip()) for number, raw in enumerate(text.splitlines(), start=1)]
    lines = [(number, content) for number, content in lines if content]
    if not lines:
        raise ParseError("缺少 `n m` 头部", 1)

    header_line, header = lines[0]
    fields = header.split()
    if len(fields) != 2:
        raise ParseError(f"头部应为 `n m`，实际为 {header!r}", header_line)
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise ParseError(f"头部不是整数: {header!r}", header_line) from None
    if n < 0 or m < 0:
        raise ParseError("n 与 m 不能为负数", header_line)

    body = lines[1:]
    if len(body) != m:
        last_line = body[-1][0] if body else header_line
        raise ParseError(f"声明了 {m} 条弧，实际读取到 {len(body)} 条", last_line)

    arcs = {}
    for arc, (number, content) in enumerate(body):
        parts = content.split()
        if len(parts) != 2:
            raise ParseError(f"弧行应为 `tail head`，实际为 {content!r}", number)
        try:
            tail, head = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"端点不是整数: {content!r}", number) from None
        if not (0 <= tail < n and 0 <= head < n):
            raise ParseError(f"端点超出范围 0..{n - 1}: {content!r}", number)
        if tail == head:
            raise ParseError(f"不允许自环: {content!r}", number)
        arcs[arc] = (tail, head)
    return MultiDigraph(range(n), arcs)


def format_edge_list(d: MultiDigraph) -> str:
    """按弧编号升序写出边列表（要求顶点编号为 0..n-1）"""
    if d.vertices != tuple(range(d.num_vertices)):
        raise ContractViolation("边列表格式要求顶点编号连续且从 0 开始")
    lines = [f"{d.num_vertices} {d.num_arcs}"]
    lines.extend(f"{tail} {head}" for _, tail, head in d.arc_items())
    return "\n".join(lines) + "\n"


def parse_path_family(text: str, d: Optional[MultiDigraph] = None) -> PathFamily:
    """
    解析路径族文本：每行一条路径，空白分隔的弧编号

    Raises:
        ParseError: 非整数或路径在图中不成立
    """
    family = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].strip()
        if not content:
            continue
        try:
            path = Path(tuple(int(token) for token in content.split()))
        except ValueError:
            raise ParseError(f"弧编号不是整数: {content!r}", number) from None
        except ContractViolation as e:
            raise ParseError(e.message, number) from None
        if d is not None:
            try:
                d.check_path(path)
            except ContractViolation as e:
                raise ParseError(e.message, number) from None
        family.append(path)
    return family


def format_path_family(family: Iterable[Path]) -> str:
    return "".join(" ".join(str(arc) for arc in p.arcs) + "\n" for p in family)
