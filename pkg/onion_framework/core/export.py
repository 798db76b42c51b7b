"""
结果导出
JSON 友好的字典编码与基于 graphviz 的 DOT 导出
"""

from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

import graphviz

from .digraph import ArcId, MultiDigraph, Path
from .flow import CutResult
from .extremal import BigBound
from .oracle import ImmersionModel
from .utils import dump_json, write_text
from ..config.settings import get_config

SCHEMA_VERSION = 1


def envelope(kind: str, payload: Mapping[str, Any]) -> Dict[str, Any]:
    """带版本号的顶层 JSON 对象"""
    document = {"schema": SCHEMA_VERSION, "kind": kind}
    document.update(payload)
    return document


def render_json(document: Mapping[str, Any]) -> str:
    """按配置缩进、键排序输出，相同输入得到逐字节相同的文本"""
    return dump_json(dict(document), indent=get_config('export.json_indent', 2))


def path_to_list(p: Path) -> List[ArcId]:
    return list(p.arcs)


def family_to_list(family: Iterable[Path]) -> List[List[ArcId]]:
    return [path_to_list(p) for p in family]


def digraph_to_dict(d: MultiDigraph) -> Dict[str, Any]:
    return {
        "vertices": list(d.vertices),
        "arcs": [[arc, tail, head] for arc, tail, head in d.arc_items()],
    }


def cut_to_dict(cut: CutResult) -> Dict[str, Any]:
    return {"A": sorted(cut.A), "B": sorted(cut.B), "size": cut.size}


def bound_to_dict(name: str, args: Sequence[int], value: BigBound) -> Dict[str, Any]:
    """大整数以十进制字符串输出，溢出时给出位数上限"""
    if value.is_overflow:
        return {"name": name, "args": list(args), "overflow": True, "digit_cap": value.cap}
    return {"name": name, "args": list(args), "overflow": False, "value": str(value.value)}


def immersion_to_dict(model: ImmersionModel) -> Dict[str, Any]:
    return {
        "vertex_map": {str(k): v for k, v in sorted(model.vertex_map.items())},
        "arc_map": {str(k): path_to_list(p) for k, p in sorted(model.arc_map.items())},
    }


# ---- DOT ----

def _palette() -> List[str]:
    colors = get_config('export.palette') or ["red"]
    return list(colors)


def _build_dot(d: MultiDigraph, highlights: Optional[Mapping[str, Iterable[Path]]],
               marked: Iterable[int], name: str) -> graphviz.Digraph:
    dot = graphviz.Digraph(name, graph_attr={"rankdir": get_config('export.dot_rankdir', 'LR')})
    marked = set(marked)
    for v in d.vertices:
        if v in marked:
            dot.node(str(v), shape="doublecircle")
        else:
            dot.node(str(v))

    arc_style: Dict[ArcId, Dict[str, str]] = {}
    palette = _palette()
    for index, (group, paths) in enumerate((highlights or {}).items()):
        color = palette[index % len(palette)]
        for p in paths:
            for arc in p.arcs:
                arc_style[arc] = {"color": color, "penwidth": "2", "tooltip": group}

    for arc, tail, head in d.arc_items():
        dot.edge(str(tail), str(head), label=str(arc), **arc_style.get(arc, {}))
    return dot


def digraph_to_dot(d: MultiDigraph, highlights: Optional[Mapping[str, Iterable[Path]]] = None,
                   name: str = "digraph") -> str:
    """
    导出 DOT 文本，平行弧以弧编号作标签

    Args:
        d: 有向图
        highlights: 分组名 → 路径族，每组一种颜色（按调色板循环）
        name: 图名

    Returns:
        DOT 源码
    """
    return _build_dot(d, highlights, (), name).source


def model_to_dot(model: ImmersionModel, name: str = "immersion") -> str:
    """宿主图 DOT，模型路径按 pattern 弧着色，像顶点画双圈"""
    highlights = {f"arc {arc}": [p] for arc, p in sorted(model.arc_map.items())}
    return _build_dot(model.host, highlights, model.vertex_map.values(), name).source


def write_dot(source: str, filepath: str) -> None:
    write_text(source, filepath)
