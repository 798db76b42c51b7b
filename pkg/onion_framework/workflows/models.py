"""
洋葱与洋葱星浸入模型
"""

from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Tuple

from ..core.crossing import WellCrossingPair
from ..core.digraph import ArcId, MultiDigraph, Path, VertexId, family_arcs, reverse
from ..core.export import family_to_list, path_to_list
from ..core.oracle import ImmersionModel
from .generators import onion, onion_star


@dataclass(frozen=True)
class OnionModel:
    """
    洋葱的浸入模型：两条 source→sink 路径与一条 sink→source 路径，三者两两弧不交

    路径不要求简单。
    """
    source: VertexId
    sink: VertexId
    out_paths: Tuple[Path, Path]
    back_path: Path

    def paths(self) -> List[Path]:
        return [self.out_paths[0], self.out_paths[1], self.back_path]

    def arc_set(self) -> FrozenSet[ArcId]:
        return family_arcs(self.paths())

    def reversed(self) -> 'OnionModel':
        """反转图中的洋葱在原图中的对应：源汇互换，各路径反转"""
        return OnionModel(
            source=self.sink,
            sink=self.source,
            out_paths=(reverse(self.out_paths[0]), reverse(self.out_paths[1])),
            back_path=reverse(self.back_path),
        )

    def to_immersion_model(self, host: MultiDigraph) -> ImmersionModel:
        pattern = onion().digraph
        return ImmersionModel(
            pattern=pattern,
            host=host,
            vertex_map={0: self.source, 1: self.sink},
            arc_map={0: self.out_paths[0], 1: self.out_paths[1], 2: self.back_path},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source,
            "sink": self.sink,
            "out_paths": family_to_list(self.out_paths),
            "back_path": path_to_list(self.back_path),
        }


@dataclass
class OnionStarModel:
    """
    t-洋葱星的浸入模型

    arc_paths 以 generate("onion-star", t) 的弧编号为键：
    第 i 片的 6 条弧依次为 x→y_i 两条、y_i→x、z_i→x 两条、x→z_i。
    """
    center: VertexId
    y_leaves: List[VertexId]
    z_leaves: List[VertexId]
    arc_paths: Dict[ArcId, Path]

    @property
    def t(self) -> int:
        return len(self.y_leaves)

    @classmethod
    def assemble(cls, center: VertexId, out_onions: List[OnionModel],
                 in_onions: List[OnionModel]) -> 'OnionStarModel':
        """由 t 个以 center 为源的洋葱和 t 个以 center 为汇的洋葱拼成洋葱星"""
        arc_paths: Dict[ArcId, Path] = {}
        for i, (out_onion, in_onion) in enumerate(zip(out_onions, in_onions)):
            base = 6 * i
            arc_paths[base] = out_onion.out_paths[0]
            arc_paths[base + 1] = out_onion.out_paths[1]
            arc_paths[base + 2] = out_onion.back_path
            arc_paths[base + 3] = in_onion.out_paths[0]
            arc_paths[base + 4] = in_onion.out_paths[1]
            arc_paths[base + 5] = in_onion.back_path
        return cls(
            center=center,
            y_leaves=[o.sink for o in out_onions],
            z_leaves=[o.source for o in in_onions],
            arc_paths=arc_paths,
        )

    def vertex_map(self) -> Dict[VertexId, VertexId]:
        mapping = {0: self.center}
        for i, y in enumerate(self.y_leaves, start=1):
            mapping[i] = y
        for i, z in enumerate(self.z_leaves, start=1):
            mapping[self.t + i] = z
        return mapping

    def to_immersion_model(self, host: MultiDigraph) -> ImmersionModel:
        return ImmersionModel(
            pattern=onion_star(self.t).digraph,
            host=host,
            vertex_map=self.vertex_map(),
            arc_map=dict(self.arc_paths),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "center": self.center,
            "y_leaves": list(self.y_leaves),
            "z_leaves": list(self.z_leaves),
            "arc_paths": {str(arc): path_to_list(p) for arc, p in sorted(self.arc_paths.items())},
        }


@dataclass
class HarvestResult:
    """单次收割：洋葱模型 + 剩余良交叉对"""
    onion: OnionModel
    residual: WellCrossingPair
    case: str
    q_index: int
    pivot: ArcId

    def to_dict(self) -> Dict[str, Any]:
        return {
            "onion": self.onion.to_dict(),
            "residual": {
                "P": family_to_list(self.residual.P),
                "Q": family_to_list(self.residual.Q),
                "root": self.residual.root,
            },
            "case": self.case,
            "q_index": self.q_index,
            "pivot": self.pivot,
        }
