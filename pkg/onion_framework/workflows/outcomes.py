"""
流水线结果类型
Inconclusive 是值而不是异常：工作规模低于理论阈值时搜索失败的合法输出
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from ..core.digraph import PathFamily
from ..core.export import family_to_list
from .models import OnionStarModel


@dataclass
class Inconclusive:
    """搜索失败：stage 指出失败的阶段，reason 为简短原因"""
    stage: str
    reason: str
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"result": "inconclusive", "stage": self.stage, "reason": self.reason,
                "details": dict(self.details)}


class OutcomeTag(Enum):
    ONION_STAR = "onion-star"
    UNCROSSED = "uncrossed"
    INCONCLUSIVE = "inconclusive"


@dataclass
class DichotomyOutcome:
    """
    二分法结果

    onion-star 时 star 非空；uncrossed 时 families = (P', Q')，各 k 条且全部两两弧不交；
    inconclusive 时 inconclusive 给出失败阶段。
    """
    tag: OutcomeTag
    star: Optional[OnionStarModel] = None
    families: Optional[Tuple[PathFamily, PathFamily]] = None
    inconclusive: Optional[Inconclusive] = None

    @classmethod
    def from_star(cls, star: OnionStarModel) -> 'DichotomyOutcome':
        return cls(OutcomeTag.ONION_STAR, star=star)

    @classmethod
    def uncrossed(cls, P: PathFamily, Q: PathFamily) -> 'DichotomyOutcome':
        return cls(OutcomeTag.UNCROSSED, families=(list(P), list(Q)))

    @classmethod
    def from_inconclusive(cls, outcome: Inconclusive) -> 'DichotomyOutcome':
        return cls(OutcomeTag.INCONCLUSIVE, inconclusive=outcome)

    def to_dict(self) -> Dict[str, Any]:
        document: Dict[str, Any] = {"tag": self.tag.value}
        if self.star is not None:
            document["star"] = self.star.to_dict()
        if self.families is not None:
            document["P"] = family_to_list(self.families[0])
            document["Q"] = family_to_list(self.families[1])
        if self.inconclusive is not None:
            document.update(self.inconclusive.to_dict())
            document["tag"] = self.tag.value
        return document
