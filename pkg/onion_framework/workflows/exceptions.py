"""
流水线专用异常类
"""

from ..core.utils import AlgorithmDefect


class HarvestDefect(AlgorithmDefect):
    """收割结果未通过校验"""

    def __init__(self, message: str):
        super().__init__(message, "HARVEST_DEFECT")


class SelectionDefect(AlgorithmDefect):
    """洋葱星叶子选择失败"""

    def __init__(self, message: str):
        super().__init__(message, "SELECTION_DEFECT")


class PipelineDefect(AlgorithmDefect):
    """二分法或无割流水线输出未通过校验"""

    def __init__(self, message: str):
        super().__init__(message, "PIPELINE_DEFECT")
