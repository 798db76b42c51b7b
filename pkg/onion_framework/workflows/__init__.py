"""
Onion Framework 流水线模块
实例生成、洋葱收割、洋葱星/不交叉二分法与无割流水线
"""

from .exceptions import HarvestDefect, SelectionDefect, PipelineDefect
from .outcomes import Inconclusive, OutcomeTag, DichotomyOutcome
from .models import OnionModel, OnionStarModel, HarvestResult
from .generators import (
    GENERATOR_KINDS,
    GeneratedInstance,
    generate,
    onion,
    onion_star,
    counterexample,
    crossing_grid,
    random_digraph,
)
from .pipeline_base import PipelineBase
from .harvest import (
    HarvestBatch,
    harvest_single,
    harvest_many,
    harvest_onion_star,
    check_harvest,
    pivot_arc,
    select_leaves,
)
from .duality import (
    LinkedSetInstance,
    NoCutPipeline,
    onion_or_uncross,
    no_cut_to_onion_star,
    embed_degree_bounded,
)

__all__ = [
    'HarvestDefect',
    'SelectionDefect',
    'PipelineDefect',
    'Inconclusive',
    'OutcomeTag',
    'DichotomyOutcome',
    'OnionModel',
    'OnionStarModel',
    'HarvestResult',
    'GENERATOR_KINDS',
    'GeneratedInstance',
    'generate',
    'onion',
    'onion_star',
    'counterexample',
    'crossing_grid',
    'random_digraph',
    'PipelineBase',
    'HarvestBatch',
    'harvest_single',
    'harvest_many',
    'harvest_onion_star',
    'check_harvest',
    'pivot_arc',
    'select_leaves',
    'LinkedSetInstance',
    'NoCutPipeline',
    'onion_or_uncross',
    'no_cut_to_onion_star',
    'embed_degree_bounded',
]
