"""
Onion Framework Core Module
有向多重图、Menger 流、交叉分析、极值组合与暴力验证等核心功能模块
"""

from .utils import *
from .digraph import *
from .flow import *
from .crossing import *
from .extremal import *
from .oracle import *
from .export import *

__version__ = "1.0.0"
__author__ = "Onion Framework Team"
