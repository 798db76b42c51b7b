"""
Onion Framework Configuration Module
配置管理模块
"""

from .settings import *

__version__ = "1.0.0"
