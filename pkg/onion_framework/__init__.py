"""
Onion Framework
有向图浸入工具包：Menger 流、良交叉对中的洋葱收割、洋葱星对偶流水线与暴力验证
"""

__version__ = "1.0.0"
