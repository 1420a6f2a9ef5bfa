#!/usr/bin/env python3
"""
量子迹计算系统 - 异常定义
所有异常都派生自 ValueError，命令行据此区分输入错误与计算不一致
"""

from typing import Optional


class TraceInputError(ValueError):
    """输入错误：文件格式、约束违反、前置条件不满足"""

    def __init__(self, message: str, line_no: Optional[int] = None, source: Optional[str] = None):
        self.line_no = line_no
        self.source = source
        prefix = ""
        if source and line_no is not None:
            prefix = f"{source}:{line_no}: "
        elif line_no is not None:
            prefix = f"line {line_no}: "
        super().__init__(f"{prefix}{message}")
        self.message = message


class MoveMismatchError(TraceInputError):
    """局部图样与移动的左端（或右端）不符"""


class ComputationLimitError(TraceInputError):
    """超过交叉数或三角形边点数上限"""


class AlgebraError(ValueError):
    """代数层错误：不在边子代数中、不平衡、非精确除法、零元素"""
