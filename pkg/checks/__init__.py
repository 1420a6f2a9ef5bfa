"""
量子迹计算系统 - 性质检查模块
"""

from .property_checker import (
    CheckStatus,
    CheckSuite,
    CheckResult,
    SuiteReport,
    PropertyChecker
)

__all__ = [
    'CheckStatus',
    'CheckSuite',
    'CheckResult',
    'SuiteReport',
    'PropertyChecker'
]

__version__ = '1.0.0'
