"""
量子迹计算系统 - 文件格式模块
曲面、链环、状态、曲线与剪切坐标文件的解析与输出
"""

from .file_protocol import (
    load_text,
    parse_surface,
    render_surface,
    parse_tangle_word,
    parse_signs,
    render_signs,
    parse_link,
    render_link,
    parse_state,
    render_state,
    describe_state,
    parse_curve,
    parse_shears,
    parse_complex,
    parse_omega_poly,
    parse_element,
    parse_commutative_laurent,
    TraceFileValidator
)

__all__ = [
    'load_text',
    'parse_surface',
    'render_surface',
    'parse_tangle_word',
    'parse_signs',
    'render_signs',
    'parse_link',
    'render_link',
    'parse_state',
    'render_state',
    'describe_state',
    'parse_curve',
    'parse_shears',
    'parse_complex',
    'parse_omega_poly',
    'parse_element',
    'parse_commutative_laurent',
    'TraceFileValidator'
]

__version__ = '1.0.0'
