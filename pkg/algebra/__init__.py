"""
量子迹计算系统 - 代数模块
提供 ω 系数环、量子环面（含 Weyl 量子序）与交换 Laurent 多项式
"""

from .omega_ring import (
    OmegaPoly,
    add,
    mul,
    specialize_unity,
    eval_complex,
    parse_omega_poly,
    ZERO,
    ONE,
    OMEGA,
    A,
    A_INV,
    Q,
    ALPHA,
    BETA,
    LOOP_VALUE,
    POSITIVE_KINK,
    NEGATIVE_KINK
)

from .laurent import (
    CommutativeLaurent,
    parse_commutative_laurent
)

from .quantum_torus import (
    CommutationMatrix,
    QTMonomial,
    QTElement,
    multiply,
    monomial_product,
    weyl_order,
    weyl_monomial,
    specialize_commutative,
    leading_term,
    degree_lex_key,
    render_element,
    parse_element
)

__all__ = [
    # ω 系数环
    'OmegaPoly',
    'add',
    'mul',
    'specialize_unity',
    'eval_complex',
    'parse_omega_poly',
    'ZERO',
    'ONE',
    'OMEGA',
    'A',
    'A_INV',
    'Q',
    'ALPHA',
    'BETA',
    'LOOP_VALUE',
    'POSITIVE_KINK',
    'NEGATIVE_KINK',

    # 交换多项式
    'CommutativeLaurent',
    'parse_commutative_laurent',

    # 量子环面
    'CommutationMatrix',
    'QTMonomial',
    'QTElement',
    'multiply',
    'monomial_product',
    'weyl_order',
    'weyl_monomial',
    'specialize_commutative',
    'leading_term',
    'degree_lex_key',
    'render_element',
    'parse_element'
]

__version__ = '1.0.0'
