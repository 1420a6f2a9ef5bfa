#!/usr/bin/env python3
"""
量子迹计算系统 - ω 系数环
整系数 Laurent 多项式 ℤ[ω, ω⁻¹] 的精确运算，是所有代数结构的系数环

约定: q = ω⁴, A = ω⁻², α = −ω⁻⁵, β = ω⁻¹
"""

import re
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from errors import AlgebraError, TraceInputError

_FIRST_TERM = re.compile(r'\s*([+-]?)\s*(\d+)\s*\*\s*w\s*\^\s*(-?\d+)')
_NEXT_TERM = re.compile(r'\s*([+-])\s*(\d+)\s*\*\s*w\s*\^\s*(-?\d+)')

Scalar = Union['OmegaPoly', int]


class OmegaPoly:
    """
    ω 的整系数 Laurent 多项式，不可变

    内部以 {指数: 非零系数} 存储，因此两个值相等当且仅当其项映射相等。

    >>> (OmegaPoly.monomial(1) + 1).render()
    '1*w^0 + 1*w^1'
    """

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[int, int]] = None):
        cleaned: Dict[int, int] = {}
        if terms:
            for exp, coeff in terms.items():
                coeff = int(coeff)
                if coeff != 0:
                    cleaned[int(exp)] = coeff
        self._terms = cleaned

    # ---- 构造 ----

    @classmethod
    def zero(cls) -> 'OmegaPoly':
        return cls()

    @classmethod
    def one(cls) -> 'OmegaPoly':
        return cls({0: 1})

    @classmethod
    def constant(cls, value: int) -> 'OmegaPoly':
        return cls({0: value})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> 'OmegaPoly':
        """coeff·ω^exp"""
        return cls({exp: coeff})

    @classmethod
    def coerce(cls, value: Scalar) -> 'OmegaPoly':
        if isinstance(value, OmegaPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"无法转换为OmegaPoly: {value!r}")

    # ---- 访问 ----

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, int]]:
        """按指数升序迭代 (指数, 系数)"""
        return iter(sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """是否为 ±ω^k 形式的可逆元"""
        if len(self._terms) != 1:
            return False
        (coeff,) = self._terms.values()
        return coeff in (1, -1)

    def min_exponent(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_exponent(self) -> int:
        return max(self._terms) if self._terms else 0

    # ---- 环运算 ----

    def __add__(self, other: Scalar) -> 'OmegaPoly':
        other = OmegaPoly.coerce(other)
        result = dict(self._terms)
        for exp, coeff in other._terms.items():
            result[exp] = result.get(exp, 0) + coeff
        return OmegaPoly(result)

    __radd__ = __add__

    def __neg__(self) -> 'OmegaPoly':
        return OmegaPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> 'OmegaPoly':
        return self + (-OmegaPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> 'OmegaPoly':
        return OmegaPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> 'OmegaPoly':
        other = OmegaPoly.coerce(other)
        if not self._terms or not other._terms:
            return OmegaPoly()
        result: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return OmegaPoly(result)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> 'OmegaPoly':
        if power < 0:
            if not self.is_unit():
                raise AlgebraError(f"非单位元不能取负幂: {self.render()}")
            ((exp, coeff),) = self._terms.items()
            return OmegaPoly.monomial(exp * power, coeff ** (-power))
        result = OmegaPoly.one()
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def shift(self, k: int) -> 'OmegaPoly':
        """乘以 ω^k"""
        return OmegaPoly({e + k: c for e, c in self._terms.items()})

    def exact_divide(self, divisor: 'OmegaPoly') -> 'OmegaPoly':
        """除以形如 ±ω^k 的单位元"""
        if not divisor.is_unit():
            raise AlgebraError(f"inexact division: 除数 {divisor.render()} 不是 ±ω^k")
        ((exp, coeff),) = divisor._terms.items()
        return OmegaPoly({e - exp: c * coeff for e, c in self._terms.items()})

    # ---- 求值 ----

    def specialize_unity(self) -> int:
        """在 ω = 1 处求值：系数之和"""
        return sum(self._terms.values())

    def eval_complex(self, w: complex) -> complex:
        """在非零复数 w 处数值求值"""
        if w == 0:
            raise AlgebraError("zero input value: ω 不能取 0")
        w = complex(w)
        return sum((coeff * w ** exp for exp, coeff in self._terms.items()), 0j)

    # ---- 比较与显示 ----

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = OmegaPoly.constant(other)
        if not isinstance(other, OmegaPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def render(self) -> str:
        """按指数升序输出 `c*w^k`，以 ` + ` / ` - ` 连接"""
        if not self._terms:
            return "0"
        parts = []
        for index, (exp, coeff) in enumerate(self.items()):
            if index == 0:
                parts.append(f"{coeff}*w^{exp}")
            else:
                sign = '+' if coeff > 0 else '-'
                parts.append(f" {sign} {abs(coeff)}*w^{exp}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"OmegaPoly('{self.render()}')"


def add(p: OmegaPoly, q: OmegaPoly) -> OmegaPoly:
    return p + q


def mul(p: OmegaPoly, q: OmegaPoly) -> OmegaPoly:
    return p * q


def specialize_unity(p: OmegaPoly) -> int:
    return p.specialize_unity()


def eval_complex(p: OmegaPoly, w: complex) -> complex:
    return p.eval_complex(w)


def parse_omega_poly(text: str) -> OmegaPoly:
    """解析 render() 的输出，逐位还原"""
    stripped = text.strip()
    if stripped == "0":
        return OmegaPoly.zero()
    match = _FIRST_TERM.match(stripped)
    if not match:
        raise TraceInputError(f"无法解析ω多项式: {text!r}")
    terms: Dict[int, int] = {}

    def _accumulate(sign: str, coeff: str, exp: str):
        value = int(coeff) * (-1 if sign == '-' else 1)
        terms[int(exp)] = terms.get(int(exp), 0) + value

    _accumulate(*match.groups())
    pos = match.end()
    while pos < len(stripped):
        match = _NEXT_TERM.match(stripped, pos)
        if not match:
            raise TraceInputError(f"无法解析ω多项式: {text!r}（位置 {pos}）")
        _accumulate(*match.groups())
        pos = match.end()
    return OmegaPoly(terms)


# 常用常数
ZERO = OmegaPoly.zero()
ONE = OmegaPoly.one()
OMEGA = OmegaPoly.monomial(1)
A = OmegaPoly.monomial(-2)
A_INV = OmegaPoly.monomial(2)
Q = OmegaPoly.monomial(4)
ALPHA = OmegaPoly.monomial(-5, -1)
BETA = OmegaPoly.monomial(-1)
LOOP_VALUE = -(A ** 2) - A_INV ** 2      # 小圆圈: −A² − A⁻²
POSITIVE_KINK = -(A_INV ** 3)            # 正扭结: −A⁻³
NEGATIVE_KINK = -(A ** 3)                # 负扭结: −A³
