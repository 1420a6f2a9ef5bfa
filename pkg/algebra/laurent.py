#!/usr/bin/env python3
"""
量子迹计算系统 - 交换 Laurent 多项式
ω = 1 时的经典极限，变量为 Z_i = X_i^{1/2}
"""

import re
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from errors import TraceInputError

Exponents = Tuple[int, ...]

_TERM = re.compile(r'\s*([+-]?)\s*(\d+)\s*\*\s*\[([^\]]*)\]')
_FACTOR = re.compile(r'Z(\d+)\^(-?\d+)')


class CommutativeLaurent:
    """n 个交换变量的整系数 Laurent 多项式"""

    __slots__ = ('n', '_terms')

    def __init__(self, n: int, terms: Optional[Mapping[Exponents, int]] = None):
        self.n = n
        cleaned: Dict[Exponents, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(k) for k in exps)
            if len(exps) != n:
                raise ValueError(f"指数向量长度 {len(exps)} 与变量数 {n} 不符")
            if coeff:
                cleaned[exps] = cleaned.get(exps, 0) + int(coeff)
        self._terms = {e: c for e, c in cleaned.items() if c}

    @classmethod
    def one(cls, n: int) -> 'CommutativeLaurent':
        return cls(n, {(0,) * n: 1})

    @classmethod
    def monomial(cls, n: int, exps: Sequence[int], coeff: int = 1) -> 'CommutativeLaurent':
        return cls(n, {tuple(exps): coeff})

    @property
    def terms(self) -> Dict[Exponents, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: 'CommutativeLaurent') -> 'CommutativeLaurent':
        self._check(other)
        result = dict(self._terms)
        for exps, coeff in other._terms.items():
            result[exps] = result.get(exps, 0) + coeff
        return CommutativeLaurent(self.n, result)

    def __neg__(self) -> 'CommutativeLaurent':
        return CommutativeLaurent(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: 'CommutativeLaurent') -> 'CommutativeLaurent':
        return self + (-other)

    def __mul__(self, other) -> 'CommutativeLaurent':
        if isinstance(other, int):
            return CommutativeLaurent(self.n, {e: c * other for e, c in self._terms.items()})
        self._check(other)
        result: Dict[Exponents, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                result[exps] = result.get(exps, 0) + c1 * c2
        return CommutativeLaurent(self.n, result)

    __rmul__ = __mul__

    def _check(self, other: 'CommutativeLaurent'):
        if not isinstance(other, CommutativeLaurent) or other.n != self.n:
            raise ValueError("交换Laurent多项式的变量数不一致")

    def evaluate(self, values: Sequence[float]) -> float:
        """在 Z_i = values[i] 处求值"""
        if not self._terms:
            return 0.0
        z = np.asarray(values, dtype=float)
        exps = np.array(list(self._terms.keys()), dtype=float).reshape(len(self._terms), self.n)
        coeffs = np.array(list(self._terms.values()), dtype=float)
        return float(np.sum(coeffs * np.prod(np.power(z, exps), axis=1)))

    def specialize_unity(self) -> int:
        return sum(self._terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommutativeLaurent):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def render(self) -> str:
        """按指数向量字典序输出 `c*[Z1^a Z2^b]`"""
        if not self._terms:
            return "0"
        parts = []
        for index, exps in enumerate(sorted(self._terms)):
            coeff = self._terms[exps]
            mono = " ".join(f"Z{i + 1}^{k}" for i, k in enumerate(exps) if k) or "1"
            if index == 0:
                parts.append(f"{coeff}*[{mono}]")
            else:
                parts.append(f" {'+' if coeff > 0 else '-'} {abs(coeff)}*[{mono}]")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"CommutativeLaurent({self.render()})"


def parse_commutative_laurent(text: str, n: int) -> CommutativeLaurent:
    """解析 render() 的输出"""
    stripped = text.strip()
    if stripped == "0":
        return CommutativeLaurent(n)
    terms: Dict[Exponents, int] = {}
    pos = 0
    while pos < len(stripped):
        match = _TERM.match(stripped, pos)
        if not match or (pos > 0 and not match.group(1)):
            raise TraceInputError(f"无法解析交换多项式: {text!r}")
        sign, coeff, mono = match.groups()
        exps = [0] * n
        if mono.strip() != "1":
            for index, power in _FACTOR.findall(mono):
                exps[int(index) - 1] += int(power)
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + int(coeff) * (-1 if sign == '-' else 1)
        pos = match.end()
    return CommutativeLaurent(n, terms)
