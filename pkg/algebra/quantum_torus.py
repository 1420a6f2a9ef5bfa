#!/usr/bin/env python3
"""
量子迹计算系统 - 量子环面
系数在 ℤ[ω^±1] 上的斜 Laurent 代数，关系 Y_iY_j = ω^{2a_ij} Y_jY_i，
支持 Weyl 量子序；同时用于三角形张量代数与边代数 Z^ω_λ
"""

import re
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from algebra.laurent import CommutativeLaurent
from algebra.omega_ring import ONE, OmegaPoly, Scalar, parse_omega_poly
from errors import AlgebraError, TraceInputError

Exponents = Tuple[int, ...]

_WEYL_TERM = re.compile(r'\s*\(([^()]*)\)\s*\*\s*\[([^\]]*)\]\s*')
_GENERATOR = re.compile(r'Z(\d+)\^(-?\d+)')


class CommutationMatrix:
    """反对称整数矩阵 a，刻画 Y_iY_j = ω^{2a_ij} Y_jY_i"""

    __slots__ = ('_matrix', '_lower', '_upper')

    def __init__(self, matrix):
        arr = np.array(matrix, dtype=np.int64)
        if arr.size == 0:
            arr = np.zeros((0, 0), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"交换矩阵必须为方阵: shape={arr.shape}")
        if not np.array_equal(arr, -arr.T):
            raise ValueError("交换矩阵必须反对称")
        self._matrix = arr
        self._lower = np.tril(arr, -1)
        self._upper = np.triu(arr, 1)

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix.copy()

    def entry(self, i: int, j: int) -> int:
        return int(self._matrix[i, j])

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        """B(x, y) = Σ_{i,j} x_i y_j a_ij"""
        return int(np.asarray(x, dtype=np.int64) @ self._matrix @ np.asarray(y, dtype=np.int64))

    def reorder_exponent(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Σ_{i>j} x_i y_j a_ij：把 Z^x·Z^y 化为正规序时 ω² 的幂"""
        return int(np.asarray(x, dtype=np.int64) @ self._lower @ np.asarray(y, dtype=np.int64))

    def weyl_exponent(self, k: Sequence[int]) -> int:
        """Σ_{i<j} k_i k_j a_ij"""
        vec = np.asarray(k, dtype=np.int64)
        return int(vec @ self._upper @ vec)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CommutationMatrix):
            return NotImplemented
        return self._matrix.shape == other._matrix.shape and np.array_equal(self._matrix, other._matrix)

    def __hash__(self) -> int:
        return hash((self._matrix.shape, self._matrix.tobytes()))

    def __repr__(self) -> str:
        return f"CommutationMatrix(n={self.n})"


@dataclass(frozen=True)
class QTMonomial:
    """正规序单项式 coeff · Z_1^{k_1} … Z_n^{k_n}"""
    coeff: OmegaPoly
    exps: Exponents

    def is_zero(self) -> bool:
        return self.coeff.is_zero()


class QTElement:
    """
    量子环面中的元素：指数向量 → 正规序系数

    所有公开输出（render、weyl_terms）都用 Weyl 基 [Z^k] 的系数表示。
    """

    __slots__ = ('comm', '_terms')

    def __init__(self, comm: CommutationMatrix, terms: Optional[Mapping[Exponents, OmegaPoly]] = None):
        self.comm = comm
        cleaned: Dict[Exponents, OmegaPoly] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(k) for k in exps)
            if len(exps) != comm.n:
                raise AlgebraError(f"指数向量长度 {len(exps)} 与生成元数 {comm.n} 不符")
            coeff = OmegaPoly.coerce(coeff)
            if exps in cleaned:
                coeff = cleaned[exps] + coeff
            cleaned[exps] = coeff
        self._terms = {e: c for e, c in cleaned.items() if not c.is_zero()}

    # ---- 构造 ----

    @classmethod
    def zero(cls, comm: CommutationMatrix) -> 'QTElement':
        return cls(comm)

    @classmethod
    def identity(cls, comm: CommutationMatrix) -> 'QTElement':
        return cls(comm, {(0,) * comm.n: ONE})

    @classmethod
    def from_monomial(cls, comm: CommutationMatrix, monomial: QTMonomial) -> 'QTElement':
        return cls(comm, {monomial.exps: monomial.coeff})

    @classmethod
    def generator(cls, comm: CommutationMatrix, index: int, power: int = 1) -> 'QTElement':
        exps = [0] * comm.n
        exps[index] = power
        return cls(comm, {tuple(exps): ONE})

    @classmethod
    def from_weyl_terms(cls, comm: CommutationMatrix, terms: Mapping[Exponents, OmegaPoly]) -> 'QTElement':
        """由 Weyl 基系数构造"""
        return cls(comm, {tuple(e): OmegaPoly.coerce(c).shift(-comm.weyl_exponent(e))
                          for e, c in terms.items()})

    # ---- 访问 ----

    def terms(self) -> Dict[Exponents, OmegaPoly]:
        """正规序系数"""
        return dict(self._terms)

    def weyl_terms(self) -> Dict[Exponents, OmegaPoly]:
        """Weyl 基系数: c·Z^k = c·ω^{Σ_{i<j}k_ik_ja_ij}·[Z^k]"""
        return {e: c.shift(self.comm.weyl_exponent(e)) for e, c in self._terms.items()}

    def monomials(self) -> Iterable[QTMonomial]:
        return (QTMonomial(c, e) for e, c in sorted(self._terms.items()))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    # ---- 运算 ----

    def _check(self, other: 'QTElement'):
        if self.comm.n != other.comm.n:
            raise AlgebraError(f"mismatched generator counts: {self.comm.n} vs {other.comm.n}")
        if self.comm != other.comm:
            raise AlgebraError("交换矩阵不一致")

    def __add__(self, other: 'QTElement') -> 'QTElement':
        self._check(other)
        result = dict(self._terms)
        for exps, coeff in other._terms.items():
            result[exps] = result[exps] + coeff if exps in result else coeff
        return QTElement(self.comm, result)

    def __neg__(self) -> 'QTElement':
        return QTElement(self.comm, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: 'QTElement') -> 'QTElement':
        return self + (-other)

    def scale(self, scalar: Scalar) -> 'QTElement':
        scalar = OmegaPoly.coerce(scalar)
        return QTElement(self.comm, {e: c * scalar for e, c in self._terms.items()})

    def __mul__(self, other) -> 'QTElement':
        if isinstance(other, QTElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> 'QTElement':
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QTElement):
            return NotImplemented
        return self.comm == other.comm and self._terms == other._terms

    __hash__ = None

    # ---- 特化与首项 ----

    def specialize_commutative(self) -> CommutativeLaurent:
        return specialize_commutative(self)

    def leading_term(self, order: Optional[Callable[[Exponents], object]] = None) -> QTMonomial:
        return leading_term(self, order)

    def render(self) -> str:
        return render_element(self)

    def __repr__(self) -> str:
        return f"QTElement({self.render()})"


def multiply(x: QTElement, y: QTElement) -> QTElement:
    """斜代数中的乘积；单项式指数相加，系数乘以 ω^{2Σ_{i>j} x_i y_j a_ij}"""
    x._check(y)
    comm = x.comm
    result: Dict[Exponents, OmegaPoly] = {}
    for ex, cx in x._terms.items():
        for ey, cy in y._terms.items():
            exps = tuple(a + b for a, b in zip(ex, ey))
            coeff = (cx * cy).shift(2 * comm.reorder_exponent(ex, ey))
            result[exps] = result[exps] + coeff if exps in result else coeff
    return QTElement(comm, result)


def monomial_product(comm: CommutationMatrix, first: QTMonomial, second: QTMonomial) -> QTMonomial:
    """两个正规序单项式的乘积"""
    exps = tuple(a + b for a, b in zip(first.exps, second.exps))
    coeff = (first.coeff * second.coeff).shift(2 * comm.reorder_exponent(first.exps, second.exps))
    return QTMonomial(coeff, exps)


def weyl_order(gens: Sequence[Tuple[int, int]], comm: CommutationMatrix) -> QTMonomial:
    """
    Weyl 量子序 [Y_1 … Y_k] = ω^{−Σ_{i<j} a(Y_i,Y_j)} Y_1 … Y_k

    gens 为 (生成元下标, 指数) 序列；结果与因子排列无关。
    """
    prefactor = 0
    for p, (gi, ei) in enumerate(gens):
        for gj, ej in gens[p + 1:]:
            prefactor += ei * ej * comm.entry(gi, gj)
    product = QTMonomial(ONE, (0,) * comm.n)
    for index, power in gens:
        exps = [0] * comm.n
        exps[index] = power
        product = monomial_product(comm, product, QTMonomial(ONE, tuple(exps)))
    return QTMonomial(product.coeff.shift(-prefactor), product.exps)


def weyl_monomial(comm: CommutationMatrix, exps: Sequence[int]) -> QTMonomial:
    """[Z_1^{k_1} … Z_n^{k_n}] 的正规序表示"""
    exps = tuple(int(k) for k in exps)
    return QTMonomial(OmegaPoly.monomial(-comm.weyl_exponent(exps)), exps)


def specialize_commutative(x: QTElement) -> CommutativeLaurent:
    """令 ω = 1，所有生成元交换"""
    return CommutativeLaurent(x.comm.n, {e: c.specialize_unity() for e, c in x._terms.items()})


def degree_lex_key(exps: Exponents) -> Tuple[int, Exponents]:
    """默认项序：总次数，再按字典序"""
    return (sum(exps), exps)


def leading_term(x: QTElement, order: Optional[Callable[[Exponents], object]] = None) -> QTMonomial:
    """返回给定项序下的最高项（正规序表示）"""
    if x.is_zero():
        raise AlgebraError("zero element: 零元素没有首项")
    key = order or degree_lex_key
    exps = max(x._terms, key=key)
    return QTMonomial(x._terms[exps], exps)


def render_monomial(exps: Exponents) -> str:
    body = " ".join(f"Z{i + 1}^{k}" for i, k in enumerate(exps) if k)
    return f"[{body or '1'}]"


def render_element(x: QTElement) -> str:
    """规范文本：按指数向量字典序，`(<ω多项式>) * [Z1^a Z2^b ...]`，系数取 Weyl 基"""
    if x.is_zero():
        return "0"
    weyl = x.weyl_terms()
    return " + ".join(f"({weyl[e].render()}) * {render_monomial(e)}" for e in sorted(weyl))


def parse_element(text: str, comm: CommutationMatrix) -> QTElement:
    """解析 render_element 的输出"""
    stripped = text.strip()
    if stripped == "0":
        return QTElement.zero(comm)
    terms: Dict[Exponents, OmegaPoly] = {}
    pos = 0
    while pos < len(stripped):
        if pos > 0:
            if not stripped.startswith("+", pos):
                raise TraceInputError(f"无法解析量子环面元素: {text!r}（位置 {pos}）")
            pos += 1
        match = _WEYL_TERM.match(stripped, pos)
        if not match:
            raise TraceInputError(f"无法解析量子环面元素: {text!r}（位置 {pos}）")
        poly_text, mono_text = match.groups()
        exps = [0] * comm.n
        if mono_text.strip() != "1":
            for index, power in _GENERATOR.findall(mono_text):
                if not 1 <= int(index) <= comm.n:
                    raise TraceInputError(f"生成元下标越界: Z{index}")
                exps[int(index) - 1] += int(power)
        key = tuple(exps)
        coeff = parse_omega_poly(poly_text)
        terms[key] = terms[key] + coeff if key in terms else coeff
        pos = match.end()
    return QTElement.from_weyl_terms(comm, terms)
