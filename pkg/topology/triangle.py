#!/usr/bin/env python3
"""
量子迹计算系统 - 三角形迹
三角形中带状态角弧的贡献，以及按高度排序的乘积
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from algebra.omega_ring import OMEGA, ZERO, OmegaPoly
from algebra.quantum_torus import CommutationMatrix, QTElement, QTMonomial, monomial_product, weyl_monomial
from errors import TraceInputError
from topology.surface import IdealTriangulation, Slot, corner_first_role

SIGN_PAIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class TriangleArc:
    """面 face 中连接 slot_in 与 slot_out 的常高度弧"""
    face: int
    slot_in: int
    slot_out: int
    elevation: int

    def __post_init__(self):
        if self.slot_in == self.slot_out:
            raise TraceInputError(
                f"面 {self.face} 中的弧两端在同一条边 {self.slot_in} 上（不是好位置）")
        if self.slot_in not in (1, 2, 3) or self.slot_out not in (1, 2, 3):
            raise TraceInputError(f"槽号必须为 1..3: ({self.slot_in}, {self.slot_out})")

    @property
    def first_role(self) -> int:
        """所截角的第一角色边"""
        return corner_first_role(self.slot_in, self.slot_out)

    @property
    def slots(self) -> Tuple[Slot, Slot]:
        return Slot(self.face, self.slot_in), Slot(self.face, self.slot_out)

    def touches(self, pos: int) -> bool:
        return pos in (self.slot_in, self.slot_out)

    def with_elevation(self, elevation: int) -> 'TriangleArc':
        return TriangleArc(self.face, self.slot_in, self.slot_out, elevation)


def _corner_roles(arc: TriangleArc, eps_in: int, eps_out: int) -> Tuple[int, int]:
    """把 (ε_in, ε_out) 换成 (ε_第一角色, ε_第二角色)"""
    if arc.first_role == arc.slot_in:
        return eps_in, eps_out
    return eps_out, eps_in


def corner_arc_trace(arc: TriangleArc, eps_in: int, eps_out: int,
                     comm: CommutationMatrix) -> QTMonomial:
    """角弧的迹：第一角色为 − 且第二角色为 + 时为 0，否则为 Weyl 单项式 [Z_λ1^ε1 Z_λ2^ε2]"""
    if comm.n < 3 * arc.face:
        raise TraceInputError(f"交换矩阵只有 {comm.n} 个生成元，不含面 {arc.face}")
    first, second = _corner_roles(arc, eps_in, eps_out)
    exps = [0] * comm.n
    exps[IdealTriangulation.slot_index(Slot(arc.face, arc.slot_in))] = eps_in
    exps[IdealTriangulation.slot_index(Slot(arc.face, arc.slot_out))] = eps_out
    if first == -1 and second == 1:
        return QTMonomial(ZERO, tuple(exps))
    return weyl_monomial(comm, exps)


def allowed_sign_pairs(arc: TriangleArc) -> List[Tuple[int, int]]:
    """使角弧迹非零的 (ε_in, ε_out)"""
    return [(a, b) for a, b in SIGN_PAIRS if _corner_roles(arc, a, b) != (-1, 1)]


def uturn_arc_trace(eps_high: int, eps_low: int) -> OmegaPoly:
    """三角形中 U 形弧的标量迹（eps_high 在较高的端点）"""
    if eps_high == eps_low:
        return ZERO
    if eps_high == 1:
        return -(OMEGA ** -5)
    return OMEGA ** -1


def face_trace(arcs: Sequence[Tuple[TriangleArc, int, int]], comm: CommutationMatrix) -> QTElement:
    """一个面上所有弧的迹按高度递增相乘，最低的在最左"""
    elevations = [arc.elevation for arc, _, _ in arcs]
    if len(set(elevations)) != len(elevations):
        raise TraceInputError(f"同一面中的弧高度重复: {elevations}")
    if elevations != sorted(elevations):
        raise TraceInputError(f"弧必须按高度递增排列: {elevations}")
    product = QTMonomial(OmegaPoly.one(), (0,) * comm.n)
    for arc, eps_in, eps_out in arcs:
        factor = corner_arc_trace(arc, eps_in, eps_out, comm)
        if factor.is_zero():
            return QTElement.zero(comm)
        product = monomial_product(comm, product, factor)
    return QTElement.from_monomial(comm, product)
