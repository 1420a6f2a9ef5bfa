#!/usr/bin/env python3
"""
量子迹计算系统 - 经典迹
ω = 1 时的对照：剪切坐标下的和乐矩阵乘积，以及经典状态和
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Sequence, Union

import numpy as np

from algebra.laurent import CommutativeLaurent
from errors import TraceInputError
from topology.state_sum import GoodPositionLink
from topology.surface import Slot
from topology.triangle import TriangleArc

logger = logging.getLogger('Classical')

ShearAssignment = Union[Sequence[float], Mapping[int, float]]

_INDEX = {1: 0, -1: 1}


class TurnKind(Enum):
    """曲线在三角形中的转向"""
    LEFT = "L"
    RIGHT = "R"
    UTURN = "U"


@dataclass(frozen=True)
class TurnStep:
    """穿过边 edge 之后的一次转向，t 为向左的整圈数"""
    edge: int
    kind: TurnKind
    t: int = 0

    def render(self, names: Sequence[str] = ()) -> str:
        edge = names[self.edge] if names else str(self.edge)
        return f"{edge} {self.kind.value} {self.t}"


def turn_matrix(step: TurnStep) -> np.ndarray:
    eps = -1 if step.t % 2 else 1
    if step.kind == TurnKind.LEFT:
        base = [[1, 1], [0, 1]]
    elif step.kind == TurnKind.RIGHT:
        base = [[1, 0], [1, 1]]
    else:
        base = [[0, 1], [-1, 0]]
    return eps * np.array(base, dtype=np.int64)


def _shear(x: ShearAssignment, edge: int) -> float:
    try:
        value = float(x[edge])
    except (KeyError, IndexError):
        raise TraceInputError(f"缺少边 {edge} 的剪切坐标")
    if value <= 0:
        raise TraceInputError(f"剪切坐标必须为正: 边 {edge} = {value}")
    return value


def shear_matrix(value: float) -> np.ndarray:
    """S(X) = diag(X^{1/2}, X^{-1/2})"""
    if value <= 0:
        raise TraceInputError(f"剪切坐标必须为正: {value}")
    root = np.sqrt(value)
    return np.diag([root, 1.0 / root])


def holonomy_trace(steps: Sequence[TurnStep], x: ShearAssignment) -> float:
    """tr S(X_{i1}) M_1 S(X_{i2}) M_2 … S(X_{ik}) M_k"""
    if not steps:
        raise TraceInputError("转向序列不能为空")
    product = np.eye(2)
    for step in steps:
        product = product @ shear_matrix(_shear(x, step.edge)) @ turn_matrix(step)
    return float(np.trace(product))


def classical_state_sum(steps: Sequence[TurnStep], n: int) -> CommutativeLaurent:
    """Σ_s Π_j M_j[s_j, s_{j+1}] · Π_j Z_{i_j}^{s_j}"""
    if not steps:
        raise TraceInputError("转向序列不能为空")
    matrices = [turn_matrix(step) for step in steps]
    terms: Dict[tuple, int] = {}
    for signs in itertools.product((1, -1), repeat=len(steps)):
        coeff = 1
        for j, matrix in enumerate(matrices):
            coeff *= int(matrix[_INDEX[signs[j]], _INDEX[signs[(j + 1) % len(steps)]]])
            if not coeff:
                break
        if not coeff:
            continue
        exps = [0] * n
        for step, sign in zip(steps, signs):
            exps[step.edge] += sign
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return CommutativeLaurent(n, terms)


def multicurve_state_sum(sequences: Sequence[Sequence[TurnStep]], n: int) -> CommutativeLaurent:
    result = CommutativeLaurent.one(n)
    for steps in sequences:
        result = result * classical_state_sum(steps, n)
    return result


def link_turn_sequences(link: GoodPositionLink) -> List[List[TurnStep]]:
    """
    把简单链环的每个闭分支写成转向序列

    从弧的 slot_in 进入：进入槽是所截角的第一角色时左转，否则右转；步的边是进入槽的边。
    """
    if not link.is_simple():
        raise TraceInputError("只有双角中全是平行线的简单链环才能转换为转向序列")
    tri = link.tri
    visited = set()
    sequences = []
    for start in link.all_arcs():
        if start in visited:
            continue
        steps: List[TurnStep] = []
        arc: TriangleArc = start
        entry = start.slot_in
        while True:
            if arc in visited:
                if arc != start:
                    raise TraceInputError("链环分支的追踪出现分叉")
                break
            visited.add(arc)
            leave = arc.slot_out if arc.slot_in == entry else arc.slot_in
            kind = TurnKind.LEFT if entry == arc.first_role else TurnKind.RIGHT
            steps.append(TurnStep(tri.edge_of(Slot(arc.face, entry)), kind))
            exit_slot = Slot(arc.face, leave)
            partner = tri.partner(exit_slot)
            if partner is None:
                raise TraceInputError(f"分支在边界边 {tri.edge(tri.edge_of(exit_slot)).name} 上终止，不是闭曲线")
            rank = link.end_rank(arc, leave)
            arc = link.arc_at(partner, rank)
            entry = partner.pos
        sequences.append(steps)
        logger.debug(f"闭分支: {' '.join(s.render() for s in steps)}")
    return sequences
