#!/usr/bin/env python3
"""
量子迹计算系统 - 对角交换
正方形 T1 ∪ B1 ∪ T2 中每条水平线段按连接类型与状态贡献一个块；
把旧剖分 λ 的块换成新剖分 λ' 的对应块，即得到 λ' 下的量子迹

正方形的边标记 λ1..λ5 与面标记见 topology.surface.FlipSquare。
块文本 "Z12 Z11 | Z21 Z23^-1" 中 Zfx 表示面标记 f 上边标记 x 的生成元，"|" 分隔 T1 与 T2 两个因子。
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from algebra.quantum_torus import CommutationMatrix, QTElement, QTMonomial, weyl_monomial
from errors import TraceInputError
from topology.biangle import BiangleEvaluator, TangleWord
from topology.state_sum import (
    BoundaryState, GoodPositionLink, Piece, SidePoint, check_side_points, contract,
    link_biangles, link_pieces,
)
from topology.surface import FlipSquare, IdealTriangulation, Slot, flip, flip_square, tensor_to_edge
from topology.triangle import TriangleArc, corner_arc_trace

logger = logging.getLogger('Flip')

StrandKind = Tuple[int, int]
CONNECTION_TYPES: Tuple[StrandKind, ...] = ((2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5))

_GENERATOR = re.compile(r'Z(\d)(\d)(?:\^(-?\d+))?')

# 旧剖分 λ 中的块，状态按 (较小标记端, 较大标记端)
OLD_BLOCK_TEXT: Dict[StrandKind, Dict[Tuple[int, int], List[str]]] = {
    (2, 3): {
        (1, 1): ["Z12 Z11 | Z21 Z23"],
        (1, -1): ["Z12 Z11 | Z21 Z23^-1", "Z12 Z11^-1 | Z21^-1 Z23^-1"],
        (-1, -1): ["Z12^-1 Z11^-1 | Z21^-1 Z23^-1"],
    },
    (2, 4): {
        (1, 1): ["Z12 Z11 | Z21 Z24", "Z12 Z11^-1 | Z21^-1 Z24"],
        (1, -1): ["Z12 Z11^-1 | Z21^-1 Z24^-1"],
        (-1, 1): ["Z12^-1 Z11^-1 | Z21^-1 Z24"],
        (-1, -1): ["Z12^-1 Z11^-1 | Z21^-1 Z24^-1"],
    },
    (2, 5): {
        (1, 1): ["Z12 Z15 | 1"],
        (-1, 1): ["Z12^-1 Z15 | 1"],
        (-1, -1): ["Z12^-1 Z15^-1 | 1"],
    },
    (3, 4): {
        (1, 1): ["1 | Z23 Z24"],
        (1, -1): ["1 | Z23 Z24^-1"],
        (-1, -1): ["1 | Z23^-1 Z24^-1"],
    },
    (3, 5): {
        (1, 1): ["Z15 Z11 | Z21 Z23"],
        (-1, 1): ["Z15 Z11 | Z21 Z23^-1"],
        (1, -1): ["Z15^-1 Z11 | Z21 Z23"],
        (-1, -1): ["Z15^-1 Z11 | Z21 Z23^-1", "Z15^-1 Z11^-1 | Z21^-1 Z23^-1"],
    },
    (4, 5): {
        (1, 1): ["Z15 Z11 | Z21 Z24"],
        (1, -1): ["Z15^-1 Z11 | Z21 Z24", "Z15^-1 Z11^-1 | Z21^-1 Z24"],
        (-1, -1): ["Z15^-1 Z11^-1 | Z21^-1 Z24^-1"],
    },
}

# 新剖分 λ' 中的对应块
NEW_BLOCK_TEXT: Dict[StrandKind, Dict[Tuple[int, int], List[str]]] = {
    (2, 3): {
        (1, 1): ["Z12 Z13 | 1"],
        (1, -1): ["Z12 Z13^-1 | 1"],
        (-1, -1): ["Z12^-1 Z13^-1 | 1"],
    },
    (2, 4): {
        (1, 1): ["Z12 Z11 | Z21 Z24"],
        (1, -1): ["Z12 Z11 | Z21 Z24^-1"],
        (-1, 1): ["Z12^-1 Z11 | Z21 Z24"],
        (-1, -1): ["Z12^-1 Z11 | Z21 Z24^-1", "Z12^-1 Z11^-1 | Z21^-1 Z24^-1"],
    },
    (2, 5): {
        (1, 1): ["Z12 Z11 | Z21 Z25"],
        (-1, 1): ["Z12^-1 Z11 | Z21 Z25", "Z12^-1 Z11^-1 | Z21^-1 Z25"],
        (-1, -1): ["Z12^-1 Z11^-1 | Z21^-1 Z25^-1"],
    },
    (3, 4): {
        (1, 1): ["Z13 Z11 | Z21 Z24"],
        (1, -1): ["Z13 Z11 | Z21 Z24^-1", "Z13 Z11^-1 | Z21^-1 Z24^-1"],
        (-1, -1): ["Z13^-1 Z11^-1 | Z21^-1 Z24^-1"],
    },
    (3, 5): {
        (1, 1): ["Z13 Z11 | Z21 Z25", "Z13 Z11^-1 | Z21^-1 Z25"],
        (-1, 1): ["Z13^-1 Z11^-1 | Z21^-1 Z25"],
        (1, -1): ["Z13 Z11^-1 | Z21^-1 Z25^-1"],
        (-1, -1): ["Z13^-1 Z11^-1 | Z21^-1 Z25^-1"],
    },
    (4, 5): {
        (1, 1): ["1 | Z24 Z25"],
        (1, -1): ["1 | Z24 Z25^-1"],
        (-1, -1): ["1 | Z24^-1 Z25^-1"],
    },
}


class FlipBlockTable:
    """块替换表；new=True 时标记按新剖分解释"""

    def __init__(self, text: Dict[StrandKind, Dict[Tuple[int, int], List[str]]], new: bool):
        self.text = text
        self.new = new

    def subcases(self, kind: StrandKind) -> List[Tuple[int, int]]:
        return sorted(self.text[kind], reverse=True)

    def block(self, square: FlipSquare, kind: StrandKind, signs: Tuple[int, int],
              comm: CommutationMatrix) -> List[QTMonomial]:
        """状态为 signs 时的块（Weyl 单项式之和），表中没有的子情形为零"""
        if kind not in self.text:
            raise TraceInputError(f"未知的连接类型: λ{kind[0]}→λ{kind[1]}")
        locate = square.new_slot if self.new else square.old_slot
        terms = []
        for line in self.text[kind].get(tuple(signs), []):
            exps = [0] * comm.n
            for component in line.split("|"):
                for face_label, side_label, power in _GENERATOR.findall(component):
                    slot = locate(int(face_label), int(side_label))
                    exps[IdealTriangulation.slot_index(slot)] += int(power) if power else 1
            terms.append(weyl_monomial(comm, exps))
        return terms

    def entry_count(self) -> int:
        return sum(len(cases) for cases in self.text.values())


OLD_BLOCKS = FlipBlockTable(OLD_BLOCK_TEXT, new=False)
NEW_BLOCKS = FlipBlockTable(NEW_BLOCK_TEXT, new=True)


@dataclass(frozen=True)
class SquareStrand:
    """正方形中的一条水平线段：连接类型、旧剖分中的弧，以及两端在外侧边上的变量"""
    kind: StrandKind
    arcs: Tuple[TriangleArc, ...]
    ends: Tuple[SidePoint, SidePoint]


def square_strands(link: GoodPositionLink, e: int) -> List[SquareStrand]:
    """把正方形中的弧拼成线段，并按两个面的高度次序合成一个全序"""
    tri = link.tri
    square = flip_square(tri, e)
    if not link.tangles[e].is_trivial():
        raise TraceInputError(
            f"正方形中有非水平内容: 边 {tri.edge(e).name} 的缠结字为 `{link.tangles[e].render()}`，"
            f"需先把交叉和U形弧推到外侧双角")
    diag1, diag2 = square.first, square.second

    def outer_end(arc: TriangleArc, pos: int) -> Tuple[int, SidePoint]:
        label = square.old_label(Slot(arc.face, pos))[1]
        return label, (arc.face, pos, link.end_rank(arc, pos))

    strands: List[Tuple[SquareStrand, Optional[int], Optional[int]]] = []
    face2_arcs = list(link.arcs(square.face2))
    crossing_partner = {link.end_rank(a, diag2.pos): a for a in face2_arcs if a.touches(diag2.pos)}
    for rank1, arc in enumerate(link.arcs(square.face1)):
        if arc.touches(diag1.pos):
            other = link.arc_at(diag2, link.end_rank(arc, diag1.pos))
            x_pos = arc.slot_out if arc.slot_in == diag1.pos else arc.slot_in
            y_pos = other.slot_out if other.slot_in == diag2.pos else other.slot_in
            ends = [outer_end(arc, x_pos), outer_end(other, y_pos)]
            arcs = (arc, other)
            rank2 = face2_arcs.index(other)
        else:
            ends = [outer_end(arc, arc.slot_in), outer_end(arc, arc.slot_out)]
            arcs = (arc,)
            rank2 = None
        ends.sort()
        strands.append((SquareStrand((ends[0][0], ends[1][0]), arcs, (ends[0][1], ends[1][1])), rank1, rank2))
    for rank2, arc in enumerate(face2_arcs):
        if arc in crossing_partner.values():
            continue
        ends = sorted([outer_end(arc, arc.slot_in), outer_end(arc, arc.slot_out)])
        strands.append((SquareStrand((ends[0][0], ends[1][0]), (arc,), (ends[0][1], ends[1][1])), None, rank2))
    return _merge_orders(strands)


def _merge_orders(strands) -> List[SquareStrand]:
    """两个面的高度次序的确定性拓扑合并"""
    infinity = float('inf')
    remaining = list(strands)
    ordered: List[SquareStrand] = []
    while remaining:
        def available(item) -> bool:
            _, r1, r2 = item
            return all(not ((r1 is not None and o1 is not None and o1 < r1) or
                            (r2 is not None and o2 is not None and o2 < r2))
                       for _, o1, o2 in remaining)
        ready = [item for item in remaining if available(item)]
        if not ready:
            raise TraceInputError("两个面的高度次序矛盾")
        chosen = min(ready, key=lambda item: (item[1] if item[1] is not None else infinity,
                                              item[2] if item[2] is not None else infinity))
        ordered.append(chosen[0])
        remaining.remove(chosen)
    return ordered


def reposition_link(link: GoodPositionLink, e: int) -> GoodPositionLink:
    """把正方形中的每条线段按新剖分重画，正方形外不变"""
    square = flip_square(link.tri, e)
    strands = square_strands(link, e)
    new_tri = flip(link.tri, e)
    face_of = {1: square.face1, 2: square.face2}
    new_arcs: Dict[int, List[TriangleArc]] = {square.face1: [], square.face2: []}
    for height, strand in enumerate(strands):
        x, y = strand.kind
        fx, fy = square.new_face_of(x), square.new_face_of(y)
        if fx == fy:
            new_arcs[face_of[fx]].append(TriangleArc(
                face_of[fx], square.new_slot(fx, x).pos, square.new_slot(fx, y).pos, height))
        else:
            new_arcs[face_of[fx]].append(TriangleArc(
                face_of[fx], square.new_slot(fx, x).pos, square.new_slot(fx, 1).pos, height))
            new_arcs[face_of[fy]].append(TriangleArc(
                face_of[fy], square.new_slot(fy, 1).pos, square.new_slot(fy, y).pos, height))
    crossing = sum(1 for arc in new_arcs[square.face1] if arc.touches(square.first.pos))
    face_arcs = list(link.face_arcs)
    for face, arcs in new_arcs.items():
        face_arcs[face - 1] = tuple(arcs)
    tangles = list(link.tangles)
    tangles[e] = TangleWord.identity(crossing)
    return GoodPositionLink(new_tri, tuple(face_arcs), tuple(tangles))


def strand_piece(square: FlipSquare, strand: SquareStrand, table: FlipBlockTable,
                 comm: CommutationMatrix) -> Piece:
    values = []
    for signs in table.subcases(strand.kind):
        for monomial in table.block(square, strand.kind, signs, comm):
            values.append((signs, monomial))
    return Piece(strand.ends, tuple(values))


def grouped_trace(link: GoodPositionLink, e: int, state: Optional[BoundaryState] = None,
                  table: FlipBlockTable = OLD_BLOCKS, max_side_points: Optional[int] = None,
                  evaluator: Optional[BiangleEvaluator] = None) -> QTElement:
    """
    正方形内的贡献按块分组的状态和

    用旧表得到 λ 下的量子迹，用新表得到 λ' 下的量子迹。
    """
    tri = link.tri
    square = flip_square(tri, e)
    state = state or BoundaryState()
    state.check_total(link)
    check_side_points(link.side_point_count(), max_side_points)
    comm = tri.triangle_comm
    others = [f for f in tri.faces if f not in (square.face1, square.face2)]
    pieces = link_pieces(link, comm, others)
    pieces += [strand_piece(square, strand, table, comm) for strand in square_strands(link, e)]
    biangles = link_biangles(link, state, evaluator, skip=[e])
    value = QTElement(comm, contract(pieces, biangles, comm))
    target = flip(tri, e) if table.new else tri
    return tensor_to_edge(target, value)


def transfer_trace(link: GoodPositionLink, e: int, state: Optional[BoundaryState] = None,
                   **kwargs) -> QTElement:
    """λ' 下的量子迹：把每个块换成新表中的对应块"""
    result = grouped_trace(link, e, state, NEW_BLOCKS, **kwargs)
    logger.info(f"对角交换边 {link.tri.edge(e).name}: {len(result)} 项")
    return result


def block_from_triangles(square: FlipSquare, kind: StrandKind, signs: Tuple[int, int],
                         comm: CommutationMatrix, new: bool = False) -> QTElement:
    """由三角形角弧迹直接推出块：跨过对角线的线段对对角线上的状态求和"""
    x, y = kind
    face_label_of = square.new_face_of if new else square.old_face_of
    locate = square.new_slot if new else square.old_slot
    fx, fy = face_label_of(x), face_label_of(y)
    total = QTElement.zero(comm)

    def arc_value(face_label: int, a: int, b: int, ea: int, eb: int) -> QTElement:
        slot_a, slot_b = locate(face_label, a), locate(face_label, b)
        arc = TriangleArc(slot_a.face, slot_a.pos, slot_b.pos, 0)
        return QTElement.from_monomial(comm, corner_arc_trace(arc, ea, eb, comm))

    if fx == fy:
        return arc_value(fx, x, y, signs[0], signs[1])
    for middle in (1, -1):
        total = total + arc_value(fx, x, 1, signs[0], middle) * arc_value(fy, 1, y, middle, signs[1])
    return total


def block_element(table: FlipBlockTable, square: FlipSquare, kind: StrandKind,
                  signs: Tuple[int, int], comm: CommutationMatrix) -> QTElement:
    element = QTElement.zero(comm)
    for monomial in table.block(square, kind, signs, comm):
        element = element + QTElement.from_monomial(comm, monomial)
    return element
