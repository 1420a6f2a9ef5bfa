#!/usr/bin/env python3
"""
量子迹计算系统 - 好位置移动
把链环在一个面及其相邻双角里做局部改写（移动 I–V 及其逆），改写后量子迹不变

双角中的局部图样（p 为墙上的位置）:
  面侧 U 形弧（连接同一槽上两个弧端点）: 墙 1 为末尾的 `cup p`，墙 0 为开头的 `x+ p, cap p`
  离侧 U 形弧（连接双角另一侧的两条线）: 墙 0 为开头的 `cup p`，墙 1 为末尾的 `x+ p, cap p`
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from errors import MoveMismatchError
from topology.biangle import Slice, SliceKind, TangleWord, width_change
from topology.state_sum import GoodPositionLink
from topology.surface import Slot
from topology.triangle import TriangleArc

logger = logging.getLogger('Moves')


class MoveKind(Enum):
    """移动类型"""
    I = "I"              # 两条平行弧 + 面侧 U 形弧 → 离侧 U 形弧
    I_INV = "I-1"
    II = "II"            # 两段弧经面侧 U 形弧合并为一段
    II_INV = "II-1"
    III = "III"          # 交换同角两弧的高度
    III_INV = "III-1"
    IV = "IV"            # 交换异角两弧的高度
    IV_INV = "IV-1"
    V = "V"              # 在弧两端的双角中加一对相反扭结
    V_INV = "V-1"

    @classmethod
    def parse(cls, text: str) -> 'MoveKind':
        normalized = text.strip().upper().replace("⁻¹", "-1").replace("_INV", "-1")
        for kind in cls:
            if kind.value == normalized:
                return kind
        raise MoveMismatchError(f"未知的移动: {text}")


@dataclass(frozen=True)
class MoveLocation:
    """移动的位置：面、高度名次，以及（逆移动需要的）槽与墙上位置"""
    face: int
    rank: int = 0
    side: Optional[int] = None
    position: Optional[int] = None
    other_side: Optional[int] = None


def face_side_uturn(wall: int, p: int) -> List[Slice]:
    if wall == 1:
        return [Slice(SliceKind.CUP, p)]
    return [Slice(SliceKind.CROSS_OVER, p), Slice(SliceKind.CAP, p)]


def away_side_uturn(wall: int, p: int) -> List[Slice]:
    if wall == 0:
        return [Slice(SliceKind.CUP, p)]
    return [Slice(SliceKind.CROSS_OVER, p), Slice(SliceKind.CAP, p)]


def wall_kink(p: int, positive: bool) -> List[Slice]:
    crossing = SliceKind.CROSS_OVER if positive else SliceKind.CROSS_UNDER
    return [Slice(SliceKind.CUP, p + 1), Slice(crossing, p), Slice(SliceKind.CAP, p + 1)]


def _third(s: int, t: int) -> int:
    return ({1, 2, 3} - {s, t}).pop()


class _Rewrite:
    """一次移动的工作区：一个面的弧列表 + 被改动的缠结字"""

    def __init__(self, link: GoodPositionLink, face: int):
        if not 1 <= face <= link.tri.m:
            raise MoveMismatchError(f"面 {face} 超出范围")
        self.link = link
        self.face = face
        self.arcs: List[TriangleArc] = list(link.arcs(face))
        self.words: Dict[int, TangleWord] = {}

    def arc(self, rank: int) -> TriangleArc:
        if not 0 <= rank < len(self.arcs):
            raise MoveMismatchError(f"面 {self.face} 中没有名次 {rank} 的弧（共 {len(self.arcs)} 条）")
        return self.arcs[rank]

    def position(self, arc: TriangleArc, pos: int) -> int:
        """弧在槽 pos 上的位置（1 起），按当前弧列表计算"""
        ends = [a for a in self.arcs if a.touches(pos)]
        return ends.index(arc) + 1

    def ends_on(self, pos: int) -> List[TriangleArc]:
        return [a for a in self.arcs if a.touches(pos)]

    def _word(self, edge: int) -> TangleWord:
        if edge not in self.words:
            word = self.link.tangles[edge]
            kept = tuple(s for s in word.slices if s.kind != SliceKind.IDENTITY)
            self.words[edge] = TangleWord(word.n0, kept)
        return self.words[edge]

    def _locate(self, pos: int):
        slot = Slot(self.face, pos)
        return self.link.tri.edge_of(slot), self.link.tri.wall_of(slot)

    def wall(self, pos: int) -> int:
        return self._locate(pos)[1]

    def attach(self, pos: int, slices: Sequence[Slice]):
        """在槽 pos 所在墙的一侧紧贴墙加片"""
        edge, wall = self._locate(pos)
        word = self._word(edge)
        self.words[edge] = TangleWord.with_prefix(slices, word) if wall == 0 else word.with_suffix(slices)

    def has(self, pos: int, slices: Sequence[Slice]) -> bool:
        edge, wall = self._locate(pos)
        word = self._word(edge)
        k = len(slices)
        if len(word.slices) < k:
            return False
        found = word.slices[:k] if wall == 0 else word.slices[-k:]
        return tuple(found) == tuple(slices)

    def detach(self, pos: int, slices: Sequence[Slice], pattern: str):
        """去掉紧贴墙的片；不匹配时报告期望的图样"""
        edge, wall = self._locate(pos)
        word = self._word(edge)
        if not self.has(pos, slices):
            expected = " ".join(s.render() for s in slices)
            where = "开头" if wall == 0 else "末尾"
            raise MoveMismatchError(
                f"期望在边 {self.link.tri.edge(edge).name} 的缠结字{where}找到 {pattern} `{expected}`，"
                f"实际为 `{word.render()}`")
        k = len(slices)
        if wall == 0:
            width = word.n0 + sum(width_change(s.kind) for s in slices)
            self.words[edge] = TangleWord(width, word.slices[k:])
        else:
            self.words[edge] = TangleWord(word.n0, word.slices[:-k])

    def finish(self) -> GoodPositionLink:
        arcs = [arc.with_elevation(rank) for rank, arc in enumerate(self.arcs)]
        return self.link.with_parts({self.face: arcs}, self.words)


def apply_move(link: GoodPositionLink, move, location: MoveLocation) -> GoodPositionLink:
    """在 location 处应用移动，返回新链环；局部图样不符时抛 MoveMismatchError"""
    kind = move if isinstance(move, MoveKind) else MoveKind.parse(str(move))
    rewrite = _Rewrite(link, location.face)
    handler = _HANDLERS[kind]
    handler(rewrite, location)
    result = rewrite.finish()
    logger.debug(f"移动 {kind.value} @ 面 {location.face} 名次 {location.rank}")
    return result


def _move_i(rw: _Rewrite, loc: MoveLocation):
    p, q = rw.arc(loc.rank), rw.arc(loc.rank + 1)
    corner = {p.slot_in, p.slot_out}
    if corner != {q.slot_in, q.slot_out}:
        raise MoveMismatchError(f"移动 I 需要名次 {loc.rank}, {loc.rank + 1} 的两条弧截同一个角")
    candidates = [loc.side] if loc.side is not None else sorted(corner)
    for t in candidates:
        if t not in corner:
            continue
        i_t = rw.position(p, t)
        uturn = face_side_uturn(rw.wall(t), i_t)
        if rw.has(t, uturn):
            s = (corner - {t}).pop()
            i_s = rw.position(p, s)
            rw.detach(t, uturn, "面侧U形弧")
            rw.arcs.remove(p)
            rw.arcs.remove(q)
            rw.attach(s, away_side_uturn(rw.wall(s), i_s))
            return
    raise MoveMismatchError(f"移动 I 需要在槽 {sorted(corner)} 之一的墙边有连接两弧端点的面侧U形弧")


def _move_i_inv(rw: _Rewrite, loc: MoveLocation):
    s, t, i = loc.side, loc.other_side, loc.position
    if s is None or t is None or i is None or s == t:
        raise MoveMismatchError("移动 I⁻¹ 需要 side、other_side 与 position")
    rw.detach(s, away_side_uturn(rw.wall(s), i), "离侧U形弧")
    if i > len(rw.ends_on(s)) + 1:
        raise MoveMismatchError(f"槽 {s} 上没有位置 {i}")
    index = _insertion_rank(rw, s, i)
    top = max((a.elevation for a in rw.arcs), default=0)
    p = TriangleArc(rw.face, s, t, top + 1)
    q = TriangleArc(rw.face, t, s, top + 2)
    rw.arcs[index:index] = [p, q]
    rw.attach(t, face_side_uturn(rw.wall(t), rw.position(p, t)))
    rw.arcs = [arc.with_elevation(rank) for rank, arc in enumerate(rw.arcs)]


def _insertion_rank(rw: _Rewrite, s: int, i: int) -> int:
    """新弧对插入弧列表的名次，使下方那条落在槽 s 的第 i 个位置"""
    ends = rw.ends_on(s)
    if i > 1:
        return rw.arcs.index(ends[i - 2]) + 1
    if ends:
        return rw.arcs.index(ends[0])
    return len(rw.arcs)


def away_uturn_locations(link: GoodPositionLink) -> List[Tuple[MoveLocation, MoveLocation]]:
    """所有能做移动 I⁻¹ 的位置，配上把它做回去的移动 I 的位置"""
    found = []
    for face in link.tri.faces:
        rw = _Rewrite(link, face)
        for s in (1, 2, 3):
            for i in range(1, len(rw.ends_on(s)) + 2):
                if not rw.has(s, away_side_uturn(rw.wall(s), i)):
                    continue
                rank = _insertion_rank(rw, s, i)
                for t in (1, 2, 3):
                    if t != s:
                        found.append((MoveLocation(face, rank, side=s, position=i, other_side=t),
                                      MoveLocation(face, rank, side=t)))
    return found


def _move_ii(rw: _Rewrite, loc: MoveLocation):
    p, q = rw.arc(loc.rank), rw.arc(loc.rank + 1)
    shared = {p.slot_in, p.slot_out} & {q.slot_in, q.slot_out}
    if len(shared) != 1:
        raise MoveMismatchError("移动 II 需要两条截不同角的弧")
    s = shared.pop()
    t = ({p.slot_in, p.slot_out} - {s}).pop()
    u = ({q.slot_in, q.slot_out} - {s}).pop()
    if p.first_role != s or t != s % 3 + 1:
        raise MoveMismatchError(f"移动 II 需要下方弧的角以共享边 {s} 为第一角色（角 ({s},{s % 3 + 1})）")
    i_s = rw.position(p, s)
    rw.detach(s, face_side_uturn(rw.wall(s), i_s), "面侧U形弧")
    rank = rw.arcs.index(p)
    rw.arcs[rank:rank + 2] = [TriangleArc(rw.face, t, u, p.elevation)]


def _move_ii_inv(rw: _Rewrite, loc: MoveLocation):
    r = rw.arc(loc.rank)
    t = r.first_role
    u = r.slot_out if r.slot_in == t else r.slot_in
    s = _third(t, u)
    top = max(a.elevation for a in rw.arcs)
    p = TriangleArc(rw.face, t, s, top + 1)
    q = TriangleArc(rw.face, s, u, top + 2)
    rw.arcs[loc.rank:loc.rank + 1] = [p, q]
    rw.attach(s, face_side_uturn(rw.wall(s), rw.position(p, s)))
    rw.arcs = [arc.with_elevation(rank) for rank, arc in enumerate(rw.arcs)]


def _shared_sides(p: TriangleArc, q: TriangleArc) -> List[int]:
    return sorted({p.slot_in, p.slot_out} & {q.slot_in, q.slot_out})


def _crossing_for(lower: TriangleArc, side: int, position: int) -> List[Slice]:
    kind = SliceKind.CROSS_UNDER if lower.first_role == side else SliceKind.CROSS_OVER
    return [Slice(kind, position)]


def _swap(rw: _Rewrite, loc: MoveLocation, same_corner: bool):
    p, q = rw.arc(loc.rank), rw.arc(loc.rank + 1)
    shared = _shared_sides(p, q)
    if (len(shared) == 2) != same_corner:
        name = "III" if same_corner else "IV"
        raise MoveMismatchError(f"移动 {name} 需要两条弧{'截同一个角' if same_corner else '截不同的角'}")
    positions = {s: rw.position(p, s) for s in shared}
    for s in shared:
        rw.attach(s, _crossing_for(p, s, positions[s]))
    rw.arcs[loc.rank], rw.arcs[loc.rank + 1] = q, p


def _swap_inv(rw: _Rewrite, loc: MoveLocation, same_corner: bool):
    lower, upper = rw.arc(loc.rank), rw.arc(loc.rank + 1)
    shared = _shared_sides(lower, upper)
    if (len(shared) == 2) != same_corner:
        name = "III⁻¹" if same_corner else "IV⁻¹"
        raise MoveMismatchError(f"移动 {name} 需要两条弧{'截同一个角' if same_corner else '截不同的角'}")
    positions = {s: rw.position(lower, s) for s in shared}
    for s in shared:
        rw.detach(s, _crossing_for(upper, s, positions[s]), "紧贴墙的交叉")
    rw.arcs[loc.rank], rw.arcs[loc.rank + 1] = upper, lower


def _move_v(rw: _Rewrite, loc: MoveLocation):
    arc = rw.arc(loc.rank)
    rw.attach(arc.slot_in, wall_kink(rw.position(arc, arc.slot_in), True))
    rw.attach(arc.slot_out, wall_kink(rw.position(arc, arc.slot_out), False))


def _move_v_inv(rw: _Rewrite, loc: MoveLocation):
    arc = rw.arc(loc.rank)
    rw.detach(arc.slot_in, wall_kink(rw.position(arc, arc.slot_in), True), "正扭结")
    rw.detach(arc.slot_out, wall_kink(rw.position(arc, arc.slot_out), False), "负扭结")


_HANDLERS = {
    MoveKind.I: _move_i,
    MoveKind.I_INV: _move_i_inv,
    MoveKind.II: _move_ii,
    MoveKind.II_INV: _move_ii_inv,
    MoveKind.III: lambda rw, loc: _swap(rw, loc, True),
    MoveKind.III_INV: lambda rw, loc: _swap_inv(rw, loc, True),
    MoveKind.IV: lambda rw, loc: _swap(rw, loc, False),
    MoveKind.IV_INV: lambda rw, loc: _swap_inv(rw, loc, False),
    MoveKind.V: _move_v,
    MoveKind.V_INV: _move_v_inv,
}
