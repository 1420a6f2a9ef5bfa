#!/usr/bin/env python3
"""
量子迹计算系统 - 文件协议
曲面、链环、状态、曲线与剪切坐标文件的逐行解析与输出

所有文件为 UTF-8，`#` 之后为注释，空行忽略。解析错误带文件类型与行号。
"""

import logging
import re
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from algebra.omega_ring import parse_omega_poly
from algebra.laurent import parse_commutative_laurent
from algebra.quantum_torus import parse_element, render_element
from errors import TraceInputError
from topology.biangle import Signs, Slice, SliceKind, TangleWord
from topology.classical import TurnKind, TurnStep
from topology.state_sum import BoundaryState, GoodPositionLink
from topology.surface import EdgeRecord, IdealTriangulation, Slot
from topology.triangle import TriangleArc

logger = logging.getLogger('FileProtocol')

_SLOT = re.compile(r'^(\d+)\.(\d+)$')
_SLICE_TOKENS = {kind.value: kind for kind in SliceKind}


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """逐行切分，去掉注释与空行"""
    for line_no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].strip()
        if content:
            yield line_no, content.split()


def _int(token: str, what: str, line_no: int, source: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise TraceInputError(f"{what}必须为整数: {token!r}", line_no, source)


def load_text(path) -> str:
    return Path(path).read_text(encoding='utf-8')


# ---- 曲面 ----

def parse_surface(text: str, source: str = "surface") -> IdealTriangulation:
    """`triangles <m>`，然后 `edge <name> <j>.<a> <j'>.<a'>` 或 `edge <name> <j>.<a> @boundary`"""
    m: Optional[int] = None
    edges: List[EdgeRecord] = []
    last_line = 0
    for line_no, tokens in _lines(text):
        last_line = line_no
        keyword = tokens[0]
        if keyword == "triangles":
            if len(tokens) != 2 or m is not None:
                raise TraceInputError("`triangles` 只能出现一次且只带一个参数", line_no, source)
            m = _int(tokens[1], "三角形个数", line_no, source)
        elif keyword == "edge":
            if m is None:
                raise TraceInputError("`edge` 之前必须先给出 `triangles`", line_no, source)
            if len(tokens) != 4:
                raise TraceInputError("格式应为 `edge <name> <j>.<a> <j'>.<a'|@boundary>`", line_no, source)
            slots = [_parse_slot(tokens[2], line_no, source)]
            if tokens[3] != "@boundary":
                slots.append(_parse_slot(tokens[3], line_no, source))
            edges.append(EdgeRecord(tokens[1], tuple(slots)))
        else:
            raise TraceInputError(f"未知的关键字: {keyword}", line_no, source)
    if m is None:
        raise TraceInputError("缺少 `triangles` 行", last_line or None, source)
    try:
        return IdealTriangulation(m, edges)
    except TraceInputError as e:
        raise TraceInputError(e.message, e.line_no, source)


def _parse_slot(token: str, line_no: int, source: str) -> Slot:
    match = _SLOT.match(token)
    if not match:
        raise TraceInputError(f"槽的格式应为 <面>.<边>: {token!r}", line_no, source)
    return Slot(int(match.group(1)), int(match.group(2)))


def render_surface(tri: IdealTriangulation) -> str:
    lines = [f"triangles {tri.m}"]
    for edge in tri.edges:
        slots = [f"{s.face}.{s.pos}" for s in edge.slots]
        if len(slots) == 1:
            slots.append("@boundary")
        lines.append(f"edge {edge.name} {' '.join(slots)}")
    return "\n".join(lines) + "\n"


# ---- 缠结字 ----

def parse_tangle_word(text, n0: int, source: str = "word", line_no: Optional[int] = None) -> TangleWord:
    """`id`、`x+ <p>`、`x- <p>`、`cup <p>`、`cap <p>`，以空白分隔"""
    tokens = text.split() if isinstance(text, str) else list(text)
    slices: List[Slice] = []
    index = 0
    while index < len(tokens):
        token = tokens[index]
        if token not in _SLICE_TOKENS:
            raise TraceInputError(f"未知的缠结片: {token!r}", line_no, source)
        kind = _SLICE_TOKENS[token]
        if kind == SliceKind.IDENTITY:
            slices.append(Slice(kind))
            index += 1
            continue
        if index + 1 >= len(tokens):
            raise TraceInputError(f"`{token}` 缺少位置参数", line_no, source)
        slices.append(Slice(kind, _int(tokens[index + 1], "位置", line_no, source)))
        index += 2
    try:
        return TangleWord(n0, tuple(slices))
    except TraceInputError as e:
        raise TraceInputError(e.message, line_no, source)


def parse_signs(text: str) -> Signs:
    """`+-+`、`+ - +` 或空串"""
    compact = re.sub(r'[\s,]', '', text)
    if any(c not in '+-' for c in compact):
        raise TraceInputError(f"状态只能由 + 和 - 组成: {text!r}")
    return tuple(1 if c == '+' else -1 for c in compact)


def render_signs(signs: Signs) -> str:
    return "".join('+' if s > 0 else '-' for s in signs)


# ---- 链环 ----

def parse_link(text: str, tri: IdealTriangulation, source: str = "link") -> GoodPositionLink:
    """`arc <face> <slot_in> <slot_out> <elev>` 与 `tangle <edge> <word>`；未给出的边取恒等字"""
    arcs: List[TriangleArc] = []
    pending: List[Tuple[int, int, List[str]]] = []
    for line_no, tokens in _lines(text):
        keyword = tokens[0]
        if keyword == "arc":
            if len(tokens) != 5:
                raise TraceInputError("格式应为 `arc <face> <slot_in> <slot_out> <elev>`", line_no, source)
            face, slot_in, slot_out, elev = (_int(t, "弧参数", line_no, source) for t in tokens[1:])
            if not 1 <= face <= tri.m:
                raise TraceInputError(f"面 {face} 超出范围 1..{tri.m}", line_no, source)
            try:
                arcs.append(TriangleArc(face, slot_in, slot_out, elev))
            except TraceInputError as e:
                raise TraceInputError(e.message, line_no, source)
        elif keyword == "tangle":
            if len(tokens) < 2:
                raise TraceInputError("格式应为 `tangle <edge> <word>`", line_no, source)
            try:
                edge = tri.edge_index(tokens[1])
            except TraceInputError as e:
                raise TraceInputError(e.message, line_no, source)
            if any(edge == p[0] for p in pending):
                raise TraceInputError(f"边 {tokens[1]} 的缠结字重复", line_no, source)
            pending.append((edge, line_no, tokens[2:]))
        else:
            raise TraceInputError(f"未知的关键字: {keyword}", line_no, source)

    # 墙 0 的端点数由弧决定
    per_face: Dict[int, List[TriangleArc]] = {}
    for arc in arcs:
        per_face.setdefault(arc.face, []).append(arc)
    words = {}
    for edge, line_no, tokens in pending:
        wall0 = tri.edge(edge).slots[0]
        n0 = sum(1 for arc in per_face.get(wall0.face, []) if arc.touches(wall0.pos))
        words[edge] = parse_tangle_word(tokens, n0, source, line_no)
    try:
        return GoodPositionLink.build(tri, arcs, words)
    except TraceInputError as e:
        raise TraceInputError(e.message, None, source)


def render_link(link: GoodPositionLink) -> str:
    lines = [f"arc {arc.face} {arc.slot_in} {arc.slot_out} {arc.elevation}" for arc in link.all_arcs()]
    for index, word in enumerate(link.tangles):
        if not word.is_trivial():
            lines.append(f"tangle {link.tri.edge(index).name} {word.render()}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---- 状态 ----

def parse_state(text: str, tri: IdealTriangulation, source: str = "state") -> BoundaryState:
    """`state <edge> <index-from-bottom> <+|->`"""
    signs: Dict[Tuple[int, int], int] = {}
    for line_no, tokens in _lines(text):
        if tokens[0] != "state" or len(tokens) != 4:
            raise TraceInputError("格式应为 `state <edge> <index> <+|->`", line_no, source)
        try:
            edge = tri.edge_index(tokens[1])
        except TraceInputError as e:
            raise TraceInputError(e.message, line_no, source)
        if tri.edge(edge).is_interior:
            raise TraceInputError(f"边 {tokens[1]} 不是边界边", line_no, source)
        rank = _int(tokens[2], "名次", line_no, source)
        if tokens[3] not in ("+", "-"):
            raise TraceInputError(f"状态只能为 + 或 -: {tokens[3]!r}", line_no, source)
        if (edge, rank) in signs:
            raise TraceInputError(f"边 {tokens[1]} 第 {rank} 点的状态重复", line_no, source)
        signs[(edge, rank)] = 1 if tokens[3] == "+" else -1
    return BoundaryState(signs)


def render_state(state: BoundaryState, tri: IdealTriangulation) -> str:
    return "".join(f"state {tri.edge(edge).name} {rank} {'+' if s > 0 else '-'}\n"
                   for (edge, rank), s in state.items())


def describe_state(state: BoundaryState, tri: IdealTriangulation) -> str:
    return " ".join(f"{tri.edge(edge).name}.{rank}{'+' if s > 0 else '-'}"
                    for (edge, rank), s in state.items()) or "∅"


# ---- 曲线与剪切坐标 ----

def parse_curve(text: str, tri: IdealTriangulation, source: str = "curve") -> List[TurnStep]:
    """`step <edge> <L|R|U> <t>`"""
    steps = []
    kinds = {kind.value: kind for kind in TurnKind}
    for line_no, tokens in _lines(text):
        if tokens[0] != "step" or len(tokens) != 4:
            raise TraceInputError("格式应为 `step <edge> <L|R|U> <t>`", line_no, source)
        try:
            edge = tri.edge_index(tokens[1])
        except TraceInputError as e:
            raise TraceInputError(e.message, line_no, source)
        if tokens[2] not in kinds:
            raise TraceInputError(f"转向只能为 L、R 或 U: {tokens[2]!r}", line_no, source)
        steps.append(TurnStep(edge, kinds[tokens[2]], _int(tokens[3], "转圈数", line_no, source)))
    if not steps:
        raise TraceInputError("曲线文件中没有 `step` 行", None, source)
    return steps


def parse_shears(text: str, tri: IdealTriangulation, source: str = "shear") -> Dict[int, float]:
    """`shear <edge> <positive decimal>`"""
    shears: Dict[int, float] = {}
    for line_no, tokens in _lines(text):
        if tokens[0] != "shear" or len(tokens) != 3:
            raise TraceInputError("格式应为 `shear <edge> <value>`", line_no, source)
        try:
            edge = tri.edge_index(tokens[1])
        except TraceInputError as e:
            raise TraceInputError(e.message, line_no, source)
        try:
            value = float(tokens[2])
        except ValueError:
            raise TraceInputError(f"剪切坐标必须为数: {tokens[2]!r}", line_no, source)
        if value <= 0:
            raise TraceInputError(f"剪切坐标必须为正: {tokens[2]}", line_no, source)
        shears[edge] = value
    return shears


def parse_complex(text: str) -> complex:
    """`<a>+<b>i` 形式的复数，如 `0.3+1.2i`"""
    try:
        return complex(text.strip().replace("i", "j").replace(" ", ""))
    except ValueError:
        raise TraceInputError(f"无法解析复数: {text!r}")


class TraceFileValidator:
    """文件验证器：返回 (是否有效, 说明)"""

    @staticmethod
    def validate_surface(text: str) -> Tuple[bool, str]:
        try:
            tri = parse_surface(text)
            return True, f"曲面有效: {tri.m} 个三角形, {tri.n} 条边"
        except TraceInputError as e:
            return False, str(e)

    @staticmethod
    def validate_link(text: str, tri: IdealTriangulation) -> Tuple[bool, str]:
        try:
            link = parse_link(text, tri)
            return True, f"链环有效: {link.side_point_count()} 个三角形边点"
        except TraceInputError as e:
            return False, str(e)

    @staticmethod
    def validate_state(text: str, link: GoodPositionLink) -> Tuple[bool, str]:
        try:
            state = parse_state(text, link.tri)
            state.check_total(link)
            return True, "状态有效"
        except TraceInputError as e:
            return False, str(e)

    @staticmethod
    def validate_element(text: str, tri: IdealTriangulation) -> Tuple[bool, str]:
        """检查量子环面元素的规范文本可以解析且重新输出不变"""
        try:
            element = parse_element(text, tri.edge_comm)
        except TraceInputError as e:
            return False, str(e)
        if render_element(element) != text.strip():
            return False, "文本不是规范形式"
        return True, "规范形式有效"


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
    'TraceFileValidator',
]
