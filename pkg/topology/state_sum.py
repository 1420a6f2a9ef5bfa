#!/usr/bin/env python3
"""
量子迹计算系统 - 状态和
好位置链环的编码、相容状态的枚举与收缩、叠放，以及首项交数向量

三角形边上的每个弧端点是一个状态变量 (面, 槽, k)，k 是该槽上按高度从低到高的名次。
双角 B_i 的墙 0 / 墙 1 上第 k 个点接到对应槽的第 k 个弧端点。
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from algebra.laurent import CommutativeLaurent
from algebra.omega_ring import ONE, OmegaPoly
from algebra.quantum_torus import CommutationMatrix, QTElement, QTMonomial
from config_manager import get_compute_config
from errors import ComputationLimitError, TraceInputError
from topology.biangle import BiangleEvaluator, Signs, SliceKind, TangleWord, all_signs, default_evaluator
from topology.surface import IdealTriangulation, Slot, tensor_to_edge
from topology.triangle import TriangleArc, allowed_sign_pairs, corner_arc_trace

logger = logging.getLogger('StateSum')

SidePoint = Tuple[int, int, int]   # (面, 槽, 名次)
Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class GoodPositionLink:
    """
    好位置的带状态框架链环

    face_arcs[j-1] 是面 j 中按高度排序的弧；tangles[i] 是边 i 对应双角中的缠结字。
    边界边的墙 1 端点即链环的边界点。
    """
    tri: IdealTriangulation
    face_arcs: Tuple[Tuple[TriangleArc, ...], ...]
    tangles: Tuple[TangleWord, ...]

    def __post_init__(self):
        if len(self.face_arcs) != self.tri.m:
            raise TraceInputError(f"面数 {len(self.face_arcs)} 与剖分的 {self.tri.m} 不符")
        if len(self.tangles) != self.tri.n:
            raise TraceInputError(f"缠结字个数 {len(self.tangles)} 与边数 {self.tri.n} 不符")
        for face, arcs in enumerate(self.face_arcs, start=1):
            elevations = [arc.elevation for arc in arcs]
            if any(arc.face != face for arc in arcs):
                raise TraceInputError(f"面 {face} 的弧列表中混入了其他面的弧")
            if len(set(elevations)) != len(elevations):
                raise TraceInputError(f"面 {face} 中的弧高度重复: {elevations}")
            if elevations != sorted(elevations):
                raise TraceInputError(f"面 {face} 的弧未按高度排序")
        for index, edge in enumerate(self.tri.edges):
            word = self.tangles[index]
            if word.n0 != self.end_count(edge.slots[0]):
                raise TraceInputError(
                    f"边 {edge.name} 墙0端点数 {word.n0} 与槽 {edge.slots[0]} 上的弧端点数 "
                    f"{self.end_count(edge.slots[0])} 不符")
            if edge.is_interior and word.n1 != self.end_count(edge.slots[1]):
                raise TraceInputError(
                    f"边 {edge.name} 墙1端点数 {word.n1} 与槽 {edge.slots[1]} 上的弧端点数 "
                    f"{self.end_count(edge.slots[1])} 不符")

    @classmethod
    def build(cls, tri: IdealTriangulation, arcs: Iterable[TriangleArc],
              tangles: Optional[Mapping[int, TangleWord]] = None) -> 'GoodPositionLink':
        """按面分组排序；未给出缠结字的边取恒等字"""
        per_face: List[List[TriangleArc]] = [[] for _ in tri.faces]
        for arc in arcs:
            if not 1 <= arc.face <= tri.m:
                raise TraceInputError(f"弧所在的面 {arc.face} 超出范围")
            per_face[arc.face - 1].append(arc)
        face_arcs = tuple(tuple(sorted(arcs_, key=lambda a: a.elevation)) for arcs_ in per_face)
        tangles = dict(tangles or {})
        words = []
        for index, edge in enumerate(tri.edges):
            if index in tangles:
                words.append(tangles[index])
                continue
            count = sum(1 for arc in face_arcs[edge.slots[0].face - 1] if arc.touches(edge.slots[0].pos))
            words.append(TangleWord.identity(count))
        return cls(tri, face_arcs, tuple(words))

    @classmethod
    def empty(cls, tri: IdealTriangulation) -> 'GoodPositionLink':
        return cls.build(tri, ())

    # ---- 查询 ----

    def arcs(self, face: int) -> Tuple[TriangleArc, ...]:
        return self.face_arcs[face - 1]

    def all_arcs(self) -> Iterator[TriangleArc]:
        for arcs in self.face_arcs:
            yield from arcs

    def slot_ends(self, slot: Slot) -> List[TriangleArc]:
        """槽上的弧端点，按高度从低到高"""
        return [arc for arc in self.arcs(slot[0]) if arc.touches(slot[1])]

    def end_count(self, slot: Slot) -> int:
        return len(self.slot_ends(slot))

    def end_rank(self, arc: TriangleArc, pos: int) -> int:
        """弧在槽 pos 上的名次（1 起）"""
        return self.slot_ends(Slot(arc.face, pos)).index(arc) + 1

    def arc_at(self, slot: Slot, rank: int) -> TriangleArc:
        ends = self.slot_ends(slot)
        if not 1 <= rank <= len(ends):
            raise TraceInputError(f"槽 {Slot(*slot)} 上没有第 {rank} 个端点")
        return ends[rank - 1]

    def side_point_count(self) -> int:
        return 2 * sum(len(arcs) for arcs in self.face_arcs)

    def boundary_point_count(self, edge: int) -> int:
        if self.tri.edge(edge).is_interior:
            return 0
        return self.tangles[edge].n1

    def with_parts(self, face_arcs: Optional[Mapping[int, Sequence[TriangleArc]]] = None,
                   tangles: Optional[Mapping[int, TangleWord]] = None) -> 'GoodPositionLink':
        """替换部分面与缠结字，返回新链环"""
        arcs = list(self.face_arcs)
        for face, new in (face_arcs or {}).items():
            arcs[face - 1] = tuple(new)
        words = list(self.tangles)
        for edge, word in (tangles or {}).items():
            words[edge] = word
        return GoodPositionLink(self.tri, tuple(arcs), tuple(words))

    def is_simple(self) -> bool:
        """所有双角中都只有平行线"""
        return all(word.is_trivial() for word in self.tangles)

    def describe(self) -> Dict[str, object]:
        return {
            'arcs': sum(len(arcs) for arcs in self.face_arcs),
            'side_points': self.side_point_count(),
            'crossings': sum(word.crossing_count() for word in self.tangles),
            'boundary_points': {self.tri.edge(i).name: self.boundary_point_count(i)
                                for i in self.tri.boundary_edges()},
        }


class BoundaryState:
    """边界点上的状态：(边下标, 从下往上的名次) → ±1"""

    def __init__(self, signs: Optional[Mapping[Tuple[int, int], int]] = None):
        self._signs: Dict[Tuple[int, int], int] = {}
        for (edge, rank), sign in (signs or {}).items():
            if sign not in (1, -1):
                raise TraceInputError(f"状态只能为 + 或 -: 边 {edge} 第 {rank} 点")
            self._signs[(int(edge), int(rank))] = int(sign)

    @classmethod
    def from_sequences(cls, sequences: Mapping[int, Sequence[int]]) -> 'BoundaryState':
        return cls({(edge, k): s for edge, seq in sequences.items() for k, s in enumerate(seq, start=1)})

    def signs_on(self, edge: int, count: int) -> Signs:
        missing = [k for k in range(1, count + 1) if (edge, k) not in self._signs]
        if missing:
            raise TraceInputError(f"边 {edge} 的边界点 {missing} 缺少状态")
        return tuple(self._signs[(edge, k)] for k in range(1, count + 1))

    def items(self) -> List[Tuple[Tuple[int, int], int]]:
        return sorted(self._signs.items())

    def check_total(self, link: GoodPositionLink):
        """状态必须恰好覆盖链环的全部边界点"""
        expected = {(e, k) for e in link.tri.boundary_edges()
                    for k in range(1, link.boundary_point_count(e) + 1)}
        extra = set(self._signs) - expected
        if extra:
            raise TraceInputError(f"状态给出了不存在的边界点: {sorted(extra)}")
        missing = expected - set(self._signs)
        if missing:
            raise TraceInputError(f"状态缺少边界点: {sorted(missing)}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundaryState):
            return NotImplemented
        return self._signs == other._signs

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def render(self) -> str:
        return " ".join(f"{edge}.{k}{'+' if s > 0 else '-'}" for (edge, k), s in self.items()) or "∅"

    def __repr__(self) -> str:
        return f"BoundaryState({self.render()})"


class BiangleFactor:
    """一个双角缠结的稀疏权重表 (s0, s1) → 标量，按需计算并缓存"""

    def __init__(self, word: TangleWord, evaluator: Optional[BiangleEvaluator] = None):
        self.word = word
        self.evaluator = evaluator or default_evaluator()
        self._rows: Dict[Signs, Dict[Signs, OmegaPoly]] = {}

    def row(self, s0: Signs) -> Dict[Signs, OmegaPoly]:
        if s0 not in self._rows:
            self._rows[s0] = self.evaluator.transfer(self.word, s0)
        return self._rows[s0]

    def weight(self, s0: Signs, s1: Signs) -> Optional[OmegaPoly]:
        """零权重返回 None"""
        return self.row(tuple(s0)).get(tuple(s1))

    def allows(self, s0: Signs) -> bool:
        return bool(self.row(tuple(s0)))


@dataclass(frozen=True)
class Piece:
    """状态和中的一个因子：若干状态变量 + 各符号组合下的单项式（只列非零项）"""
    variables: Tuple[SidePoint, ...]
    values: Tuple[Tuple[Signs, QTMonomial], ...]


@dataclass
class BiangleSlot:
    """状态和中的一个双角：墙 0 / 墙 1 上的变量，边界边的墙 1 为固定状态"""
    edge: int
    factor: BiangleFactor
    wall0: Tuple[SidePoint, ...]
    wall1: Tuple[SidePoint, ...] = ()
    fixed1: Optional[Signs] = None
    variables: frozenset = field(init=False)

    def __post_init__(self):
        self.variables = frozenset(self.wall0) | frozenset(self.wall1)

    def weight(self, assignment: Mapping[SidePoint, int]) -> Optional[OmegaPoly]:
        s0 = tuple(assignment[v] for v in self.wall0)
        s1 = self.fixed1 if self.fixed1 is not None else tuple(assignment[v] for v in self.wall1)
        return self.factor.weight(s0, s1)


def arc_piece(link: GoodPositionLink, arc: TriangleArc, comm: CommutationMatrix) -> Piece:
    variables = ((arc.face, arc.slot_in, link.end_rank(arc, arc.slot_in)),
                 (arc.face, arc.slot_out, link.end_rank(arc, arc.slot_out)))
    values = tuple((pair, corner_arc_trace(arc, pair[0], pair[1], comm)) for pair in allowed_sign_pairs(arc))
    return Piece(variables, values)


def link_pieces(link: GoodPositionLink, comm: CommutationMatrix,
                faces: Optional[Iterable[int]] = None) -> List[Piece]:
    """按 (面, 高度) 顺序列出弧因子"""
    chosen = link.tri.faces if faces is None else sorted(faces)
    return [arc_piece(link, arc, comm) for face in chosen for arc in link.arcs(face)]


def wall_points(link: GoodPositionLink, slot: Slot) -> Tuple[SidePoint, ...]:
    return tuple((slot[0], slot[1], k) for k in range(1, link.end_count(slot) + 1))


def link_biangles(link: GoodPositionLink, state: BoundaryState,
                  evaluator: Optional[BiangleEvaluator] = None,
                  skip: Iterable[int] = ()) -> List[BiangleSlot]:
    skipped = set(skip)
    biangles = []
    for index, edge in enumerate(link.tri.edges):
        if index in skipped:
            continue
        factor = BiangleFactor(link.tangles[index], evaluator)
        wall0 = wall_points(link, edge.slots[0])
        if edge.is_interior:
            biangles.append(BiangleSlot(index, factor, wall0, wall_points(link, edge.slots[1])))
        else:
            fixed = state.signs_on(index, link.tangles[index].n1)
            biangles.append(BiangleSlot(index, factor, wall0, (), fixed))
    return biangles


def contract(pieces: Sequence[Piece], biangles: Sequence[BiangleSlot],
             comm: CommutationMatrix) -> Dict[Exponents, OmegaPoly]:
    """
    稀疏收缩：依次加入因子，双角的变量全部确定后立即乘上其权重并把变量移出键

    键为 (未完成双角上已赋值的变量, 指数向量)，值为正规序系数。
    """
    owner: Dict[SidePoint, BiangleSlot] = {}
    for biangle in biangles:
        for variable in biangle.variables:
            owner[variable] = biangle

    start = ONE
    for biangle in biangles:
        if not biangle.variables:
            value = biangle.weight({})
            if value is None:
                return {}
            start = start * value

    zero_exps = (0,) * comm.n
    states: Dict[Tuple[Tuple[Tuple[SidePoint, int], ...], Exponents], OmegaPoly] = {((), zero_exps): start}
    for piece in pieces:
        touched = {id(owner[v]): owner[v] for v in piece.variables if v in owner}
        nxt: Dict[Tuple[Tuple[Tuple[SidePoint, int], ...], Exponents], OmegaPoly] = {}
        for (open_items, exps), coeff in states.items():
            for signs, mono in piece.values:
                assignment = dict(open_items)
                assignment.update(zip(piece.variables, signs))
                value = (coeff * mono.coeff).shift(2 * comm.reorder_exponent(exps, mono.exps))
                alive = True
                for biangle in touched.values():
                    if biangle.variables.issubset(assignment):
                        weight = biangle.weight(assignment)
                        if weight is None:
                            alive = False
                            break
                        value = value * weight
                        for v in biangle.variables:
                            del assignment[v]
                    elif biangle.wall1 and all(v in assignment for v in biangle.wall0):
                        if not biangle.factor.allows(tuple(assignment[v] for v in biangle.wall0)):
                            alive = False
                            break
                if not alive or value.is_zero():
                    continue
                key = (tuple(sorted(assignment.items())),
                       tuple(a + b for a, b in zip(exps, mono.exps)))
                nxt[key] = nxt[key] + value if key in nxt else value
        states = {k: v for k, v in nxt.items() if not v.is_zero()}
        logger.debug(f"收缩: 因子 {piece.variables} 后剩 {len(states)} 个部分状态")
        if not states:
            return {}

    result: Dict[Exponents, OmegaPoly] = {}
    for (open_items, exps), coeff in states.items():
        if open_items:
            raise TraceInputError(f"有状态变量没有归属的双角: {open_items}")
        result[exps] = result[exps] + coeff if exps in result else coeff
    return result


def naive_sum(pieces: Sequence[Piece], biangles: Sequence[BiangleSlot], comm: CommutationMatrix,
              workers: int = 1) -> Dict[Exponents, OmegaPoly]:
    """逐个枚举全部 2^P 个符号赋值"""
    variables = [v for piece in pieces for v in piece.variables]
    tables: List[Dict[Signs, List[QTMonomial]]] = []
    for piece in pieces:
        table: Dict[Signs, List[QTMonomial]] = {}
        for signs, mono in piece.values:
            table.setdefault(tuple(signs), []).append(mono)
        tables.append(table)

    def run(prefix: Signs) -> Dict[Exponents, OmegaPoly]:
        partial: Dict[Exponents, OmegaPoly] = {}
        for rest in all_signs(len(variables) - len(prefix)):
            signs = prefix + rest
            assignment = dict(zip(variables, signs))
            scalar = ONE
            for biangle in biangles:
                weight = biangle.weight(assignment)
                if weight is None:
                    break
                scalar = scalar * weight
            else:
                products = [(scalar, (0,) * comm.n)]
                cursor = 0
                for piece, table in zip(pieces, tables):
                    local = signs[cursor:cursor + len(piece.variables)]
                    cursor += len(piece.variables)
                    products = [((coeff * mono.coeff).shift(2 * comm.reorder_exponent(exps, mono.exps)),
                                 tuple(a + b for a, b in zip(exps, mono.exps)))
                                for coeff, exps in products for mono in table.get(local, [])]
                    if not products:
                        break
                for coeff, exps in products:
                    partial[exps] = partial[exps] + coeff if exps in partial else coeff
        return {e: c for e, c in partial.items() if not c.is_zero()}

    split = min(len(variables), max(0, workers - 1).bit_length())
    prefixes = list(all_signs(split))
    if workers > 1 and len(prefixes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(run, prefixes))
    else:
        parts = [run(prefix) for prefix in prefixes]

    result: Dict[Exponents, OmegaPoly] = {}
    for part in parts:
        for exps, coeff in part.items():
            result[exps] = result[exps] + coeff if exps in result else coeff
    return result


def check_side_points(count: int, max_side_points: Optional[int] = None):
    limit = get_compute_config().max_side_points if max_side_points is None else max_side_points
    if count > limit:
        raise ComputationLimitError(f"三角形边上的端点数 {count} 超过上限 {limit}（可用 --max-side-points 放宽）")


def triangle_trace(link: GoodPositionLink, state: Optional[BoundaryState] = None,
                   method: str = "contract", max_side_points: Optional[int] = None,
                   evaluator: Optional[BiangleEvaluator] = None) -> QTElement:
    """状态和在三角形张量代数 ⊗_j Z^ω_{T_j} 中的值"""
    state = state or BoundaryState()
    state.check_total(link)
    check_side_points(link.side_point_count(), max_side_points)
    comm = link.tri.triangle_comm
    pieces = link_pieces(link, comm)
    biangles = link_biangles(link, state, evaluator)
    if method == "contract":
        terms = contract(pieces, biangles, comm)
    elif method == "naive":
        terms = naive_sum(pieces, biangles, comm, get_compute_config().parallel_workers)
    else:
        raise ValueError(f"未知的状态和方法: {method}")
    return QTElement(comm, terms)


def quantum_trace(link: GoodPositionLink, state: Optional[BoundaryState] = None,
                  method: str = "contract", max_side_points: Optional[int] = None,
                  evaluator: Optional[BiangleEvaluator] = None) -> QTElement:
    """量子迹 Tr^ω_λ(K, s)，以边代数的 Weyl 基表示"""
    tri_value = triangle_trace(link, state, method, max_side_points, evaluator)
    result = tensor_to_edge(link.tri, tri_value)
    logger.debug(f"量子迹: {len(result)} 项 ({method})")
    return result


def all_boundary_states(link: GoodPositionLink) -> Iterator[BoundaryState]:
    """按边下标、名次的字典序枚举全部边界状态（+ 在前）"""
    points = [(e, k) for e in link.tri.boundary_edges()
              for k in range(1, link.boundary_point_count(e) + 1)]
    for signs in all_signs(len(points)):
        yield BoundaryState(dict(zip(points, signs)))


def trace_at_unity(link: GoodPositionLink, state: Optional[BoundaryState] = None,
                   **kwargs) -> CommutativeLaurent:
    """ω = 1 时的经典迹"""
    return quantum_trace(link, state, **kwargs).specialize_commutative()


def superpose(k1: GoodPositionLink, k2: GoodPositionLink) -> GoodPositionLink:
    """叠放 K1K2：k1 整体在下，k2 的高度整体上移"""
    if not k1.tri.same_as(k2.tri):
        raise TraceInputError("叠放的两个链环必须在同一个三角剖分上")
    face_arcs = []
    for lower, upper in zip(k1.face_arcs, k2.face_arcs):
        merged = list(lower) + list(upper)
        face_arcs.append(tuple(arc.with_elevation(rank) for rank, arc in enumerate(merged)))
    tangles = tuple(w1.stacked_below(w2) for w1, w2 in zip(k1.tangles, k2.tangles))
    return GoodPositionLink(k1.tri, tuple(face_arcs), tangles)


def superpose_states(k1: GoodPositionLink, s1: BoundaryState, s2: BoundaryState) -> BoundaryState:
    """叠放后的边界状态：k2 的边界点名次加上 k1 在该边上的点数"""
    combined = dict(s1.items())
    for (edge, rank), sign in s2.items():
        combined[(edge, rank + k1.boundary_point_count(edge))] = sign
    return BoundaryState(combined)


def leading_intersection_vector(link: GoodPositionLink) -> Tuple[int, ...]:
    """简单多重曲线与各边的交点数"""
    for index, word in enumerate(link.tangles):
        if any(s.kind != SliceKind.IDENTITY for s in word.slices):
            raise TraceInputError(f"non-simple link: 边 {link.tri.edge(index).name} 的缠结字为 {word.render()}")
    return tuple(word.n0 for word in link.tangles)
