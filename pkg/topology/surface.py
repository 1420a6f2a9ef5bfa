#!/usr/bin/env python3
"""
量子迹计算系统 - 理想三角剖分
负责面与边槽、边粘合、σ 矩阵、平衡单项式、边代数与三角形张量代数之间的换基，以及对角交换
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from algebra.omega_ring import OmegaPoly
from algebra.quantum_torus import CommutationMatrix, QTElement, QTMonomial, weyl_monomial
from errors import AlgebraError, TraceInputError

logger = logging.getLogger('Surface')


class Slot(NamedTuple):
    """面 face 的第 pos 条边（pos ∈ {1,2,3}，顺时针）"""
    face: int
    pos: int

    def rotated(self, k: int = 1) -> 'Slot':
        return Slot(self.face, (self.pos - 1 + k) % 3 + 1)

    def __str__(self) -> str:
        return f"({self.face},{self.pos})"


def corner_first_role(first: int, second: int) -> int:
    """同一三角形两条边所夹角的第一角色边：顺时针相邻 (a, a+1) 中的 a"""
    if first == second:
        raise TraceInputError(f"角需要两条不同的边: {first}")
    return first if second == first % 3 + 1 else second


@dataclass(frozen=True)
class EdgeRecord:
    """一条边：内部边两个槽，边界边一个槽；槽的顺序决定双角的墙 0/墙 1"""
    name: str
    slots: Tuple[Slot, ...]

    @property
    def is_interior(self) -> bool:
        return len(self.slots) == 2

    @property
    def is_self_glued(self) -> bool:
        return self.is_interior and self.slots[0].face == self.slots[1].face


class IdealTriangulation:
    """m 个三角形的理想三角剖分"""

    def __init__(self, m: int, edges: Sequence[EdgeRecord]):
        if m < 0:
            raise TraceInputError(f"三角形个数必须非负: {m}")
        self.m = m
        self.edges: Tuple[EdgeRecord, ...] = tuple(edges)
        self._slot_edge: Dict[Slot, int] = {}
        self._name_index: Dict[str, int] = {}

        for index, edge in enumerate(self.edges):
            if edge.name in self._name_index:
                raise TraceInputError(f"边名重复: {edge.name}")
            self._name_index[edge.name] = index
            if len(edge.slots) not in (1, 2):
                raise TraceInputError(f"边 {edge.name} 必须有一个或两个槽")
            for slot in edge.slots:
                if not (1 <= slot.face <= m and 1 <= slot.pos <= 3):
                    raise TraceInputError(f"slot {slot} 超出范围")
                if slot in self._slot_edge:
                    raise TraceInputError(f"slot {slot} glued twice")
                self._slot_edge[slot] = index

        for face in range(1, m + 1):
            for pos in (1, 2, 3):
                if Slot(face, pos) not in self._slot_edge:
                    raise TraceInputError(f"slot {Slot(face, pos)} 未分配到任何边")

        self._triangle_comm: Optional[CommutationMatrix] = None
        self._edge_comm: Optional[CommutationMatrix] = None

    # ---- 基本查询 ----

    @property
    def n(self) -> int:
        return len(self.edges)

    @property
    def faces(self) -> range:
        return range(1, self.m + 1)

    def edge(self, index: int) -> EdgeRecord:
        return self.edges[index]

    def edge_index(self, name: str) -> int:
        if name not in self._name_index:
            raise TraceInputError(f"未知的边: {name}")
        return self._name_index[name]

    def edge_of(self, slot: Slot) -> int:
        return self._slot_edge[Slot(*slot)]

    def wall_of(self, slot: Slot) -> int:
        """槽所在的双角墙编号"""
        return self.edges[self.edge_of(slot)].slots.index(Slot(*slot))

    def partner(self, slot: Slot) -> Optional[Slot]:
        edge = self.edges[self.edge_of(slot)]
        if not edge.is_interior:
            return None
        return edge.slots[1] if edge.slots[0] == slot else edge.slots[0]

    @staticmethod
    def slot_index(slot: Slot) -> int:
        """三角形张量代数中的生成元下标"""
        return 3 * (slot.face - 1) + (slot.pos - 1)

    def interior_edges(self) -> List[int]:
        return [i for i, e in enumerate(self.edges) if e.is_interior]

    def boundary_edges(self) -> List[int]:
        return [i for i, e in enumerate(self.edges) if not e.is_interior]

    def same_as(self, other: 'IdealTriangulation') -> bool:
        return self is other or (self.m == other.m and self.edges == other.edges)

    # ---- 交换矩阵 ----

    def incidence(self) -> np.ndarray:
        """n × 3m 关联矩阵 N，N[i, s] = 1 当槽 s 属于边 i"""
        matrix = np.zeros((self.n, 3 * self.m), dtype=np.int64)
        for index, edge in enumerate(self.edges):
            for slot in edge.slots:
                matrix[index, self.slot_index(slot)] += 1
        return matrix

    @property
    def triangle_comm(self) -> CommutationMatrix:
        if self._triangle_comm is None:
            self._triangle_comm = triangle_commutation(self)
        return self._triangle_comm

    @property
    def edge_comm(self) -> CommutationMatrix:
        if self._edge_comm is None:
            self._edge_comm = edge_commutation(self)
        return self._edge_comm

    def describe(self) -> Dict[str, object]:
        return {
            'triangles': self.m,
            'edges': [e.name for e in self.edges],
            'interior': [self.edges[i].name for i in self.interior_edges()],
            'boundary': [self.edges[i].name for i in self.boundary_edges()],
            'punctures': len(punctures(self)),
        }

    def __repr__(self) -> str:
        return f"IdealTriangulation(m={self.m}, n={self.n})"


def triangle_commutation(tri: IdealTriangulation) -> CommutationMatrix:
    """⊗_j Z^ω_{T_j} 的交换矩阵：每面内 a((j,1),(j,2)) = a((j,2),(j,3)) = a((j,3),(j,1)) = 1"""
    size = 3 * tri.m
    matrix = np.zeros((size, size), dtype=np.int64)
    for face in tri.faces:
        for pos in (1, 2, 3):
            here = tri.slot_index(Slot(face, pos))
            after = tri.slot_index(Slot(face, pos).rotated())
            matrix[here, after] = 1
            matrix[after, here] = -1
    return CommutationMatrix(matrix)


def sigma_matrix(tri: IdealTriangulation) -> np.ndarray:
    """
    σ_ij = Σ_{s∈i, s'∈j} a_T(s, s')

    返回 n×n 的 numpy int64 数组（反对称，元素在 [-2, 2] 内）；
    需要 CommutationMatrix 时用 edge_commutation 或 tri.edge_comm。
    """
    incidence = tri.incidence()
    return incidence @ triangle_commutation(tri).matrix @ incidence.T


def edge_commutation(tri: IdealTriangulation) -> CommutationMatrix:
    return CommutationMatrix(sigma_matrix(tri))


def punctures(tri: IdealTriangulation) -> List[List[Tuple[int, int]]]:
    """
    角的轨道（即顶点/刺穿点）

    角 c(j,a) 夹在 (j,a) 与 (j,a+1) 之间；(j,a+1) 粘到 (k,b) 时 c(j,a) 与 c(k,b) 同一顶点。
    """
    parent: Dict[Tuple[int, int], Tuple[int, int]] = {}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for face in tri.faces:
        for pos in (1, 2, 3):
            parent[(face, pos)] = (face, pos)
    for face in tri.faces:
        for pos in (1, 2, 3):
            glued = tri.partner(Slot(face, pos).rotated())
            if glued is not None:
                root_a, root_b = find((face, pos)), find((glued.face, glued.pos))
                if root_a != root_b:
                    parent[max(root_a, root_b)] = min(root_a, root_b)
    orbits: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for corner in sorted(parent):
        orbits.setdefault(find(corner), []).append(corner)
    return list(orbits.values())


def euler_characteristic(tri: IdealTriangulation) -> int:
    return len(punctures(tri)) - tri.n + tri.m


def slot_vector(tri: IdealTriangulation, k: Sequence[int]) -> Tuple[int, ...]:
    """边指数向量在槽上的展开：内部边的两个槽取同一指数"""
    if len(k) != tri.n:
        raise AlgebraError(f"边指数向量长度 {len(k)} 与边数 {tri.n} 不符")
    return tuple(int(v) for v in np.asarray(k, dtype=np.int64) @ tri.incidence())


def balanced(tri: IdealTriangulation, k: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """每个面三条边的指数和为偶数时返回奇偶类 (k_i mod 2)，否则返回 None"""
    slots = slot_vector(tri, k)
    for face in tri.faces:
        start = 3 * (face - 1)
        if sum(slots[start:start + 3]) % 2:
            return None
    return tuple(int(v) % 2 for v in k)


def edge_embed(tri: IdealTriangulation, k: Sequence[int]) -> QTMonomial:
    """Weyl 边单项式 [Z_1^{k_1} … Z_n^{k_n}] 在三角形张量代数中的像"""
    return weyl_monomial(tri.triangle_comm, slot_vector(tri, k))


def tensor_to_edge(tri: IdealTriangulation, x: QTElement) -> QTElement:
    """把三角形张量代数中的元素写回边代数的 Weyl 基"""
    if x.comm.n != 3 * tri.m:
        raise AlgebraError(f"生成元数 {x.comm.n} 与 3m={3 * tri.m} 不符")
    weyl: Dict[Tuple[int, ...], OmegaPoly] = {}
    for exps, coeff in x.terms().items():
        k = []
        for edge in tri.edges:
            values = {exps[tri.slot_index(slot)] for slot in edge.slots}
            if len(values) != 1:
                raise AlgebraError(f"not in edge subalgebra: 边 {edge.name} 两侧指数 {sorted(values)} 不一致")
            k.append(values.pop())
        if balanced(tri, k) is None:
            raise AlgebraError(f"not balanced: 边指数 {tuple(k)}")
        image = edge_embed(tri, k)
        value = coeff.exact_divide(image.coeff)
        key = tuple(k)
        weyl[key] = weyl[key] + value if key in weyl else value
    return QTElement.from_weyl_terms(tri.edge_comm, weyl)


@dataclass(frozen=True)
class FlipSquare:
    """
    对角交换所在的正方形

    旧剖分: T1 = 面 j，λ1 在 (j,a)、λ5 在 (j,a+1)、λ2 在 (j,a+2)；
            T2 = 面 k，λ1 在 (k,b)、λ3 在 (k,b+1)、λ4 在 (k,b+2)。
    新剖分: T1' = 面 j，λ1' 在 (j,a)、λ2' 在 (j,a+1)、λ3' 在 (j,a+2)；
            T2' = 面 k，λ1' 在 (k,b)、λ4' 在 (k,b+1)、λ5' 在 (k,b+2)。
    """
    edge: int
    first: Slot
    second: Slot

    @property
    def face1(self) -> int:
        return self.first.face

    @property
    def face2(self) -> int:
        return self.second.face

    def old_slot(self, face_label: int, side_label: int) -> Slot:
        offsets = {1: {1: 0, 5: 1, 2: 2}, 2: {1: 0, 3: 1, 4: 2}}
        return self._slot(face_label, offsets, side_label)

    def new_slot(self, face_label: int, side_label: int) -> Slot:
        offsets = {1: {1: 0, 2: 1, 3: 2}, 2: {1: 0, 4: 1, 5: 2}}
        return self._slot(face_label, offsets, side_label)

    def _slot(self, face_label: int, offsets, side_label: int) -> Slot:
        base = self.first if face_label == 1 else self.second
        if side_label not in offsets[face_label]:
            raise ValueError(f"面 {face_label} 上没有边 λ{side_label}")
        return base.rotated(offsets[face_label][side_label])

    def old_label(self, slot: Slot) -> Tuple[int, int]:
        """旧剖分中槽的 (面标签, 边标签)"""
        for face_label, sides in ((1, (1, 2, 5)), (2, (1, 3, 4))):
            for side in sides:
                if self.old_slot(face_label, side) == slot:
                    return face_label, side
        raise ValueError(f"{slot} 不在正方形中")

    def old_face_of(self, side_label: int) -> int:
        return 1 if side_label in (2, 5) else 2

    def new_face_of(self, side_label: int) -> int:
        return 1 if side_label in (2, 3) else 2

    def slot_map(self) -> Dict[Slot, Slot]:
        """旧槽 → 新槽（外侧四条边换位，对角线不动）"""
        mapping = {self.first: self.first, self.second: self.second}
        for side in (2, 3, 4, 5):
            old = self.old_slot(self.old_face_of(side), side)
            mapping[old] = self.new_slot(self.new_face_of(side), side)
        return mapping


def flip_square(tri: IdealTriangulation, e: int) -> FlipSquare:
    edge = tri.edge(e)
    if not edge.is_interior:
        raise TraceInputError(f"boundary edge {edge.name} 不能做对角交换")
    if edge.is_self_glued:
        raise TraceInputError(f"self-folded configuration: 边 {edge.name} 两侧属于同一个面")
    return FlipSquare(e, edge.slots[0], edge.slots[1])


def flip(tri: IdealTriangulation, e: int) -> IdealTriangulation:
    """对角交换：边名与边序不变，槽按正方形的重新标记移动"""
    square = flip_square(tri, e)
    mapping = square.slot_map()
    edges = [EdgeRecord(edge.name, tuple(mapping.get(slot, slot) for slot in edge.slots))
             for edge in tri.edges]
    logger.debug(f"对角交换边 {tri.edge(e).name}: 面 {square.face1}, {square.face2}")
    return IdealTriangulation(tri.m, edges)
