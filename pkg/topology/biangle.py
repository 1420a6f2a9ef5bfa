#!/usr/bin/env python3
"""
量子迹计算系统 - 双角迹
双角中带状态框架缠结的标量迹 Tr_B：Kauffman 展开 + 无交叉闭式，以及逐片扫描的动态规划

约定: 缠结字从墙 0 扫到墙 1，位置从下往上 1 起编号。
cup(p) 在 p, p+1 处生出一对端点，cap(p) 把 p, p+1 接起来。
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from algebra.omega_ring import A, A_INV, ALPHA, BETA, LOOP_VALUE, ONE, ZERO, OmegaPoly
from config_manager import get_compute_config
from errors import ComputationLimitError, TraceInputError

logger = logging.getLogger('Biangle')

Signs = Tuple[int, ...]
Point = Tuple[int, int]   # (墙, 从下往上的位置)

# 每个求值器缓存的 (缠结字, 墙0状态) 条目上限，满了整体清空
TRANSFER_CACHE_SIZE = 4096


class SliceKind(Enum):
    """缠结字的基本片"""
    IDENTITY = "id"
    CROSS_OVER = "x+"     # 位置 p 进入的线从 p+1 进入的线上方穿过
    CROSS_UNDER = "x-"
    CUP = "cup"
    CAP = "cap"


@dataclass(frozen=True)
class Slice:
    kind: SliceKind
    position: int = 0

    def shifted(self, offset: int) -> 'Slice':
        if self.kind == SliceKind.IDENTITY:
            return self
        return Slice(self.kind, self.position + offset)

    def render(self) -> str:
        if self.kind == SliceKind.IDENTITY:
            return "id"
        return f"{self.kind.value} {self.position}"


def width_change(kind: SliceKind) -> int:
    return {SliceKind.CUP: 2, SliceKind.CAP: -2}.get(kind, 0)


@dataclass(frozen=True)
class TangleWord:
    """双角中的缠结：墙 0 上 n0 个端点 + 基本片序列"""
    n0: int
    slices: Tuple[Slice, ...] = ()

    def __post_init__(self):
        if self.n0 < 0:
            raise TraceInputError(f"墙0端点数必须非负: {self.n0}")
        width = self.n0
        for index, piece in enumerate(self.slices):
            p = piece.position
            if piece.kind in (SliceKind.CROSS_OVER, SliceKind.CROSS_UNDER, SliceKind.CAP):
                if not 1 <= p <= width - 1:
                    raise TraceInputError(
                        f"第{index + 1}片 {piece.render()} 位置无效（当前 {width} 条线）")
            elif piece.kind == SliceKind.CUP:
                if not 1 <= p <= width + 1:
                    raise TraceInputError(
                        f"第{index + 1}片 {piece.render()} 位置无效（当前 {width} 条线）")
            width += width_change(piece.kind)

    @classmethod
    def identity(cls, n: int) -> 'TangleWord':
        return cls(n, ())

    @classmethod
    def with_prefix(cls, prefix: Sequence[Slice], word: 'TangleWord') -> 'TangleWord':
        """在墙 0 一侧加片，n0 随之改变"""
        delta = sum(width_change(s.kind) for s in prefix)
        return cls(word.n0 - delta, tuple(prefix) + word.slices)

    def with_suffix(self, suffix: Sequence[Slice]) -> 'TangleWord':
        """在墙 1 一侧加片"""
        return TangleWord(self.n0, self.slices + tuple(suffix))

    @property
    def n1(self) -> int:
        return self.n0 + sum(width_change(s.kind) for s in self.slices)

    def crossing_count(self) -> int:
        return sum(1 for s in self.slices if s.kind in (SliceKind.CROSS_OVER, SliceKind.CROSS_UNDER))

    def is_trivial(self) -> bool:
        """只有 id 片"""
        return all(s.kind == SliceKind.IDENTITY for s in self.slices)

    def stacked_below(self, upper: 'TangleWord') -> 'TangleWord':
        """叠放：self 的线在下，upper 的线在上"""
        shifted = tuple(s.shifted(self.n1) for s in upper.slices)
        return TangleWord(self.n0 + upper.n0, self.slices + shifted)

    def render(self) -> str:
        return " ".join(s.render() for s in self.slices) or "id"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class StatedTangle:
    """带状态的缠结：s0 为墙 0 上从下往上的符号，s1 为墙 1 上的符号"""
    word: TangleWord
    s0: Signs
    s1: Signs

    def __post_init__(self):
        if len(self.s0) != self.word.n0 or len(self.s1) != self.word.n1:
            raise TraceInputError(
                f"状态长度 ({len(self.s0)}, {len(self.s1)}) 与端点数 ({self.word.n0}, {self.word.n1}) 不符")
        if any(s not in (1, -1) for s in self.s0 + self.s1):
            raise TraceInputError("状态只能为 +1 或 -1")


@dataclass(frozen=True)
class CrossinglessMatching:
    """两墙端点的平面完美匹配，外加闭圈数"""
    n0: int
    n1: int
    pairs: Tuple[Tuple[Point, Point], ...]
    loops: int = 0


def kink_word(n: int, p: int, positive: bool = True) -> TangleWord:
    """在第 p 条线上加一个扭结（正扭结用 x+，值 −A⁻³；负扭结值 −A³）"""
    crossing = SliceKind.CROSS_OVER if positive else SliceKind.CROSS_UNDER
    return TangleWord(n, (Slice(SliceKind.CUP, p + 1), Slice(crossing, p), Slice(SliceKind.CAP, p + 1)))


def right_half_twist(n: int) -> TangleWord:
    """n 条线的右半扭转"""
    slices: List[Slice] = []
    for top in range(n - 1, 0, -1):
        slices.extend(Slice(SliceKind.CROSS_UNDER, p) for p in range(1, top + 1))
    return TangleWord(n, tuple(slices))


class BiangleEvaluator:
    """双角迹求值器：局部权重表、Kauffman 展开与动态规划"""

    def __init__(self, return_wall: Optional[int] = None, max_crossings: Optional[int] = None):
        config = get_compute_config()
        self.return_wall = config.biangle_return_wall if return_wall is None else return_wall
        self.max_crossings = config.max_crossings if max_crossings is None else max_crossings
        if self.return_wall not in (0, 1):
            raise ValueError(f"return_wall只能为0或1: {self.return_wall}")
        self.logger = logging.getLogger('BiangleEvaluator')
        self._transfer_cache: Dict[Tuple[TangleWord, Signs], Tuple[Tuple[Signs, OmegaPoly], ...]] = {}

        # 回到 α/β 所在墙的弧用 α/β 表，另一侧用 −A⁻³ 倍
        birth = {(-1, 1): ALPHA, (1, -1): BETA}
        death = {pair: -(A_INV ** 3) * value for pair, value in birth.items()}
        if self.return_wall == 1:
            self._cup, self._cap = birth, death
        else:
            self._cup, self._cap = death, birth

    # ---- 局部权重 ----

    def cup_weight(self, lower: int, upper: int) -> OmegaPoly:
        return self._cup.get((lower, upper), ZERO)

    def cap_weight(self, lower: int, upper: int) -> OmegaPoly:
        return self._cap.get((lower, upper), ZERO)

    def crossing_weight(self, kind: SliceKind, state_in: Tuple[int, int],
                        state_out: Tuple[int, int]) -> OmegaPoly:
        """x+ = A⁻¹·id + A·e，x− = A·id + A⁻¹·e，e(in; out) = cap(in)·cup(out)"""
        straight, turned = (A_INV, A) if kind == SliceKind.CROSS_OVER else (A, A_INV)
        value = self.cap_weight(*state_in) * self.cup_weight(*state_out) * turned
        if state_in == state_out:
            value = value + straight
        return value

    # ---- 动态规划 ----

    def transfer(self, word: TangleWord, s0: Signs) -> Dict[Signs, OmegaPoly]:
        """从墙 0 状态 s0 出发扫描，返回墙 1 状态 → 权重（只保留非零项）"""
        key = (word, tuple(s0))
        if key not in self._transfer_cache:
            if len(self._transfer_cache) >= TRANSFER_CACHE_SIZE:
                self._transfer_cache.clear()
            self._transfer_cache[key] = self._transfer(word, key[1])
        return dict(self._transfer_cache[key])

    def _transfer(self, word: TangleWord, s0: Signs) -> Tuple[Tuple[Signs, OmegaPoly], ...]:
        if len(s0) != word.n0:
            raise TraceInputError(f"墙0状态长度 {len(s0)} 与端点数 {word.n0} 不符")
        states: Dict[Signs, OmegaPoly] = {s0: ONE}
        for piece in word.slices:
            if piece.kind == SliceKind.IDENTITY:
                continue
            i = piece.position - 1
            nxt: Dict[Signs, OmegaPoly] = defaultdict(OmegaPoly)
            for signs, weight in states.items():
                if piece.kind == SliceKind.CUP:
                    for pair in ((-1, 1), (1, -1)):
                        w = self.cup_weight(*pair)
                        if not w.is_zero():
                            nxt[signs[:i] + pair + signs[i:]] += weight * w
                elif piece.kind == SliceKind.CAP:
                    w = self.cap_weight(signs[i], signs[i + 1])
                    if not w.is_zero():
                        nxt[signs[:i] + signs[i + 2:]] += weight * w
                else:
                    state_in = (signs[i], signs[i + 1])
                    for state_out in itertools.product((1, -1), repeat=2):
                        w = self.crossing_weight(piece.kind, state_in, state_out)
                        if not w.is_zero():
                            nxt[signs[:i] + state_out + signs[i + 2:]] += weight * w
            states = {s: w for s, w in nxt.items() if not w.is_zero()}
            if not states:
                break
        return tuple(sorted(states.items()))

    # ---- Kauffman 展开 ----

    def kauffman_resolve(self, word: TangleWord) -> List[Tuple[OmegaPoly, CrossinglessMatching]]:
        """把每个交叉展开成两种平滑，删去闭圈并乘 −A² − A⁻²，合并相同的匹配"""
        crossings = [i for i, s in enumerate(word.slices)
                     if s.kind in (SliceKind.CROSS_OVER, SliceKind.CROSS_UNDER)]
        if len(crossings) > self.max_crossings:
            raise ComputationLimitError(
                f"交叉数 {len(crossings)} 超过上限 {self.max_crossings}")
        combined: Dict[CrossinglessMatching, OmegaPoly] = {}
        for choice in itertools.product((False, True), repeat=len(crossings)):
            weight = ONE
            resolved: List[Tuple[SliceKind, int]] = []
            turned_at = dict(zip(crossings, choice))
            for index, piece in enumerate(word.slices):
                if piece.kind == SliceKind.IDENTITY:
                    continue
                if index in turned_at:
                    straight, turned = (A_INV, A) if piece.kind == SliceKind.CROSS_OVER else (A, A_INV)
                    if turned_at[index]:
                        weight = weight * turned
                        resolved.append((SliceKind.CAP, piece.position))
                        resolved.append((SliceKind.CUP, piece.position))
                    else:
                        weight = weight * straight
                    continue
                resolved.append((piece.kind, piece.position))
            pairs, loops = _trace_matching(word.n0, resolved)
            matching = CrossinglessMatching(word.n0, word.n1, pairs)
            value = weight * LOOP_VALUE ** loops
            combined[matching] = combined[matching] + value if matching in combined else value
        result = [(w, m) for m, w in combined.items() if not w.is_zero()]
        result.sort(key=lambda item: item[1].pairs)
        self.logger.debug(f"Kauffman展开: {len(crossings)} 个交叉, {len(result)} 个匹配")
        return result

    def eval_matching(self, match: CrossinglessMatching, s0: Signs, s1: Signs) -> OmegaPoly:
        """无交叉闭式：穿过线要求两端同号，回墙 1 的弧用 cup 表，回墙 0 的弧用 cap 表"""
        value = LOOP_VALUE ** match.loops
        for (wall_a, pos_a), (wall_b, pos_b) in match.pairs:
            if wall_a != wall_b:
                sa = s0[pos_a - 1] if wall_a == 0 else s1[pos_a - 1]
                sb = s0[pos_b - 1] if wall_b == 0 else s1[pos_b - 1]
                factor = ONE if sa == sb else ZERO
            else:
                signs = s0 if wall_a == 0 else s1
                low, high = sorted((pos_a, pos_b))
                pair = (signs[low - 1], signs[high - 1])
                factor = self.cap_weight(*pair) if wall_a == 0 else self.cup_weight(*pair)
            if factor.is_zero():
                return ZERO
            value = value * factor
        return value

    def trace_b(self, tangle: StatedTangle, method: str = "dp") -> OmegaPoly:
        """Tr_B：method 为 'dp'（扫描）或 'resolve'（Kauffman 展开）"""
        if method == "resolve":
            total = ZERO
            for weight, matching in self.kauffman_resolve(tangle.word):
                total = total + weight * self.eval_matching(matching, tangle.s0, tangle.s1)
            return total
        if method != "dp":
            raise ValueError(f"未知的求值方法: {method}")
        return self.transfer(tangle.word, tangle.s0).get(tuple(tangle.s1), ZERO)


def _trace_matching(n0: int, resolved: Sequence[Tuple[SliceKind, int]]) -> Tuple[Tuple[Tuple[Point, Point], ...], int]:
    """沿路径追踪无交叉字，返回端点配对和闭圈数"""
    parent: Dict[Point, Point] = {}

    def find(node: Point) -> Point:
        while parent[node] != node:
            parent[node] = parent[parent[node]]
            node = parent[node]
        return node

    def join(a: Point, b: Point):
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        root_a, root_b = find(a), find(b)
        if root_a != root_b:
            parent[root_a] = root_b

    current: List[Point] = [(0, i) for i in range(1, n0 + 1)]
    for node in current:
        parent[node] = node
    counter = 0
    for kind, p in resolved:
        if kind == SliceKind.CUP:
            lower, upper = (2, counter), (2, counter + 1)
            counter += 2
            join(lower, upper)
            current[p - 1:p - 1] = [lower, upper]
        else:
            join(current[p - 1], current[p])
            del current[p - 1:p + 1]
    for index, node in enumerate(current, start=1):
        join(node, (1, index))

    groups: Dict[Point, List[Point]] = defaultdict(list)
    for node in parent:
        groups[find(node)].append(node)
    pairs = []
    loops = 0
    for members in groups.values():
        ends = sorted(node for node in members if node[0] in (0, 1))
        if not ends:
            loops += 1
        else:
            pairs.append((ends[0], ends[1]))
    return tuple(sorted(pairs)), loops


_default_evaluator: Optional[BiangleEvaluator] = None


def default_evaluator() -> BiangleEvaluator:
    global _default_evaluator
    if _default_evaluator is None:
        _default_evaluator = BiangleEvaluator()
    return _default_evaluator


def kauffman_resolve(word: TangleWord) -> List[Tuple[OmegaPoly, CrossinglessMatching]]:
    return default_evaluator().kauffman_resolve(word)


def eval_matching(match: CrossinglessMatching, s0: Signs, s1: Signs) -> OmegaPoly:
    return default_evaluator().eval_matching(match, tuple(s0), tuple(s1))


def trace_b(tangle: StatedTangle, method: str = "dp") -> OmegaPoly:
    return default_evaluator().trace_b(tangle, method)


def all_signs(length: int) -> Iterator[Signs]:
    """按字典序（+ 在前）列出所有符号序列"""
    return itertools.product((1, -1), repeat=length)
