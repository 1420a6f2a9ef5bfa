#!/usr/bin/env python3
"""
量子迹计算系统 - 性质检查器
对给定链环逐条验证量子迹的性质：移动不变性、Kauffman 关系、经典极限、首项、平衡性
"""

import logging
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from algebra.omega_ring import A, A_INV
from algebra.quantum_torus import leading_term
from config_manager import get_compute_config
from errors import MoveMismatchError, TraceInputError
from topology.biangle import Slice, SliceKind, TangleWord
from topology.classical import classical_state_sum, holonomy_trace, link_turn_sequences, multicurve_state_sum
from topology.moves import MoveKind, MoveLocation, apply_move, away_uturn_locations
from topology.state_sum import (
    BoundaryState, GoodPositionLink, all_boundary_states, leading_intersection_vector, quantum_trace,
)
from topology.surface import balanced


class CheckStatus(Enum):
    """检查结果状态"""
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


class CheckSuite(Enum):
    """性质检查套件"""
    MOVES = "moves"            # 移动 I–V 及其逆下的不变性
    SKEIN = "skein"            # 每个交叉处的 Kauffman 关系
    CLASSICAL = "classical"    # ω = 1 与经典状态和、和乐迹的一致性
    LEADING = "leading"        # 首项指数等于交数向量
    BALANCED = "balanced"      # 输出单项式平衡且奇偶性正确


@dataclass
class CheckResult:
    """单条断言的结果"""
    name: str
    status: CheckStatus
    message: str = ""
    details: Dict[str, Any] = field(default_factory=dict)
    checked_at: str = ""

    def __post_init__(self):
        if not self.checked_at:
            self.checked_at = datetime.now().isoformat()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'status': self.status.value,
            'message': self.message,
            'details': self.details,
        }


@dataclass
class SuiteReport:
    """一个套件的汇总"""
    suite: CheckSuite
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.status == CheckStatus.PASSED)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if r.status == CheckStatus.FAILED)

    @property
    def skipped(self) -> int:
        return sum(1 for r in self.results if r.status == CheckStatus.SKIPPED)

    @property
    def success(self) -> bool:
        return self.failed == 0

    @property
    def unrunnable(self) -> bool:
        """全部结果都是因输入不适用而跳过"""
        return bool(self.results) and all(
            r.status == CheckStatus.SKIPPED and r.details.get('input_error') for r in self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'success': self.success,
            'message': f"{self.suite.value}: 通过 {self.passed}, 失败 {self.failed}, 跳过 {self.skipped}",
            'suite': self.suite.value,
            'passed': self.passed,
            'failed': self.failed,
            'skipped': self.skipped,
            'results': [r.to_dict() for r in self.results],
        }


class PropertyChecker:
    """性质检查器"""

    def __init__(self, max_side_points: Optional[int] = None):
        self.config = get_compute_config()
        self.max_side_points = max_side_points
        self.logger = logging.getLogger('PropertyChecker')
        self._suites: Dict[CheckSuite, Callable] = {
            CheckSuite.MOVES: self._check_moves,
            CheckSuite.SKEIN: self._check_skein,
            CheckSuite.CLASSICAL: self._check_classical,
            CheckSuite.LEADING: self._check_leading,
            CheckSuite.BALANCED: self._check_balanced,
        }

    def run_suite(self, suite: CheckSuite, link: GoodPositionLink,
                  state: Optional[BoundaryState] = None, seed: Optional[int] = None) -> SuiteReport:
        """运行一个套件；不给状态时对全部边界状态检查"""
        report = SuiteReport(suite)
        states = [state] if state is not None else list(all_boundary_states(link))
        seed = self.config.default_seed if seed is None else seed
        self.logger.info(f"开始检查套件 {suite.value}: {len(states)} 个边界状态")
        try:
            self._suites[suite](link, states, seed, report)
        except TraceInputError as e:
            report.results.append(CheckResult(suite.value, CheckStatus.SKIPPED, str(e), {'input_error': True}))
        self.logger.info(report.to_dict()['message'])
        return report

    def _trace(self, link: GoodPositionLink, state: BoundaryState):
        return quantum_trace(link, state, max_side_points=self.max_side_points)

    def _record(self, report: SuiteReport, name: str, ok: bool, message: str = "", **details):
        status = CheckStatus.PASSED if ok else CheckStatus.FAILED
        report.results.append(CheckResult(name, status, message, details))
        if not ok:
            self.logger.warning(f"检查失败: {name} {message}")

    # ---- 移动 ----

    def _candidate_moves(self, link: GoodPositionLink) -> List[tuple]:
        """(移动, 位置, 逆移动, 逆移动的位置)；I⁻¹ 只列出离侧 U 形弧确实存在的位置"""
        moves = []
        for face in link.tri.faces:
            arcs = link.arcs(face)
            for rank in range(len(arcs)):
                here = MoveLocation(face, rank)
                moves.append((MoveKind.V, here, MoveKind.V_INV, here))
                moves.append((MoveKind.II_INV, here, MoveKind.II, here))
                if rank + 1 < len(arcs):
                    same = {arcs[rank].slot_in, arcs[rank].slot_out} == {arcs[rank + 1].slot_in, arcs[rank + 1].slot_out}
                    moves.append((MoveKind.III if same else MoveKind.IV, here,
                                  MoveKind.III_INV if same else MoveKind.IV_INV, here))
                    moves.append((MoveKind.I, here, None, None))
                    moves.append((MoveKind.II, here, None, None))
        for location, back in away_uturn_locations(link):
            moves.append((MoveKind.I_INV, location, MoveKind.I, back))
        return moves

    def _check_moves(self, link, states, seed, report):
        base = {s: self._trace(link, s) for s in states}
        for move, location, inverse, back_location in self._candidate_moves(link):
            name = f"{move.value}@面{location.face}名次{location.rank}"
            if move == MoveKind.I_INV:
                name = f"{move.value}@面{location.face}槽{location.side}位置{location.position}→槽{location.other_side}"
            try:
                moved = apply_move(link, move, location)
            except MoveMismatchError as e:
                report.results.append(CheckResult(name, CheckStatus.SKIPPED, e.message))
                continue
            for state in states:
                self._record(report, name, self._trace(moved, state) == base[state], state.render())
            if inverse is None:
                continue
            back = apply_move(moved, inverse, back_location)
            for state in states:
                self._record(report, f"{name} → {inverse.value}", self._trace(back, state) == base[state],
                             state.render())

    # ---- Kauffman 关系 ----

    def _check_skein(self, link, states, seed, report):
        found = False
        for edge, word in enumerate(link.tangles):
            for index, piece in enumerate(word.slices):
                if piece.kind not in (SliceKind.CROSS_OVER, SliceKind.CROSS_UNDER):
                    continue
                found = True
                straight, turned = (A_INV, A) if piece.kind == SliceKind.CROSS_OVER else (A, A_INV)
                before, after = word.slices[:index], word.slices[index + 1:]
                k0 = link.with_parts(tangles={edge: TangleWord(word.n0, before + after)})
                smoothing = (Slice(SliceKind.CAP, piece.position), Slice(SliceKind.CUP, piece.position))
                k_inf = link.with_parts(tangles={edge: TangleWord(word.n0, before + smoothing + after)})
                name = f"边{link.tri.edge(edge).name}第{index + 1}片 {piece.render()}"
                for state in states:
                    lhs = self._trace(link, state)
                    rhs = self._trace(k0, state) * straight + self._trace(k_inf, state) * turned
                    self._record(report, name, lhs == rhs, state.render())
        if not found:
            report.results.append(CheckResult("skein", CheckStatus.SKIPPED, "链环没有交叉"))

    # ---- 经典极限 ----

    def _check_classical(self, link, states, seed, report):
        sequences = link_turn_sequences(link)
        n = link.tri.n
        expected = multicurve_state_sum(sequences, n)
        actual = self._trace(link, BoundaryState()).specialize_commutative()
        self._record(report, "ω=1 特化 = 经典状态和", actual == expected,
                     f"{actual.render()} vs {expected.render()}")
        rng = np.random.default_rng(seed)
        tolerance = self.config.float_tolerance
        for number, steps in enumerate(sequences, start=1):
            polynomial = classical_state_sum(steps, n)
            for trial in range(self.config.random_trials):
                shears = rng.uniform(0.1, 10.0, size=n)
                numeric = polynomial.evaluate(np.sqrt(shears))
                matrix = holonomy_trace(steps, shears)
                ok = abs(numeric - matrix) <= tolerance * max(1.0, abs(matrix))
                self._record(report, f"分支{number} 随机剪切 {trial + 1}", ok, f"{numeric} vs {matrix}")

    # ---- 首项 ----

    def _check_leading(self, link, states, seed, report):
        vector = leading_intersection_vector(link)
        value = self._trace(link, BoundaryState())
        top = leading_term(value)
        coefficient = value.weyl_terms()[top.exps]
        self._record(report, "首项指数 = 交数向量", top.exps == vector, f"{top.exps} vs {vector}")
        self._record(report, "首项系数可逆", coefficient.is_unit(), coefficient.render())

    # ---- 平衡性 ----

    def _check_balanced(self, link, states, seed, report):
        parity = tuple(word.n0 % 2 for word in link.tangles)
        for state in states:
            value = self._trace(link, state)
            for exps in value.terms():
                self._record(report, f"{state.render()} {exps} 平衡", balanced(link.tri, exps) is not None)
                self._record(report, f"{state.render()} {exps} 奇偶",
                             tuple(k % 2 for k in exps) == parity, f"期望 {parity}")
