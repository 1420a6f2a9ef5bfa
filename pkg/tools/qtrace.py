#!/usr/bin/env python3
"""
量子迹计算系统 - 命令行工具
读取曲面、链环、状态与曲线文件，计算量子迹、经典迹、对角交换与双角迹

退出码：0 成功，1 计算结果不一致，2 输入错误
"""

import sys
import re
import logging
import argparse
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

# 添加系统路径
sys.path.append(str(Path(__file__).parent.parent))

from algebra.quantum_torus import QTElement, render_element, render_monomial
from checks.property_checker import CheckStatus, CheckSuite, PropertyChecker
from config_manager import get_config_manager
from errors import AlgebraError, TraceInputError
from formats.file_protocol import (
    describe_state, load_text, parse_complex, parse_curve, parse_link, parse_shears,
    parse_signs, parse_state, parse_surface, parse_tangle_word,
)
from topology.biangle import BiangleEvaluator, StatedTangle
from topology.classical import classical_state_sum, holonomy_trace
from topology.flip import reposition_link, transfer_trace
from topology.state_sum import BoundaryState, GoodPositionLink, all_boundary_states, quantum_trace

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT_ERROR = 2

# 以 - 开头的符号串（如 -+）会被 argparse 当成选项，解析前改写成 --out=-+ 的形式
SIGN_OPTIONS = ("--in", "--out")
_SIGN_TEXT = re.compile(r"^[+\-\s,]*$")


def _format_complex(value: complex) -> str:
    return f"{value.real:.12g}{value.imag:+.12g}i"


class QTraceCommands:
    """命令行子命令的实现：每个方法把结果写到 out 并返回退出码"""

    def __init__(self, out=None):
        self.out = out or sys.stdout
        self.logger = logging.getLogger('QTrace')

    def _emit(self, line: str = ""):
        print(line, file=self.out)

    # ---- 输入 ----

    def _load_link(self, surface_path: str, link_path: str) -> GoodPositionLink:
        tri = parse_surface(load_text(surface_path), source=surface_path)
        link = parse_link(load_text(link_path), tri, source=link_path)
        self.logger.info(f"已加载链环: {link.describe()}")
        return link

    def _load_state(self, link: GoodPositionLink, state_path: Optional[str]) -> BoundaryState:
        if not state_path:
            return BoundaryState()
        return parse_state(load_text(state_path), link.tri, source=state_path)

    # ---- 子命令 ----

    def trace(self, surface: str, link_path: str, state_path: Optional[str] = None,
              all_states: bool = False, eval_at: Optional[str] = None,
              method: str = "contract", max_side_points: Optional[int] = None) -> int:
        link = self._load_link(surface, link_path)
        w = None
        if eval_at:
            name, _, value = eval_at.partition("=")
            if name.strip() != "w" or not value:
                raise TraceInputError(f"--eval 的格式应为 w=<a>+<b>i: {eval_at!r}")
            w = parse_complex(value)
        states = list(all_boundary_states(link)) if all_states else [self._load_state(link, state_path)]
        for state in states:
            value = quantum_trace(link, state, method=method, max_side_points=max_side_points)
            if all_states:
                self._emit(f"{describe_state(state, link.tri)}: {render_element(value)}")
            else:
                self._emit(render_element(value))
            if w is not None:
                self._emit_numeric(value, w)
        return EXIT_OK

    def _emit_numeric(self, value: QTElement, w: complex):
        weyl = value.weyl_terms()
        for exps in sorted(weyl):
            self._emit(f"  {render_monomial(exps)} = {_format_complex(weyl[exps].eval_complex(w))}")

    def classical(self, surface: str, curve: str, shears: Optional[str] = None) -> int:
        tri = parse_surface(load_text(surface), source=surface)
        steps = parse_curve(load_text(curve), tri, source=curve)
        polynomial = classical_state_sum(steps, tri.n)
        self._emit(polynomial.render())
        if not shears:
            return EXIT_OK
        x = parse_shears(load_text(shears), tri, source=shears)
        roots = np.sqrt([x.get(i, 1.0) for i in range(tri.n)])
        numeric = polynomial.evaluate(roots)
        matrix = holonomy_trace(steps, x)
        tolerance = get_config_manager().get_compute_config().float_tolerance
        matched = abs(numeric - matrix) <= tolerance * max(1.0, abs(matrix))
        self._emit(f"state sum: {numeric:.12g}")
        self._emit(f"holonomy:  {matrix:.12g}")
        self._emit("MATCH" if matched else "MISMATCH")
        return EXIT_OK if matched else EXIT_MISMATCH

    def flip(self, surface: str, edge: str, link_path: str, state_path: Optional[str] = None,
             max_side_points: Optional[int] = None) -> int:
        link = self._load_link(surface, link_path)
        e = link.tri.edge_index(edge)
        state = self._load_state(link, state_path)
        transferred = transfer_trace(link, e, state, max_side_points=max_side_points)
        direct = quantum_trace(reposition_link(link, e), state, max_side_points=max_side_points)
        self._emit(f"transfer: {render_element(transferred)}")
        self._emit(f"direct:   {render_element(direct)}")
        matched = transferred == direct
        self._emit("MATCH" if matched else "MISMATCH")
        if not matched:
            self.logger.warning(f"对角交换边 {edge} 的两种计算不一致")
        return EXIT_OK if matched else EXIT_MISMATCH

    def check(self, surface: str, link_path: str, suite: str, state_path: Optional[str] = None,
              seed: Optional[int] = None, max_side_points: Optional[int] = None) -> int:
        link = self._load_link(surface, link_path)
        state = self._load_state(link, state_path) if state_path else None
        checker = PropertyChecker(max_side_points=max_side_points)
        report = checker.run_suite(CheckSuite(suite), link, state, seed)
        for result in report.results:
            line = f"[{result.status.value}] {result.name}"
            if result.message and result.status != CheckStatus.PASSED:
                line += f": {result.message}"
            self._emit(line)
        self._emit(report.to_dict()['message'])
        if report.unrunnable:
            raise TraceInputError(f"套件 {suite} 不适用于该链环: {report.results[0].message}")
        return EXIT_OK if report.success else EXIT_MISMATCH

    def bracket(self, word: str, signs_in: str, signs_out: str, method: str = "dp") -> int:
        s0, s1 = parse_signs(signs_in), parse_signs(signs_out)
        tangle = StatedTangle(parse_tangle_word(word, len(s0)), s0, s1)
        self._emit(BiangleEvaluator().trace_b(tangle, method).render())
        return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='qtrace', description='带状态框架链环的量子迹计算')
    parser.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], help='日志级别')

    subparsers = parser.add_subparsers(dest='command', help='可用命令')

    # 量子迹
    trace_parser = subparsers.add_parser('trace', help='计算量子迹')
    trace_parser.add_argument('-s', '--surface', required=True, help='曲面文件')
    trace_parser.add_argument('-l', '--link', required=True, help='链环文件')
    trace_parser.add_argument('-t', '--states', help='边界状态文件')
    trace_parser.add_argument('--all-states', action='store_true', help='对全部边界状态逐行输出')
    trace_parser.add_argument('--eval', dest='eval_at', help='在 w=<a>+<b>i 处数值求系数')
    trace_parser.add_argument('--method', choices=['contract', 'naive'], default='contract', help='状态和算法')
    trace_parser.add_argument('--max-side-points', type=int, help='三角形边点数上限')

    # 经典迹
    classical_parser = subparsers.add_parser('classical', help='经典状态和与和乐迹')
    classical_parser.add_argument('-s', '--surface', required=True, help='曲面文件')
    classical_parser.add_argument('-c', '--curve', required=True, help='转向序列文件')
    classical_parser.add_argument('-x', '--shears', help='剪切坐标文件')

    # 对角交换
    flip_parser = subparsers.add_parser('flip', help='对角交换前后的量子迹对照')
    flip_parser.add_argument('-s', '--surface', required=True, help='曲面文件')
    flip_parser.add_argument('-e', '--edge', required=True, help='被交换的内部边')
    flip_parser.add_argument('-l', '--link', required=True, help='链环文件')
    flip_parser.add_argument('-t', '--states', help='边界状态文件')
    flip_parser.add_argument('--max-side-points', type=int, help='三角形边点数上限')

    # 性质检查
    check_parser = subparsers.add_parser('check', help='运行性质检查套件')
    check_parser.add_argument('-s', '--surface', required=True, help='曲面文件')
    check_parser.add_argument('-l', '--link', required=True, help='链环文件')
    check_parser.add_argument('--suite', required=True, choices=[s.value for s in CheckSuite], help='套件')
    check_parser.add_argument('-t', '--states', help='边界状态文件（缺省时检查全部状态）')
    check_parser.add_argument('--seed', type=int, help='随机种子')
    check_parser.add_argument('--max-side-points', type=int, help='三角形边点数上限')

    # 双角迹
    bracket_parser = subparsers.add_parser('bracket', help='双角中带状态缠结的迹')
    bracket_parser.add_argument('-w', '--word', required=True, help='缠结字，如 "cup 1 cap 1"')
    bracket_parser.add_argument('--in', dest='signs_in', default='', help='墙 0 的状态，如 --in=-+ 或 --in -+')
    bracket_parser.add_argument('--out', dest='signs_out', default='', help='墙 1 的状态，如 --out=+-')
    bracket_parser.add_argument('--method', choices=['dp', 'resolve'], default='dp', help='求值方法')

    return parser


def attach_sign_values(argv: Sequence[str]) -> List[str]:
    """把 `--in -+` 这类参数合并成 `--in=-+`"""
    merged: List[str] = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if token in SIGN_OPTIONS and index + 1 < len(argv) and _SIGN_TEXT.match(argv[index + 1]):
            merged.append(f"{token}={argv[index + 1]}")
            index += 2
            continue
        merged.append(token)
        index += 1
    return merged


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    """命令行接口；返回退出码"""
    parser = build_parser()
    args = parser.parse_args(attach_sign_values(sys.argv[1:] if argv is None else argv))

    level = args.log_level or get_config_manager().get_system_config().log_level
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )

    if not args.command:
        parser.print_help()
        return EXIT_INPUT_ERROR

    commands = QTraceCommands(out)
    try:
        if args.command == 'trace':
            return commands.trace(args.surface, args.link, args.states, args.all_states,
                                  args.eval_at, args.method, args.max_side_points)
        elif args.command == 'classical':
            return commands.classical(args.surface, args.curve, args.shears)
        elif args.command == 'flip':
            return commands.flip(args.surface, args.edge, args.link, args.states, args.max_side_points)
        elif args.command == 'check':
            return commands.check(args.surface, args.link, args.suite, args.states,
                                  args.seed, args.max_side_points)
        elif args.command == 'bracket':
            return commands.bracket(args.word, args.signs_in, args.signs_out, args.method)
    except (TraceInputError, AlgebraError) as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as e:
        print(f"无法读取文件: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return EXIT_INPUT_ERROR


def main(argv: Optional[List[str]] = None):
    sys.exit(run(argv))


if __name__ == '__main__':
    main()
