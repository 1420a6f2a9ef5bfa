"""
量子迹计算系统 - 性质检查器测试
"""

from checks import CheckResult, CheckStatus, CheckSuite, PropertyChecker, SuiteReport
from formats.file_protocol import parse_link
from topology.moves import away_uturn_locations
from topology.state_sum import BoundaryState


def test_suite_report_summary():
    report = SuiteReport(CheckSuite.LEADING, [
        CheckResult("a", CheckStatus.PASSED),
        CheckResult("b", CheckStatus.FAILED, "不一致"),
        CheckResult("c", CheckStatus.SKIPPED),
    ])
    data = report.to_dict()
    assert not report.success
    assert data['message'] == "leading: 通过 1, 失败 1, 跳过 1"
    assert data['results'][1] == {'name': 'b', 'status': 'failed', 'message': '不一致', 'details': {}}
    assert report.results[0].checked_at


class TestSuites:
    """在小夹具上运行每个套件"""

    def test_moves(self, corner_link):
        report = PropertyChecker().run_suite(CheckSuite.MOVES, corner_link)
        assert report.success
        assert report.passed == 16
        assert report.skipped == 0

    def test_moves_single_state(self, corner_link):
        state = BoundaryState({(0, 1): 1, (1, 1): -1})
        report = PropertyChecker().run_suite(CheckSuite.MOVES, corner_link, state)
        assert report.success
        assert report.passed == 4

    def test_skein(self, triangle):
        link = parse_link("arc 1 1 2 0\ntangle e1 cup 1 x- 2\n", triangle)
        report = PropertyChecker().run_suite(CheckSuite.SKEIN, link)
        assert report.success
        assert report.passed == 16

    def test_skein_without_crossings(self, corner_link):
        report = PropertyChecker().run_suite(CheckSuite.SKEIN, corner_link)
        assert report.success
        assert report.skipped == 1

    def test_classical(self, torus_curve):
        checker = PropertyChecker()
        report = checker.run_suite(CheckSuite.CLASSICAL, torus_curve, seed=7)
        assert report.success
        assert report.passed == 1 + checker.config.random_trials

    def test_classical_needs_closed_curve(self, corner_link):
        report = PropertyChecker().run_suite(CheckSuite.CLASSICAL, corner_link)
        assert report.success
        assert report.skipped == 1
        assert report.results[0].status == CheckStatus.SKIPPED
        assert report.results[0].details == {'input_error': True}
        assert report.unrunnable

    def test_leading(self, torus_curve):
        report = PropertyChecker().run_suite(CheckSuite.LEADING, torus_curve)
        assert report.success
        assert report.passed == 2

    def test_balanced(self, torus_curve):
        report = PropertyChecker().run_suite(CheckSuite.BALANCED, torus_curve)
        assert report.success
        assert report.passed == 6

    def test_side_point_limit_skips(self, torus_curve):
        report = PropertyChecker(max_side_points=1).run_suite(CheckSuite.LEADING, torus_curve)
        assert report.success
        assert report.skipped == 1

    def test_partial_skips_are_runnable(self, corner_link):
        assert not PropertyChecker().run_suite(CheckSuite.SKEIN, corner_link).unrunnable
        assert not PropertyChecker().run_suite(CheckSuite.MOVES, corner_link).unrunnable
        assert not SuiteReport(CheckSuite.MOVES).unrunnable


class TestUturnMoves:
    """离侧 U 形弧处的移动 I⁻¹ 及其逆"""

    UTURN_TEXT = "arc 2 1 2 0\narc 2 1 2 1\ntangle e1 cup 1\ntangle e2 cup 1\n"

    def test_candidates(self, torus):
        link = parse_link(self.UTURN_TEXT, torus)
        found = away_uturn_locations(link)
        assert [(loc.side, loc.other_side) for loc, _ in found] == [(1, 2), (1, 3), (2, 1), (2, 3)]
        assert all(loc.face == 1 and loc.position == 1 for loc, _ in found)
        assert [back.side for _, back in found] == [2, 3, 1, 3]

    def test_moves_suite_runs_uturn_inverse(self, torus):
        link = parse_link(self.UTURN_TEXT, torus)
        report = PropertyChecker().run_suite(CheckSuite.MOVES, link)
        assert report.success
        names = [r.name for r in report.results if r.status == CheckStatus.PASSED]
        assert sum(1 for name in names if name.startswith("I-1@")) == 8
        assert "I-1@面1槽1位置1→槽2 → I" in names

    def test_no_candidates_without_uturns(self, corner_link, torus_curve):
        assert away_uturn_locations(corner_link) == []
        assert away_uturn_locations(torus_curve) == []
