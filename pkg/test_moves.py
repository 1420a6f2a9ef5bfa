"""
量子迹计算系统 - 好位置移动测试
每个移动保持全部边界状态下的量子迹
"""

import pytest

from errors import MoveMismatchError
from formats.file_protocol import parse_link
from topology.biangle import Slice, SliceKind
from topology.moves import MoveKind, MoveLocation, apply_move
from topology.state_sum import all_boundary_states, quantum_trace
from topology.surface import Slot

PARALLEL_TEXT = "arc 1 1 2 0\narc 1 1 2 1\n"
TWO_CORNERS_TEXT = "arc 1 1 2 0\narc 1 2 3 1\n"


def assert_same_traces(before, after):
    states = list(all_boundary_states(before))
    assert states == list(all_boundary_states(after))
    for state in states:
        assert quantum_trace(before, state) == quantum_trace(after, state)


class TestMoveKind:

    def test_parse(self):
        assert MoveKind.parse("iii") is MoveKind.III
        assert MoveKind.parse("II⁻¹") is MoveKind.II_INV
        assert MoveKind.parse("v_inv") is MoveKind.V_INV
        with pytest.raises(MoveMismatchError):
            MoveKind.parse("VI")


class TestInvariance:
    """移动前后量子迹相同"""

    def test_kink_pair(self, corner_link):
        moved = apply_move(corner_link, MoveKind.V, MoveLocation(1, 0))
        assert moved.tangles[0].crossing_count() == 1
        assert moved.tangles[1].crossing_count() == 1
        assert_same_traces(corner_link, moved)
        assert apply_move(moved, MoveKind.V_INV, MoveLocation(1, 0)) == corner_link

    def test_swap_same_corner(self, triangle):
        link = parse_link(PARALLEL_TEXT, triangle)
        moved = apply_move(link, "III", MoveLocation(1, 0))
        assert moved.tangles[0].slices == (Slice(SliceKind.CROSS_UNDER, 1),)
        assert moved.tangles[1].slices == (Slice(SliceKind.CROSS_OVER, 1),)
        assert_same_traces(link, moved)
        assert apply_move(moved, MoveKind.III_INV, MoveLocation(1, 0)) == link

    def test_swap_different_corners(self, triangle):
        link = parse_link(TWO_CORNERS_TEXT, triangle)
        moved = apply_move(link, MoveKind.IV, MoveLocation(1, 0))
        assert moved.tangles[1].slices == (Slice(SliceKind.CROSS_OVER, 1),)
        assert [arc.slot_in for arc in moved.arcs(1)] == [2, 1]
        assert_same_traces(link, moved)
        assert apply_move(moved, MoveKind.IV_INV, MoveLocation(1, 0)) == link

    def test_split_and_merge(self, corner_link):
        split = apply_move(corner_link, MoveKind.II_INV, MoveLocation(1, 0))
        assert [(a.slot_in, a.slot_out) for a in split.arcs(1)] == [(1, 3), (3, 2)]
        assert split.tangles[2].n0 == 2
        assert split.tangles[2].n1 == 0
        assert_same_traces(corner_link, split)
        assert apply_move(split, MoveKind.II, MoveLocation(1, 0)) == corner_link

    def test_boundary_uturn(self, triangle):
        link = parse_link("tangle e1 cup 1\n", triangle)
        opened = apply_move(link, MoveKind.I_INV, MoveLocation(1, side=1, position=1, other_side=2))
        assert len(opened.arcs(1)) == 2
        assert opened.tangles[0].is_trivial()
        assert_same_traces(link, opened)
        assert apply_move(opened, MoveKind.I, MoveLocation(1, 0)) == link


class TestMismatch:
    """局部图样不符时报错"""

    def test_missing_kinks(self, corner_link):
        with pytest.raises(MoveMismatchError):
            apply_move(corner_link, MoveKind.V_INV, MoveLocation(1, 0))

    def test_wrong_corner(self, triangle):
        with pytest.raises(MoveMismatchError):
            apply_move(parse_link(TWO_CORNERS_TEXT, triangle), MoveKind.III, MoveLocation(1, 0))
        with pytest.raises(MoveMismatchError):
            apply_move(parse_link(PARALLEL_TEXT, triangle), MoveKind.IV, MoveLocation(1, 0))

    def test_rank_out_of_range(self, corner_link):
        with pytest.raises(MoveMismatchError):
            apply_move(corner_link, MoveKind.III, MoveLocation(1, 0))
        with pytest.raises(MoveMismatchError):
            apply_move(corner_link, MoveKind.V, MoveLocation(2, 0))

    def test_inverse_needs_location(self, triangle):
        link = parse_link("tangle e1 cup 1\n", triangle)
        with pytest.raises(MoveMismatchError):
            apply_move(link, MoveKind.I_INV, MoveLocation(1))

    def test_merge_without_uturn(self, triangle):
        link = parse_link("arc 1 1 3 0\narc 1 3 2 1\n", triangle)
        with pytest.raises(MoveMismatchError):
            apply_move(link, MoveKind.II, MoveLocation(1, 0))


# 环面上的单条曲线、两条平行曲线与两条不平行曲线的并
TORUS_LINKS = {
    'c12': "arc 1 1 2 0\narc 2 2 1 0\n",
    'c13': "arc 1 1 3 0\narc 2 3 1 0\n",
    'c23': "arc 1 2 3 0\narc 2 3 2 0\n",
    'p12': "arc 1 1 2 0\narc 1 1 2 1\narc 2 2 1 0\narc 2 2 1 1\n",
    'p13': "arc 1 1 3 0\narc 1 1 3 1\narc 2 3 1 0\narc 2 3 1 1\n",
    'p23': "arc 1 2 3 0\narc 1 2 3 1\narc 2 3 2 0\narc 2 3 2 1\n",
    'c12+c13': "arc 1 1 2 0\narc 1 1 3 1\narc 2 2 1 0\narc 2 3 1 1\n",
    'c12+c23': "arc 1 1 2 0\narc 1 2 3 1\narc 2 2 1 0\narc 2 3 2 1\n",
    'c13+c23': "arc 1 1 3 0\narc 1 2 3 1\narc 2 3 1 0\narc 2 3 2 1\n",
    'uturns': "arc 2 1 2 0\narc 2 1 2 1\ntangle e1 cup 1\ntangle e2 cup 1\n",
}

# 正方形上连接两条边界边的弧（按所连的边命名）与它们的组合
SQUARE_LINKS = {
    's23': "arc 1 3 1 0\narc 2 1 2 0\n",
    's24': "arc 1 3 1 0\narc 2 1 3 0\n",
    's25': "arc 1 3 2 0\n",
    's34': "arc 2 2 3 0\n",
    's25x2': "arc 1 3 2 0\narc 1 3 2 1\n",
    's34x2': "arc 2 2 3 0\narc 2 2 3 1\n",
    's23x2': "arc 1 3 1 0\narc 1 3 1 1\narc 2 1 2 0\narc 2 1 2 1\n",
    's25+s23': "arc 1 3 2 0\narc 1 3 1 1\narc 2 1 2 0\n",
    's34+s23': "arc 2 2 3 0\narc 2 1 2 1\narc 1 3 1 0\n",
    'boundary uturn': "tangle e2 cup 1\n",
}


def _case(surface, key, move, location, inverse, back_location=None):
    return pytest.param(surface, key, move, location, inverse, back_location or location,
                        id=f"{surface}-{key}-{move.value}-{location.face}-{location.rank}-{location.side}-{location.other_side}")


V, V_INV = MoveKind.V, MoveKind.V_INV
MOVE_CASES = (
    # 每种角上的扭结对与拆分
    [_case('torus', key, kind, MoveLocation(face, 0), inverse)
     for key in ('c12', 'c13', 'c23') for face in (1, 2)
     for kind, inverse in ((V, V_INV), (MoveKind.II_INV, MoveKind.II))]
    + [_case('square', key, kind, MoveLocation(face, 0), inverse)
       for key, face in (('s23', 1), ('s23', 2), ('s24', 1), ('s24', 2), ('s25', 1), ('s34', 2))
       for kind, inverse in ((V, V_INV), (MoveKind.II_INV, MoveKind.II))]
    # 同角交换
    + [_case('torus', key, MoveKind.III, MoveLocation(face, 0), MoveKind.III_INV)
       for key in ('p12', 'p13', 'p23') for face in (1, 2)]
    + [_case('square', key, MoveKind.III, MoveLocation(face, 0), MoveKind.III_INV)
       for key, face in (('s25x2', 1), ('s34x2', 2), ('s23x2', 1), ('s23x2', 2))]
    # 异角交换
    + [_case('torus', key, MoveKind.IV, MoveLocation(face, 0), MoveKind.IV_INV)
       for key in ('c12+c13', 'c12+c23', 'c13+c23') for face in (1, 2)]
    + [_case('square', 's25+s23', MoveKind.IV, MoveLocation(1, 0), MoveKind.IV_INV),
       _case('square', 's34+s23', MoveKind.IV, MoveLocation(2, 0), MoveKind.IV_INV)]
    # U 形弧
    + [_case('torus', 'uturns', MoveKind.I_INV, MoveLocation(1, 0, side=s, position=1, other_side=t),
             MoveKind.I, MoveLocation(1, 0, side=t))
       for s, t in ((1, 2), (1, 3), (2, 3))]
    + [_case('torus', 'uturns', MoveKind.I, MoveLocation(2, 0), MoveKind.I_INV,
             MoveLocation(2, side=2, position=1, other_side=1))]
    + [_case('square', 'boundary uturn', MoveKind.I_INV, MoveLocation(1, 0, side=3, position=1, other_side=t),
             MoveKind.I, MoveLocation(1, 0, side=t))
       for t in (1, 2)]
)


class TestInvarianceOnSurfaces:
    """正方形与环面上，每种移动在每种角上前后量子迹相同"""

    def test_enough_cases(self):
        assert len(MOVE_CASES) >= 30
        assert {case.values[2] for case in MOVE_CASES} == {
            V, MoveKind.II_INV, MoveKind.III, MoveKind.IV, MoveKind.I, MoveKind.I_INV}

    @pytest.mark.parametrize("surface,key,move,location,inverse,back_location", MOVE_CASES)
    def test_move_and_back(self, request, surface, key, move, location, inverse, back_location):
        links = TORUS_LINKS if surface == 'torus' else SQUARE_LINKS
        link = parse_link(links[key], request.getfixturevalue(surface))
        moved = apply_move(link, move, location)
        assert moved != link
        assert_same_traces(link, moved)
        back = apply_move(moved, inverse, back_location)
        assert_same_traces(link, back)
        if move not in (MoveKind.I, MoveKind.I_INV):
            assert back == link

    @pytest.mark.parametrize("key,face", [('s23', 1), ('s23', 2), ('s24', 2), ('s25', 1), ('s34', 2), ('c12', 1)])
    def test_kinks_land_next_to_the_face(self, request, key, face):
        surface = 'torus' if key in TORUS_LINKS else 'square'
        links = TORUS_LINKS if surface == 'torus' else SQUARE_LINKS
        link = parse_link(links[key], request.getfixturevalue(surface))
        moved = apply_move(link, V, MoveLocation(face, 0))
        arc = link.arcs(face)[0]
        for slot in (arc.slot_in, arc.slot_out):
            edge = link.tri.edge_of(Slot(face, slot))
            word = moved.tangles[edge]
            assert word.crossing_count() == 1
            wall = link.tri.wall_of(Slot(face, slot))
            kink_at_wall = word.slices[:3] if wall == 0 else word.slices[-3:]
            assert [s.kind for s in kink_at_wall] == [SliceKind.CUP, SliceKind.CROSS_OVER if slot == arc.slot_in
                                                     else SliceKind.CROSS_UNDER, SliceKind.CAP]


# 手写的移动前后链环，不经过 apply_move
HAND_BUILT = [
    # 一对相反扭结
    ('square', "arc 1 3 1 0\narc 2 1 2 0\n",
     "arc 1 3 1 0\narc 2 1 2 0\ntangle e2 cup 2 x+ 1 cap 2\ntangle e1 cup 2 x- 1 cap 2\n"),
    # 双角里的第二 Reidemeister 移动
    ('torus', TORUS_LINKS['p12'], TORUS_LINKS['p12'] + "tangle e1 x+ 1 x- 1\n"),
    # 拆成两段弧，面侧 U 形弧在墙 0 一侧
    ('torus', TORUS_LINKS['c12'], "arc 1 1 3 0\narc 1 3 2 1\narc 2 2 1 0\ntangle e3 x+ 1 cap 1\n"),
    # 拆成两段弧，面侧 U 形弧在墙 1 一侧
    ('torus', TORUS_LINKS['c12'], "arc 1 1 2 0\narc 2 1 3 0\narc 2 3 2 1\ntangle e3 cup 1\n"),
    ('square', "arc 1 3 2 0\n", "arc 1 2 1 0\narc 1 1 3 1\ntangle e1 x+ 1 cap 1\n"),
    # 同角交换
    ('torus', TORUS_LINKS['p12'], TORUS_LINKS['p12'] + "tangle e1 x- 1\ntangle e2 x+ 1\n"),
    # 异角交换
    ('torus', TORUS_LINKS['c12+c13'],
     "arc 1 1 3 0\narc 1 1 2 1\narc 2 2 1 0\narc 2 3 1 1\ntangle e1 x- 1\n"),
    # 离侧 U 形弧推进面里
    ('square', "tangle e2 cup 1\n", "arc 1 3 1 0\narc 1 1 3 1\ntangle e1 x+ 1 cap 1\n"),
]


@pytest.mark.parametrize("surface,before,after", HAND_BUILT)
def test_hand_built_pairs(request, surface, before, after):
    tri = request.getfixturevalue(surface)
    assert_same_traces(parse_link(before, tri), parse_link(after, tri))
