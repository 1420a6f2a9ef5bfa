"""
量子迹计算系统 - 双角迹测试
局部常数、扭结、半扭转、无交叉闭式与 Kauffman 关系
"""

import gc
import weakref

import numpy as np
import pytest

from algebra.omega_ring import A, A_INV, ALPHA, BETA, LOOP_VALUE, NEGATIVE_KINK, ONE, OMEGA, POSITIVE_KINK, ZERO, OmegaPoly
from errors import ComputationLimitError, TraceInputError
from topology.biangle import (
    BiangleEvaluator, CrossinglessMatching, Slice, SliceKind, StatedTangle, TangleWord, all_signs,
    eval_matching, kauffman_resolve, kink_word, right_half_twist, trace_b,
)

CUP, CAP = SliceKind.CUP, SliceKind.CAP
OVER, UNDER = SliceKind.CROSS_OVER, SliceKind.CROSS_UNDER


def loop_word() -> TangleWord:
    return TangleWord(0, (Slice(CUP, 1), Slice(CAP, 1)))


def _random_word(rng, max_width=6, max_crossings=3) -> TangleWord:
    n0 = int(rng.integers(0, 5))
    width = n0
    crossings = 0
    slices = []
    for _ in range(int(rng.integers(1, 7))):
        options = []
        if width + 2 <= max_width:
            options.append(CUP)
        if width >= 2:
            options.append(CAP)
            if crossings < max_crossings:
                options.extend([OVER, UNDER])
        if not options:
            break
        kind = options[int(rng.integers(0, len(options)))]
        if kind == CUP:
            position = int(rng.integers(1, width + 2))
            width += 2
        else:
            position = int(rng.integers(1, width))
            if kind == CAP:
                width -= 2
            else:
                crossings += 1
        slices.append(Slice(kind, position))
    return TangleWord(n0, tuple(slices))


def _random_signs(rng, length):
    return tuple(int(s) for s in rng.choice([1, -1], size=length))


class TestConstants:
    """双角中的基本值"""

    def test_small_circle(self):
        tangle = StatedTangle(loop_word(), (), ())
        assert trace_b(tangle) == LOOP_VALUE
        assert trace_b(tangle, method="resolve") == LOOP_VALUE
        assert LOOP_VALUE == -(A ** 2) - A_INV ** 2

    def test_loop_resolves_to_empty_matching(self):
        assert kauffman_resolve(loop_word()) == [(LOOP_VALUE, CrossinglessMatching(0, 0, ()))]

    def test_parallel_strands_resolve_to_identity(self):
        result = kauffman_resolve(TangleWord.identity(2))
        assert result == [(ONE, CrossinglessMatching(2, 2, (((0, 1), (1, 1)), ((0, 2), (1, 2)))))]

    @pytest.mark.parametrize("sign", [1, -1])
    def test_kinks(self, sign):
        positive = StatedTangle(kink_word(1, 1, True), (sign,), (sign,))
        negative = StatedTangle(kink_word(1, 1, False), (sign,), (sign,))
        assert trace_b(positive) == POSITIVE_KINK
        assert trace_b(negative) == NEGATIVE_KINK
        assert trace_b(positive, method="resolve") == POSITIVE_KINK
        assert trace_b(StatedTangle(kink_word(1, 1, True), (sign,), (-sign,))) == ZERO

    def test_cup_and_cap_tables(self):
        evaluator = BiangleEvaluator(return_wall=1)
        assert evaluator.cup_weight(-1, 1) == ALPHA
        assert evaluator.cup_weight(1, -1) == BETA
        assert evaluator.cup_weight(1, 1) == ZERO
        assert evaluator.cap_weight(-1, 1) == OMEGA
        assert evaluator.cap_weight(1, -1) == -OmegaPoly.monomial(5)

    def test_mirrored_return_wall_keeps_loop_value(self):
        evaluator = BiangleEvaluator(return_wall=0)
        assert evaluator.cup_weight(-1, 1) == OMEGA
        assert evaluator.trace_b(StatedTangle(loop_word(), (), ())) == LOOP_VALUE
        with pytest.raises(ValueError):
            BiangleEvaluator(return_wall=2)


class TestCrosslessClosedForm:
    """无交叉匹配的闭式"""

    def test_through_strands(self):
        match = CrossinglessMatching(2, 2, (((0, 1), (1, 1)), ((0, 2), (1, 2))))
        assert eval_matching(match, (1, -1), (1, -1)) == ONE
        assert eval_matching(match, (1, -1), (-1, -1)) == ZERO

    def test_wall_one_return(self):
        match = CrossinglessMatching(0, 2, (((1, 1), (1, 2)),))
        # 状态按位置从下往上
        assert eval_matching(match, (), (1, -1)) == BETA
        assert eval_matching(match, (), (-1, 1)) == ALPHA
        assert eval_matching(match, (), (1, 1)) == ZERO

    def test_wall_zero_return(self):
        match = CrossinglessMatching(2, 0, (((0, 1), (0, 2)),))
        # −A⁻³·α
        assert eval_matching(match, (-1, 1), ()) == -(A_INV ** 3) * ALPHA
        assert eval_matching(match, (-1, 1), ()) == OMEGA


class TestRightHalfTwist:
    """两条线的右半扭转"""

    def test_shape(self):
        assert right_half_twist(2).slices == (Slice(UNDER, 1),)
        assert right_half_twist(3).crossing_count() == 3

    def test_values(self):
        word = right_half_twist(2)
        assert trace_b(StatedTangle(word, (1, 1), (1, 1))) == A
        # 转弯项
        assert trace_b(StatedTangle(word, (-1, 1), (1, -1))) == OmegaPoly.monomial(2)
        # 直通项加转弯项
        assert trace_b(StatedTangle(word, (1, -1), (1, -1))) == A - A_INV ** 4 * BETA ** 2
        assert A - A_INV ** 4 * ALPHA ** 2 == ZERO

    @pytest.mark.parametrize("s0,s1,expected", [
        ((1, 1), (1, 1), A),
        ((-1, -1), (-1, -1), A),
        ((1, -1), (1, -1), A - A_INV ** 4 * BETA ** 2),
        ((-1, 1), (-1, 1), ZERO),
        ((-1, 1), (1, -1), OmegaPoly.monomial(2)),
        ((1, -1), (-1, 1), OmegaPoly.monomial(2)),
    ])
    def test_nonzero_table(self, s0, s1, expected):
        assert trace_b(StatedTangle(right_half_twist(2), s0, s1)) == expected

    def test_full_table(self):
        """16 个状态中只有上表列出的项非零"""
        listed = {((1, 1), (1, 1)), ((-1, -1), (-1, -1)), ((1, -1), (1, -1)),
                  ((-1, 1), (1, -1)), ((1, -1), (-1, 1))}
        assert A - A_INV ** 4 * BETA ** 2 == OmegaPoly({-2: 1, 6: -1})
        for s0 in all_signs(2):
            for s1 in all_signs(2):
                value = trace_b(StatedTangle(right_half_twist(2), s0, s1))
                assert value.is_zero() == ((s0, s1) not in listed), (s0, s1)
                assert value == trace_b(StatedTangle(right_half_twist(2), s0, s1), method="resolve")

    def test_all_states_agree_with_resolution(self):
        word = right_half_twist(3)
        for s0 in all_signs(3):
            for s1 in all_signs(3):
                tangle = StatedTangle(word, s0, s1)
                assert trace_b(tangle) == trace_b(tangle, method="resolve")


class TestSkeinRelation:
    """随机缠结上的 Kauffman 关系与两种求值方法的一致性"""

    def test_random_tangles(self):
        rng = np.random.default_rng(20240521)
        checked = 0
        while checked < 200:
            word = _random_word(rng)
            crossings = [i for i, s in enumerate(word.slices) if s.kind in (OVER, UNDER)]
            if not crossings:
                continue
            index = crossings[int(rng.integers(0, len(crossings)))]
            piece = word.slices[index]
            before, after = word.slices[:index], word.slices[index + 1:]
            k0 = TangleWord(word.n0, before + after)
            k_inf = TangleWord(word.n0, before + (Slice(CAP, piece.position), Slice(CUP, piece.position)) + after)
            straight, turned = (A_INV, A) if piece.kind == OVER else (A, A_INV)
            s0 = _random_signs(rng, word.n0)
            s1 = _random_signs(rng, word.n1)
            lhs = trace_b(StatedTangle(word, s0, s1))
            rhs = (straight * trace_b(StatedTangle(k0, s0, s1))
                   + turned * trace_b(StatedTangle(k_inf, s0, s1)))
            assert lhs == rhs
            assert lhs == trace_b(StatedTangle(word, s0, s1), method="resolve")
            checked += 1

    def test_reidemeister_two(self):
        word = TangleWord(2, (Slice(OVER, 1), Slice(UNDER, 1)))
        for s0 in all_signs(2):
            for s1 in all_signs(2):
                expected = ONE if s0 == s1 else ZERO
                assert trace_b(StatedTangle(word, s0, s1)) == expected

    def test_snake(self):
        for word in (TangleWord(1, (Slice(CUP, 2), Slice(CAP, 1))),
                     TangleWord(1, (Slice(CUP, 1), Slice(CAP, 2)))):
            for s in (1, -1):
                assert trace_b(StatedTangle(word, (s,), (s,))) == ONE
                assert trace_b(StatedTangle(word, (s,), (-s,))) == ZERO


class TestValidation:

    def test_bad_positions(self):
        with pytest.raises(TraceInputError):
            TangleWord(1, (Slice(CAP, 1),))
        with pytest.raises(TraceInputError):
            TangleWord(2, (Slice(CUP, 4),))

    def test_state_lengths(self):
        with pytest.raises(TraceInputError):
            StatedTangle(TangleWord.identity(2), (1,), (1, 1))

    def test_crossing_limit(self):
        word = TangleWord(2, (Slice(OVER, 1), Slice(OVER, 1)))
        with pytest.raises(ComputationLimitError):
            BiangleEvaluator(max_crossings=1).kauffman_resolve(word)

    def test_stacking(self):
        lower = TangleWord.identity(1)
        upper = TangleWord(0, (Slice(CUP, 1),))
        stacked = lower.stacked_below(upper)
        assert stacked.n0 == 1
        assert stacked.slices == (Slice(CUP, 2),)
        assert stacked.n1 == 3

    def test_prefix_keeps_far_wall(self):
        word = TangleWord.identity(2)
        prefixed = TangleWord.with_prefix([Slice(CAP, 1)], word)
        assert prefixed.n0 == 4
        assert prefixed.n1 == 2


class TestTransferCache:
    """扫描结果按求值器缓存"""

    def test_repeated_transfer(self):
        evaluator = BiangleEvaluator()
        word = kink_word(1, 1)
        first = evaluator.transfer(word, (1,))
        first[(1,)] = ZERO
        assert evaluator.transfer(word, (1,)) == {(1,): POSITIVE_KINK}
        assert len(evaluator._transfer_cache) == 1

    def test_evaluator_can_be_collected(self):
        evaluator = BiangleEvaluator()
        evaluator.transfer(right_half_twist(2), (1, -1))
        ref = weakref.ref(evaluator)
        del evaluator
        gc.collect()
        assert ref() is None

    def test_separate_conventions(self):
        loop = loop_word()
        assert BiangleEvaluator(return_wall=0).transfer(loop, ()) == {(): LOOP_VALUE}
        assert BiangleEvaluator(return_wall=1).transfer(loop, ()) == {(): LOOP_VALUE}
