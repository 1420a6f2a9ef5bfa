#!/usr/bin/env python3
"""
量子迹计算系统 - 基础冒烟测试
在三个小夹具上验证核心计算的基本值
"""

import logging

# 设置日志
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger('BasicTest')

TRIANGLE = "triangles 1\nedge e1 1.1 @boundary\nedge e2 1.2 @boundary\nedge e3 1.3 @boundary\n"
TORUS = "triangles 2\nedge e1 1.1 2.1\nedge e2 1.2 2.2\nedge e3 1.3 2.3\n"


def main():
    """主测试函数"""
    logger.info("=== 量子迹计算系统 - 基础测试 ===")

    tests_passed = 0
    total_tests = 0

    # 测试1: 导入模块
    total_tests += 1
    try:
        logger.info("1. 测试模块导入...")

        from config_manager import get_config_manager
        from algebra.omega_ring import LOOP_VALUE
        from formats.file_protocol import parse_link, parse_surface
        from topology.biangle import Slice, SliceKind, StatedTangle, TangleWord, trace_b
        from topology.state_sum import BoundaryState, quantum_trace, trace_at_unity
        from topology.flip import reposition_link, transfer_trace
        from checks import CheckSuite, PropertyChecker

        logger.info("✓ 所有模块导入成功")
        tests_passed += 1
    except Exception as e:
        logger.error(f"✗ 模块导入失败: {e}")
        return False

    # 测试2: 配置管理
    total_tests += 1
    try:
        logger.info("2. 测试配置管理...")
        config_manager = get_config_manager()
        compute = config_manager.get_compute_config()
        logger.info(f"  交叉数上限: {compute.max_crossings}")
        logger.info(f"  边点数上限: {compute.max_side_points}")
        errors = config_manager.validate_configs()
        if errors:
            logger.error(f"✗ 配置无效: {errors}")
        else:
            logger.info("✓ 配置管理测试成功")
            tests_passed += 1
    except Exception as e:
        logger.error(f"✗ 配置管理测试失败: {e}")

    # 测试3: 双角中的小圆圈
    total_tests += 1
    try:
        logger.info("3. 测试双角迹...")
        loop = TangleWord(0, (Slice(SliceKind.CUP, 1), Slice(SliceKind.CAP, 1)))
        value = trace_b(StatedTangle(loop, (), ()))
        logger.info(f"  小圆圈: {value.render()}")
        if value == LOOP_VALUE and trace_b(StatedTangle(loop, (), ()), "resolve") == LOOP_VALUE:
            logger.info("✓ 双角迹测试成功")
            tests_passed += 1
        else:
            logger.error("✗ 小圆圈的值不对")
    except Exception as e:
        logger.error(f"✗ 双角迹测试失败: {e}")

    # 测试4: 环面曲线
    total_tests += 1
    try:
        logger.info("4. 测试环面上的量子迹...")
        torus = parse_surface(TORUS)
        curve = parse_link("arc 1 1 2 0\narc 2 2 1 0\n", torus)
        value = quantum_trace(curve)
        logger.info(f"  量子迹: {value.weyl_terms()}")
        at_unity = trace_at_unity(curve)
        logger.info(f"  ω=1: {at_unity.render()}")
        if at_unity.evaluate([1.0, 1.0, 1.0]) == 3.0 and transfer_trace(curve, 0) == quantum_trace(
                reposition_link(curve, 0)):
            logger.info("✓ 环面量子迹测试成功")
            tests_passed += 1
        else:
            logger.error("✗ 环面量子迹不一致")
    except Exception as e:
        logger.error(f"✗ 环面量子迹测试失败: {e}")

    # 测试5: 性质检查
    total_tests += 1
    try:
        logger.info("5. 测试性质检查...")
        triangle = parse_surface(TRIANGLE)
        corner = parse_link("arc 1 1 2 0\n", triangle)
        report = PropertyChecker().run_suite(CheckSuite.MOVES, corner)
        logger.info(f"  {report.to_dict()['message']}")
        state = BoundaryState({(0, 1): 1, (1, 1): 1})
        if report.success and not quantum_trace(corner, state).is_zero():
            logger.info("✓ 性质检查测试成功")
            tests_passed += 1
        else:
            logger.error("✗ 性质检查失败")
    except Exception as e:
        logger.error(f"✗ 性质检查测试失败: {e}")

    # 显示测试结果
    logger.info("=== 测试结果 ===")
    logger.info(f"总测试数: {total_tests}")
    logger.info(f"通过数: {tests_passed}")
    logger.info(f"失败数: {total_tests - tests_passed}")

    success_rate = (tests_passed / total_tests * 100) if total_tests > 0 else 0
    logger.info(f"成功率: {success_rate:.1f}%")

    if tests_passed == total_tests:
        logger.info("🎉 所有测试通过！")
        return True
    else:
        logger.warning(f"⚠️ {total_tests - tests_passed} 个测试失败，需要修复")
        return False


if __name__ == "__main__":
    try:
        success = main()
        exit(0 if success else 1)
    except KeyboardInterrupt:
        logger.info("测试被用户中断")
        exit(1)
    except Exception as e:
        logger.error(f"测试执行异常: {e}")
        exit(1)
