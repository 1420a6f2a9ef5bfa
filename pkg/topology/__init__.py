"""
量子迹计算系统 - 拓扑模块
理想三角剖分、双角与三角形的局部迹、全局状态和、好位置移动、经典对照与对角交换
"""

from .surface import (
    Slot,
    EdgeRecord,
    IdealTriangulation,
    FlipSquare,
    corner_first_role,
    triangle_commutation,
    sigma_matrix,
    edge_commutation,
    punctures,
    euler_characteristic,
    slot_vector,
    balanced,
    edge_embed,
    tensor_to_edge,
    flip_square,
    flip
)

from .biangle import (
    SliceKind,
    Slice,
    TangleWord,
    StatedTangle,
    CrossinglessMatching,
    BiangleEvaluator,
    kink_word,
    right_half_twist,
    kauffman_resolve,
    eval_matching,
    trace_b
)

from .triangle import (
    TriangleArc,
    corner_arc_trace,
    uturn_arc_trace,
    face_trace,
    allowed_sign_pairs
)

from .state_sum import (
    GoodPositionLink,
    BoundaryState,
    BiangleFactor,
    quantum_trace,
    triangle_trace,
    all_boundary_states,
    trace_at_unity,
    superpose,
    superpose_states,
    leading_intersection_vector
)

from .moves import (
    MoveKind,
    MoveLocation,
    apply_move
)

from .classical import (
    TurnKind,
    TurnStep,
    turn_matrix,
    shear_matrix,
    holonomy_trace,
    classical_state_sum,
    multicurve_state_sum,
    link_turn_sequences
)

from .flip import (
    CONNECTION_TYPES,
    FlipBlockTable,
    OLD_BLOCKS,
    NEW_BLOCKS,
    SquareStrand,
    square_strands,
    reposition_link,
    grouped_trace,
    transfer_trace,
    block_from_triangles,
    block_element
)

__all__ = [
    # 三角剖分
    'Slot',
    'EdgeRecord',
    'IdealTriangulation',
    'FlipSquare',
    'corner_first_role',
    'triangle_commutation',
    'sigma_matrix',
    'edge_commutation',
    'punctures',
    'euler_characteristic',
    'slot_vector',
    'balanced',
    'edge_embed',
    'tensor_to_edge',
    'flip_square',
    'flip',

    # 双角
    'SliceKind',
    'Slice',
    'TangleWord',
    'StatedTangle',
    'CrossinglessMatching',
    'BiangleEvaluator',
    'kink_word',
    'right_half_twist',
    'kauffman_resolve',
    'eval_matching',
    'trace_b',

    # 三角形
    'TriangleArc',
    'corner_arc_trace',
    'uturn_arc_trace',
    'face_trace',
    'allowed_sign_pairs',

    # 状态和
    'GoodPositionLink',
    'BoundaryState',
    'BiangleFactor',
    'quantum_trace',
    'triangle_trace',
    'all_boundary_states',
    'trace_at_unity',
    'superpose',
    'superpose_states',
    'leading_intersection_vector',

    # 移动
    'MoveKind',
    'MoveLocation',
    'apply_move',

    # 经典对照
    'TurnKind',
    'TurnStep',
    'turn_matrix',
    'shear_matrix',
    'holonomy_trace',
    'classical_state_sum',
    'multicurve_state_sum',
    'link_turn_sequences',

    # 对角交换
    'CONNECTION_TYPES',
    'FlipBlockTable',
    'OLD_BLOCKS',
    'NEW_BLOCKS',
    'SquareStrand',
    'square_strands',
    'reposition_link',
    'grouped_trace',
    'transfer_trace',
    'block_from_triangles',
    'block_element'
]

__version__ = '1.0.0'
