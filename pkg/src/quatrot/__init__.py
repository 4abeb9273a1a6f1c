"""Quaternion representation of 3D and 4D rotations.

Compose and decompose 4D rotation matrices as left/right unit-quaternion
multiplication pairs, convert between 3D rotation (or rotoreflection)
matrices and their four unit-quaternion parameters, and classify/measure
3x3 orthogonal matrices. Quaternions are (w, x, y, z) numpy arrays,
scalar first.
"""

from .errors import (
    InconsistentSystem,
    IndeterminateDeterminant,
    KindMismatch,
    NonFiniteInput,
    NotARotation,
    NotARotoreflection,
    NotOrthogonal,
    NotUnit,
    OriginPoint,
    QuatrotError,
    RankDeficiency,
    ZeroMatrix,
)
from .linalg import (
    OrthogonalityReport,
    as_mat3,
    as_mat4,
    as_vec4,
    check_orthonormal,
    mat_mul,
    rank1_factor,
)
from .quaternion import as_unit, conjugate, left_matrix, quat_mul, right_matrix
from .rng import Xorshift64Star, random_rotation, random_unit_quaternion
from .rot3 import (
    AngleReport,
    ExtractionResult,
    IsometryKind,
    classify,
    displaced_angle_cos,
    embed_4d,
    euler_rodrigues,
    extract_rotation,
    extract_rotoreflection,
    rotation_angle,
    rotoreflection_matrix,
)
from .rot4 import (
    QuatPairDecomposition,
    associate_matrix,
    compose_4d,
    decompose_4d,
)

__version__ = "0.1.0"

__all__ = [
    "AngleReport",
    "ExtractionResult",
    "InconsistentSystem",
    "IndeterminateDeterminant",
    "IsometryKind",
    "KindMismatch",
    "NonFiniteInput",
    "NotARotation",
    "NotARotoreflection",
    "NotOrthogonal",
    "NotUnit",
    "OriginPoint",
    "OrthogonalityReport",
    "QuatPairDecomposition",
    "QuatrotError",
    "RankDeficiency",
    "Xorshift64Star",
    "ZeroMatrix",
    "as_mat3",
    "as_mat4",
    "as_unit",
    "as_vec4",
    "associate_matrix",
    "check_orthonormal",
    "classify",
    "compose_4d",
    "conjugate",
    "decompose_4d",
    "displaced_angle_cos",
    "embed_4d",
    "euler_rodrigues",
    "extract_rotation",
    "extract_rotoreflection",
    "left_matrix",
    "mat_mul",
    "quat_mul",
    "random_rotation",
    "random_unit_quaternion",
    "rank1_factor",
    "right_matrix",
    "rotation_angle",
    "rotoreflection_matrix",
]
