"""4D rotations as products of left/right quaternion multiplications.

A 4D rotation matrix A factors as M_L(L) @ M_R(R) for a unique pair of
unit quaternions (L, R), up to the simultaneous sign flip (-L, -R). The
bridge between A and the pair is its associate matrix: the 4x4 array of
quarter-sums of signed entries of A, which equals the outer product of
L's components with R's components whenever A is a genuine rotation (it
then has rank 1 and unit Frobenius norm). Decomposition is therefore:
associate matrix -> rank-1 factorization -> sign canonicalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotARotation, RankDeficiency
from .linalg import DEFAULT_TOL, as_mat4, check_orthonormal, mat_mul, rank1_factor
from .quaternion import as_unit, left_matrix, right_matrix

SIGN_SCAN_EPS = 1e-12


@dataclass(frozen=True)
class QuatPairDecomposition:
    """Left/right unit quaternion factors of a 4D rotation.

    rank1_residual measures how far the associate matrix is from rank 1;
    reconstruction_error is ||A - M_L(left) M_R(right)||_F. Both are
    reported rather than hidden so callers can apply their own thresholds
    to noisy inputs.
    """

    left: np.ndarray
    right: np.ndarray
    rank1_residual: float
    reconstruction_error: float


def compose_4d(l, r) -> np.ndarray:
    """4D rotation matrix M_L(l) @ M_R(r) for unit quaternions l, r."""
    return mat_mul(left_matrix(as_unit(l)), right_matrix(as_unit(r)))


def associate_matrix(a) -> np.ndarray:
    """Associate matrix of a 4x4 matrix: signed quarter-sums of entries.

    Defined for any 4x4 input; the rank-1 and unit-norm properties hold
    exactly when the input is a rotation matrix. Linear in the input.
    """
    a = as_mat4(a)
    return 0.25 * np.array(
        [
            [
                a[0, 0] + a[1, 1] + a[2, 2] + a[3, 3],
                a[1, 0] - a[0, 1] - a[3, 2] + a[2, 3],
                a[2, 0] + a[3, 1] - a[0, 2] - a[1, 3],
                a[3, 0] - a[2, 1] + a[1, 2] - a[0, 3],
            ],
            [
                a[1, 0] - a[0, 1] + a[3, 2] - a[2, 3],
                -a[0, 0] - a[1, 1] + a[2, 2] + a[3, 3],
                a[3, 0] - a[2, 1] - a[1, 2] + a[0, 3],
                -a[2, 0] - a[3, 1] - a[0, 2] - a[1, 3],
            ],
            [
                a[2, 0] - a[3, 1] - a[0, 2] + a[1, 3],
                -a[3, 0] - a[2, 1] - a[1, 2] - a[0, 3],
                -a[0, 0] + a[1, 1] - a[2, 2] + a[3, 3],
                a[1, 0] + a[0, 1] - a[3, 2] - a[2, 3],
            ],
            [
                a[3, 0] + a[2, 1] - a[1, 2] - a[0, 3],
                a[2, 0] - a[3, 1] + a[0, 2] - a[1, 3],
                -a[1, 0] - a[0, 1] - a[3, 2] - a[2, 3],
                -a[0, 0] + a[1, 1] + a[2, 2] - a[3, 3],
            ],
        ]
    )


def canonical_pair(left: np.ndarray, right: np.ndarray):
    """Pick the sign representative: first component of `left` with
    magnitude above 1e-12 (scanning w, x, y, z) is made positive; `right`
    flips with it so the product is unchanged."""
    for i in range(4):
        if abs(left[i]) > SIGN_SCAN_EPS:
            if left[i] < 0.0:
                return -left, -right
            break
    return left, right


def decompose_4d(a, tol: float = DEFAULT_TOL) -> QuatPairDecomposition:
    """Recover the unit quaternion pair (L, R) of a 4D rotation matrix.

    Raises NotARotation when the input fails the orthogonality gate or has
    determinant -1 (4D rotoreflections are out of scope), RankDeficiency
    when the associate matrix is not rank 1 within tol (an input that
    sneaked past the orthogonality gate but is not a rotation).
    """
    a = as_mat4(a)
    report = check_orthonormal(a, tol)
    if report.max_abs_gram_deviation > tol:
        raise NotARotation(
            f"orthogonality deviation {report.max_abs_gram_deviation:.3e} > tol {tol:.3e}"
        )
    if abs(report.determinant - 1.0) > tol:
        raise NotARotation(f"determinant {report.determinant!r} is not +1")
    m = associate_matrix(a)
    u, v, residual = rank1_factor(m, tol)
    if residual > tol:
        raise RankDeficiency(f"rank-1 residual {residual:.3e} > tol {tol:.3e}")
    left = as_unit(u)
    right = as_unit(v)
    left, right = canonical_pair(left, right)
    recon = compose_4d(left, right)
    err = float(np.sqrt(np.sum((a - recon) ** 2)))
    return QuatPairDecomposition(left, right, residual, err)
