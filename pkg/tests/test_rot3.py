import math

import numpy as np
import pytest

from quatrot.errors import (
    InconsistentSystem,
    KindMismatch,
    NotARotation,
    NotARotoreflection,
    NotOrthogonal,
    OriginPoint,
)
from quatrot.quaternion import conjugate
from quatrot.rng import Xorshift64Star, random_unit_quaternion
from quatrot.rot3 import (
    IsometryKind,
    _extract,
    classify,
    displaced_angle_cos,
    embed_4d,
    euler_rodrigues,
    extract_rotation,
    extract_rotoreflection,
    rotation_angle,
    rotoreflection_matrix,
)
from quatrot.rot4 import decompose_4d

S2 = math.sqrt(2.0) / 2.0
Z_QUARTER = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])


def _quat_close_up_to_sign(a, b, atol):
    return min(np.max(np.abs(a - b)), np.max(np.abs(a + b))) <= atol


def _quat_from_axis_angle(axis, angle):
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    return np.concatenate([[math.cos(angle / 2)], math.sin(angle / 2) * axis])


# --- matrix construction ---------------------------------------------------

def test_euler_rodrigues_identity():
    np.testing.assert_array_equal(euler_rodrigues([1, 0, 0, 0]), np.eye(3))


def test_euler_rodrigues_z_quarter_turn():
    np.testing.assert_allclose(euler_rodrigues([S2, 0, 0, S2]), Z_QUARTER, atol=1e-15)


def test_euler_rodrigues_x_half_turn():
    np.testing.assert_allclose(
        euler_rodrigues([0, 1, 0, 0]), np.diag([1.0, -1.0, -1.0]), atol=1e-15
    )


def test_rotoreflection_point_reflection():
    np.testing.assert_allclose(rotoreflection_matrix([1, 0, 0, 0]), -np.eye(3), atol=1e-15)


def test_rotoreflection_xy_mirror():
    np.testing.assert_allclose(
        rotoreflection_matrix([0, 0, 0, 1]), np.diag([1.0, 1.0, -1.0]), atol=1e-15
    )


def test_rotoreflection_is_negated_rotation():
    rng = Xorshift64Star(31)
    for _ in range(200):
        q = random_unit_quaternion(rng)
        assert np.max(np.abs(rotoreflection_matrix(q) + euler_rodrigues(q))) <= 1e-15


# --- classification --------------------------------------------------------

def test_classify_trivial():
    assert classify(np.eye(3)) is IsometryKind.ROTATION
    assert classify(np.diag([1.0, 1.0, -1.0])) is IsometryKind.ROTOREFLECTION


def test_classify_random_rotations():
    rng = Xorshift64Star(32)
    for _ in range(100):
        assert classify(euler_rodrigues(random_unit_quaternion(rng))) is IsometryKind.ROTATION


def test_classify_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        classify(np.diag([2.0, 1.0, 1.0]))


# --- extraction ------------------------------------------------------------

def test_extract_identity():
    result = extract_rotation(np.eye(3))
    np.testing.assert_array_equal(result.params, [1, 0, 0, 0])
    assert result.branch == "A"
    assert result.residual == 0.0


def test_extract_z_quarter_turn():
    result = extract_rotation(Z_QUARTER)
    np.testing.assert_allclose(result.params, [S2, 0, 0, S2], atol=1e-15)


def test_extract_half_turn_about_z():
    result = extract_rotation(np.diag([-1.0, -1.0, 1.0]))
    assert _quat_close_up_to_sign(result.params, np.array([0.0, 0.0, 0.0, 1.0]), 1e-15)
    assert result.branch == "D"


def test_extract_roundtrip_including_extreme_angles():
    rng = Xorshift64Star(33)
    samples = [random_unit_quaternion(rng) for _ in range(2000)]
    for _ in range(200):
        axis = [rng.normal(), rng.normal(), rng.normal()]
        samples.append(_quat_from_axis_angle(axis, 1e-8 * rng.uniform()))
        samples.append(_quat_from_axis_angle(axis, math.pi - 1e-8 * rng.uniform()))
    for q in samples:
        result = extract_rotation(euler_rodrigues(q))
        assert result.residual <= 1e-12
        assert _quat_close_up_to_sign(result.params, q, 1e-12)


def test_extract_near_pi_uses_non_scalar_branch():
    rng = Xorshift64Star(34)
    for _ in range(100):
        axis = [rng.normal(), rng.normal(), rng.normal()]
        q = _quat_from_axis_angle(axis, math.pi - 1e-8)
        result = extract_rotation(euler_rodrigues(q))
        assert result.branch in ("B", "C", "D")


def test_extract_sign_convention():
    rng = Xorshift64Star(35)
    for _ in range(200):
        q = random_unit_quaternion(rng)
        params = extract_rotation(euler_rodrigues(q)).params
        for comp in params:
            if abs(comp) > 1e-12:
                assert comp > 0
                break


def test_extract_refine_renormalizes():
    rng = Xorshift64Star(36)
    q = random_unit_quaternion(rng)
    result = extract_rotation(euler_rodrigues(q), refine=True)
    assert np.sum(result.params**2) == pytest.approx(1.0, abs=1e-15)


def test_extract_rejects_rotoreflection_and_junk():
    with pytest.raises(NotARotation):
        extract_rotation(np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(NotARotation):
        extract_rotation(np.diag([2.0, 1.0, 1.0]))


def test_inconsistent_system_detected():
    # reachable only past the orthogonality gate, so poke the solver directly
    m = np.eye(3)
    m[0, 1] = 0.1
    with pytest.raises(InconsistentSystem):
        _extract(m, 1e-9)


def test_extract_rotoreflection_examples():
    result = extract_rotoreflection(-np.eye(3))
    np.testing.assert_array_equal(result.params, [1, 0, 0, 0])
    result = extract_rotoreflection(np.diag([1.0, 1.0, -1.0]))
    assert _quat_close_up_to_sign(result.params, np.array([0.0, 0.0, 0.0, 1.0]), 1e-15)


def test_extract_rotoreflection_roundtrip():
    rng = Xorshift64Star(37)
    for _ in range(500):
        q = random_unit_quaternion(rng)
        result = extract_rotoreflection(rotoreflection_matrix(q))
        assert result.residual <= 1e-12
        assert _quat_close_up_to_sign(result.params, q, 1e-12)


def test_extract_rotoreflection_rejects_rotation():
    with pytest.raises(NotARotoreflection):
        extract_rotoreflection(np.eye(3))


# --- ten-equation cross-checks --------------------------------------------

def test_all_ten_equations_hold_for_extracted_parameters():
    rng = Xorshift64Star(38)
    for _ in range(200):
        m = euler_rodrigues(random_unit_quaternion(rng))
        a, b, c, d = extract_rotation(m).params
        checks = [
            (a * a, (1 + m[0, 0] + m[1, 1] + m[2, 2]) / 4),
            (b * b, (1 + m[0, 0] - m[1, 1] - m[2, 2]) / 4),
            (c * c, (1 - m[0, 0] + m[1, 1] - m[2, 2]) / 4),
            (d * d, (1 - m[0, 0] - m[1, 1] + m[2, 2]) / 4),
            (a * b, (m[2, 1] - m[1, 2]) / 4),
            (a * c, (m[0, 2] - m[2, 0]) / 4),
            (a * d, (m[1, 0] - m[0, 1]) / 4),
            (c * d, (m[2, 1] + m[1, 2]) / 4),
            (d * b, (m[0, 2] + m[2, 0]) / 4),
            (b * c, (m[1, 0] + m[0, 1]) / 4),
        ]
        for lhs, rhs in checks:
            assert abs(lhs - rhs) <= 1e-12


def test_diagonal_bounds_and_quarter_trace():
    rng = Xorshift64Star(39)
    for _ in range(500):
        q = random_unit_quaternion(rng)
        m = euler_rodrigues(q)
        cos_alpha = rotation_angle(m, IsometryKind.ROTATION).cos_alpha
        # (1 + trace)/4 >= 0 and each diagonal entry >= cos(alpha)
        assert (1 + np.trace(m)) / 4 >= 0.0
        for i in range(3):
            assert m[i, i] >= cos_alpha - 1e-12
        mr = rotoreflection_matrix(q)
        cos_alpha_r = rotation_angle(mr, IsometryKind.ROTOREFLECTION).cos_alpha
        for i in range(3):
            assert mr[i, i] <= cos_alpha_r + 1e-12


# --- angles ----------------------------------------------------------------

def test_angle_trivial_cases():
    assert rotation_angle(np.eye(3), IsometryKind.ROTATION).alpha == 0.0
    report = rotation_angle(Z_QUARTER, IsometryKind.ROTATION)
    assert report.cos_alpha == 0.0
    assert report.alpha == pytest.approx(math.pi / 2, abs=1e-15)
    report = rotation_angle(-np.eye(3), IsometryKind.ROTOREFLECTION)
    assert report.cos_alpha == -1.0
    assert report.alpha == pytest.approx(math.pi, abs=1e-15)


def test_angle_matches_generating_quaternion():
    rng = Xorshift64Star(40)
    for _ in range(500):
        q = random_unit_quaternion(rng)
        alpha = 2 * math.acos(min(1.0, abs(q[0])))
        got = rotation_angle(euler_rodrigues(q), IsometryKind.ROTATION).alpha
        assert got == pytest.approx(alpha, abs=1e-9)


def test_angle_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        rotation_angle(np.diag([2.0, 1.0, 1.0]), IsometryKind.ROTATION)


# --- embedding -------------------------------------------------------------

def test_embed_trivial():
    np.testing.assert_array_equal(embed_4d(np.eye(3), IsometryKind.ROTATION), np.eye(4))
    np.testing.assert_array_equal(
        embed_4d(np.diag([1.0, 1.0, -1.0]), IsometryKind.ROTOREFLECTION),
        np.diag([-1.0, 1.0, 1.0, -1.0]),
    )


def test_embed_kind_mismatch():
    with pytest.raises(KindMismatch):
        embed_4d(np.eye(3), IsometryKind.ROTOREFLECTION)
    with pytest.raises(NotOrthogonal):
        embed_4d(np.diag([2.0, 1.0, 1.0]), IsometryKind.ROTATION)


def test_embedded_rotation_decomposes_into_conjugate_pair():
    rng = Xorshift64Star(41)
    for _ in range(200):
        q = random_unit_quaternion(rng)
        m = euler_rodrigues(q)
        dec = decompose_4d(embed_4d(m, IsometryKind.ROTATION))
        assert _quat_close_up_to_sign(dec.left, extract_rotation(m).params, 1e-12)
        assert np.max(np.abs(dec.right - conjugate(dec.left))) <= 1e-12


def test_embedded_rotoreflection_right_factor():
    rng = Xorshift64Star(42)
    for _ in range(200):
        q = random_unit_quaternion(rng)
        m = rotoreflection_matrix(q)
        dec = decompose_4d(embed_4d(m, IsometryKind.ROTOREFLECTION))
        a, b, c, d = dec.left
        expected_right = np.array([-a, b, c, d])
        assert np.max(np.abs(dec.right - expected_right)) <= 1e-12


# --- displaced angles ------------------------------------------------------

def test_displaced_angle_axis_point():
    for alpha in (0.0, 0.5, math.pi / 2, 3.0):
        assert displaced_angle_cos((0, 0, 1), alpha, IsometryKind.ROTATION) == 1.0
        assert displaced_angle_cos((0, 0, 1), alpha, IsometryKind.ROTOREFLECTION) == -1.0


def test_displaced_angle_equatorial_point():
    for alpha in (0.1, 1.0, 2.5):
        for kind in IsometryKind:
            got = displaced_angle_cos((1, 0, 0), alpha, kind)
            assert got == pytest.approx(math.cos(alpha), abs=1e-15)


def test_displaced_angle_origin_rejected():
    with pytest.raises(OriginPoint):
        displaced_angle_cos((0, 0, 0), 1.0, IsometryKind.ROTATION)


def test_displaced_angle_inequalities():
    rng = Xorshift64Star(43)
    for _ in range(500):
        point = (rng.normal(), rng.normal(), rng.normal())
        alpha = math.pi * rng.uniform()
        cos_alpha = math.cos(alpha)
        assert displaced_angle_cos(point, alpha, IsometryKind.ROTATION) - cos_alpha >= -1e-12
        assert displaced_angle_cos(point, alpha, IsometryKind.ROTOREFLECTION) - cos_alpha <= 1e-12


def test_displaced_angle_matches_explicit_z_isometry():
    # independent oracle: act with the explicit Z-axis matrix and take the
    # angle between the rays directly
    rng = Xorshift64Star(44)
    for _ in range(200):
        p = np.array([rng.normal(), rng.normal(), rng.normal()])
        alpha = math.pi * rng.uniform()
        rot = np.array(
            [
                [math.cos(alpha), -math.sin(alpha), 0.0],
                [math.sin(alpha), math.cos(alpha), 0.0],
                [0.0, 0.0, 1.0],
            ]
        )
        for kind, m in (
            (IsometryKind.ROTATION, rot),
            (IsometryKind.ROTOREFLECTION, rot @ np.diag([1.0, 1.0, -1.0])),
        ):
            image = m @ p
            expected = float(p @ image / (np.linalg.norm(p) * np.linalg.norm(image)))
            got = displaced_angle_cos(p, alpha, kind)
            assert got == pytest.approx(expected, abs=1e-12)
