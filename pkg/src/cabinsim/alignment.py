"""Rigid registration of the cabin model frame onto the tracking frame.

Least-squares rotation + translation (no scale: the cabin model is 1:1) via
the SVD of the centered cross-covariance, with the determinant correction
that keeps the rotation proper even for reflective noise configurations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# smallest/largest singular value ratio below which the model points are
# treated as collinear (rotation about the line is unobservable)
COLLINEARITY_RATIO = 1e-6


class AlignmentError(Exception):
    pass


class CountMismatch(AlignmentError):
    pass


class DegenerateConfiguration(AlignmentError):
    pass


@dataclass(frozen=True)
class PointCorrespondences:
    model_points: np.ndarray     # (n, 3), cabin-model frame [m]
    tracked_points: np.ndarray   # (n, 3), tracking frame [m]

    def __post_init__(self):
        object.__setattr__(self, "model_points",
                           np.asarray(self.model_points, dtype=float).reshape(-1, 3))
        object.__setattr__(self, "tracked_points",
                           np.asarray(self.tracked_points, dtype=float).reshape(-1, 3))


@dataclass(frozen=True)
class RigidTransform:
    rotation: np.ndarray      # 3x3, orthonormal, det +1
    translation: np.ndarray   # 3-vector [m]

    def __post_init__(self):
        object.__setattr__(self, "rotation", np.asarray(self.rotation, dtype=float))
        object.__setattr__(self, "translation",
                           np.asarray(self.translation, dtype=float).reshape(3))

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls(rotation=np.eye(3), translation=np.zeros(3))


@dataclass(frozen=True)
class AlignmentReport:
    rms_residual: float       # [m]
    max_residual: float       # [m]
    n_points: int


def estimate_rigid(corr: PointCorrespondences) -> tuple[RigidTransform, AlignmentReport]:
    """Fit T minimizing sum ||T(model_i) - tracked_i||^2 over >= 3 correspondences.

    Raises CountMismatch for unequal point counts (or fewer than 3 pairs) and
    DegenerateConfiguration when the model points are collinear.
    """
    p = corr.model_points
    q = corr.tracked_points
    if p.shape != q.shape:
        raise CountMismatch(f"{p.shape[0]} model points vs {q.shape[0]} tracked points")
    if p.shape[0] < 3:
        raise CountMismatch(f"need at least 3 correspondences, got {p.shape[0]}")

    p_mean = p.mean(axis=0)
    q_mean = q.mean(axis=0)
    p_c = p - p_mean
    q_c = q - q_mean

    # collinear = centered model points have rank < 2 (rank 2, a plane, is fine)
    sv = np.linalg.svd(p_c, compute_uv=False)
    if sv[1] < COLLINEARITY_RATIO * sv[0]:
        raise DegenerateConfiguration("model points are collinear")

    h = p_c.T @ q_c
    u, _, vt = np.linalg.svd(h)
    v = vt.T
    d = np.sign(np.linalg.det(v @ u.T))
    r = v @ np.diag([1.0, 1.0, d]) @ u.T
    t = q_mean - r @ p_mean

    residuals = np.linalg.norm(q - (p @ r.T + t), axis=1)
    report = AlignmentReport(rms_residual=float(np.sqrt(np.mean(residuals ** 2))),
                             max_residual=float(residuals.max()),
                             n_points=p.shape[0])
    return RigidTransform(rotation=r, translation=t), report


def apply(transform: RigidTransform, point) -> np.ndarray:
    """Map a 3-vector through R*p + t."""
    return transform.rotation @ np.asarray(point, dtype=float).reshape(3) + transform.translation


def compose(a: RigidTransform, b: RigidTransform) -> RigidTransform:
    """Transform mapping p to a(b(p))."""
    return RigidTransform(rotation=a.rotation @ b.rotation,
                          translation=a.rotation @ b.translation + a.translation)


def invert(t: RigidTransform) -> RigidTransform:
    rt = t.rotation.T
    return RigidTransform(rotation=rt, translation=-(rt @ t.translation))


def rotation_angle_deg(r: np.ndarray) -> float:
    """Magnitude of a rotation matrix, in degrees."""
    c = (np.trace(r) - 1.0) / 2.0
    return float(np.degrees(np.arccos(np.clip(c, -1.0, 1.0))))
