"""Rotation geometry and misalignment-channel distributions.

A misalignment channel applies one random rotation R, drawn from a known
distribution mu over SO(3), to every frame-sensitive message of a protocol
session (and R^-1 to messages travelling the other way).  This module
provides the vector and rotation primitives plus the distribution variants
that the commitment schemes are built on.

Sign convention: ``rot_z(theta)`` maps the planar unit vector at angle
``alpha`` to the one at angle ``alpha + theta`` (counterclockwise seen from
+z).  Every scheme and analysis in this package relies on that single
convention; the lattice decoder in particular needs channel rotations to
*add* to the encoded angle.

Vectors are plain numpy arrays of shape (3,); rotations are orthogonal 3x3
numpy arrays with determinant +1.  Both are treated as immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

TAU = 2.0 * math.pi

#: absolute tolerance for angle comparisons mod 2*pi
ANGLE_TOL = 1e-9


class ContinuousSupportError(ValueError):
    """Exact support enumeration was requested for a continuous distribution."""


# ---------------------------------------------------------------------------
# vectors and rotations
# ---------------------------------------------------------------------------

def unit3(x: float, y: float, z: float) -> np.ndarray:
    """Unit vector in the direction of (x, y, z)."""
    v = np.array([float(x), float(y), float(z)])
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        raise ValueError("cannot normalize a near-zero vector")
    return v / norm


def planar_unit(angle: float) -> np.ndarray:
    """Unit vector in the x-y plane at `angle` radians from +x."""
    return np.array([math.cos(angle), math.sin(angle), 0.0])


def plane_angle(v: np.ndarray) -> float:
    """Angle of v's x-y projection, in [0, 2*pi)."""
    return math.atan2(float(v[1]), float(v[0])) % TAU


def rot_z(theta: float) -> np.ndarray:
    """Rotation about +z taking planar angle alpha to alpha + theta."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rot_z_batch(thetas: np.ndarray) -> np.ndarray:
    """Stack of z-rotations, shape (n, 3, 3)."""
    thetas = np.asarray(thetas, dtype=float)
    c, s = np.cos(thetas), np.sin(thetas)
    out = np.zeros(thetas.shape + (3, 3))
    out[..., 0, 0] = c
    out[..., 0, 1] = -s
    out[..., 1, 0] = s
    out[..., 1, 1] = c
    out[..., 2, 2] = 1.0
    return out


def identity_rotation() -> np.ndarray:
    return np.eye(3)


def rotate(rotation: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Matrix action of a rotation on a 3-vector."""
    return rotation @ np.asarray(v, dtype=float)


def compose(first: np.ndarray, then: np.ndarray) -> np.ndarray:
    """Rotation equal to applying `first`, then `then` (i.e. then @ first)."""
    return then @ first


def inverse(rotation: np.ndarray) -> np.ndarray:
    return rotation.T.copy()


def is_rotation(m: np.ndarray, tol: float = ANGLE_TOL) -> bool:
    """True when m is orthogonal with determinant +1, within `tol`."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        return False
    ortho = float(np.abs(m @ m.T - np.eye(3)).max()) <= tol
    return ortho and abs(float(np.linalg.det(m)) - 1.0) <= tol


def rotation_z_angle(rotation: np.ndarray) -> float:
    """Rotation angle in [0, 2*pi) for a rotation about the z axis.

    Only meaningful when the rotation actually fixes +z; callers that
    enumerate cyclic-subgroup supports use this to identify elements.
    """
    return math.atan2(float(rotation[1, 0]), float(rotation[0, 0])) % TAU


def angles_close(a: float, b: float, tol: float = ANGLE_TOL) -> bool:
    """Equality of angles mod 2*pi, absolute tolerance `tol`."""
    diff = (a - b) % TAU
    return diff <= tol or TAU - diff <= tol


def _quaternions_to_matrices(q: np.ndarray) -> np.ndarray:
    """Rotation matrices for unit quaternions, rows (w, x, y, z)."""
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty(q.shape[:-1] + (3, 3))
    out[..., 0, 0] = 1.0 - 2.0 * (y * y + z * z)
    out[..., 0, 1] = 2.0 * (x * y - w * z)
    out[..., 0, 2] = 2.0 * (x * z + w * y)
    out[..., 1, 0] = 2.0 * (x * y + w * z)
    out[..., 1, 1] = 1.0 - 2.0 * (x * x + z * z)
    out[..., 1, 2] = 2.0 * (y * z - w * x)
    out[..., 2, 0] = 2.0 * (x * z - w * y)
    out[..., 2, 1] = 2.0 * (y * z + w * x)
    out[..., 2, 2] = 1.0 - 2.0 * (x * x + y * y)
    return out


def haar_rotation(rng: np.random.Generator) -> np.ndarray:
    """One rotation distributed by the Haar measure on SO(3).

    Sampled as a normalized 4-dimensional Gaussian quaternion, which is
    exactly uniform on the unit 3-sphere and hence Haar after the two-to-one
    quotient onto SO(3).
    """
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    return _quaternions_to_matrices(q)


def haar_rotations(n: int, rng: np.random.Generator) -> np.ndarray:
    """n Haar rotations as an (n, 3, 3) stack."""
    q = rng.normal(size=(n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    return _quaternions_to_matrices(q)


# ---------------------------------------------------------------------------
# misalignment distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HaarSO3:
    """Completely unknown relative frame: Haar-uniform over SO(3)."""


@dataclass(frozen=True)
class CyclicZ:
    """Uniform over the n rotations by 2*pi*k/n about +z."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("cyclic group order must be >= 1")

    def element(self, k: int) -> np.ndarray:
        return rot_z(TAU * (k % self.n) / self.n)


@dataclass(frozen=True)
class TwoPointAngleMixture:
    """Pick one of d base angles uniformly, then rotate about +z by it or twice it.

    Each (angle index, multiplier) pair has probability 1/(2d).  This is the
    channel the lattice scheme is designed for: with probability 1/2 the
    rotation advances the encoded angle by theta_j, otherwise by 2*theta_j.
    """

    angles: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.angles) < 1:
            raise ValueError("need at least one angle")
        if any(a <= 0 for a in self.angles):
            raise ValueError("angles must be positive")
        if len(set(self.angles)) != len(self.angles):
            raise ValueError("angles must be distinct")


@dataclass(frozen=True)
class UniformSegment:
    """Rotation about +z by an angle uniform on [0, phi_max]."""

    phi_max: float

    def __post_init__(self) -> None:
        if not 0.0 < self.phi_max <= TAU:
            raise ValueError("phi_max must lie in (0, 2*pi]")


@dataclass(frozen=True, eq=False)
class FiniteSupport:
    """Generic finite distribution given as (rotation, probability) pairs.

    Probabilities must be nonnegative and sum to 1 within 1e-12.  Exact
    analyses convert them through Fraction, so dyadic floats (1/2, 1/4, ...)
    or Fraction instances keep everything rational.
    """

    elements: tuple[tuple[np.ndarray, Fraction | float], ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise ValueError("support must be nonempty")
        total = 0.0
        for rotation, prob in self.elements:
            if float(prob) < 0.0:
                raise ValueError("probabilities must be nonnegative")
            if not is_rotation(np.asarray(rotation, dtype=float), tol=1e-9):
                raise ValueError("support element is not a rotation")
            total += float(prob)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, not 1")


MisalignmentDistribution = (
    HaarSO3 | CyclicZ | TwoPointAngleMixture | UniformSegment | FiniteSupport
)


def sample(mu: MisalignmentDistribution, rng: np.random.Generator) -> np.ndarray:
    """Draw one rotation from mu. Deterministic given the generator state."""
    if isinstance(mu, HaarSO3):
        return haar_rotation(rng)
    if isinstance(mu, CyclicZ):
        k = int(rng.integers(mu.n))
        return rot_z(TAU * k / mu.n)
    if isinstance(mu, TwoPointAngleMixture):
        j = int(rng.integers(len(mu.angles)))
        multiplier = 1 + int(rng.integers(2))
        return rot_z(multiplier * mu.angles[j])
    if isinstance(mu, UniformSegment):
        return rot_z(float(rng.uniform(0.0, mu.phi_max)))
    if isinstance(mu, FiniteSupport):
        u = float(rng.random())
        acc = 0.0
        for rotation, prob in mu.elements:
            acc += float(prob)
            if u < acc:
                return np.array(rotation, dtype=float)
        return np.array(mu.elements[-1][0], dtype=float)
    raise TypeError(f"not a misalignment distribution: {mu!r}")


def sample_batch(mu: MisalignmentDistribution, n: int, rng: np.random.Generator) -> np.ndarray:
    """n independent rotations as an (n, 3, 3) stack.

    Same laws as `sample`, vectorized for Monte Carlo moment checks; the
    stream is not element-for-element identical to repeated `sample` calls.
    """
    if isinstance(mu, HaarSO3):
        return haar_rotations(n, rng)
    if isinstance(mu, CyclicZ):
        ks = rng.integers(mu.n, size=n)
        return rot_z_batch(TAU * ks / mu.n)
    if isinstance(mu, TwoPointAngleMixture):
        js = rng.integers(len(mu.angles), size=n)
        multipliers = 1 + rng.integers(2, size=n)
        thetas = np.asarray(mu.angles)[js] * multipliers
        return rot_z_batch(thetas)
    if isinstance(mu, UniformSegment):
        return rot_z_batch(rng.uniform(0.0, mu.phi_max, size=n))
    if isinstance(mu, FiniteSupport):
        probs = np.array([float(p) for _, p in mu.elements])
        idx = rng.choice(len(mu.elements), size=n, p=probs / probs.sum())
        mats = np.stack([np.asarray(r, dtype=float) for r, _ in mu.elements])
        return mats[idx]
    raise TypeError(f"not a misalignment distribution: {mu!r}")


def enumerate_support(
    mu: MisalignmentDistribution,
) -> list[tuple[np.ndarray, Fraction]]:
    """Complete support of a finite mu as (rotation, exact probability) pairs.

    Raises ContinuousSupportError for HaarSO3 and UniformSegment.  Entries
    whose rotations coincide (e.g. a mixture where one angle doubles another)
    are merged, so probabilities always sum to exactly 1.
    """
    if isinstance(mu, (HaarSO3, UniformSegment)):
        raise ContinuousSupportError(
            f"continuous distribution has no finite support: {mu!r}"
        )
    if isinstance(mu, CyclicZ):
        return [(rot_z(TAU * k / mu.n), Fraction(1, mu.n)) for k in range(mu.n)]
    if isinstance(mu, TwoPointAngleMixture):
        d = len(mu.angles)
        raw = []
        for j in range(d):
            for multiplier in (1, 2):
                raw.append((multiplier * mu.angles[j], Fraction(1, 2 * d)))
        return _merge_z_angles(raw)
    if isinstance(mu, FiniteSupport):
        return [
            (np.array(rotation, dtype=float), Fraction(prob))
            for rotation, prob in mu.elements
        ]
    raise TypeError(f"not a misalignment distribution: {mu!r}")


def _merge_z_angles(
    weighted_angles: list[tuple[float, Fraction]],
) -> list[tuple[np.ndarray, Fraction]]:
    merged: list[tuple[float, Fraction]] = []
    for angle, prob in weighted_angles:
        angle %= TAU
        for i, (existing, acc) in enumerate(merged):
            if angles_close(angle, existing, tol=1e-12):
                merged[i] = (existing, acc + prob)
                break
        else:
            merged.append((angle, prob))
    return [(rot_z(angle), prob) for angle, prob in merged]
