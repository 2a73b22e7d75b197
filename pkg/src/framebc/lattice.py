"""Lattice-coordinate commitment scheme over a two-point angle-mixture channel.

A d-dimensional lattice point a in {0..L-1}^d is encoded as the planar unit
vector at angle alpha(a) = sum_i a_i * theta_i.  The basis angles theta_i
are rationally independent (square roots of distinct primes, commonly
scaled), so the map is injective on the decoding range {0..L+1}^d and the
channel's rotation by theta_j or 2*theta_j turns a into a + e_j or a + 2e_j
in coordinates.  Committing to a bit b means drawing a uniformly from the
parity-b class and sending the encoded vector; revealing means sending
(b, a) in the clear and letting Bob compare against what he decoded.

Decoding is nearest-codeword search in a sorted table of all (L+2)^d
codebook angles, accepting only within the measurement tolerance eps_meas.
Construction certifies the codebook numerically: the minimum pairwise
angular gap (min_gap) is computed up front, and parameters are rejected
unless the induced Euclidean separation 2*sin(min_gap/2) exceeds
2*eps_meas, which is exactly the condition for the tolerance ball around a
received vector to contain at most one codeword.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import engine
from .so3 import TwoPointAngleMixture, planar_unit

#: codebook sizes above this are refused instead of silently enumerated
DEFAULT_ENUM_BUDGET = 10_000_000

PREDICATES = ("strict", "lenient")


class BudgetExceededError(RuntimeError):
    """The requested enumeration is larger than the configured budget."""


def first_primes(k: int) -> list[int]:
    primes: list[int] = []
    candidate = 2
    while len(primes) < k:
        if all(candidate % p for p in primes):
            primes.append(candidate)
        candidate += 1
    return primes


@dataclass(frozen=True)
class AngleBasis:
    """Certified angle basis for a (d, L) codebook.

    angles[i] = scale * sqrt(p_i) with p_i the i-th prime; the scale is
    chosen so sum_i (L+1)*angles[i] = pi/2, which keeps every codebook angle
    inside [0, pi/2] and rules out wraparound.  min_gap is the smallest
    angular distance between distinct codebook angles, certified by sorting
    the full codebook at construction.
    """

    d: int
    L: int
    angles: tuple[float, ...]
    scale: float
    min_gap: float

    @property
    def separation(self) -> float:
        """Smallest Euclidean distance between distinct codewords."""
        return 2.0 * math.sin(self.min_gap / 2.0)

    @property
    def max_safe_eps(self) -> float:
        """Strict upper bound for usable measurement tolerances."""
        return self.separation / 2.0


def codebook_size(d: int, L: int) -> int:
    return (L + 2) ** d


def codebook_points(d: int, L: int) -> np.ndarray:
    """All decodable lattice points {0..L+1}^d as an (N, d) int array."""
    return np.array(list(itertools.product(range(L + 2), repeat=d)), dtype=int)


def build_angle_basis(d: int, L: int, budget: int = DEFAULT_ENUM_BUDGET) -> AngleBasis:
    """Construct and certify the angle basis for a (d, L) codebook.

    Fails with BudgetExceededError when the codebook is too large to
    certify: the certificate requires enumerating all (L+2)^d angles.
    """
    if d < 1:
        raise ValueError("need d >= 1 lattice dimensions")
    if L < 2:
        raise ValueError("need L >= 2 values per coordinate")
    n_points = codebook_size(d, L)
    if n_points > budget:
        raise BudgetExceededError(
            f"codebook too large to certify: (L+2)^d = {n_points} exceeds "
            f"the enumeration budget {budget}"
        )
    roots = np.sqrt(np.array(first_primes(d), dtype=float))
    scale = (math.pi / 2.0) / ((L + 1) * float(roots.sum()))
    angles = scale * roots
    alphas = codebook_points(d, L) @ angles
    alphas.sort()
    min_gap = float(np.diff(alphas).min()) if len(alphas) > 1 else math.tau
    if min_gap <= 0.0:
        raise ValueError("degenerate basis: duplicate codebook angles")
    return AngleBasis(
        d=d,
        L=L,
        angles=tuple(float(a) for a in angles),
        scale=scale,
        min_gap=min_gap,
    )


@dataclass(frozen=True)
class LatticeParams:
    """Scheme parameters plus the decoding table derived from them.

    Rejects tolerances that violate the separation requirement
    2*sin(min_gap/2) > 2*eps_meas, so a successfully constructed instance
    always decodes honest traffic uniquely.  The `predicate` selects Bob's
    reveal test: "strict" requires the decoded point to differ from the
    revealed one by e_j or 2e_j; "lenient" additionally accepts zero
    difference.
    """

    basis: AngleBasis
    eps_meas: float
    predicate: str = "lenient"
    _points: np.ndarray = field(init=False, repr=False, compare=False)
    _angles: np.ndarray = field(init=False, repr=False, compare=False)
    _cos: np.ndarray = field(init=False, repr=False, compare=False)
    _sin: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.predicate not in PREDICATES:
            raise ValueError(f"predicate must be one of {PREDICATES}")
        if self.eps_meas < 0.0:
            raise ValueError("eps_meas must be nonnegative")
        if self.basis.separation <= 2.0 * self.eps_meas:
            raise ValueError(
                f"eps_meas={self.eps_meas!r} too coarse: codeword separation "
                f"{self.basis.separation!r} must exceed 2*eps_meas"
            )
        points = codebook_points(self.d, self.L)
        alphas = points @ np.asarray(self.basis.angles)
        order = np.argsort(alphas, kind="stable")
        object.__setattr__(self, "_points", points[order])
        object.__setattr__(self, "_angles", alphas[order])
        object.__setattr__(self, "_cos", np.cos(self._angles))
        object.__setattr__(self, "_sin", np.sin(self._angles))

    @property
    def d(self) -> int:
        return self.basis.d

    @property
    def L(self) -> int:
        return self.basis.L

    @property
    def angles(self) -> tuple[float, ...]:
        return self.basis.angles


def make_params(
    d: int,
    L: int,
    eps_meas: float | None = None,
    predicate: str = "lenient",
    budget: int = DEFAULT_ENUM_BUDGET,
) -> LatticeParams:
    """Build a certified basis and parameter set; eps defaults to safe/4."""
    basis = build_angle_basis(d, L, budget=budget)
    if eps_meas is None:
        eps_meas = basis.max_safe_eps / 4.0
    return LatticeParams(basis=basis, eps_meas=eps_meas, predicate=predicate)


# ---------------------------------------------------------------------------
# encode / commit / decode / verify
# ---------------------------------------------------------------------------

def parity(a) -> int:
    return int(np.sum(np.asarray(a, dtype=int))) % 2


def lattice_angle(params: LatticeParams, a) -> float:
    return math.fsum(float(x) * theta for x, theta in zip(a, params.angles))


def encode(params: LatticeParams, a) -> np.ndarray:
    """Planar unit vector at angle sum_i a_i * theta_i."""
    coords = [int(x) for x in a]
    if len(coords) != params.d:
        raise ValueError(f"expected {params.d} coordinates, got {len(coords)}")
    top = params.L + 1
    if any(x < 0 or x > top for x in coords):
        raise ValueError(f"coordinates must lie in 0..L+1, got {coords}")
    alpha = math.fsum(x * theta for x, theta in zip(coords, params.angles))
    return planar_unit(alpha)


def parity_class_size(d: int, L: int, b: int) -> int:
    """Number of points of {0..L-1}^d with coordinate sum = b mod 2."""
    evens = (L + 1) // 2
    odds = L // 2
    # ((e+o)^d + (e-o)^d) / 2 counts even-parity tuples
    total = L**d
    imbalance = (evens - odds) ** d
    return (total + imbalance) // 2 if b == 0 else (total - imbalance) // 2


def parity_class(d: int, L: int, b: int):
    """Iterate the points of {0..L-1}^d with parity b."""
    for point in itertools.product(range(L), repeat=d):
        if sum(point) % 2 == b:
            yield point


def commit(
    params: LatticeParams, b: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw the secret lattice point for bit b and its encoded payload.

    The point is uniform over the parity-b subset of {0..L-1}^d.  For even L
    the last coordinate is resampled within its parity class directly (a
    two-to-one map from a uniform draw, so still exactly uniform); odd L
    falls back to rejection sampling because its parity classes are unequal.
    """
    if b not in (0, 1):
        raise ValueError("committed bit must be 0 or 1")
    L = params.L
    if L % 2 == 0:
        a = rng.integers(0, L, size=params.d)
        need = (b - int(a[:-1].sum())) % 2
        a[-1] = int(a[-1]) - (int(a[-1]) % 2) + need
    else:
        while True:
            a = rng.integers(0, L, size=params.d)
            if int(a.sum()) % 2 == b:
                break
    a = a.astype(int)
    return a, encode(params, a)


def decode_commit(params: LatticeParams, received) -> np.ndarray | None:
    """Nearest-codeword decoding within eps_meas; None means abort.

    Binary search in the sorted codebook-angle table proposes the two
    angular neighbours of the received direction (plus the table endpoints
    to cover wraparound), then the true Euclidean distance in R^3 decides.
    Out-of-plane or shrunken vectors fail the distance test on their own.
    """
    received = np.asarray(received, dtype=float)
    rx, ry, rz = float(received[0]), float(received[1]), float(received[2])
    phi = math.atan2(ry, rx) % (2.0 * math.pi)
    angles = params._angles
    i = int(np.searchsorted(angles, phi))
    candidates = {0, len(angles) - 1}
    if i < len(angles):
        candidates.add(i)
    if i > 0:
        candidates.add(i - 1)
    best_idx = -1
    best_sq = math.inf
    cos_table, sin_table = params._cos, params._sin
    for idx in candidates:
        dx = rx - cos_table[idx]
        dy = ry - sin_table[idx]
        sq = dx * dx + dy * dy + rz * rz
        if sq < best_sq:
            best_sq = sq
            best_idx = idx
    if best_sq <= params.eps_meas * params.eps_meas:
        return params._points[best_idx].copy()
    return None


def apply_channel_noise(
    params: LatticeParams, a, rng: np.random.Generator
) -> np.ndarray:
    """Coordinate action of the channel: add e_j or 2e_j, j uniform."""
    a = np.asarray(a, dtype=int)
    j = int(rng.integers(params.d))
    multiplier = 1 + int(rng.integers(2))
    out = a.copy()
    out[j] += multiplier
    return out


def noise_support(params: LatticeParams):
    """The 2d equally likely (j, multiplier) noise outcomes."""
    for j in range(params.d):
        for multiplier in (1, 2):
            yield j, multiplier


def verify_reveal(
    params: LatticeParams,
    decoded,
    revealed_b: int,
    revealed_a,
    predicate: str | None = None,
) -> bool:
    """Bob's reveal test; True accepts, False aborts.

    Checks the revealed point is in the honest range with the revealed
    parity, then that decoded - revealed is a single-coordinate bump of 1
    or 2 (strict) or additionally the zero vector (lenient).  `predicate`
    overrides the one carried by params.
    """
    predicate = predicate or params.predicate
    a = [int(x) for x in revealed_a]
    if len(a) != params.d:
        return False
    top = params.L - 1
    if any(x < 0 or x > top for x in a):
        return False
    if sum(a) % 2 != revealed_b % 2:
        return False
    bumps = 0
    bump_value = 0
    for decoded_i, a_i in zip(decoded, a):
        diff = int(decoded_i) - a_i
        if diff:
            bumps += 1
            bump_value = diff
    if bumps == 0:
        return predicate == "lenient"
    return bumps == 1 and bump_value in (1, 2)


def lattice_mu(params: LatticeParams) -> TwoPointAngleMixture:
    """The channel distribution this parameter set is designed for."""
    return TwoPointAngleMixture(params.angles)


def honest_run(params: LatticeParams, b: int, rng: np.random.Generator) -> bool:
    """One full honest commit/channel/reveal round through the geometry.

    The channel rotation is drawn per the two-point mixture law and applied
    to the payload with scalar arithmetic (identical to the matrix action of
    rot_z, which only mixes the x-y components).
    """
    a, payload = commit(params, b, rng)
    j = int(rng.integers(params.d))
    multiplier = 1 + int(rng.integers(2))
    theta = multiplier * params.angles[j]
    c, s = math.cos(theta), math.sin(theta)
    vx, vy, vz = float(payload[0]), float(payload[1]), float(payload[2])
    received = np.array([c * vx - s * vy, s * vx + c * vy, vz])
    decoded = decode_commit(params, received)
    if decoded is None:
        return False
    return verify_reveal(params, decoded, b, a)


# ---------------------------------------------------------------------------
# protocol parties
# ---------------------------------------------------------------------------

class LatticeAlice(engine.Party):
    """Honest committer: sends the encoded point, then the clear reveal."""

    role = engine.ALICE

    def __init__(self, params: LatticeParams, b: int, fixed_a=None) -> None:
        super().__init__()
        self.params = params
        self.b = b
        self.fixed_a = None if fixed_a is None else np.asarray(fixed_a, dtype=int)
        self._a: np.ndarray | None = None
        self._step = 0

    def begin(self, rng) -> None:
        super().begin(rng)
        self._step = 0
        if self.fixed_a is not None:
            self._a = self.fixed_a
        else:
            self._a, _ = commit(self.params, self.b, rng)

    def _produce(self, rng) -> engine.Message:
        self._step += 1
        if self._step == 1:
            return engine.vec_message(self.role, encode(self.params, self._a))
        return engine.data_message(self.role, (self.b, tuple(int(x) for x in self._a)))


class CheatingLatticeAlice(engine.Party):
    """Non-adaptive cheat: arbitrary commit payload, arbitrary fixed reveal."""

    role = engine.ALICE

    def __init__(self, params: LatticeParams, payload, reveal_b: int, reveal_a) -> None:
        super().__init__()
        self.params = params
        self.payload = np.asarray(payload, dtype=float)
        self.reveal_b = reveal_b
        self.reveal_a = tuple(int(x) for x in reveal_a)
        self._step = 0

    def begin(self, rng) -> None:
        super().begin(rng)
        self._step = 0

    def _produce(self, rng) -> engine.Message:
        self._step += 1
        if self._step == 1:
            return engine.vec_message(self.role, self.payload)
        return engine.data_message(self.role, (self.reveal_b, self.reveal_a))


class LatticeBob(engine.Party):
    """Honest receiver: decodes the commit vector, then checks the reveal."""

    role = engine.BOB

    def __init__(self, params: LatticeParams) -> None:
        super().__init__()
        self.params = params

    def decide(self) -> engine.ProtocolOutcome:
        vecs = [m for m in self.view if m.is_vec()]
        datas = [m for m in self.view if not m.is_vec()]
        if not vecs or not datas:
            return engine.Aborted("malformed-session")
        decoded = decode_commit(self.params, vecs[0].payload)
        if decoded is None:
            return engine.Aborted("commit-decode")
        revealed_b, revealed_a = datas[0].payload
        if verify_reveal(self.params, decoded, revealed_b, revealed_a):
            return engine.Accepted(int(revealed_b))
        return engine.Aborted("reveal-reject")


def lattice_protocol(
    params: LatticeParams, b: int, fixed_a=None
) -> engine.ProtocolSpec:
    """Commit/reveal session spec for the lattice scheme."""
    return engine.ProtocolSpec(
        name=f"lattice(d={params.d},L={params.L},{params.predicate})",
        schedule=((engine.ALICE, "send"), (engine.ALICE, "send"), (engine.BOB, "decide")),
        mu=lattice_mu(params),
        make_alice=lambda: LatticeAlice(params, b, fixed_a=fixed_a),
        make_bob=lambda: LatticeBob(params),
    )
