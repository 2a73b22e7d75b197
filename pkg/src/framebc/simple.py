"""Two warm-up commitment schemes with axis-vector codewords.

Both schemes commit by sending one of the four planar axis vectors
{+x, +y, -x, -y}, indexed by the symbol 2a + b for a random index bit a and
the committed bit b.  The discrete scheme runs over a channel that leaves
the symbol alone or advances it by one quadrant, each with probability 1/2;
the continuous scheme runs over a rotation about z by an angle uniform on
[0, pi].  Bob accepts a reveal exactly when the vector he received has
nonzero likelihood under the revealed codeword, which for the continuous
channel is the closed half-plane arc of length pi starting at the codeword
angle.

Both are perfectly sound and perfectly concealing but only 1/2-binding, and
the continuous one admits a one-parameter interpolation attack: committing
the vector at angle alpha*pi/2 lets Alice reveal 0 with acceptance
probability 1 - alpha/2 and 1 with probability (1 + alpha)/2, hence either
bit with probability 3/4 at alpha = 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import engine
from .so3 import (
    FiniteSupport,
    UniformSegment,
    enumerate_support,
    identity_rotation,
    plane_angle,
    planar_unit,
    rot_z,
)

TAU = 2.0 * math.pi
QUARTER = math.pi / 2.0

#: maximum out-of-plane component accepted after normalization
PLANE_TOL = 1e-6


# ---------------------------------------------------------------------------
# four-symbol scheme
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FourSymbolCodeword:
    """Codeword indexed by (a, b); the wire symbol is 2a + b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise ValueError("codeword bits must be 0 or 1")

    @property
    def symbol(self) -> int:
        return 2 * self.a + self.b

    @staticmethod
    def from_symbol(symbol: int) -> "FourSymbolCodeword":
        if symbol not in (0, 1, 2, 3):
            raise ValueError("symbol must be in 0..3")
        return FourSymbolCodeword(a=symbol // 2, b=symbol % 2)


def symbol_vector(symbol: int) -> np.ndarray:
    """Axis vector for a symbol: 0 -> +x, 1 -> +y, 2 -> -x, 3 -> -y."""
    return planar_unit(symbol * QUARTER)


def decode_symbol(v: np.ndarray, tol: float = PLANE_TOL) -> int | None:
    """Nearest axis symbol, or None when v is not essentially an axis vector."""
    v = np.asarray(v, dtype=float)
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        return None
    u = v / norm
    if abs(u[2]) > tol:
        return None
    best = int(np.argmax([float(u @ symbol_vector(s)) for s in range(4)]))
    if float(np.linalg.norm(u - symbol_vector(best))) > tol:
        return None
    return best


def four_symbol_channel(i: int, rng: np.random.Generator) -> int:
    """Symbol channel: outputs i or i+1 (mod 4), each with probability 1/2."""
    if i not in (0, 1, 2, 3):
        raise ValueError("channel input must be in 0..3")
    return (i + int(rng.integers(2))) % 4


def four_symbol_channel_law(i: int) -> dict[int, Fraction]:
    return {i % 4: Fraction(1, 2), (i + 1) % 4: Fraction(1, 2)}


def four_symbol_mu() -> FiniteSupport:
    """Rotation realization: identity or a quarter turn about z, each 1/2."""
    return FiniteSupport(
        (
            (identity_rotation(), Fraction(1, 2)),
            (rot_z(QUARTER), Fraction(1, 2)),
        )
    )


def four_symbol_rotation_law(i: int) -> dict[int, Fraction]:
    """Exact symbol law induced by sending symbol i through the rotation channel."""
    law: dict[int, Fraction] = {}
    for rotation, prob in enumerate_support(four_symbol_mu()):
        out = decode_symbol(rotation @ symbol_vector(i))
        if out is None:
            raise RuntimeError("rotation realization left the codeword set")
        law[out] = law.get(out, Fraction(0)) + prob
    return law


def four_symbol_verify(received: int, revealed: FourSymbolCodeword) -> bool:
    """Accept iff the received symbol has nonzero probability under the reveal."""
    return received % 4 in (revealed.symbol, (revealed.symbol + 1) % 4)


def four_symbol_received_distribution(b: int) -> dict[int, Fraction]:
    """Exact law of Bob's received symbol given the committed bit."""
    dist: dict[int, Fraction] = {}
    for a in (0, 1):
        law = four_symbol_channel_law(FourSymbolCodeword(a, b).symbol)
        for symbol, prob in law.items():
            dist[symbol] = dist.get(symbol, Fraction(0)) + Fraction(1, 2) * prob
    return dist


class FourSymbolAlice(engine.Party):
    """Honest committer for the four-symbol scheme."""

    role = engine.ALICE

    def __init__(self, codeword: FourSymbolCodeword) -> None:
        super().__init__()
        self.codeword = codeword
        self._step = 0

    def begin(self, rng) -> None:
        super().begin(rng)
        self._step = 0

    def _produce(self, rng) -> engine.Message:
        self._step += 1
        if self._step == 1:
            return engine.vec_message(self.role, symbol_vector(self.codeword.symbol))
        return engine.data_message(self.role, (self.codeword.b, self.codeword.a))


class CheatingFourSymbolAlice(engine.Party):
    """Commits one symbol, reveals an arbitrary codeword."""

    role = engine.ALICE

    def __init__(self, commit_symbol: int, reveal: FourSymbolCodeword) -> None:
        super().__init__()
        self.commit_symbol = commit_symbol
        self.reveal = reveal
        self._step = 0

    def begin(self, rng) -> None:
        super().begin(rng)
        self._step = 0

    def _produce(self, rng) -> engine.Message:
        self._step += 1
        if self._step == 1:
            return engine.vec_message(self.role, symbol_vector(self.commit_symbol))
        return engine.data_message(self.role, (self.reveal.b, self.reveal.a))


class FourSymbolBob(engine.Party):
    role = engine.BOB

    def decide(self) -> engine.ProtocolOutcome:
        vecs = [m for m in self.view if m.is_vec()]
        datas = [m for m in self.view if not m.is_vec()]
        if not vecs or not datas:
            return engine.Aborted("malformed-session")
        received = decode_symbol(vecs[0].payload)
        if received is None:
            return engine.Aborted("commit-decode")
        b, a = datas[0].payload
        if four_symbol_verify(received, FourSymbolCodeword(int(a), int(b))):
            return engine.Accepted(int(b))
        return engine.Aborted("reveal-reject")


def four_symbol_protocol(codeword: FourSymbolCodeword) -> engine.ProtocolSpec:
    return engine.ProtocolSpec(
        name="four-symbol",
        schedule=((engine.ALICE, "send"), (engine.ALICE, "send"), (engine.BOB, "decide")),
        mu=four_symbol_mu(),
        make_alice=lambda: FourSymbolAlice(codeword),
        make_bob=lambda: FourSymbolBob(),
    )


# ---------------------------------------------------------------------------
# continuous-angle scheme
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InterpolationStrategy:
    """Cheating commit between the b=0 and b=1 codewords, at angle alpha*pi/2."""

    alpha: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")

    @property
    def angle(self) -> float:
        return self.alpha * QUARTER


def continuous_mu() -> UniformSegment:
    return UniformSegment(math.pi)


def codeword_angle(a: int, b: int) -> float:
    return (2 * a + b) * QUARTER


def continuous_receive_angle(v: np.ndarray) -> float | None:
    """Planar angle of a received vector; None rejects off-plane payloads."""
    v = np.asarray(v, dtype=float)
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        return None
    u = v / norm
    if abs(u[2]) > PLANE_TOL:
        return None
    return plane_angle(u)


def arc_accepts(received_angle: float, codeword_angle_: float) -> bool:
    """Membership in the closed arc [codeword, codeword + pi] (mod 2*pi)."""
    offset = (received_angle - codeword_angle_) % TAU
    return offset <= math.pi + 1e-12 or TAU - offset <= 1e-12


def continuous_commit_verify(sent_angle: float, revealed_b: int, shift: float) -> bool:
    """One deterministic round: send, shift by the channel, test the arc.

    The revealed codeword is the honest one at angle revealed_b * pi/2.
    """
    if not 0.0 <= shift <= math.pi:
        raise ValueError("channel shift must lie in [0, pi]")
    return arc_accepts(sent_angle + shift, revealed_b * QUARTER)


def acceptance_probability(sent_angle: float, codeword_angle_: float) -> float:
    """Closed-form probability that a uniform [0, pi] shift lands in the arc.

    The shift must move the sent angle into [codeword, codeword + pi]; the
    admissible shifts form one interval whose overlap with [0, pi] has
    length pi - g or g - pi for the angular gap g = codeword - sent mod 2*pi.
    """
    g = (codeword_angle_ - sent_angle) % TAU
    if g <= math.pi:
        return (math.pi - g) / math.pi
    return (g - math.pi) / math.pi


def interpolation_acceptance(alpha: float) -> tuple[float, float]:
    """Acceptance probabilities (reveal 0, reveal 1) for the alpha attack."""
    strategy = InterpolationStrategy(alpha)
    p0 = acceptance_probability(strategy.angle, codeword_angle(0, 0))
    p1 = acceptance_probability(strategy.angle, codeword_angle(0, 1))
    return p0, p1


def interpolation_curve(alphas) -> list[tuple[float, float, float]]:
    """Rows (alpha, accept probability revealing 0, revealing 1)."""
    rows = []
    for alpha in alphas:
        p0, p1 = interpolation_acceptance(float(alpha))
        rows.append((float(alpha), p0, p1))
    return rows


def quadrant_indicator_distribution(b: int) -> dict[tuple[int, ...], Fraction]:
    """Exact law of the acceptance-indicator vector under honest play.

    The statistic records, for each of the four codewords, whether the
    received direction lies in that codeword's acceptance arc.  Arcs have
    length pi and all breakpoints sit on quadrant boundaries, so the law is
    a finitely supported exact object: the received direction lands in
    quadrant q with some rational probability, and every interior point of
    quadrant q is accepted exactly by the codewords at q-1 and q.
    """
    if b not in (0, 1):
        raise ValueError("bit must be 0 or 1")
    quadrant_mass: dict[int, Fraction] = {q: Fraction(0) for q in range(4)}
    for a in (0, 1):
        c = 2 * a + b
        # uniform shift over [0, pi] covers quadrants c and c+1, half each
        for q in (c % 4, (c + 1) % 4):
            quadrant_mass[q] += Fraction(1, 2) * Fraction(1, 2)
    dist: dict[tuple[int, ...], Fraction] = {}
    for q, mass in quadrant_mass.items():
        if mass == 0:
            continue
        indicator = tuple(1 if k in (q, (q - 1) % 4) else 0 for k in range(4))
        dist[indicator] = dist.get(indicator, Fraction(0)) + mass
    return dist


class ContinuousAlice(engine.Party):
    """Honest committer: axis codeword now, clear (b, a) later."""

    role = engine.ALICE

    def __init__(self, a: int, b: int) -> None:
        super().__init__()
        self.a = a
        self.b = b
        self._step = 0

    def begin(self, rng) -> None:
        super().begin(rng)
        self._step = 0

    def _produce(self, rng) -> engine.Message:
        self._step += 1
        if self._step == 1:
            return engine.vec_message(self.role, planar_unit(codeword_angle(self.a, self.b)))
        return engine.data_message(self.role, (self.b, self.a))


class InterpolatingAlice(engine.Party):
    """Sends the interpolated vector, then reveals a fixed codeword."""

    role = engine.ALICE

    def __init__(self, strategy: InterpolationStrategy, reveal_b: int, reveal_a: int = 0) -> None:
        super().__init__()
        self.strategy = strategy
        self.reveal_b = reveal_b
        self.reveal_a = reveal_a
        self._step = 0

    def begin(self, rng) -> None:
        super().begin(rng)
        self._step = 0

    def _produce(self, rng) -> engine.Message:
        self._step += 1
        if self._step == 1:
            return engine.vec_message(self.role, planar_unit(self.strategy.angle))
        return engine.data_message(self.role, (self.reveal_b, self.reveal_a))


class ContinuousBob(engine.Party):
    role = engine.BOB

    def decide(self) -> engine.ProtocolOutcome:
        vecs = [m for m in self.view if m.is_vec()]
        datas = [m for m in self.view if not m.is_vec()]
        if not vecs or not datas:
            return engine.Aborted("malformed-session")
        angle = continuous_receive_angle(vecs[0].payload)
        if angle is None:
            return engine.Aborted("commit-decode")
        b, a = datas[0].payload
        if arc_accepts(angle, codeword_angle(int(a), int(b))):
            return engine.Accepted(int(b))
        return engine.Aborted("reveal-reject")


def continuous_protocol(a: int, b: int) -> engine.ProtocolSpec:
    return engine.ProtocolSpec(
        name="continuous",
        schedule=((engine.ALICE, "send"), (engine.ALICE, "send"), (engine.BOB, "decide")),
        mu=continuous_mu(),
        make_alice=lambda: ContinuousAlice(a, b),
        make_bob=lambda: ContinuousBob(),
    )
