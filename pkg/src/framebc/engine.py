"""Two-party protocol engine over a misalignment channel.

A session runs a fixed schedule of steps between Alice and Bob.  One
rotation R is drawn per session; every vector payload from Alice to Bob is
multiplied by R and every vector payload from Bob to Alice by R^-1, while
classical payloads (tuples of plain data) pass through untouched.  Each
party records its own view: messages exactly as its strategy produced or
consumed them.

The module also provides the group-twirl compiler: given a protocol meant
for a uniform-group channel, it wraps both parties so that each privately
conjugates its traffic by a uniformly drawn group element, after which the
protocol runs over a noiseless channel with the same per-session law.
Exact transcript-distribution enumeration helpers make that equivalence a
checkable statement for finite groups.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .so3 import (
    CyclicZ,
    FiniteSupport,
    HaarSO3,
    MisalignmentDistribution,
    enumerate_support,
    haar_rotations,
    identity_rotation,
    sample,
    unit3,
)

ALICE = "alice"
BOB = "bob"

VEC = "vec"
DATA = "data"


@dataclass(frozen=True)
class Message:
    """One protocol message as seen by one party.

    kind "vec" payloads are 3-vectors and are frame-sensitive: the channel
    rotates them in transit.  kind "data" payloads are classical values
    (nested tuples of ints/floats/strings) and are never rotated.
    """

    sender: str
    kind: str
    payload: object

    def is_vec(self) -> bool:
        return self.kind == VEC


def vec_message(sender: str, v: np.ndarray) -> Message:
    return Message(sender, VEC, np.asarray(v, dtype=float))


def data_message(sender: str, value: object) -> Message:
    return Message(sender, DATA, value)


@dataclass(frozen=True)
class Accepted:
    value: object  # the revealed bit, or a tuple of bits for composed runs


@dataclass(frozen=True)
class Aborted:
    reason: str


ProtocolOutcome = Accepted | Aborted


class Party:
    """One side of a session.

    Subclasses implement `_produce` (payload of the next outgoing message)
    and/or `decide` (final verdict, a pure function of `self.view`).  The
    base class keeps `view`, the ordered list of messages this party's
    strategy actually saw, which is what transcript-distribution statements
    quantify over.
    """

    role: str = "party"

    def __init__(self) -> None:
        self.view: list[Message] = []

    def begin(self, rng: np.random.Generator | None) -> None:
        """Reset per-session state; called once before any message."""
        self.view = []

    def send(self, rng: np.random.Generator | None) -> Message:
        msg = self._produce(rng)
        self.view.append(msg)
        return msg

    def _produce(self, rng: np.random.Generator | None) -> Message:
        raise NotImplementedError

    def receive(self, message: Message) -> None:
        self.view.append(message)

    def decide(self) -> ProtocolOutcome:
        raise NotImplementedError

    def received(self) -> list[Message]:
        return [m for m in self.view if m.sender != self.role]


class ScriptedParty(Party):
    """Sends a fixed list of messages in order; optional fixed decider."""

    def __init__(
        self,
        role: str,
        payloads: list[tuple[str, object]],
        decider: Callable[[list[Message]], ProtocolOutcome] | None = None,
    ) -> None:
        super().__init__()
        self.role = role
        self._payloads = payloads
        self._cursor = 0
        self._decider = decider

    def begin(self, rng) -> None:
        super().begin(rng)
        self._cursor = 0

    def _produce(self, rng) -> Message:
        kind, payload = self._payloads[self._cursor]
        self._cursor += 1
        if kind == VEC:
            return vec_message(self.role, payload)
        return data_message(self.role, payload)

    def decide(self) -> ProtocolOutcome:
        if self._decider is None:
            raise NotImplementedError("scripted party has no decider")
        return self._decider(self.view)


@dataclass(frozen=True)
class ProtocolSpec:
    """A runnable protocol: schedule, channel law, and honest party factories.

    The schedule is a tuple of (role, action) pairs, action "send" or
    "decide"; all implemented protocols end with a single decide step.
    """

    name: str
    schedule: tuple[tuple[str, str], ...]
    mu: MisalignmentDistribution
    make_alice: Callable[[], Party]
    make_bob: Callable[[], Party]


@dataclass(frozen=True)
class Transcript:
    protocol: str
    alice_view: tuple[Message, ...]
    bob_view: tuple[Message, ...]
    outcome: ProtocolOutcome


def run_session(
    spec: ProtocolSpec,
    rng: np.random.Generator | None = None,
    *,
    rotation: np.ndarray | None = None,
    alice: Party | None = None,
    bob: Party | None = None,
) -> Transcript:
    """Run one session of `spec` and return the transcript.

    One rotation is sampled (or taken from `rotation`) and applied to every
    vector payload of the session: forward for Alice-to-Bob, inverse for
    Bob-to-Alice.  Party strategy exceptions surface as an Aborted outcome
    rather than propagating.
    """
    if rotation is None:
        if rng is None:
            raise ValueError("need an rng when no explicit rotation is given")
        rotation = sample(spec.mu, rng)
    alice = alice if alice is not None else spec.make_alice()
    bob = bob if bob is not None else spec.make_bob()
    parties = {ALICE: alice, BOB: bob}
    alice.begin(rng)
    bob.begin(rng)

    outcome: ProtocolOutcome | None = None
    for role, action in spec.schedule:
        party = parties[role]
        other = parties[BOB if role == ALICE else ALICE]
        try:
            if action == "send":
                msg = party.send(rng)
                other.receive(_deliver(msg, rotation))
            elif action == "decide":
                outcome = party.decide()
            else:
                raise ValueError(f"unknown schedule action: {action}")
        except Exception as exc:  # strategy faults become protocol aborts
            outcome = Aborted(f"strategy-error:{role}:{type(exc).__name__}")
            break
    if outcome is None:
        outcome = Aborted("no-decision")
    return Transcript(spec.name, tuple(alice.view), tuple(bob.view), outcome)


def _deliver(message: Message, rotation: np.ndarray) -> Message:
    if not message.is_vec():
        return message
    if message.sender == ALICE:
        return vec_message(message.sender, rotation @ message.payload)
    return vec_message(message.sender, rotation.T @ message.payload)


# ---------------------------------------------------------------------------
# group twirl compiler
# ---------------------------------------------------------------------------

TwirlGroup = CyclicZ | HaarSO3


def _require_group(group: MisalignmentDistribution) -> None:
    if not isinstance(group, (CyclicZ, HaarSO3)):
        raise ValueError(
            "not a uniform group distribution: twirling requires the uniform "
            f"distribution over a rotation group, got {group!r}"
        )


class TwirledParty:
    """Wraps a party so its traffic is privately conjugated by a group element.

    At session start the wrapper draws u uniformly from the group (or uses a
    fixed `element`, which enumeration helpers rely on).  Outgoing vector
    payloads are premultiplied by u, incoming ones by u^-1, and the inner
    strategy never sees the difference.  `view` is the inner view, so the
    compiled protocol's transcripts are directly comparable with runs of the
    original protocol over the group channel.
    """

    def __init__(
        self,
        inner: Party,
        group: TwirlGroup,
        element: np.ndarray | None = None,
    ) -> None:
        _require_group(group)
        self.inner = inner
        self.group = group
        self._fixed = None if element is None else np.asarray(element, dtype=float)
        self.element: np.ndarray | None = None

    @property
    def role(self) -> str:
        return self.inner.role

    @property
    def view(self) -> list[Message]:
        return self.inner.view

    def begin(self, rng) -> None:
        if self._fixed is not None:
            self.element = self._fixed
        else:
            if rng is None:
                raise ValueError("twirled party needs an rng or a fixed element")
            self.element = sample(self.group, rng)
        self.inner.begin(rng)

    def send(self, rng) -> Message:
        msg = self.inner.send(rng)
        if not msg.is_vec():
            return msg
        return vec_message(msg.sender, self.element @ msg.payload)

    def receive(self, message: Message) -> None:
        if message.is_vec():
            message = vec_message(message.sender, self.element.T @ message.payload)
        self.inner.receive(message)

    def decide(self) -> ProtocolOutcome:
        return self.inner.decide()


def noiseless_channel() -> FiniteSupport:
    return FiniteSupport(((identity_rotation(), Fraction(1)),))


def twirl_compile(spec: ProtocolSpec, group: TwirlGroup) -> ProtocolSpec:
    """Compile a protocol for a uniform-group channel into a noiseless one.

    Both parties independently draw a uniform group element per session and
    conjugate their own traffic by it; the effective relative frame is then
    itself uniform over the group, so the compiled protocol over a noiseless
    channel simulates the original over the group channel.  Rejects any
    channel distribution that is not the uniform distribution over a group.
    """
    _require_group(group)
    return ProtocolSpec(
        name=f"{spec.name}+twirl",
        schedule=spec.schedule,
        mu=noiseless_channel(),
        make_alice=lambda: TwirledParty(spec.make_alice(), group),
        make_bob=lambda: TwirledParty(spec.make_bob(), group),
    )


# ---------------------------------------------------------------------------
# exact transcript distributions (finite channels / finite groups)
# ---------------------------------------------------------------------------

def transcript_key(transcript: Transcript, digits: int = 9) -> tuple:
    """Hashable canonical form of a transcript.

    Vector payloads are rounded to `digits` decimals so that numerically
    equal values reached along different float paths (for example a composed
    pair of twirl rotations versus one direct channel rotation) collapse to
    the same key.  Distinct protocol values differ by far more than the
    rounding unit in every implemented scheme.
    """
    def key_message(m: Message) -> tuple:
        if m.is_vec():
            values = tuple(round(float(x), digits) + 0.0 for x in m.payload)
            return (m.sender, m.kind, values)
        return (m.sender, m.kind, m.payload)

    return (
        tuple(key_message(m) for m in transcript.alice_view),
        tuple(key_message(m) for m in transcript.bob_view),
        transcript.outcome,
    )


def transcript_distribution(
    spec: ProtocolSpec, digits: int = 9
) -> dict[tuple, Fraction]:
    """Exact transcript distribution of a deterministic protocol over finite mu.

    Parties must not consume randomness; everything random is the channel.
    """
    dist: dict[tuple, Fraction] = {}
    for rotation, prob in enumerate_support(spec.mu):
        t = run_session(spec, rotation=rotation)
        k = transcript_key(t, digits)
        dist[k] = dist.get(k, Fraction(0)) + prob
    return dist


def compiled_transcript_distribution(
    spec: ProtocolSpec, group: CyclicZ, digits: int = 9
) -> dict[tuple, Fraction]:
    """Exact transcript distribution of the twirl-compiled protocol.

    Enumerates both parties' private group elements over group x group with
    a noiseless channel; views are the inner (untwirled) views, so equality
    with `transcript_distribution(spec)` is the compiler's simulation claim
    at finite-group scale.
    """
    _require_group(group)
    if not isinstance(group, CyclicZ):
        raise ValueError("exact enumeration needs a finite group")
    dist: dict[tuple, Fraction] = {}
    identity = identity_rotation()
    for u_a, p_a in enumerate_support(group):
        for u_b, p_b in enumerate_support(group):
            alice = TwirledParty(spec.make_alice(), group, element=u_a)
            bob = TwirledParty(spec.make_bob(), group, element=u_b)
            t = run_session(spec, rotation=identity, alice=alice, bob=bob)
            k = transcript_key(t, digits)
            dist[k] = dist.get(k, Fraction(0)) + p_a * p_b
    return dist


def bob_wire_view_distribution(
    spec: ProtocolSpec,
    digits: int = 9,
    *,
    alice_twirl: CyclicZ | None = None,
) -> dict[tuple, Fraction]:
    """Exact distribution of Bob's raw (wire-level) view.

    With `alice_twirl` set, Alice alone twirls over the given group and the
    channel is noiseless; otherwise the protocol runs over its own channel.
    A plain Bob records wire payloads directly, so comparing the two
    distributions states that Alice's private twirl alone randomizes her
    frame exactly like the group channel does.
    """
    dist: dict[tuple, Fraction] = {}

    def add(t: Transcript, prob: Fraction) -> None:
        k = transcript_key(t, digits)[1]  # bob view only
        dist[k] = dist.get(k, Fraction(0)) + prob

    if alice_twirl is None:
        for rotation, prob in enumerate_support(spec.mu):
            add(run_session(spec, rotation=rotation), prob)
    else:
        _require_group(alice_twirl)
        for u_a, p_a in enumerate_support(alice_twirl):
            alice = TwirledParty(spec.make_alice(), alice_twirl, element=u_a)
            t = run_session(spec, rotation=identity_rotation(), alice=alice)
            add(t, p_a)
    return dist


def probe_protocol(
    mu: MisalignmentDistribution,
    v_alice: tuple[float, float, float] = (0.6, -0.2, 0.75),
    v_bob: tuple[float, float, float] = (-0.1, 0.9, 0.4),
) -> ProtocolSpec:
    """Deterministic two-message protocol for channel-equivalence checks.

    Alice sends a fixed vector, Bob replies with another fixed vector, and
    Bob's verdict is the sign of the first coordinate he received, so both
    message directions and the verdict all depend on the session rotation.
    """
    payload_a = unit3(*v_alice)
    payload_b = unit3(*v_bob)

    def decide(view: list[Message]) -> ProtocolOutcome:
        incoming = [m for m in view if m.sender == ALICE and m.is_vec()]
        if not incoming:
            return Aborted("malformed-session")
        return Accepted(1 if float(incoming[0].payload[0]) >= 0.0 else 0)

    return ProtocolSpec(
        name="probe",
        schedule=((ALICE, "send"), (BOB, "send"), (BOB, "decide")),
        mu=mu,
        make_alice=lambda: ScriptedParty(ALICE, [(VEC, payload_a)]),
        make_bob=lambda: ScriptedParty(BOB, [(VEC, payload_b)], decider=decide),
    )


def haar_twirl_moments(
    samples: int, seed: int, probe: np.ndarray | None = None
) -> dict[str, float]:
    """Moment comparison between a Haar channel and its compiled twirl.

    Applies `samples` direct Haar rotations and `samples` compiled relative
    frames (both parties' private elements composed) to the probe vector.
    Returns the largest deviations of the empirical mean from 0 and of the
    empirical second moment from I/3, for both constructions, plus the
    largest disagreement between the two constructions' moments.  Under the
    Haar law all of these vanish as the sample count grows.
    """
    rng = np.random.default_rng(seed)
    v = np.array([1.0, 0.0, 0.0]) if probe is None else np.asarray(probe, dtype=float)
    direct = np.einsum("nij,j->ni", haar_rotations(samples, rng), v)
    u_alice = haar_rotations(samples, rng)
    u_bob = haar_rotations(samples, rng)
    relative = np.matmul(u_bob.transpose(0, 2, 1), u_alice)
    compiled = np.einsum("nij,j->ni", relative, v)

    def moments(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return x.mean(axis=0), (x.T @ x) / len(x)

    mean_d, second_d = moments(direct)
    mean_c, second_c = moments(compiled)
    isotropic = np.eye(3) / 3.0
    return {
        "direct_mean_max": float(np.abs(mean_d).max()),
        "direct_second_max": float(np.abs(second_d - isotropic).max()),
        "compiled_mean_max": float(np.abs(mean_c).max()),
        "compiled_second_max": float(np.abs(second_c - isotropic).max()),
        "cross_mean_max": float(np.abs(mean_d - mean_c).max()),
        "cross_second_max": float(np.abs(second_d - second_c).max()),
    }


# ---------------------------------------------------------------------------
# parallel composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParallelProtocol:
    """k independent sessions of a base protocol, accepted iff all accept."""

    base: ProtocolSpec
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("need k >= 1 instances")


def parallel_compose(spec: ProtocolSpec, k: int) -> ParallelProtocol:
    return ParallelProtocol(spec, k)


def run_parallel(
    composed: ParallelProtocol,
    rng: np.random.Generator | None = None,
    *,
    alices: list[Party] | None = None,
    bobs: list[Party] | None = None,
    rotations: list[np.ndarray] | None = None,
) -> tuple[ProtocolOutcome, tuple[Transcript, ...]]:
    """Run all instances with independent channel rotations.

    Returns Accepted with the tuple of per-instance values when every
    instance accepts, otherwise Aborted naming the first failing instance.
    Explicit per-instance `rotations` support exact enumeration.
    """
    transcripts = []
    values = []
    failure: Aborted | None = None
    for i in range(composed.k):
        t = run_session(
            composed.base,
            rng,
            rotation=None if rotations is None else rotations[i],
            alice=None if alices is None else alices[i],
            bob=None if bobs is None else bobs[i],
        )
        transcripts.append(t)
        if isinstance(t.outcome, Accepted):
            values.append(t.outcome.value)
        elif failure is None:
            failure = Aborted(f"instance-{i}:{t.outcome.reason}")
    if failure is not None:
        return failure, tuple(transcripts)
    return Accepted(tuple(values)), tuple(transcripts)


# ---------------------------------------------------------------------------
# transcript serialization (line-delimited, replayable)
# ---------------------------------------------------------------------------

def _format_float(x: float) -> str:
    return format(float(x), ".17g")


def _payload_to_text(message: Message) -> str:
    if message.is_vec():
        return " ".join(_format_float(x) for x in message.payload)
    return json.dumps(message.payload, separators=(",", ":"))


def _payload_from_text(kind: str, text: str) -> object:
    if kind == VEC:
        return np.array([float(tok) for tok in text.split()])
    return _tuplify(json.loads(text))


def _tuplify(value: object) -> object:
    if isinstance(value, list):
        return tuple(_tuplify(v) for v in value)
    return value


def serialize_transcript(transcript: Transcript) -> str:
    """Line-delimited text record of a transcript.

    One message per line with direction, payload kind, and values at 17
    significant digits (lossless for doubles); parsing the text back yields
    bit-identical payloads, so verdict replay is exact.
    """
    lines = [f"transcript\tv1\tprotocol={transcript.protocol}"]
    for view_name, view in ((ALICE, transcript.alice_view), (BOB, transcript.bob_view)):
        for i, m in enumerate(view):
            lines.append(
                f"msg\t{view_name}\t{i}\t{m.sender}\t{m.kind}\t{_payload_to_text(m)}"
            )
    out = transcript.outcome
    if isinstance(out, Accepted):
        lines.append(f"outcome\taccepted\t{json.dumps(out.value, separators=(',', ':'))}")
    else:
        lines.append(f"outcome\taborted\t{out.reason}")
    return "\n".join(lines) + "\n"


def parse_transcript(text: str) -> Transcript:
    protocol = ""
    views: dict[str, list[Message]] = {ALICE: [], BOB: []}
    outcome: ProtocolOutcome | None = None
    for line in text.splitlines():
        if not line.strip():
            continue
        parts = line.split("\t")
        if parts[0] == "transcript":
            protocol = parts[2].removeprefix("protocol=")
        elif parts[0] == "msg":
            _, view_name, _idx, sender, kind, payload_text = parts
            views[view_name].append(
                Message(sender, kind, _payload_from_text(kind, payload_text))
            )
        elif parts[0] == "outcome":
            if parts[1] == "accepted":
                outcome = Accepted(_tuplify(json.loads(parts[2])))
            else:
                outcome = Aborted(parts[2])
        else:
            raise ValueError(f"unrecognized transcript line: {line!r}")
    if outcome is None:
        raise ValueError("transcript text has no outcome line")
    return Transcript(protocol, tuple(views[ALICE]), tuple(views[BOB]), outcome)


def replay_verdict(transcript: Transcript, make_decider: Callable[[], Party]) -> ProtocolOutcome:
    """Recompute the verdict from a recorded view.

    The decider must judge purely from its view (all implemented Bobs and
    the echo Alice do); its view is restored from the transcript and
    `decide` is invoked once.
    """
    decider = make_decider()
    decider.begin(None)
    source = transcript.bob_view if decider.role == BOB else transcript.alice_view
    decider.view = list(source)
    return decider.decide()
