"""Exact and Monte Carlo security figures: soundness, concealing, binding.

Everything enumerable is computed in exact rational arithmetic (Fraction);
Monte Carlo estimators exist alongside as an independent route through the
actual channel geometry and must agree with the exact values.  Concealing
uses the distance sum_x |P(x|b=0) - P(x|b=1)|, i.e. twice the total
variation distance; reports carry both to prevent misreading.

Binding is formalized as the best acceptance probability over non-adaptive
cheating strategies (commit action fixed up front, reveal pair fixed before
the channel outcome is known, which is all the implemented protocols allow
since Alice hears nothing between commit and reveal).  Two reveal-test
readings are analyzed side by side: "strict" (decoded minus revealed must
be a single bump of 1 or 2) caps the flip cheat at 1/(2d), "lenient"
(additionally accepts a zero difference) at 1/d.  The discrepancy is
reported, never silently resolved.
"""

from __future__ import annotations

import itertools
import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .lattice import (
    DEFAULT_ENUM_BUDGET,
    BudgetExceededError,
    LatticeParams,
    decode_commit,
    encode,
    noise_support,
    parity,
    parity_class,
    parity_class_size,
    verify_reveal,
)
from .simple import (
    FourSymbolCodeword,
    acceptance_probability,
    arc_accepts,
    codeword_angle,
    four_symbol_channel_law,
    four_symbol_received_distribution,
    four_symbol_verify,
    interpolation_acceptance,
)
from .so3 import rot_z

#: two-sided 99% normal quantile, for Wilson intervals
Z_99 = statistics.NormalDist().inv_cdf(0.995)


def wilson_interval(successes: int, trials: int, z: float = Z_99) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials < 1:
        raise ValueError("need at least one trial")
    p_hat = successes / trials
    denom = 1.0 + z * z / trials
    center = (p_hat + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(p_hat * (1 - p_hat) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class MonteCarloEstimate:
    successes: int
    trials: int
    seed: int

    @property
    def rate(self) -> float:
        return self.successes / self.trials

    @property
    def interval99(self) -> tuple[float, float]:
        return wilson_interval(self.successes, self.trials)


def monte_carlo_acceptance(
    run_once: Callable[[np.random.Generator], bool], trials: int, seed: int
) -> MonteCarloEstimate:
    rng = np.random.default_rng(seed)
    successes = sum(1 for _ in range(trials) if run_once(rng))
    return MonteCarloEstimate(successes=successes, trials=trials, seed=seed)


# ---------------------------------------------------------------------------
# lattice scheme: concealing
# ---------------------------------------------------------------------------

def lattice_received_distributions(
    params: LatticeParams, budget: int = DEFAULT_ENUM_BUDGET
) -> tuple[dict[tuple[int, ...], Fraction], dict[tuple[int, ...], Fraction]]:
    """Exact law of Bob's decoded point for b = 0 and b = 1.

    Enumerates the parity class times the 2d-outcome noise law with exact
    rational weights; cost L^d * 2d, guarded by the budget.
    """
    d, L = params.d, params.L
    cost = (L**d) * 2 * d
    if cost > budget:
        raise BudgetExceededError(
            f"concealing enumeration size {cost} exceeds budget {budget}"
        )
    out = []
    for b in (0, 1):
        size = parity_class_size(d, L, b)
        weight = Fraction(1, size * 2 * d)
        dist: dict[tuple[int, ...], Fraction] = {}
        for a in parity_class(d, L, b):
            for j, multiplier in noise_support(params):
                received = list(a)
                received[j] += multiplier
                key = tuple(received)
                dist[key] = dist.get(key, Fraction(0)) + weight
        out.append(dist)
    return out[0], out[1]


def distribution_distance(
    p: dict, q: dict
) -> Fraction:
    """sum_x |p(x) - q(x)| over the union support (twice total variation)."""
    keys = set(p) | set(q)
    return sum(
        (abs(p.get(k, Fraction(0)) - q.get(k, Fraction(0))) for k in keys),
        Fraction(0),
    )


def concealing_exact(params: LatticeParams, budget: int = DEFAULT_ENUM_BUDGET) -> Fraction:
    p0, p1 = lattice_received_distributions(params, budget=budget)
    return distribution_distance(p0, p1)


def concealing_bound_exact(d: int, L: int) -> Fraction:
    """Boundary-counting upper bound 1 - ((L-1)/(L+2))^d on the concealing distance."""
    return 1 - Fraction(L - 1, L + 2) ** d


# ---------------------------------------------------------------------------
# lattice scheme: binding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BindingSearchResult:
    probability: Fraction
    commit_point: tuple[int, ...]
    reveal_point: tuple[int, ...]
    reveal_bit: int


def _offset_grid(d: int, norm: int, shell_only: bool) -> np.ndarray:
    grid = np.array(
        list(itertools.product(range(-norm, norm + 1), repeat=d)), dtype=int
    )
    if shell_only:
        grid = grid[np.abs(grid).max(axis=1) == norm]
    return grid


def _acceptance_matrix(
    d: int, offsets: np.ndarray, predicate: str
) -> np.ndarray:
    """accept[event, offset]: does noise event (j, m) pass with reveal offset delta?

    The decoded point is commit + m*e_j and the revealed one commit + delta,
    so the difference the verifier sees is m*e_j - delta, independent of the
    commit point; boundary effects enter only through validity masks.
    """
    events = [(j, m) for j in range(d) for m in (1, 2)]
    accept = np.zeros((len(events), len(offsets)), dtype=bool)
    for row, (j, m) in enumerate(events):
        diff = -offsets.copy()
        diff[:, j] += m
        nonzeros = np.count_nonzero(diff, axis=1)
        value = diff.sum(axis=1)  # equals the single nonzero entry when nonzeros == 1
        single = (nonzeros == 1) & ((value == 1) | (value == 2))
        if predicate == "lenient":
            accept[row] = single | (nonzeros == 0)
        else:
            accept[row] = single
    return accept


def _commit_candidate_values(L: int) -> list[int]:
    # every behaviour class of a coordinate: distance to the low edge, to the
    # honest-range top L-1, and to the decodable top L+1, each saturating at 3
    raw = {0, 1, 2, 3, L // 2, L - 4, L - 3, L - 2, L - 1, L, L + 1}
    return sorted(v for v in raw if 0 <= v <= L + 1)


def binding_search(
    params: LatticeParams,
    predicate: str | None = None,
    *,
    offset_norm: int = 2,
    shell_only: bool = False,
) -> BindingSearchResult:
    """Best flip cheat over all codebook commit points and odd reveal offsets.

    Exhausts commit points up to two symmetries that provably preserve the
    acceptance law: coordinate permutation (the noise picks its coordinate
    uniformly) and the per-coordinate saturation of boundary distances at 3
    (offsets never reach further).  Reveal offsets delta = reveal - commit
    range over the odd-parity points of the inf-norm ball of radius
    `offset_norm`; `shell_only` restricts to the shell, which is the
    widening check showing radius-3 offsets never help.

    Success probability is exact over the 2d equally likely noise events:
    the event decodes iff the bumped point stays in the codebook, and the
    reveal passes iff its offset-difference is accepted by the predicate.
    """
    predicate = predicate or params.predicate
    d, L = params.d, params.L
    offsets = _offset_grid(d, offset_norm, shell_only)
    offsets = offsets[np.abs(offsets).sum(axis=1) % 2 == 1]
    if len(offsets) == 0:
        return BindingSearchResult(Fraction(0), (0,) * d, (0,) * d, 0)
    accept = _acceptance_matrix(d, offsets, predicate)
    events = [(j, m) for j in range(d) for m in (1, 2)]

    best_count = -1
    best_commit: tuple[int, ...] | None = None
    best_offset: np.ndarray | None = None
    for commit_point in itertools.combinations_with_replacement(
        _commit_candidate_values(L), d
    ):
        commit_arr = np.array(commit_point, dtype=int)
        decode_ok = np.array(
            [commit_arr[j] + m <= L + 1 for j, m in events], dtype=bool
        )
        counts = accept[decode_ok].sum(axis=0)
        reveals = offsets + commit_arr
        valid = (reveals >= 0).all(axis=1) & (reveals <= L - 1).all(axis=1)
        counts = np.where(valid, counts, -1)
        idx = int(np.argmax(counts))
        if counts[idx] > best_count:
            best_count = int(counts[idx])
            best_commit = commit_point
            best_offset = offsets[idx]
    if best_count <= 0:
        return BindingSearchResult(Fraction(0), best_commit or (0,) * d, (0,) * d, 0)
    reveal = tuple(int(x) for x in (np.array(best_commit) + best_offset))
    return BindingSearchResult(
        probability=Fraction(best_count, 2 * d),
        commit_point=best_commit,
        reveal_point=reveal,
        reveal_bit=parity(reveal),
    )


def binding_sum_max(
    params: LatticeParams, predicate: str | None = None
) -> tuple[Fraction, tuple[int, ...]]:
    """Max over commit points of best-reveal-0 plus best-reveal-1 acceptance."""
    predicate = predicate or params.predicate
    d, L = params.d, params.L
    offsets = _offset_grid(d, 2, shell_only=False)
    odd_mask = np.abs(offsets).sum(axis=1) % 2 == 1
    accept = _acceptance_matrix(d, offsets, predicate)
    events = [(j, m) for j in range(d) for m in (1, 2)]

    best_sum = Fraction(-1)
    best_commit: tuple[int, ...] = (0,) * d
    for commit_point in itertools.combinations_with_replacement(
        _commit_candidate_values(L), d
    ):
        commit_arr = np.array(commit_point, dtype=int)
        decode_ok = np.array(
            [commit_arr[j] + m <= L + 1 for j, m in events], dtype=bool
        )
        counts = accept[decode_ok].sum(axis=0)
        reveals = offsets + commit_arr
        valid = (reveals >= 0).all(axis=1) & (reveals <= L - 1).all(axis=1)
        counts = np.where(valid, counts, -1)
        best_odd = counts[odd_mask].max() if odd_mask.any() else -1
        best_even = counts[~odd_mask].max() if (~odd_mask).any() else -1
        total = Fraction(max(best_odd, 0) + max(best_even, 0), 2 * d)
        if total > best_sum:
            best_sum = total
            best_commit = commit_point
    return best_sum, best_commit


@dataclass
class FinitePrecisionBinding:
    """Binding figures for an arbitrary committed vector.

    anchor is the codeword the vector decodes to directly (None when it is
    farther than eps from every codeword).  best_reveal maps each revealed
    bit to its best acceptance probability and the achieving lattice point.
    flip_probability is the best reveal of the bit opposite the anchor's
    parity, or the overall best when there is no anchor.
    """

    anchor: tuple[int, ...] | None
    best_reveal: dict[int, tuple[Fraction, tuple[int, ...] | None]]
    flip_probability: Fraction
    overall: Fraction


def binding_search_finite_precision(
    params: LatticeParams, w: np.ndarray, predicate: str | None = None
) -> FinitePrecisionBinding:
    """Exact acceptance probabilities when Alice commits an arbitrary unit vector.

    Pushes w through each of the 2d noise rotations, decodes with the real
    tolerance-ball rule, and scores every reveal that could accept at least
    one event.  A vector within eps of a codeword behaves exactly like that
    codeword; vectors beyond eps of every codeword decode nowhere under
    almost every rotation and score zero, except for the thin family sitting
    within eps of the codebook's out-of-range formal extension, which can
    reach (but never exceed) the same 1/d (lenient) and 1/(2d) (strict) caps
    as codeword commits.
    """
    predicate = predicate or params.predicate
    w = np.asarray(w, dtype=float)
    if abs(float(np.linalg.norm(w)) - 1.0) > 1e-9:
        raise ValueError("committed payload must be a unit vector")
    d = params.d
    events: list[tuple[int, ...] | None] = []
    for j, multiplier in noise_support(params):
        received = rot_z(multiplier * params.angles[j]) @ w
        decoded = decode_commit(params, received)
        events.append(None if decoded is None else tuple(int(x) for x in decoded))

    candidates: set[tuple[int, ...]] = set()
    for decoded in events:
        if decoded is None:
            continue
        dec = np.array(decoded, dtype=int)
        pool = [dec]
        for k in range(d):
            for bump in (1, 2):
                pool.append(dec - bump * np.eye(d, dtype=int)[k])
        for cand in pool:
            if cand.min() >= 0 and cand.max() <= params.L - 1:
                candidates.add(tuple(int(x) for x in cand))

    best: dict[int, tuple[Fraction, tuple[int, ...] | None]] = {
        0: (Fraction(0), None),
        1: (Fraction(0), None),
    }
    for cand in sorted(candidates):
        bit = parity(cand)
        hits = sum(
            1
            for decoded in events
            if decoded is not None
            and verify_reveal(params, decoded, bit, cand, predicate=predicate)
        )
        prob = Fraction(hits, 2 * d)
        if prob > best[bit][0]:
            best[bit] = (prob, cand)

    anchor_arr = decode_commit(params, w)
    anchor = None if anchor_arr is None else tuple(int(x) for x in anchor_arr)
    overall = max(best[0][0], best[1][0])
    if anchor is not None:
        flip = best[1 - parity(anchor)][0]
    else:
        flip = overall
    return FinitePrecisionBinding(
        anchor=anchor, best_reveal=best, flip_probability=flip, overall=overall
    )


# ---------------------------------------------------------------------------
# lattice scheme: soundness
# ---------------------------------------------------------------------------

def lattice_soundness_exact(
    params: LatticeParams, budget: int = DEFAULT_ENUM_BUDGET
) -> Fraction:
    """Exact honest acceptance through the channel geometry.

    Enumerates both parity classes against the full noise support, encoding,
    rotating, decoding, and verifying each combination; returns the exact
    acceptance probability (1 whenever the parameters certify).
    """
    d, L = params.d, params.L
    cost = (L**d) * 2 * d
    if cost > budget:
        raise BudgetExceededError(
            f"soundness enumeration size {cost} exceeds budget {budget}"
        )
    total = Fraction(0)
    for b in (0, 1):
        size = parity_class_size(d, L, b)
        for a in parity_class(d, L, b):
            payload = encode(params, a)
            for j, multiplier in noise_support(params):
                rotation = rot_z(multiplier * params.angles[j])
                decoded = decode_commit(params, rotation @ payload)
                ok = decoded is not None and verify_reveal(params, decoded, b, a)
                if ok:
                    total += Fraction(1, 2) * Fraction(1, size) * Fraction(1, 2 * d)
    return total


def lattice_soundness_mc(
    params: LatticeParams, trials: int = 10_000, seed: int = 42
) -> MonteCarloEstimate:
    """Seeded honest-run acceptance rate over the full geometric path."""
    from .lattice import honest_run

    def run_once(rng: np.random.Generator) -> bool:
        return honest_run(params, int(rng.integers(2)), rng)

    return monte_carlo_acceptance(run_once, trials, seed)


# ---------------------------------------------------------------------------
# four-symbol scheme figures
# ---------------------------------------------------------------------------

def four_symbol_concealing_exact() -> Fraction:
    return distribution_distance(
        four_symbol_received_distribution(0), four_symbol_received_distribution(1)
    )


def four_symbol_soundness_exact() -> Fraction:
    total = Fraction(0)
    for a in (0, 1):
        for b in (0, 1):
            codeword = FourSymbolCodeword(a, b)
            for received, prob in four_symbol_channel_law(codeword.symbol).items():
                if four_symbol_verify(received, codeword):
                    total += Fraction(1, 4) * prob
    return total


def four_symbol_flip_cheat() -> tuple[Fraction, tuple[int, FourSymbolCodeword]]:
    """Best passive flip: commit a codeword, reveal one with the other bit."""
    best = Fraction(0)
    witness: tuple[int, FourSymbolCodeword] = (0, FourSymbolCodeword(0, 1))
    for commit_symbol in range(4):
        committed_bit = commit_symbol % 2
        law = four_symbol_channel_law(commit_symbol)
        for reveal_a in (0, 1):
            reveal = FourSymbolCodeword(reveal_a, 1 - committed_bit)
            prob = sum(
                (p for r, p in law.items() if four_symbol_verify(r, reveal)),
                Fraction(0),
            )
            if prob > best:
                best = prob
                witness = (commit_symbol, reveal)
    return best, witness


def four_symbol_sum_max() -> Fraction:
    """Max over commit symbols of best-reveal-0 plus best-reveal-1."""
    best = Fraction(0)
    for commit_symbol in range(4):
        law = four_symbol_channel_law(commit_symbol)
        per_bit = []
        for bit in (0, 1):
            per_bit.append(
                max(
                    sum(
                        (p for r, p in law.items()
                         if four_symbol_verify(r, FourSymbolCodeword(reveal_a, bit))),
                        Fraction(0),
                    )
                    for reveal_a in (0, 1)
                )
            )
        best = max(best, per_bit[0] + per_bit[1])
    return best


def four_symbol_soundness_mc(trials: int = 10_000, seed: int = 42) -> MonteCarloEstimate:
    from .simple import four_symbol_channel

    def run_once(rng: np.random.Generator) -> bool:
        a, b = int(rng.integers(2)), int(rng.integers(2))
        codeword = FourSymbolCodeword(a, b)
        return four_symbol_verify(four_symbol_channel(codeword.symbol, rng), codeword)

    return monte_carlo_acceptance(run_once, trials, seed)


# ---------------------------------------------------------------------------
# continuous scheme figures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContinuousCurveRow:
    alpha: float
    p0_exact: float
    p1_exact: float
    p0_mc: MonteCarloEstimate | None = None
    p1_mc: MonteCarloEstimate | None = None


def continuous_acceptance_mc(
    alpha: float, reveal_b: int, trials: int = 10_000, seed: int = 42
) -> MonteCarloEstimate:
    sent = alpha * math.pi / 2.0

    def run_once(rng: np.random.Generator) -> bool:
        shift = float(rng.uniform(0.0, math.pi))
        return arc_accepts(sent + shift, codeword_angle(0, reveal_b))

    return monte_carlo_acceptance(run_once, trials, seed)


def cheat_curve_continuous(
    alphas: Iterable[float],
    trials: int = 10_000,
    seed: int = 42,
    with_mc: bool = True,
) -> list[ContinuousCurveRow]:
    """Exact interpolation-attack curve with optional Monte Carlo cross-check."""
    rows = []
    for i, alpha in enumerate(alphas):
        alpha = float(alpha)
        p0, p1 = interpolation_acceptance(alpha)
        mc0 = mc1 = None
        if with_mc:
            mc0 = continuous_acceptance_mc(alpha, 0, trials, seed + 2 * i)
            mc1 = continuous_acceptance_mc(alpha, 1, trials, seed + 2 * i + 1)
        rows.append(ContinuousCurveRow(alpha, p0, p1, mc0, mc1))
    return rows


def continuous_soundness_exact() -> float:
    """Honest acceptance probability, closed form (arcs start at the codeword)."""
    return min(
        acceptance_probability(codeword_angle(a, b), codeword_angle(a, b))
        for a in (0, 1)
        for b in (0, 1)
    )


# ---------------------------------------------------------------------------
# security reports
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return repr(float(value))
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@dataclass(frozen=True)
class SecurityReport:
    """Self-describing, byte-deterministic security summary.

    config rows echo every resolved input (including defaulted seeds);
    result rows carry a decimal rendering and, for exactly computed values,
    an additional `.exact` row with the rational.  Key order is fixed, so
    identical inputs serialize to identical bytes.
    """

    protocol: str
    config: tuple[tuple[str, object], ...]
    results: tuple[tuple[str, object], ...]
    notes: tuple[str, ...] = ()

    def to_text(self) -> str:
        lines = ["# framebc security report", "schema = 1", "[config]",
                 f"protocol = {self.protocol}"]
        for key, value in self.config:
            lines.append(f"{key} = {_fmt(value)}")
        lines.append("[results]")
        for key, value in self.results:
            if isinstance(value, Fraction):
                lines.append(f"{key} = {_fmt(value)}")
                lines.append(f"{key}.exact = {value}")
            elif isinstance(value, MonteCarloEstimate):
                lo, hi = value.interval99
                lines.append(f"{key} = {_fmt(value.rate)}")
                lines.append(
                    f"{key}.wilson99 = [{_fmt(lo)}, {_fmt(hi)}]"
                )
                lines.append(
                    f"{key}.samples = {value.successes}/{value.trials} seed={value.seed}"
                )
            else:
                lines.append(f"{key} = {_fmt(value)}")
        if self.notes:
            lines.append("[notes]")
            lines.extend(self.notes)
        return "\n".join(lines) + "\n"


def lattice_report(
    params: LatticeParams,
    *,
    mode: str = "exact",
    trials: int = 10_000,
    seed: int = 42,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> SecurityReport:
    """Full security report for a lattice parameter set.

    mode "exact" enumerates everything, "monte-carlo" simulates soundness
    only, "both" does both; exact binding and concealing are cheap enough to
    include whenever requested.
    """
    if mode not in ("exact", "monte-carlo", "both"):
        raise ValueError("mode must be exact, monte-carlo, or both")
    config = (
        ("d", params.d),
        ("L", params.L),
        ("eps_meas", params.eps_meas),
        ("predicate", params.predicate),
        ("min_gap", params.basis.min_gap),
        ("separation", params.basis.separation),
        ("mode", mode),
        ("trials", trials if mode != "exact" else 0),
        ("seed", seed if mode != "exact" else 0),
    )
    results: list[tuple[str, object]] = []
    notes: list[str] = []
    if mode in ("exact", "both"):
        eps = concealing_exact(params, budget=budget)
        bound = concealing_bound_exact(params.d, params.L)
        flip_strict = binding_search(params, "strict").probability
        flip_lenient = binding_search(params, "lenient").probability
        sum_max, _ = binding_sum_max(params, params.predicate)
        results += [
            ("soundness", lattice_soundness_exact(params, budget=budget)),
            ("concealing_exact", eps),
            ("concealing_tv", eps / 2),
            ("concealing_bound", bound),
            ("binding_flip_strict", flip_strict),
            ("binding_flip_lenient", flip_lenient),
            ("binding_sum_max", sum_max),
            ("method", "exact-enumeration"),
        ]
        if params.L >= 4 and eps > bound:
            results.append(("concealing_bound_violated", True))
            notes.append(
                "exact concealing distance exceeds the boundary-counting bound"
            )
        notes.append(
            "reveal-test readings differ: flip cheat is "
            f"{flip_strict} under strict, {flip_lenient} under lenient"
        )
    if mode in ("monte-carlo", "both"):
        results.append(("soundness_mc", lattice_soundness_mc(params, trials, seed)))
        results.append(("method_mc", f"monte-carlo trials={trials} seed={seed}"))
    return SecurityReport(
        protocol="lattice", config=config, results=tuple(results), notes=tuple(notes)
    )


def four_symbol_report(
    *, mode: str = "exact", trials: int = 10_000, seed: int = 42
) -> SecurityReport:
    if mode not in ("exact", "monte-carlo", "both"):
        raise ValueError("mode must be exact, monte-carlo, or both")
    config = (
        ("mode", mode),
        ("trials", trials if mode != "exact" else 0),
        ("seed", seed if mode != "exact" else 0),
    )
    results: list[tuple[str, object]] = []
    if mode in ("exact", "both"):
        flip, _ = four_symbol_flip_cheat()
        results += [
            ("soundness", four_symbol_soundness_exact()),
            ("concealing_exact", four_symbol_concealing_exact()),
            ("binding_flip", flip),
            ("binding_sum_max", four_symbol_sum_max()),
            ("method", "exact-enumeration"),
        ]
    if mode in ("monte-carlo", "both"):
        results.append(("soundness_mc", four_symbol_soundness_mc(trials, seed)))
        results.append(("method_mc", f"monte-carlo trials={trials} seed={seed}"))
    return SecurityReport(
        protocol="four-symbol", config=config, results=tuple(results)
    )


def continuous_report(
    alpha: float = 0.5,
    *,
    mode: str = "exact",
    trials: int = 10_000,
    seed: int = 42,
) -> SecurityReport:
    if mode not in ("exact", "monte-carlo", "both"):
        raise ValueError("mode must be exact, monte-carlo, or both")
    p0, p1 = interpolation_acceptance(alpha)
    config = (
        ("alpha", float(alpha)),
        ("mode", mode),
        ("trials", trials if mode != "exact" else 0),
        ("seed", seed if mode != "exact" else 0),
    )
    results: list[tuple[str, object]] = [
        ("soundness", continuous_soundness_exact()),
        ("concealing_exact", Fraction(0)),
        ("accept_reveal0", p0),
        ("accept_reveal1", p1),
        ("accept_sum", p0 + p1),
        ("binding_passive_flip", Fraction(1, 2)),
        ("method", "closed-form"),
    ]
    if mode in ("monte-carlo", "both"):
        mc0 = continuous_acceptance_mc(alpha, 0, trials, seed)
        mc1 = continuous_acceptance_mc(alpha, 1, trials, seed + 1)
        results.append(("accept_reveal0_mc", mc0))
        results.append(("accept_reveal1_mc", mc1))
        results.append(("method_mc", f"monte-carlo trials={trials} seed={seed}"))
    notes = (
        "concealing is exact: the received-direction law is uniform for both bits",
    )
    return SecurityReport(
        protocol="continuous", config=config, results=tuple(results), notes=notes
    )
