import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st

from framebc import lattice, so3

TOL = 1e-9


@pytest.fixture(scope="module")
def params_d2_l4():
    return lattice.make_params(2, 4)


@pytest.fixture(scope="module")
def params_d3_l8():
    return lattice.make_params(3, 8)


# --- basis construction ----------------------------------------------------

def test_basis_d1_l2_closed_form():
    # one angle scaled so (L+1)*theta = pi/2, hence theta = pi/6
    basis = lattice.build_angle_basis(1, 2)
    assert basis.angles[0] == pytest.approx(math.pi / 6, abs=TOL)
    assert basis.min_gap == pytest.approx(math.pi / 6, abs=TOL)
    params = lattice.LatticeParams(basis, eps_meas=0.0)
    expected = [k * math.pi / 6 for k in range(4)]
    assert np.allclose(params._angles, expected, atol=TOL)


def test_min_gap_matches_pairwise_oracle(params_d2_l4):
    # oracle: exhaustive O(N^2) pairwise minimum over the full codebook
    basis = params_d2_l4.basis
    points = lattice.codebook_points(2, 4)
    assert len(points) == 36
    alphas = points @ np.asarray(basis.angles)
    pairwise = min(
        abs(alphas[i] - alphas[j])
        for i in range(len(alphas))
        for j in range(i + 1, len(alphas))
    )
    assert basis.min_gap == pytest.approx(pairwise, abs=1e-15)
    assert basis.min_gap > 0


def test_min_gap_certifies_quarter_tolerance():
    basis = lattice.build_angle_basis(3, 8)
    eps = basis.min_gap / 4
    assert 2 * math.sin(basis.min_gap / 2) > 2 * eps  # chord beats 2*eps


def test_basis_angle_sum_fills_quarter_circle():
    for d, L in [(1, 2), (2, 4), (3, 8)]:
        basis = lattice.build_angle_basis(d, L)
        assert math.fsum((L + 1) * t for t in basis.angles) == pytest.approx(
            math.pi / 2, abs=1e-12
        )


def test_budget_exceeded():
    with pytest.raises(lattice.BudgetExceededError, match="too large to certify"):
        lattice.build_angle_basis(8, 30, budget=10**6)


def test_basis_validation():
    with pytest.raises(ValueError):
        lattice.build_angle_basis(0, 4)
    with pytest.raises(ValueError):
        lattice.build_angle_basis(2, 1)


def test_params_reject_coarse_eps():
    basis = lattice.build_angle_basis(2, 4)
    with pytest.raises(ValueError, match="separation"):
        lattice.LatticeParams(basis, eps_meas=basis.max_safe_eps * 2)
    with pytest.raises(ValueError, match="predicate"):
        lattice.LatticeParams(basis, eps_meas=0.0, predicate="other")


# --- encode ----------------------------------------------------------------

def test_encode_zero_point(params_d2_l4):
    assert np.allclose(lattice.encode(params_d2_l4, (0, 0)), [1, 0, 0], atol=TOL)


def test_encode_d1_direct():
    params = lattice.make_params(1, 2)  # theta = pi/6
    out = lattice.encode(params, (3,))
    assert np.allclose(out, [0.0, 1.0, 0.0], atol=TOL)


def test_encode_range_check(params_d2_l4):
    with pytest.raises(ValueError):
        lattice.encode(params_d2_l4, (0, 6))
    with pytest.raises(ValueError):
        lattice.encode(params_d2_l4, (-1, 0))


def test_encode_injective_on_codebook(params_d2_l4):
    seen = set()
    for point in itertools.product(range(6), repeat=2):
        key = tuple(np.round(lattice.encode(params_d2_l4, point), 9))
        assert key not in seen
        seen.add(key)


# --- commit ----------------------------------------------------------------

def test_commit_d1_l2_deterministic_classes():
    params = lattice.make_params(1, 2)
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert tuple(lattice.commit(params, 0, rng)[0]) == (0,)
        assert tuple(lattice.commit(params, 1, rng)[0]) == (1,)


def test_commit_d2_l2_uniform_over_class():
    params = lattice.make_params(2, 2)
    rng = np.random.default_rng(5)
    counts = Counter(tuple(int(x) for x in lattice.commit(params, 1, rng)[0])
                     for _ in range(10_000))
    assert set(counts) == {(0, 1), (1, 0)}
    for value in counts.values():
        assert abs(value / 10_000 - 0.5) <= 0.05


def test_commit_uniform_odd_l():
    params = lattice.make_params(2, 3)
    rng = np.random.default_rng(11)
    counts = Counter(tuple(int(x) for x in lattice.commit(params, 0, rng)[0])
                     for _ in range(25_000))
    expected = set(lattice.parity_class(2, 3, 0))
    assert set(counts) == expected
    assert len(expected) == lattice.parity_class_size(2, 3, 0) == 5
    for value in counts.values():
        assert abs(value / 25_000 - 1 / 5) <= 0.02


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=2, max_value=9),
    st.integers(min_value=0, max_value=1),
    st.integers(min_value=0, max_value=2**31 - 1),
)
def test_commit_parity_always_matches(d, L, b, seed):
    params = lattice.make_params(d, L)
    a, payload = lattice.commit(params, b, np.random.default_rng(seed))
    assert lattice.parity(a) == b
    assert all(0 <= int(x) <= L - 1 for x in a)
    assert abs(np.linalg.norm(payload) - 1.0) <= TOL


def test_parity_class_size_closed_form():
    for d, L in [(1, 2), (2, 3), (3, 4), (2, 5)]:
        for b in (0, 1):
            count = sum(1 for _ in lattice.parity_class(d, L, b))
            assert count == lattice.parity_class_size(d, L, b)


# --- decode ----------------------------------------------------------------

def test_decode_roundtrip_exhaustive(params_d2_l4):
    for point in itertools.product(range(6), repeat=2):
        decoded = lattice.decode_commit(params_d2_l4, lattice.encode(params_d2_l4, point))
        assert decoded is not None and tuple(decoded) == point


def test_decode_roundtrip_exhaustive_d3_l8(params_d3_l8):
    for point in itertools.product(range(10), repeat=3):
        decoded = lattice.decode_commit(params_d3_l8, lattice.encode(params_d3_l8, point))
        assert decoded is not None and tuple(decoded) == point


def test_decode_roundtrip_sampled_large_codebook():
    # 10^5 codebook points: too many to exhaust cheaply, so sample
    params = lattice.make_params(5, 8)
    rng = np.random.default_rng(31)
    for _ in range(1000):
        point = tuple(int(x) for x in rng.integers(0, 10, size=5))
        decoded = lattice.decode_commit(params, lattice.encode(params, point))
        assert decoded is not None and tuple(decoded) == point


def test_decode_perturbed_within_half_eps(params_d3_l8):
    # oracle: linear scan over the full codebook for the true nearest codeword
    rng = np.random.default_rng(21)
    points = lattice.codebook_points(3, 8)
    vectors = np.stack([lattice.encode(params_d3_l8, p) for p in points])
    for _ in range(50):
        point = points[rng.integers(len(points))]
        v = lattice.encode(params_d3_l8, point)
        tangent = np.array([-v[1], v[0], 0.0])
        received = v + tangent * (params_d3_l8.eps_meas / 2) * rng.choice([-1.0, 1.0])
        decoded = lattice.decode_commit(params_d3_l8, received)
        distances = np.linalg.norm(vectors - received, axis=1)
        best = int(np.argmin(distances))
        assert distances[best] <= params_d3_l8.eps_meas
        assert decoded is not None and tuple(decoded) == tuple(points[best]) == tuple(point)


def test_decode_out_of_plane_aborts(params_d2_l4):
    assert lattice.decode_commit(params_d2_l4, np.array([0.0, 0.0, 1.0])) is None


def test_decode_far_angle_aborts(params_d2_l4):
    # halfway between two adjacent codebook angles, beyond eps of both
    angles = params_d2_l4._angles
    mid = so3.planar_unit((angles[3] + angles[4]) / 2)
    assert lattice.decode_commit(params_d2_l4, mid) is None


# --- channel noise ---------------------------------------------------------

def test_noise_law_d1():
    params = lattice.make_params(1, 4)
    rng = np.random.default_rng(9)
    counts = Counter(tuple(lattice.apply_channel_noise(params, (0,), rng))
                     for _ in range(10_000))
    assert set(counts) == {(1,), (2,)}
    for value in counts.values():
        assert abs(value / 10_000 - 0.5) <= 0.02


def test_noise_law_d3_frequencies(params_d3_l8):
    rng = np.random.default_rng(13)
    n = 100_000
    base = (1, 2, 3)
    counts = Counter(
        tuple(lattice.apply_channel_noise(params_d3_l8, base, rng)) for _ in range(n)
    )
    assert len(counts) == 6
    p = 1 / 6
    sigma = math.sqrt(p * (1 - p) / n)
    for value in counts.values():
        assert abs(value / n - p) <= 3 * sigma + 1e-12


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=0, max_value=2**31 - 1),
)
def test_noise_moves_exactly_one_coordinate(d, seed):
    params = lattice.make_params(d, 4)
    rng = np.random.default_rng(seed)
    a = np.zeros(d, dtype=int)
    out = lattice.apply_channel_noise(params, a, rng)
    diff = out - a
    nonzero = np.nonzero(diff)[0]
    assert len(nonzero) == 1 and int(diff[nonzero[0]]) in (1, 2)


# --- reveal verification ---------------------------------------------------

@pytest.mark.parametrize("predicate", lattice.PREDICATES)
def test_verify_accepts_honest_bumps(params_d2_l4, predicate):
    a = (1, 2)
    for j in range(2):
        for multiplier in (1, 2):
            decoded = np.array(a)
            decoded[j] += multiplier
            assert lattice.verify_reveal(
                params_d2_l4, decoded, lattice.parity(a), a, predicate=predicate
            )


def test_verify_zero_difference_split(params_d2_l4):
    a = (1, 2)
    assert lattice.verify_reveal(params_d2_l4, np.array(a), 1, a, predicate="lenient")
    assert not lattice.verify_reveal(params_d2_l4, np.array(a), 1, a, predicate="strict")


def test_verify_rejects(params_d2_l4):
    a = (1, 2)
    assert not lattice.verify_reveal(params_d2_l4, np.array([2, 3]), 1, a)  # two bumps
    assert not lattice.verify_reveal(params_d2_l4, np.array([4, 2]), 1, a)  # bump of 3
    assert not lattice.verify_reveal(params_d2_l4, np.array([0, 2]), 1, a)  # bump of -1
    assert not lattice.verify_reveal(params_d2_l4, np.array([2, 2]), 0, a)  # wrong parity
    assert not lattice.verify_reveal(params_d2_l4, np.array([2, 2]), 1, (1, 4))  # out of range


# --- the channel/lattice correspondence -------------------------------------

def test_lattice_mu_support_sizes():
    params2 = lattice.make_params(2, 4)
    support = so3.enumerate_support(lattice.lattice_mu(params2))
    assert len(support) == 4
    assert all(p == Fraction(1, 4) for _, p in support)

    params1 = lattice.make_params(1, 2)
    support1 = so3.enumerate_support(lattice.lattice_mu(params1))
    assert len(support1) == 2
    assert all(p == Fraction(1, 2) for _, p in support1)
    angles = sorted(so3.rotation_z_angle(r) for r, _ in support1)
    assert angles == pytest.approx([math.pi / 6, math.pi / 3], abs=TOL)


def _geometric_noise_law(params, a):
    law = {}
    for rotation, prob in so3.enumerate_support(lattice.lattice_mu(params)):
        decoded = lattice.decode_commit(params, rotation @ lattice.encode(params, a))
        key = None if decoded is None else tuple(int(x) for x in decoded)
        law[key] = law.get(key, Fraction(0)) + prob
    return law


def _abstract_noise_law(params, a):
    law = {}
    for j, multiplier in lattice.noise_support(params):
        moved = list(a)
        moved[j] += multiplier
        key = tuple(moved) if max(moved) <= params.L + 1 else None
        law[key] = law.get(key, Fraction(0)) + Fraction(1, 2 * params.d)
    return law


@pytest.mark.parametrize("d,L", [(1, 2), (2, 4), (3, 8)])
def test_rotation_decoding_matches_coordinate_noise_exactly(d, L):
    # exact law equivalence between the geometric path and the lattice action
    params = lattice.make_params(d, L)
    rng = np.random.default_rng(17)
    test_points = {tuple(lattice.commit(params, b, rng)[0]) for b in (0, 1) for _ in range(5)}
    for a in test_points:
        assert _geometric_noise_law(params, a) == _abstract_noise_law(params, a)


def test_rotation_decoding_matches_noise_chi2(params_d2_l4):
    params = params_d2_l4
    a = (1, 2)
    rng = np.random.default_rng(23)
    n = 100_000
    counts = Counter()
    payload = lattice.encode(params, a)
    mu = lattice.lattice_mu(params)
    for _ in range(n):
        decoded = lattice.decode_commit(params, so3.sample(mu, rng) @ payload)
        counts[tuple(int(x) for x in decoded)] += 1
    expected = n / (2 * params.d)
    statistic = sum((c - expected) ** 2 / expected for c in counts.values())
    dof = 2 * params.d - 1
    assert len(counts) == 2 * params.d
    assert statistic <= scipy.stats.chi2.ppf(0.99, dof)


# --- completeness ----------------------------------------------------------

def test_honest_completeness_exhaustive(params_d2_l4):
    params = params_d2_l4
    for b in (0, 1):
        for a in lattice.parity_class(params.d, params.L, b):
            payload = lattice.encode(params, a)
            for rotation, _ in so3.enumerate_support(lattice.lattice_mu(params)):
                decoded = lattice.decode_commit(params, rotation @ payload)
                assert decoded is not None
                assert lattice.verify_reveal(params, decoded, b, a)


def test_honest_completeness_monte_carlo(params_d3_l8):
    rng = np.random.default_rng(29)
    assert all(
        lattice.honest_run(params_d3_l8, int(rng.integers(2)), rng)
        for _ in range(10_000)
    )
