import pytest

from f2_subspaces.comparability import InvalidParamsError
from f2_subspaces.config import Settings
from f2_subspaces.gf2 import GF2Vector, Subspace, random_subspace
from f2_subspaces.harness.instances import InstanceSpec, gen_instance
from f2_subspaces.lpn import LpnMixtureOracle, LpnOracle, lpn_mixture_components
from f2_subspaces.oracle import MixtureOracle
from f2_subspaces.recovery import Regime, collision_uniformity_test, recover_driver
from f2_subspaces.recovery.driver import ordered
from f2_subspaces.rng import make_rng


def test_identical_components():
    a = random_subspace(8, 5, make_rng(1))
    oracle = MixtureOracle(a, a, "0.5", make_rng(2))

    result = recover_driver(oracle, 8, 0.3, 0.1, rng=make_rng(3))

    assert result.regime is Regime.IDENTICAL
    assert result.a0_hat == a and result.a1_hat == a
    assert result.w0_hat is None


def test_zero_subspaces():
    zero = Subspace.zero(6)
    oracle = MixtureOracle(zero, zero, "0.5", make_rng(4))

    result = recover_driver(oracle, 6, 0.3, 0.1, rng=make_rng(5))

    assert result.regime is Regime.IDENTICAL
    assert result.a0_hat == zero


def test_incomparable_instance():
    spec = InstanceSpec(n=10, d0=4, d1=4, relation="incomparable", seed=6)
    a0, a1, oracle = gen_instance(spec)

    result = recover_driver(oracle, 10, 0.25, 0.1, rng=make_rng(7))

    assert result.regime is Regime.INCOMPARABLE
    assert result.matches(a0, a1)
    w_a0 = result.w0_hat if result.a0_hat == a0 else result.w1_hat
    assert abs(w_a0 - 0.5) <= 0.05
    assert result.samples == oracle.samples_drawn


def test_nested_instance_with_a_large_gap():
    spec = InstanceSpec(n=20, d0=20, d1=4, relation="nested", seed=8)
    a0, a1, oracle = gen_instance(spec)

    result = recover_driver(oracle, 20, 0.5, 0.1, rng=make_rng(9))

    assert result.regime is Regime.LARGE_GAP
    assert result.a0_hat == a0
    assert result.a1_hat == a1
    assert abs(result.w0_hat - 0.5) <= 0.05


def test_lpn_mixture_is_reported_as_hard():
    secret = GF2Vector.from_string("110110")
    oracle = LpnMixtureOracle(LpnOracle(secret, 0.1, make_rng(10)))

    result = recover_driver(oracle, 7, 0.2, 0.1, rng=make_rng(11))

    full, _, _ = lpn_mixture_components(secret, 0.1)
    assert result.regime is Regime.LPN_HARD
    assert result.a0_hat == full
    assert result.a1_hat.dim == 0


def test_result_serializes():
    a = Subspace.from_strings(["110"], 3)
    oracle = MixtureOracle(a, a, "0.5", make_rng(12))

    payload = recover_driver(oracle, 3, 0.3, 0.1, rng=make_rng(13)).to_dict()

    assert payload["regime"] == "identical"
    assert payload["basis_a0"] == ["110"]
    assert payload["w0_hat"] is None


def test_rejects_bad_arguments():
    oracle = MixtureOracle(Subspace.full(3), Subspace.full(3), "0.5", make_rng(14))

    with pytest.raises(ValueError):
        recover_driver(oracle, 4, 0.3, 0.1, rng=make_rng(15))
    with pytest.raises(InvalidParamsError):
        recover_driver(oracle, 3, 0.7, 0.1, rng=make_rng(15))
    assert oracle.samples_drawn == 0


def test_ordering_puts_larger_dimension_first():
    big = Subspace.full(3)
    small = Subspace.from_strings(["100"], 3)

    assert ordered(small, big) == (big, small, True)
    assert ordered(big, small) == (big, small, False)


def test_uniformity_test():
    full = Subspace.full(6)
    point = Subspace.from_strings(["100000"], 6)

    uniform = MixtureOracle(full, full, "0.5", make_rng(16))
    skewed = MixtureOracle(full, point, "0.5", make_rng(17))

    assert collision_uniformity_test(uniform, 0.3, 0.05) is True
    assert collision_uniformity_test(skewed, 0.3, 0.05) is False


# Full test at d=12 needs about 9 900 draws; projected rounds fit in F2^9.
PROJECTED = Settings(uniformity_max_samples=6_000)


def test_uniformity_test_projects_large_dimensions():
    full = Subspace.full(12)
    small = random_subspace(12, 4, make_rng(18))

    uniform = MixtureOracle(full, full, "0.5", make_rng(19))
    skewed = MixtureOracle(full, small, "0.5", make_rng(20))

    assert collision_uniformity_test(uniform, 0.3, 0.1, PROJECTED, rng=make_rng(21)) is True
    assert collision_uniformity_test(skewed, 0.3, 0.1, PROJECTED, rng=make_rng(22)) is False
    assert 0 < uniform.samples_drawn <= 24 * 6_000


def test_projected_uniformity_test_needs_a_generator():
    full = Subspace.full(12)
    oracle = MixtureOracle(full, full, "0.5", make_rng(23))

    with pytest.raises(ValueError):
        collision_uniformity_test(oracle, 0.3, 0.1, PROJECTED)
    assert oracle.samples_drawn == 0


def test_uniformity_test_gives_up_when_nothing_fits():
    full = Subspace.full(12)
    oracle = MixtureOracle(full, full, "0.5", make_rng(24))

    verdict = collision_uniformity_test(
        oracle, 0.3, 0.1, Settings(uniformity_max_samples=10), rng=make_rng(25)
    )

    assert verdict is None
    assert oracle.samples_drawn == 0


def test_small_gap_is_hard_when_only_projections_are_affordable():
    spec = InstanceSpec(n=12, d0=12, d1=8, relation="nested", seed=26)
    _, _, oracle = gen_instance(spec)

    result = recover_driver(oracle, 12, 0.3, 0.1, rng=make_rng(27), settings=PROJECTED)

    assert result.regime is Regime.LPN_HARD
    assert result.a0_hat == Subspace.full(12)
    assert result.a1_hat.dim == 0


@pytest.mark.acceptance
def test_hyperplane_pair_beyond_the_full_collision_test_is_hard():
    spec = InstanceSpec(n=26, d0=26, d1=25, relation="nested", seed=1)
    _, _, oracle = gen_instance(spec)

    result = recover_driver(oracle, 26, 0.3, 0.1, rng=make_rng(2))

    assert result.regime is Regime.LPN_HARD
    assert result.a1_hat.dim == 0


@pytest.mark.acceptance
def test_incomparable_pipeline_success_rate():
    hits = 0
    weights_ok = 0
    trials = 200
    for seed in range(trials):
        spec = InstanceSpec(n=24, d0=12, d1=12, relation="incomparable", seed=seed)
        a0, a1, oracle = gen_instance(spec)
        result = recover_driver(oracle, 24, 0.5, 0.1, rng=make_rng(50_000 + seed))
        if result.matches(a0, a1):
            hits += 1
            w_a0 = result.w0_hat if result.a0_hat == a0 else result.w1_hat
            weights_ok += abs(w_a0 - 0.5) <= 0.05
    assert hits / trials >= 0.9
    assert weights_ok == hits


@pytest.mark.acceptance
def test_large_gap_pipeline_success_rate():
    hits = 0
    trials = 100
    for seed in range(trials):
        spec = InstanceSpec(n=16, d0=16, d1=4, relation="nested", seed=seed)
        a0, a1, oracle = gen_instance(spec)
        result = recover_driver(oracle, 16, 0.5, 0.1, rng=make_rng(60_000 + seed))
        hits += result.regime is Regime.LARGE_GAP and result.matches(a0, a1)
    assert hits / trials >= 0.9
