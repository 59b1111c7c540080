import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cvdchordal.generators import SplitMix64
from cvdchordal.supermodular import (MnpConvergenceError, SetFunctionOracle,
                                     check_supermodular, maximize_supermodular,
                                     minimize_submodular_mnp)


def modular(coeffs):
    return SetFunctionOracle(list(range(len(coeffs))),
                             lambda m: sum(c for i, c in enumerate(coeffs) if m >> i & 1))


def random_supermodular(seed, size, spread=20):
    """Modular part with mixed signs plus nonnegative pairwise bonuses."""
    rng = SplitMix64(seed)
    lin = [rng.randint(-spread, spread) for _ in range(size)]
    bonus = {}
    for i in range(size):
        for j in range(i + 1, size):
            bonus[(i, j)] = rng.randint(0, 6) if rng.randint(0, 2) == 0 else 0

    def fn(mask):
        mem = [i for i in range(size) if mask >> i & 1]
        total = sum(lin[i] for i in mem)
        for a in range(len(mem)):
            for b in range(a + 1, len(mem)):
                total += bonus[(mem[a], mem[b])]
        return total

    return SetFunctionOracle(list(range(size)), fn)


def test_modular_nonnegative_takes_everything():
    f = modular([3, 0, 5, 2])
    res = maximize_supermodular(f)
    assert res.value == 10
    assert f.eval_mask(res.argmax) == res.value
    assert res.argmax | 0b1111 == 0b1111


def test_cardinality_penalty_takes_nothing():
    f = SetFunctionOracle(list(range(6)), lambda m: -m.bit_count())
    res = maximize_supermodular(f)
    assert res.argmax == 0 and res.value == 0


def test_never_below_empty_or_full():
    for seed in range(20):
        f = random_supermodular(seed, 9)
        res = maximize_supermodular(f)
        assert res.value >= max(f.eval_mask(0), f.eval_mask((1 << 9) - 1))


def test_mnp_cut_function():
    cut = SetFunctionOracle([0, 1], lambda m: 1 if m in (1, 2) else 0)
    mask = minimize_submodular_mnp(cut)
    assert cut.eval_mask(mask) == 0


def test_mnp_modular_mixed_signs():
    coeffs = [4, -3, 0, -1, 2]
    f = modular(coeffs)
    mask = minimize_submodular_mnp(f)
    assert f.eval_mask(mask) == -4
    assert mask & 0b01010 == 0b01010 and not mask & 0b10001


def test_mnp_matches_exhaustive_on_random():
    for seed in range(30):
        size = 5 + seed % 10
        f = random_supermodular(seed, size)
        exh = maximize_supermodular(f, exhaustive_cap=18)
        neg = SetFunctionOracle(f.ground, lambda m: -f.eval_mask(m))
        assert f.eval_mask(minimize_submodular_mnp(neg)) == exh.value


def test_forced_mnp_route_agrees():
    for seed in range(8):
        f = random_supermodular(seed, 12)
        exh = maximize_supermodular(f, exhaustive_cap=18)
        mnp = maximize_supermodular(f, exhaustive_cap=4)
        assert mnp.method == "min_norm_point"
        assert mnp.value == exh.value
        assert f.eval_mask(mnp.argmax) == mnp.value


def test_method_routing():
    f = random_supermodular(1, 21)
    assert maximize_supermodular(f).method == "min_norm_point"
    assert maximize_supermodular(random_supermodular(1, 6)).method == "exhaustive"


def test_tol_guard():
    f = modular([1, 2, 3])
    with pytest.raises(ValueError):
        minimize_submodular_mnp(f, tol=0.4)


def test_check_supermodular_modular_true():
    ok, witness = check_supermodular(modular([2, -1, 3]))
    assert ok and witness is None


def test_check_supermodular_coverage_false():
    f = SetFunctionOracle([0, 1, 2], lambda m: min(m.bit_count(), 1))
    ok, witness = check_supermodular(f)
    assert not ok
    x, y = witness
    assert (f.eval_mask(x | y) + f.eval_mask(x & y)
            < f.eval_mask(x) + f.eval_mask(y))


def test_check_supermodular_refuses_large_ground():
    f = modular([1] * 13)
    with pytest.raises(ValueError):
        check_supermodular(f)


def test_random_supermodular_family_is_supermodular():
    for seed in range(10):
        ok, _ = check_supermodular(random_supermodular(seed, 7))
        assert ok


@given(st.lists(st.integers(-50, 50), min_size=0, max_size=10))
def test_modular_argmax_is_positive_support(coeffs):
    f = modular(coeffs)
    res = maximize_supermodular(f)
    assert res.value == sum(c for c in coeffs if c > 0)


def test_evaluation_count_trend():
    # distinct-oracle-call counts for the MNP route should grow polynomially
    counts = {}
    for size in (6, 9, 12, 15):
        f = random_supermodular(3, size)
        res = maximize_supermodular(f, exhaustive_cap=4)
        counts[size] = res.evaluations
    sizes = sorted(counts)
    slope = ((math.log(max(counts[sizes[-1]], 2)) - math.log(max(counts[sizes[0]], 2)))
             / (math.log(sizes[-1]) - math.log(sizes[0])))
    assert slope < 6
