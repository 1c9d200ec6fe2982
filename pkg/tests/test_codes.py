"""Sliding block codes, composition, and certified automorphisms.

Claims covered:
    - construction rejects incomplete / inadmissible / non-composable rules
    - apply_to_word, composition, powers, and padding show consistent behaviour
    - verify_automorphism certifies both orders, with a witness on failure
    - infer_inverse finds a radius-bounded inverse or reports its absence
    - shift-power recognition and product-code factorization round-trip
    - the window budget resolves from argument, environment, then default
"""

import pytest

from sftlab.codes import (
    DEFAULT_BUDGET,
    SlidingBlockCode,
    automorphism_power,
    codes_equal,
    compose,
    compose_automorphisms,
    factor_product_code,
    identity_code,
    infer_inverse,
    inverse_shift_code,
    pad_code,
    power,
    product_code,
    resolve_budget,
    shift_code,
    shift_power_of,
    verify_automorphism,
)
from sftlab.errors import (
    NotInverse,
    NotInvertibleWithin,
    ShiftMismatch,
    WindowBudgetExceeded,
    WordTooShort,
)
from sftlab.shifts import build_edge_shift, kronecker_product


@pytest.fixture
def full2():
    return build_edge_shift([[2]])


@pytest.fixture
def golden():
    return build_edge_shift([[1, 1], [1, 0]])


def xor_code(shift):
    """x_i + x_{i+1} mod 2 on the full 2-shift: the classic 2-to-1 rule."""
    rule = {(a, b): a ^ b for a in range(2) for b in range(2)}
    return SlidingBlockCode(shift, shift, 0, 1, rule, check=False)


# -- construction-time validation ------------------------------------------


def test_rejects_missing_window(full2):
    with pytest.raises(ValueError, match="not total"):
        SlidingBlockCode(full2, full2, 0, 0, {(0,): 0}, check=True)


def test_rejects_inadmissible_window(golden):
    rule = {w: w[0] for w in golden.words(2)}
    rule[(1, 1)] = 0  # edge 1 cannot follow itself
    with pytest.raises(ValueError, match="inadmissible"):
        SlidingBlockCode(golden, golden, 1, 0, rule, check=True)


def test_rejects_non_composable_outputs(golden):
    # constant rule to edge 1 (state 0 -> 1): 1 cannot follow 1
    rule = {w: 1 for w in golden.words(1)}
    with pytest.raises(ValueError, match="composable"):
        SlidingBlockCode(golden, golden, 0, 0, rule, check=True)


def test_rejects_bad_output_index(full2):
    with pytest.raises(ValueError, match="not a target edge"):
        SlidingBlockCode(full2, full2, 0, 0, {(0,): 5, (1,): 0}, check=True)


def test_rejects_negative_window_shape(full2):
    with pytest.raises(ValueError):
        SlidingBlockCode(full2, full2, -1, 0, {}, check=False)


def test_valid_identity_passes_check(golden):
    code = SlidingBlockCode(
        golden, golden, 0, 0, {(e,): e for e in range(3)}, check=True
    )
    assert code.window == 1


# -- applying and combining -------------------------------------------------


def test_apply_to_word_alignment(full2):
    sigma = shift_code(full2)
    assert sigma.apply_to_word((0, 1, 0, 1)) == (1, 0, 1)
    with pytest.raises(WordTooShort):
        sigma.apply_to_word((0,))


def test_compose_adds_window_shape(full2):
    sigma = shift_code(full2)
    twice = compose(sigma, sigma)
    assert (twice.memory, twice.anticipation) == (0, 2)
    assert twice.rule[(0, 1, 1)] == 1
    assert codes_equal(twice, power(sigma, 2))


def test_compose_requires_matching_shifts(full2, golden):
    with pytest.raises(ShiftMismatch):
        compose(shift_code(full2), shift_code(golden))


def test_power_zero_is_identity(full2):
    sigma = shift_code(full2)
    assert codes_equal(power(sigma, 0), identity_code(full2))


def test_pad_code_same_behaviour(golden):
    sigma = shift_code(golden)
    padded = pad_code(sigma, extra_memory=1, extra_anticipation=1)
    assert (padded.memory, padded.anticipation) == (1, 2)
    assert codes_equal(sigma, padded)


def test_codes_equal_distinguishes(full2):
    assert not codes_equal(shift_code(full2), inverse_shift_code(full2))


def test_codes_equal_via_edge_map(golden):
    # relabel edges by a permutation consistent with the graph: only the
    # identity works on the golden mean, so use the full shift instead
    full = build_edge_shift([[2]])
    c1 = SlidingBlockCode(full, full, 0, 0, {(0,): 1, (1,): 0}, check=False)
    c2 = SlidingBlockCode(full, full, 0, 0, {(0,): 1, (1,): 0}, check=False)
    assert codes_equal(c1, c2, edge_map=(1, 0))


# -- certified automorphisms ------------------------------------------------


def test_verify_automorphism_shift_pair(full2):
    auto = verify_automorphism(shift_code(full2), inverse_shift_code(full2))
    assert auto.shift == full2
    assert auto.certificate["method"] == "verify"
    assert {c["order"] for c in auto.certificate["checks"]} == {
        "inverse_after_forward",
        "forward_after_inverse",
    }


def test_verify_automorphism_witness(full2):
    sigma = shift_code(full2)
    with pytest.raises(NotInverse) as info:
        verify_automorphism(sigma, sigma)
    assert len(info.value.witness) == 3  # the two windows overlap to width 3


def test_automorphism_power_and_inverse(full2):
    auto = verify_automorphism(shift_code(full2), inverse_shift_code(full2))
    assert codes_equal(auto.power(3), power(shift_code(full2), 3))
    assert codes_equal(auto.power(-2), power(inverse_shift_code(full2), 2))
    assert codes_equal(auto.power(0), identity_code(full2))
    inv = auto.inverse_automorphism()
    assert codes_equal(inv.forward, auto.inverse)


def test_compose_automorphisms_cancels(full2):
    auto = verify_automorphism(shift_code(full2), inverse_shift_code(full2))
    around = compose_automorphisms(auto, auto.inverse_automorphism())
    assert codes_equal(around.forward, pad_code(identity_code(full2), 1, 1))


def test_infer_inverse_finds_shift(full2):
    auto = infer_inverse(shift_code(full2), r_max=2)
    assert codes_equal(auto.inverse, inverse_shift_code(full2))


def test_infer_inverse_refuses_xor(full2):
    with pytest.raises(NotInvertibleWithin) as info:
        infer_inverse(xor_code(full2), r_max=2)
    assert info.value.r_max == 2


def test_automorphism_power_object(full2):
    auto = verify_automorphism(shift_code(full2), inverse_shift_code(full2))
    cube = automorphism_power(auto, -3)
    assert codes_equal(cube.forward, power(inverse_shift_code(full2), 3))
    assert codes_equal(cube.inverse, power(shift_code(full2), 3))


# -- recognition and products -----------------------------------------------


def test_shift_power_recognition(full2):
    assert shift_power_of(shift_code(full2)) == 1
    assert shift_power_of(inverse_shift_code(full2)) == -1
    assert shift_power_of(identity_code(full2)) == 0
    assert shift_power_of(power(shift_code(full2), 3)) == 3
    assert shift_power_of(xor_code(full2)) is None
    flip = SlidingBlockCode(full2, full2, 0, 0, {(0,): 1, (1,): 0}, check=False)
    assert shift_power_of(flip) is None


def test_shift_power_prefers_smallest_window(full2):
    # a padded identity matches s = 0 even though wider shifts also fit
    padded = pad_code(identity_code(full2), 1, 1)
    assert shift_power_of(padded) == 0


def test_product_code_and_factorization(full2, golden):
    prod = kronecker_product(golden, full2)
    left = shift_code(golden)
    right = inverse_shift_code(full2)
    joint = product_code(left, right, prod)
    assert (joint.memory, joint.anticipation) == (1, 1)
    factors = factor_product_code(joint)
    assert factors is not None
    assert codes_equal(factors[0], left)
    assert codes_equal(factors[1], right)


def test_factor_product_code_refuses_entangled(full2):
    prod = kronecker_product(full2, full2)
    pairs = prod.edge_to_pair
    # swap the two tracks: coordinatewise in no fixed track assignment
    rule = {
        (e,): prod.pair_to_edge[(pairs[e][1], pairs[e][0])]
        for e in range(prod.n_edges)
    }
    swap = SlidingBlockCode(prod, prod, 0, 0, rule, check=False)
    assert factor_product_code(swap) is None


def test_product_code_requires_recorded_product(full2):
    with pytest.raises(ShiftMismatch):
        product_code(shift_code(full2), shift_code(full2), full2)


# -- budget resolution ------------------------------------------------------


def test_resolve_budget_priority(monkeypatch):
    monkeypatch.delenv("SFTLAB_BUDGET", raising=False)
    assert resolve_budget() == DEFAULT_BUDGET
    assert resolve_budget(123) == 123
    monkeypatch.setenv("SFTLAB_BUDGET", "1e4")
    assert resolve_budget() == 10000
    assert resolve_budget(77) == 77


def test_budget_stops_compose(full2):
    sigma = shift_code(full2)
    with pytest.raises(WindowBudgetExceeded):
        compose(sigma, sigma, budget=3)
