"""Edge shifts, word counting, Perron data, and eventual-range data.

Claims covered:
    - edge enumeration and admissibility follow the matrix
    - count_words is the entry sum of A^n (Fibonacci on the golden mean)
    - irreducible / primitive / positive_entropy flags on standard examples
    - perron_data: eigenvalue, eigenvector residual, entropy in nats,
      including the periodic (irreducible, non-primitive) case
    - dimension_data: exact restricted action, rank, inverse, rho_minus
    - kronecker products record a consistent edge/pair correspondence
    - transpose_shift's bijection really transposes edges
"""

import math
from fractions import Fraction

import pytest

from sftlab import ratmat
from sftlab.errors import NilpotentMatrix, ReducibleInput, WindowBudgetExceeded
from sftlab.shifts import (
    build_edge_shift,
    count_words,
    dimension_data,
    kronecker_product,
    perron_data,
    transpose_shift,
)

GOLDEN = [[1, 1], [1, 0]]
PHI = (1 + math.sqrt(5)) / 2


# -- construction and enumeration ------------------------------------------


def test_edges_follow_matrix():
    shift = build_edge_shift(GOLDEN)
    assert shift.k == 2
    assert shift.n_edges == 3
    assert shift.edges == ((0, 0, 0), (0, 1, 0), (1, 0, 0))


def test_full_shift_edges_are_loops():
    shift = build_edge_shift([[3]])
    assert shift.edges == ((0, 0, 0), (0, 0, 1), (0, 0, 2))


def test_admissibility():
    shift = build_edge_shift(GOLDEN)
    assert shift.is_admissible((0, 0, 1, 2))
    assert not shift.is_admissible((1, 1))  # edge 1 ends at state 1


def test_words_match_count():
    shift = build_edge_shift(GOLDEN)
    for n in range(5):
        listed = list(shift.words(n))
        assert len(listed) == count_words(shift, n)
        assert len(set(listed)) == len(listed)
        assert all(shift.is_admissible(w) for w in listed)


def test_count_words_golden_is_fibonacci_like():
    shift = build_edge_shift(GOLDEN)
    assert [count_words(shift, n) for n in range(7)] == [1, 3, 5, 8, 13, 21, 34]


def test_count_words_full_shift():
    shift = build_edge_shift([[2]])
    assert [count_words(shift, n) for n in range(6)] == [1, 2, 4, 8, 16, 32]


def test_ensure_budget_raises_past_cap():
    shift = build_edge_shift([[2]])
    assert shift.ensure_budget(3, 100) == 8
    with pytest.raises(WindowBudgetExceeded):
        shift.ensure_budget(10, 100)


# -- structural flags -------------------------------------------------------


def test_flags_standard_examples():
    golden = build_edge_shift(GOLDEN)
    assert golden.irreducible and golden.primitive and golden.positive_entropy

    periodic = build_edge_shift([[0, 1], [1, 0]])
    assert periodic.irreducible and not periodic.primitive
    assert not periodic.positive_entropy

    upper = build_edge_shift([[1, 1], [0, 1]])
    assert not upper.irreducible

    single = build_edge_shift([[1]])
    assert single.irreducible and not single.positive_entropy


def test_shift_equality_is_by_matrix():
    assert build_edge_shift(GOLDEN) == build_edge_shift(GOLDEN)
    assert build_edge_shift(GOLDEN) != build_edge_shift([[2]])


# -- Perron data ------------------------------------------------------------


def test_perron_golden():
    data = perron_data(build_edge_shift(GOLDEN))
    assert data.lambda_ == pytest.approx(PHI, abs=1e-9)
    assert data.entropy == pytest.approx(math.log(PHI), abs=1e-9)
    assert sum(data.v_right) == pytest.approx(1.0)


def test_perron_full_shift():
    data = perron_data(build_edge_shift([[2]]))
    assert data.lambda_ == pytest.approx(2.0, abs=1e-12)
    assert data.v_right == (1.0,)


def test_perron_periodic_irreducible():
    # power iteration must still converge on a period-2 matrix
    data = perron_data(build_edge_shift([[0, 1], [1, 0]]))
    assert data.lambda_ == pytest.approx(1.0, abs=1e-9)
    assert data.entropy == pytest.approx(0.0, abs=1e-9)


def test_perron_rejects_reducible():
    with pytest.raises(ReducibleInput):
        perron_data(build_edge_shift([[1, 1], [0, 1]]))


# -- eventual-range data ----------------------------------------------------


def test_dimension_data_golden_is_full_rank():
    dim = dimension_data(build_edge_shift(GOLDEN))
    assert dim.d == 2
    assert dim.basis == ratmat.identity(2)
    assert dim.delta_restricted == ratmat.frac_matrix(GOLDEN)
    assert dim.delta_inverse == ratmat.frac_matrix([[0, 1], [1, -1]])
    # eigenvalues phi and -1/phi, so rho_minus = phi
    assert dim.rho_minus == pytest.approx(PHI, abs=1e-9)
    assert dim.char_poly == (1, -1, -1)


def test_dimension_data_rank_deficient():
    dim = dimension_data(build_edge_shift([[1, 1], [1, 1]]))
    assert dim.d == 1
    assert dim.basis == ((Fraction(1), Fraction(1)),)
    assert dim.delta_restricted == ((Fraction(2),),)
    assert dim.rho_minus == pytest.approx(0.5, abs=1e-12)


def test_dimension_data_nilpotent_raises():
    with pytest.raises(NilpotentMatrix):
        dimension_data(build_edge_shift([[0, 1], [0, 0]]))


def test_dimension_coords_and_membership():
    dim = dimension_data(build_edge_shift([[1, 1], [1, 1]]))
    assert dim.coords((2, 2)) == (Fraction(2),)
    assert dim.in_eventual_range((3, 3))
    assert not dim.in_eventual_range((1, 0))


def test_apply_delta_power_negative():
    dim = dimension_data(build_edge_shift(GOLDEN))
    v = (Fraction(1), Fraction(0))
    fwd = dim.apply_delta_power(v, 3)
    assert dim.apply_delta_power(fwd, -3) == v


def test_in_dimension_group():
    dim = dimension_data(build_edge_shift(GOLDEN))
    # integral vectors are in; a vector with odd denominator never clears
    assert dim.in_dimension_group((1, 1))
    assert not dim.in_dimension_group((Fraction(1, 3), 0))


# -- products and transposes ------------------------------------------------


def test_kronecker_matrix_and_edges():
    golden = build_edge_shift(GOLDEN)
    prod = kronecker_product(golden, golden)
    assert prod.k == 4
    assert prod.n_edges == 9
    assert prod.product_of == (golden, golden)
    # pair correspondence is a bijection respecting sources and targets
    seen = set()
    for (ea, eb), e in prod.pair_to_edge.items():
        assert prod.edge_to_pair[e] == (ea, eb)
        seen.add(e)
        sa, ta, _ = golden.edges[ea]
        sb, tb, _ = golden.edges[eb]
        s, t, _ = prod.edges[e]
        assert (s, t) == (sa * 2 + sb, ta * 2 + tb)
    assert seen == set(range(prod.n_edges))


def test_kronecker_word_counts_multiply():
    a = build_edge_shift(GOLDEN)
    b = build_edge_shift([[2]])
    prod = kronecker_product(a, b)
    for n in range(4):
        assert count_words(prod, n) == count_words(a, n) * count_words(b, n)


def test_transpose_bijection():
    shift = build_edge_shift([[1, 2], [1, 0]])
    tshift, bij = transpose_shift(shift)
    assert tshift.matrix == ((1, 1), (2, 0))
    assert sorted(bij) == list(range(shift.n_edges))
    for e, (s, t, c) in enumerate(shift.edges):
        assert tshift.edges[bij[e]] == (t, s, c)
