import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhom.cyclotomic import CyclotomicInt, q_power, qbasic
from qhom.generators import random_matrix, random_morphism
from qhom.linalg import Matrix
from qhom.ncomplex import (
    GradedMorphism,
    GradedNComplex,
    HomotopyWitness,
    StructuralError,
    amplitude_homology,
    border_power,
    build_point_complex,
    build_scalar_complex,
    check_chain_map,
    check_homotopy,
    complex_from_json,
    complex_to_json,
    compose,
    hom_differential,
    homology_report,
    homotopy_sum,
    identity_morphism,
    induced_homology_map,
    validate_ncomplex,
    zero_complex,
    zero_morphism,
)
from qhom.simplicial import augmentation_morphism, boundary_model, point_model, simplex_model, to_ncomplex


def one_by_one(order, x):
    return Matrix.from_rows(order, [[x]])


# -- validation -----------------------------------------------------------------


def test_point_complex_is_valid():
    assert validate_ncomplex(build_point_complex(3, 8)) == (True, None)


def test_two_identities_fail_at_order_2():
    one = CyclotomicInt.one(2)
    c = GradedNComplex(2, 0, 2, (1, 1, 1), {1: one_by_one(2, one), 2: one_by_one(2, one)})
    assert validate_ncomplex(c) == (False, 2)


def test_single_map_is_vacuously_valid():
    c = GradedNComplex(2, 0, 1, (1, 1), {1: one_by_one(2, CyclotomicInt.one(2))})
    assert validate_ncomplex(c) == (True, None)


def test_scalar_complex_is_valid():
    assert validate_ncomplex(build_scalar_complex(5)) == (True, None)


def test_shape_mismatch_is_structural():
    with pytest.raises(StructuralError):
        GradedNComplex(3, 0, 1, (1, 2), {1: Matrix.identity(3, 1)})
    with pytest.raises(StructuralError):
        GradedNComplex(3, 0, 1, (1,), {})
    with pytest.raises(StructuralError):
        GradedNComplex(4, 0, 0, (1,), {})


# -- border powers --------------------------------------------------------------


def test_border_power_zero_is_identity():
    c = to_ncomplex(simplex_model(2), 3, 2)
    assert border_power(c, 0, 1) == Matrix.identity(3, 3)


def test_border_power_point_examples():
    assert border_power(build_point_complex(3, 4), 2, 2).is_zero()
    got = border_power(build_point_complex(5, 4), 2, 2)
    assert got == one_by_one(5, qbasic(5, 3) * qbasic(5, 2))


def test_border_power_leaving_window_is_zero():
    c = build_point_complex(5, 4)
    assert border_power(c, 3, 1).shape == (0, 1)


def test_border_power_range():
    with pytest.raises(ValueError):
        border_power(build_point_complex(3, 4), 4, 4)


# -- homology -------------------------------------------------------------------


def test_point_homology_order_3():
    r = homology_report(build_point_complex(3, 8))
    assert r.nonzero() == [(1, 0), (2, 1)]
    assert all(r.dim(m, n) == 1 for m, n in r.nonzero())


@pytest.mark.parametrize("order", (2, 3, 5, 7))
def test_point_homology_pattern(order):
    r = homology_report(build_point_complex(order, 2 * order))
    assert r.nonzero() == [(m, m - 1) for m in range(1, order)]


def test_unreliable_degrees_are_flagged():
    r = amplitude_homology(build_point_complex(5, 10), 1)
    assert {n for (m, n) in r.unreliable} == {7, 8, 9, 10}


def test_zero_complex_homology():
    r = homology_report(zero_complex(5, 0, 3))
    assert r.nonzero(reliable_only=False) == []


def test_scalar_complex_structure():
    c3 = build_scalar_complex(3)
    assert (c3.lo, c3.hi, c3.ranks) == (0, 1, (1, 1))
    assert c3.border(1) == one_by_one(3, qbasic(3, 2))
    c2 = build_scalar_complex(2)
    assert c2.ranks == (1,) and not c2.borders
    c7 = build_scalar_complex(7)
    assert len(c7.ranks) == 6 and len(c7.borders) == 5
    assert all(not c7.border(k)[0, 0].is_zero() for k in range(1, 6))


@pytest.mark.parametrize("order", (3, 5, 7))
def test_scalar_complex_homology_follows_unit_borders(order):
    # all borders are units, so ker border^m at n is everything exactly when n < m
    # and border^(N-m) reaches n exactly when n + N - m <= N - 2
    r = homology_report(build_scalar_complex(order))
    expected = [(m, n) for m in range(1, order) for n in range(order - 1) if n < m and n > m - 2]
    assert r.nonzero() == expected


def test_amplitude_range():
    with pytest.raises(ValueError):
        amplitude_homology(build_point_complex(3, 4), 3)


def test_report_json_and_table():
    r = homology_report(build_point_complex(3, 4))
    j = r.to_json()
    assert j["N"] == 3 and len(j["entries"]) == 10
    assert "?" in r.table()


# -- morphisms ------------------------------------------------------------------


def test_identity_is_chain_map_and_induces_identity():
    c = build_point_complex(5, 8)
    ident = identity_morphism(c)
    assert check_chain_map(ident)
    for m in range(1, 5):
        for n, mat in induced_homology_map(ident, m).items():
            assert mat == Matrix.identity(5, mat.nrows)


def test_zero_morphism_induces_zero():
    c = build_point_complex(3, 6)
    z = zero_morphism(c, c)
    for m in (1, 2):
        assert all(mat.is_zero() for mat in induced_homology_map(z, m).values())


def test_perturbed_chain_map_is_rejected():
    c = to_ncomplex(simplex_model(2), 3, 2)
    ident = identity_morphism(c)
    mats = dict(ident.matrices)
    rows = [list(r) for r in mats[1].rows]
    rows[0][0] = rows[0][0] + CyclotomicInt.one(3)
    mats[1] = Matrix.from_rows(3, rows)
    bad = GradedMorphism(c, c, 0, mats)
    assert not check_chain_map(bad)
    with pytest.raises(ValueError):
        induced_homology_map(bad, 1)


def test_chain_map_check_needs_degree_zero():
    c = build_point_complex(3, 3)
    with pytest.raises(ValueError):
        check_chain_map(zero_morphism(c, c, 2))


def test_augmentation_of_point_model_is_identity_on_homology():
    gamma = augmentation_morphism(point_model(10), 5, 10)
    for m in range(1, 5):
        for mat in induced_homology_map(gamma, m).values():
            assert mat == Matrix.identity(5, mat.nrows)


def test_compose_shifts_add():
    c = build_point_complex(3, 6)
    f = zero_morphism(c, c, 1)
    g = zero_morphism(c, c, -2)
    assert compose(g, f).shift == -1


def test_morphism_shape_checked():
    c = build_point_complex(3, 3)
    with pytest.raises(StructuralError):
        GradedMorphism(c, c, 0, {0: Matrix.identity(3, 2)})


# -- the hom differential -------------------------------------------------------


def test_hom_differential_of_zero():
    c = build_point_complex(5, 8)
    assert hom_differential(zero_morphism(c, c)).is_zero()


def test_hom_differential_of_identity_by_direct_summation():
    order = 5
    c = build_point_complex(order, 8)
    got = hom_differential(identity_morphism(c))
    assert got.shift == -(order - 1)
    for n in c.degrees():
        total = CyclotomicInt.zero(order)
        for i in range(order):
            total = total + q_power(order, i)
        # every summand is border^(N-1) at n, weighted by q^i
        expected = border_power(c, order - 1, n).scale(total)
        assert got.at(n) == expected


def test_hom_differential_of_homotopy_degree_map():
    order = 3
    c = to_ncomplex(simplex_model(3), order, 3)
    rng = random.Random(11)
    k = random_morphism(rng, c, c, order - 1)
    got = hom_differential(k)
    assert got.shift == 0
    for n in c.degrees():
        acc = Matrix.zeros(order, c.rank(n), c.rank(n))
        for i in range(order):
            j = order - i - 1
            term = border_power(c, i, n - j + order - 1) @ k.at(n - j) @ border_power(c, j, n)
            acc = acc + term.scale(q_power(order, i * order))
        assert got.at(n) == acc
    # with deg K = N - 1 the weights q^(iN) are all 1, so D(K) is the homotopy sum
    assert got == homotopy_sum(HomotopyWitness.constant(k))


@pytest.mark.parametrize("order", (2, 3, 5))
def test_hom_differential_power_survey(order, capsys):
    """Reports how often D^N vanishes on random morphisms; the identity is not claimed."""
    rng = random.Random(order)
    c = to_ncomplex(boundary_model(3), order, 2)
    vanished = 0
    trials = 50
    for _ in range(trials):
        f = random_morphism(rng, c, c, rng.randint(-1, 1))
        g = f
        for _ in range(order):
            g = hom_differential(g)
        vanished += g.is_zero()
    print(f"N={order}: D^N vanished on {vanished}/{trials} random morphisms")
    assert 0 <= vanished <= trials


# -- homotopies -----------------------------------------------------------------


def test_zero_witness():
    c = build_point_complex(3, 6)
    k = zero_morphism(c, c, 2)
    w = HomotopyWitness.constant(k)
    ident = identity_morphism(c)
    assert check_homotopy(w, ident, ident)
    assert not check_homotopy(w, ident, zero_morphism(c, c))


def test_witness_shape_rules():
    c = build_point_complex(3, 6)
    with pytest.raises(StructuralError):
        HomotopyWitness((zero_morphism(c, c, 2),) * 2)
    with pytest.raises(StructuralError):
        HomotopyWitness((zero_morphism(c, c, 1),) * 3)


def _complexes(order):
    return [
        to_ncomplex(simplex_model(2), order, 2),
        to_ncomplex(boundary_model(3), order, 2),
        build_point_complex(order, 2 * order),
    ]


@pytest.mark.parametrize("order", (2, 3, 5))
@settings(max_examples=15)
@given(seed=st.integers(0, 10**6))
def test_synthetic_witness_preserves_homology(order, seed):
    rng = random.Random(seed)
    c = rng.choice(_complexes(order))
    g = identity_morphism(c) if rng.random() < 0.5 else zero_morphism(c, c)
    w = HomotopyWitness.constant(random_morphism(rng, c, c, order - 1))
    f = g + homotopy_sum(w)
    assert check_chain_map(f)
    assert check_homotopy(w, f, g)
    for m in range(1, order):
        assert induced_homology_map(f, m) == induced_homology_map(g, m)


def test_distinct_components_do_not_give_chain_maps():
    # with K_0 != K_1 at N = 2 the sum is not a chain map, which is why the
    # synthetic witnesses above share one K
    order = 2
    c = to_ncomplex(simplex_model(2), order, 2)
    rng = random.Random(3)
    found = False
    for _ in range(20):
        w = HomotopyWitness(tuple(random_morphism(rng, c, c, 1) for _ in range(2)))
        if not check_chain_map(homotopy_sum(w)):
            found = True
            break
    assert found


# -- JSON -----------------------------------------------------------------------


@pytest.mark.parametrize("order", (2, 3, 5))
def test_json_roundtrip(order):
    c = to_ncomplex(simplex_model(3), order, 3)
    back = complex_from_json(complex_to_json(c))
    assert back.ranks == c.ranks
    assert all(back.border(d) == c.border(d) for d in c.degrees())
    assert homology_report(back) == homology_report(c)


def test_json_errors():
    with pytest.raises(StructuralError):
        complex_from_json({"N": 3})
    with pytest.raises(StructuralError):
        complex_from_json({"N": 4, "lo": 0, "hi": 0, "ranks": [1]})
    with pytest.raises(StructuralError):
        complex_from_json({"N": 3, "lo": 0, "hi": 1, "ranks": [1, 1], "borders": {"1": [["[1, 0]"], ["[1, 0]"]]}})
