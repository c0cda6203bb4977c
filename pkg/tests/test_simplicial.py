import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhom.cyclotomic import CyclotomicInt, q_power, qbasic
from qhom.generators import random_coeff, random_qchain
from qhom.ncomplex import build_point_complex, homology_report, validate_ncomplex
from qhom.simplicial import (
    QChain,
    SemiSimplicialSet,
    SimplicialStructureError,
    border_matrix,
    boundary_model,
    cell_map_morphism,
    chain_border,
    chain_border_power,
    chain_from_json,
    chain_to_vector,
    face_chain,
    interval_model,
    iterated_faces_closed_form,
    iteration_rule_check,
    point_model,
    simplex_model,
    simplicial_from_json,
    simplicial_to_json,
    to_ncomplex,
    validate_simplicial,
    vector_to_chain,
)


def models():
    out = [("point", point_model(8)), ("interval", interval_model())]
    for k in range(1, 5):
        out.append((f"simplex{k}", simplex_model(k)))
        if k >= 2:
            out.append((f"boundary{k}", boundary_model(k)))
    return out


# -- structure ------------------------------------------------------------------


@pytest.mark.parametrize("name, x", models())
def test_models_satisfy_face_identity(name, x):
    assert validate_simplicial(x) == (True, None)


def test_simplex_2_shape():
    x = simplex_model(2)
    assert [x.count(n) for n in range(3)] == [3, 3, 1]
    assert x.faces[(2, "v012")] == ("v12", "v02", "v01")


def test_swapped_face_reports_the_violating_triple():
    x = simplex_model(2)
    faces = dict(x.faces)
    faces[(2, "v012")] = ("v02", "v12", "v01")
    bad = SemiSimplicialSet(x.cells, faces)
    ok, triple = validate_simplicial(bad)
    assert not ok
    i, j, cell = triple
    assert cell == "v012" and j <= i


@pytest.mark.parametrize(
    "cells, faces",
    [
        ({0: ["a"], 1: ["e"]}, {}),
        ({0: ["a"], 1: ["e"]}, {(1, "e"): ("a",)}),
        ({0: ["a"], 1: ["e"]}, {(1, "e"): ("a", "zz")}),
        ({0: ["a"], 1: ["a"]}, {(1, "a"): ("a", "a")}),
    ],
)
def test_malformed_tables_rejected(cells, faces):
    with pytest.raises(SimplicialStructureError):
        SemiSimplicialSet(cells, faces)


def test_restrict_requires_face_closure():
    x = simplex_model(2)
    sub = x.restrict({"v0", "v1", "v01"})
    assert sub.count(1) == 1
    with pytest.raises(SimplicialStructureError):
        x.restrict({"v01"})


# -- border ---------------------------------------------------------------------


@pytest.mark.parametrize("order", (2, 3, 5, 7))
@pytest.mark.parametrize("n", range(1, 7))
def test_point_border_is_multiplication(order, n):
    x = point_model(8)
    got = chain_border(x, order, QChain.cell(n, f"p{n}", order))
    assert got == QChain(n - 1, {f"p{n - 1}": qbasic(order, n + 1)})


def test_interval_border_at_order_3():
    x = interval_model()
    got = chain_border(x, 3, QChain.cell(1, "e", 3))
    assert got == QChain(0, {"v1": CyclotomicInt.one(3), "v0": q_power(3, 1)})


def test_degree_zero_border_vanishes():
    assert chain_border(interval_model(), 3, QChain.cell(0, "v0", 3)).is_zero()


@settings(max_examples=30)
@given(seed=st.integers(0, 10**6), order=st.sampled_from((3, 5)))
def test_border_is_linear(seed, order):
    rng = random.Random(seed)
    x = simplex_model(3)
    n = rng.randint(1, 3)
    a = random_coeff(rng, order)
    c1, c2 = random_qchain(rng, x, n, order), random_qchain(rng, x, n, order)
    lhs = chain_border(x, order, c1.scale(a) + c2)
    rhs = chain_border(x, order, c1).scale(a) + chain_border(x, order, c2)
    assert lhs == rhs


def test_vector_roundtrip():
    x = simplex_model(3)
    rng = random.Random(0)
    c = random_qchain(rng, x, 2, 5)
    assert vector_to_chain(x, 2, chain_to_vector(x, c, 5)) == c


def test_border_matrix_matches_chain_border():
    x = simplex_model(3)
    rng = random.Random(1)
    for n in range(1, 4):
        c = random_qchain(rng, x, n, 5)
        v = border_matrix(x, 5, n).apply(chain_to_vector(x, c, 5))
        assert vector_to_chain(x, n - 1, v) == chain_border(x, 5, c)


# -- iteration rule ---------------------------------------------------------------


def test_iteration_rule_k0():
    x = simplex_model(2)
    c = random_qchain(random.Random(2), x, 2, 5)
    assert iterated_faces_closed_form(x, 5, c, 0) == c
    assert iteration_rule_check(x, 5, c, 0)


def test_iteration_rule_simplex2_k2():
    x = simplex_model(2)
    c = QChain(2, {"v012": CyclotomicInt(5, [2, -1, 0, 3])})
    assert iteration_rule_check(x, 5, c, 2)
    # the closed form by hand: [2]! (d0 d0 + q d1 d0 + q^2 d1 d1) on the triangle
    two_faces = [
        (0, 0, "v2"), (0, 1, "v1"), (1, 1, "v0"),
    ]
    expected = QChain.zero(0)
    for i1, i2, vertex in two_faces:
        expected = expected + QChain(0, {vertex: q_power(5, i1 + i2)})
    expected = expected.scale(qbasic(5, 2) * c.coeffs["v012"])
    assert chain_border_power(x, 5, c, 2) == expected


@pytest.mark.parametrize("name, x", models())
@pytest.mark.parametrize("order", (2, 3, 5))
def test_border_power_order_vanishes(name, x, order):
    rng = random.Random(order)
    for n in range(order, min(x.top, 2 * order) + 1):
        c = random_qchain(rng, x, n, order)
        assert chain_border_power(x, order, c, order).is_zero()
        assert iteration_rule_check(x, order, c, order)


def test_iteration_rule_range():
    x = simplex_model(2)
    with pytest.raises(ValueError):
        iteration_rule_check(x, 3, QChain.cell(2, "v012", 3), 4)


def test_face_chain_merges():
    x = point_model(3)
    c = QChain(2, {"p2": CyclotomicInt.one(3)})
    assert face_chain(x, c, 1) == QChain(1, {"p1": CyclotomicInt.one(3)})


# -- complexes and homology -------------------------------------------------------


@pytest.mark.parametrize("order", (2, 3, 5, 7))
@pytest.mark.parametrize("name, x", models())
def test_to_ncomplex_is_nilpotent(order, name, x):
    c = to_ncomplex(x, order, min(x.top, 2 * order))
    assert validate_ncomplex(c) == (True, None)


def test_point_model_equals_point_complex():
    c = to_ncomplex(point_model(9), 5, 9)
    p = build_point_complex(5, 9)
    assert c.ranks == p.ranks and c.truncated
    assert all(c.border(d) == p.border(d) for d in range(10))


@pytest.mark.parametrize(
    "x, expected",
    [
        (interval_model(), [(1, 0)]),
        (simplex_model(2), [(1, 0)]),
        (simplex_model(3), [(1, 0)]),
        (boundary_model(2), [(1, 0), (1, 1)]),
        (boundary_model(3), [(1, 0), (1, 2)]),
    ],
)
def test_order_2_is_classical(x, expected):
    assert homology_report(to_ncomplex(x, 2, x.top)).nonzero() == expected


def test_cell_map_inclusion_is_chain_map():
    from qhom.ncomplex import check_chain_map

    x = interval_model()
    y = simplex_model(2)
    f = cell_map_morphism(x, y, {"v0": "v0", "v1": "v1", "e": "v01"}, 3, 1,
                          target=to_ncomplex(y, 3, 1))
    # e = <v1, v0> in the interval's face order, v01 has faces (v1, v0): compatible
    assert check_chain_map(f)


# -- JSON ---------------------------------------------------------------------------


def test_json_format_example():
    data = json.loads('{"cells":{"0":["v0","v1"],"1":["e"]},"faces":{"1":{"e":["v1","v0"]}}}')
    x = simplicial_from_json(data)
    assert x.cells == interval_model().cells and x.faces == interval_model().faces


@pytest.mark.parametrize("name, x", models())
def test_json_roundtrip(name, x):
    back = simplicial_from_json(json.loads(json.dumps(simplicial_to_json(x))))
    assert back.cells == x.cells and back.faces == x.faces and back.open_top == x.open_top


def test_json_errors():
    with pytest.raises(SimplicialStructureError):
        simplicial_from_json({"faces": {}})
    with pytest.raises(SimplicialStructureError):
        simplicial_from_json({"cells": {"x": ["a"]}})


def test_chain_json():
    c = chain_from_json({"degree": 1, "coeffs": {"e": "[1, 2]"}}, 3)
    assert c == QChain(1, {"e": CyclotomicInt(3, [1, 2])})
