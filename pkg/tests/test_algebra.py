import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quiverhh.algebra import (
    algebra_from_text,
    build_graded_algebra,
    parse_presentation,
    presentation_from_dict,
    serialize_presentation,
)
from quiverhh.corpus import NAMES, corpus_presentation, corpus_text
from quiverhh.errors import PresentationError

from oracles import monomial_basis_paths


def doc(vertices, arrows, relations, truncate):
    return {
        "vertices": vertices,
        "arrows": [{"name": n, "from": s, "to": t} for n, s, t in arrows],
        "relations": [{"terms": [{"coef": c, "path": p} for c, p in rel]} for rel in relations],
        "truncate": truncate,
    }


DUAL_NUMBERS = doc(["1"], [("a", "1", "1")], [[("1", ["a", "a"])]], 2)


def test_dual_numbers():
    alg = build_graded_algebra(presentation_from_dict(DUAL_NUMBERS))
    assert alg.degree_dims() == [1, 1]
    assert alg.dim == 2
    a = alg.element("a")
    assert alg.multiply(a, a) == {}


def test_three_vertex_basis(load):
    alg = load("three_vertex")
    assert alg.dim == 9
    assert sorted(b.label for b in alg.basis) == sorted(
        ["e1", "e2", "e3", "alpha", "beta", "gamma", "delta", "delta*alpha", "alpha*delta"]
    )


def test_buchweitz_dims(load):
    alg = load("buchweitz_q2")
    assert alg.degree_dims() == [1, 2, 1]
    assert alg.dim == 4


def test_buchweitz_products(load):
    alg = load("buchweitz_q2")
    X, Y = alg.element("X"), alg.element("Y")
    xy = alg.multiply(X, Y)
    yx = alg.multiply(Y, X)
    assert len(xy) == 1
    (k, c), = xy.items()
    assert yx == {k: c / 2}


def test_block_dims(load):
    assert load("truncated_poly2").block_dim(1, 1, 1) == 1
    alg = load("three_vertex")
    assert alg.block_dim(1, 2, 1) == 1
    assert alg.block_dim(3, 1, 2) == 0
    with pytest.raises(IndexError):
        alg.block_dim(0, 1, 1)
    with pytest.raises(IndexError):
        alg.block_dim(1, 4, 1)


def test_idempotents_orthogonal(corpus_alg):
    alg = corpus_alg
    for i, ei in enumerate(alg.idempotents):
        for j, ej in enumerate(alg.idempotents):
            expect = {ei: Fraction(1)} if i == j else {}
            assert alg.multiply({ei: Fraction(1)}, {ej: Fraction(1)}) == expect


def test_unit_and_associativity(corpus_alg):
    alg = corpus_alg
    one = {e: Fraction(1) for e in alg.idempotents}
    for a in range(alg.dim):
        x = {a: Fraction(1)}
        assert alg.multiply(one, x) == x
        assert alg.multiply(x, one) == x
    for a in range(alg.dim):
        for b in range(alg.dim):
            ab = alg.multiply({a: 1}, {b: 1})
            for c in range(alg.dim):
                left = alg.multiply(ab, {c: 1})
                right = alg.multiply({a: 1}, alg.multiply({b: 1}, {c: 1}))
                assert left == right


def test_products_respect_grading(corpus_alg):
    alg = corpus_alg
    for (a, b), prod in alg.products.items():
        for c, _ in prod:
            A, B, C = alg.basis[a], alg.basis[b], alg.basis[c]
            assert C.degree == A.degree + B.degree
            assert (C.source, C.target) == (B.source, A.target)


@pytest.mark.parametrize("name", ["three_vertex", "two_cycle_radsq", "hereditary_a2", "truncated_poly3"])
def test_monomial_basis_matches_path_enumeration(load, name):
    alg = load(name)
    paths = monomial_basis_paths(alg.presentation)
    labels = sorted(b.label for b in alg.basis if b.degree > 0)
    assert labels == sorted("*".join(p) for p in paths)


def test_relation_order_irrelevant():
    d = json.loads(corpus_text("three_vertex"))
    base = algebra_from_text(json.dumps(d))
    d["relations"].reverse()
    other = algebra_from_text(json.dumps(d))
    assert base.degree_dims() == other.degree_dims()
    assert [b.label for b in base.basis] == [b.label for b in other.basis]


@pytest.mark.parametrize("name", NAMES)
def test_round_trip(name):
    pres = corpus_presentation(name)
    again = parse_presentation(serialize_presentation(pres))
    assert again == pres
    assert serialize_presentation(again) == serialize_presentation(pres)


def test_syntax_error_has_position():
    with pytest.raises(PresentationError) as err:
        parse_presentation('{"vertices": ["1"],\n  "arrows": [}')
    assert err.value.position == (2, 14)
    assert "line 2" in str(err.value)


def test_non_parallel_relation():
    bad = doc(["1", "2"], [("a", "1", "2"), ("b", "2", "2"), ("c", "2", "1")],
              [[("1", ["b", "a"]), ("1", ["b", "b"])]], 3)
    with pytest.raises(PresentationError, match="parallel"):
        presentation_from_dict(bad)


def test_short_relation():
    with pytest.raises(PresentationError, match="length"):
        presentation_from_dict(doc(["1"], [("a", "1", "1")], [[("1", ["a"])]], 3))


def test_unknown_arrow_and_vertex():
    with pytest.raises(PresentationError):
        presentation_from_dict(doc(["1"], [("a", "1", "1")], [[("1", ["a", "z"])]], 3))
    with pytest.raises(PresentationError):
        presentation_from_dict(doc(["1"], [("a", "1", "9")], [], 3))


def test_non_composable_relation():
    bad = doc(["1", "2"], [("a", "1", "2"), ("b", "1", "2")], [[("1", ["b", "a"])]], 3)
    with pytest.raises(PresentationError):
        presentation_from_dict(bad)


def test_zero_relation_and_truncation():
    with pytest.raises(PresentationError):
        presentation_from_dict(doc(["1"], [("a", "1", "1")], [[("1", ["a", "a"]), ("-1", ["a", "a"])]], 3))
    with pytest.raises(PresentationError):
        presentation_from_dict(doc(["1"], [("a", "1", "1")], [], 1))


def test_bad_coefficient():
    with pytest.raises(PresentationError):
        presentation_from_dict(doc(["1"], [("a", "1", "1")], [[("one", ["a", "a"])]], 3))


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(9))))
def test_relabel_preserves_structure(perm):
    from conftest import algebra
    alg = algebra("three_vertex")
    other = alg.relabel(perm)
    assert other.degree_dims() == alg.degree_dims()
    for a in range(alg.dim):
        for b in range(alg.dim):
            mapped = {perm[c]: coef for c, coef in alg.mul_basis(a, b)}
            assert dict(other.mul_basis(perm[a], perm[b])) == mapped
