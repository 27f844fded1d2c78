import random
from itertools import combinations
from math import comb, factorial

import pytest

from src.circuits import enumerate_circuits
from src.citest import SignMatrix, is_complete_intersection
from src.errors import DomainError
from src.exactmat import IntMatrix, rank
from src.generators import (bound_eval, bound_threshold, codim3_bound, convex_polygon, curve_ci_basis,
                            cyclic_by_codimension, cyclic_polytope, decagon_quadruples, decagon_sign_matrix,
                            index_set_coverage, monomial_curve, quadruple_circuit, random_configuration,
                            random_curve, random_sign_matrix)
from src.utils.geo import in_convex_position


def test_monomial_curve():
    assert monomial_curve([0, 1, 2, 3]).A.to_rows() == [[1, 1, 1, 1], [0, 1, 2, 3]]
    assert monomial_curve([2, 3, 5]).A.to_rows() == [[1, 1, 1], [0, 1, 3]]


@pytest.mark.parametrize("a", [[0, 2, 4], [0, 3, 1], [0, 1]])
def test_monomial_curve_rejects(a):
    with pytest.raises(DomainError):
        monomial_curve(a)


def test_curve_ci_basis_examples():
    assert curve_ci_basis([0, 1, 2, 3]).columns() == [(1, -2, 1, 0), (1, 0, -3, 2)]
    assert curve_ci_basis([0, 1, 3]).columns() == [(2, -3, 1)]


def test_curve_ci_basis_random():
    rng = random.Random(51)
    for _ in range(100):
        a = random_curve(rng, n_max=10, a_max=50)
        cfg = monomial_curve(a)
        B = curve_ci_basis(a)
        assert cfg.A.matmul(B).is_zero()
        assert rank(B) == len(a) - 2
        assert is_complete_intersection(B)
        for col in B.columns():
            assert any(x > 0 for x in col) and any(x < 0 for x in col)


def test_cyclic_polytope():
    assert cyclic_polytope(2, t=[1, 2, 3, 4]).A.to_rows() == [[1, 1, 1, 1], [1, 2, 3, 4]]
    cfg = cyclic_polytope(3, n=6)
    assert (cfg.m, cfg.n, cfg.r) == (3, 6, 3)
    assert cyclic_by_codimension(3, 14).m == 11


@pytest.mark.parametrize("kwargs", [
    {"m": 2, "t": [1, 3, 2]},
    {"m": 2, "t": [0, 1, 2]},
    {"m": 3, "t": [1, 2, 3]},
    {"m": 2},
])
def test_cyclic_polytope_rejects(kwargs):
    with pytest.raises(DomainError):
        cyclic_polytope(**kwargs)


def test_convex_polygon():
    assert convex_polygon(4).A.columns() == [(1, 0, 0), (1, 1, 1), (1, 2, 4), (1, 3, 9)]
    assert convex_polygon(3).r == 0
    with pytest.raises(DomainError):
        convex_polygon(2)


def test_in_convex_position():
    assert in_convex_position([(0, 0), (1, 1), (2, 4), (3, 9)])
    assert not in_convex_position([(0, 0), (2, 0), (1, 1), (1, 0)])
    assert not in_convex_position([(0, 0), (1, 1), (2, 2)])


def test_quadruple_circuit(decagon):
    assert quadruple_circuit(decagon, 0, 1, 2, 3).vector == (1, -3, 3, -1, 0, 0, 0, 0, 0, 0)
    square = convex_polygon(4)
    assert quadruple_circuit(square, 0, 1, 2, 3).vector == enumerate_circuits(square)[0].vector
    with pytest.raises(DomainError):
        quadruple_circuit(decagon, 0, 2, 1, 3)
    with pytest.raises(DomainError):
        quadruple_circuit(decagon, 0, 1, 2, 10)


def test_every_quadruple_alternates():
    for n in range(4, 13):
        cfg = convex_polygon(n)
        for quad in combinations(range(n), 4):
            c = quadruple_circuit(cfg, *quad)
            assert [c.vector[i] > 0 for i in quad] == [True, False, True, False]


def test_polygon_circuits_have_two_of_each_sign():
    for c in enumerate_circuits(convex_polygon(7)):
        assert len(c.positive_support) >= 2 and len(c.negative_support) >= 2


def test_decagon_sign_matrix():
    S = decagon_sign_matrix()
    assert (S.n, S.r) == (10, 7)
    assert [i for i in range(10) if S.column(0)[i]] == [0, 1, 2, 3]
    assert [x for x in S.column(0) if x] == [1, -1, 1, -1]
    assert [i for i in range(10) if S.column(3)[i]] == [4, 5, 6, 9]
    assert [x for x in S.column(3) if x] == [1, -1, 1, -1]
    assert is_complete_intersection(S)


def test_decagon_quadruples_reproduce_the_sign_matrix(decagon):
    columns = [quadruple_circuit(decagon, *q).vector for q in decagon_quadruples()]
    B = IntMatrix.from_columns(columns)
    assert rank(B) == 7
    ours = sorted(SignMatrix.from_columns(columns, 10).column(j) for j in range(7))
    S = decagon_sign_matrix()
    assert ours == sorted(S.column(j) for j in range(7))
    assert is_complete_intersection(B)


def test_bound_eval():
    at22, at21 = bound_eval(2, 22), bound_eval(2, 21)
    assert (at22.lhs, at22.rhs, at22.holds) == (7315, 7220, True)
    assert (at21.lhs, at21.rhs, at21.holds) == (5985, 6156, False)
    with pytest.raises(DomainError):
        bound_eval(2, 3)


def test_bound_eval_matches_factorials():
    for d in range(1, 5):
        for n in range(d + 2, 40):
            ev = bound_eval(d, n)
            assert ev.lhs == factorial(n) // (factorial(d + 2) * factorial(n - d - 2))
            assert ev.rhs == 2 * (n - d - 1) * factorial(n - 2) // (factorial(d) * factorial(n - 2 - d))


def test_bound_threshold():
    assert bound_threshold(2) == 22
    for d in (1, 2, 3):
        t = bound_threshold(d)
        assert all(bound_eval(d, n).holds for n in range(t, t + 100))
        assert t == d + 2 or not bound_eval(d, t - 1).holds


def test_codim3_bound():
    assert [codim3_bound(r) for r in (3, 4, 5)] == [14, 26, 42]
    with pytest.raises(DomainError):
        codim3_bound(2)


def test_index_set_coverage():
    S = decagon_sign_matrix()
    assert index_set_coverage(S, 3) == (comb(10, 4), comb(10, 4))
    mixed = SignMatrix.from_rows([[1, 1, 1], [-1, -1, -1], [0, 0, 0], [0, 0, 0]])
    covered, total = index_set_coverage(mixed, 1)
    assert covered < total


def test_random_helpers():
    rng = random.Random(52)
    for _ in range(50):
        cfg = random_configuration(rng, n_max=8, r_choices=(1, 2))
        assert cfg.r in (1, 2) and cfg.n <= 8
        a = random_curve(rng)
        assert a[0] == 0 and a == sorted(set(a))
    S = random_sign_matrix(rng, 5, 3)
    assert (S.n, S.r) == (5, 3)
