from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from algebroid.symbolic_core import (
    AlgebraMap,
    MapNotWellDefined,
    ParseError,
    PresentationError,
    PresentedAlgebra,
    UnknownVariableError,
)
from algebroid.symbolic_core import linalg
from algebroid.symbolic_core import poly as P
from algebroid.symbolic_core.groebner import Basis
from algebroid.symbolic_core.smith import (
    UnsupportedBaseError,
    invariant_factors,
    left_inverse,
    matmul,
    right_inverse,
    smith_normal_form,
)

from oracles import X, determinantal_invariant_factors, groebner_contains, to_sympy

R = PresentedAlgebra("R", ["a", "b", "c"])
SA, SB, SC = sp.symbols("a b c")

monomials = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)
polys = st.dictionaries(monomials, coefficients, max_size=5).map(lambda d: {m: c for m, c in d.items() if c})


def as_sympy(p):
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * SA**m[0] * SB**m[1] * SC**m[2] for m, c in p.items()))


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_ring_operations_agree_with_sympy(p, q):
    assert as_sympy(P.add(p, q)) == sp.expand(as_sympy(p) + as_sympy(q))
    assert as_sympy(P.sub(p, q)) == sp.expand(as_sympy(p) - as_sympy(q))
    assert as_sympy(P.mul(p, q)) == sp.expand(as_sympy(p) * as_sympy(q))


@settings(max_examples=40, deadline=None)
@given(polys)
def test_derivative_agrees_with_sympy(p):
    for i, s in enumerate((SA, SB, SC)):
        assert as_sympy(P.derivative(p, i)) == sp.expand(sp.diff(as_sympy(p), s))


@settings(max_examples=40, deadline=None)
@given(polys)
def test_format_parse_round_trip(p):
    e = R.element(p)
    assert R.parse(str(e)) == e


def test_parser_features():
    assert R.parse("-(a - b)/2") == R.parse("b/2 - a/2")
    assert R.parse("a^3") == R.parse("a*a*a")
    assert R.parse("2*a*b + 0") == R.parse("b*a*2")


def test_parser_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        R.parse("a + * b")
    assert info.value.position == 4
    with pytest.raises(UnknownVariableError):
        R.parse("a + z")
    with pytest.raises(ParseError):
        R.parse("a / b")


def test_quotient_normal_forms_and_inverses():
    Q = PresentedAlgebra("Q", ["u", "uinv", "w"], ["w^2 - u"], [("u", "uinv")])
    assert Q.parse("u*uinv") == Q.one()
    assert Q.parse("w^4") == Q.parse("u^2")
    assert Q.inverse(Q.parse("3*u^2")) == Q.parse("uinv^2/3")
    assert Q.inverse(Q.parse("w")) is None


def test_unit_ideal_is_rejected():
    with pytest.raises(PresentationError):
        PresentedAlgebra("bad", ["a"], ["a", "a - 1"])


def test_algebra_map_well_definedness():
    Q = PresentedAlgebra("Q", ["w"], ["w^2"])
    with pytest.raises(MapNotWellDefined):
        AlgebraMap(Q, R, {"w": "a"})
    f = AlgebraMap(Q, Q, {"w": "-w"})
    assert f("1 + w") == Q.parse("1 - w")


small_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1)), st.integers(-3, 3), min_size=1, max_size=3
).map(lambda d: {m: Fraction(c) for m, c in d.items() if c})


@settings(max_examples=25, deadline=None)
@given(st.lists(small_polys.filter(bool), min_size=1, max_size=3), small_polys)
def test_ideal_membership_agrees_with_sympy(gens, f):
    B = Basis(gens, P.MonomialOrder(3))
    sym = [as_sympy(g) for g in gens]
    assert B.contains(f) == groebner_contains(sym, (SA, SB, SC), as_sympy(f))
    combo = P.add(P.mul(gens[0], f), P.mul(gens[-1], {(1, 0, 0): Fraction(2)}))
    assert B.contains(combo)


def test_block_order_eliminates_left_block():
    order = P.MonomialOrder(3, [(0, 1), (1, 3)])
    # any power of the first variable beats the second block
    assert order.key((1, 0, 0)) > order.key((0, 5, 5))


matrices = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4)


@settings(max_examples=50, deadline=None)
@given(matrices)
def test_rank_and_nullspace_agree_with_sympy(rows):
    M = sp.Matrix(rows)
    assert linalg.rank(rows, 3) == M.rank()
    null = linalg.nullspace(rows, 3)
    assert len(null) == 3 - M.rank()
    for v in null:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


def test_solve_and_inverse():
    rows = [[2, 1], [1, 3]]
    inv = linalg.inverse(rows)
    assert linalg.matmul(rows, inv) == [[1, 0], [0, 1]]
    assert linalg.solve(rows, [3, 4]) == [1, 1]
    assert linalg.solve([[1, 1], [2, 2]], [1, 3]) is None
    with pytest.raises(ValueError):
        linalg.inverse([[1, 2], [2, 4]])


# Smith normal form over Q[X]

QX = PresentedAlgebra("A", ["X"])
entries = st.lists(st.integers(-2, 2), min_size=1, max_size=3).map(lambda cs: QX.element({(i,): Fraction(c) for i, c in enumerate(cs) if c}))


def _is_diagonal(D):
    return all(not D[i][j] for i in range(len(D)) for j in range(len(D[0])) if i != j)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_smith_form_matches_determinantal_divisors(m, n, data):
    M = [[data.draw(entries) for _ in range(n)] for _ in range(m)]
    D, Pm, Qm = smith_normal_form(M, QX, m, n)
    assert matmul(QX, matmul(QX, Pm, M), Qm) == D
    assert _is_diagonal(D)
    got = [to_sympy(d) for d in invariant_factors(D)]
    want = determinantal_invariant_factors([[to_sympy(c) for c in row] for row in M])
    assert [sp.expand(g) for g in got] == [sp.expand(w) for w in want]


def test_smith_form_examples():
    x = QX.var("X")
    D, _, _ = smith_normal_form([[x, QX.zero()], [QX.zero(), x + 1]], QX)
    assert [str(d) for d in invariant_factors(D)] == ["1", "X^2 + X"]
    one, zero = QX.one(), QX.zero()
    M = [[one, zero], [zero, one], [zero, zero]]
    R = left_inverse(M, QX, 3, 2)
    assert matmul(QX, R, M) == [[one, zero], [zero, one]]
    assert left_inverse([[x]], QX, 1, 1) is None
    S = right_inverse([[one, zero, x]], QX, 1, 3)
    assert matmul(QX, [[one, zero, x]], S) == [[one]]


def test_smith_rejects_other_bases():
    with pytest.raises(UnsupportedBaseError):
        smith_normal_form([[1]], PresentedAlgebra("B", ["X", "Y"]))
