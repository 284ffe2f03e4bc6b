from pathlib import Path

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from algebroid.differentiation import (
    EpsDerivation,
    HopfMorphism,
    MorphismError,
    NonFreeError,
    bracket,
    comodule_split,
    complete_derivation,
    convolution,
    differentiate,
    flavor_bridge,
    isotropy,
    kaehler_module,
    l_on_morphism,
    pullback,
    split_tau,
)
from algebroid.examples import gl2, gl2_plane, laurent_group, malgrange, pair_groupoid, polynomial_base, split_algebroid
from algebroid.hopf_algebroid import parse_presentation
from algebroid.lie_rinehart import check_lie_rinehart, check_lr_morphism
from algebroid.symbolic_core import linalg

from oracles import X, commutator, jet_bracket, matrix_unit, to_sympy

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("r", range(1, 6))
def test_jet_algebroid_has_free_rank_r_plus_one(r):
    L = differentiate(malgrange(r))
    assert L.rank == r + 1
    assert list(L.basis) == [f"dy{n}" for n in range(r + 1)]
    assert check_lie_rinehart(L).passed


poly = st.lists(st.integers(-3, 3), min_size=1, max_size=3)


@settings(max_examples=30, deadline=None)
@given(st.lists(poly, min_size=4, max_size=4), st.lists(poly, min_size=4, max_size=4))
def test_bracket_matches_binomial_closed_form(a, b):
    L = differentiate(malgrange(3))
    A = L.base
    u = tuple(A.element({(i,): c for i, c in enumerate(cs) if c}) for cs in a)
    v = tuple(A.element({(i,): c for i, c in enumerate(cs) if c}) for cs in b)
    sa = [sum(c * X**i for i, c in enumerate(cs)) for cs in a]
    sb = [sum(c * X**i for i, c in enumerate(cs)) for cs in b]
    assert [to_sympy(c) for c in L.bracket(u, v)] == jet_bracket(sa, sb)


def test_low_order_brackets_of_basis_elements():
    L = differentiate(malgrange(2))
    # [dy1, dy2]_2 = a1 b2 - b1 a2 for a = e1, b = e2
    assert L.format(L.structure[(1, 2)]) == "(1)*dy2"
    assert not any(L.structure[(0, 1)])


def test_anchor_is_differentiation_along_the_first_coordinate():
    L = differentiate(malgrange(3))
    assert str(L.apply_anchor(L.e(0), "X^3")) == "3*X^2"
    assert not L.apply_anchor(L.e(2), "X^3")


def test_eps_derivation_leibniz_rule():
    H = malgrange(2)
    L = differentiate(H)
    d = L.derivations[2]
    u, v = H.total.parse("y2*y1 + x0"), H.total.parse("y2 + y0^2")
    lhs = d(u * v)
    rhs = H.eps(u) * d(v) + d(u) * H.eps(v)
    assert lhs == rhs
    assert not d.violations()


def test_convolution_gives_the_bracket():
    H = malgrange(2)
    L = differentiate(H)
    d1, d2 = L.derivations[1], L.derivations[2]
    b = bracket(H, d1, d2)
    for v in H.total.variables:
        assert b(H.total.var(v)) == convolution(H, d1, d2, v) - convolution(H, d2, d1, v)


def test_target_flavor_is_isomorphic():
    H = malgrange(3)
    Ls, Lt = differentiate(H, "s"), differentiate(H, "t")
    assert Ls.rank == Lt.rank
    rows = [[c.constant() for c in row] for row in flavor_bridge(Ls, Lt)] if all(
        c.is_constant() for row in flavor_bridge(Ls, Lt) for c in row
    ) else None
    if rows is not None:
        assert linalg.rank(rows, Lt.rank) == Lt.rank


def test_pair_groupoid_gives_the_tangent_algebroid():
    L = differentiate(pair_groupoid(2))
    assert L.rank == 2
    assert [str(L.anchor[e][x]) for e in L.basis for x in L.base.variables] == ["1", "0", "0", "1"]
    assert not any(c for v in L.structure.values() for c in v)


def test_non_free_constraints_are_reported():
    H = parse_presentation((DATA / "ga_degenerate.txt").read_text())
    assert H.check_axioms().passed
    with pytest.raises(NonFreeError):
        differentiate(H)
    with pytest.raises(NonFreeError):
        kaehler_module(H)


@pytest.mark.parametrize("r", range(1, 5))
def test_kaehler_module_represents_derivations(r):
    H = malgrange(r)
    Q = kaehler_module(H)
    assert Q.rank == r + 1
    L = differentiate(H)
    for d in L.derivations:
        assert Q.roundtrip_failures(d) == []
    # pi kills the image of s and the square of the augmentation ideal
    assert not any(Q.pi(H.s("X^2")))
    assert not any(Q.pi(H.total.parse("(y1 - 1)*(y1inv - 1)")))


def test_psi_is_a_coaction_lift_of_pi():
    H = malgrange(2)
    Q = kaehler_module(H)
    # eps applied to the left leg of psi recovers pi
    for v in H.total.variables:
        psi = Q.psi(v)
        assert tuple(H.base.element(H.counit.apply_raw(c.terms)) for c in psi) == Q.pi(v)


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("x", [0, 1, 2])
def test_isotropy_rank_and_transport(r, x):
    iso = isotropy(malgrange(r), {"X": x})
    assert iso.rank == r
    assert iso.nabla_ok


def test_quotient_is_a_sub_lie_rinehart_algebra():
    H4, Hq = malgrange(4), malgrange(4, quotient=True)
    proj = HopfMorphism(H4, Hq, {v: v for v in H4.total.variables}, name="p")
    assert proj.check().passed
    f = l_on_morphism(proj)
    assert check_lr_morphism(f).passed
    assert f.as_lists() == [["1", "0", "0", "0", "0"], ["0", "1", "0", "0", "0"]]


def test_non_morphisms_are_refused():
    H = malgrange(1)
    s_eps = HopfMorphism(H, H, {v: str(H.s(H.counit.images[v])) for v in H.total.variables})
    rep = s_eps.check()
    assert not rep.passed
    assert not rep["target"].passed
    with pytest.raises(MorphismError):
        l_on_morphism(s_eps)


def test_pullback_along_inclusion_drops_higher_jets():
    K, H = malgrange(1), malgrange(2)
    inc = HopfMorphism(K, H, {v: v for v in K.total.variables})
    LH = differentiate(H)
    d = pullback(inc, LH.derivations[2])
    assert all(not c for c in d.images.values())


# GL2 acting on the plane


def _unit_derivations():
    B = gl2()
    units = {}
    for i in (1, 2):
        for j in (1, 2):
            vals = {f"Z{a}{b}": M for (a, b), M in zip(((1, 1), (1, 2), (2, 1), (2, 2)), sum(matrix_unit(i, j), []))}
            units[(i, j)] = complete_derivation(B, vals)
    return B, units


def test_gl2_commutators_are_matrix_commutators():
    B, units = _unit_derivations()

    def M(d):
        return [[d.images[f"Z{a}{b}"].constant() for b in (1, 2)] for a in (1, 2)]

    for k1, d1 in units.items():
        for k2, d2 in units.items():
            assert M(bracket(B, d1, d2)) == commutator(matrix_unit(*k1), matrix_unit(*k2))


def test_gl2_determinant_trace_identity():
    B, units = _unit_derivations()
    det = B.total.parse("Z11*Z22 - Z12*Z21")
    for d in units.values():
        assert d(det) == d.images["Z11"] + d.images["Z22"]
    # the inverse determinant gets the opposite trace
    for d in units.values():
        assert d.images["dinv"] == -(d.images["Z11"] + d.images["Z22"])


def test_gl2_action_factors_through_tau():
    B, units = _unit_derivations()
    split = gl2_plane()
    A = split.base
    X1, X2 = A.var("X1"), A.var("X2")
    for (i, j), d in units.items():
        tau = split_tau(split, B, d)
        M = matrix_unit(i, j)
        assert tau(split.source.images["X1"]) == X1 * M[0][0] + X2 * M[0][1]
        assert tau(split.source.images["X2"]) == X1 * M[1][0] + X2 * M[1][1]
        assert not tau(split.target.images["X1"])


def test_comodule_split_rejects_non_coactions():
    A = polynomial_base(("X1", "X2"))
    with pytest.raises(MorphismError):
        comodule_split(gl2(), A, {"X1": "Z11*X1 + Z21*X2", "X2": "Z12*X1 + Z22*X2"})


def test_split_algebroid_lie_rinehart():
    H = split_algebroid(laurent_group())
    L = differentiate(H)
    assert list(L.basis) == ["dg", "dXt"]
    assert not any(L.anchor["dg"].values())
    assert str(L.anchor["dXt"]["X"]) == "1"
