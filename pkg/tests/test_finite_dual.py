import pytest

from algebroid import finite_dual as fd
from algebroid.caps import DegreeCapError
from algebroid.differentiation import differentiate
from algebroid.examples import malgrange
from algebroid.finite_dual import (
    FiniteCocomm,
    FiniteDualError,
    LiftedMorphism,
    LiftError,
    double_dual_failures,
    dual_tables,
    finite_dual,
    group_algebra,
    lift_lr_morphism,
)
from algebroid.lie_rinehart import LRMorphism, identity_morphism

from oracles import cyclic_pairing, cyclic_table


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_group_algebra_tables(n):
    U = group_algebra(n)
    assert U.check().passed
    table = cyclic_table(n)
    for (i, j), k in table.items():
        assert U.mult[(i, j)] == U.basis_vector(k)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dual_of_cyclic_group_algebra(n):
    D = finite_dual(group_algebra(n))
    assert D.report.passed, D.report.table()
    for (label, g), val in D.pairing_table(2).items():
        fs = [int(x[1:]) for x in label.split("*")] if label != "1" else []
        assert val.constant() == cyclic_pairing(n, fs, int(g[1:]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dual_tables_are_functions_on_the_group(n):
    D = finite_dual(group_algebra(n))
    mult, unit, delta, counit, anti = dual_tables(D)
    # pointwise product of indicators, convolution coproduct, evaluation at 0
    for (i, j), v in mult.items():
        assert v == [1 if (k == i == j) else 0 for k in range(n)]
    assert unit == [1] * n
    table = cyclic_table(n)
    for k in range(n):
        assert delta[k] == {(i, j): 1 for (i, j), m in table.items() if m == k}
    assert counit == [1] + [0] * (n - 1)
    assert [row.index(1) for row in anti] == [(-k) % n for k in range(n)]


def test_dual_of_trivial_group_is_trivial():
    D = finite_dual(group_algebra(1))
    H = D.hopf.total
    assert H.reduce(D.f(0).terms) == H.one().terms
    assert D.report.passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_double_dual(n):
    assert double_dual_failures(group_algebra(n)) == []


def test_inconsistent_tables_are_refused():
    good = group_algebra(2)
    bad = FiniteCocomm(good.base, good.names, good.mult, good.unit, good.delta, [1, 0], good.translation)
    assert not bad.check().passed
    with pytest.raises(FiniteDualError):
        finite_dual(bad)


def test_rank_cap():
    with pytest.raises(FiniteDualError):
        group_algebra(fd.MAX_RANK + 1)
    with pytest.raises(FiniteDualError):
        group_algebra(0)


def _identity_lift(r=2, degree=2):
    H = malgrange(r)
    L = differentiate(H)
    return H, L, lift_lr_morphism(L, H, identity_morphism(L), degree_cap=degree)


def test_lift_of_identity_has_no_violations():
    H, L, rep = _identity_lift()
    assert rep.passed
    assert rep.checked > 0
    sigma = rep.lifted
    # sigma(e_i) = -h(e_i) on generators of H
    for i, d in enumerate(L.derivations):
        for g in H.total.variables:
            assert sigma.word_value((i,), H.total.var(g)) == -d(H.total.var(g))


class _FlippedLift(LiftedMorphism):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.generators[0] = -self.generators[0]


def test_wrong_generator_sign_breaks_the_lift(monkeypatch):
    monkeypatch.setattr(fd, "LiftedMorphism", _FlippedLift)
    H = malgrange(1)
    L = differentiate(H)
    rep = lift_lr_morphism(L, H, identity_morphism(L), degree_cap=2)
    assert not rep.passed
    assert {v[0] for v in rep.violations} & {"unit", "product"}


def test_lift_input_checks():
    H = malgrange(1)
    L = differentiate(H)
    with pytest.raises(LiftError):
        lift_lr_morphism(L, malgrange(1), identity_morphism(L))
    Lt = differentiate(H, "t")
    with pytest.raises(LiftError):
        lift_lr_morphism(Lt, H, identity_morphism(Lt))
    swap = LRMorphism(L, L, [L.e(1), L.e(0)])
    with pytest.raises(LiftError):
        lift_lr_morphism(L, H, swap)
    with pytest.raises(DegreeCapError):
        lift_lr_morphism(L, H, identity_morphism(L), degree_cap=9)
