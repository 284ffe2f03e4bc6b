import pytest
import sympy as sp

from algebroid.examples import (
    gl2,
    gl2_plane,
    laurent_group,
    malgrange,
    pair_groupoid,
    split_algebroid,
    trivial_algebroid,
)
from algebroid.hopf_algebroid import (
    AXIOMS,
    NonTriangularSystem,
    derive_antipode,
    format_presentation,
    parse_presentation,
)
from algebroid.symbolic_core import PresentationError

from oracles import faa_di_bruno, inverse_jets, to_sympy


@pytest.mark.parametrize(
    "build",
    [
        lambda: pair_groupoid(1),
        lambda: pair_groupoid(2),
        split_algebroid,
        laurent_group,
        gl2,
        gl2_plane,
        trivial_algebroid,
        lambda: malgrange(1),
        lambda: malgrange(3),
        lambda: malgrange(5),
        lambda: malgrange(3, quotient=True),
    ],
)
def test_bundled_algebroids_pass_every_axiom(build):
    H = build()
    rep = H.check_axioms()
    assert rep.passed, rep.table()
    assert rep.names() == list(AXIOMS)


@pytest.mark.parametrize("n", range(1, 7))
def test_coproduct_matches_series_composition(n):
    H = malgrange(n)
    T2 = H.T2
    want = T2.algebra.zero()
    for (exps, k), c in faa_di_bruno(n).items():
        left = H.total.one()
        for i, e in enumerate(exps, 1):
            left = left * H.total.var(f"y{i}") ** e
        want = want + T2.tensor(left, f"y{k}") * c
    assert H.coproducts[f"y{n}"] == want


def test_low_order_coproducts():
    H = malgrange(3)
    assert H.T2.format(H.coproducts["y2"]) == "y1^2 (x) y2 + y2 (x) y1"
    assert H.coproducts["y3"] == H.T2.parse("y3 (x) y1 + 3*y1*y2 (x) y2 + y1^3 (x) y3")


def test_solved_antipode_matches_inverse_function_jets():
    n = 5
    H = malgrange(n, with_antipode=False)
    S = derive_antipode(H)
    jets, Y = inverse_jets(n)
    inv = sp.Symbol("y1inv")
    for k in range(1, n + 1):
        expr = to_sympy(S.images[f"y{k}"])
        expr = expr.subs({sp.Symbol(f"y{i}"): Y[i - 1] for i in range(1, n + 1)}).subs(inv, 1 / Y[0])
        assert sp.simplify(expr - jets[k - 1]) == 0


def test_antipode_on_fourth_jet():
    H = malgrange(4)
    S = H.antipode
    want = H.total.parse("-y4*y1inv^5 + 10*y3*y2*y1inv^6 - 15*y2^3*y1inv^7")
    assert S.images["y4"] == want


def test_antipode_solver_reports_nontriangular_systems():
    with pytest.raises(NonTriangularSystem):
        derive_antipode(gl2())


def _corrupt(H, generator, coproduct):
    lines = format_presentation(H).splitlines()
    section = None
    out = []
    for line in lines:
        if line.startswith("["):
            section = line
        if section == "[coproduct]" and line.startswith(f"{generator} ="):
            line = f"{generator} = {coproduct}"
        out.append(line)
    return parse_presentation("\n".join(out))


def test_corrupted_coproduct_is_caught():
    bad = _corrupt(malgrange(2), "y2", "y2 (x) y1 + 2*y1^2 (x) y2")
    rep = bad.check_axioms()
    failed = {f.name for f in rep.failures()}
    assert "coassociativity" in failed
    assert rep["coassociativity"].counterexample == "y2"


def test_swapped_legs_break_the_counit():
    bad = _corrupt(malgrange(2), "y2", "y2 (x) y1")
    rep = bad.check_axioms()
    assert not rep["left_counit"].passed


def test_presentation_round_trip():
    for H in (malgrange(3), split_algebroid(), pair_groupoid(2)):
        again = parse_presentation(format_presentation(H))
        assert format_presentation(again) == format_presentation(H)
        assert again.check_axioms().passed


def test_presentation_errors():
    with pytest.raises(PresentationError):
        parse_presentation("[base]\nvariables = X\n")
    with pytest.raises(PresentationError):
        parse_presentation("X = 1\n")
    with pytest.raises(PresentationError):
        parse_presentation("[nonsense]\n")


def test_structure_maps():
    H = malgrange(2)
    assert H.s("X^2") == H.total.parse("x0^2")
    assert H.t("X") == H.total.parse("y0")
    assert str(H.eps("y1*y0 + y2")) == "X"
    assert H.S("x0*y1") == H.total.parse("y0*y1inv")
