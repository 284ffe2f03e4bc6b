import json

import pytest
import sympy as sp

from algebroid.differentiation import HopfMorphism
from algebroid.examples import gl2_plane
from algebroid.separability import (
    SeparabilityError,
    bundled_morphism,
    bundled_morphisms,
    extension_matrix,
    is_split_injective,
    q_map,
    separability_report,
)
from algebroid.symbolic_core.smith import UnsupportedBaseError, matmul

from oracles import determinantal_invariant_factors, to_sympy

EXPECTED = {
    "identity_H2": True,
    "H1_into_H2": True,
    "H2_into_H4": True,
    "H4_onto_Hq4": False,
    "counit_H1": False,
    "pair_into_split": True,
    "split_onto_pair": False,
    "s_eps_H1": False,
}


def _units_only(factors, k):
    """k invariant factors, all nonzero constants."""
    return len(factors) == k and all(sp.simplify(f).is_number and f != 0 for f in factors)


def test_every_bundled_morphism_has_an_expectation():
    assert set(bundled_morphisms()) == set(EXPECTED)


@pytest.mark.parametrize("name", list(EXPECTED))
def test_three_criteria_agree(name):
    rep = separability_report(bundled_morphism(name))
    assert rep.verdicts == {k: EXPECTED[name] for k in ("split_injective", "l_surjective", "derivations_extend")}
    assert rep.consistent
    assert rep.separable == EXPECTED[name]


@pytest.mark.parametrize("name", list(EXPECTED))
def test_verdicts_match_determinantal_divisors(name):
    rep = separability_report(bundled_morphism(name))
    Q = [[to_sympy(c) for c in row] for row in rep.q_matrix.matrix]
    Lm = [[to_sympy(c) for c in row] for row in rep.l_matrix.matrix]
    m, n = rep.q_matrix.shape
    if n:
        assert rep.split_injective == _units_only(determinantal_invariant_factors(Q), n)
    k, _ = rep.l_matrix.shape
    if k:
        assert rep.l_surjective == _units_only(determinantal_invariant_factors(Lm), k)


@pytest.mark.parametrize("name", [n for n, v in EXPECTED.items() if v])
def test_certificates(name):
    rep = separability_report(bundled_morphism(name))
    A = rep.q_matrix.base
    m, n = rep.q_matrix.shape
    eye = [[A.one() if i == j else A.zero() for j in range(n)] for i in range(n)]
    assert matmul(A, rep.retraction, rep.q_matrix.matrix) == eye
    k, _ = rep.l_matrix.shape
    eye = [[A.one() if i == j else A.zero() for j in range(k)] for i in range(k)]
    assert matmul(A, rep.l_matrix.matrix, rep.section) == eye


def test_jet_inclusion_matrix():
    rep = separability_report(bundled_morphism("H1_into_H2"))
    assert [[str(c) for c in row] for row in rep.q_matrix.matrix] == [["1", "0"], ["0", "1"], ["0", "0"]]
    assert rep.q_matrix.smith() == ["1", "1"]


def test_projection_onto_quotient_is_not_split():
    rep = separability_report(bundled_morphism("H4_onto_Hq4"))
    assert rep.q_matrix.shape == (2, 5)
    assert rep.retraction is None
    assert rep.section is None


def test_source_counit_composite_is_zero_and_not_a_morphism():
    rep = separability_report(bundled_morphism("s_eps_H1"))
    assert not rep.is_morphism
    assert {f["axiom"] for f in rep.morphism_failures} >= {"target"}
    assert all(not c for row in rep.q_matrix.matrix for c in row)
    assert rep.verdicts == {"split_injective": False, "l_surjective": False, "derivations_extend": False}


def test_extension_matrix_of_an_inclusion():
    N, free = extension_matrix(bundled_morphism("H1_into_H2"))
    assert free == ["y0", "y1"]
    # the minor on the first two rows is y1, a unit of H2
    assert [[str(c) for c in row] for row in N] == [["1", "0"], ["0", "y1"], ["0", "0"]]
    N, free = extension_matrix(bundled_morphism("H4_onto_Hq4"))
    assert (len(N), len(free)) == (2, 5)


def test_report_serializes():
    rep = separability_report(bundled_morphism("pair_into_split"))
    data = json.loads(json.dumps(rep.to_json()))
    assert data["consistent"] is True
    assert data["q_map"] == {"domain": ["pi(Xt)"], "codomain": ["pi(g)", "pi(Xt)"], "matrix": [["0"], ["1"]]}
    assert "Q(phi) =" in rep.format()


def test_unknown_morphism():
    with pytest.raises(SeparabilityError):
        bundled_morphism("nope")


def test_bases_in_several_variables_are_refused():
    H = gl2_plane()
    phi = HopfMorphism(H, H, {v: v for v in H.total.variables}, name="id")
    with pytest.raises(SeparabilityError):
        separability_report(phi)
    with pytest.raises(UnsupportedBaseError):
        is_split_injective(q_map(phi))
