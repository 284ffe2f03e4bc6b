"""Separability of Hopf algebroid morphisms, tested three independent ways.

For phi: K -> H over a common base A:

(a) the induced map on indecomposables Q(K) -> Q(H) is split injective over A;
(b) the induced map of Lie-Rinehart algebras L(H) -> L(K) is surjective;
(d) every H-valued derivation of K along phi (killing the source) extends from one of H.

(a) and (b) use a Smith normal form over A, so A must be Q or Q[X]. (d) is
decided in H itself through the ideal of maximal minors.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .differentiation import (
    HopfMorphism,
    differentiate,
    eliminate,
    kaehler_module,
    l_on_morphism,
)
from .symbolic_core import RingElement
from .symbolic_core import poly as P
from .symbolic_core.groebner import Basis
from .symbolic_core.smith import (
    UnsupportedBaseError,
    invariant_factors,
    left_inverse,
    matmul,
    right_inverse,
    smith_normal_form,
)


class SeparabilityError(ValueError):
    pass


def _rebase(x, A):
    return x if x.ring is A else A.element(x.terms)


@dataclass
class ModuleMap:
    """An A-linear map A^n -> A^m as an m x n matrix (columns are images of the domain basis)."""

    base: object
    matrix: list
    domain: list
    codomain: list

    @property
    def shape(self):
        return len(self.codomain), len(self.domain)

    def smith(self):
        m, n = self.shape
        D, _, _ = smith_normal_form(self.matrix, self.base, m, n)
        return [str(d) for d in invariant_factors(D)]

    def to_json(self):
        return {
            "domain": list(self.domain),
            "codomain": list(self.codomain),
            "matrix": [[str(c) for c in row] for row in self.matrix],
        }

    def format(self):
        if not self.matrix or not self.domain:
            return f"0 map ({len(self.codomain)} x {len(self.domain)})"
        cells = [[str(c) for c in row] for row in self.matrix]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def q_map(phi, QK=None, QH=None):
    """Q(phi): Q(K) -> Q(H) on the free classes, for phi: K -> H."""
    K, H = phi.domain, phi.codomain
    QK = QK or kaehler_module(K)
    QH = QH or kaehler_module(H)
    A = H.base
    cols = [QH.pi(phi.map.images[f]) for f in QK.free]
    matrix = [[_rebase(cols[j][i], A) for j in range(len(cols))] for i in range(QH.rank)]
    return ModuleMap(A, matrix, [f"pi({f})" for f in QK.free], [f"pi({f})" for f in QH.free])


def l_map(phi, LK=None, LH=None):
    """L(phi): L(H) -> L(K) as a ModuleMap, for phi: K -> H."""
    LK = LK or differentiate(phi.domain)
    LH = LH or differentiate(phi.codomain)
    f = l_on_morphism(phi, LK, LH, check=False)
    A = phi.codomain.base
    matrix = [[_rebase(f.matrix[j][i], A) for j in range(LH.rank)] for i in range(LK.rank)]
    return ModuleMap(A, matrix, list(LH.basis), list(LK.basis))


def is_split_injective(M):
    """(verdict, R) where R M = I certifies a retraction."""
    m, n = M.shape
    R = left_inverse(M.matrix, M.base, m, n)
    if R is None:
        return False, None
    if n and matmul(M.base, R, M.matrix) != _identity(M.base, n):
        raise SeparabilityError("retraction certificate does not verify")
    return True, R


def is_surjective(M):
    """(verdict, R) where M R = I certifies a section."""
    m, n = M.shape
    R = right_inverse(M.matrix, M.base, m, n)
    if R is None:
        return False, None
    if m and matmul(M.base, M.matrix, R) != _identity(M.base, m):
        raise SeparabilityError("section certificate does not verify")
    return True, R


def _identity(A, n):
    return [[A.one() if i == j else A.zero() for j in range(n)] for i in range(n)]


# (d): derivations with values in H


def _h_valued(H, d, u):
    """sum u_1 t(d(u_2)) for an eps-derivation d of H."""
    out = H.total.zero()
    for c, m0, m1 in H.delta_terms(u):
        val = d(m1)
        if val:
            out = out + m0 * H.t(val) * c
    return out


def _pushed_jacobian(phi, p):
    K, H = phi.domain, phi.codomain
    row = {}
    for v in K.total.variables:
        dp = P.derivative(p, K.total.index[v])
        if dp:
            img = phi(RingElement(K.total, dp))
            if img:
                row[v] = img
    return row


def _det(rows, ring):
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    out = ring.zero()
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = rows[0][j] * _det(minor, ring)
            out = out + term if j % 2 == 0 else out - term
    return out


def extension_matrix(phi, LH=None):
    """Rows: basis derivations of H; columns: free generators of K's constraint system."""
    K, H = phi.domain, phi.codomain
    LH = LH or differentiate(H)
    rows = [_pushed_jacobian(phi, K.source.images[a].terms) for a in K.base.variables]
    rows += [_pushed_jacobian(phi, r) for r in K.total.relations]
    free, _ = eliminate(rows, K.total.variables, H.total)
    matrix = [[_h_valued(H, d, phi.map.images[f]) for f in free] for d in LH.derivations]
    return matrix, free


def derivations_extend(phi, LH=None):
    """True when restriction along phi is onto the H-valued derivations of K."""
    H = phi.codomain
    N, free = extension_matrix(phi, LH)
    r = len(free)
    if r == 0:
        return True
    if len(N) < r:
        return False
    polys = [p for p in H.total.relations]
    for rows in combinations(range(len(N)), r):
        minor = _det([N[i] for i in rows], H.total)
        if minor:
            polys.append(minor.terms)
    return Basis(polys, H.total.order).is_unit_ideal


# reports


@dataclass
class SeparabilityReport:
    name: str
    is_morphism: bool
    morphism_failures: list
    q_matrix: ModuleMap
    l_matrix: ModuleMap
    split_injective: bool
    l_surjective: bool
    derivations_extend: bool
    retraction: list = field(default=None)
    section: list = field(default=None)

    @property
    def verdicts(self):
        return {
            "split_injective": self.split_injective,
            "l_surjective": self.l_surjective,
            "derivations_extend": self.derivations_extend,
        }

    @property
    def consistent(self):
        return len(set(self.verdicts.values())) == 1

    @property
    def separable(self):
        return self.consistent and self.split_injective

    def to_json(self):
        def mat(R):
            return None if R is None else [[str(c) for c in row] for row in R]

        return {
            "morphism": self.name,
            "is_morphism": self.is_morphism,
            "morphism_failures": self.morphism_failures,
            "q_map": self.q_matrix.to_json(),
            "l_map": self.l_matrix.to_json(),
            "verdicts": self.verdicts,
            "consistent": self.consistent,
            "retraction": mat(self.retraction),
            "section": mat(self.section),
        }

    def format(self):
        lines = [f"morphism {self.name}: " + ("Hopf algebroid morphism" if self.is_morphism else "NOT a morphism")]
        for f in self.morphism_failures:
            lines.append(f"  fails {f['axiom']} at {f['counterexample']}")
        lines.append("Q(phi) =")
        lines.append(self.q_matrix.format())
        for k, v in self.verdicts.items():
            lines.append(f"{k:20s} {v}")
        lines.append(f"{'consistent':20s} {self.consistent}")
        return "\n".join(lines)


def separability_report(phi):
    try:
        QK, QH = kaehler_module(phi.domain), kaehler_module(phi.codomain)
        LK, LH = differentiate(phi.domain), differentiate(phi.codomain)
    except ValueError as exc:
        raise SeparabilityError(f"{phi.name}: {exc}") from exc
    rep = phi.check()
    fails = [
        {"axiom": r.name, "counterexample": r.counterexample, "detail": r.detail} for r in rep.failures()
    ]
    M = q_map(phi, QK, QH)
    N = l_map(phi, LK, LH)
    try:
        a, R = is_split_injective(M)
        b, S = is_surjective(N)
    except UnsupportedBaseError as exc:
        raise SeparabilityError(f"{phi.name}: {exc}") from exc
    d = derivations_extend(phi, LH)
    return SeparabilityReport(phi.name, rep.passed, fails, M, N, a, b, d, R, S)


# bundled morphisms


def bundled_morphisms():
    """Named morphisms used by the CLI and the tests, built lazily."""
    return {
        "identity_H2": _identity_h2,
        "H1_into_H2": lambda: _malgrange_inclusion(1, 2),
        "H2_into_H4": lambda: _malgrange_inclusion(2, 4),
        "H4_onto_Hq4": _quotient_projection,
        "counit_H1": _counit_h1,
        "pair_into_split": _pair_into_split,
        "split_onto_pair": _split_onto_pair,
        "s_eps_H1": _s_eps_h1,
    }


def bundled_morphism(name):
    table = bundled_morphisms()
    if name not in table:
        raise SeparabilityError(f"unknown morphism {name!r}; choose from {', '.join(table)}")
    return table[name]()


def _identity_h2():
    from .examples import malgrange

    H = malgrange(2)
    return HopfMorphism(H, H, {v: v for v in H.total.variables}, name="identity_H2")


def _malgrange_inclusion(r, s):
    from .examples import malgrange

    K, H = malgrange(r), malgrange(s)
    return HopfMorphism(K, H, {v: v for v in K.total.variables}, name=f"H{r}_into_H{s}")


def _quotient_projection():
    from .examples import malgrange

    K, H = malgrange(4), malgrange(4, quotient=True)
    return HopfMorphism(K, H, {v: v for v in K.total.variables}, name="H4_onto_Hq4")


def _counit_h1():
    from .examples import malgrange, trivial_algebroid

    K = malgrange(1)
    T = trivial_algebroid(K.base)
    images = {v: str(K.counit.images[v]) for v in K.total.variables}
    return HopfMorphism(K, T, images, name="counit_H1")


def _s_eps_h1():
    from .examples import malgrange

    K = malgrange(1)
    images = {v: str(K.s(K.counit.images[v])) for v in K.total.variables}
    return HopfMorphism(K, K, images, name="s_eps_H1")


def _pair_into_split():
    from .examples import pair_groupoid, split_algebroid

    K, H = pair_groupoid(1), split_algebroid()
    return HopfMorphism(K, H, {v: v for v in K.total.variables}, name="pair_into_split")


def _split_onto_pair():
    from .examples import pair_groupoid, split_algebroid

    K, H = split_algebroid(), pair_groupoid(1)
    images = {v: v for v in ("Xs", "Xt")}
    images.update({"g": 1, "ginv": 1})
    return HopfMorphism(K, H, images, name="split_onto_pair")
