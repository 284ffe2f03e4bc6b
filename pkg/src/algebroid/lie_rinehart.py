"""Lie-Rinehart algebras that are free of finite rank over their base."""

import json
from itertools import combinations

from .hopf_algebroid import AxiomReport
from .symbolic_core import PresentedAlgebra
from .symbolic_core import poly as P


class LieRinehartPresentation:
    """Basis e_1..e_n over A, anchors as derivations of A, structure constants in A.

    anchor[name][x] is the image of the A-generator x under the derivation
    attached to basis element name; structure[(i, j)] is the coordinate
    vector of [e_i, e_j].
    """

    def __init__(self, base, basis, anchor, structure, name="L"):
        self.base = base
        self.basis = tuple(basis)
        self.rank = len(self.basis)
        self.name = name
        A = base
        self.anchor = {
            e: {x: A.coerce(anchor.get(e, {}).get(x, 0)) for x in A.variables} for e in self.basis
        }
        zero = tuple(A.zero() for _ in self.basis)
        self.structure = {}
        for i in range(self.rank):
            for j in range(self.rank):
                vec = structure.get((i, j))
                if vec is None and (j, i) in structure and i != j:
                    continue
                self.structure[(i, j)] = zero if vec is None else tuple(A.coerce(c) for c in vec)
        for i in range(self.rank):
            for j in range(self.rank):
                if (i, j) not in self.structure:
                    self.structure[(i, j)] = tuple(-c for c in self.structure[(j, i)])

    def __repr__(self):
        return f"LieRinehartPresentation({self.name}, rank {self.rank})"

    # elements are tuples of A-coordinates

    def zero(self):
        return tuple(self.base.zero() for _ in self.basis)

    def e(self, i):
        if isinstance(i, str):
            i = self.basis.index(i)
        return tuple(self.base.one() if k == i else self.base.zero() for k in range(self.rank))

    def vector(self, coords):
        return tuple(self.base.coerce(c) for c in coords)

    def apply_anchor(self, X, a):
        """The derivation anchor(X) applied to a in A."""
        A = self.base
        a = A.coerce(a)
        total = {}
        for x in A.variables:
            d = P.derivative(a.terms, A.index[x])
            if not d:
                continue
            img = {}
            for i, c in enumerate(X):
                if c:
                    img = P.add(img, P.mul(c.terms, self.anchor[self.basis[i]][x].terms))
            if img:
                total = P.add(total, P.mul(d, img))
        return A.element(total)

    def anchor_images(self, X):
        return {x: self.apply_anchor(X, self.base.var(x)) for x in self.base.variables}

    def bracket(self, X, Y):
        """[sum a_i e_i, sum b_j e_j] using the Leibniz rule in both slots."""
        out = [self.base.zero() for _ in self.basis]
        for i, a in enumerate(X):
            if not a:
                continue
            for j, b in enumerate(Y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.structure[(i, j)]):
                    if c:
                        out[k] = out[k] + ab * c
        for j, b in enumerate(Y):
            if b:
                db = self.apply_anchor(X, b)
                if db:
                    out[j] = out[j] + db
        for i, a in enumerate(X):
            if a:
                da = self.apply_anchor(Y, a)
                if da:
                    out[i] = out[i] - da
        return tuple(out)

    def add(self, X, Y):
        return tuple(x + y for x, y in zip(X, Y))

    def scale(self, a, X):
        a = self.base.coerce(a)
        return tuple(a * x for x in X)

    def format(self, X):
        parts = [f"({c})*{e}" for c, e in zip(X, self.basis) if c]
        return " + ".join(parts) or "0"

    def to_json(self):
        return {
            "base": {"variables": list(self.base.variables)},
            "basis": list(self.basis),
            "anchor": {e: {x: str(v) for x, v in imgs.items()} for e, imgs in self.anchor.items()},
            "structure_constants": {
                f"{self.basis[i]},{self.basis[j]}": [str(c) for c in self.structure[(i, j)]]
                for i in range(self.rank)
                for j in range(i + 1, self.rank)
            },
        }

    @classmethod
    def from_json(cls, data, base=None):
        if base is None:
            base = PresentedAlgebra("A", data["base"]["variables"])
        basis = data["basis"]
        structure = {}
        for key, vec in data["structure_constants"].items():
            a, b = key.split(",")
            structure[(basis.index(a), basis.index(b))] = vec
        return cls(base, basis, data["anchor"], structure)

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def check_lie_rinehart(L):
    rep = AxiomReport()
    A = L.base
    n = L.rank

    fails = []
    for e in L.basis:
        X = L.e(e)
        for r in A.relations:
            img = _derive_raw(L, X, r)
            if img:
                fails.append((e, f"anchor does not kill relation {A.format(r)}"))
    rep.add("anchor_well_defined", fails)

    fails = []
    for i in range(n):
        if any(L.structure[(i, i)]):
            fails.append((f"({L.basis[i]},{L.basis[i]})", "nonzero self-bracket"))
        for j in range(i + 1, n):
            if any(a + b for a, b in zip(L.structure[(i, j)], L.structure[(j, i)])):
                fails.append((f"({L.basis[i]},{L.basis[j]})", "not antisymmetric"))
    rep.add("antisymmetry", fails)

    fails = []
    for i, j, k in combinations(range(n), 3):
        X, Y, Z = L.e(i), L.e(j), L.e(k)
        jac = L.add(L.add(L.bracket(L.bracket(X, Y), Z), L.bracket(L.bracket(Y, Z), X)), L.bracket(L.bracket(Z, X), Y))
        if any(jac):
            fails.append((f"({L.basis[i]},{L.basis[j]},{L.basis[k]})", f"jacobiator {L.format(jac)}"))
    rep.add("jacobi", fails)

    fails = []
    for i in range(n):
        for j in range(i + 1, n):
            X, Y = L.e(i), L.e(j)
            XY = L.bracket(X, Y)
            for x in A.variables:
                a = A.var(x)
                lhs = L.apply_anchor(XY, a)
                rhs = L.apply_anchor(X, L.apply_anchor(Y, a)) - L.apply_anchor(Y, L.apply_anchor(X, a))
                if lhs != rhs:
                    fails.append((f"({L.basis[i]},{L.basis[j]})", f"on {x}: {lhs} != {rhs}"))
    rep.add("anchor_lie_map", fails)

    # [X, aY] = a[X, Y] + X(a) Y with a an A-generator, expanded independently
    fails = []
    for i in range(n):
        for j in range(n):
            for x in A.variables:
                a = A.var(x)
                X, Y = L.e(i), L.e(j)
                lhs = L.bracket(X, L.scale(a, Y))
                rhs = L.add(L.scale(a, tuple(L.structure[(i, j)])), L.scale(L.anchor[L.basis[i]][x], Y))
                if lhs != rhs:
                    fails.append((f"({L.basis[i]},{x}*{L.basis[j]})", f"{L.format(lhs)} != {L.format(rhs)}"))
    rep.add("leibniz", fails)
    return rep


def _derive_raw(L, X, r):
    A = L.base
    total = {}
    for x in A.variables:
        d = P.derivative(r, A.index[x])
        if d:
            total = P.add(total, P.mul(d, L.apply_anchor(X, A.var(x)).terms))
    return A.reduce(total)


class LRMorphism:
    """A-linear map given by images of the domain basis in codomain coordinates."""

    def __init__(self, domain, codomain, matrix, name="f"):
        if domain.base is not codomain.base and domain.base.variables != codomain.base.variables:
            raise ValueError("Lie-Rinehart morphisms need a common base")
        self.domain = domain
        self.codomain = codomain
        self.name = name
        A = codomain.base
        self.matrix = [tuple(A.coerce(c) for c in row) for row in matrix]
        if len(self.matrix) != domain.rank or any(len(r) != codomain.rank for r in self.matrix):
            raise ValueError("matrix shape does not match the ranks")

    def __call__(self, X):
        A = self.codomain.base
        out = [A.zero() for _ in range(self.codomain.rank)]
        for a, row in zip(X, self.matrix):
            if a:
                a = _rebase(a, A)
                for k, c in enumerate(row):
                    if c:
                        out[k] = out[k] + a * c
        return tuple(out)

    def as_lists(self):
        return [[str(c) for c in row] for row in self.matrix]


def _rebase(a, A):
    return a if a.ring is A else A.element(a.terms)


def identity_morphism(L):
    return LRMorphism(L, L, [L.e(i) for i in range(L.rank)], name="id")


def check_lr_morphism(f):
    rep = AxiomReport()
    D, C = f.domain, f.codomain
    A = C.base
    fails = []
    for i in range(D.rank):
        for x in D.base.variables:
            a = D.base.var(x)
            lhs = f(D.scale(a, D.e(i)))
            rhs = C.scale(_rebase(a, A), f(D.e(i)))
            if lhs != rhs:
                fails.append((D.basis[i], f"f({x}*{D.basis[i]}) != {x}*f({D.basis[i]})"))
    rep.add("a_linearity", fails)
    fails = []
    for i in range(D.rank):
        for j in range(i + 1, D.rank):
            lhs = f(D.bracket(D.e(i), D.e(j)))
            rhs = C.bracket(f(D.e(i)), f(D.e(j)))
            if lhs != rhs:
                fails.append((f"({D.basis[i]},{D.basis[j]})", f"{C.format(lhs)} != {C.format(rhs)}"))
    rep.add("brackets", fails)
    fails = []
    for i in range(D.rank):
        for x in D.base.variables:
            lhs = C.apply_anchor(f(D.e(i)), A.var(x))
            rhs = _rebase(D.apply_anchor(D.e(i), D.base.var(x)), A)
            if lhs != rhs:
                fails.append((D.basis[i], f"anchor on {x}: {lhs} != {rhs}"))
    rep.add("anchors", fails)
    return rep
