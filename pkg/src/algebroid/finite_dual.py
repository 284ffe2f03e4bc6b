"""Finite duals of cocommutative Hopf algebroids that are free of finite rank,
and the lift of Lie-Rinehart morphisms L -> L(H) to A-ring maps V_A(L) -> *H.

Finite tables assume A acts centrally on U (source equal to target and
landing in the centre), which covers group algebras over Q and A itself.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .caps import check_degree
from .differentiation import DerivationAlgebra
from .enveloping import build_enveloping
from .hopf_algebroid import AxiomReport, HopfAlgebroid, TensorModel
from .lie_rinehart import check_lr_morphism
from .symbolic_core import AlgebraMap, PresentedAlgebra
from .symbolic_core import linalg
from .symbolic_core import poly as P

MAX_RANK = 16


class FiniteDualError(ValueError):
    pass


class LiftError(ValueError):
    pass


class FiniteCocomm:
    """U free on u_0..u_{n-1} over A, given by structure tables with entries in A.

    mult[(i, j)] and unit are coordinate vectors; delta[k] and translation[k]
    map index pairs (i, j) to the coefficient of u_i (x) u_j; counit[k] is
    eps(u_k).
    """

    def __init__(self, base, names, mult, unit, delta, counit, translation, name="U"):
        self.base = base
        self.names = list(names)
        self.rank = len(self.names)
        self.name = name
        A = base
        n = self.rank
        self.mult = {(i, j): self._vec(mult.get((i, j), [0] * n)) for i in range(n) for j in range(n)}
        self.unit = self._vec(unit)
        self.delta = [{k: A.coerce(c) for k, c in d.items() if c} for d in delta]
        self.counit = [A.coerce(c) for c in counit]
        self.translation = [{k: A.coerce(c) for k, c in d.items() if c} for d in translation]
        if len(self.delta) != n or len(self.counit) != n or len(self.translation) != n:
            raise FiniteDualError("table sizes do not match the rank")

    def _vec(self, v):
        if len(v) != self.rank:
            raise FiniteDualError("coordinate vector of the wrong length")
        return [self.base.coerce(c) for c in v]

    def __repr__(self):
        return f"FiniteCocomm({self.name}, rank {self.rank})"

    # vector arithmetic

    def zero(self):
        return [self.base.zero()] * self.rank

    def basis_vector(self, k):
        return [self.base.one() if i == k else self.base.zero() for i in range(self.rank)]

    def add(self, x, y):
        return [a + b for a, b in zip(x, y)]

    def scale(self, a, x):
        return [a * b for b in x]

    def mul(self, x, y):
        out = self.zero()
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    out = self.add(out, self.scale(a * b, self.mult[(i, j)]))
        return out

    def coproduct(self, x):
        out = {}
        for k, a in enumerate(x):
            if a:
                for key, c in self.delta[k].items():
                    _acc(out, key, a * c)
        return out

    def translate(self, x):
        out = {}
        for k, a in enumerate(x):
            if a:
                for key, c in self.translation[k].items():
                    _acc(out, key, a * c)
        return out

    def eps(self, x):
        total = self.base.zero()
        for a, e in zip(x, self.counit):
            total = total + a * e
        return total

    def _tensor_mul(self, s, t):
        out = {}
        for (a, b), c in s.items():
            for (d, e), f in t.items():
                left = self.mult[(a, d)]
                right = self.mult[(b, e)]
                for i, x in enumerate(left):
                    if x:
                        for j, y in enumerate(right):
                            if y:
                                _acc(out, (i, j), c * f * x * y)
        return out

    # verification

    def check(self):
        n = self.rank
        rep = AxiomReport()
        e = self.basis_vector
        fails = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mul(self.mul(e(i), e(j)), e(k)) != self.mul(e(i), self.mul(e(j), e(k))):
                        fails.append((f"({self.names[i]},{self.names[j]},{self.names[k]})", "not associative"))
        rep.add("associativity", fails)
        fails = []
        for i in range(n):
            if self.mul(self.unit, e(i)) != e(i) or self.mul(e(i), self.unit) != e(i):
                fails.append((self.names[i], "unit law fails"))
        rep.add("unit", fails)
        fails = []
        for k in range(n):
            left, right = {}, {}
            for (a, b), c in self.delta[k].items():
                for (x, y), d in self.delta[a].items():
                    _acc(left, (x, y, b), c * d)
                for (x, y), d in self.delta[b].items():
                    _acc(right, (a, x, y), c * d)
            if left != right:
                fails.append((self.names[k], "not coassociative"))
        rep.add("coassociativity", fails)
        fails = []
        for k in range(n):
            left, right = self.zero(), self.zero()
            for (a, b), c in self.delta[k].items():
                left = self.add(left, self.scale(c * self.counit[a], e(b)))
                right = self.add(right, self.scale(c * self.counit[b], e(a)))
            if left != e(k) or right != e(k):
                fails.append((self.names[k], "counit law fails"))
        rep.add("counit", fails)
        fails = []
        for k in range(n):
            if {(b, a): c for (a, b), c in self.delta[k].items()} != self.delta[k]:
                fails.append((self.names[k], "not cocommutative"))
        rep.add("cocommutativity", fails)
        fails = []
        for i in range(n):
            for j in range(n):
                lhs = self.coproduct(self.mul(e(i), e(j)))
                rhs = self._tensor_mul(self.delta[i], self.delta[j])
                if lhs != rhs:
                    fails.append((f"({self.names[i]},{self.names[j]})", "coproduct not multiplicative"))
        if self.coproduct(self.unit) != _unit_tensor(self):
            fails.append(("1", "coproduct of the unit"))
        rep.add("coproduct_multiplicative", fails)
        fails = []
        for i in range(n):
            for j in range(n):
                if self.eps(self.mul(e(i), e(j))) != self.eps(self.scale(self.counit[i], e(j))):
                    fails.append((f"({self.names[i]},{self.names[j]})", "eps(uv) != eps(eps(u)v)"))
        rep.add("double_epsilon", fails)
        fails = []
        for k in range(n):
            total = self.zero()
            for (b, c), t in self.translation[k].items():
                total = self.add(total, self.scale(t, self.mul(e(b), e(c))))
            if total != self.scale(self.counit[k], self.unit):
                fails.append((self.names[k], "u_- u_+ != eps(u) 1"))
        rep.add("translation_counit", fails)
        fails = []
        for k in range(n):
            total = {}
            for (a, b), c in self.delta[k].items():
                for (x, y), t in self.translation[b].items():
                    for z, m in enumerate(self.mult[(a, x)]):
                        if m:
                            _acc(total, (z, y), c * t * m)
            if total != {(i, k): u for i, u in enumerate(self.unit) if u}:
                fails.append((self.names[k], "u_1 (u_2)_- (x) (u_2)_+ != 1 (x) u"))
        rep.add("translation_inverse", fails)
        return rep

    def to_json(self):
        s = str
        return {
            "name": self.name,
            "basis": self.names,
            "mult": {f"{self.names[i]}*{self.names[j]}": [s(c) for c in v] for (i, j), v in self.mult.items()},
            "unit": [s(c) for c in self.unit],
            "coproduct": [{f"{self.names[a]}|{self.names[b]}": s(c) for (a, b), c in d.items()} for d in self.delta],
            "counit": [s(c) for c in self.counit],
            "translation": [{f"{self.names[a]}|{self.names[b]}": s(c) for (a, b), c in d.items()} for d in self.translation],
        }


def _acc(d, key, c):
    new = d.get(key, 0) + c
    if new:
        d[key] = new
    else:
        d.pop(key, None)


def _unit_tensor(U):
    out = {}
    for i, a in enumerate(U.unit):
        for j, b in enumerate(U.unit):
            if a and b:
                out[(i, j)] = a * b
    return out


def group_algebra(n=2, base=None):
    """The group algebra of the cyclic group of order n, basis g0..g{n-1}."""
    n = int(n)
    if n < 1:
        raise FiniteDualError("group order must be at least 1")
    if n > MAX_RANK:
        raise FiniteDualError(f"rank {n} exceeds {MAX_RANK}")
    A = base if base is not None else PresentedAlgebra("Q", [])
    names = [f"g{k}" for k in range(n)]

    def e(k):
        return [1 if i == k % n else 0 for i in range(n)]

    mult = {(i, j): e(i + j) for i in range(n) for j in range(n)}
    delta = [{(k, k): 1} for k in range(n)]
    translation = [{((-k) % n, k): 1} for k in range(n)]
    return FiniteCocomm(A, names, mult, e(0), delta, [1] * n, translation, name=f"QC{n}")


@dataclass
class DualPresentation:
    """The commutative Hopf algebroid U* on the dual basis f_k, with f_k(u_j) = [k = j]."""

    source: FiniteCocomm
    hopf: HopfAlgebroid
    names: list
    report: AxiomReport = None
    _pair_memo: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self):
        return len(self.names)

    def f(self, k):
        return self.hopf.total.var(self.names[k])

    def pairing(self, h, u):
        """<h, u> for h in U* (an element of the presented algebra) and u a coordinate vector."""
        U = self.source
        H = self.hopf.total
        A = U.base
        h = H.coerce(h)
        nA = A.nvars
        total = A.zero()
        for m, c in h.terms.items():
            a = A.element({m[:nA]: Fraction(c)})
            fs = []
            for k, e in enumerate(m[nA:]):
                fs.extend([k] * e)
            total = total + a * self._pair_monomial(tuple(fs), tuple(u))
        return total

    def _pair_monomial(self, fs, u):
        key = (fs, u)
        if key in self._pair_memo:
            return self._pair_memo[key]
        U = self.source
        if not fs:
            val = U.eps(list(u))
        else:
            val = U.base.zero()
            for (a, b), c in U.coproduct(list(u)).items():
                if a == fs[0]:
                    val = val + c * self._pair_monomial(fs[1:], tuple(U.basis_vector(b)))
        self._pair_memo[key] = val
        return val

    def pairing_table(self, degree=2):
        """{(monomial text, basis name): <monomial, u_k>} over monomials in the f_k of degree <= degree."""
        H = self.hopf.total
        U = self.source
        out = {}
        for mono in _monomials(self.rank, degree):
            h = H.one()
            for k in mono:
                h = h * self.f(k)
            label = "*".join(self.names[k] for k in mono) or "1"
            for j in range(U.rank):
                out[(label, U.names[j])] = self.pairing(h, U.basis_vector(j))
        return out

    def to_json(self):
        H = self.hopf
        return {
            "source": self.source.to_json(),
            "dual_basis": self.names,
            "relations": [H.total.format(r) for r in H.total.relations],
            "coproduct": {v: H.T2.format(H.coproducts[v]) for v in H.total.variables},
            "counit": {v: str(c) for v, c in H.counit.images.items()},
            "antipode": {v: str(c) for v, c in H.antipode.images.items()},
            "axioms": self.report.to_json() if self.report else None,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _monomials(n, degree):
    out = [()]
    frontier = [()]
    for _ in range(degree):
        nxt = []
        for m in frontier:
            start = m[-1] if m else 0
            nxt.extend(m + (k,) for k in range(start, n))
        out.extend(nxt)
        frontier = nxt
    return out


def finite_dual(U, check=True):
    """U* with convolution product, coproduct dual to the product of U,
    unit and counit from eps and 1, and antipode through the translation map."""
    if U.rank > MAX_RANK:
        raise FiniteDualError(f"rank {U.rank} exceeds {MAX_RANK}")
    rep = U.check()
    if not rep.passed:
        f = rep.failures()[0]
        raise FiniteDualError(f"inconsistent tables: {f.name} fails at {f.counterexample}")
    A = U.base
    n = U.rank
    nA = A.nvars
    fnames = [f"f{k}" for k in range(n)]
    names = list(A.variables) + fnames
    N = len(names)
    free = PresentedAlgebra("free", names)
    fv = [free.var(x) for x in fnames]

    def lift(a):
        return free.element(P.embed(a.terms, list(range(nA)), N))

    rels = [P.embed(r, list(range(nA)), N) for r in A.relations]
    for i in range(n):
        for j in range(i, n):
            rhs = free.zero()
            for k in range(n):
                c = U.delta[k].get((i, j))
                if c:
                    rhs = rhs + lift(c) * fv[k]
            rels.append((fv[i] * fv[j] - rhs).terms)
    unit = free.zero()
    for k in range(n):
        if U.counit[k]:
            unit = unit + lift(U.counit[k]) * fv[k]
    rels.append((unit - 1).terms)
    H = PresentedAlgebra(f"{U.name}*", names, [r for r in rels if r], A.inverse_pairs)

    ident = {x: x for x in A.variables}
    counit = dict(ident)
    for k in range(n):
        counit[fnames[k]] = str(U.unit[k])
    src = AlgebraMap(A, H, ident, name="source")
    T2 = TensorModel(H, src, src)

    def h_of(a):
        return H.element(P.embed(a.terms, list(range(nA)), N))

    cop = {x: T2.tensor(x, 1) for x in A.variables}
    for k in range(n):
        total = T2.algebra.zero()
        for (a, b), v in U.mult.items():
            c = v[k]
            if c:
                total = total + T2.tensor(h_of(c) * H.var(fnames[b]), H.var(fnames[a]))
        cop[fnames[k]] = total
    anti = dict(ident)
    for i in range(n):
        img = H.zero()
        for k in range(n):
            c = A.zero()
            for (b, cc), t in U.translation[k].items():
                if b == i:
                    c = c + t * U.counit[cc]
            if c:
                img = img + h_of(c) * H.var(fnames[k])
        anti[fnames[i]] = img
    D = HopfAlgebroid(A, H, ident, ident, counit, cop, anti, name=f"{U.name}*")
    report = D.check_axioms() if check else None
    return DualPresentation(U, D, fnames, report)


def _coordinates(vectors, target):
    """Rational c with sum c_k vectors[k] = target; vectors are term dicts."""
    keys = sorted({m for v in vectors for m in v} | set(target))
    rows = [[Fraction(v.get(m, 0)) for v in vectors] for m in keys]
    rhs = [Fraction(target.get(m, 0)) for m in keys]
    x = linalg.solve(rows, rhs)
    if x is None:
        raise FiniteDualError("element outside the span of the dual basis")
    return x


def dual_tables(D):
    """Structure tables of the commutative Hopf algebra D read off its presentation.

    Only the base Q is supported here: coordinates are found by rational
    linear algebra on normal forms.
    """
    H = D.hopf
    if H.base.nvars:
        raise FiniteDualError("table extraction needs the base Q")
    Ht = H.total
    n = D.rank
    fs = [D.f(k) for k in range(n)]
    basis = [f.terms for f in fs]
    mult = {(i, j): _coordinates(basis, (fs[i] * fs[j]).terms) for i in range(n) for j in range(n)}
    unit = _coordinates(basis, Ht.one().terms)
    T2 = H.T2
    pairs = [(a, b) for a in range(n) for b in range(n)]
    tbasis = [T2.tensor(fs[a], fs[b]).terms for a, b in pairs]
    delta = []
    for k in range(n):
        x = _coordinates(tbasis, H.coproduct(fs[k]).terms)
        delta.append({pairs[p]: c for p, c in enumerate(x) if c})
    counit = [H.eps(f).constant() for f in fs]
    anti = [_coordinates(basis, H.S(f).terms) for f in fs]
    return mult, unit, delta, counit, anti


def as_finite_cocomm(D):
    """View a cocommutative dual D (a commutative Hopf algebra over Q) as a FiniteCocomm.

    The translation map of a Hopf algebra is u -> S(u_1) (x) u_2.
    """
    mult, unit, delta, counit, anti = dual_tables(D)
    n = D.rank
    translation = []
    for k in range(n):
        t = {}
        for (x, y), c in delta[k].items():
            for j, s in enumerate(anti[x]):
                if s:
                    _acc(t, (j, y), c * s)
        translation.append(t)
    return FiniteCocomm(D.hopf.base, [f"{x}'" for x in D.names], mult, unit, delta, counit, translation, name=f"{D.hopf.name}")


def double_dual_failures(U):
    """Compare U with the dual of its dual through the evaluation pairing.

    The evaluation u_k -> <-, u_k> sends u_k to the k-th dual-of-dual basis
    vector, so the tables must agree entry by entry.
    """
    D = finite_dual(U)
    C = as_finite_cocomm(D)
    DD = finite_dual(C)
    mult, unit, delta, counit, _ = dual_tables(DD)
    bad = []
    n = U.rank
    for (i, j), v in U.mult.items():
        if [U.base.coerce(c) for c in mult[(i, j)]] != v:
            bad.append((f"{U.names[i]}*{U.names[j]}", "product differs"))
    if [U.base.coerce(c) for c in unit] != U.unit:
        bad.append(("1", "unit differs"))
    for k in range(n):
        if {key: U.base.coerce(c) for key, c in delta[k].items()} != U.delta[k]:
            bad.append((U.names[k], "coproduct differs"))
        if U.base.coerce(counit[k]) != U.counit[k]:
            bad.append((U.names[k], "counit differs"))
    return bad


# from Lie-Rinehart morphisms into L(H) to A-ring maps V_A(L) -> *H


class LiftedMorphism:
    """sigma: V_A(L) -> *H with sigma(iA(a)) = a eps and sigma(e_i) = -h(e_i).

    Products follow (f * g)(x) = g(x_1 t(f(x_2))), so on a PBW word
    sigma(e_i1 ... e_ik)(x) = eps(phi_ik(...phi_i1(x))) with
    phi_i(x) = x_1 t(sigma(e_i)(x_2)).
    """

    def __init__(self, L, H, htilde, U=None):
        self.L = L
        self.H = H
        self.htilde = htilde
        self.U = U or build_enveloping(L)
        LH = htilde.codomain
        self.generators = [-LH.derivation(htilde(L.e(i))) for i in range(L.rank)]
        self._phi = {}
        self._value = {}

    def _to_H_base(self, a):
        return a if a.ring is self.H.base else self.H.base.element(a.terms)

    def _to_L_base(self, a):
        A = self.L.base
        return a if a.ring is A else A.element(a.terms)

    def _apply(self, f, x):
        """x_1 t(f(x_2)) for f a callable H -> A."""
        H = self.H
        out = H.total.zero()
        for c, left, right in H.delta_terms(x):
            out = out + left * H.t(f(right)) * c
        return out

    def phi(self, i, x):
        key = (i, x)
        val = self._phi.get(key)
        if val is None:
            val = self._apply(self.generators[i], x)
            self._phi[key] = val
        return val

    def word_value(self, w, x):
        x = self.H.total.coerce(x)
        key = (tuple(w), x)
        val = self._value.get(key)
        if val is None:
            y = x
            for i in w:
                y = self.phi(i, y)
            val = self.H.eps(y)
            self._value[key] = val
        return val

    def value(self, u, x):
        u = self.U.coerce(u)
        total = self.H.base.zero()
        for w, c in u.terms.items():
            total = total + self._to_H_base(c) * self.word_value(w, x)
        return total

    def convolution(self, u, v, x):
        """(sigma(u) * sigma(v))(x) = sigma(v)(x_1 t(sigma(u)(x_2)))."""
        return self.value(v, self._apply(lambda y: self.value(u, y), self.H.total.coerce(x)))

    def table(self, words):
        """Values of sigma(w) on the generators of H, the stored representation."""
        U = self.U
        return {U.format_word(w): {g: str(self.word_value(w, self.H.total.var(g))) for g in self.H.total.variables} for w in words}


@dataclass
class LiftReport:
    lifted: LiftedMorphism
    words: list
    checked: int
    violations: list

    @property
    def passed(self):
        return not self.violations


def lift_lr_morphism(L, H, htilde, degree_cap=3, pairs=None, cap=None):
    """Build sigma and check both compatibility relations on every PBW word
    of degree <= degree_cap, against all pairs of generators (with 1) of A and of H.
    """
    check_degree(degree_cap, cap)
    LH = htilde.codomain
    if not isinstance(LH, DerivationAlgebra) or LH.flavor != "s":
        raise LiftError("the morphism must land in the s-flavored derivation algebra of H")
    if LH.hopf is not H:
        raise LiftError("the morphism lands in the derivations of a different algebroid")
    rep = check_lr_morphism(htilde)
    if not rep.passed:
        f = rep.failures()[0]
        raise LiftError(f"not a Lie-Rinehart morphism: {f.name} fails at {f.counterexample}")
    sigma = LiftedMorphism(L, H, htilde)
    U = sigma.U
    A = L.base
    Ht = H.total
    words = U.pbw_words(degree_cap)
    a_gens = [A.one()] + [A.var(x) for x in A.variables]
    h_gens = [Ht.one()] + [Ht.var(x) for x in Ht.variables]
    violations = []
    checked = 0
    for w in words:
        u = U.monomial(w, 1)
        for a in a_gens:
            for b in a_gens:
                x = H.s(sigma._to_H_base(a)) * H.t(sigma._to_H_base(b))
                lhs = sigma._to_L_base(sigma.value(u, x))
                rhs = U.counit(U.iota_A(b) * u) * a
                checked += 1
                if lhs != rhs:
                    violations.append(("unit", U.format_word(w), f"s({a})t({b})", "", f"{lhs} != {rhs}"))
        cop = U.coproduct(u)
        for x in h_gens:
            for y in h_gens:
                lhs = sigma.value(u, x * y)
                rhs = H.base.zero()
                for (w1, w2), c in cop.terms.items():
                    rhs = rhs + sigma.word_value(w1, x) * sigma.word_value(w2, y) * sigma._to_H_base(c)
                checked += 1
                if lhs != rhs:
                    violations.append(("product", U.format_word(w), str(x), str(y), f"{lhs} != {rhs}"))
    if pairs is None:
        short = [w for w in words if len(w) <= max(1, degree_cap // 2)]
        pairs = [(U.monomial(w1, 1), U.monomial(w2, 1)) for w1 in short for w2 in short]
    for u, v in pairs:
        for x in h_gens[1:]:
            lhs = sigma.value(u * v, x)
            rhs = sigma.convolution(u, v, x)
            checked += 1
            if lhs != rhs:
                violations.append(("ring_map", str(u), str(v), str(x), f"{lhs} != {rhs}"))
    return LiftReport(sigma, words, checked, violations)
