"""Differentiation of commutative Hopf algebroids into Lie-Rinehart algebras.

An eps-derivation d: H -> A satisfies d(uv) = eps(u) d(v) + d(u) eps(v). It is
determined by its values on the generators of H, subject to one linear
constraint per relation of H and per source (or target) image.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .hopf_algebroid import AxiomReport, HopfAlgebroid, TensorModel
from .lie_rinehart import LieRinehartPresentation, LRMorphism, check_lr_morphism
from .symbolic_core import AlgebraMap, PresentedAlgebra, RingElement
from .symbolic_core import linalg
from .symbolic_core import poly as P


class NonFreeError(ValueError):
    """The derivation constraints are not triangular over units."""


class MorphismError(ValueError):
    pass


# linear elimination with unit pivots


def eliminate(rows, variables, ring):
    """Solve sum_v row[v] x_v = 0 for all rows by pivoting on unit coefficients.

    Returns (free variables in declared order, {pivot: {free: coefficient}}).
    Pivots prefer the last declared variable of a row.
    """
    order = {v: i for i, v in enumerate(variables)}
    pivots = {}
    pending = [dict(r) for r in rows]
    while pending:
        progress = False
        left = []
        for row in pending:
            row = _substitute(row, pivots, ring)
            if not row:
                progress = True
                continue
            choice = None
            for v in sorted(row, key=lambda v: -order[v]):
                inv = ring.inverse(row[v])
                if inv is not None:
                    choice = (v, inv)
                    break
            if choice is None:
                left.append(row)
                continue
            v, inv = choice
            expr = {w: -(c * inv) for w, c in row.items() if w != v}
            expr = {w: c for w, c in expr.items() if c}
            for p in list(pivots):
                pivots[p] = _substitute(pivots[p], {v: expr}, ring)
            pivots[v] = expr
            progress = True
        pending = left
        if not progress:
            break
    if pending:
        row = pending[0]
        body = " + ".join(f"({c})*{v}" for v, c in row.items())
        raise NonFreeError(f"constraint {body} = 0 has no unit pivot")
    free = [v for v in variables if v not in pivots]
    return free, pivots


def _substitute(row, pivots, ring):
    out = {}
    for v, c in row.items():
        if v in pivots:
            for w, d in pivots[v].items():
                out[w] = out.get(w, ring.zero()) + c * d
        else:
            out[v] = out.get(v, ring.zero()) + c
    return {v: c for v, c in out.items() if c}


def _jacobian_row(H, p):
    """eps-evaluated gradient of a raw polynomial p of H."""
    Hh = H.total
    row = {}
    for v in Hh.variables:
        d = P.derivative(p, Hh.index[v])
        if d:
            e = H.counit.apply_raw(d)
            if e:
                row[v] = RingElement(H.base, e)
    return row


def constraint_rows(H, flavor="s"):
    killed = H.source if flavor == "s" else H.target
    rows = [_jacobian_row(H, killed.images[a].terms) for a in H.base.variables]
    rows += [_jacobian_row(H, r) for r in H.total.relations]
    return rows


def solve_constraints(H, flavor="s"):
    return eliminate(constraint_rows(H, flavor), H.total.variables, H.base)


# eps-derivations


class EpsDerivation:
    """An eps-derivation H -> A killing s (flavor s) or t (flavor t)."""

    def __init__(self, parent, images, flavor="s"):
        if flavor not in ("s", "t"):
            raise ValueError("flavor must be 's' or 't'")
        self.parent = parent
        self.flavor = flavor
        A = parent.base
        self.images = {v: A.coerce(images.get(v, 0)) for v in parent.total.variables}

    def __call__(self, u):
        H = self.parent
        u = H.total.coerce(u)
        return RingElement(H.base, self.apply_raw(u.terms))

    def apply_raw(self, p):
        H = self.parent
        A = H.base
        total = {}
        for v, img in self.images.items():
            if not img:
                continue
            d = P.derivative(p, H.total.index[v])
            if d:
                e = H.counit.apply_raw(d)
                if e:
                    total = P.add(total, P.mul(e, img.terms))
        return A.reduce(total)

    def violations(self):
        """Constraints this derivation fails (relation or killed image, value)."""
        H = self.parent
        bad = []
        killed = H.source if self.flavor == "s" else H.target
        for a in H.base.variables:
            val = self(killed.images[a])
            if val:
                bad.append((f"{self.flavor}({a})", val))
        for r in H.total.relations:
            val = RingElement(H.base, self.apply_raw(r))
            if val:
                bad.append((H.total.format(r), val))
        return bad

    def _combine(self, other, f):
        return EpsDerivation(self.parent, {v: f(self.images[v], other.images[v]) for v in self.images}, self.flavor)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return EpsDerivation(self.parent, {v: -c for v, c in self.images.items()}, self.flavor)

    def scale(self, a):
        a = self.parent.base.coerce(a)
        return EpsDerivation(self.parent, {v: a * c for v, c in self.images.items()}, self.flavor)

    def __eq__(self, other):
        return (
            isinstance(other, EpsDerivation)
            and other.parent is self.parent
            and other.flavor == self.flavor
            and other.images == self.images
        )

    __hash__ = object.__hash__

    def __repr__(self):
        body = ", ".join(f"{v}: {c}" for v, c in self.images.items() if c)
        return f"EpsDerivation[{self.flavor}]({body})"


def _convolve_terms(H, f, g, terms, flavor):
    """Sum over (c, left, right) of f(left t(g(right))) or f(s(g(left)) right)."""
    Hh = H.total
    total = {}
    for c, m0, m1 in terms:
        if flavor == "s":
            inner = g.apply_raw(m1)
            arg = Hh.reduce(P.mul(m0, H.target.apply_raw(inner)))
        else:
            inner = g.apply_raw(m0)
            arg = Hh.reduce(P.mul(H.source.apply_raw(inner), m1))
        total = P.add(total, P.scale(f.apply_raw(arg), c))
    return H.base.reduce(total)


def _terms_of(H, tensor_poly):
    n = H.total.nvars
    for m, c in tensor_poly.items():
        yield c, {m[:n]: Fraction(1)}, {m[n:]: Fraction(1)}


def convolution(H, f, g, u):
    """(f * g)(u) for the product attached to f's flavor."""
    d = H.coproduct(u)
    return RingElement(H.base, _convolve_terms(H, f, g, _terms_of(H, d.terms), f.flavor))


def bracket_on_representative(H, d1, d2, tensor_poly):
    """[d1, d2] evaluated through an arbitrary representative of a coproduct."""
    terms = list(_terms_of(H, tensor_poly))
    a = _convolve_terms(H, d1, d2, terms, d1.flavor)
    b = _convolve_terms(H, d2, d1, terms, d1.flavor)
    return RingElement(H.base, P.sub(a, b))


def bracket(H, d1, d2):
    if d1.flavor != d2.flavor:
        raise ValueError("bracket of derivations of different flavors")
    images = {}
    for v in H.total.variables:
        images[v] = bracket_on_representative(H, d1, d2, H.coproducts[v].terms)
    return EpsDerivation(H, images, d1.flavor)


def anchor(H, d):
    """d after t (flavor s) or d after s (flavor t), on A-generators."""
    m = H.target if d.flavor == "s" else H.source
    return {a: d(m.images[a]) for a in H.base.variables}


# the Lie-Rinehart algebra of H


class DerivationAlgebra(LieRinehartPresentation):
    """Lie-Rinehart algebra of eps-derivations, keeping the derivations themselves."""

    def __init__(self, hopf, flavor, free, pivots, derivations, anchor_images, structure, names):
        super().__init__(hopf.base, names, anchor_images, structure, name=f"L({hopf.name})")
        self.hopf = hopf
        self.flavor = flavor
        self.free = free
        self.pivots = pivots
        self.derivations = derivations

    def coordinates(self, d):
        return tuple(d.images[f] for f in self.free)

    def derivation(self, X):
        out = EpsDerivation(self.hopf, {}, self.flavor)
        for c, d in zip(X, self.derivations):
            if c:
                out = out + d.scale(c)
        return out


def basis_derivations(H, flavor, free, pivots):
    A = H.base
    out = []
    for f in free:
        images = {v: A.zero() for v in H.total.variables}
        images[f] = A.one()
        for p, expr in pivots.items():
            images[p] = expr.get(f, A.zero())
        out.append(EpsDerivation(H, images, flavor))
    return out


def differentiate(H, flavor="s"):
    free, pivots = solve_constraints(H, flavor)
    ders = basis_derivations(H, flavor, free, pivots)
    for d in ders:
        bad = d.violations()
        if bad:
            raise NonFreeError(f"basis derivation fails constraint {bad[0][0]}")
    names = [f"d{f}" for f in free]
    anchors = {n: anchor(H, d) for n, d in zip(names, ders)}
    structure = {}
    for i in range(len(ders)):
        for j in range(i + 1, len(ders)):
            b = bracket(H, ders[i], ders[j])
            structure[(i, j)] = tuple(b.images[f] for f in free)
    return DerivationAlgebra(H, flavor, free, pivots, ders, anchors, structure, names)


def flavor_bridge(L_s, L_t):
    """Matrix of d -> d o S from the s-flavor basis into t-flavor coordinates."""
    H = L_s.hopf
    S = H.antipode
    rows = []
    for d in L_s.derivations:
        images = {v: d(S.images[v]) for v in H.total.variables}
        e = EpsDerivation(H, images, "t")
        rows.append(L_t.coordinates(e))
    return rows


# Kaehler module


@dataclass
class KaehlerPresentation:
    hopf: HopfAlgebroid
    free: list
    pivots: dict
    basis: list = field(default_factory=list)

    @property
    def rank(self):
        return len(self.free)

    def pi_of_generator(self, v):
        A = self.hopf.base
        if v in self.pivots:
            return tuple(self.pivots[v].get(f, A.zero()) for f in self.free)
        return tuple(A.one() if f == v else A.zero() for f in self.free)

    def pi(self, u):
        """Class of u - s(eps(u)) modulo the square of the augmentation ideal."""
        H = self.hopf
        u = H.total.coerce(u)
        A = H.base
        out = [A.zero() for _ in self.free]
        for v in H.total.variables:
            d = P.derivative(u.terms, H.total.index[v])
            if not d:
                continue
            c = RingElement(A, H.counit.apply_raw(d))
            if c:
                for k, x in enumerate(self.pi_of_generator(v)):
                    if x:
                        out[k] = out[k] + c * x
        return tuple(out)

    def psi(self, u):
        """u_1 (x) pi(u_2), as coordinates in H over the free classes."""
        H = self.hopf
        out = [H.total.zero() for _ in self.free]
        for c, m0, m1 in H.delta_terms(u):
            coords = self.pi(m1)
            for k, x in enumerate(coords):
                if x:
                    out[k] = out[k] + m0 * H.t(x) * c
        return tuple(out)

    def relations(self):
        """Each eliminated generator class as a combination of the free ones."""
        return {v: self.pi_of_generator(v) for v in self.pivots}

    def factor(self, d):
        """The A-linear functional on Q induced by d (values on the free classes)."""
        return tuple(d.images[f] for f in self.free)

    def roundtrip_failures(self, d):
        """Generators g where (functional of d)(pi(g)) differs from d(g)."""
        H = self.hopf
        fun = self.factor(d)
        bad = []
        for v in H.total.variables:
            val = sum((a * b for a, b in zip(fun, self.pi(H.total.var(v)))), H.base.zero())
            if val != d(H.total.var(v)):
                bad.append(v)
        return bad


def kaehler_module(H, check=True):
    free, pivots = solve_constraints(H, "s")
    K = KaehlerPresentation(H, free, pivots, [f"pi({f})" for f in free])
    if check:
        for d in basis_derivations(H, "s", free, pivots):
            bad = K.roundtrip_failures(d)
            if bad:
                raise NonFreeError(f"representability round trip fails on {bad[0]}")
    return K


# morphisms


class HopfMorphism:
    """phi: H -> K over a common base, given on generators of H."""

    def __init__(self, domain, codomain, images, name="phi"):
        if domain.base.variables != codomain.base.variables:
            raise MorphismError("morphisms need a common base")
        self.domain = domain
        self.codomain = codomain
        self.name = name
        self.map = AlgebraMap(domain.total, codomain.total, images, check=False, name=name)

    def __call__(self, u):
        return self.map(u)

    def check(self):
        H, K = self.domain, self.codomain
        phi = self.map
        rep = AxiomReport()
        rep.add("algebra_map", [(r, img) for r, img in phi.well_defined_failures()])
        for name, mh, mk in (("source", H.source, K.source), ("target", H.target, K.target)):
            fails = []
            for a in H.base.variables:
                got, want = phi(mh.images[a]), mk.images[a]
                if got != want:
                    fails.append((a, f"{got} != {want}"))
            rep.add(name, fails)
        fails = []
        for v in H.total.variables:
            got = RingElement(H.base, K.counit(phi.images[v]).terms)
            if got != H.counit.images[v]:
                fails.append((v, f"{got} != {H.counit.images[v]}"))
        rep.add("counit", fails)
        legs = K.T2
        phi2 = H.T2.leg_map_from(
            [{v: legs.embed(phi.images[v], 0) for v in H.total.variables}, {v: legs.embed(phi.images[v], 1) for v in H.total.variables}],
            legs.algebra,
            "phi (x) phi",
        )
        fails = []
        for v in H.total.variables:
            lhs = K.coproduct(phi.images[v])
            rhs = phi2(H.coproducts[v])
            if lhs != rhs:
                fails.append((v, f"{legs.format(lhs)} != {legs.format(rhs)}"))
        rep.add("coproduct", fails)
        fails = []
        if H.antipode is not None and K.antipode is not None:
            for v in H.total.variables:
                lhs = K.S(phi.images[v])
                rhs = phi(H.antipode.images[v])
                if lhs != rhs:
                    fails.append((v, f"{lhs} != {rhs}"))
        rep.add("antipode", fails)
        return rep


def pullback(phi, d, flavor="s"):
    """d o phi as an eps-derivation of phi's domain."""
    H = phi.domain
    A = H.base
    return EpsDerivation(H, {v: A.element(d(phi.map.images[v]).terms) for v in H.total.variables}, flavor)


def l_on_morphism(phi, L_domain=None, L_codomain=None, check=True):
    """The Lie-Rinehart map L(K) -> L(H), d -> d o phi, for phi: H -> K."""
    if check:
        rep = phi.check()
        if not rep.passed:
            f = rep.failures()[0]
            raise MorphismError(f"not a Hopf algebroid morphism: {f.name} fails at {f.counterexample}")
    LH = L_domain or differentiate(phi.domain)
    LK = L_codomain or differentiate(phi.codomain)
    rows = []
    for d in LK.derivations:
        rows.append(LH.coordinates(pullback(phi, d)))
    return LRMorphism(LK, LH, rows, name=f"L({phi.name})")


# isotropy


@dataclass
class IsotropyLieAlgebra:
    point: dict
    free: list
    basis: list
    structure: dict
    hopf_at_point: HopfAlgebroid = None
    lie_at_point: DerivationAlgebra = None
    nabla: list = None
    nabla_ok: bool = False

    @property
    def rank(self):
        return len(self.basis)


def _point_map(H, x):
    A = H.base
    k = PresentedAlgebra("Q", [])
    try:
        return AlgebraMap(A, k, {a: Fraction(x[a]) for a in A.variables}, check=True, name="point")
    except KeyError as exc:
        raise ValueError(f"point gives no value for {exc}") from None


def isotropy(H, x, L=None):
    """Derivations at the point x killing both s and t, with their bracket."""
    ev = _point_map(H, x)
    if L is None:
        L = differentiate(H, "s")
    free = L.free
    # specialised anchor: columns are basis derivations, rows A-generators
    rows = []
    for a in H.base.variables:
        rows.append([ev(d(H.target.images[a])).constant() for d in L.derivations])
    null = linalg.nullspace(rows, len(free)) if rows else linalg.nullspace([], len(free))
    basis = null

    def values(vec):
        # generator values of the derivation with free-coordinates vec at x
        out = {}
        for v in H.total.variables:
            out[v] = sum((c * ev(d.images[v]).constant() for c, d in zip(vec, L.derivations)), Fraction(0))
        return out

    eps_x = ev.compose(H.counit)
    vals = [values(v) for v in basis]

    def apply(val, p):
        total = Fraction(0)
        for v, c in val.items():
            if c:
                dv = P.derivative(p, H.total.index[v])
                if dv:
                    total += P.constant_value(eps_x.apply_raw(dv)) * c
        return total

    def bracket_values(v1, v2):
        out = {}
        for g in H.total.variables:
            tot = Fraction(0)
            for c, m0, m1 in _terms_of(H, H.coproducts[g].terms):
                tot += c * (apply(v1, m0) * apply(v2, m1) - apply(v2, m0) * apply(v1, m1))
            out[g] = tot
        return out

    structure = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            bv = bracket_values(vals[i], vals[j])
            coords = linalg.solve([list(r) for r in zip(*basis)], [bv[f] for f in free]) if basis else []
            if coords is None:
                raise ValueError("isotropy bracket left the isotropy algebra")
            structure[(i, j)] = tuple(coords)
    iso = IsotropyLieAlgebra(dict(x), free, basis, structure)
    iso.values = vals
    Hx = hopf_at_point(H, x)
    Lx = differentiate(Hx, "s")
    nab = []
    for val in vals:
        d = EpsDerivation(Hx, {v: val[v] for v in Hx.total.variables}, "s")
        nab.append([d.images[f].constant() for f in Lx.free])
    ok = linalg.rank(nab, len(Lx.free)) == len(basis) == Lx.rank if basis else Lx.rank == 0
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            lhs = [sum((c * nab[k][m] for k, c in enumerate(structure[(i, j)])), Fraction(0)) for m in range(Lx.rank)]
            rhs = [c.constant() for c in Lx.bracket(tuple(Lx.base.const(c) for c in nab[i]), tuple(Lx.base.const(c) for c in nab[j]))]
            if lhs != rhs:
                ok = False
    iso.hopf_at_point = Hx
    iso.lie_at_point = Lx
    iso.nabla = nab
    iso.nabla_ok = ok
    return iso


def hopf_at_point(H, x):
    """The isotropy Hopf algebra at x: H with s(a) and t(a) set to x(a)."""
    ev = _point_map(H, x)
    Hh = H.total
    rels = [r for r in Hh.relations]
    for a in H.base.variables:
        c = ev(H.base.var(a)).constant()
        for m in (H.source, H.target):
            rels.append(P.sub(m.images[a].terms, P.const(c, Hh.nvars)))
    Hx = PresentedAlgebra(f"{Hh.name}_x", Hh.variables, rels, Hh.inverse_pairs)
    k = ev.codomain
    eps = {v: ev(H.counit.images[v]).constant() for v in Hh.variables}
    src = AlgebraMap(k, Hx, {}, check=False)
    T2 = TensorModel(Hx, src, src)
    cop = {v: T2.algebra.element(H.coproducts[v].terms) for v in Hh.variables}
    anti = None
    if H.antipode is not None:
        anti = {v: Hx.element(H.antipode.images[v].terms) for v in Hh.variables}
    return HopfAlgebroid(k, Hx, src, src, eps, cop, anti, name=Hx.name)


# the split algebroid of a comodule algebra


def _tensor_algebra(B, A, name="BA"):
    Bt = B.total
    names = list(Bt.variables) + list(A.variables)
    n = len(names)
    rels = [P.embed(p, list(range(Bt.nvars)), n) for p in Bt.relations]
    rels += [P.embed(p, list(range(Bt.nvars, n)), n) for p in A.relations]
    return PresentedAlgebra(name, names, rels)


def coaction_failures(B, A, rho):
    """Generators where rho is not coassociative or not counital."""
    Bt = B.total
    BA = _tensor_algebra(B, A)
    rho_map = AlgebraMap(A, BA, rho, check=True, name="rho")
    nb = Bt.nvars
    names = [f"{v}_0" for v in Bt.variables] + [f"{v}_1" for v in Bt.variables] + list(A.variables)
    N = len(names)
    rels = [P.embed(p, list(range(nb)), N) for p in Bt.relations]
    rels += [P.embed(p, list(range(nb, 2 * nb)), N) for p in Bt.relations]
    rels += [P.embed(p, list(range(2 * nb, N)), N) for p in A.relations]
    BBA = PresentedAlgebra("BBA", names, rels)
    copy0 = {v: BBA.element(P.embed(Bt.var(v).terms, list(range(nb)), N)) for v in Bt.variables}
    copy1 = {v: BBA.element(P.embed(Bt.var(v).terms, list(range(nb, 2 * nb)), N)) for v in Bt.variables}
    legs = B.T2.leg_map_from([copy0, copy1], BBA, "B legs")
    left = AlgebraMap(BA, BBA, {**{v: legs(B.coproducts[v]) for v in Bt.variables}, **{a: BBA.var(a) for a in A.variables}}, check=False)
    rho_1 = AlgebraMap(BA, BBA, {**copy1, **{a: BBA.var(a) for a in A.variables}}, check=False)
    right = AlgebraMap(BA, BBA, {**copy0, **{a: rho_1(rho_map.images[a]) for a in A.variables}}, check=False)
    counit = AlgebraMap(BA, A, {**{v: A.const(B.counit.images[v].constant()) for v in Bt.variables}, **{a: A.var(a) for a in A.variables}}, check=False)
    bad = []
    for a in A.variables:
        r = rho_map.images[a]
        if left(r) != right(r):
            bad.append((a, "coassociativity"))
        if counit(r) != A.var(a):
            bad.append((a, "counit"))
    return bad


def comodule_split(B, A, rho, name="split_comodule"):
    """The algebroid (A, B (x) A) of a left B-comodule algebra A with coaction rho.

    s = rho, t(a) = 1 (x) a, Delta(b (x) a) = (b_1 (x) 1) (x) (b_2 (x) a).
    """
    bad = coaction_failures(B, A, rho)
    if bad:
        raise MorphismError(f"rho is not a coaction: {bad[0][1]} fails on {bad[0][0]}")
    Bt = B.total
    total = _tensor_algebra(B, A, name)
    total = PresentedAlgebra(name, total.variables, [total.format(r) for r in total.relations], Bt.inverse_pairs)
    source = AlgebraMap(A, total, {a: total.coerce(rho[a]) if isinstance(rho[a], str) else total.element(rho[a].terms) for a in A.variables}, name="source")
    target = AlgebraMap(A, total, {a: total.var(a) for a in A.variables}, name="target")
    T2 = TensorModel(total, source, target)
    cop = {}
    nb = Bt.nvars
    for v in Bt.variables:
        acc = T2.algebra.zero()
        for c, legs in B.T2.split_terms(B.coproducts[v]):
            l0 = total.element(P.embed(legs[0], list(range(nb)), total.nvars))
            l1 = total.element(P.embed(legs[1], list(range(nb)), total.nvars))
            acc = acc + T2.tensor(l0, l1) * c
        cop[v] = acc
    for a in A.variables:
        cop[a] = T2.tensor(1, a)
    eps = {v: A.const(B.counit.images[v].constant()) for v in Bt.variables}
    eps.update({a: A.var(a) for a in A.variables})
    anti = {v: total.element(P.embed(B.antipode.images[v].terms, list(range(nb)), total.nvars)) for v in Bt.variables}
    anti.update({a: source.images[a] for a in A.variables})
    return HopfAlgebroid(A, total, source, target, eps, cop, anti, name=name)


def complete_derivation(B, values):
    """Extend values on the free generators of B to an eps-derivation (flavor s)."""
    free, pivots = solve_constraints(B, "s")
    k = B.base
    images = {f: k.const(Fraction(values.get(f, 0))) for f in free}
    for p, expr in pivots.items():
        if p in values:
            images[p] = k.const(Fraction(values[p]))
        else:
            images[p] = sum((c * images[f] for f, c in expr.items()), k.zero())
    return EpsDerivation(B, images, "s")


def split_tau(split, B, delta):
    """tau(delta) on the split algebroid: delta on B-generators, 0 on A-generators.

    delta is an eps-derivation of B or a dict of values on B's free generators.
    """
    if not isinstance(delta, EpsDerivation):
        delta = complete_derivation(B, delta)
    A = split.base
    images = {v: A.const(delta.images[v].constant()) for v in B.total.variables}
    images.update({a: A.zero() for a in A.variables})
    d = EpsDerivation(split, images, "t")
    bad = d.violations()
    if bad:
        raise ValueError(f"tau(delta) violates {bad[0][0]}; delta is not an eps-derivation of B")
    return d
