"""Commutative Hopf algebroids (A, H) given by generators and relations.

H tensored with itself over A is modeled as one commutative algebra: a copy of
H's variables per leg, plus transfer relations t(a) in one leg equal to s(a)
in the next. Legs are ordered by an elimination order (earlier legs larger),
so normal forms push base elements out of the left legs.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .symbolic_core import AlgebraMap, PresentedAlgebra, RingElement
from .symbolic_core import poly as P
from .symbolic_core.algebra import PresentationError, _PolyEnv, _Raw
from .symbolic_core.parser import ParseError, evaluate, format_coefficient_term, join_terms, parse_ast
from .symbolic_core.algebra import format_mono


class NonTriangularSystem(ValueError):
    def __init__(self, generator, detail=""):
        super().__init__(f"cannot solve for the antipode of {generator}" + (f": {detail}" if detail else ""))
        self.generator = generator


class InconsistentConstraints(ValueError):
    pass


class TensorModel:
    """H tensored with itself `legs` times over A, as a presented algebra."""

    def __init__(self, H, source, target, legs=2):
        self.H = H
        self.legs = legs
        n = H.nvars
        self.width = n
        names = [f"{v}@{k}" for k in range(legs) for v in H.variables]
        N = n * legs
        rels = []
        for k in range(legs):
            pos = list(range(k * n, (k + 1) * n))
            for g in H.basis.polys:
                rels.append(P.embed(g, pos, N))
        for k in range(legs - 1):
            left = list(range(k * n, (k + 1) * n))
            right = list(range((k + 1) * n, (k + 2) * n))
            for a in source.domain.variables:
                t_a = P.embed(target.images[a].terms, left, N)
                s_a = P.embed(source.images[a].terms, right, N)
                rel = P.sub(t_a, s_a)
                if rel:
                    rels.append(rel)
        blocks = [(k * n, (k + 1) * n) for k in range(legs)]
        self.algebra = PresentedAlgebra(f"{H.name}^(x){legs}", names, rels, blocks=blocks)
        self.leg_maps = [
            AlgebraMap(H, self.algebra, {v: self.algebra.var(f"{v}@{k}") for v in H.variables}, check=False, name=f"leg{k}")
            for k in range(legs)
        ]

    def embed(self, e, leg):
        return self.leg_maps[leg](e)

    def tensor(self, *factors):
        """Elementary tensor f0 (x) f1 (x) ...; factors are H-elements or strings."""
        if len(factors) != self.legs:
            raise ValueError(f"expected {self.legs} tensor factors")
        out = self.algebra.one()
        for k, f in enumerate(factors):
            out = out * self.embed(self.H.coerce(f), k)
        return out

    def split_terms(self, e):
        """Yield (coefficient, [leg monomial as raw H-polynomial]) for each term."""
        n = self.width
        for m, c in e.terms.items():
            yield c, [{m[k * n:(k + 1) * n]: Fraction(1)} for k in range(self.legs)]

    def format(self, e):
        n = self.width
        pairs = []
        for m, c in self.algebra.order.sorted_terms(e.terms):
            legs = [format_mono(m[k * n:(k + 1) * n], self.H.variables) for k in range(self.legs)]
            sign, body = format_coefficient_term(c, legs[0])
            pairs.append((sign, " (x) ".join([body] + [leg or "1" for leg in legs[1:]])))
        return join_terms(pairs)

    def parse(self, text):
        env = _TensorEnv(self)
        value = evaluate(parse_ast(text, tensor=True), env)
        if not isinstance(value, RingElement):
            raise ParseError("expected a tensor expression", 0)
        return value

    def leg_map_from(self, images_per_leg, codomain, name="legs"):
        """Algebra map out of this model: leg k variable v goes to images_per_leg[k][v]."""
        images = {}
        for k in range(self.legs):
            for v in self.H.variables:
                images[f"{v}@{k}"] = images_per_leg[k][v]
        return AlgebraMap(self.algebra, codomain, images, check=False, name=name)


class _TensorEnv(_PolyEnv):
    def __init__(self, model):
        super().__init__(model.H.index, model.H.nvars)
        self.model = model

    def tensor(self, legs, pos):
        if len(legs) != self.model.legs:
            raise ParseError(f"expected {self.model.legs} tensor legs", pos)
        out = self.model.algebra.one()
        for k, leg in enumerate(legs):
            out = out * self.model.embed(self.model.H.element(leg.p), k)
        return out


@dataclass
class AxiomResult:
    name: str
    passed: bool
    counterexample: str | None = None
    detail: str = ""


@dataclass
class AxiomReport:
    results: list = field(default_factory=list)

    def add(self, name, failures):
        if failures:
            gen, detail = failures[0]
            self.results.append(AxiomResult(name, False, gen, detail))
        else:
            self.results.append(AxiomResult(name, True))

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self):
        return [r.name for r in self.results]

    def table(self):
        lines = []
        for r in self.results:
            mark = "pass" if r.passed else "FAIL"
            extra = "" if r.passed else f"  counterexample {r.counterexample}: {r.detail}"
            lines.append(f"{r.name:32s} {mark}{extra}")
        return "\n".join(lines)

    def to_json(self):
        return [
            {"axiom": r.name, "passed": r.passed, "counterexample": r.counterexample, "detail": r.detail}
            for r in self.results
        ]


AXIOMS = (
    "coproduct_source",
    "coproduct_target",
    "coassociativity",
    "left_counit",
    "right_counit",
    "counit_source",
    "counit_target",
    "antipode_well_defined",
    "antipode_source",
    "antipode_target",
    "antipode_involution",
    "antipode_left",
    "antipode_right",
    "antipode_anticomultiplicative",
)


class HopfAlgebroid:
    """A commutative Hopf algebroid presentation.

    coproduct maps each generator of H to an element of the two-leg tensor
    model; the antipode is optional and can be filled by derive_antipode.
    """

    def __init__(self, base, total, source, target, counit, coproduct, antipode=None, name=None):
        self.name = name or total.name
        self.base = base
        self.total = total
        self.source = _as_map(source, base, total, "source")
        self.target = _as_map(target, base, total, "target")
        self.counit = _as_map(counit, total, base, "counit")
        self.T2 = TensorModel(total, self.source, self.target, 2)
        self._T3 = None
        images = {}
        for v in total.variables:
            if v not in coproduct:
                raise PresentationError(f"no coproduct given for generator {v}")
            d = coproduct[v]
            if isinstance(d, str):
                d = self.T2.parse(d)
            elif isinstance(d, RingElement) and d.ring.variables == self.T2.algebra.variables:
                d = self.T2.algebra.element(d.terms)
            else:
                raise PresentationError(f"coproduct of {v} is not an element of the tensor model")
            images[v] = d
        self.delta = AlgebraMap(total, self.T2.algebra, images, check=True, name="coproduct")
        self.coproducts = images
        if antipode is not None:
            antipode = _as_map(antipode, total, total, "antipode")
        self.antipode = antipode
        self.verified = False

    @property
    def T3(self):
        if self._T3 is None:
            self._T3 = TensorModel(self.total, self.source, self.target, 3)
        return self._T3

    def __repr__(self):
        return f"HopfAlgebroid({self.name})"

    def with_antipode(self, S):
        return HopfAlgebroid(self.base, self.total, self.source, self.target, self.counit, self.coproducts, S, self.name)

    # structure maps

    def s(self, a):
        return self.source(self.base.coerce(a))

    def t(self, a):
        return self.target(self.base.coerce(a))

    def eps(self, u):
        return self.counit(self.total.coerce(u))

    def S(self, u):
        return self.antipode(self.total.coerce(u))

    def coproduct(self, u):
        return self.delta(self.total.coerce(u))

    def format_tensor(self, e):
        model = self.T2 if e.ring is self.T2.algebra else self.T3
        return model.format(e)

    def delta_terms(self, u):
        """(coefficient, left monomial, right monomial) over the normal form of Delta(u)."""
        H = self.total
        for c, (m0, m1) in self.T2.split_terms(self.coproduct(u)):
            yield c, RingElement(H, H.reduce(m0)), RingElement(H, H.reduce(m1))

    # maps out of the tensor models

    def _map_T2(self, left, right, codomain, name):
        H = self.total
        L = {v: left(H.var(v)) for v in H.variables}
        R = {v: right(H.var(v)) for v in H.variables}
        return self.T2.leg_map_from([L, R], codomain, name)

    def check_axioms(self):
        report = check_axioms(self)
        self.verified = report.passed
        return report


def _as_map(m, dom, cod, name):
    if isinstance(m, AlgebraMap):
        if m.domain is not dom or m.codomain is not cod:
            raise PresentationError(f"{name} has the wrong domain or codomain")
        return m
    return AlgebraMap(dom, cod, dict(m), check=True, name=name)


def build_hopf_algebroid(base, total, source, target, counit, coproduct, antipode=None, name=None):
    """Build an (unverified) presentation; string data is parsed in the right rings.

    base and total are PresentedAlgebras or dicts with keys variables,
    relations and inverse_pairs.
    """
    if isinstance(base, dict):
        base = PresentedAlgebra(base.get("name", "A"), base["variables"], base.get("relations", ()), base.get("inverse_pairs", ()))
    if isinstance(total, dict):
        total = PresentedAlgebra(total.get("name", "H"), total["variables"], total.get("relations", ()), total.get("inverse_pairs", ()))
    return HopfAlgebroid(base, total, source, target, counit, coproduct, antipode, name)


def coproduct(H, u):
    return H.coproduct(u)


def _lift_T2_to_T3(H, shift):
    """Map T2 -> T3 placing legs (0,1) at (shift, shift+1)."""
    T3 = H.T3
    L = {v: T3.embed(H.total.var(v), shift) for v in H.total.variables}
    R = {v: T3.embed(H.total.var(v), shift + 1) for v in H.total.variables}
    return H.T2.leg_map_from([L, R], T3.algebra, "shift")


def check_axioms(H):
    """Check every Hopf algebroid identity on generators (enough for algebra maps)."""
    rep = AxiomReport()
    A, Hh = H.base, H.total
    T2 = H.T2
    s, t, eps, delta = H.source, H.target, H.counit, H.delta

    fails = []
    for a in A.variables:
        lhs = delta(s(A.var(a)))
        rhs = T2.tensor(s(A.var(a)), 1)
        if lhs != rhs:
            fails.append((a, f"{T2.format(lhs)} != {T2.format(rhs)}"))
    rep.add("coproduct_source", fails)
    fails = []
    for a in A.variables:
        lhs = delta(t(A.var(a)))
        rhs = T2.tensor(1, t(A.var(a)))
        if lhs != rhs:
            fails.append((a, f"{T2.format(lhs)} != {T2.format(rhs)}"))
    rep.add("coproduct_target", fails)

    T3 = H.T3
    shift01 = _lift_T2_to_T3(H, 0)
    shift12 = _lift_T2_to_T3(H, 1)
    d_left = T2.leg_map_from(
        [{v: shift01(delta(Hh.var(v))) for v in Hh.variables}, {v: T3.embed(Hh.var(v), 2) for v in Hh.variables}],
        T3.algebra,
        "coproduct (x) id",
    )
    d_right = T2.leg_map_from(
        [{v: T3.embed(Hh.var(v), 0) for v in Hh.variables}, {v: shift12(delta(Hh.var(v))) for v in Hh.variables}],
        T3.algebra,
        "id (x) coproduct",
    )
    fails = []
    for g in Hh.variables:
        dg = delta(Hh.var(g))
        lhs, rhs = d_left(dg), d_right(dg)
        if lhs != rhs:
            fails.append((g, f"{T3.format(lhs)} != {T3.format(rhs)}"))
    rep.add("coassociativity", fails)

    se = s.compose(eps)
    te = t.compose(eps)
    ident = {v: Hh.var(v) for v in Hh.variables}
    left_counit = T2.leg_map_from([se.images, ident], Hh, "eps (x) id")
    right_counit = T2.leg_map_from([ident, te.images], Hh, "id (x) eps")
    for name, m in (("left_counit", left_counit), ("right_counit", right_counit)):
        fails = []
        for g in Hh.variables:
            got = m(delta(Hh.var(g)))
            if got != Hh.var(g):
                fails.append((g, f"{got} != {g}"))
        rep.add(name, fails)

    for name, m in (("counit_source", s), ("counit_target", t)):
        fails = []
        for a in A.variables:
            got = eps(m(A.var(a)))
            if got != A.var(a):
                fails.append((a, f"{got} != {a}"))
        rep.add(name, fails)

    S = H.antipode
    if S is None:
        for name in AXIOMS[7:]:
            rep.results.append(AxiomResult(name, False, None, "no antipode"))
        return rep

    rep.add("antipode_well_defined", [(r, img) for r, img in S.well_defined_failures()])
    for name, m, other in (("antipode_source", s, t), ("antipode_target", t, s)):
        fails = []
        for a in A.variables:
            got = S(m(A.var(a)))
            want = other(A.var(a))
            if got != want:
                fails.append((a, f"{got} != {want}"))
        rep.add(name, fails)
    fails = []
    for g in Hh.variables:
        got = S(S(Hh.var(g)))
        if got != Hh.var(g):
            fails.append((g, f"{got} != {g}"))
    rep.add("antipode_involution", fails)

    law1 = T2.leg_map_from([S.images, ident], Hh, "S (x) id")
    law2 = T2.leg_map_from([ident, S.images], Hh, "id (x) S")
    for name, m, target in (("antipode_left", law1, te), ("antipode_right", law2, se)):
        fails = []
        for g in Hh.variables:
            got = m(delta(Hh.var(g)))
            want = target.images[g]
            if got != want:
                fails.append((g, f"{got} != {want}"))
        rep.add(name, fails)

    # flip(S (x) S) Delta = Delta S
    flip = T2.leg_map_from(
        [{v: T2.embed(S.images[v], 1) for v in Hh.variables}, {v: T2.embed(S.images[v], 0) for v in Hh.variables}],
        T2.algebra,
        "flip(S (x) S)",
    )
    fails = []
    for g in Hh.variables:
        lhs = flip(delta(Hh.var(g)))
        rhs = delta(S.images[g])
        if lhs != rhs:
            fails.append((g, f"{T2.format(lhs)} != {T2.format(rhs)}"))
    rep.add("antipode_anticomultiplicative", fails)
    return rep


def derive_antipode(H, order=None):
    """Solve S(h1)h2 = t(eps(h)) and h1 S(h2) = s(eps(h)) generator by generator."""
    A, Hh = H.base, H.total
    gens = list(order) if order is not None else list(Hh.variables)
    solved = {}
    for a in A.variables:
        sa, ta = H.source.images[a], H.target.images[a]
        for img, other in ((sa, ta), (ta, sa)):
            for g in Hh.variables:
                if img == Hh.var(g) and g not in solved:
                    solved[g] = other
    aux = PresentedAlgebra(
        f"{Hh.name}[Z]", list(Hh.variables) + ["Z__"], [P.embed(p, list(range(Hh.nvars)), Hh.nvars + 1) for p in Hh.basis.polys]
    )
    n = Hh.nvars
    zi = n
    pos = list(range(n))
    progress = True
    while progress and len(solved) < n:
        progress = False
        for g in gens:
            if g in solved:
                continue
            nf = Hh.var(g)
            if nf.terms != P.var(Hh.index[g], n):
                # g is a combination of other generators in H
                used = {Hh.variables[i] for m in nf.terms for i, k in enumerate(m) if k}
                if used <= set(solved):
                    S_part = AlgebraMap(Hh, Hh, {v: solved.get(v, Hh.var(v)) for v in Hh.variables}, check=False)
                    solved[g] = S_part(nf)
                    progress = True
                continue
            for law in (0, 1):
                value = _solve_one(H, aux, g, law, solved, pos, zi)
                if value is not None:
                    solved[g] = value
                    progress = True
                    break
    missing = [g for g in gens if g not in solved]
    if missing:
        raise NonTriangularSystem(missing[0], "no antipode law is linear in it with a unit coefficient")
    S = AlgebraMap(Hh, Hh, solved, check=False, name="antipode")
    bad = S.well_defined_failures()
    if bad:
        raise InconsistentConstraints(f"solved antipode does not respect relation {bad[0][0]}")
    return S


def _solve_one(H, aux, g, law, solved, pos, zi):
    Hh = H.total
    N = aux.nvars
    total = {}
    for c, legs in H.T2.split_terms(H.coproduct(Hh.var(g))):
        unknown_leg, known_leg = (legs[0], legs[1]) if law == 0 else (legs[1], legs[0])
        (um, _), = unknown_leg.items()
        term = P.const(c, N)
        for i, k in enumerate(um):
            if not k:
                continue
            v = Hh.variables[i]
            if v == g:
                f = P.power(P.var(zi, N), k, N)
            elif v in solved:
                f = P.power(P.embed(solved[v].terms, pos, N), k, N)
            else:
                return None
            term = aux.reduce(P.mul(term, f))
        term = aux.reduce(P.mul(term, P.embed(known_leg, pos, N)))
        total = P.add(total, term)
    eps_g = H.counit.images[g]
    target = H.target(eps_g) if law == 0 else H.source(eps_g)
    eq = aux.reduce(P.sub(total, P.embed(target.terms, pos, N)))
    c1, c0 = {}, {}
    for m, c in eq.items():
        k = m[zi]
        if k == 0:
            c0[m[:zi]] = c
        elif k == 1:
            c1[m[:zi]] = c
        else:
            return None
    if not c1:
        if c0:
            raise InconsistentConstraints(f"antipode law {law + 1} fails for {g} independently of S({g})")
        return None
    inv = Hh.inverse(RingElement(Hh, Hh.reduce(c1)))
    if inv is None:
        return None
    return -(RingElement(Hh, Hh.reduce(c0)) * inv)


# presentation files

SECTIONS = ("base", "total", "source", "target", "counit", "coproduct", "antipode")


def parse_presentation(text, name=None):
    """Read the sectioned text format into a HopfAlgebroid."""
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if current not in SECTIONS:
                raise PresentationError(f"line {lineno}: unknown section [{current}]")
            sections.setdefault(current, [])
            continue
        if current is None:
            raise PresentationError(f"line {lineno}: entry outside of a section")
        if "=" not in line:
            raise PresentationError(f"line {lineno}: expected 'name = expr'")
        key, value = (s.strip() for s in line.split("=", 1))
        sections[current].append((lineno, key, value))
    for sec in SECTIONS[:-1]:
        if sec not in sections:
            raise PresentationError(f"missing section [{sec}]")
    A = _algebra_section(sections["base"], "A")
    Hh = _algebra_section(sections["total"], "H")
    maps = {}
    for sec in ("source", "target", "counit"):
        maps[sec] = {k: v for _, k, v in sections[sec]}
    cop = {k: v for _, k, v in sections["coproduct"]}
    anti = {k: v for _, k, v in sections.get("antipode", [])} or None
    return HopfAlgebroid(A, Hh, maps["source"], maps["target"], maps["counit"], cop, anti, name=name or Hh.name)


def _algebra_section(entries, default_name):
    name = default_name
    variables, relations, pairs = [], [], []
    for lineno, key, value in entries:
        if key == "name":
            name = value
        elif key == "variables":
            variables = [v.strip() for v in value.split(",") if v.strip()]
        elif key == "relation":
            relations.append(value)
        elif key == "inverse":
            parts = [v.strip() for v in value.split(",")]
            if len(parts) != 2:
                raise PresentationError(f"line {lineno}: inverse expects 'v, v_inv'")
            pairs.append(tuple(parts))
        else:
            raise PresentationError(f"line {lineno}: unknown key {key!r}")
    return PresentedAlgebra(name, variables, relations, pairs)


def format_presentation(H):
    """Inverse of parse_presentation."""
    out = []
    for title, alg in (("base", H.base), ("total", H.total)):
        out.append(f"[{title}]")
        out.append(f"name = {alg.name}")
        out.append("variables = " + ", ".join(alg.variables))
        for v, w in alg.inverse_pairs:
            out.append(f"inverse = {v}, {w}")
        pair_rels = []
        for v, w in alg.inverse_pairs:
            pair_rels.append(P.sub(P.mul(P.var(alg.index[v], alg.nvars), P.var(alg.index[w], alg.nvars)), P.const(1, alg.nvars)))
        for r in alg.relations:
            if r not in pair_rels:
                out.append(f"relation = {alg.format(r)}")
        out.append("")
    for title, m in (("source", H.source), ("target", H.target), ("counit", H.counit)):
        out.append(f"[{title}]")
        for v in m.domain.variables:
            out.append(f"{v} = {m.images[v]}")
        out.append("")
    out.append("[coproduct]")
    for v in H.total.variables:
        out.append(f"{v} = {H.T2.format(H.coproducts[v])}")
    if H.antipode is not None:
        out.append("")
        out.append("[antipode]")
        for v in H.total.variables:
            out.append(f"{v} = {H.antipode.images[v]}")
    return "\n".join(out) + "\n"
