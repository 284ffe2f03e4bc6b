"""Finitely presented commutative algebras, their elements and algebra maps."""

from fractions import Fraction

from . import poly as P
from .groebner import Basis
from .parser import (
    ParseError,
    UnknownVariableError,
    evaluate,
    format_coefficient_term,
    join_terms,
    parse_ast,
)


class PresentationError(ValueError):
    pass


class MapNotWellDefined(ValueError):
    def __init__(self, relation, image):
        super().__init__(f"relation {relation} maps to {image}, not 0")
        self.relation = relation
        self.image = image


class _PolyEnv:
    """Evaluates parse trees to raw polynomials over a fixed variable list."""

    def __init__(self, index, n):
        self.index = index
        self.n = n

    def num(self, c):
        return _Raw(P.const(c, self.n), self.n)

    def var(self, name, pos):
        i = self.index.get(name)
        if i is None:
            raise UnknownVariableError(name, pos)
        return _Raw(P.var(i, self.n), self.n)

    def div(self, a, b, pos):
        if not P.is_constant(b.p) or not b.p:
            raise ParseError("division only by a nonzero constant", pos)
        return _Raw(P.scale(a.p, 1 / P.constant_value(b.p)), self.n)

    def tensor(self, legs, pos):
        raise ParseError("tensor product not allowed here", pos)

    def call(self, name, arg, pos):
        raise ParseError(f"unexpected call {name}(...)", pos)


class _Raw:
    __slots__ = ("p", "n")

    def __init__(self, p, n):
        self.p = p
        self.n = n

    def __add__(self, o):
        return _Raw(P.add(self.p, o.p), self.n)

    def __sub__(self, o):
        return _Raw(P.sub(self.p, o.p), self.n)

    def __mul__(self, o):
        return _Raw(P.mul(self.p, o.p), self.n)

    def __neg__(self):
        return _Raw(P.scale(self.p, -1), self.n)


def parse_poly(text, variables):
    """Parse text into a raw polynomial over the given variable names."""
    index = {v: i for i, v in enumerate(variables)}
    return evaluate(parse_ast(text), _PolyEnv(index, len(variables))).p


def format_mono(m, variables):
    parts = []
    for v, e in zip(variables, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(p, variables, order=None):
    if order is None:
        order = P.MonomialOrder(len(variables))
    pairs = [format_coefficient_term(c, format_mono(m, variables)) for m, c in order.sorted_terms(p)]
    return join_terms(pairs)


class PresentedAlgebra:
    """Q[variables] / (relations), with designated inverse pairs."""

    def __init__(self, name, variables, relations=(), inverse_pairs=(), blocks=None):
        self.name = name
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise PresentationError(f"{name}: repeated variable names")
        self.nvars = len(self.variables)
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.inverse_pairs = tuple(tuple(p) for p in inverse_pairs)
        self.partner = {}
        for v, w in self.inverse_pairs:
            if v not in self.index or w not in self.index:
                raise PresentationError(f"{name}: inverse pair ({v}, {w}) uses unknown variables")
            self.partner[v] = w
            self.partner[w] = v
        self.order = P.MonomialOrder(self.nvars, blocks)
        rels = []
        for r in relations:
            p = parse_poly(r, self.variables) if isinstance(r, str) else dict(r)
            if not p:
                raise PresentationError(f"{name}: relation {r!r} is zero")
            rels.append(p)
        for v, w in self.inverse_pairs:
            rel = P.sub(P.mul(P.var(self.index[v], self.nvars), P.var(self.index[w], self.nvars)), P.const(1, self.nvars))
            if rel not in rels:
                rels.append(rel)
        self.relations = tuple(rels)
        self.basis = Basis(rels, self.order)
        if self.basis.is_unit_ideal:
            raise PresentationError(f"{name}: relations generate the unit ideal")
        self._pair_vars = set(self.partner)
        used = set()
        for p in self.relations:
            if self._is_inverse_relation(p):
                continue
            for m in p:
                used.update(i for i, e in enumerate(m) if e)
        self._constrained = frozenset(self.variables[i] for i in used)

    def _is_inverse_relation(self, p):
        for v, w in self.inverse_pairs:
            rel = P.sub(P.mul(P.var(self.index[v], self.nvars), P.var(self.index[w], self.nvars)), P.const(1, self.nvars))
            if p == rel:
                return True
        return False

    def __repr__(self):
        return f"PresentedAlgebra({self.name!r}, {list(self.variables)})"

    # element construction

    def reduce(self, p):
        return self.basis.reduce(p)

    def element(self, p):
        return RingElement(self, self.reduce(p))

    def const(self, c):
        return RingElement(self, P.const(c, self.nvars))

    def zero(self):
        return RingElement(self, {})

    def one(self):
        return self.const(1)

    def var(self, name):
        if name not in self.index:
            raise UnknownVariableError(name)
        return self.element(P.var(self.index[name], self.nvars))

    def gens(self):
        return [self.var(v) for v in self.variables]

    def parse(self, text):
        return self.element(parse_poly(text, self.variables))

    def coerce(self, x):
        if isinstance(x, RingElement):
            if x.ring is not self:
                raise ValueError(f"element of {x.ring.name} used in {self.name}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction)):
            return self.const(x)
        if isinstance(x, dict):
            return self.element(x)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def normal_form(self, e):
        return self.element(e.terms if isinstance(e, RingElement) else e)

    def format(self, p):
        return format_poly(p, self.variables, self.order)

    def is_polynomial_ring(self):
        return not self.relations

    def constrained_variables(self):
        """Variables occurring in some relation other than an inverse pair."""
        return self._constrained

    def inverse(self, e):
        """Inverse of a unit of the form c * (monomial in inverse-paired variables), else None."""
        e = self.coerce(e)
        if len(e.terms) != 1:
            return None
        (m, c), = e.terms.items()
        inv = [0] * self.nvars
        for i, k in enumerate(m):
            if not k:
                continue
            v = self.variables[i]
            w = self.partner.get(v)
            if w is None:
                return None
            inv[self.index[w]] += k
        cand = self.element({tuple(inv): 1 / c})
        if (cand * e).terms != P.const(1, self.nvars):
            return None
        return cand

    def derive(self, e, name):
        """Formal partial derivative; inverse pairs are differentiated consistently."""
        e = self.coerce(e)
        if name not in self.index:
            raise UnknownVariableError(name)
        if name in self._constrained:
            raise PresentationError(f"{name} occurs in a relation of {self.name}; derivative undefined")
        i = self.index[name]
        d = P.derivative(e.terms, i)
        w = self.partner.get(name)
        if w is not None:
            j = self.index[w]
            # d(w)/d(v) = -w^2 since v*w = 1
            dw = P.derivative(e.terms, j)
            d = P.sub(d, P.mul(dw, P.power(P.var(j, self.nvars), 2, self.nvars)))
        return self.element(d)

    def partial(self, e, name):
        """Formal partial derivative of the stored representative (no consistency check)."""
        e = self.coerce(e)
        return P.derivative(e.terms, self.index[name])


def derive_poly(e, var):
    return e.ring.derive(e, var)


def normal_form(e, ring):
    return ring.normal_form(e)


def parse_element(text, ring):
    return ring.parse(text)


class RingElement:
    """An element of a PresentedAlgebra stored in normal form."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _other(self, o):
        if isinstance(o, RingElement):
            if o.ring is not self.ring:
                raise ValueError(f"mixing elements of {self.ring.name} and {o.ring.name}")
            return o.terms
        if isinstance(o, (int, Fraction)):
            return P.const(o, self.ring.nvars)
        return NotImplemented

    def __add__(self, o):
        q = self._other(o)
        if q is NotImplemented:
            return q
        return RingElement(self.ring, P.add(self.terms, q))

    __radd__ = __add__

    def __sub__(self, o):
        q = self._other(o)
        if q is NotImplemented:
            return q
        return RingElement(self.ring, P.sub(self.terms, q))

    def __rsub__(self, o):
        q = self._other(o)
        if q is NotImplemented:
            return q
        return RingElement(self.ring, P.sub(q, self.terms))

    def __neg__(self):
        return RingElement(self.ring, P.scale(self.terms, -1))

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return RingElement(self.ring, P.scale(self.terms, o))
        q = self._other(o)
        if q is NotImplemented:
            return q
        return self.ring.element(P.mul(self.terms, q))

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return RingElement(self.ring, P.scale(self.terms, Fraction(1) / Fraction(c)))
        return NotImplemented

    def __pow__(self, k):
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, o):
        if isinstance(o, RingElement):
            return self.ring is o.ring and self.terms == o.terms
        if isinstance(o, (int, Fraction)):
            return self.terms == P.const(o, self.ring.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.ring), frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return P.is_constant(self.terms)

    def constant(self):
        return P.constant_value(self.terms)

    def degree(self):
        return max((sum(m) for m in self.terms), default=0)

    def __str__(self):
        return self.ring.format(self.terms)

    def __repr__(self):
        return f"<{self.ring.name}: {self}>"


class AlgebraMap:
    """An algebra map given by images of the domain generators."""

    def __init__(self, domain, codomain, images, check=True, name=None):
        self.domain = domain
        self.codomain = codomain
        self.name = name or f"{domain.name}->{codomain.name}"
        imgs = {}
        for v in domain.variables:
            if v not in images:
                raise PresentationError(f"{self.name}: no image for generator {v}")
            imgs[v] = codomain.coerce(images[v])
        extra = set(images) - set(domain.variables)
        if extra:
            raise PresentationError(f"{self.name}: images given for unknown generators {sorted(extra)}")
        self.images = imgs
        self._img = [imgs[v].terms for v in domain.variables]
        self._powers = {}
        if check:
            self.check()

    def check(self):
        for r in self.domain.relations:
            img = self.apply_raw(r)
            if img:
                raise MapNotWellDefined(self.domain.format(r), self.codomain.format(img))

    def well_defined_failures(self):
        bad = []
        for r in self.domain.relations:
            img = self.apply_raw(r)
            if img:
                bad.append((self.domain.format(r), self.codomain.format(img)))
        return bad

    def _power(self, i, k):
        key = (i, k)
        p = self._powers.get(key)
        if p is None:
            if k == 1:
                p = self._img[i]
            else:
                p = self.codomain.reduce(P.mul(self._power(i, k - 1), self._img[i]))
            self._powers[key] = p
        return p

    def apply_raw(self, p):
        n = self.codomain.nvars
        total = {}
        for m, c in p.items():
            term = P.const(c, n)
            for i, k in enumerate(m):
                if k:
                    term = self.codomain.reduce(P.mul(term, self._power(i, k)))
                    if not term:
                        break
            total = P.add(total, term)
        return self.codomain.reduce(total)

    def __call__(self, e):
        if isinstance(e, str):
            e = self.domain.parse(e)
        elif not isinstance(e, RingElement):
            e = self.domain.coerce(e)
        if e.ring is not self.domain:
            raise ValueError(f"{self.name} applied to an element of {e.ring.name}")
        return RingElement(self.codomain, self.apply_raw(e.terms))

    def compose(self, inner, check=False):
        """self after inner."""
        return AlgebraMap(inner.domain, self.codomain, {v: self(inner.images[v]) for v in inner.domain.variables}, check=check)

    def __eq__(self, o):
        return (
            isinstance(o, AlgebraMap)
            and o.domain is self.domain
            and o.codomain is self.codomain
            and all(self.images[v] == o.images[v] for v in self.domain.variables)
        )

    __hash__ = object.__hash__

    def __repr__(self):
        body = ", ".join(f"{v} -> {self.images[v]}" for v in self.domain.variables)
        return f"AlgebraMap({self.name}: {body})"


def apply_map(f, e):
    return f(e)


def identity_map(ring):
    return AlgebraMap(ring, ring, {v: ring.var(v) for v in ring.variables}, check=False, name=f"id_{ring.name}")
