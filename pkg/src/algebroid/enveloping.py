"""The universal enveloping Hopf algebroid V_A(L) in PBW normal form.

An element is a finite sum of nondecreasing words in the ordered basis of L,
each followed by a coefficient from A: u = sum_w w.iA(c_w).  Moving
coefficients to the right uses

    iA(a).e_i = e_i.iA(a) - iA(omega(e_i)(a))

and reordering letters uses

    e_j.e_i = e_i.e_j + sum_k e_k.iA(c^k_ji)      (j > i).

Tensors over A are stored the same way, one word per leg and a single
coefficient at the far right.  A joint between two legs is "RR" when a
coefficient may jump from the end of one leg to the end of the next
(the Takeuchi side, U_A (x) U_A) and "RL" when it jumps to the front of the
next leg (the translation side, U_A (x) _AU).
"""

import random
from fractions import Fraction

from .caps import check_degree
from .hopf_algebroid import AxiomReport
from .lie_rinehart import LieRinehartPresentation, check_lie_rinehart
from .symbolic_core import RingElement
from .symbolic_core import linalg
from .symbolic_core.algebra import _PolyEnv
from .symbolic_core.parser import ParseError, UnknownVariableError, evaluate, parse_ast


class EnvelopingError(ValueError):
    pass


def _add_into(d, key, c):
    cur = d.get(key)
    new = c if cur is None else cur + c
    if new:
        d[key] = new
    else:
        d.pop(key, None)


class NCElement:
    """sum_w w.iA(c_w) with w nondecreasing and c_w a nonzero element of A."""

    __slots__ = ("U", "terms")

    def __init__(self, U, terms):
        self.U = U
        self.terms = {w: c for w, c in terms.items() if c}

    def _coerce(self, o):
        return self.U.coerce(o)

    def __add__(self, o):
        o = self._coerce(o)
        d = dict(self.terms)
        for w, c in o.terms.items():
            _add_into(d, w, c)
        return NCElement(self.U, d)

    __radd__ = __add__

    def __neg__(self):
        return NCElement(self.U, {w: -c for w, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return NCElement(self.U, {w: c * o for w, c in self.terms.items()})
        return self.U.mul(self, self._coerce(o))

    def __rmul__(self, o):
        return self._coerce(o) * self

    def __pow__(self, k):
        out = self.U.one()
        for _ in range(k):
            out = out * self
        return out

    def times_coefficient(self, a):
        """Right multiplication by iA(a)."""
        a = self.U.base.coerce(a)
        return NCElement(self.U, {w: c * a for w, c in self.terms.items()})

    def coefficient(self, word):
        return self.terms.get(tuple(word), self.U.base.zero())

    def degree(self):
        return max((len(w) for w in self.terms), default=0)

    def __eq__(self, o):
        if not isinstance(o, NCElement):
            try:
                o = self._coerce(o)
            except (TypeError, ValueError):
                return NotImplemented
        return self.U is o.U and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return self.U.format(self)

    def __repr__(self):
        return f"<{self.U.name}: {self}>"


class NCTensor:
    """An element of a tensor power of U over A in leg normal form."""

    __slots__ = ("U", "joints", "terms")

    def __init__(self, U, joints, terms):
        self.U = U
        self.joints = tuple(joints)
        self.terms = {k: c for k, c in terms.items() if c}

    @property
    def legs(self):
        return len(self.joints) + 1

    def _check(self, o):
        if not isinstance(o, NCTensor) or o.joints != self.joints:
            raise ValueError("tensors live in different products")

    def __add__(self, o):
        self._check(o)
        d = dict(self.terms)
        for k, c in o.terms.items():
            _add_into(d, k, c)
        return NCTensor(self.U, self.joints, d)

    def __neg__(self):
        return NCTensor(self.U, self.joints, {k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __eq__(self, o):
        return isinstance(o, NCTensor) and self.joints == o.joints and self.terms == o.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        U = self.U
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (sum(map(len, k)), k)):
            c = self.terms[key]
            legs = [U.format_word(w) for w in key]
            legs[-1] = _with_coefficient(legs[-1], c)
            parts.append(" (x) ".join(legs))
        return " + ".join(parts)


def _with_coefficient(word_text, c):
    if c == 1:
        return word_text
    if word_text == "1":
        return f"iA({c})"
    return f"{word_text}.iA({c})"


class CocommHopfAlgebroid:
    """V_A(L) for a verified Lie-Rinehart algebra L free on an ordered basis."""

    def __init__(self, L, name=None):
        self.L = L
        self.base = L.base
        self.basis = tuple(L.basis)
        self.rank = L.rank
        self.name = name or f"V({L.name})"
        self._struct = {k: tuple(v) for k, v in L.structure.items()}
        self._omega = {}
        self._letter_memo = {}
        self._coeff_memo = {}
        self._translation_memo = {}
        self._delta_memo = {}

    def __repr__(self):
        return f"CocommHopfAlgebroid({self.name}, rank {self.rank})"

    # construction of elements

    def zero(self):
        return NCElement(self, {})

    def one(self):
        return NCElement(self, {(): self.base.one()})

    def letter(self, i):
        if isinstance(i, str):
            i = self.basis.index(i)
        return NCElement(self, {(i,): self.base.one()})

    def word(self, *letters):
        out = self.one()
        for i in letters:
            out = out * self.letter(i)
        return out

    def iota_A(self, a):
        return NCElement(self, {(): self.base.coerce(a)})

    def iota_L(self, X):
        """iota_L(sum_i a_i e_i) = sum_i e_i.iA(a_i)."""
        return NCElement(self, {(i,): self.base.coerce(a) for i, a in enumerate(X) if a})

    def coerce(self, o):
        if isinstance(o, NCElement):
            if o.U is not self:
                raise ValueError("element of a different enveloping algebroid")
            return o
        if isinstance(o, (int, Fraction)):
            return self.iota_A(self.base.coerce(o))
        if isinstance(o, RingElement) and o.ring is self.base:
            return self.iota_A(o)
        if isinstance(o, str):
            return self.parse(o)
        raise TypeError(f"cannot read {o!r} as an element of {self.name}")

    def parse(self, text):
        return pbw_normalize(self, text)

    def omega(self, i, a):
        key = (i, a)
        val = self._omega.get(key)
        if val is None:
            val = self.L.apply_anchor(self.L.e(i), a)
            self._omega[key] = val
        return val

    # normal form engine, on raw term dictionaries

    def _letter_word(self, i, w):
        """e_i.w for a PBW word w."""
        key = (i, w)
        out = self._letter_memo.get(key)
        if out is not None:
            return out
        one = self.base.one()
        if not w or i <= w[0]:
            out = {(i,) + w: one}
        else:
            j, rest = w[0], w[1:]
            out = self._letter_terms(j, self._letter_word(i, rest))
            for k, c in enumerate(self._struct[(i, j)]):
                if c:
                    for w2, c2 in self._letter_terms(k, self._coeff_word(c, rest)).items():
                        _add_into(out, w2, c2)
        self._letter_memo[key] = out
        return out

    def _letter_terms(self, i, terms):
        out = {}
        for w, c in terms.items():
            for w2, c2 in self._letter_word(i, w).items():
                _add_into(out, w2, c2 * c)
        return out

    def _coeff_word(self, a, w):
        """iA(a).w for a PBW word w."""
        if not w or a.is_constant():
            return {w: a} if a else {}
        key = (a, w)
        out = self._coeff_memo.get(key)
        if out is not None:
            return out
        i, rest = w[0], w[1:]
        out = self._letter_terms(i, self._coeff_word(a, rest))
        d = self.omega(i, a)
        if d:
            for w2, c2 in self._coeff_word(d, rest).items():
                _add_into(out, w2, -c2)
        self._coeff_memo[key] = out
        return out

    def _coeff_terms(self, a, terms):
        out = {}
        for w, c in terms.items():
            for w2, c2 in self._coeff_word(a, w).items():
                _add_into(out, w2, c2 * c)
        return out

    def _word_terms(self, w, terms):
        for i in reversed(w):
            terms = self._letter_terms(i, terms)
        return terms

    def _mul_terms(self, x, y):
        out = {}
        for w, c in x.items():
            for w2, c2 in self._word_terms(w, self._coeff_terms(c, y)).items():
                _add_into(out, w2, c2)
        return out

    def mul(self, x, y):
        return NCElement(self, self._mul_terms(x.terms, y.terms))

    def from_letters(self, letters):
        """Product of a sequence of ('L', i) and ('A', a) letters."""
        out = self.one()
        for kind, val in letters:
            out = out * (self.letter(val) if kind == "L" else self.iota_A(val))
        return out

    # structure maps

    def counit(self, u):
        return self.coerce(u).coefficient(())

    def coproduct(self, u):
        """Delta(u) in U_A (x)_A U_A, built from Delta(e_i) = e_i (x) 1 + 1 (x) e_i."""
        u = self.coerce(u)
        total = {}
        for w, c in u.terms.items():
            for key, d in self._delta_word(w).items():
                _add_into(total, key, d * c)
        return NCTensor(self, ("RR",), total)

    def _delta_word(self, w):
        out = self._delta_memo.get(w)
        if out is not None:
            return out
        if not w:
            out = {((), ()): self.base.one()}
        else:
            i, rest = w[0], w[1:]
            out = {}
            # a coefficient met on the left leg jumps to the far right (RR)
            for (x, y), d in self._delta_word(rest).items():
                for x2, c2 in self._letter_word(i, x).items():
                    _add_into(out, (x2, y), c2 * d)
                for y2, c2 in self._letter_word(i, y).items():
                    _add_into(out, (x, y2), c2 * d)
        self._delta_memo[w] = out
        return out

    def translation(self, u):
        """u_- (x) u_+ in U_A (x)_A _AU."""
        u = self.coerce(u)
        total = {}
        for w, c in u.terms.items():
            for key, d in self._translation_word(w).items():
                _add_into(total, key, d * c)
        return NCTensor(self, ("RL",), total)

    def _translation_word(self, w):
        out = self._translation_memo.get(w)
        if out is not None:
            return out
        if not w:
            out = {((), ()): self.base.one()}
        else:
            # (e_i v)_- (x) (e_i v)_+ = v_- (x) e_i v_+  -  v_- e_i (x) v_+
            i, rest = w[0], w[1:]
            out = {}
            for (p, q), d in self._translation_word(rest).items():
                for q2, c2 in self._letter_word(i, q).items():
                    _add_into(out, (p, q2), c2 * d)
                for p2, c2 in self._word_terms(p, {(i,): self.base.one()}).items():
                    for q2, c3 in self._coeff_word(c2, q).items():
                        _add_into(out, (p2, q2), -c3 * d)
        self._translation_memo[w] = out
        return out

    def tensor(self, legs, joints):
        """Normal form of legs[0] (x) legs[1] (x) ... with the given joints."""
        legs = [self.coerce(x) for x in legs]
        if len(joints) != len(legs) - 1:
            raise ValueError("need one joint between each pair of legs")
        partial = {(): self.base.one()}
        for k, leg in enumerate(legs):
            new = {}
            for prefix, a in partial.items():
                if k == 0 or joints[k - 1] == "RR":
                    terms = {w: c * a for w, c in leg.terms.items()}
                else:
                    terms = self._coeff_terms(a, leg.terms)
                for w, c in terms.items():
                    _add_into(new, prefix + (w,), c)
            partial = new
        return NCTensor(self, joints, partial)

    # PBW bookkeeping

    def pbw_words(self, max_degree):
        words = [()]
        frontier = [()]
        for _ in range(max_degree):
            nxt = []
            for w in frontier:
                start = w[-1] if w else 0
                for i in range(start, self.rank):
                    nxt.append(w + (i,))
            words.extend(nxt)
            frontier = nxt
        return words

    def format_word(self, w):
        if not w:
            return "1"
        parts = []
        k = 0
        while k < len(w):
            j = k
            while j < len(w) and w[j] == w[k]:
                j += 1
            name = self.basis[w[k]]
            parts.append(name if j - k == 1 else f"{name}^{j - k}")
            k = j
        return ".".join(parts)

    def format(self, u):
        if not u.terms:
            return "0"
        parts = []
        for w in sorted(u.terms, key=lambda w: (len(w), w)):
            parts.append(_with_coefficient(self.format_word(w), u.terms[w]))
        return " + ".join(parts)

    def monomial(self, w, c):
        return NCElement(self, {tuple(w): self.base.coerce(c)})


def build_enveloping(L, check=True):
    if check:
        report = check_lie_rinehart(L)
        if not report.passed:
            f = report.failures()[0]
            raise EnvelopingError(f"{L.name} is not a Lie-Rinehart algebra: {f.name} fails at {f.counterexample}")
    return CocommHopfAlgebroid(L)


# raw noncommutative expressions


class _RawNC:
    """Formal sums of letter sequences with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {k: c for k, c in terms.items() if c}

    def __add__(self, o):
        d = dict(self.terms)
        for k, c in o.terms.items():
            d[k] = d.get(k, 0) + c
        return _RawNC(d)

    def __neg__(self):
        return _RawNC({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        d = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = k1 + k2
                d[k] = d.get(k, 0) + c1 * c2
        return _RawNC(d)


class _NCEnv:
    def __init__(self, U):
        self.U = U
        self.A = U.base

    def num(self, c):
        return _RawNC({(): Fraction(c)})

    def var(self, name, pos):
        if name in self.U.basis:
            return _RawNC({(("L", self.U.basis.index(name)),): Fraction(1)})
        if name in self.A.index:
            return _RawNC({(("A", self.A.var(name)),): Fraction(1)})
        raise UnknownVariableError(name, pos)

    def div(self, a, b, pos):
        if set(b.terms) != {()}:
            raise ParseError("division only by a nonzero constant", pos)
        return _RawNC({k: c / b.terms[()] for k, c in a.terms.items()})

    def tensor(self, legs, pos):
        raise ParseError("tensor product not allowed here", pos)

    def call(self, name, arg, pos):
        if name != "iA":
            raise ParseError(f"unknown function {name}", pos)
        raw = evaluate(arg, _PolyEnv(self.A.index, self.A.nvars))
        a = self.A.element(raw.p)
        return _RawNC({(("A", a),): Fraction(1)}) if a else _RawNC({})


def parse_raw(U, text):
    """Parse text to a formal sum of letter sequences (no rewriting)."""
    return evaluate(parse_ast(text, noncommutative=True), _NCEnv(U)).terms


def pbw_normalize(U, expr, rng=None):
    """PBW normal form of a raw expression.

    expr is text, a letter sequence, or a dict from letter sequences to
    rational coefficients.  With rng given, the rewrite rules are applied
    one at a time at randomly chosen positions instead of by the memoized
    left-to-right engine.
    """
    raw = _as_raw(U, expr)
    if rng is not None:
        return rewrite_normalize(U, raw, rng)
    out = U.zero()
    for letters, c in raw.items():
        out = out + U.from_letters(letters) * c
    return out


def _as_raw(U, expr):
    if isinstance(expr, str):
        return parse_raw(U, expr)
    if isinstance(expr, dict):
        return expr
    return {tuple(expr): Fraction(1)}


def _redexes(U, word):
    out = []
    for p, (kind, val) in enumerate(word):
        if kind == "A" and val.is_constant():
            out.append(("const", p))
    for p in range(len(word) - 1):
        (k1, v1), (k2, v2) = word[p], word[p + 1]
        if k1 == "A" and k2 == "A":
            out.append(("AA", p))
        elif k1 == "A" and k2 == "L":
            out.append(("AL", p))
        elif k1 == "L" and k2 == "L" and v1 > v2:
            out.append(("LL", p))
    return out


def _rewrite_once(U, word, rule, p):
    """The rewritten terms of one rule application, as (letters, factor) pairs."""
    pre, post = word[:p], word[p + 2:]
    if rule == "const":
        c = word[p][1].constant()
        return [(word[:p] + word[p + 1:], c)] if c else []
    (_, v1), (_, v2) = word[p], word[p + 1]
    if rule == "AA":
        prod = v1 * v2
        return [(pre + (("A", prod),) + post, Fraction(1))] if prod else []
    if rule == "AL":
        out = [(pre + (("L", v2), ("A", v1)) + post, Fraction(1))]
        d = U.omega(v2, v1)
        if d:
            out.append((pre + (("A", d),) + post, Fraction(-1)))
        return out
    out = [(pre + (("L", v2), ("L", v1)) + post, Fraction(1))]
    for k, c in enumerate(U._struct[(v1, v2)]):
        if c:
            out.append((pre + (("L", k), ("A", c)) + post, Fraction(1)))
    return out


def rewrite_normalize(U, raw, rng, max_steps=200000):
    """Exhaustive one-rule-at-a-time rewriting in a random order."""
    state = {k: Fraction(c) for k, c in raw.items() if c}
    steps = 0
    while True:
        pending = [w for w in state if _redexes(U, w)]
        if not pending:
            break
        pending.sort(key=repr)
        word = rng.choice(pending)
        rule, p = rng.choice(_redexes(U, word))
        c = state.pop(word)
        for new, f in _rewrite_once(U, word, rule, p):
            val = state.get(new, 0) + c * f
            if val:
                state[new] = val
            else:
                state.pop(new, None)
        steps += 1
        if steps > max_steps:
            raise EnvelopingError("rewriting did not terminate within the step budget")
    terms = {}
    A = U.base
    for letters, c in state.items():
        word = tuple(v for k, v in letters if k == "L")
        coeff = [v for k, v in letters if k == "A"]
        a = coeff[0] if coeff else A.one()
        _add_into(terms, word, a * c)
    return NCElement(U, terms)


def random_letters(U, rng, degree=4, max_coefficients=2):
    """A random letter sequence with at most `degree` letters from L."""
    A = U.base
    letters = [("L", rng.randrange(U.rank)) for _ in range(rng.randint(0, degree))]
    pool = list(A.variables)
    if pool:
        for _ in range(rng.randint(0, max_coefficients)):
            a = A.var(rng.choice(pool)) + rng.randint(-2, 2)
            if rng.random() < 0.3:
                a = a * A.var(rng.choice(pool))
            letters.insert(rng.randint(0, len(letters)), ("A", a))
    return tuple(letters)


def random_element(U, rng, degree=3, terms=3):
    """A random element of degree at most `degree` with small coefficients."""
    A = U.base
    out = U.zero()
    for _ in range(terms):
        w = tuple(sorted(rng.randrange(U.rank) for _ in range(rng.randint(0, degree))))
        c = A.coerce(rng.randint(-3, 3) or 1)
        for x in A.variables:
            if rng.random() < 0.5:
                c = c + A.var(x) * rng.randint(-2, 2)
        out = out + U.monomial(w, c)
    return out


def confluence_failures(U, words=200, degree=4, seed=0):
    """Words whose normal form depends on the rewrite order."""
    rng = random.Random(seed)
    fails = []
    for _ in range(words):
        letters = random_letters(U, rng, degree)
        raw = {letters: Fraction(1)}
        a = rewrite_normalize(U, raw, random.Random(rng.random()))
        b = rewrite_normalize(U, raw, random.Random(rng.random()))
        c = pbw_normalize(U, letters)
        if not (a == b == c):
            fails.append((_format_letters(U, letters), f"{a} | {b} | {c}"))
    return fails


def _format_letters(U, letters):
    out = []
    for kind, val in letters:
        out.append(U.basis[val] if kind == "L" else f"iA({val})")
    return ".".join(out) or "1"


# identities of the translation map and the coproduct


def _tensor_sum(U, joints, pieces):
    total = NCTensor(U, joints, {})
    for legs in pieces:
        total = total + U.tensor(legs, joints)
    return total


def _elements_of(U, tensor):
    """Yield the legs of each normal-form term as NCElements."""
    for key, c in tensor.terms.items():
        legs = [U.monomial(w, 1) for w in key[:-1]]
        legs.append(U.monomial(key[-1], c))
        yield legs


def beta_identities(U, u, v, a):
    """Evaluate the nine translation-map identities on u, v in U and a in A.

    Returns {name: (lhs, rhs)}.
    """
    A = U.base
    a = A.coerce(a)
    ia = U.iota_A(a)
    T = U.translation
    D = U.coproduct
    one = U.one()
    out = {}

    out["beta1"] = (T(ia * u), _tensor_sum(U, ("RL",), [[p, ia * q] for p, q in _elements_of(U, T(u))]))
    out["beta2"] = (
        _tensor_sum(U, ("RL",), [[ia * p, q] for p, q in _elements_of(U, T(u))]),
        _tensor_sum(U, ("RL",), [[p, q * ia] for p, q in _elements_of(U, T(u))]),
    )
    lhs3 = NCTensor(U, ("RL",), {})
    for p, q in _elements_of(U, T(u)):
        for p2, q2 in _elements_of(U, T(v)):
            lhs3 = lhs3 + U.tensor([p2 * p, q * q2], ("RL",))
    out["beta3"] = (lhs3, T(u * v))
    out["beta4"] = (T(one), U.tensor([one, one], ("RL",)))

    j = ("RR", "RL")
    lhs5 = NCTensor(U, j, {})
    rhs5 = NCTensor(U, j, {})
    for p, q in _elements_of(U, T(u)):
        for p1, p2 in _elements_of(U, D(p)):
            lhs5 = lhs5 + U.tensor([p1, p2, q], j)
        for q1, q2 in _elements_of(U, T(q)):
            rhs5 = rhs5 + U.tensor([q1, p, q2], j)
    out["beta5"] = (lhs5, rhs5)

    j = ("RL", "RR")
    lhs6 = NCTensor(U, j, {})
    rhs6 = NCTensor(U, j, {})
    for p, q in _elements_of(U, T(u)):
        for q1, q2 in _elements_of(U, D(q)):
            lhs6 = lhs6 + U.tensor([p, q1, q2], j)
    for w1, w2 in _elements_of(U, D(u)):
        for p, q in _elements_of(U, T(w1)):
            rhs6 = rhs6 + U.tensor([p, q, w2], j)
    out["beta6"] = (lhs6, rhs6)

    lhs7 = U.zero()
    for p, q in _elements_of(U, T(u)):
        lhs7 = lhs7 + p * q
    out["beta7"] = (lhs7, U.iota_A(U.counit(u)))

    lhs8 = NCTensor(U, ("RL",), {})
    for p, q in _elements_of(U, T(u)):
        for p1, p2 in _elements_of(U, T(p)):
            lhs8 = lhs8 + U.tensor([p1, p2 * q], ("RL",))
    out["beta8"] = (lhs8, U.tensor([u, one], ("RL",)))

    lhs9 = NCTensor(U, ("RL",), {})
    for w1, w2 in _elements_of(U, D(u)):
        for p, q in _elements_of(U, T(w2)):
            lhs9 = lhs9 + U.tensor([w1 * p, q], ("RL",))
    out["beta9"] = (lhs9, U.tensor([one, u], ("RL",)))
    return out


def takeuchi_failures(U, tensor, gens=None):
    """A-generators a for which sum a u_i (x) v_i != sum u_i (x) a v_i."""
    A = U.base
    gens = list(A.variables) if gens is None else gens
    bad = []
    for x in gens:
        ia = U.iota_A(A.coerce(x))
        lhs = _tensor_sum(U, tensor.joints, [[ia * p, q] for p, q in _elements_of(U, tensor)])
        rhs = _tensor_sum(U, tensor.joints, [[p, ia * q] for p, q in _elements_of(U, tensor)])
        if lhs != rhs:
            bad.append((str(x), f"{lhs} != {rhs}"))
    return bad


def double_epsilon_holds(U, u, v):
    """eps(uv) = eps(eps(u) v)."""
    return U.counit(u * v) == U.counit(U.iota_A(U.counit(u)) * v)


def check_cocommutative(U, samples, pairs=None, base_points=None):
    """All identities on generators and on the given samples.

    samples are elements of U; pairs defaults to consecutive samples.
    Returns an AxiomReport with beta1..beta9, double_epsilon, takeuchi.
    """
    A = U.base
    gens = [U.letter(i) for i in range(U.rank)] + [U.iota_A(A.var(x)) for x in A.variables]
    elems = gens + list(samples)
    if pairs is None:
        pairs = [(elems[k], elems[(k + 1) % len(elems)]) for k in range(len(elems))]
    coeffs = [A.var(x) for x in A.variables] or [A.one()]
    if base_points:
        coeffs = [A.coerce(c) for c in base_points]
    beta_fail = {f"beta{k}": [] for k in range(1, 10)}
    eps_fail = []
    tak_fail = []
    for n, (u, v) in enumerate(pairs):
        a = coeffs[n % len(coeffs)]
        for name, (lhs, rhs) in beta_identities(U, u, v, a).items():
            if lhs != rhs:
                beta_fail[name].append((f"u={u}, v={v}, a={a}", f"{lhs} != {rhs}"))
        if not double_epsilon_holds(U, u, v):
            eps_fail.append((f"u={u}, v={v}", "eps(uv) != eps(eps(u)v)"))
        for label, bad in takeuchi_failures(U, U.coproduct(u)):
            tak_fail.append((f"Delta({u}), a={label}", bad))
    report = AxiomReport()
    for name, fails in beta_fail.items():
        report.add(name, fails)
    report.add("double_epsilon", eps_fail)
    report.add("takeuchi", tak_fail)
    return report


# primitive elements


def _defect(U, w):
    """Delta(w) - w (x) 1 - 1 (x) w as a dict of word pairs."""
    one = U.base.one()
    d = dict(U._delta_word(w))
    _add_into(d, (w, ()), -one)
    _add_into(d, ((), w), -one)
    return d


def primitives(U, max_degree=2, cap=None):
    """A Q-basis of primitive elements among PBW words of degree <= max_degree.

    Delta of a PBW word has rational coefficients, so the A-module of
    primitives is spanned over A by the rational solutions.  Each returned
    element has coefficient 1 on its own pivot word and 0 on the others'.
    """
    check_degree(max_degree, cap)
    words = [w for w in U.pbw_words(max_degree) if w]
    defects = [_defect(U, w) for w in words]
    rows_index = {}
    for d in defects:
        for key, c in d.items():
            if not c.is_constant():
                raise EnvelopingError("coproduct of a PBW word has a nonconstant coefficient")
            rows_index.setdefault(key, len(rows_index))
    rows = [[Fraction(0)] * len(words) for _ in rows_index]
    for col, d in enumerate(defects):
        for key, c in d.items():
            rows[rows_index[key]][col] = c.constant()
    kernel = linalg.nullspace(rows, len(words))
    if not kernel:
        return []
    reduced, pivots = linalg.rref(kernel, len(words))
    out = []
    for row in reduced[: len(pivots)]:
        out.append(NCElement(U, {words[k]: U.base.coerce(c) for k, c in enumerate(row) if c}))
    return out


def _pivot_word(p):
    return min(p.terms, key=lambda w: (len(w), w))


def primitive_lie_rinehart(U, prims):
    """The Lie-Rinehart structure on the span of the given primitives.

    The A-action is right multiplication, the bracket the commutator and the
    anchor X -> [a -> -eps(iA(a) X)].
    """
    A = U.base
    pivots = [_pivot_word(p) for p in prims]
    names = []
    for p, w in zip(prims, pivots):
        names.append(U.basis[w[0]] if len(p.terms) == 1 and len(w) == 1 and p.terms[w] == 1 else U.format_word(w))
    anchor = {}
    for name, p in zip(names, prims):
        anchor[name] = {x: -U.counit(U.iota_A(A.var(x)) * p) for x in A.variables}
    structure = {}
    for i, p in enumerate(prims):
        for j, q in enumerate(prims):
            if i < j:
                comm = p * q - q * p
                coords = [comm.coefficient(w) for w in pivots]
                span = U.zero()
                for r, c in zip(prims, coords):
                    span = span + r.times_coefficient(c)
                if span != comm:
                    raise EnvelopingError(f"commutator of {p} and {q} leaves the span of the primitives")
                structure[(i, j)] = coords
    return LieRinehartPresentation(A, names, anchor, structure, name=f"Prim({U.name})")


def compare_with(L, P):
    """Differences between two Lie-Rinehart presentations on matching bases."""
    bad = []
    if L.rank != P.rank:
        return [("rank", f"{L.rank} != {P.rank}")]
    for i in range(L.rank):
        for x in L.base.variables:
            a, b = L.anchor[L.basis[i]][x], P.anchor[P.basis[i]][x]
            if a != b:
                bad.append((f"anchor {L.basis[i]}({x})", f"{a} != {b}"))
        for j in range(L.rank):
            if L.structure[(i, j)] != P.structure[(i, j)]:
                bad.append((f"[{L.basis[i]},{L.basis[j]}]", f"{L.format(L.structure[(i, j)])} != {P.format(P.structure[(i, j)])}"))
    return bad


def anchor_law_failures(U, prims):
    """iA(eps(iA(a) X)) = iA(a) X - X iA(a) for primitive X and A-generators a."""
    A = U.base
    bad = []
    for X in prims:
        for x in A.variables:
            ia = U.iota_A(A.var(x))
            lhs = U.iota_A(U.counit(ia * X))
            rhs = ia * X - X * ia
            if lhs != rhs:
                bad.append((f"X={X}, a={x}", f"{lhs} != {rhs}"))
    return bad


def is_primitive(U, u):
    u = U.coerce(u)
    one = U.one()
    expected = U.tensor([u, one], ("RR",)) + U.tensor([one, u], ("RR",))
    return U.coproduct(u) == expected and not U.counit(u)
