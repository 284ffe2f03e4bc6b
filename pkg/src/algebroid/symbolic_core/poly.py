"""Sparse multivariate polynomials over the rationals and monomial orders."""

from fractions import Fraction

# A polynomial is a dict mapping exponent tuples to nonzero Fractions.
# All helpers here treat those dicts as values and never mutate inputs.


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def zero_mono(n):
    return (0,) * n


def const(c, n):
    c = Fraction(c)
    return {zero_mono(n): c} if c else {}


def var(i, n):
    e = [0] * n
    e[i] = 1
    return {tuple(e): Fraction(1)}


def add(p, q):
    r = dict(p)
    for m, c in q.items():
        v = r.get(m, 0) + c
        if v:
            r[m] = v
        else:
            r.pop(m, None)
    return r


def sub(p, q):
    r = dict(p)
    for m, c in q.items():
        v = r.get(m, 0) - c
        if v:
            r[m] = v
        else:
            r.pop(m, None)
    return r


def scale(p, c):
    c = Fraction(c)
    if not c:
        return {}
    return {m: v * c for m, v in p.items()}


def mul_term(p, mono, c):
    """p times c*mono."""
    if not c:
        return {}
    return {mono_mul(m, mono): v * c for m, v in p.items()}


def mul(p, q):
    if len(p) > len(q):
        p, q = q, p
    r = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = mono_mul(m1, m2)
            v = r.get(m, 0) + c1 * c2
            if v:
                r[m] = v
            else:
                r.pop(m, None)
    return r


def power(p, k, n):
    result = const(1, n)
    base = p
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def derivative(p, i):
    r = {}
    for m, c in p.items():
        e = m[i]
        if e:
            nm = m[:i] + (e - 1,) + m[i + 1:]
            r[nm] = r.get(nm, 0) + c * e
    return {m: c for m, c in r.items() if c}


def is_constant(p):
    return all(not any(m) for m in p)


def constant_value(p):
    """Value of a constant polynomial (0 for the empty one)."""
    for m, c in p.items():
        if any(m):
            raise ValueError("polynomial is not constant")
        return c
    return Fraction(0)


def embed(p, positions, n):
    """Re-index p into an n-variable ring, variable i going to positions[i]."""
    r = {}
    for m, c in p.items():
        e = [0] * n
        for i, k in enumerate(m):
            if k:
                e[positions[i]] += k
        r[tuple(e)] = c
    return r


class MonomialOrder:
    """Degrevlex within blocks, blocks compared lexicographically.

    A single block covering every variable is plain degrevlex with the first
    variable largest.
    """

    def __init__(self, nvars, blocks=None):
        self.nvars = nvars
        if blocks is None:
            blocks = [(0, nvars)]
        self.blocks = tuple(blocks)
        self._cache = {}

    def key(self, m):
        k = self._cache.get(m)
        if k is None:
            parts = []
            for lo, hi in self.blocks:
                seg = m[lo:hi]
                parts.append(sum(seg))
                parts.extend(-e for e in reversed(seg))
            k = tuple(parts)
            if len(self._cache) < 200000:
                self._cache[m] = k
        return k

    def leading(self, p):
        return max(p, key=self.key)

    def sorted_terms(self, p):
        return sorted(p.items(), key=lambda t: self.key(t[0]), reverse=True)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.nvars, self.blocks) == (other.nvars, other.blocks)

    def __hash__(self):
        return hash((self.nvars, self.blocks))
