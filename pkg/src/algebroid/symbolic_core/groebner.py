"""Buchberger's algorithm with the product and chain criteria."""

from fractions import Fraction

from . import poly as P


class Basis:
    """Reduced Groebner basis plus a reducer for normal forms."""

    def __init__(self, polys, order):
        self.order = order
        self.polys = reduced_groebner(polys, order)
        self._heads = [(order.leading(g), g) for g in self.polys]

    @property
    def is_unit_ideal(self):
        return any(not any(lm) for lm, _ in self._heads)

    def reduce(self, f):
        return reduce_full(f, self._heads, self.order)

    def contains(self, f):
        return not self.reduce(f)


def reduce_full(f, heads, order):
    """Fully reduce f by (leading monomial, monic poly) pairs."""
    if not heads or not f:
        return dict(f)
    key = order.key
    f = dict(f)
    out = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in heads:
            if P.mono_divides(lm, m):
                q = P.mono_div(m, lm)
                for gm, gc in g.items():
                    nm = P.mono_mul(gm, q)
                    v = f.get(nm, 0) - c * gc
                    if v:
                        f[nm] = v
                    else:
                        f.pop(nm, None)
                break
        else:
            out[m] = c
            del f[m]
    return out


def monic(p, order):
    lc = p[order.leading(p)]
    return P.scale(p, Fraction(1) / lc)


def s_poly(f, g, order):
    lf, lg = order.leading(f), order.leading(g)
    l = P.mono_lcm(lf, lg)
    a = P.mul_term(f, P.mono_div(l, lf), Fraction(1) / f[lf])
    b = P.mul_term(g, P.mono_div(l, lg), Fraction(1) / g[lg])
    return P.sub(a, b)


def groebner(polys, order):
    """A (not necessarily reduced) Groebner basis of the ideal generated by polys."""
    G = []
    heads = []
    pairs = set()
    for p in polys:
        p = reduce_full(p, heads, order)
        if not p:
            continue
        p = monic(p, order)
        G.append(p)
        heads.append((order.leading(p), p))
    n = len(G)
    pairs = {(i, j) for i in range(n) for j in range(i + 1, n)}
    while pairs:
        i, j = min(pairs, key=lambda ij: order.key(P.mono_lcm(heads[ij[0]][0], heads[ij[1]][0])))
        pairs.discard((i, j))
        li, lj = heads[i][0], heads[j][0]
        if P.coprime(li, lj):
            continue
        l = P.mono_lcm(li, lj)
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if P.mono_divides(heads[k][0], l) and _done(i, k, pairs) and _done(j, k, pairs):
                skip = True
                break
        if skip:
            continue
        h = reduce_full(s_poly(G[i], G[j], order), heads, order)
        if not h:
            continue
        h = monic(h, order)
        G.append(h)
        heads.append((order.leading(h), h))
        new = len(G) - 1
        if not any(h_m for h_m in heads[new][0]):
            return [P.const(1, order.nvars)]
        pairs.update((k, new) for k in range(new))
    return G


def _done(a, b, pairs):
    return (min(a, b), max(a, b)) not in pairs


def reduced_groebner(polys, order):
    G = groebner([p for p in polys if p], order)
    G = [monic(g, order) for g in G]
    # drop elements whose leading monomial is divisible by another's
    lead = [order.leading(g) for g in G]
    keep = []
    for i, g in enumerate(G):
        redundant = False
        for j in range(len(G)):
            if j == i:
                continue
            if P.mono_divides(lead[j], lead[i]) and (lead[j] != lead[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = [(order.leading(h), h) for k, h in enumerate(keep) if k != i]
        r = reduce_full(g, others, order)
        out.append(monic(r, order))
    out.sort(key=lambda g: order.key(order.leading(g)))
    return out
