"""Independent reference computations for the tests.

Everything here uses sympy or plain brute force and shares no code with the
package, so agreement between the two is evidence rather than tautology.
"""

from fractions import Fraction
from itertools import combinations
from math import factorial

import sympy as sp

X = sp.Symbol("X")


def faa_di_bruno(n):
    """Delta(y_n) from the n-th derivative of g(f(x)) via truncated series.

    Returns {(exponents of y_1..y_n, k): coefficient} for the term
    y_1^e_1 ... y_n^e_n (x) y_k.
    """
    x = sp.Symbol("x")
    Y = sp.symbols(f"Y1:{n + 1}")
    G = sp.symbols(f"G1:{n + 1}")
    inner = sum(Y[i - 1] * x**i / factorial(i) for i in range(1, n + 1))
    outer = sum(G[k - 1] * inner**k / factorial(k) for k in range(1, n + 1))
    coeff = sp.expand(outer).coeff(x, n) * factorial(n)
    out = {}
    for term in sp.Add.make_args(sp.expand(coeff)):
        c, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        k = next(i for i, g in enumerate(G, 1) if g in powers)
        exps = tuple(int(powers.get(y, 0)) for y in Y)
        out[(exps, k)] = Fraction(int(c.p), int(c.q))
    return out


def inverse_jets(n):
    """Derivatives of the inverse function, as sympy expressions in Y1..Yn and 1/Y1.

    S(y_k) is the k-th derivative of f^{-1}, obtained by solving
    (f^{-1} o f)^{(m)} = 0 for m = 2..n order by order.
    """
    x = sp.Symbol("x")
    Y = sp.symbols(f"Y1:{n + 1}")
    G = sp.symbols(f"G1:{n + 1}")
    inner = sum(Y[i - 1] * x**i / factorial(i) for i in range(1, n + 1))
    outer = sp.expand(sum(G[k - 1] * inner**k / factorial(k) for k in range(1, n + 1)))
    sol = {G[0]: 1 / Y[0]}
    for m in range(2, n + 1):
        eq = (outer.coeff(x, m) * factorial(m)).subs(sol)
        sol[G[m - 1]] = sp.solve(eq, G[m - 1])[0]
    return [sp.simplify(sol[G[k]]) for k in range(n)], Y


def groebner_contains(polys, gens, f):
    return sp.groebner(polys, *gens, order="grevlex").contains(f)


def determinantal_invariant_factors(matrix):
    """Invariant factors over Q[X] from gcds of k x k minors (monic, sympy exprs)."""
    M = sp.Matrix(matrix)
    m, n = M.shape
    ds = [sp.Integer(1)]
    for k in range(1, min(m, n) + 1):
        g = sp.Integer(0)
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = sp.gcd(g, M.extract(list(rows), list(cols)).det())
        if g == 0:
            break
        ds.append(sp.Poly(g, X).monic().as_expr() if g.has(X) else sp.Integer(1))
    return [sp.cancel(ds[k] / ds[k - 1]) for k in range(1, len(ds))]


def cyclic_pairing(n, fs, j):
    """<f_{k1}...f_{km}, g_j> in the dual of the cyclic group algebra: the f_k
    are indicator functions on the group, multiplied pointwise."""
    values = [1] * n
    for k in fs:
        values = [v * (1 if g == k else 0) for g, v in enumerate(values)]
    return values[j]


def cyclic_table(n):
    """Multiplication table of the group algebra of Z/n by brute force."""
    return {(i, j): (i + j) % n for i in range(n) for j in range(n)}


def commutator(M, N):
    return [[sum(M[i][k] * N[k][j] - N[i][k] * M[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def matrix_unit(i, j):
    return [[1 if (a, b) == (i, j) else 0 for b in (1, 2)] for a in (1, 2)]


def jet_bracket(a, b):
    """Bracket of two sequences of sympy polynomials in X, by the binomial formula."""
    r = len(a) - 1
    out = []
    for n in range(r + 1):
        v = a[0] * sp.diff(b[n], X) - b[0] * sp.diff(a[n], X)
        for i in range(1, n + 1):
            if n - i + 1 <= r:
                v += sp.binomial(n, i) * (a[i] * b[n - i + 1] - b[i] * a[n - i + 1])
        out.append(sp.expand(v))
    return out


def apply_operator(word_terms, poly):
    """Apply sum_w w.c_w to a sympy polynomial in X, with D = d/dX, letters
    composed left to right and c_w acting by multiplication first."""
    total = sp.Integer(0)
    for word, coeff in word_terms:
        g = sp.expand(coeff * poly)
        for _ in word:
            g = sp.diff(g, X)
        total += g
    return sp.expand(total)


def to_sympy(element):
    """A ring element of the package, through its printed form."""
    return sp.expand(sp.sympify(str(element).replace("^", "**")))
