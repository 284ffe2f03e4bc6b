"""Smith normal form over Q or Q[X], with the transforming matrices."""

from fractions import Fraction

from . import poly as P


class UnsupportedBaseError(ValueError):
    pass


class Euclidean:
    """Division with remainder in a presented algebra that is Q or Q[X]."""

    def __init__(self, A):
        if A.nvars > 1 or A.relations:
            raise UnsupportedBaseError(f"{A.name} is neither Q nor Q[X]")
        self.A = A

    def norm(self, a):
        if not a:
            return -1
        return a.degree()

    def is_unit(self, a):
        return bool(a) and a.is_constant()

    def inverse(self, a):
        if not self.is_unit(a):
            raise ValueError(f"{a} is not a unit")
        return self.A.coerce(Fraction(1) / a.constant())

    def leading(self, a):
        return a.terms[max(a.terms, key=sum)]

    def divmod(self, a, b):
        A = self.A
        if not b:
            raise ZeroDivisionError("division by zero")
        if A.nvars == 0:
            return A.coerce(a.constant() / b.constant()), A.zero()
        db = b.degree()
        lead = b.terms[(db,)]
        q = {}
        r = dict(a.terms)
        while r:
            dr = max(m[0] for m in r)
            if dr < db:
                break
            c = r[(dr,)] / lead
            mono = {(dr - db,): c}
            q = P.add(q, mono)
            r = P.sub(r, P.mul(mono, b.terms))
        return A.element(q), A.element(r)


def identity(A, n):
    return [[A.one() if i == j else A.zero() for j in range(n)] for i in range(n)]


def matmul(A, X, Y):
    if not X:
        return []
    inner = len(Y)
    cols = len(Y[0]) if Y else 0
    out = []
    for row in X:
        out_row = []
        for j in range(cols):
            acc = A.zero()
            for k in range(inner):
                if row[k] and Y[k][j]:
                    acc = acc + row[k] * Y[k][j]
            out_row.append(acc)
        out.append(out_row)
    return out


def smith_normal_form(M, A, m=None, n=None):
    """Return (D, Pm, Qm) with Pm M Qm = D diagonal and Pm, Qm invertible.

    M is a list of rows of elements of A; m, n give the shape when M is empty.
    """
    E = Euclidean(A)
    m = len(M) if m is None else m
    n = (len(M[0]) if M else 0) if n is None else n
    D = [[A.coerce(x) for x in row] for row in M]
    Pm = identity(A, m)
    Qm = identity(A, n)

    def row_op(i, j, q):
        D[i] = [a - q * b for a, b in zip(D[i], D[j])]
        Pm[i] = [a - q * b for a, b in zip(Pm[i], Pm[j])]

    def col_op(i, j, q):
        for row in D:
            row[i] = row[i] - q * row[j]
        for row in Qm:
            row[i] = row[i] - q * row[j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        Pm[i], Pm[j] = Pm[j], Pm[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in Qm:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n)):
        cands = [(E.norm(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not cands:
            break
        _, i0, j0 = min(cands)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            for i in range(t + 1, m):
                if D[i][t]:
                    q, r = E.divmod(D[i][t], D[t][t])
                    row_op(i, t, q)
                    if r:
                        swap_rows(t, i)
            for j in range(t + 1, n):
                if D[t][j]:
                    q, r = E.divmod(D[t][j], D[t][t])
                    col_op(j, t, q)
                    if r:
                        swap_cols(t, j)
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if E.divmod(D[i][j], D[t][t])[1]),
                None,
            )
            if bad is None:
                break
            row_op(t, bad[0], A.coerce(-1))
    # monic invariant factors
    for k in range(min(m, n)):
        if D[k][k]:
            lead = E.leading(D[k][k])
            D[k] = [x / lead for x in D[k]]
            Pm[k] = [x / lead for x in Pm[k]]
    return D, Pm, Qm


def invariant_factors(D):
    out = []
    for k in range(min(len(D), len(D[0]) if D else 0)):
        if D[k][k]:
            out.append(D[k][k])
    return out


def left_inverse(M, A, m, n):
    """A matrix R with R M = I_n if M (m x n) is split-injective over A, else None."""
    E = Euclidean(A)
    if n == 0:
        return []
    D, Pm, Qm = smith_normal_form(M, A, m, n)
    if n > m or any(not E.is_unit(D[k][k]) for k in range(n)):
        return None
    Dp = [[A.zero()] * m for _ in range(n)]
    for k in range(n):
        Dp[k][k] = E.inverse(D[k][k])
    return matmul(A, matmul(A, Qm, Dp), Pm)


def right_inverse(M, A, m, n):
    """A matrix R with M R = I_m if M (m x n) is surjective over A, else None."""
    E = Euclidean(A)
    if m == 0:
        return [[] for _ in range(n)]
    D, Pm, Qm = smith_normal_form(M, A, m, n)
    if m > n or any(not E.is_unit(D[k][k]) for k in range(m)):
        return None
    Dp = [[A.zero()] * m for _ in range(n)]
    for k in range(m):
        Dp[k][k] = E.inverse(D[k][k])
    return matmul(A, matmul(A, Qm, Dp), Pm)
