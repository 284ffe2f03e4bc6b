"""Catalog of worked examples, all over the rationals."""

from fractions import Fraction
from math import factorial

from .hopf_algebroid import HopfAlgebroid, TensorModel, derive_antipode
from .symbolic_core import AlgebraMap, PresentedAlgebra
from .symbolic_core import poly as P


class ExampleError(ValueError):
    pass


def ground_field():
    return PresentedAlgebra("Q", [])


def polynomial_base(names=("X",)):
    return PresentedAlgebra("A", list(names))


# Malgrange truncations


def jet_partitions(n):
    """Exponent vectors (k_1..k_n) with sum i*k_i = n."""
    out = []

    def rec(i, remaining, acc):
        if i > n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        for k in range(remaining // i + 1):
            rec(i + 1, remaining - i * k, acc + [k])

    rec(1, n, [])
    return out


def faa_di_bruno_terms(n):
    """(coefficient, exponents of y_1..y_n, index of the right factor) for Delta(y_n)."""
    terms = []
    for ks in jet_partitions(n):
        c = Fraction(factorial(n))
        for i, k in enumerate(ks, 1):
            c /= factorial(k) * factorial(i) ** k
        terms.append((c, ks, sum(ks)))
    return terms


def _jet_names(r):
    return ["x0", "y0", "y1", "y1inv"] + [f"y{i}" for i in range(2, r + 1)]


def malgrange(r=1, quotient=False, with_antipode=True):
    """Truncation H_r of the jet groupoid algebroid of the line.

    With quotient=True the higher jets y_2..y_r are set to zero.
    """
    r = int(r)
    if r < 1:
        raise ExampleError("malgrange needs r >= 1")
    A = polynomial_base()
    names = _jet_names(r)
    rels = [f"y{i}" for i in range(2, r + 1)] if quotient else []
    name = f"Hq{r}" if quotient else f"H{r}"
    H = PresentedAlgebra(name, names, rels, [("y1", "y1inv")])
    counit = _malgrange_counit(r)
    source = AlgebraMap(A, H, {"X": "x0"}, name="source")
    target = AlgebraMap(A, H, {"X": "y0"}, name="target")
    T2 = TensorModel(H, source, target)
    cop = {
        "x0": T2.tensor("x0", 1),
        "y0": T2.tensor(1, "y0"),
        "y1inv": T2.tensor("y1inv", "y1inv"),
    }
    for n in range(1, r + 1):
        total = T2.algebra.zero()
        for c, ks, right in faa_di_bruno_terms(n):
            left = H.one()
            for i, k in enumerate(ks, 1):
                if k:
                    left = left * H.var(f"y{i}") ** k
            total = total + T2.tensor(left, f"y{right}") * c
        cop[f"y{n}"] = total
    Halg = HopfAlgebroid(A, H, source, target, counit, cop, name=name)
    if with_antipode:
        Halg = Halg.with_antipode(derive_antipode(Halg))
    return Halg


def _malgrange_counit(r):
    images = {"x0": "X", "y0": "X", "y1": "1", "y1inv": "1"}
    for i in range(2, r + 1):
        images[f"y{i}"] = "0"
    return images


def malgrange_quotient(r=2):
    return malgrange(r, quotient=True)


# groupoid-type examples


def pair_groupoid(n=1):
    """(A, A (x) A) for A = Q[X_1..X_n]; S swaps the factors."""
    n = int(n)
    if n < 1:
        raise ExampleError("pair_groupoid needs n >= 1")
    base_names = ["X"] if n == 1 else [f"X{i}" for i in range(1, n + 1)]
    A = polynomial_base(base_names)
    names = [f"{v}s" for v in base_names] + [f"{v}t" for v in base_names]
    H = PresentedAlgebra(f"P{n}", names)
    cop = {}
    for v in base_names:
        cop[f"{v}s"] = f"{v}s (x) 1"
        cop[f"{v}t"] = f"1 (x) {v}t"
    return HopfAlgebroid(
        A,
        H,
        {v: f"{v}s" for v in base_names},
        {v: f"{v}t" for v in base_names},
        {**{f"{v}s": v for v in base_names}, **{f"{v}t": v for v in base_names}},
        cop,
        {**{f"{v}s": f"{v}t" for v in base_names}, **{f"{v}t": f"{v}s" for v in base_names}},
        name=f"pair{n}",
    )


def laurent_group():
    """The Hopf algebra Q[g, g^-1] of the multiplicative group."""
    k = ground_field()
    B = PresentedAlgebra("B", ["g", "ginv"], inverse_pairs=[("g", "ginv")])
    return HopfAlgebroid(k, B, {}, {}, {"g": 1, "ginv": 1}, {"g": "g (x) g", "ginv": "ginv (x) ginv"}, {"g": "ginv", "ginv": "g"}, name="Gm")


def gl2():
    """The Hopf algebra of GL_2 with matrix coordinates Z_ij and dinv = 1/det."""
    k = ground_field()
    names = ["Z11", "Z12", "Z21", "Z22", "dinv"]
    B = PresentedAlgebra("GL2", names, ["(Z11*Z22 - Z12*Z21)*dinv - 1"])
    cop = {}
    for i in (1, 2):
        for j in (1, 2):
            cop[f"Z{i}{j}"] = f"Z{i}1 (x) Z1{j} + Z{i}2 (x) Z2{j}"
    cop["dinv"] = "dinv (x) dinv"
    anti = {"Z11": "Z22*dinv", "Z12": "-Z12*dinv", "Z21": "-Z21*dinv", "Z22": "Z11*dinv", "dinv": "Z11*Z22 - Z12*Z21"}
    eps = {"Z11": 1, "Z12": 0, "Z21": 0, "Z22": 1, "dinv": 1}
    return HopfAlgebroid(k, B, {}, {}, eps, cop, anti, name="GL2")


def split_algebroid(B=None, base_names=("X",)):
    """(A, A (x) B (x) A) for a Hopf algebra B over Q and A = Q[base_names]."""
    if B is None:
        B = laurent_group()
    A = polynomial_base(base_names)
    Bt = B.total
    names = [f"{v}s" for v in base_names] + list(Bt.variables) + [f"{v}t" for v in base_names]
    nb = len(base_names)
    pos = list(range(nb, nb + Bt.nvars))
    rels = [P.embed(p, pos, len(names)) for p in Bt.relations if not _is_pair_rel(Bt, p)]
    H = PresentedAlgebra("split", names, rels, Bt.inverse_pairs)
    cop = {f"{v}s": f"{v}s (x) 1" for v in base_names}
    cop.update({f"{v}t": f"1 (x) {v}t" for v in base_names})
    for g in Bt.variables:
        cop[g] = B.T2.format(B.coproducts[g])
    eps = {f"{v}s": v for v in base_names}
    eps.update({f"{v}t": v for v in base_names})
    eps.update({g: str(B.counit.images[g]) for g in Bt.variables})
    anti = {f"{v}s": f"{v}t" for v in base_names}
    anti.update({f"{v}t": f"{v}s" for v in base_names})
    anti.update({g: str(B.antipode.images[g]) for g in Bt.variables})
    return HopfAlgebroid(
        A, H, {v: f"{v}s" for v in base_names}, {v: f"{v}t" for v in base_names}, eps, cop, anti, name="split"
    )


def _is_pair_rel(R, p):
    for v, w in R.inverse_pairs:
        rel = P.sub(P.mul(P.var(R.index[v], R.nvars), P.var(R.index[w], R.nvars)), P.const(1, R.nvars))
        if rel == p:
            return True
    return False


def trivial_algebroid(A=None):
    """(A, A) with every structure map the identity."""
    if A is None:
        A = polynomial_base()
    H = PresentedAlgebra("Atriv", list(A.variables), [A.format(r) for r in A.relations if not _is_pair_rel(A, r)], A.inverse_pairs)
    ident = {v: v for v in A.variables}
    cop = {v: f"{v} (x) 1" for v in A.variables}
    return HopfAlgebroid(A, H, ident, ident, ident, cop, ident, name="trivial")


# GL_2 acting on the plane


def gl2_plane():
    """The split algebroid (A, GL2 (x) A) of the linear action on A = Q[X1, X2]."""
    from .differentiation import comodule_split

    A = polynomial_base(("X1", "X2"))
    rho = {"X1": "Z11*X1 + Z12*X2", "X2": "Z21*X1 + Z22*X2"}
    return comodule_split(gl2(), A, rho, name="gl2_plane")


# Lie-Rinehart examples


def weyl_lr(n=1):
    """Q[X1..Xn] with commuting basis D_i acting as d/dX_i."""
    from .lie_rinehart import LieRinehartPresentation

    n = int(n)
    if n < 1:
        raise ExampleError("weyl_lr needs n >= 1")
    names = ["X"] if n == 1 else [f"X{i}" for i in range(1, n + 1)]
    basis = ["D"] if n == 1 else [f"D{i}" for i in range(1, n + 1)]
    A = polynomial_base(names)
    anchor = {e: {x: 1} for e, x in zip(basis, names)}
    return LieRinehartPresentation(A, basis, anchor, {}, name=f"Weyl{n}")


def nonabelian_lr():
    """Q[X] with [e1, e2] = e2, e1 acting as X d/dX and e2 acting trivially."""
    from .lie_rinehart import LieRinehartPresentation

    A = polynomial_base()
    return LieRinehartPresentation(A, ["e1", "e2"], {"e1": {"X": "X"}}, {(0, 1): (0, 1)}, name="aff")


def quotient_lr(r=2):
    """The rank-2 Lie-Rinehart algebra of the quotient of H_r by the higher jets."""
    from .differentiation import differentiate

    return differentiate(malgrange_quotient(r))


def malgrange_lr(r=2):
    from .differentiation import differentiate

    return differentiate(malgrange(r))


# catalog


def _group_algebra(n=2):
    from .finite_dual import group_algebra

    return group_algebra(n)


CATALOG = {
    "pair_groupoid": (pair_groupoid, "n: number of base variables (default 1)", "hopf"),
    "split": (lambda: split_algebroid(), "B = Q[g, 1/g] over Q[X]", "hopf"),
    "malgrange": (malgrange, "r: truncation order (default 1)", "hopf"),
    "malgrange_quotient": (malgrange_quotient, "r: truncation order (default 2)", "hopf"),
    "gl2_plane": (gl2_plane, "GL2 acting linearly on Q[X1, X2]", "hopf"),
    "gl2": (gl2, "the Hopf algebra of GL2 over Q", "hopf"),
    "laurent": (laurent_group, "the Hopf algebra Q[g, 1/g]", "hopf"),
    "trivial": (lambda: trivial_algebroid(), "(A, A) over Q[X]", "hopf"),
    "group_algebra": (_group_algebra, "n: order of the cyclic group (default 2)", "finite"),
    "weyl_lr": (weyl_lr, "n: number of variables (default 1)", "lie_rinehart"),
    "nonabelian_lr": (nonabelian_lr, "two-dimensional nonabelian example over Q[X]", "lie_rinehart"),
    "quotient_lr": (quotient_lr, "r: truncation order (default 2)", "lie_rinehart"),
    "malgrange_lr": (malgrange_lr, "r: truncation order (default 2)", "lie_rinehart"),
}


def parse_spec(spec):
    """'malgrange:3' or 'malgrange:r=3' -> ('malgrange', (3,), {}) / ('malgrange', (), {'r': 3})."""
    name, _, rest = spec.partition(":")
    args, kwargs = [], {}
    for part in filter(None, (p.strip() for p in rest.split(","))):
        key, eq, val = part.partition("=")
        if eq:
            kwargs[key.strip()] = _param(val.strip(), spec)
        else:
            args.append(_param(part, spec))
    return name.strip(), tuple(args), kwargs


def _param(text, spec):
    try:
        return int(text)
    except ValueError:
        raise ExampleError(f"parameter {text!r} in {spec!r} is not an integer") from None


def example_kind(name):
    if name not in CATALOG:
        raise ExampleError(f"unknown example {name!r}; choose from {', '.join(CATALOG)}")
    return CATALOG[name][2]


def make_example(name, *args, verify=True, **params):
    """Build a catalog object by name; name may carry parameters, as in 'malgrange:3'."""
    if ":" in name:
        name, more_args, more_kw = parse_spec(name)
        args = more_args + args
        params = {**more_kw, **params}
    kind = example_kind(name)
    ctor = CATALOG[name][0]
    try:
        obj = ctor(*args, **params)
    except TypeError as exc:
        raise ExampleError(f"bad parameters for {name}: {exc}") from None
    if verify:
        _verify(obj, kind, name)
    return obj


def _verify(obj, kind, name):
    if kind == "hopf":
        rep = obj.check_axioms()
    elif kind == "lie_rinehart":
        from .lie_rinehart import check_lie_rinehart

        rep = check_lie_rinehart(obj)
    else:
        rep = obj.check()
    if not rep.passed:
        f = rep.failures()[0]
        raise ExampleError(f"{name} fails {f.name} at {f.counterexample}")


def bundled_lie_rinehart():
    """Lie-Rinehart algebras used by the enveloping and primitive-element suites."""
    return {
        "weyl_lr": weyl_lr(1),
        "weyl_lr:2": weyl_lr(2),
        "nonabelian_lr": nonabelian_lr(),
        "quotient_lr": quotient_lr(2),
        "malgrange_lr:2": malgrange_lr(2),
    }
