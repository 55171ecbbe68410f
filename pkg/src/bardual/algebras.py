"""Dg algebras, curved dg algebras, their modules and morphisms.

An algebra is stored by structure constants over a flat basis (the flat
order is: degrees ascending, then the label order of the underlying
graded space).  Multiplication and differential tables are sparse: a
missing key means the product / image is zero.  The unit is kept as a
sparse vector because natural constructions (products of algebras,
endomorphism algebras) have units that are sums of basis vectors.

Every defining identity is machine-checked by `validate`:

* associativity and two-sided unit,
* the graded Leibniz rule d(ab) = d(a)b + (-1)^{|a|} a d(b),
* d^2 = [h, -] with d(h) = 0   (h = 0 gives an honest dg algebra),
* for modules, d_M^2(x) = h x and compatibility with the algebra,
* for morphisms (f, a), the curved morphism equations.

Associativity is the only cubic check; above a size budget it switches
from all basis triples to a seeded random sample (every other identity
stays exhaustive).  The report notes record which mode ran.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field as dfield

from .graded import Complex, GradedMap, GradedVectorSpace
from .linalg import Matrix, inverse
from .sparse import vadd, viadd, vneg

ASSOC_TRIPLE_BUDGET = 250_000


@dataclass
class Failure:
    identity: str
    witness: tuple
    detail: str = ""

    def __repr__(self):
        w = f" at {self.witness}" if self.witness else ""
        d = f": {self.detail}" if self.detail else ""
        return f"Failure({self.identity}{w}{d})"


@dataclass
class Report:
    failures: list = dfield(default_factory=list)
    notes: list = dfield(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def add(self, identity, witness=(), detail=""):
        if len(self.failures) < 200:
            self.failures.append(Failure(identity, witness, detail))

    def raise_if_failed(self, context=""):
        if self.failures:
            head = self.failures[:5]
            raise ValidationError(f"{context} failed validation: {head}", self)


class ValidationError(ValueError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


def _flat_basis(space: GradedVectorSpace):
    return [(n, lbl) for n in space.degrees for lbl in space.labels(n)]


class CurvedAlgebra:
    """Graded algebra with degree +1 derivation d and curvature h.

    d^2 = [h, -] and d(h) = 0; h = {} means an honest dg algebra.
    """

    def __init__(self, field, space, unit, mult, diff, curvature=None,
                 check=True):
        self.field = field
        self.space = space
        self.basis = _flat_basis(space)
        self.index = {bl: i for i, bl in enumerate(self.basis)}
        self.degree = [bl[0] for bl in self.basis]
        self.unit = dict(unit)
        self.mult = mult
        self.diff = diff
        self.curvature = dict(curvature or {})
        self.by_degree = {}
        for i, d in enumerate(self.degree):
            self.by_degree.setdefault(d, []).append(i)
        if check:
            self.validate().raise_if_failed("algebra")

    # -- element helpers -------------------------------------------------
    @property
    def dim(self):
        return len(self.basis)

    def idx(self, deg, label):
        return self.index[(deg, label)]

    def basis_vec(self, i):
        return {i: self.field.one}

    def mul(self, x: dict, y: dict) -> dict:
        out = {}
        mult = self.mult
        for i, ci in x.items():
            for j, cj in y.items():
                p = mult.get((i, j))
                if p:
                    viadd(out, p, ci * cj)
        return out

    def d(self, x: dict) -> dict:
        out = {}
        diff = self.diff
        for i, c in x.items():
            col = diff.get(i)
            if col:
                viadd(out, col, c)
        return out

    def bracket(self, x: dict, y: dict) -> dict:
        """Graded commutator [x, y] = xy - (-1)^{|x||y|} yx (termwise)."""
        out = {}
        deg = self.degree
        for i, ci in x.items():
            di = deg[i]
            for j, cj in y.items():
                c = ci * cj
                p = self.mult.get((i, j))
                if p:
                    viadd(out, p, c)
                q = self.mult.get((j, i))
                if q:
                    viadd(out, q, c if (di * deg[j]) % 2 else -c)
        return out

    def is_uncurved(self):
        return not self.curvature

    def degree_of(self, x: dict):
        degs = {self.degree[i] for i in x}
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous element (degrees {sorted(degs)})")
        return degs.pop() if degs else None

    def diff_map(self) -> GradedMap:
        return _table_to_map(self, self.diff, 1)

    def as_complex(self) -> Complex:
        return Complex(self.field, self.space, self.diff_map())

    # -- validation ------------------------------------------------------
    def validate(self, assoc_budget=ASSOC_TRIPLE_BUDGET, seed=12345) -> Report:
        rep = Report()
        n = self.dim
        one = self.field.one
        deg = self.degree

        for (i, j), out in self.mult.items():
            want = deg[i] + deg[j]
            for k in out:
                if deg[k] != want:
                    rep.add("mult-degree", (i, j, k))
        for i, out in self.diff.items():
            for k in out:
                if deg[k] != deg[i] + 1:
                    rep.add("diff-degree", (i, k))
        for k in self.curvature:
            if deg[k] != 2:
                rep.add("curvature-degree", (k,))
        for k in self.unit:
            if deg[k] != 0:
                rep.add("unit-degree", (k,))

        mult = self.mult
        diff = self.diff
        for i in range(n):
            want = {i: one}
            out = {}
            for u, cu in self.unit.items():
                p = mult.get((u, i))
                if p:
                    viadd(out, p, cu)
            if out != want:
                rep.add("left-unit", (i,))
            out = {}
            for u, cu in self.unit.items():
                p = mult.get((i, u))
                if p:
                    viadd(out, p, cu)
            if out != want:
                rep.add("right-unit", (i,))

        def assoc_fail(i, j, k):
            lhs = {}
            p = mult.get((i, j))
            if p:
                for t, c in p.items():
                    q = mult.get((t, k))
                    if q:
                        viadd(lhs, q, c)
            rhs = {}
            p = mult.get((j, k))
            if p:
                for t, c in p.items():
                    q = mult.get((i, t))
                    if q:
                        viadd(rhs, q, c)
            return lhs != rhs

        triples = n * n * n
        if triples <= assoc_budget:
            rep.notes.append(f"associativity: all {triples} triples")
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        if assoc_fail(i, j, k):
                            rep.add("associativity", (i, j, k))
        else:
            rng = _random.Random(seed)
            count = min(assoc_budget, 4 * n * n)
            rep.notes.append(f"associativity: {count} sampled triples")
            for _ in range(count):
                i, j, k = (rng.randrange(n), rng.randrange(n),
                           rng.randrange(n))
                if assoc_fail(i, j, k):
                    rep.add("associativity", (i, j, k))

        for i in range(n):
            di_odd = deg[i] % 2
            dei = diff.get(i, {})
            for j in range(n):
                lhs = self.d(mult.get((i, j), {}))
                rhs = {}
                for t, c in dei.items():
                    q = mult.get((t, j))
                    if q:
                        viadd(rhs, q, c)
                dej = diff.get(j)
                if dej:
                    for t, c in dej.items():
                        q = mult.get((i, t))
                        if q:
                            viadd(rhs, q, -c if di_odd else c)
                if lhs != rhs:
                    rep.add("leibniz", (i, j))

        h = self.curvature
        for i in range(n):
            lhs = self.d(diff.get(i, {}))
            rhs = {}
            for u, cu in h.items():
                p = mult.get((u, i))
                if p:
                    viadd(rhs, p, cu)
                q = mult.get((i, u))
                if q:
                    viadd(rhs, q, -cu)
            if lhs != rhs:
                rep.add("d-squared", (i,))
        if self.d(h):
            rep.add("d-of-curvature", ())
        return rep

    def __repr__(self):
        kind = "dg" if self.is_uncurved() else "curved"
        return f"CurvedAlgebra({kind}, dim={self.dim})"


def _table_to_map(obj, table, degree):
    """Sparse column table over flat indices -> GradedMap on obj.space."""
    field = obj.field
    pos = {}
    for d, idxs in obj.by_degree.items():
        for p, i in enumerate(idxs):
            pos[i] = p
    blocks = {}
    for d, idxs in obj.by_degree.items():
        tgt = obj.by_degree.get(d + degree, [])
        if not tgt:
            continue
        m = Matrix(field, len(tgt), len(idxs))
        hit = False
        for c, i in enumerate(idxs):
            col = table.get(i)
            if not col:
                continue
            for k, v in col.items():
                m.data[pos[k]][c] = v
                hit = True
        if hit:
            blocks[d] = m
    return GradedMap(field, obj.space, obj.space, degree, blocks)


# ---------------------------------------------------------------------------
# modules


class CurvedModule:
    """Left module over a CurvedAlgebra with d_M^2(x) = h x."""

    def __init__(self, algebra, space, action, diff, check=True):
        self.algebra = algebra
        self.field = algebra.field
        self.space = space
        self.basis = _flat_basis(space)
        self.index = {bl: i for i, bl in enumerate(self.basis)}
        self.degree = [bl[0] for bl in self.basis]
        self.action = action
        self.diff = diff
        self.by_degree = {}
        for i, d in enumerate(self.degree):
            self.by_degree.setdefault(d, []).append(i)
        if check:
            self.validate().raise_if_failed("module")

    @property
    def dim(self):
        return len(self.basis)

    def basis_vec(self, i):
        return {i: self.field.one}

    def act(self, a: dict, x: dict) -> dict:
        out = {}
        for i, ci in a.items():
            for j, cj in x.items():
                p = self.action.get((i, j))
                if p:
                    viadd(out, p, ci * cj)
        return out

    def d(self, x: dict) -> dict:
        out = {}
        for i, c in x.items():
            col = self.diff.get(i)
            if col:
                viadd(out, col, c)
        return out

    def diff_map(self) -> GradedMap:
        return _table_to_map(self, self.diff, 1)

    def as_complex(self) -> Complex:
        return Complex(self.field, self.space, self.diff_map())

    def validate(self, assoc_budget=ASSOC_TRIPLE_BUDGET, seed=12345) -> Report:
        rep = Report()
        A = self.algebra
        one = self.field.one
        adeg, mdeg = A.degree, self.degree

        for (i, j), out in self.action.items():
            want = adeg[i] + mdeg[j]
            for k in out:
                if mdeg[k] != want:
                    rep.add("action-degree", (i, j, k))
        for i, out in self.diff.items():
            for k in out:
                if mdeg[k] != mdeg[i] + 1:
                    rep.add("mdiff-degree", (i, k))

        action = self.action
        for j in range(self.dim):
            out = {}
            for u, cu in A.unit.items():
                p = action.get((u, j))
                if p:
                    viadd(out, p, cu)
            if out != {j: one}:
                rep.add("unital-action", (j,))

        def assoc_fail(i, j, k):
            lhs = {}
            p = A.mult.get((i, j))
            if p:
                for t, c in p.items():
                    q = action.get((t, k))
                    if q:
                        viadd(lhs, q, c)
            rhs = {}
            p = action.get((j, k))
            if p:
                for t, c in p.items():
                    q = action.get((i, t))
                    if q:
                        viadd(rhs, q, c)
            return lhs != rhs

        triples = A.dim * A.dim * self.dim
        if triples <= assoc_budget:
            rep.notes.append(f"action associativity: all {triples} triples")
            for i in range(A.dim):
                for j in range(A.dim):
                    for k in range(self.dim):
                        if assoc_fail(i, j, k):
                            rep.add("action-associativity", (i, j, k))
        else:
            rng = _random.Random(seed)
            count = min(assoc_budget, 4 * A.dim * self.dim)
            rep.notes.append(f"action associativity: {count} sampled triples")
            for _ in range(count):
                i = rng.randrange(A.dim)
                j = rng.randrange(A.dim)
                k = rng.randrange(self.dim)
                if assoc_fail(i, j, k):
                    rep.add("action-associativity", (i, j, k))

        for i in range(A.dim):
            ai_odd = adeg[i] % 2
            dai = A.diff.get(i, {})
            for j in range(self.dim):
                lhs = self.d(action.get((i, j), {}))
                rhs = {}
                for t, c in dai.items():
                    q = action.get((t, j))
                    if q:
                        viadd(rhs, q, c)
                dj = self.diff.get(j)
                if dj:
                    for t, c in dj.items():
                        q = action.get((i, t))
                        if q:
                            viadd(rhs, q, -c if ai_odd else c)
                if lhs != rhs:
                    rep.add("module-leibniz", (i, j))

        for j in range(self.dim):
            lhs = self.d(self.diff.get(j, {}))
            rhs = {}
            for u, cu in A.curvature.items():
                p = action.get((u, j))
                if p:
                    viadd(rhs, p, cu)
            if lhs != rhs:
                rep.add("module-d-squared", (j,))
        return rep

    def __repr__(self):
        return f"CurvedModule(dim={self.dim} over dim={self.algebra.dim})"


class ModuleMap:
    """Degree-0 map of curved modules over the same algebra."""

    def __init__(self, source, target, blocks, check=True):
        self.source = source
        self.target = target
        self.field = source.field
        self.blocks = blocks  # dict: source index -> sparse target vector
        if check:
            self.validate().raise_if_failed("module map")

    def apply(self, x: dict) -> dict:
        out = {}
        for i, c in x.items():
            col = self.blocks.get(i)
            if col:
                viadd(out, col, c)
        return out

    def validate(self) -> Report:
        rep = Report()
        S, T = self.source, self.target
        for i, col in self.blocks.items():
            for k in col:
                if T.degree[k] != S.degree[i]:
                    rep.add("map-degree", (i, k))
        for i in range(S.dim):
            if self.apply(S.diff.get(i, {})) != T.d(self.apply(S.basis_vec(i))):
                rep.add("chain-map", (i,))
        A = S.algebra
        for a in range(A.dim):
            av = A.basis_vec(a)
            for i in range(S.dim):
                lhs = self.apply(S.action.get((a, i), {}))
                rhs = T.act(av, self.apply(S.basis_vec(i)))
                if lhs != rhs:
                    rep.add("action-compat", (a, i))
        return rep

    def is_iso(self) -> bool:
        S, T = self.source, self.target
        if S.dim != T.dim:
            return False
        for d in set(S.by_degree) | set(T.by_degree):
            rows = T.by_degree.get(d, [])
            cols = S.by_degree.get(d, [])
            if len(rows) != len(cols):
                return False
            if not rows:
                continue
            pos = {k: p for p, k in enumerate(rows)}
            m = Matrix(S.field, len(rows), len(cols))
            for c, i in enumerate(cols):
                for k, v in self.blocks.get(i, {}).items():
                    m.data[pos[k]][c] = v
            if inverse(m) is None:
                return False
        return True

    def __repr__(self):
        return f"ModuleMap({self.source.dim} -> {self.target.dim})"


# ---------------------------------------------------------------------------
# curved morphisms


class CurvedMorphism:
    """Morphism (f, a): source -> target of curved algebras.

    f is a unital multiplicative degree-0 map, a a degree-1 element of the
    target, with f(d x) = d(f x) + [a, f x] and f(h_src) = h_tgt + da + a^2.
    Strict morphisms have a = 0.
    """

    def __init__(self, source, target, f, a=None, check=True):
        self.source = source
        self.target = target
        self.field = source.field
        self.f = f
        self.a = dict(a or {})
        if check:
            self.validate().raise_if_failed("curved morphism")

    def apply(self, x: dict) -> dict:
        out = {}
        for i, c in x.items():
            col = self.f.get(i)
            if col:
                viadd(out, col, c)
        return out

    def validate(self, assoc_budget=ASSOC_TRIPLE_BUDGET, seed=12345) -> Report:
        rep = Report()
        S, T = self.source, self.target
        for i, col in self.f.items():
            for k in col:
                if T.degree[k] != S.degree[i]:
                    rep.add("morphism-degree", (i, k))
        for k in self.a:
            if T.degree[k] != 1:
                rep.add("twist-element-degree", (k,))
        if self.apply(S.unit) != T.unit:
            rep.add("unital", ())
        pairs = S.dim * S.dim
        if pairs <= assoc_budget:
            it = ((i, j) for i in range(S.dim) for j in range(S.dim))
        else:
            rng = _random.Random(seed)
            it = ((rng.randrange(S.dim), rng.randrange(S.dim))
                  for _ in range(assoc_budget))
        for (i, j) in it:
            lhs = self.apply(S.mult.get((i, j), {}))
            rhs = T.mul(self.apply(S.basis_vec(i)), self.apply(S.basis_vec(j)))
            if lhs != rhs:
                rep.add("multiplicative", (i, j))
        for i in range(S.dim):
            lhs = self.apply(S.diff.get(i, {}))
            fx = self.apply(S.basis_vec(i))
            rhs = vadd(T.d(fx), T.bracket(self.a, fx))
            if lhs != rhs:
                rep.add("curved-chain-rule", (i,))
        lhs = self.apply(S.curvature)
        rhs = vadd(vadd(dict(T.curvature), T.d(self.a)),
                   T.mul(self.a, self.a))
        if lhs != rhs:
            rep.add("curvature-rule", ())
        return rep

    def as_graded_map(self) -> GradedMap:
        field = self.field
        tpos = {}
        for d, idxs in self.target.by_degree.items():
            for p, i in enumerate(idxs):
                tpos[i] = p
        blocks = {}
        for d, idxs in self.source.by_degree.items():
            tgt = self.target.by_degree.get(d, [])
            m = Matrix(field, len(tgt), len(idxs))
            hit = False
            for c, i in enumerate(idxs):
                for k, v in self.f.get(i, {}).items():
                    m.data[tpos[k]][c] = v
                    hit = True
            if hit:
                blocks[d] = m
        return GradedMap(field, self.source.space, self.target.space, 0,
                         blocks)

    def __repr__(self):
        kind = "strict" if not self.a else "twisted"
        return f"CurvedMorphism({kind}, {self.source.dim}->{self.target.dim})"


def identity_morphism(A: CurvedAlgebra) -> CurvedMorphism:
    f = {i: A.basis_vec(i) for i in range(A.dim)}
    return CurvedMorphism(A, A, f, {}, check=False)


def compose_curved(p: CurvedMorphism, q: CurvedMorphism,
                   check=True) -> CurvedMorphism:
    """(f, a) o (g, b) = (f o g, a + f(b))."""
    if q.target.basis != p.source.basis:
        raise ValueError("composition mismatch: target of q != source of p")
    f = {i: p.apply(col) for i, col in q.f.items()}
    a = vadd(p.a, p.apply(q.a))
    return CurvedMorphism(q.source, p.target, f, a, check=check)


def invert_morphism(m: CurvedMorphism, check=True) -> CurvedMorphism:
    """(f, a)^{-1} = (f^{-1}, -f^{-1}(a)); fails if f is not bijective."""
    S, T = m.source, m.target
    finv = {}
    for d in set(S.by_degree) | set(T.by_degree):
        rows = T.by_degree.get(d, [])
        cols = S.by_degree.get(d, [])
        if len(rows) != len(cols):
            raise ValueError("not a linear isomorphism")
        if not rows:
            continue
        pos = {k: p for p, k in enumerate(rows)}
        mat = Matrix(S.field, len(rows), len(cols))
        for c, i in enumerate(cols):
            for k, v in m.f.get(i, {}).items():
                mat.data[pos[k]][c] = v
        inv = inverse(mat)
        if inv is None:
            raise ValueError("not a linear isomorphism")
        for c, k in enumerate(rows):
            col = {}
            for r, i in enumerate(cols):
                if inv.data[r][c]:
                    col[i] = inv.data[r][c]
            if col:
                finv[k] = col
    out = CurvedMorphism(T, S, finv, {}, check=False)
    out.a = vneg(out.apply(m.a))
    if check:
        out.validate().raise_if_failed("inverse morphism")
    return out


def validate(obj) -> Report:
    """Identity report for any algebra / module / morphism / module map."""
    return obj.validate()


# ---------------------------------------------------------------------------
# constructions


def algebra_from_tables(field, components, unit_label, mult_table, diff_table,
                        curvature=None, check=True) -> CurvedAlgebra:
    """Build from label-level tables.

    components: {degree: [labels]}; mult_table: {(lblA, lblB): [(c, lbl)]};
    diff_table: {lbl: [(c, lbl)]}; curvature: [(c, lbl)].  Labels must be
    globally unique here (true for every hand-written algebra).  The unit
    is either a basis label (products with it may then be left implicit)
    or a list of (c, lbl) terms, in which case the table must be complete.
    """
    space = GradedVectorSpace(components)
    basis = _flat_basis(space)
    where = {}
    for n, lbl in basis:
        if lbl in where:
            raise ValueError(f"label {lbl!r} reused across degrees")
        where[lbl] = n
    index = {bl: i for i, bl in enumerate(basis)}

    def to_idx(lbl):
        return index[(where[lbl], lbl)]

    def to_vec(terms):
        col = {}
        for c, lbl in terms:
            if c:
                viadd(col, {to_idx(lbl): c})
        return col

    mult = {}
    for (a, b), terms in mult_table.items():
        col = to_vec(terms)
        if col:
            mult[(to_idx(a), to_idx(b))] = col
    diff = {}
    for a, terms in diff_table.items():
        col = to_vec(terms)
        if col:
            diff[to_idx(a)] = col
    curv = to_vec(curvature or [])
    if isinstance(unit_label, list):
        unit = to_vec(unit_label)
    else:
        u = to_idx(unit_label)
        for i in range(len(basis)):
            mult.setdefault((u, i), {i: field.one})
            mult.setdefault((i, u), {i: field.one})
        mult = {k: v for k, v in mult.items() if v}
        unit = {u: field.one}
    return CurvedAlgebra(field, space, unit, mult, diff, curv, check=check)


def acyclic_two_dim(field) -> CurvedAlgebra:
    """The two-dimensional acyclic dg algebra: basis {1, x}, x^2 = 0, dx = 1.

    d raises degree and d(x) = 1 has degree 0, so x sits in degree -1.
    """
    return algebra_from_tables(
        field,
        {0: ["1"], -1: ["x"]},
        "1",
        {("x", "x"): []},
        {"x": [(field.one, "1")]},
    )


def product(A: CurvedAlgebra, C: CurvedAlgebra, check=True):
    """Direct product A x C with the two strict projections."""
    if A.field != C.field:
        raise ValueError("mixed ground fields")
    comp = {}
    for n in sorted(set(A.space.degrees) | set(C.space.degrees)):
        labels = [("L", l) for l in A.space.labels(n)]
        labels += [("R", l) for l in C.space.labels(n)]
        if labels:
            comp[n] = labels
    space = GradedVectorSpace(comp)
    index = {bl: i for i, bl in enumerate(_flat_basis(space))}

    def li(i):
        n, lbl = A.basis[i]
        return index[(n, ("L", lbl))]

    def ri(i):
        n, lbl = C.basis[i]
        return index[(n, ("R", lbl))]

    def xl(vec):
        return {li(k): v for k, v in vec.items()}

    def xr(vec):
        return {ri(k): v for k, v in vec.items()}

    mult = {}
    for (i, j), v in A.mult.items():
        mult[(li(i), li(j))] = xl(v)
    for (i, j), v in C.mult.items():
        mult[(ri(i), ri(j))] = xr(v)
    diff = {}
    for i, v in A.diff.items():
        diff[li(i)] = xl(v)
    for i, v in C.diff.items():
        diff[ri(i)] = xr(v)
    unit = vadd(xl(A.unit), xr(C.unit))
    curv = vadd(xl(A.curvature), xr(C.curvature))
    P = CurvedAlgebra(A.field, space, unit, mult, diff, curv, check=check)

    fA, fC = {}, {}
    for k, (n, (tag, lbl)) in enumerate(P.basis):
        if tag == "L":
            fA[k] = {A.index[(n, lbl)]: A.field.one}
        else:
            fC[k] = {C.index[(n, lbl)]: C.field.one}
    pA = CurvedMorphism(P, A, fA, {}, check=check)
    pC = CurvedMorphism(P, C, fC, {}, check=check)
    return P, pA, pC


def opposite(A: CurvedAlgebra, check=True) -> CurvedAlgebra:
    """Opposite algebra: x*y = (-1)^{|x||y|} yx, same d, curvature -h."""
    mult = {}
    for (i, j), v in A.mult.items():
        di, dj = A.degree[i], A.degree[j]
        mult[(j, i)] = vneg(v) if (di * dj) % 2 else dict(v)
    return CurvedAlgebra(A.field, A.space, A.unit, mult,
                         {i: dict(v) for i, v in A.diff.items()},
                         vneg(A.curvature), check=check)


class TensorAlgebra(CurvedAlgebra):
    """A (x) B with factor bookkeeping: basis labels are (i, j) index pairs."""

    def __init__(self, field, space, unit, mult, diff, curvature, left, right,
                 check=True):
        super().__init__(field, space, unit, mult, diff, curvature,
                         check=check)
        self.left = left
        self.right = right
        # label of element k is the pair (i, j) of factor indices
        self.factors_of = [lbl for (_, lbl) in self.basis]
        self.pair_index = {lbl: k for k, lbl in enumerate(self.factors_of)}

    def embed(self, va: dict, vb: dict) -> dict:
        out = {}
        for i, ci in va.items():
            for j, cj in vb.items():
                c = ci * cj
                if c:
                    viadd(out, {self.pair_index[(i, j)]: c})
        return out


def tensor_algebras(A: CurvedAlgebra, B: CurvedAlgebra,
                    check=True) -> TensorAlgebra:
    """A (x) B with (a(x)b)(a'(x)b') = (-1)^{|b||a'|} aa' (x) bb'.

    Differential d(a(x)b) = da(x)b + (-1)^{|a|} a(x)db; curvature
    h_A(x)1 + 1(x)h_B.  Basis labels are global index pairs (i, j).
    """
    if A.field != B.field:
        raise ValueError("mixed ground fields")
    one = A.field.one
    comp = {}
    for i in range(A.dim):
        for j in range(B.dim):
            comp.setdefault(A.degree[i] + B.degree[j], []).append((i, j))
    space = GradedVectorSpace(comp)
    index = {bl: k for k, bl in enumerate(_flat_basis(space))}

    def pair(i, j):
        return index[(A.degree[i] + B.degree[j], (i, j))]

    def embed(va, vb):
        out = {}
        for i, ci in va.items():
            for j, cj in vb.items():
                c = ci * cj
                if c:
                    viadd(out, {pair(i, j): c})
        return out

    mult = {}
    for i in range(A.dim):
        for j in range(B.dim):
            src1 = pair(i, j)
            dj = B.degree[j]
            for k in range(A.dim):
                p = A.mult.get((i, k))
                if not p:
                    continue
                sgn = -one if (dj * A.degree[k]) % 2 else one
                for l in range(B.dim):
                    q = B.mult.get((j, l))
                    if not q:
                        continue
                    col = {}
                    for pi, pc in p.items():
                        for qi, qc in q.items():
                            viadd(col, {pair(pi, qi): sgn * pc * qc})
                    if col:
                        mult[(src1, pair(k, l))] = col
    diff = {}
    for i in range(A.dim):
        da = A.diff.get(i)
        sgn = -one if A.degree[i] % 2 else one
        for j in range(B.dim):
            col = {}
            if da:
                viadd(col, embed(da, B.basis_vec(j)))
            db = B.diff.get(j)
            if db:
                viadd(col, embed(A.basis_vec(i), db), sgn)
            if col:
                diff[pair(i, j)] = col
    unit = embed(A.unit, B.unit)
    curv = vadd(embed(A.curvature, B.unit), embed(A.unit, B.curvature))
    return TensorAlgebra(A.field, space, unit, mult, diff, curv, A, B,
                         check=check)


def bimodule_envelope(A: CurvedAlgebra, check=True) -> TensorAlgebra:
    """A (x) A^op, carrying curvature h(x)1 - 1(x)h."""
    return tensor_algebras(A, opposite(A, check=False), check=check)


def regular_bimodule(A: CurvedAlgebra, env: TensorAlgebra | None = None,
                     check=True) -> CurvedModule:
    """A as a left module over A (x) A^op: (a(x)b).x = (-1)^{|b||x|} a x b."""
    env = env if env is not None else bimodule_envelope(A, check=False)
    one = A.field.one
    action = {}
    for e in range(env.dim):
        i, j = env.factors_of[e]
        dj = A.degree[j]
        for k in range(A.dim):
            sgn = -one if (dj * A.degree[k]) % 2 else one
            out = A.mul(A.mul(A.basis_vec(i), A.basis_vec(k)),
                        A.basis_vec(j))
            if out:
                action[(e, k)] = vneg(out) if sgn == -one else out
    diff = {i: dict(v) for i, v in A.diff.items()}
    return CurvedModule(env, A.space, action, diff, check=check)


def regular_module(A: CurvedAlgebra, check=True) -> CurvedModule:
    """A as a left module over itself; only valid when A is uncurved."""
    action = {k: dict(v) for k, v in A.mult.items()}
    diff = {i: dict(v) for i, v in A.diff.items()}
    return CurvedModule(A, A.space, action, diff, check=check)


def dual_regular_module(A: CurvedAlgebra, check=True) -> CurvedModule:
    """A* as a left A-module via right translation.

    With the plain-transpose differential (d phi)(v) = phi(dv), the unique
    sign making the action associative and Leibniz-compatible is
        a . phi = (-1)^{|a||phi| + |a|(|a|-1)/2} phi o (- . a).
    For an ordinary algebra this is (a.phi)(b) = phi(ba); it is the
    injective cogenerator in the finite-dimensional ordinary case.
    """
    from .graded import dual as dual_space
    space = dual_space(A.space)
    basis = _flat_basis(space)
    index = {bl: i for i, bl in enumerate(basis)}

    def star(i):
        n, lbl = A.basis[i]
        return index[(-n, lbl)]

    one = A.field.one
    action = {}
    for i in range(A.dim):
        q = A.degree[i]
        half = (q * (q - 1) // 2) % 2
        for j in range(A.dim):
            # phi = e_j* has dual degree -deg(e_j)
            exp = (q * A.degree[j] + half) % 2
            sgn = -one if exp else one
            col = {}
            for k in range(A.dim):
                prod = A.mult.get((k, i))
                if prod and j in prod:
                    viadd(col, {star(k): sgn * prod[j]})
            if col:
                action[(i, star(j))] = col
    diff = {}
    for j in range(A.dim):
        col = {}
        for k in range(A.dim):
            dk = A.diff.get(k)
            if dk and j in dk:
                viadd(col, {star(k): dk[j]})
        if col:
            diff[star(j)] = col
    return CurvedModule(A, space, action, diff, check=check)


def free_module(A: CurvedAlgebra, V: GradedVectorSpace,
                dV: GradedMap | None = None, check=True) -> CurvedModule:
    """A (x) V with action a.(b (x) v) = ab (x) v and differential
    d(b (x) v) = db (x) v + (-1)^{|b|} b (x) dV(v).

    An honest module only when A is uncurved (free modules over a curved
    algebra would need a connection); the validator enforces this.
    """
    basis_v = _flat_basis(V)
    comp = {}
    for i in range(A.dim):
        for (vd, vl) in basis_v:
            comp.setdefault(A.degree[i] + vd, []).append(
                (A.basis[i], (vd, vl)))
    space = GradedVectorSpace(comp)
    index = {bl: k for k, bl in enumerate(_flat_basis(space))}

    def pidx(i, j):
        return index[(A.degree[i] + basis_v[j][0],
                      (A.basis[i], basis_v[j]))]

    one = A.field.one
    action = {}
    for a in range(A.dim):
        for i in range(A.dim):
            prod = A.mult.get((a, i))
            if not prod:
                continue
            for j in range(len(basis_v)):
                action[(a, pidx(i, j))] = {pidx(k, j): c
                                           for k, c in prod.items()}
    # dV as columns over flat V indices
    dv_cols = {}
    if dV is not None and not dV.is_zero():
        vpos = {}
        per_degree = {}
        for j, (vd, vl) in enumerate(basis_v):
            per_degree.setdefault(vd, []).append(j)
        for vd, idxs in per_degree.items():
            blk = dV.block(vd)
            tgt = per_degree.get(vd + 1, [])
            for cpos, j in enumerate(idxs):
                col = {}
                for rpos, k in enumerate(tgt):
                    c = blk.data[rpos][cpos]
                    if c:
                        col[k] = c
                if col:
                    dv_cols[j] = col
    diff = {}
    for i in range(A.dim):
        da = A.diff.get(i)
        sgn = -one if A.degree[i] % 2 else one
        for j in range(len(basis_v)):
            col = {}
            if da:
                for k, c in da.items():
                    viadd(col, {pidx(k, j): c})
            dvj = dv_cols.get(j)
            if dvj:
                for k, c in dvj.items():
                    viadd(col, {pidx(i, k): sgn * c})
            if col:
                diff[pidx(i, j)] = col
    return CurvedModule(A, space, action, diff, check=check)


def endomorphism_algebra(space: GradedVectorSpace, dmap: GradedMap | None,
                         field, check=True) -> CurvedAlgebra:
    """End(M) for a graded space M with a degree-1 map d.

    Product is composition; differential is [d, -]; curvature is the
    element d o d (zero when d is an honest differential).  Basis labels
    are ((p, a), (q, b)) meaning the unit sending basis a in degree p to
    basis b in degree q; the element has degree q - p.
    """
    comp = {}
    for p in space.degrees:
        for q in space.degrees:
            comp.setdefault(q - p, []).extend(
                ((p, a), (q, b))
                for a in space.labels(p) for b in space.labels(q))
    espace = GradedVectorSpace(comp)
    basis = _flat_basis(espace)
    index = {bl: i for i, bl in enumerate(basis)}

    def unit_idx(p, a, q, b):
        return index[(q - p, ((p, a), (q, b)))]

    one = field.one
    mult = {}
    for n1, (src1, tgt1) in basis:
        i = index[(n1, (src1, tgt1))]
        for n2, (src2, tgt2) in basis:
            if tgt2 != src1:
                continue
            j = index[(n2, (src2, tgt2))]
            mult[(i, j)] = {index[(tgt1[0] - src2[0], (src2, tgt1))]: one}
    unit = {}
    for p in space.degrees:
        for a in space.labels(p):
            unit[unit_idx(p, a, p, a)] = one

    # matrix entries of d in the chosen bases
    dm = dmap if dmap is not None else GradedMap.zero(field, space, space, 1)
    diff = {}
    curv = {}
    if not dm.is_zero():
        def d_entries(p):
            blk = dm.block(p)
            out = []
            labels_p = space.labels(p)
            labels_q = space.labels(p + 1)
            for ia, a in enumerate(labels_p):
                for ib, b in enumerate(labels_q):
                    c = blk.data[ib][ia]
                    if c:
                        out.append((a, b, c))
            return out

        for n, (src, tgt) in basis:
            i = index[(n, (src, tgt))]
            p, a = src
            q, b = tgt
            col = {}
            # post-compose: d o T
            for (b2, b3, c) in d_entries(q):
                if b2 == b:
                    viadd(col, {unit_idx(p, a, q + 1, b3): c})
            # pre-compose: -(-1)^{|T|} T o d, i.e. sum over a' with d(a') ~ a
            sgn = one if n % 2 else -one
            for (a2, a3, c) in d_entries(p - 1):
                if a3 == a:
                    viadd(col, {unit_idx(p - 1, a2, q, b): sgn * c})
            if col:
                diff[i] = col
        # curvature element = d o d as an endomorphism
        dd = dm.compose(dm)
        for p in space.degrees:
            blk = dd.block(p)
            for ia, a in enumerate(space.labels(p)):
                for ib, b in enumerate(space.labels(p + 2)):
                    c = blk.data[ib][ia]
                    if c:
                        viadd(curv, {unit_idx(p, a, p + 2, b): c})
    return CurvedAlgebra(field, espace, unit, mult, diff, curv, check=check)


def module_action_map(M: CurvedModule, end_alg: CurvedAlgebra) -> dict:
    """delta: A -> End(M) of the action, as {algebra idx: End(M) vector}."""
    A = M.algebra
    out = {}
    for i in range(A.dim):
        col = {}
        for j in range(M.dim):
            img = M.action.get((i, j))
            if not img:
                continue
            p, a = M.basis[j]
            for k, c in img.items():
                q, b = M.basis[k]
                col_idx = end_alg.index[(q - p, ((p, a), (q, b)))]
                viadd(col, {col_idx: c})
        if col:
            out[i] = col
    return out


def change_basis(A: CurvedAlgebra, mats: dict, check=True) -> CurvedAlgebra:
    """Recompute structure constants in a new basis.

    mats[d] is an invertible matrix whose columns express the new degree-d
    basis in the old one; labels are kept.  Used to generate "generic"
    presentations of test algebras.
    """
    field = A.field
    fwd = {}
    bwd = {}
    for d, idxs in A.by_degree.items():
        m = mats.get(d, Matrix.identity(field, len(idxs)))
        mi = inverse(m)
        if mi is None:
            raise ValueError(f"basis change at degree {d} is singular")
        fwd[d], bwd[d] = m, mi

    pos = {}
    for d, idxs in A.by_degree.items():
        for p, i in enumerate(idxs):
            pos[i] = p

    def new_to_old(i):
        d = A.degree[i]
        col = fwd[d].col(pos[i])
        return {A.by_degree[d][r]: c for r, c in enumerate(col) if c}

    def old_vec_to_new(vec):
        out = {}
        by_d = {}
        for k, c in vec.items():
            by_d.setdefault(A.degree[k], {})[k] = c
        for d, part in by_d.items():
            idxs = A.by_degree[d]
            col = [part.get(i, field.zero) for i in idxs]
            newcol = bwd[d].apply(col)
            for r, c in enumerate(newcol):
                if c:
                    out[idxs[r]] = c
        return out

    mult = {}
    for i in range(A.dim):
        vi = new_to_old(i)
        for j in range(A.dim):
            prod = A.mul(vi, new_to_old(j))
            if prod:
                mult[(i, j)] = old_vec_to_new(prod)
    diff = {}
    for i in range(A.dim):
        img = A.d(new_to_old(i))
        if img:
            diff[i] = old_vec_to_new(img)
    unit = old_vec_to_new(A.unit)
    curv = old_vec_to_new(A.curvature)
    return CurvedAlgebra(field, A.space, unit, mult, diff, curv, check=check)
