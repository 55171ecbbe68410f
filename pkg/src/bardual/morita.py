"""Ordinary (non-dg) finite-dimensional algebras: radicals, simple modules,
projective resolutions, Ext groups, and classical Morita duality.

Everything is exact.  The radical comes from the trace-form criterion
(valid in characteristic 0 or p > dim A, guarded).  Simple-module counts
go through the center of the semisimple quotient: central idempotents are
split off using the rational (or F_p) roots of minimal polynomials, and
each block is certified split by exhibiting a minimal left ideal whose
dimension squares to the block dimension.  A non-split block (e.g. a
quaternion algebra over Q) raises with "extend the field" rather than
returning a wrong count.

The Ext oracle builds a free resolution by covering tops (free cover of
M/rad.M, kernel, repeat), applies Hom(-, N) and takes cohomology; it
never touches the bar-construction code paths, which is the point: it is
the independent certificate for the Hochschild side.
"""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass
from fractions import Fraction

from .algebras import CurvedAlgebra, CurvedModule
from .graded import GradedVectorSpace
from .linalg import Matrix, eliminate, inverse, solve, quotient_representatives


class OrdinaryAlgebra:
    """A finite-dimensional algebra concentrated in degree 0, zero d."""

    def __init__(self, algebra: CurvedAlgebra):
        if set(algebra.space.degrees) - {0}:
            raise ValueError("ordinary algebras live in degree 0")
        if algebra.diff or algebra.curvature:
            raise ValueError("ordinary algebras have no differential")
        self.algebra = algebra
        self.field = algebra.field
        self.n = algebra.dim

    def mul(self, x, y):
        return self.algebra.mul(x, y)

    def unit(self):
        return dict(self.algebra.unit)

    def left_mult_matrix(self, vec) -> Matrix:
        m = Matrix(self.field, self.n, self.n)
        for j in range(self.n):
            out = self.algebra.mul(vec, self.algebra.basis_vec(j))
            for k, c in out.items():
                m.data[k][j] = c
        return m

    def __repr__(self):
        return f"OrdinaryAlgebra(dim={self.n})"


class OrdinaryModule:
    """Left module given by one action matrix per algebra basis element."""

    def __init__(self, A: OrdinaryAlgebra, mats, check=True):
        self.A = A
        self.field = A.field
        self.mats = mats
        self.dim = mats[0].rows if mats else 0
        if check:
            self.check()

    def check(self):
        A = self.A
        n = self.dim
        idm = Matrix.identity(self.field, n)
        one_mat = self.act_matrix(A.unit())
        if one_mat != idm:
            raise ValueError("action is not unital")
        for i in range(A.n):
            for j in range(A.n):
                prod = A.algebra.mult.get((i, j), {})
                lhs = self.mats[i] @ self.mats[j]
                rhs = self.act_matrix(prod)
                if lhs != rhs:
                    raise ValueError(f"action not associative at ({i},{j})")

    def act_matrix(self, vec) -> Matrix:
        m = Matrix(self.field, self.dim, self.dim)
        for i, c in vec.items():
            for r in range(self.dim):
                for s in range(self.dim):
                    v = self.mats[i].data[r][s]
                    if v:
                        m.data[r][s] = m.data[r][s] + c * v
        return m

    def to_curved(self) -> CurvedModule:
        space = GradedVectorSpace({0: [("m", i) for i in range(self.dim)]})
        action = {}
        for i in range(self.A.n):
            for j in range(self.dim):
                col = {}
                for k in range(self.dim):
                    c = self.mats[i].data[k][j]
                    if c:
                        col[k] = c
                if col:
                    action[(i, j)] = col
        return CurvedModule(self.A.algebra, space, action, {})

    @classmethod
    def from_curved(cls, A: OrdinaryAlgebra, M: CurvedModule, check=True):
        mats = []
        for i in range(A.n):
            m = Matrix(A.field, M.dim, M.dim)
            for j in range(M.dim):
                for k, c in M.action.get((i, j), {}).items():
                    m.data[k][j] = c
            mats.append(m)
        return cls(A, mats, check=check)

    def __repr__(self):
        return f"OrdinaryModule(dim={self.dim})"


def regular_ordinary(A: OrdinaryAlgebra) -> OrdinaryModule:
    mats = [A.left_mult_matrix(A.algebra.basis_vec(i)) for i in range(A.n)]
    return OrdinaryModule(A, mats, check=False)


def injective_cogenerator(A: OrdinaryAlgebra) -> OrdinaryModule:
    """A* with (a.phi)(b) = phi(ba)."""
    mats = []
    for i in range(A.n):
        m = Matrix(A.field, A.n, A.n)
        for j in range(A.n):
            for k in range(A.n):
                prod = A.algebra.mult.get((k, i))
                if prod and j in prod:
                    m.data[k][j] = prod[j]
        mats.append(m)
    return OrdinaryModule(A, mats, check=False)


# ---------------------------------------------------------------------------
# radical and semisimple quotient


def radical(A: OrdinaryAlgebra):
    """Basis of the Jacobson radical via the trace form.

    rad = {x : trace(L_x L_y) = 0 for all y}; requires characteristic 0
    or p > dim A (Dickson's criterion).
    """
    p = getattr(A.field, "characteristic", 0)
    if p and p <= A.n:
        raise ValueError(
            f"radical via the trace form needs characteristic 0 or > dim; "
            f"got p={p} <= dim={A.n}: extend the field")
    L = [A.left_mult_matrix(A.algebra.basis_vec(i)) for i in range(A.n)]
    gram = Matrix(A.field, A.n, A.n)
    for i in range(A.n):
        for j in range(A.n):
            prod = L[i] @ L[j]
            t = A.field.zero
            for d in range(A.n):
                t = t + prod.data[d][d]
            gram.data[i][j] = t
    _, kernel, _ = eliminate(gram)
    return kernel


def _nilpotency_index(A: OrdinaryAlgebra, ideal):
    """Smallest k with ideal^k = 0, or None if not nilpotent by dim A."""
    current = list(ideal)
    for k in range(1, A.n + 2):
        if not current:
            return k
        nxt = []
        for v in current:
            vv = {i: c for i, c in enumerate(v) if c}
            for w in ideal:
                ww = {i: c for i, c in enumerate(w) if c}
                prod = A.mul(vv, ww)
                if prod:
                    col = [A.field.zero] * A.n
                    for i, c in prod.items():
                        col[i] = c
                    nxt.append(col)
        if not nxt:
            return k + 1
        m = Matrix.from_cols(A.field, nxt, rows_hint=A.n)
        _, _, image = eliminate(m)
        current = image
    return None


def quotient_algebra(A: OrdinaryAlgebra, ideal):
    """A / span(ideal) for a two-sided ideal; returns (S, project, lift).

    project: vector in A -> vector in S; lift: S basis index -> vector in A.
    The complement basis is chosen among standard basis vectors (first
    pivot), so the quotient is deterministic.
    """
    field = A.field
    n = A.n
    std = [[field.one if i == j else field.zero for i in range(n)]
           for j in range(n)]
    comp = quotient_representatives(ideal, std, field, n)
    m = Matrix.from_cols(field, list(ideal) + comp, rows_hint=n)
    minv = inverse(m) if m.rows == m.cols else None
    if minv is None:
        raise ValueError("ideal + complement do not span")
    k = len(ideal)

    def project(vec):
        col = [field.zero] * n
        for i, c in vec.items():
            col[i] = c
        x = minv.apply(col)
        return {j: x[k + j] for j in range(len(comp)) if x[k + j]}

    def lift(j):
        return {i: c for i, c in enumerate(comp[j]) if c}

    labels = [("s", j) for j in range(len(comp))]
    space = GradedVectorSpace({0: labels})
    mult = {}
    for a in range(len(comp)):
        for b in range(len(comp)):
            prod = project(A.mul(lift(a), lift(b)))
            if prod:
                mult[(a, b)] = prod
    unit = project(A.unit())
    S = OrdinaryAlgebra(CurvedAlgebra(field, space, unit, mult, {}, {},
                                      check=True))
    return S, project, lift


def center(A: OrdinaryAlgebra):
    """Basis of the center: solutions of x e_i - e_i x = 0 for all i."""
    field = A.field
    n = A.n
    rows = []
    for i in range(n):
        # commutator condition rows for the unknown x = sum x_j e_j
        for k in range(n):
            row = []
            for j in range(n):
                lhs = A.mul(A.algebra.basis_vec(j), A.algebra.basis_vec(i))
                rhs = A.mul(A.algebra.basis_vec(i), A.algebra.basis_vec(j))
                row.append(lhs.get(k, field.zero) - rhs.get(k, field.zero))
            rows.append(row)
    m = Matrix.from_rows(field, rows) if rows else Matrix(field, 0, n)
    _, kernel, _ = eliminate(m)
    return kernel


def _minpoly(A: OrdinaryAlgebra, w, unit):
    """Monic minimal polynomial of w in the unital subalgebra with unit
    `unit` (coefficients listed from constant term up)."""
    field = A.field
    n = A.n
    powers = [dict(unit)]
    while True:
        cols = []
        for pw in powers:
            col = [field.zero] * n
            for i, c in pw.items():
                col[i] = c
            cols.append(col)
        nxt = A.mul(powers[-1], w)
        target = [field.zero] * n
        for i, c in nxt.items():
            target[i] = c
        m = Matrix.from_cols(field, cols, rows_hint=n)
        x = solve(m, target)
        if x is not None:
            # w^k = sum x_i w^i  ->  minpoly = t^k - sum x_i t^i
            coeffs = [-c for c in x] + [field.one]
            return coeffs
        powers.append(nxt)
        if len(powers) > n + 1:
            raise AssertionError("minimal polynomial search ran away")


def _poly_roots(field, coeffs):
    """All roots in the ground field of a polynomial with coefficients
    from constant term up.  Complete for Q (rational root theorem after
    clearing denominators) and for F_p (exhaustive)."""
    deg = len(coeffs) - 1
    zero, one = field.zero, field.one
    p = getattr(field, "characteristic", 0)
    roots = []

    def ev(x):
        acc = zero
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    if p:
        for v in range(p):
            x = field(v)
            if not ev(x):
                roots.append(x)
        return roots
    import math
    denom = 1
    for c in coeffs:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        roots.append(Fraction(0))
        # factor out t
        shifted = ints[1:]
        sub = [Fraction(c) for c in shifted]
        return roots + [r for r in _poly_roots(field, sub) if r != 0]
    for pdiv in _divisors(abs(a0)):
        for qdiv in _divisors(abs(an)):
            for sgn in (1, -1):
                cand = Fraction(sgn * pdiv, qdiv)
                if cand not in roots and not ev(cand):
                    roots.append(cand)
    return roots


def _gcd(a, b):
    import math
    return math.gcd(a, b)


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def central_idempotents(S: OrdinaryAlgebra):
    """Primitive central idempotents of a (semisimple) algebra.

    Splits the center by eigen-projectors of its elements; errors when a
    minimal polynomial fails to split over the ground field.
    """
    field = S.field
    Z = center(S)
    blocks = [S.unit()]
    for zcol in Z:
        z = {i: c for i, c in enumerate(zcol) if c}
        again = True
        while again:
            again = False
            new_blocks = []
            for e in blocks:
                w = S.mul(z, e)
                mp = _minpoly(S, w, e)
                deg = len(mp) - 1
                if deg <= 1:
                    new_blocks.append(e)
                    continue
                roots = _poly_roots(field, mp)
                if len(roots) < deg:
                    raise ValueError(
                        "semisimple quotient does not split: extend the field")
                for lam in roots:
                    proj = dict(e)
                    for mu in roots:
                        if mu == lam:
                            continue
                        factor = dict(w)
                        for i, c in e.items():
                            factor[i] = factor.get(i, field.zero) - mu * c
                        factor = {i: c for i, c in factor.items() if c}
                        proj = S.mul(proj, factor)
                        proj = {i: c / (lam - mu) for i, c in proj.items()}
                    new_blocks.append(proj)
                again = True
            blocks = new_blocks
    # sanity: orthogonal idempotents summing to 1
    total = {}
    for e in blocks:
        for i, c in e.items():
            total[i] = total.get(i, field.zero) + c
    total = {i: c for i, c in total.items() if c}
    if total != S.unit():
        raise AssertionError("idempotents do not sum to the unit")
    for e in blocks:
        if S.mul(e, e) != e:
            raise AssertionError("non-idempotent block projector")
    return blocks


def _subspace_basis(field, cols, dim):
    if not cols:
        return []
    m = Matrix.from_cols(field, cols, rows_hint=dim)
    _, _, image = eliminate(m)
    return image


def _submodule_span(A: OrdinaryAlgebra, mats, vectors, dim):
    """Closure of span(vectors) under the action matrices."""
    basis = _subspace_basis(A.field, vectors, dim)
    while True:
        new = list(basis)
        for v in basis:
            for m in mats:
                new.append(m.apply(v))
        nb = _subspace_basis(A.field, new, dim)
        if len(nb) == len(basis):
            return nb
        basis = nb


def _module_on_subspace(A: OrdinaryAlgebra, mats, basis):
    """Restrict action matrices to an invariant subspace (basis columns)."""
    field = A.field
    dim = len(basis[0]) if basis else 0
    bm = Matrix.from_cols(field, basis, rows_hint=dim)
    sub_mats = []
    for m in mats:
        cols = []
        for v in basis:
            img = m.apply(v)
            x = solve(bm, img)
            if x is None:
                raise AssertionError("subspace is not invariant")
            cols.append(x)
        sub_mats.append(Matrix.from_cols(field, cols,
                                         rows_hint=len(basis)))
    return sub_mats


def _min_ideal_candidates(S: OrdinaryAlgebra, e_basis, seed=777):
    """Deterministic candidate generators for a minimal left ideal."""
    field = S.field
    cands = [list(v) for v in e_basis]
    for a, b in itertools.combinations(range(len(e_basis)), 2):
        cands.append([x + y for x, y in zip(e_basis[a], e_basis[b])])
        cands.append([x - y for x, y in zip(e_basis[a], e_basis[b])])
    # elements b - lambda.e for rational eigenvalues lambda: reliably
    # non-invertible inside the block
    rng = _random.Random(seed)
    for _ in range(40):
        v = [field.zero] * len(e_basis[0])
        for col in e_basis:
            c = field(rng.randint(-2, 2))
            for i, x in enumerate(col):
                if x:
                    v[i] = v[i] + c * x
        cands.append(v)
    return [c for c in cands if any(c)]


def block_simple_module(S: OrdinaryAlgebra, e, seed=777):
    """A minimal left ideal of the block eS, certified by dim^2 = dim block.

    Returns (basis columns inside S, action matrices) or raises the
    extend-the-field error if no candidate certifies splitness.
    """
    field = S.field
    mats = [S.left_mult_matrix(S.algebra.basis_vec(i)) for i in range(S.n)]
    # block subspace e.S.e? For a central idempotent, the block is e.S
    block_cols = []
    for i in range(S.n):
        v = S.mul(e, S.algebra.basis_vec(i))
        col = [field.zero] * S.n
        for k, c in v.items():
            col[k] = c
        block_cols.append(col)
    e_basis = _subspace_basis(field, block_cols, S.n)
    block_dim = len(e_basis)

    # eigenvalue-shift candidates: b - lambda.e with lambda a root of the
    # minimal polynomial of b in the block
    extra = []
    for col in e_basis:
        b = {i: c for i, c in enumerate(col) if c}
        mp = _minpoly(S, S.mul(e, b), e)
        for lam in _poly_roots(field, mp):
            shifted = dict(b)
            for i, c in e.items():
                shifted[i] = shifted.get(i, field.zero) - lam * c
            v = [field.zero] * S.n
            for i, c in shifted.items():
                if c:
                    v[i] = c
            if any(v):
                extra.append(v)

    best = None
    for v in _min_ideal_candidates(S, e_basis) + extra:
        span = _submodule_span(S, mats, [v], S.n)
        d = len(span)
        if d == 0:
            continue
        if best is None or d < len(best):
            best = span
            if d * d == block_dim:
                break
    if best is None or len(best) ** 2 != block_dim:
        raise ValueError(
            "block is not split over the ground field: extend the field")
    sub_mats = _module_on_subspace(S, mats, best)
    return best, sub_mats


def count_simples(A: OrdinaryAlgebra, with_modules=False):
    """Number of Wedderburn blocks of A/rad(A), fully certified.

    Errors with "extend the field" whenever the quotient fails to split.
    With with_modules=True also returns the simple modules (as modules
    over A, pulled back along the projection).
    """
    rad = radical(A)
    S, project, lift = (quotient_algebra(A, rad) if rad
                        else (A, lambda v: dict(v),
                              lambda j: A.algebra.basis_vec(j)))
    if radical(S):
        raise AssertionError("radical of the quotient is nonzero")
    blocks = central_idempotents(S)
    found = [block_simple_module(S, e) for e in blocks]
    total_sq = sum(len(basis) ** 2 for basis, _ in found)
    if total_sq != S.n:
        raise ValueError(
            "sum of squared simple dimensions misses the quotient "
            "dimension: extend the field")
    if not with_modules:
        return len(blocks)
    simples = []
    for basis, _ in found:
        # action of A through the projection
        bm = Matrix.from_cols(S.field, basis, rows_hint=S.n)
        mats = []
        for i in range(A.n):
            img = project(A.algebra.basis_vec(i))
            Lm = S.left_mult_matrix(img)
            cols = []
            for v in basis:
                x = solve(bm, Lm.apply(v))
                cols.append(x)
            mats.append(Matrix.from_cols(S.field, cols,
                                         rows_hint=len(basis)))
        simples.append(OrdinaryModule(A, mats))
    return len(blocks), simples


def simple_modules(A: OrdinaryAlgebra):
    _, mods = count_simples(A, with_modules=True)
    return mods


def decompose_regular_semisimple(A: OrdinaryAlgebra, seed=99):
    """Independent cross-check: simple factors of A/rad as a module,
    found by repeated minimal-submodule search, deduplicated by Hom."""
    rad = radical(A)
    S, _, _ = (quotient_algebra(A, rad) if rad
               else (A, None, None))
    mats = [S.left_mult_matrix(S.algebra.basis_vec(i)) for i in range(S.n)]
    reps = []
    current_mats = mats
    dim = S.n
    while dim > 0:
        # find a minimal submodule by shrinking
        std = [[S.field.one if i == j else S.field.zero for i in range(dim)]
               for j in range(dim)]
        best = None
        for v0 in _min_ideal_candidates(S, std, seed):
            span = _submodule_span(S, current_mats, [v0], dim)
            if 0 < len(span) and (best is None or len(span) < len(best)):
                best = span
        if best is None:
            break
        sub = _module_on_subspace(S, current_mats, best)
        reps.append(sub)
        # quotient by the submodule and continue
        std = [[S.field.one if i == j else S.field.zero for i in range(dim)]
               for j in range(dim)]
        comp = quotient_representatives(best, std, S.field, dim)
        if not comp:
            break
        m = Matrix.from_cols(S.field, list(best) + comp, rows_hint=dim)
        minv = inverse(m)
        qmats = []
        k = len(best)
        for mm in current_mats:
            cols = []
            for v in comp:
                x = minv.apply(mm.apply(v))
                cols.append(x[k:])
            qmats.append(Matrix.from_cols(S.field, cols, rows_hint=len(comp)))
        current_mats = qmats
        dim = len(comp)
    # dedup by intertwiner existence
    distinct = []
    for mats1 in reps:
        if not any(_has_nonzero_hom(S, mats1, mats2) for mats2 in distinct):
            distinct.append(mats1)
    return len(distinct)


def _has_nonzero_hom(A, mats1, mats2):
    d1 = mats1[0].rows if mats1 else 0
    d2 = mats2[0].rows if mats2 else 0
    field = A.field
    rows = []
    for i in range(A.n):
        m1, m2 = mats1[i], mats2[i]
        for r in range(d2):
            for c in range(d1):
                row = [field.zero] * (d1 * d2)
                for k in range(d1):
                    row[k * d2 + r] = row[k * d2 + r] + m1.data[k][c]
                for k in range(d2):
                    row[c * d2 + k] = row[c * d2 + k] - m2.data[r][k]
                rows.append(row)
    m = Matrix.from_rows(field, rows) if rows else Matrix(field, 0, d1 * d2)
    _, kernel, _ = eliminate(m)
    return bool(kernel)


# ---------------------------------------------------------------------------
# Hom, End, classical Morita functors


def hom_modules(A: OrdinaryAlgebra, M: OrdinaryModule, N: OrdinaryModule):
    """Basis of Hom_A(M, N) as matrices (N.dim x M.dim)."""
    field = A.field
    dm, dn = M.dim, N.dim
    if dm == 0 or dn == 0:
        return []
    rows = []
    for i in range(A.n):
        mm, mn = M.mats[i], N.mats[i]
        # phi . rho_M(e_i) - rho_N(e_i) . phi = 0
        for r in range(dn):
            for c in range(dm):
                row = [field.zero] * (dn * dm)
                for k in range(dm):
                    row[r * dm + k] = row[r * dm + k] + mm.data[k][c]
                for k in range(dn):
                    row[k * dm + c] = row[k * dm + c] - mn.data[r][k]
                rows.append(row)
    m = Matrix.from_rows(field, rows)
    _, kernel, _ = eliminate(m)
    out = []
    for v in kernel:
        mat = Matrix(field, dn, dm)
        for r in range(dn):
            for c in range(dm):
                mat.data[r][c] = v[r * dm + c]
        out.append(mat)
    return out


@dataclass
class MoritaData:
    A: OrdinaryAlgebra
    M: OrdinaryModule
    gamma: OrdinaryAlgebra
    gamma_mats: list  # basis of End_A(M) as matrices
    solver: Matrix    # expresses an intertwiner in the gamma basis

    def gamma_coords(self, mat: Matrix):
        flat = [mat.data[r][c] for r in range(mat.rows)
                for c in range(mat.cols)]
        x = solve(self.solver, flat)
        if x is None:
            raise ValueError("matrix is not an A-endomorphism of M")
        return x


def gamma(A: OrdinaryAlgebra, M: OrdinaryModule) -> MoritaData:
    """Gamma = End_A(M) with multiplication = composition."""
    field = A.field
    mats = hom_modules(A, M, M)
    g = len(mats)
    flat_cols = [[m.data[r][c] for r in range(M.dim) for c in range(M.dim)]
                 for m in mats]
    solver = Matrix.from_cols(field, flat_cols, rows_hint=M.dim * M.dim)
    labels = [("g", i) for i in range(g)]
    space = GradedVectorSpace({0: labels})
    mult = {}
    for a in range(g):
        for b in range(g):
            comp = mats[a] @ mats[b]
            flat = [comp.data[r][c] for r in range(M.dim)
                    for c in range(M.dim)]
            x = solve(solver, flat)
            col = {i: c for i, c in enumerate(x) if c}
            if col:
                mult[(a, b)] = col
    idm = Matrix.identity(field, M.dim)
    flat = [idm.data[r][c] for r in range(M.dim) for c in range(M.dim)]
    unit = {i: c for i, c in enumerate(solve(solver, flat)) if c}
    G = OrdinaryAlgebra(CurvedAlgebra(field, space, unit, mult, {}, {},
                                      check=True))
    return MoritaData(A, M, G, mats, solver)


def classical_F(md: MoritaData, N: OrdinaryModule):
    """F(N) = Hom_A(N, M) as a left Gamma-module (post-composition).

    Returns (module, basis) where basis lists the underlying intertwiners.
    """
    field = md.A.field
    basis = hom_modules(md.A, N, md.M)
    t = len(basis)
    flat_cols = [[m.data[r][c] for r in range(md.M.dim)
                  for c in range(N.dim)] for m in basis]
    solver = (Matrix.from_cols(field, flat_cols,
                               rows_hint=md.M.dim * N.dim)
              if t else Matrix(field, md.M.dim * N.dim, 0))
    mats = []
    for gmat in md.gamma_mats:
        cols = []
        for b in basis:
            comp = gmat @ b
            flat = [comp.data[r][c] for r in range(md.M.dim)
                    for c in range(N.dim)]
            cols.append(solve(solver, flat) if t else [])
        mats.append(Matrix.from_cols(field, cols, rows_hint=t))
    # express in the gamma algebra's basis order
    gm = []
    for i in range(md.gamma.n):
        gm.append(mats[i])
    return OrdinaryModule(md.gamma, gm), basis, solver


def classical_G(md: MoritaData, L: OrdinaryModule):
    """G(L) = Hom_Gamma(L, M) as a left A-module (post-composition)."""
    field = md.A.field
    # M as a Gamma-module: gamma basis acts by its matrix
    Mg = OrdinaryModule(md.gamma, list(md.gamma_mats), check=False)
    basis = hom_modules(md.gamma, L, Mg)
    t = len(basis)
    flat_cols = [[m.data[r][c] for r in range(md.M.dim)
                  for c in range(L.dim)] for m in basis]
    solver = (Matrix.from_cols(field, flat_cols,
                               rows_hint=md.M.dim * L.dim)
              if t else Matrix(field, md.M.dim * L.dim, 0))
    mats = []
    for i in range(md.A.n):
        rho = md.M.mats[i]
        cols = []
        for b in basis:
            comp = rho @ b
            flat = [comp.data[r][c] for r in range(md.M.dim)
                    for c in range(L.dim)]
            cols.append(solve(solver, flat) if t else [])
        mats.append(Matrix.from_cols(field, cols, rows_hint=t))
    return OrdinaryModule(md.A, mats), basis, solver


def morita_unit(md: MoritaData, N: OrdinaryModule):
    """The natural map N -> GF(N), n -> (phi -> phi(n)); returns
    (matrix, is_isomorphism)."""
    field = md.A.field
    FN, fbasis, _ = classical_F(md, N)
    GFN, gbasis, gsolver = classical_G(md, FN)
    cols = []
    for j in range(N.dim):
        # ev_j: FN -> M, phi -> phi(x_j): matrix with columns phi_i(x_j)
        ev = Matrix(field, md.M.dim, FN.dim)
        for i, phi in enumerate(fbasis):
            for r in range(md.M.dim):
                ev.data[r][i] = phi.data[r][j]
        flat = [ev.data[r][c] for r in range(md.M.dim)
                for c in range(FN.dim)]
        x = solve(gsolver, flat)
        if x is None:
            raise AssertionError("evaluation map is not Gamma-linear")
        cols.append(x)
    mat = Matrix.from_cols(field, cols, rows_hint=GFN.dim)
    is_iso = (mat.rows == mat.cols and inverse(mat) is not None)
    # also check A-linearity of the unit
    for i in range(md.A.n):
        if not (mat @ N.mats[i] == GFN.mats[i] @ mat):
            return mat, False
    return mat, is_iso


# ---------------------------------------------------------------------------
# projective resolutions and the Ext oracle


def _top_lifts(A: OrdinaryAlgebra, M: OrdinaryModule, rad):
    """Representatives of a basis of M / rad.M (first-pivot convention)."""
    field = A.field
    radm_cols = []
    for v in rad:
        vec = {i: c for i, c in enumerate(v) if c}
        rho = M.act_matrix(vec)
        for j in range(M.dim):
            radm_cols.append(rho.col(j))
    radm = _subspace_basis(field, radm_cols, M.dim)
    std = [[field.one if i == j else field.zero for i in range(M.dim)]
           for j in range(M.dim)]
    return quotient_representatives(radm, std, field, M.dim), radm


def free_resolution(A: OrdinaryAlgebra, M: OrdinaryModule, length: int):
    """Free covers of tops, iterated: returns (ranks, deltas) where
    deltas[i] is the matrix over A of P_{i+1} -> P_i (entries: A-vectors),
    and ranks[i] = rank of P_i.  Stops early if a kernel vanishes.
    """
    field = A.field
    rad = radical(A)
    n = A.n

    # state: current module as (dim, action mats, embedding of basis into
    # P_prev = A^{t_prev} as columns), starting with M itself
    ranks = []
    deltas = []
    cur = M
    embed = None  # columns in A^{t_prev}
    t_prev = None
    for step in range(length + 1):
        if cur.dim == 0:
            break
        tops, _ = _top_lifts(A, cur, rad)
        t = len(tops)
        ranks.append(t)
        if embed is not None:
            # delta: A^t -> A^{t_prev}: generator g -> embed(top_g)
            delta = [[{} for _ in range(t)] for _ in range(t_prev)]
            for g, top in enumerate(tops):
                # top is a vector in cur; its embedding is a column in
                # A^{t_prev}
                col = [field.zero] * (n * t_prev)
                for i, c in enumerate(top):
                    if c:
                        for r in range(n * t_prev):
                            col[r] = col[r] + c * embed[i][r]
                for slot in range(t_prev):
                    entry = {k: col[slot * n + k] for k in range(n)
                             if col[slot * n + k]}
                    delta[slot][g] = entry
            deltas.append(delta)
        # kernel of A^t -> cur, as a module with embedding into A^t
        cov = Matrix(field, cur.dim, n * t)
        for g in range(t):
            for k in range(n):
                img = cur.act_matrix({k: field.one}).apply(tops[g])
                for r in range(cur.dim):
                    cov.data[r][g * n + k] = img[r]
        _, kernel, _ = eliminate(cov)
        if not kernel:
            # exact already; record the zero next stage
            ranks.append(0)
            break
        # kernel as a module: basis vectors live in A^t
        kb = kernel
        km = Matrix.from_cols(field, kb, rows_hint=n * t)
        mats = []
        for i in range(n):
            cols = []
            for v in kb:
                img = [field.zero] * (n * t)
                for slot in range(t):
                    xvec = {k: v[slot * n + k] for k in range(n)
                            if v[slot * n + k]}
                    out = A.mul(A.algebra.basis_vec(i), xvec)
                    for k, c in out.items():
                        img[slot * n + k] = c
                x = solve(km, img)
                if x is None:
                    raise AssertionError("kernel is not a submodule")
                cols.append(x)
            mats.append(Matrix.from_cols(field, cols, rows_hint=len(kb)))
        cur = OrdinaryModule(A, mats, check=False)
        embed = kb
        t_prev = t
    return ranks, deltas


def ext_oracle(A: OrdinaryAlgebra, M: OrdinaryModule, N: OrdinaryModule,
               n_max: int):
    """dim Ext^n_A(M, N) for 0 <= n <= n_max, via a free resolution."""
    field = A.field
    if M.dim == 0 or N.dim == 0:
        return [0] * (n_max + 1)
    rad = radical(A)
    if not rad:
        # semisimple: all modules projective
        h0 = len(hom_modules(A, M, N))
        return [h0] + [0] * n_max
    ranks, deltas = free_resolution(A, M, n_max + 1)
    # Hom(A^t, N) = N^t; induced maps from deltas
    dims = []
    spaces = [ranks[i] * N.dim if i < len(ranks) else 0
              for i in range(n_max + 2)]

    def induced(i):
        """Matrix of Hom(P_i, N) -> Hom(P_{i+1}, N)."""
        if i + 1 >= len(ranks) or i >= len(deltas):
            return Matrix(field, spaces[i + 1] if i + 1 < len(spaces) else 0,
                          spaces[i])
        delta = deltas[i]  # t_i x t_{i+1} entries in A
        t_i, t_next = ranks[i], ranks[i + 1]
        m = Matrix(field, t_next * N.dim, t_i * N.dim)
        for g in range(t_next):
            for slot in range(t_i):
                entry = delta[slot][g]
                if not entry:
                    continue
                rho = N.act_matrix(entry)
                for r in range(N.dim):
                    for c in range(N.dim):
                        v = rho.data[r][c]
                        if v:
                            m.data[g * N.dim + r][slot * N.dim + c] = v
        return m

    out = []
    prev_rank = 0
    for i in range(n_max + 1):
        di = induced(i)
        r_i, kernel, _ = eliminate(di)
        ker_dim = len(kernel)
        out.append(ker_dim - prev_rank)
        prev_rank = r_i
    return out


def global_dimension_probe(A: OrdinaryAlgebra, n_max: int):
    """max n <= n_max with Ext^n(S, T) != 0 over simple pairs, or None
    when Ext has not died by n_max ("exceeded")."""
    simples = simple_modules(A)
    best = 0
    for S in simples:
        for T in simples:
            dims = ext_oracle(A, S, T, n_max)
            for n, d in enumerate(dims):
                if d:
                    best = max(best, n)
    if best >= n_max:
        return None
    return best
