"""Integer-graded vector spaces, degree-homogeneous maps and cochain complexes.

Conventions used everywhere in this package:

* cohomological grading: differentials have degree +1 and d∘d = 0 is
  checked eagerly whenever a Complex is built;
* suspension raises degree: shift(V, k) puts V_n in degree n+k;
* duals negate degrees, (V*)_n = (V_{-n})*, and keep the same basis labels;
* the Koszul sign rule is implemented exactly once, in dual_map /
  tensor_map / hom_complex, and audited by the eager d² checks rather
  than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .linalg import Matrix, eliminate, solve, quotient_representatives


class GradedVectorSpace:
    """Finite-support map degree -> ordered tuple of basis labels."""

    __slots__ = ("components",)

    def __init__(self, components):
        comp = {}
        for n, labels in components.items():
            labels = tuple(labels)
            if not labels:
                continue
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate basis labels in degree {n}")
            comp[n] = labels
        self.components = comp

    @property
    def degrees(self):
        return tuple(sorted(self.components))

    def dim(self, n: int) -> int:
        return len(self.components.get(n, ()))

    @property
    def total_dim(self) -> int:
        return sum(len(v) for v in self.components.values())

    def labels(self, n: int):
        return self.components.get(n, ())

    def position(self, n: int, label) -> int:
        return self.components[n].index(label)

    def __eq__(self, other):
        return (isinstance(other, GradedVectorSpace)
                and self.components == other.components)

    def __hash__(self):
        return hash(tuple(sorted((n, v) for n, v in self.components.items())))

    def __repr__(self):
        dims = {n: len(v) for n, v in sorted(self.components.items())}
        return f"GradedVectorSpace({dims})"


def shift(V: GradedVectorSpace, k: int) -> GradedVectorSpace:
    """Suspension: the degree-n part of the result is V_{n-k}."""
    return GradedVectorSpace({n + k: labels for n, labels in V.components.items()})


def dual(V: GradedVectorSpace) -> GradedVectorSpace:
    """(V*)_n = (V_{-n})*, indexed by the same labels."""
    return GradedVectorSpace({-n: labels for n, labels in V.components.items()})


def tensor(V: GradedVectorSpace, W: GradedVectorSpace) -> GradedVectorSpace:
    """(V (x) W)_n = sum over i+j=n of V_i (x) W_j, labels are (a, b) pairs."""
    comp = {}
    for i in V.degrees:
        for j in W.degrees:
            comp.setdefault(i + j, []).extend(
                (a, b) for a in V.labels(i) for b in W.labels(j))
    return GradedVectorSpace(comp)


def hom(V: GradedVectorSpace, W: GradedVectorSpace) -> GradedVectorSpace:
    """hom(V, W)_n = prod over j of Hom(V_j, W_{j+n}); labels (j, a, b)."""
    comp = {}
    for j in V.degrees:
        for m in W.degrees:
            n = m - j
            comp.setdefault(n, []).extend(
                (j, a, b) for a in V.labels(j) for b in W.labels(m))
    return GradedVectorSpace(comp)


class GradedMap:
    """Degree-homogeneous linear map, stored as one matrix per source degree.

    block[n] maps V_n (columns) to W_{n+degree} (rows); missing blocks are
    zero.  Zero blocks are normalised away so dict equality is map equality.
    """

    __slots__ = ("field", "source", "target", "degree", "blocks")

    def __init__(self, field, source, target, degree, blocks):
        self.field = field
        self.source = source
        self.target = target
        self.degree = degree
        clean = {}
        for n, m in blocks.items():
            if m.rows != target.dim(n + degree) or m.cols != source.dim(n):
                raise ValueError(f"block at degree {n} has wrong shape")
            if not m.is_zero():
                clean[n] = m
        self.blocks = clean

    @classmethod
    def zero(cls, field, source, target, degree=0):
        return cls(field, source, target, degree, {})

    @classmethod
    def identity(cls, field, V):
        return cls(field, V, V, 0,
                   {n: Matrix.identity(field, V.dim(n)) for n in V.degrees})

    def block(self, n: int) -> Matrix:
        m = self.blocks.get(n)
        if m is None:
            return Matrix(self.field, self.target.dim(n + self.degree),
                          self.source.dim(n))
        return m

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self after other."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        blocks = {}
        for n in other.source.degrees:
            m = self.block(n + other.degree) @ other.block(n)
            blocks[n] = m
        return GradedMap(self.field, other.source, self.target,
                         self.degree + other.degree, blocks)

    def __add__(self, other):
        if (self.source != other.source or self.target != other.target
                or self.degree != other.degree):
            raise ValueError("sum of incompatible maps")
        return GradedMap(self.field, self.source, self.target, self.degree,
                         {n: self.block(n) + other.block(n)
                          for n in set(self.blocks) | set(other.blocks)})

    def scale(self, c):
        return GradedMap(self.field, self.source, self.target, self.degree,
                         {n: m.scale(c) for n, m in self.blocks.items()})

    def __neg__(self):
        return self.scale(-self.field.one)

    def __eq__(self, other):
        return (isinstance(other, GradedMap) and self.source == other.source
                and self.target == other.target and self.degree == other.degree
                and self.blocks == other.blocks)

    def is_zero(self):
        return not self.blocks

    def __repr__(self):
        return f"GradedMap(degree={self.degree}, blocks={sorted(self.blocks)})"


def dual_map(f: GradedMap) -> GradedMap:
    """Dual with the Koszul sign: (f*)(phi) = (-1)^{|f||phi|} phi o f.

    Same degree as f; satisfies dual(g o f) = (-1)^{|f||g|} dual(f) o dual(g).
    """
    src = dual(f.target)
    tgt = dual(f.source)
    blocks = {}
    for n, m in f.blocks.items():
        # phi lives in (W*)_k with k = -(n + f.degree); phi o f on V_n.
        k = -(n + f.degree)
        t = m.transpose()
        if (f.degree * k) % 2:
            t = -t
        blocks[k] = t
    return GradedMap(f.field, src, tgt, f.degree, blocks)


def _tensor_layout(V: GradedVectorSpace, W: GradedVectorSpace):
    """Per tensor-degree: ordered list of (i, j, pa, pb) mirroring tensor()."""
    layout = {}
    for i in V.degrees:
        for j in W.degrees:
            layout.setdefault(i + j, []).extend(
                (i, j, pa, pb)
                for pa in range(V.dim(i)) for pb in range(W.dim(j)))
    return layout


def tensor_map(f: GradedMap, g: GradedMap) -> GradedMap:
    """(f (x) g)(v (x) w) = (-1)^{|g||v|} f(v) (x) g(w)."""
    field = f.field
    src = tensor(f.source, g.source)
    tgt = tensor(f.target, g.target)
    src_layout = _tensor_layout(f.source, g.source)
    tgt_layout = _tensor_layout(f.target, g.target)
    tgt_pos = {n: {t: p for p, t in enumerate(lst)}
               for n, lst in tgt_layout.items()}
    deg = f.degree + g.degree
    blocks = {}
    for n, entries in src_layout.items():
        rows = tgt.dim(n + deg)
        cols = len(entries)
        if rows == 0 or cols == 0:
            continue
        m = Matrix(field, rows, cols)
        lookup = tgt_pos.get(n + deg, {})
        for col, (i, j, pa, pb) in enumerate(entries):
            fb = f.block(i)
            gb = g.block(j)
            sign = -field.one if (g.degree * i) % 2 else field.one
            for pa2 in range(fb.rows):
                c1 = fb.data[pa2][pa]
                if not c1:
                    continue
                for pb2 in range(gb.rows):
                    c2 = gb.data[pb2][pb]
                    if not c2:
                        continue
                    row = lookup[(i + f.degree, j + g.degree, pa2, pb2)]
                    m.data[row][col] = m.data[row][col] + sign * c1 * c2
        blocks[n] = m
    return GradedMap(field, src, tgt, deg, blocks)


class Complex:
    """Graded space with a degree +1 differential squaring to zero."""

    __slots__ = ("field", "space", "d")

    def __init__(self, field, space: GradedVectorSpace, d: GradedMap):
        if d.degree != 1:
            raise ValueError("differential must have degree +1")
        if d.source != space or d.target != space:
            raise ValueError("differential does not act on the given space")
        dd = d.compose(d)
        if not dd.is_zero():
            bad = sorted(dd.blocks)
            raise ValueError(f"d^2 != 0 (nonzero blocks at degrees {bad})")
        self.field = field
        self.space = space
        self.d = d

    def __repr__(self):
        return f"Complex({self.space!r})"


def zero_complex(field) -> Complex:
    V = GradedVectorSpace({})
    return Complex(field, V, GradedMap.zero(field, V, V, 1))


def tensor_complex(C: Complex, D: Complex) -> Complex:
    V = tensor(C.space, D.space)
    idC = GradedMap.identity(C.field, C.space)
    idD = GradedMap.identity(D.field, D.space)
    d = tensor_map(C.d, idD) + tensor_map(idC, D.d)
    return Complex(C.field, V, d)


def hom_complex(C: Complex, D: Complex) -> Complex:
    """Hom-complex with d(f) = d_D o f - (-1)^{|f|} f o d_C."""
    field = C.field
    V, W = C.space, D.space
    H = hom(V, W)

    def h_layout(n):
        out = []
        for j in V.degrees:
            for pa in range(V.dim(j)):
                for pb in range(W.dim(j + n)):
                    out.append((j, pa, pb))
        return out

    blocks = {}
    for n in H.degrees:
        src_entries = h_layout(n)
        tgt_entries = h_layout(n + 1)
        tgt_pos = {t: p for p, t in enumerate(tgt_entries)}
        rows, cols = len(tgt_entries), len(src_entries)
        if rows == 0 or cols == 0:
            continue
        m = Matrix(field, rows, cols)
        sgn = -field.one if n % 2 else field.one
        for col, (j, pa, pb) in enumerate(src_entries):
            # post-compose with d_D: e_{b<-a} at j goes to (d b)<-a.
            db = D.d.block(j + n)
            for pb2 in range(db.rows):
                c = db.data[pb2][pb]
                if c:
                    row = tgt_pos[(j, pa, pb2)]
                    m.data[row][col] = m.data[row][col] + c
            # pre-compose with d_C: contributions from V_{j-1}.
            dc = C.d.block(j - 1)
            for pa2 in range(dc.cols):
                c = dc.data[pa][pa2] if dc.rows > pa else field.zero
                if c:
                    row = tgt_pos[(j - 1, pa2, pb)]
                    m.data[row][col] = m.data[row][col] - sgn * c
        blocks[n] = m
    return Complex(field, H, GradedMap(field, H, H, 1, blocks))


def dual_complex(C: Complex) -> Complex:
    return Complex(C.field, dual(C.space), dual_map(C.d))


@dataclass
class Cohomology:
    betti: int
    representatives: list = dfield(default_factory=list)


def cohomology(C: Complex, window=None):
    """Betti numbers with explicit representative cocycles.

    window is an inclusive (lo, hi) degree interval; default is the full
    support of the complex.  Representatives follow the first-pivot
    convention, so output is deterministic.
    """
    degrees = C.space.degrees
    if window is None:
        if not degrees:
            return {}
        window = (degrees[0], degrees[-1])
    lo, hi = window
    out = {}
    for n in range(lo, hi + 1):
        dn = C.d.block(n)
        _, kernel, _ = eliminate(dn)
        dprev = C.d.block(n - 1)
        _, _, image = eliminate(dprev)
        reps = quotient_representatives(image, kernel, C.field, C.space.dim(n))
        out[n] = Cohomology(betti=len(reps), representatives=reps)
    return out


def is_chain_map(f: GradedMap, C: Complex, D: Complex) -> bool:
    if f.degree != 0:
        return False
    return f.compose(C.d) == D.d.compose(f)


def is_quasi_iso(f: GradedMap, C: Complex, D: Complex, window) -> bool:
    """True iff the induced map on cohomology is an isomorphism on the window.

    Raises if f is not a chain map.
    """
    if not is_chain_map(f, C, D):
        raise ValueError("not a chain map")
    lo, hi = window
    hC = cohomology(C, window)
    hD = cohomology(D, window)
    for n in range(lo, hi + 1):
        if hC[n].betti != hD[n].betti:
            return False
        b = hC[n].betti
        if b == 0:
            continue
        # matrix of the induced map in the chosen representative bases:
        # solve [reps_D | im d_D] x = f(rep) and keep the reps_D part.
        _, _, imD = eliminate(D.d.block(n - 1))
        basis_cols = hD[n].representatives + imD
        basis = Matrix.from_cols(D.field, basis_cols, rows_hint=D.space.dim(n))
        induced = Matrix(D.field, b, b)
        for j, rep in enumerate(hC[n].representatives):
            img = f.block(n).apply(rep)
            x = solve(basis, img)
            if x is None:
                raise AssertionError("chain map image escaped the cocycles")
            for i in range(b):
                induced.data[i][j] = x[i]
        r, _, _ = eliminate(induced)
        if r != b:
            return False
    return True


def truncate_complex(C: Complex, n: int, m: int) -> Complex:
    """Canonical two-sided truncation supported on [n, m].

    Degree i keeps M^i for n < i < m, with coker(d: M^{n-1} -> M^n) at i=n
    and ker(d: M^m -> M^{m+1}) at i=m; the end maps are the induced ones.
    Cohomology inside [n, m] is unchanged, so acyclic input stays acyclic.
    """
    if n >= m:
        raise ValueError("need n < m")
    field = C.field
    comp = {}
    # bottom: coker of d^{n-1}: representatives of M^n modulo the image.
    _, _, im_low = eliminate(C.d.block(n - 1))
    dim_n = C.space.dim(n)
    std = [[field.one if i == j else field.zero for i in range(dim_n)]
           for j in range(dim_n)]
    coker_reps = quotient_representatives(im_low, std, field, dim_n)
    if coker_reps:
        comp[n] = tuple(("coker", i) for i in range(len(coker_reps)))
    for i in range(n + 1, m):
        if C.space.dim(i):
            comp[i] = C.space.labels(i)
    # top: kernel of d^m.
    _, ker_top, _ = eliminate(C.d.block(m))
    if ker_top:
        comp[m] = tuple(("ker", i) for i in range(len(ker_top)))
    space = GradedVectorSpace(comp)

    blocks = {}
    ker_mat = (Matrix.from_cols(field, ker_top, rows_hint=C.space.dim(m))
               if ker_top else None)
    for i in range(n, m):
        tgt_dim = space.dim(i + 1)
        src_dim = space.dim(i)
        if tgt_dim == 0 or src_dim == 0:
            continue
        if i == n:
            cols = [C.d.block(n).apply(rep) for rep in coker_reps]
        else:
            cols = [C.d.block(i).col(j) for j in range(C.space.dim(i))]
        if i + 1 == m:
            # express images in the kernel basis
            new_cols = []
            for c in cols:
                x = solve(ker_mat, c)
                if x is None:
                    raise AssertionError("d does not land in ker at the top")
                new_cols.append(x)
            cols = new_cols
        blocks[i] = Matrix.from_cols(field, cols, rows_hint=tgt_dim)
    d = GradedMap(field, space, space, 1, blocks)
    return Complex(field, space, d)


def map_from_blocks(field, source, target, degree, blocks) -> GradedMap:
    return GradedMap(field, source, target, degree, blocks)
