import random

import pytest

from bardual.algebras import (CurvedMorphism, ValidationError,
                              acyclic_two_dim, algebra_from_tables,
                              bimodule_envelope, compose_curved,
                              dual_regular_module, endomorphism_algebra,
                              free_module, identity_morphism,
                              invert_morphism, opposite, product,
                              regular_bimodule, regular_module, validate)
from bardual.catalog import builtin_algebra, BUILTIN_ALGEBRAS
from bardual.fields import QQ
from bardual.graded import (GradedMap, GradedVectorSpace, cohomology,
                            is_quasi_iso)
from bardual.sampling import random_dg_algebra
from bardual.twisting import twist_algebra


def dual_numbers(field=QQ):
    return algebra_from_tables(field, {0: ["1", "x"]}, "1",
                               {("x", "x"): []}, {})


def test_dual_numbers_valid():
    assert validate(dual_numbers()).ok


def test_corrupted_leibniz_reported():
    # x^2 = x with dx = 1 breaks the Leibniz rule: d(x.x) = 2x != 1
    with pytest.raises(ValidationError) as exc:
        algebra_from_tables(QQ, {0: ["1"], -1: ["x"]}, "1",
                            {("x", "x"): [(QQ(1), "x")]},
                            {"x": [(QQ(1), "1")]})
    assert any(f.identity in ("leibniz", "mult-degree")
               for f in exc.value.report.failures)


def test_curvature_degree_guard():
    with pytest.raises(ValidationError) as exc:
        algebra_from_tables(QQ, {0: ["1"], 3: ["h"]}, "1",
                            {("h", "h"): []}, {}, curvature=[(QQ(1), "h")])
    assert any(f.identity == "curvature-degree"
               for f in exc.value.report.failures)


def test_all_builtins_validate(field):
    for name in BUILTIN_ALGEBRAS:
        assert validate(builtin_algebra(name, field)).ok, name


def test_product_of_fields_has_orthogonal_idempotents():
    k = builtin_algebra("k")
    P, pA, pC = product(k, k)
    assert P.dim == 2
    e1, e2 = P.basis_vec(0), P.basis_vec(1)
    assert P.mul(e1, e2) == {} and P.mul(e1, e1) == e1
    assert P.unit == {0: QQ(1), 1: QQ(1)}


def test_projection_to_factor_is_quasi_iso():
    D = dual_numbers()
    C = acyclic_two_dim(QQ)
    P, pA, _ = product(D, C)
    assert validate(P).ok
    f = pA.as_graded_map()
    assert is_quasi_iso(f, P.as_complex(), D.as_complex(), (-1, 1))


def test_acyclic_two_dim_structure():
    C = acyclic_two_dim(QQ)
    x = C.idx(-1, "x")
    one = C.idx(0, "1")
    assert C.diff[x] == {one: QQ(1)}
    assert C.mult.get((x, x), {}) == {}
    assert all(c.betti == 0 for c in cohomology(C.as_complex()).values())


def test_endomorphism_algebra_of_point():
    V = GradedVectorSpace({0: ["m"]})
    E = endomorphism_algebra(V, None, QQ)
    assert E.dim == 1 and validate(E).ok


def test_endomorphism_algebra_dims_and_dg():
    V = GradedVectorSpace({0: ["a"], 1: ["b"]})
    E = endomorphism_algebra(V, GradedMap.zero(QQ, V, V, 1), QQ)
    dims = {n: E.space.dim(n) for n in E.space.degrees}
    assert dims == {-1: 1, 0: 2, 1: 1}
    assert not E.diff and validate(E).ok


def test_endomorphism_differential_squares_to_zero():
    M = acyclic_two_dim(QQ).as_complex()
    E = endomorphism_algebra(M.space, M.d, QQ)
    assert validate(E).ok and not E.curvature
    for i in range(E.dim):
        assert E.d(E.diff.get(i, {})) == {}


def test_opposite_of_commutative_is_equal():
    D = dual_numbers()
    O = opposite(D)
    assert O.mult == D.mult


def test_envelope_curvature_and_bimodule():
    # curved algebra: y in degree 1 with y^2 = z, twisted structure
    A = algebra_from_tables(
        QQ, {0: ["1"], 1: ["y"], 2: ["z"]}, "1",
        {("y", "y"): [(QQ(1), "z")], ("y", "z"): [], ("z", "y"): [],
         ("z", "z"): []}, {})
    Ax = twist_algebra(A, {A.idx(1, "y"): QQ(1)})
    assert Ax.curvature
    env = bimodule_envelope(Ax)
    # curvature is h (x) 1 - 1 (x) h
    assert env.curvature and validate(env).ok
    B = regular_bimodule(Ax, env)
    assert B.validate().ok
    # ... while A is not a module over itself when curved
    with pytest.raises(ValidationError):
        regular_module(Ax)


def test_envelope_curvature_zero_when_uncurved():
    env = bimodule_envelope(dual_numbers())
    assert env.curvature == {}


def test_compose_identity_and_inverse():
    A = builtin_algebra("kxk")
    ida = identity_morphism(A)
    assert compose_curved(ida, ida).f == ida.f
    # an inner twisted automorphism and its inverse
    C = acyclic_two_dim(QQ)
    xi = {C.idx(-1, "x"): QQ(1)} if False else {}
    m = identity_morphism(C)
    inv = invert_morphism(m)
    comp = compose_curved(m, inv)
    assert comp.a == {} and comp.f == identity_morphism(C).f


def test_inner_conjugation_is_curved_morphism():
    A = algebra_from_tables(
        QQ, {0: ["1"], 1: ["y"], 2: ["z"]}, "1",
        {("y", "y"): [(QQ(1), "z")], ("y", "z"): [], ("z", "y"): [],
         ("z", "z"): []}, {})
    xi = {A.idx(1, "y"): QQ(1)}
    Ax = twist_algebra(A, xi)
    f = {i: A.basis_vec(i) for i in range(A.dim)}
    m = CurvedMorphism(Ax, A, f, xi)      # (id, xi): A^xi -> A
    inv = invert_morphism(m)              # (id, -xi)
    assert inv.a == {k: -v for k, v in xi.items()}
    rt = compose_curved(m, inv)
    assert rt.a == {} and rt.f == identity_morphism(A).f


def test_composition_associative_on_seeded_morphisms():
    rng = random.Random(4)
    A = random_dg_algebra(QQ, 21)
    # three inner automorphisms (id, xi_i) from A^{xi} towers
    ones = A.by_degree.get(1, [])
    ms = []
    cur = A
    for step in range(3):
        xi = {i: QQ(rng.randint(-1, 1)) for i in ones}
        xi = {i: c for i, c in xi.items() if c}
        nxt = twist_algebra(cur, xi)
        f = {i: cur.basis_vec(i) for i in range(cur.dim)}
        ms.append(CurvedMorphism(nxt, cur, f, xi))
        cur = nxt
    p, q, r = ms
    lhs = compose_curved(compose_curved(p, q), r)
    rhs = compose_curved(p, compose_curved(q, r))
    assert lhs.f == rhs.f and lhs.a == rhs.a


def test_dual_regular_module_validates(field):
    for name in BUILTIN_ALGEBRAS:
        A = builtin_algebra(name, field)
        M = dual_regular_module(A)
        assert M.validate().ok, name


def test_free_module_validates():
    A = builtin_algebra("acyclic2")
    V = GradedVectorSpace({0: ["v0"], 1: ["v1"]})
    N = free_module(A, V, None)
    assert N.validate().ok
    assert N.dim == A.dim * 2


def test_random_algebras_validate():
    for seed in range(10):
        A = random_dg_algebra(QQ, seed)
        assert validate(A).ok, seed
        assert A.dim <= 4
        assert all(-1 <= d <= 1 for d in A.degree)


def test_identity_is_left_unit_for_composition():
    A = algebra_from_tables(
        QQ, {0: ["1"], 1: ["y"], 2: ["z"]}, "1",
        {("y", "y"): [(QQ(1), "z")], ("y", "z"): [], ("z", "y"): [],
         ("z", "z"): []}, {})
    xi = {A.idx(1, "y"): QQ(1)}
    Ax = twist_algebra(A, xi)
    g = CurvedMorphism(Ax, A, {i: A.basis_vec(i) for i in range(A.dim)}, xi)
    comp = compose_curved(identity_morphism(A), g)
    assert comp.f == g.f and comp.a == g.a
