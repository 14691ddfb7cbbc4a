from fractions import Fraction

import pytest

from dynres import schubert as sc
from dynres.errors import NotMinuscule, UnsupportedFormat, UnsupportedShape
from dynres.graded_res import validate_complex
from dynres.lie_core import Format, TShape, root_system
from dynres.repdecomp import support_betti
from dynres.polyalg import IdealHandle, Poly, PolyMatrix, det, ideal_dimension, ideal_equal, rank_q
from dynres.weyl import format_coset_table, reflect_weight

E6 = TShape(2, 3, 3)

MINUSCULE = [(TShape(1, 2, 2), "u", 6), (TShape(2, 2, 2), "x1", 8), (TShape(2, 2, 2), "z1", 8),
             (TShape(2, 2, 3), "x1", 16), (TShape(2, 2, 3), "z2", 10), (TShape(2, 3, 2), "z1", 16),
             (E6, "y2", 27), (E6, "z2", 27), (TShape(2, 3, 4), "z3", 56)]


@pytest.mark.parametrize("shape,node,dim", MINUSCULE)
def test_minuscule_relations(shape, node, dim):
    rep = sc.minuscule_rep(shape, node)
    assert rep.dim == dim
    assert rep.relation_defects() == []
    # every nonzero entry of e_i and f_i is +1
    assert all(v == 1 for m in rep.e + rep.f for v in m.values())


def test_non_minuscule_rejected():
    with pytest.raises(NotMinuscule):
        sc.minuscule_rep(E6, "u")
    with pytest.raises(UnsupportedShape):
        sc.adjoint_rep(TShape(2, 2, 3))


@pytest.fixture(scope="module")
def adjoint():
    rep = sc.adjoint_rep(E6)
    return rep, sc.structure_constants(rep)


def test_adjoint_representation(adjoint):
    rep, _ = adjoint
    assert rep.dim == 78
    assert rep.relation_defects() == []
    assert sum(1 for w in rep.weights if not any(w)) == 6


def test_adjoint_jacobi(adjoint):
    rep, consts = adjoint
    assert sc.jacobi_defects(consts, rep.dim) == 0


def test_structure_constants_are_unit(adjoint):
    rep, consts = adjoint
    roots = [b[0] for b in rep._basis]
    rs = root_system(E6)
    root_set = set(rs.roots)
    seen = 0
    for (a, b), val in consts.items():
        ra, rb = roots[a], roots[b]
        if not any(ra) or not any(rb):
            continue
        s = tuple(x + y for x, y in zip(ra, rb))
        if not any(s):
            continue
        assert s in root_set
        # simply laced: the alpha-string through beta has p = 0, so N = +-(p + 1) = +-1
        assert list(val) == [roots.index(s)] and abs(val[roots.index(s)]) == 1
        seen += 1
    assert seen == 1440


def test_bracket_antisymmetric(adjoint):
    rep, consts = adjoint
    for a in range(rep.dim):
        for b in range(rep.dim):
            ab, ba = consts.get((a, b), {}), consts.get((b, a), {})
            assert {k: -v for k, v in ab.items()} == ba


UNIPOTENT = [(TShape(2, 2, 2), "z1"), (TShape(2, 2, 3), "x1"), (TShape(2, 3, 2), "z1"), (E6, "y2"), (E6, None)]


@pytest.mark.parametrize("shape,node", UNIPOTENT)
def test_generic_exp_unipotent(shape, node):
    rep = sc.minuscule_rep(shape, node) if node else sc.adjoint_rep(shape)
    m, roots = sc.generic_exp(rep, "x1")
    n = rep.dim
    assert m.constant_part() == [[int(i == j) for j in range(n)] for i in range(n)]
    height = [sum(d) for d in rep.depths]
    for r in range(n):
        for c in range(n):
            if r != c and height[r] <= height[c]:
                assert m.entries[r][c].is_zero()
    assert det(m) == Poly.one(m.nvars)


SUPPORTED = [(1, 3, 3, 1), (1, 3, 4, 2), (1, 4, 4, 1), (1, 5, 5, 1), (1, 4, 5, 2), (1, 5, 6, 2),
             (1, 4, 6, 3), (1, 7, 7, 1)]
CHARTS = [(f, k) for f in SUPPORTED for k in range(len(format_coset_table(Format(*f))))]


@pytest.mark.parametrize("f,k", CHARTS, ids=lambda v: str(v))
def test_charts_give_complexes(f, k):
    fmt = Format(*f)
    word = format_coset_table(fmt).rep_labels(k)
    chart = sc.patch_parametrization(fmt, word)
    assert chart.nvars == len(sc.nilradical_roots(chart.shape, "x1"))
    c = sc.schubert_resolution(chart)
    assert (c.d1 @ c.d2).is_zero() and (c.d2 @ c.d3).is_zero()
    assert all(d.is_homogeneous(c.var_weights) for d in c.diffs)
    dim = ideal_dimension(sc.schubert_ideal(chart))
    if k == 0:
        assert dim == -1
    else:
        assert dim == chart.nvars - 3


def test_top_cosets_are_minimal():
    for f in SUPPORTED:
        fmt = Format(*f)
        tab = format_coset_table(fmt)
        for k in range(1, len(tab)):
            c = sc.schubert_resolution(sc.patch_parametrization(fmt, tab.rep_labels(k)))
            assert c.is_minimal() == (support_betti(fmt, tab.rep_word(k)) == f)


def test_koszul_chart_is_variables():
    chart = sc.patch_parametrization(Format(1, 5, 6, 2), "s:z1,u,x1")
    gens = chart.generators()
    assert len(gens) == 5
    x = [Poly.var(chart.nvars, i) for i in range(3)]
    assert ideal_equal(sc.schubert_ideal(chart), IdealHandle(chart.nvars, x))


@pytest.mark.parametrize("n", [5, pytest.param(7, marks=pytest.mark.slow)])
def test_pfaffian_oracle(n):
    chart = sc.patch_parametrization(Format(1, n, n, 1), "w0")
    ok, mine, pf = sc.pfaffian_oracle(chart)
    assert ok
    # the identification is linear and invertible
    subst = sc.pfaffian_identification(chart)
    mat = [[Fraction(s.terms.get(tuple(int(i == k) for i in range(chart.nvars)), 0))
            for k in range(chart.nvars)] for s in subst]
    assert rank_q(mat) == chart.nvars


def test_gorenstein_chart_is_skew_up_to_change_of_basis():
    chart = sc.patch_parametrization(Format(1, 5, 5, 1), "w0")
    c = sc.schubert_resolution(chart)
    p = sc.skew_symmetrizer(c.d2)
    assert p is not None
    pd2 = PolyMatrix.from_constants(c.nvars, p) @ c.d2
    assert all((pd2.entries[i][j] + pd2.entries[j][i]).is_zero() for i in range(5) for j in range(5))


def test_schubert_resolution_validates():
    fmt = Format(1, 4, 5, 2)
    chart = sc.patch_parametrization(fmt, "w0")
    rep = validate_complex(sc.schubert_resolution(chart))
    assert rep.acyclic and rep.dual_acyclic


def test_weyl_lift_moves_extremal_vector():
    rep = sc.minuscule_rep(E6, "y2")
    rs = root_system(E6)
    for i in range(6):
        vec = sc.apply_lift(rep, (i,), {0: Poly.one(0)})
        target = rep.index_of_weight(reflect_weight(rs.cartan, rep.highest_weight, i))
        assert list(vec) == [target]


def test_chart_scope():
    with pytest.raises(UnsupportedFormat):
        sc.patch_parametrization(Format(1, 6, 7, 2))
    with pytest.raises(UnsupportedFormat):
        sc.patch_parametrization(Format(1, 6, 8, 3))
    with pytest.raises(UnsupportedFormat):
        sc.patch_parametrization(Format(2, 5, 5, 2))


def test_chart_json():
    chart = sc.patch_parametrization(Format(1, 4, 5, 2), "w0")
    out = chart.to_json()
    assert out["vars"] == chart.names and len(out["generators"]) == len(chart.generators())
    assert [Poly.from_json(g) for g in out["generators"]] == chart.generators()
