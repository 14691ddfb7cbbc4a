import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from dynres.errors import NonDominantWeight, NonDynkinFormat, TooManyRows, UnsupportedF0
from dynres.lie_core import Format, TShape, format_to_shape, root_system
from dynres.repdecomp import (betti_options, coset_component_match, dominant_multiplicities,
                              mark_extremal, schur_degrees, schur_dimension, support_betti,
                              weight_multiplicities, weyl_dimension, z1_decomposition)
from dynres.weyl import format_coset_table, reflect_weight

D5 = TShape(2, 2, 3)
E6 = TShape(2, 3, 3)


def ssyt(shape, n):
    """All semistandard tableaux of the given shape with entries 0..n-1, as flat tuples of rows."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    for fill in itertools.product(range(n), repeat=len(cells)):
        t = dict(zip(cells, fill))
        if all(t[i, j] <= t[i, j + 1] for i, j in cells if (i, j + 1) in t) and \
           all(t[i, j] < t[i + 1, j] for i, j in cells if (i + 1, j) in t):
            yield fill


partitions = st.lists(st.integers(1, 3), min_size=0, max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True)))


@given(partitions, st.lists(st.integers(-4, 4), min_size=1, max_size=3))
def test_schur_degrees_match_tableaux(lam, gens):
    if len(lam) > len(gens):
        with pytest.raises(TooManyRows):
            schur_degrees(lam, gens)
        return
    brute = sorted(sum(gens[k] for k in fill) for fill in ssyt(lam, len(gens)))
    assert schur_degrees(lam, gens) == brute
    assert len(brute) == schur_dimension(lam, len(gens))


@pytest.mark.parametrize("lam,n,dim", [((1,), 5, 5), ((1, 1, 1), 5, 10), ((2,), 2, 3),
                                       ((2, 1, 1, 1), 5, 24), ((2, 2, 1, 1, 1), 5, 10),
                                       ((2, 2, 2, 2, 1), 5, 5), ((2, 1), 2, 2), ((2, 2), 2, 1)])
def test_schur_dimensions(lam, n, dim):
    assert schur_dimension(lam, n) == dim


def _dominant_weights(rank, bound):
    return [w for w in itertools.product(range(bound + 1), repeat=rank) if 0 < sum(w) <= bound]


@pytest.mark.parametrize("shape,bound", [(TShape(1, 2, 2), 3), (TShape(2, 2, 2), 2), (D5, 2), (E6, 1)])
def test_freudenthal_dimension_matches_weyl(shape, bound):
    rs = root_system(shape)
    for hw in _dominant_weights(shape.rank, bound):
        assert weight_multiplicities(shape, hw).dimension == weyl_dimension(rs.cartan, hw)


@pytest.mark.parametrize("shape,node,dim", [(D5, "z2", 10), (D5, "x1", 16), (D5, "y1", 16),
                                            (E6, "y2", 27), (E6, "z2", 27), (TShape(2, 3, 4), "z3", 56)])
def test_minuscule_weights_are_one_orbit(shape, node, dim):
    rs = root_system(shape)
    hw = rs.fundamental_weight(shape.index(node))
    wm = weight_multiplicities(shape, hw)
    assert wm.dimension == dim
    assert all(m == 1 for _, _, m in wm.weights())
    assert dominant_multiplicities(rs.cartan, hw) == {hw: 1}


def test_e6_adjoint_zero_weight():
    wm = weight_multiplicities(E6, root_system(E6).fundamental_weight(0))
    assert wm.dimension == 78
    assert wm.multiplicity((0,) * 6) == 6


def test_non_dominant_rejected():
    with pytest.raises(NonDominantWeight):
        dominant_multiplicities(root_system(D5).cartan, (1, -1, 0, 0, 0))


HIGHEST = [(D5, w) for w in _dominant_weights(5, 2)] + \
          [(E6, tuple(int(i == k) for i in range(6))) for k in range(6)] + [(E6, (1, 0, 0, 0, 0, 1))]


@settings(max_examples=1000)
@given(st.sampled_from(HIGHEST), st.data())
def test_multiplicities_are_weyl_invariant(case, data):
    shape, hw = case
    wm = weight_multiplicities(shape, hw)
    cartan = root_system(shape).cartan
    weights = sorted(wm.mults)
    off = data.draw(st.sampled_from(weights))
    mu = wm.weight_of(off)
    word = data.draw(st.lists(st.integers(0, shape.rank - 1), max_size=8))
    nu = mu
    for i in word:
        nu = reflect_weight(cartan, nu, i)
    assert wm.multiplicity(nu) == wm.multiplicity(mu) == wm.mults[off]


def _names(d):
    return [(c.j, c.lam, c.mu, c.extremal) for c in d.components]


def test_e6_decomposition():
    d = z1_decomposition(Format(1, 5, 6, 2))
    assert d.dimension == 78
    assert _names(d) == [
        (0, (), (1,), True),
        (1, (1,), (1, 1, 1), True),
        (2, (2,), (1, 1, 1, 1, 1), True),
        (2, (1, 1), (2, 1, 1, 1), True),
        (2, (1, 1), (1, 1, 1, 1, 1), False),
        (3, (2, 1), (2, 2, 1, 1, 1), True),
        (4, (2, 2), (2, 2, 2, 2, 1), True),
    ]


@pytest.mark.parametrize("n", [3, 5, 6, 7, 9])
def test_gorenstein_format_decomposition(n):
    d = z1_decomposition(Format(1, n, n, 1))
    top = (n - 1) // 2
    assert _names(d) == [(j, (j,) if j else (), (1,) * (2 * j + 1), True) for j in range(top + 1)]


def _balanced(size, rows):
    q, r = divmod(size, rows)
    return tuple(x for x in [q + 1] * r + [q] * (rows - r) if x)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_four_generator_format_decomposition(n):
    d = z1_decomposition(Format(1, 4, n, n - 3))
    expected = [(j, (1,) * j, _balanced(2 * j + 1, 4), True) for j in range(n - 2)]
    assert _names(d) == expected
    a, b = (n - 3) // 2, 2 + (-1) ** n
    assert d.components[-1].mu == (a + 1,) * b + (a,) * (4 - b)


DYNKIN_F0_1 = [Format(1, 3 + d, 2 + d + t, t) for d, n in {0: 6, 1: 6, 2: 4, 3: 2, 4: 2, 5: 1}.items()
               for t in range(1, n + 1)]


@pytest.mark.parametrize("f", DYNKIN_F0_1, ids=str)
def test_dimension_and_extremal_count(f):
    d = z1_decomposition(f)
    shape = format_to_shape(f)
    rs = root_system(shape)
    hw = rs.fundamental_weight(shape.index("x1"))
    assert d.dimension == weyl_dimension(rs.cartan, hw)
    assert d.extremal_count == len(format_coset_table(f))
    assert all(sum(c.lam) == c.j and sum(c.mu) == 2 * c.j + 1 for c in d.components)
    assert mark_extremal(d) == d


def test_coset_component_match_e6():
    matches = coset_component_match(Format(1, 5, 6, 2))
    assert [m.component.j for m in matches] == [0, 1, 2, 2, 3, 4]
    assert matches[4].component.lam == (2, 1) and matches[5].component.lam == (2, 2)


def test_betti_options_e6():
    assert betti_options(Format(1, 5, 6, 2)) == [(1, 3, 3, 1), (1, 4, 5, 2), (1, 5, 5, 1),
                                                (1, 5, 6, 2), (1, 5, 6, 2)]
    tab = format_coset_table(Format(1, 5, 6, 2))
    assert support_betti(Format(1, 5, 6, 2), tab.rep_word(1)) == (1, 3, 3, 1)


def test_decomposition_rejections():
    with pytest.raises(NonDynkinFormat):
        z1_decomposition(Format(1, 6, 8, 3))
    with pytest.raises(UnsupportedF0):
        z1_decomposition(Format(2, 5, 5, 2))


def test_weight_lookup_outside_support():
    wm = weight_multiplicities(D5, root_system(D5).fundamental_weight(D5.index("z2")))
    assert wm.multiplicity((5, 0, 0, 0, 0)) == 0
    assert Counter(m for _, _, m in wm.weights()) == Counter({1: 10})
