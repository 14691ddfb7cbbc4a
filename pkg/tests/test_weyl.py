import pytest
from hypothesis import given, strategies as st

from dynres.errors import EnumerationBudgetExceeded, NonDynkinFormat, NonFiniteType, UnsupportedF0
from dynres.lie_core import Format, TShape, root_system
from dynres.schubert import plucker_support
from dynres.weyl import (WeylElement, bruhat_leq, count_table, double_cosets, enumerate_group,
                         family_count, format_coset_table, longest_element, parabolic_quotient,
                         reflect_weight, table2)

D4 = TShape(2, 2, 2)


@pytest.fixture(scope="module")
def d4_group():
    return enumerate_group(D4)


def subword_interval(w: WeylElement) -> set:
    """Keys of all products of subwords of a reduced word of w (the Bruhat interval [e, w])."""
    cartan = root_system(w.shape).cartan
    out = {root_system(w.shape).rho}
    for i in reversed(w.word):
        out |= {reflect_weight(cartan, key, i) for key in out}
    return out


@pytest.mark.parametrize("shape,order", [
    (TShape(1, 2, 2), 24), (D4, 192), (TShape(2, 2, 3), 1920), (TShape(2, 3, 3), 51840),
])
def test_group_orders(shape, order):
    assert len(enumerate_group(shape)) == order


def test_enumeration_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        enumerate_group(TShape(2, 3, 3), limit=1000)


def test_words_are_reduced(d4_group):
    npos = len(root_system(D4).positive)
    for w in d4_group:
        assert len(w.word) == w.inversions() == w.length
        assert WeylElement.from_word(D4, w.word) == w
    assert longest_element(D4).length == npos


def test_bruhat_matches_subword_criterion(d4_group):
    for w in d4_group:
        below = subword_interval(w)
        for u in d4_group:
            assert bruhat_leq(u, w) == (u.key in below)


def test_bruhat_is_partial_order(d4_group):
    assert len(d4_group) == 192
    down = {w: frozenset(u for u in d4_group if bruhat_leq(u, w)) for w in d4_group}
    for w in d4_group:
        assert w in down[w]
        for u in down[w]:
            # transitivity: everything below u is below w
            assert down[u] <= down[w]
            if u != w:
                assert w not in down[u]


@given(st.sampled_from([TShape(1, 3, 2), D4, TShape(2, 2, 3)]), st.data())
def test_bruhat_length_monotone(shape, data):
    group = enumerate_group(shape)
    u = data.draw(st.sampled_from(group))
    w = data.draw(st.sampled_from(group))
    if bruhat_leq(u, w):
        assert u.length <= w.length
    assert bruhat_leq(WeylElement.identity(shape), w)
    assert bruhat_leq(w, longest_element(shape))


@pytest.mark.parametrize("shape", [TShape(1, 2, 2), D4, TShape(2, 2, 3), TShape(2, 3, 3)])
def test_orbit_stabilizer(shape):
    order = len(enumerate_group(shape))
    for t in range(shape.rank):
        quo = parabolic_quotient(shape, t)
        # the stabilizer of omega_t is the parabolic subgroup on the other nodes
        levi = [i for i in range(shape.rank) if i != t]
        stab = 1
        for comp in _components(shape, levi):
            stab *= len(enumerate_group(comp)) if comp else 1
        assert len(quo) * stab == order


def _components(shape, nodes):
    """Connected pieces of the subdiagram on nodes, as shapes (each is a path or a star)."""
    edges = [(a, b) for a, b in shape.edges() if a in nodes and b in nodes]
    left = set(nodes)
    out = []
    while left:
        start = left.pop()
        comp, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for a, b in edges:
                for x, y in ((a, b), (b, a)):
                    if x == v and y in left:
                        left.discard(y)
                        comp.add(y)
                        stack.append(y)
        out.append(_shape_of(shape, comp))
    return out


def _shape_of(shape, comp):
    u = shape.index("u")
    if u not in comp:
        return TShape(1, 1, len(comp))
    arms = {arm: sum(1 for i in comp if shape.nodes[i].startswith(arm)) for arm in "xyz"}
    return TShape(arms["x"] + 1, arms["y"] + 1, arms["z"] + 1)


@pytest.mark.parametrize("d,t", [(d, t) for d, n in {0: 5, 1: 5, 2: 4, 3: 2, 4: 2, 5: 1}.items()
                                 for t in range(1, n + 1)])
def test_double_cosets_partition_quotient(d, t):
    shape = TShape(2, d + 1, t + 1)
    tab = double_cosets(shape, shape.index("z1"), shape.index("x1"))
    members = [m for c in tab.cosets for m in c.members]
    assert sorted(members) == list(range(len(tab.quotient)))
    # representatives are minimal in their class
    for c in tab.cosets:
        assert all(tab.quotient.length(c.rep) <= tab.quotient.length(m) for m in c.members)
    assert tab.rep_word(0) == ()


def test_table_grid():
    assert table2() == {0: [2, 2, 2, 2, 2], 1: [2, 3, 4, 5, 6], 2: [3, 6, 18, 109],
                        3: [3, 13], 4: [4, 63], 5: [4]}


@pytest.mark.parametrize("t", range(1, 6))
def test_first_row_pattern(t):
    assert count_table(1, t) == t + 1


def test_count_table_rejects_affine():
    with pytest.raises(NonFiniteType):
        count_table(2, 5)
    with pytest.raises(NonFiniteType):
        count_table(-1, 2)


@pytest.mark.parametrize("f,n", [((1, 5, 6, 2), 2), ((1, 6, 7, 2), 7), ((1, 5, 7, 3), 11),
                                 ((1, 7, 8, 2), 49), ((1, 5, 8, 4), 90), ((1, 3, 3, 1), 1),
                                 ((1, 5, 5, 1), 1), ((1, 4, 5, 2), 1)])
def test_family_counts(f, n):
    assert family_count(Format(*f)) == n


@pytest.mark.parametrize("d,t", [(0, 4), (1, 3), (2, 2), (2, 3), (3, 2), (4, 2), (2, 4)])
def test_family_counts_sum_to_nontrivial_cosets(d, t):
    total = sum(family_count(Format(1, 3 + a, 2 + a + b, b)) for a in range(d + 1) for b in range(1, t + 1))
    assert total == count_table(d, t) - 1


def test_family_count_rejections():
    with pytest.raises(NonDynkinFormat):
        family_count(Format(1, 6, 8, 3))
    with pytest.raises(UnsupportedF0):
        family_count(Format(2, 5, 5, 2))


def test_format_coset_table_e6():
    tab = format_coset_table(Format(1, 5, 6, 2))
    assert len(tab) == 6
    assert [len(tab.rep_word(k)) for k in range(6)] == [0, 3, 7, 10, 11, 17]
    assert tab.rep_labels(1) == ("z1", "u", "x1")


@pytest.mark.parametrize("shape", [D4, TShape(2, 2, 3)])
def test_plucker_vanishing_matches_bruhat(shape):
    t = shape.index("x1")
    quo = parabolic_quotient(shape, t)
    for k in range(len(quo)):
        support = plucker_support(shape, "x1", quo.words[k])
        above = {quo.weights[m] for m in range(len(quo)) if bruhat_leq(quo.element(k), quo.element(m))}
        assert support == above
