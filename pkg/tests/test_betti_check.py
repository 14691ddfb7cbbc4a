import json

import pytest
from hypothesis import given, strategies as st

from dynres import graded_res as gr
from dynres import schubert as sc
from dynres.betti_check import (BettiTable, admissibility_report, component_degrees,
                                component_generator_degrees)
from dynres.errors import MalformedFormat, NonDynkinFormat
from dynres.lie_core import Format
from dynres.repdecomp import z1_decomposition
from dynres.weyl import format_coset_table


def table(f, s1, s3, s2=None):
    f = Format(*f)
    return BettiTable(f, tuple(s1), tuple(s2 or [0] * f.f2), tuple(s3))


def test_koszul_table_passes():
    rep = admissibility_report(BettiTable.from_complex(gr.koszul_complex()))
    assert rep.passes()
    assert rep.degree_zero_generator and rep.inequality_2min_lt_max and rep.parity_ok


def test_non_dynkin_table():
    rep = admissibility_report(table((1, 6, 8, 3), [2] * 6, [4] * 3, [3] * 8))
    assert not rep.dynkin and rep.diagram == "~E7"
    assert rep.degree_zero_generator is None
    assert not rep.passes()
    with pytest.raises(NonDynkinFormat):
        component_generator_degrees(table((1, 6, 8, 3), [2] * 6, [4] * 3), 1)


def test_nonperfect_table_lacks_degree_zero():
    rep = admissibility_report(table((1, 4, 4, 1), [2, 2, 2, 2], [4], [3] * 4))
    assert rep.dynkin
    assert rep.degree_zero_generator is False
    assert not rep.inequality_2min_lt_max


@pytest.mark.parametrize("k", [4, 5])
def test_e6_schubert_tables_pass(k):
    f = Format(1, 5, 6, 2)
    word = format_coset_table(f).rep_labels(k)
    c = sc.schubert_resolution(sc.patch_parametrization(f, word))
    assert admissibility_report(BettiTable.from_complex(c)).passes()


def test_pfaffian_specialization_tables():
    for deg in (1, 2):
        t = table((1, 5, 5, 1), [deg * 2] * 5, [deg * 5], [deg * 3] * 5)
        assert admissibility_report(t).degree_zero_generator


def test_parity_failure():
    rep = admissibility_report(table((1, 5, 6, 2), [3, 3, 3, 5, 5], [8, 10]))
    assert not rep.parity_ok
    assert rep.degree_zero_generator is False
    assert "parity" in rep.verdict()


@pytest.mark.parametrize("f", [(1, 5, 6, 2), (1, 5, 5, 1), (1, 4, 5, 2), (1, 6, 7, 2)])
def test_component_degree_counts(f):
    t = table(f, range(1, f[1] + 1), range(3, 3 + f[3]))
    for comp in z1_decomposition(t.fmt).components:
        a, b = comp.dims(t.fmt)
        assert len(component_degrees(t, comp)) == comp.multiplicity * a * b


def test_degrees_of_gorenstein_layer():
    t = table((1, 5, 5, 1), [2] * 5, [5])
    assert component_generator_degrees(t, 1) == [1] * 10
    assert component_generator_degrees(t, 0) == [2] * 5


FORMATS = [(1, 3, 3, 1), (1, 5, 5, 1), (1, 4, 5, 2), (1, 5, 6, 2), (1, 4, 6, 3)]


@st.composite
def tables(draw):
    f = draw(st.sampled_from(FORMATS))
    s1 = draw(st.lists(st.integers(1, 8), min_size=f[1], max_size=f[1]))
    s3 = draw(st.lists(st.integers(1, 16), min_size=f[3], max_size=f[3]))
    return table(f, s1, s3)


@given(tables())
def test_degree_zero_implies_coarse_flags(t):
    rep = admissibility_report(t)
    if rep.degree_zero_generator:
        assert rep.inequality_2min_lt_max
        assert rep.parity_ok


@given(tables())
def test_table_json_roundtrip(t):
    back = BettiTable.from_json(json.dumps(t.to_json()))
    assert back == t


def test_malformed_tables():
    with pytest.raises(MalformedFormat):
        table((1, 3, 3, 1), [1, 1], [3])
    with pytest.raises(MalformedFormat):
        table((2, 5, 5, 2), [1] * 5, [3, 3])
