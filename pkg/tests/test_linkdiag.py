import pytest

from khrank.braid import BraidWord
from khrank.linkdiag import DiagramError, LinkDiagram, axis_link, braid_closure

HOPF_PD = "X(1,3,2,4);X(3,1,4,2)"
TREFOIL_PD = "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
FIG8_PD = "X(4,2,5,1);X(8,6,1,5);X(6,3,7,4);X(2,7,3,8)"


def test_parse_and_round_trip():
    d = LinkDiagram.parse(HOPF_PD + ";O;o")
    assert d.crossing_count == 2
    assert d.free_loops == 2
    assert d.component_count() == 4
    assert LinkDiagram.parse(d.pd_text()).pd_text() == d.pd_text()


def test_parse_rejects_garbage():
    for bad in ["", "X(1,2,3)", "X(1,2,3,4,5)", "Y(1,2,3,4)", "X(1,2,3,4);junk"]:
        with pytest.raises(DiagramError):
            LinkDiagram.parse(bad)


def test_arc_occurrence_validation():
    with pytest.raises(DiagramError, match="appears 1 time"):
        LinkDiagram.parse("X(1,3,2,4);X(3,1,4,5)")
    with pytest.raises(DiagramError, match="inconsistent"):
        LinkDiagram.parse("X(1,2,3,4);X(1,4,3,2)")


def test_hopf_signs_and_linking():
    d = LinkDiagram.parse(HOPF_PD)
    assert d.signs == (1, 1)
    assert d.writhe == 2
    assert d.component_count() == 2
    assert d.linking_number(0, 1) == 1
    m = d.mirror()
    assert m.signs == (-1, -1)
    assert m.linking_number(0, 1) == -1


def test_trefoil_and_figure_eight_signs():
    t = LinkDiagram.parse(TREFOIL_PD)
    assert t.component_count() == 1
    assert t.signs == (-1, -1, -1)
    f = LinkDiagram.parse(FIG8_PD)
    assert f.component_count() == 1
    assert sorted(f.signs) == [-1, -1, 1, 1]


def test_overpass_only_component_is_oriented_canonically():
    # two circles with a pair of cancelling crossings: one circle runs
    # entirely over the other, so its direction is a free choice
    d = LinkDiagram.parse("X(1,2,3,4);X(3,2,1,4)")
    assert d.component_count() == 2
    assert d.linking_number(0, 1) == 0
    assert sorted(d.signs) == [-1, 1]


def test_mirror_is_an_involution():
    for pd in [HOPF_PD, TREFOIL_PD, FIG8_PD]:
        d = LinkDiagram.parse(pd)
        m = d.mirror().mirror()
        assert m.crossings == d.crossings
        assert m.signs == d.signs
    assert LinkDiagram.parse(FIG8_PD).mirror().writhe == 0


def test_disjoint_union():
    h = LinkDiagram.parse(HOPF_PD)
    t = LinkDiagram.parse(TREFOIL_PD)
    u = h.disjoint_union(t)
    assert u.component_count() == 3
    assert u.crossing_count == 5
    assert u.writhe == h.writhe + t.writhe
    assert u.linking_number(0, 1) == 1
    assert u.linking_number(0, 2) == 0


def test_braid_closure_basics():
    assert braid_closure(BraidWord.parse("2:1")).pd_text() == "X(1,1,2,2)"
    assert braid_closure(BraidWord.parse("2:1")).signs == (1,)
    assert braid_closure(BraidWord.parse("2:-1")).signs == (-1,)
    d = braid_closure(BraidWord.parse("3:"))
    assert d.crossing_count == 0 and d.free_loops == 3
    mixed = braid_closure(BraidWord.parse("3:1 -1"))
    assert mixed.component_count() == 3
    assert mixed.writhe == 0
    assert mixed.free_loops == 1  # strand 3 is never crossed


def test_braid_closure_hopf_and_trefoil():
    hopf = braid_closure(BraidWord.parse("2:1 1"))
    assert hopf.component_count() == 2
    assert hopf.linking_number(0, 1) == 1
    anti = braid_closure(BraidWord.parse("2:-1 -1"))
    assert anti.linking_number(0, 1) == -1
    tref = braid_closure(BraidWord.parse("2:1 1 1"))
    assert tref.component_count() == 1
    assert tref.writhe == 3


def test_component_count_matches_braid_prediction():
    for text in ["2:1 1", "3:1 2", "3:1 -2 1", "4:1 2 3", "4:1 1 3 3", "5:1 -2 3 -4"]:
        w = BraidWord.parse(text)
        assert braid_closure(w).component_count() == w.closure_component_count()


def test_axis_link_shapes():
    a = axis_link(BraidWord.parse("1:"))
    assert a.crossing_count == 2
    assert a.component_count() == 2
    assert a.linking_number(0, 1) == 1  # the axis of one strand is a Hopf partner
    b = axis_link(BraidWord.parse("2:1"))
    assert b.crossing_count == 5
    assert b.component_count() == 2
    assert b.linking_number(0, 1) == 2
    c = axis_link(BraidWord.parse("2:1 1"))
    assert c.crossing_count == 6
    assert c.component_count() == 3
    lk = c.linking_matrix()
    assert sorted(sorted(row) for row in lk) == [[0, 1, 1], [0, 1, 1], [0, 1, 1]]


def test_axis_link_signs_all_positive_for_positive_word():
    d = axis_link(BraidWord.parse("3:1 2"))
    assert d.signs == tuple([1] * d.crossing_count)
    assert d.crossing_count == 2 + 6


def test_sublink_and_delete():
    h = LinkDiagram.parse(HOPF_PD)
    u = h.delete_component(1)
    assert u.crossing_count == 0 and u.free_loops == 1
    ax = axis_link(BraidWord.parse("2:1 1"))
    no_axis = ax.sublink([0, 1])
    assert no_axis.component_count() == 2
    assert no_axis.crossing_count == 2
    assert no_axis.linking_number(0, 1) == 1
    # deleting one closure strand leaves the axis Hopf-linked with the other
    one_strand = ax.delete_component(0)
    assert one_strand.component_count() == 2
    assert one_strand.crossing_count == 2
    assert abs(one_strand.linking_number(0, 1)) == 1


def test_sublink_keeps_free_loops_by_index():
    d = LinkDiagram.parse(HOPF_PD + ";O")
    assert d.sublink([2]).free_loops == 1
    assert d.sublink([0, 1]).component_count() == 2
    assert d.sublink([]).component_count() == 0


def test_json_round_trip():
    d = LinkDiagram.parse(HOPF_PD + ";O", name="hopf+loop")
    blob = d.to_dict()
    assert blob == {"name": "hopf+loop", "pd": HOPF_PD + ";O", "free_loops": 1}
    back = LinkDiagram.from_dict(blob)
    assert back.crossings == d.crossings
    assert back.free_loops == 1
    assert back.name == "hopf+loop"
