import cmath

import pytest

from khrank.dataset import (DatasetEntry, builtin_by_name, builtin_entries,
                            builtin_table_text, dump_lines, get_entry,
                            load_file, parse_lines)
from khrank.khovanov import total_rank

EXPECTED_NAMES = {
    "unknot", "unlink-2", "unlink-3", "unlink-4",
    "3_1", "3_1-mirror", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3", "7_1",
    "L2a1", "L2a1-mirror", "L4a1", "L4a1-mirror", "L5a1",
    "L6a1", "L6a2", "L6a3", "L6a4", "L6a5", "L6n1", "L6n1-mirror",
    "L7a1", "L7a2", "L7a3", "L7a4", "L7a5", "L7a6", "L7a7", "L7n1", "L7n2",
    "Hopf#Hopf", "Hopf⊔unknot", "trefoil⊔unknot",
}

# Entries whose unreduced total is twice the determinant: all alternating
# entries plus the quasi-alternating L7n2 and the connected sum.  Split
# unions have determinant zero and L6n1/L7n1 are thick, so they stay out.
THIN_NAMES = EXPECTED_NAMES - {
    "unlink-2", "unlink-3", "unlink-4",
    "Hopf⊔unknot", "trefoil⊔unknot",
    "L6n1", "L6n1-mirror", "L7n1",
}


def determinant(diagram):
    """|bracket| at the lattice point where only one-circle states count.

    Deliberately independent of the homology machinery.
    """
    A = cmath.exp(1j * cmath.pi / 4)
    arcs = sorted({v for q in diagram.crossings for v in q})
    idx = {a: i for i, a in enumerate(arcs)}
    n = len(diagram.crossings)
    total = 0j
    for mask in range(1 << n):
        parent = list(range(len(arcs)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for k, (a, b, c, d) in enumerate(diagram.crossings):
            if (mask >> k) & 1:
                parent[find(idx[a])] = find(idx[d])
                parent[find(idx[b])] = find(idx[c])
            else:
                parent[find(idx[a])] = find(idx[b])
                parent[find(idx[c])] = find(idx[d])
        loops = len({find(i) for i in range(len(arcs))}) + diagram.free_loops
        if loops == 1:
            ones = bin(mask).count("1")
            total += A ** (n - 2 * ones)
    return round(abs(total))


def test_roster():
    entries = builtin_entries()
    assert {e.name for e in entries} == EXPECTED_NAMES
    assert len(entries) == len(EXPECTED_NAMES)
    for e in entries:
        e.validate()
        assert e.expected_total is not None
        assert e.diagram().crossing_count <= 8
        assert e.source


def test_component_counts():
    by = builtin_by_name()
    assert by["unknot"].components == 1
    assert by["unlink-4"].components == 4
    assert by["L2a1"].components == 2
    assert by["L6n1"].components == 3
    assert by["L7a7"].components == 3
    assert by["Hopf#Hopf"].components == 3
    assert by["Hopf⊔unknot"].components == 3
    assert by["trefoil⊔unknot"].components == 2
    for name in ("L7a1", "L7a2", "L7a3", "L7a4", "L7a5", "L7a6",
                 "L7n1", "L7n2"):
        assert by[name].components == 2


def test_expected_totals_match_engine():
    for e in builtin_entries():
        assert total_rank(e.diagram()) == e.expected_total, e.name


def test_thin_entries_double_their_determinant():
    by = builtin_by_name()
    for name in sorted(THIN_NAMES):
        e = by[name]
        assert 2 * determinant(e.diagram()) == e.expected_total, name
    # and the two thick entries really are thick
    assert 2 * determinant(by["L6n1"].diagram()) == 8 != by["L6n1"].expected_total
    assert 2 * determinant(by["L7n1"].diagram()) == 8 != by["L7n1"].expected_total


def test_mirror_pairs_share_expected_total():
    by = builtin_by_name()
    for base in ("3_1", "L2a1", "L4a1", "L6n1"):
        assert by[base].expected_total == by[base + "-mirror"].expected_total
        assert by[base].pd != by[base + "-mirror"].pd


def test_round_trip():
    entries = builtin_entries()
    text = dump_lines(entries)
    assert text == builtin_table_text()
    again = parse_lines(text)
    assert again == entries
    for line in text.splitlines():
        # sorted keys, one object per line
        assert line.index('"components"') < line.index('"name"') < line.index('"pd"')


def test_round_trip_via_file(tmp_path):
    p = tmp_path / "table.jsonl"
    p.write_text(builtin_table_text(), encoding="utf-8")
    assert load_file(str(p)) == builtin_entries()


def test_parse_rejects_duplicates():
    line = builtin_entries()[0].to_line()
    with pytest.raises(ValueError, match="duplicate entry name"):
        parse_lines(line + "\n" + line)


def test_parse_rejects_component_mismatch():
    e = builtin_by_name()["L2a1"]
    wrong = DatasetEntry(e.name, e.pd, e.free_loops, 5, e.expected_total,
                         e.source)
    with pytest.raises(ValueError, match="5"):
        parse_lines(wrong.to_line())


def test_parse_rejects_bad_json_and_missing_fields():
    with pytest.raises(ValueError, match="bad JSON"):
        parse_lines("{not json")
    with pytest.raises(ValueError, match="missing fields"):
        parse_lines('{"name": "x"}')


def test_get_entry():
    assert get_entry("4_1").name == "4_1"
    with pytest.raises(KeyError):
        get_entry("no-such-link")
