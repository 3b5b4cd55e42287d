"""Khovanov homology ranks over Z/2 for small links, with braid-axis Alexander tools."""

from khrank.alexander import (AxisForm, axis_form_decompose, lemma_bound_report,
                              lower_bound_stat, morton_axis_polynomial,
                              torres_check)
from khrank.braid import BraidWord
from khrank.classify import (BatsonSeedReport, ClassificationReport,
                             TableReport, batson_seed_check, classify_by_rank,
                             verify_table)
from khrank.dataset import (DatasetEntry, builtin_entries, builtin_table_text,
                            get_entry, load_file, parse_lines)
from khrank.gf2 import BitMatrix, gf2_rank
from khrank.khovanov import (KhovanovRanks, kh_ranks, rank_report,
                             reduced_total_for_arc, total_rank)
from khrank.laurent import Laurent2, PolyMatrix
from khrank.linkdiag import LinkDiagram, axis_link, braid_closure

__all__ = [
    "AxisForm", "BatsonSeedReport", "BitMatrix", "BraidWord",
    "ClassificationReport", "DatasetEntry", "KhovanovRanks", "Laurent2",
    "LinkDiagram", "PolyMatrix", "TableReport", "axis_form_decompose",
    "axis_link", "batson_seed_check", "braid_closure", "builtin_entries",
    "builtin_table_text", "classify_by_rank", "get_entry", "gf2_rank",
    "kh_ranks", "lemma_bound_report", "load_file", "lower_bound_stat",
    "morton_axis_polynomial", "parse_lines", "rank_report",
    "reduced_total_for_arc", "torres_check", "total_rank", "verify_table",
]

__version__ = "0.1.0"
