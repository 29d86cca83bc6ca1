from itertools import product

import pytest

from src.config import ScanConfig
from src.orchestrator.pipeline import run_scan_workflow, scan
from src.tools.report_formatter import records_frame, to_csv
from src.tools.word import DirectionWord, canonical_word, format_word, is_closed, parse_word
from src.workers.evaluator import (
    CSV_COLUMNS,
    Rejected,
    ScanRecord,
    distance_value,
    evaluate_word,
    evaluate_word_layouts,
)
from src.workers.word_enumerator import enumerate_words, passes_filters

# word, w, n, k, distance class ("4" exact or ">4")
TABLE_16X8 = [
    ("NES2EN", 6, 64, 6, ">4"),
    ("NE2N2E2N", 8, 64, 18, "4"),
    ("N2ENW2NE", 8, 64, 10, "4"),
    ("N2ESW2SE", 8, 64, 10, "4"),
    ("N3E2NW2", 8, 64, 10, "4"),
    ("NENE2NEN", 8, 64, 10, "4"),
    ("NENENWNW", 8, 64, 10, "4"),
    ("NENESWSW", 8, 64, 10, "4"),
    ("N2E2N2", 6, 64, 6, "4"),
    ("NENW2NES", 8, 64, 6, "4"),
]


def test_enumerate_single_letter():
    cfg = ScanConfig(min_len=1, max_len=1)
    assert [w.raw for w in enumerate_words(cfg)] == ["N"]


def test_enumerate_length_two():
    cfg = ScanConfig(min_len=2, max_len=2)
    assert [w.raw for w in enumerate_words(cfg)] == ["NN", "NE"]


def test_enumerate_empty_range():
    assert list(enumerate_words(ScanConfig(min_len=5, max_len=4))) == []


@pytest.mark.parametrize("include_cyclic", [True, False])
def test_enumeration_covers_each_class_once(include_cyclic):
    cfg = ScanConfig(min_len=4, max_len=4, include_cyclic=include_cyclic)

    def key(w):
        return canonical_word(w, include_cyclic and is_closed(w))

    found = list(enumerate_words(cfg))
    keys = [key(w) for w in found]
    assert len(set(keys)) == len(keys)
    assert [w.sort_key() for w in found] == sorted(w.sort_key() for w in found)
    expected = set()
    for letters in product("NESW", repeat=4):
        w = DirectionWord(letters)
        if passes_filters(w, cfg):
            expected.add(key(w))
    assert set(keys) == expected
    assert all(passes_filters(w, cfg) for w in found)


def test_default_enumeration_keeps_open_route_classes():
    found = {w.letters for w in enumerate_words(ScanConfig(min_len=6, max_len=8))}
    for text, *_ in TABLE_16X8:
        w = parse_word(text)
        assert canonical_word(w, is_closed(w)).letters in found, text
    # NES2EN and its cyclic shift N2ES2E have different support patterns
    assert parse_word("NES2EN").letters in found
    assert parse_word("N2ES2E").letters in found


def test_distinct_offsets_filter():
    cfg = ScanConfig(min_len=4, max_len=5, distinct_offsets=True, no_backtrack=False)
    assert not passes_filters(DirectionWord.of("NSNS"), cfg)
    assert passes_filters(parse_word("NE2N"), cfg)


def test_evaluate_case_word():
    cfg = ScanConfig(lx=12, ly=6, w_max=4)
    record = evaluate_word(parse_word("NE2NE2N"), cfg)
    assert isinstance(record, ScanRecord)
    assert (record.word, record.w, record.n, record.k) == ("NE2NE2N", 7, 36, 4)
    assert (record.dX, record.dZ, record.support) == ("2", "2", 7)


def test_evaluate_rejects_non_commuting():
    outcome = evaluate_word(parse_word("NE"), ScanConfig(lx=8, ly=8))
    assert isinstance(outcome, Rejected)
    assert outcome.reason == "checks do not commute"


def test_evaluate_rejects_wrap_collision_in_strict_mode():
    outcome = evaluate_word(parse_word("NE2NE2N"), ScanConfig(lx=4, ly=4, strict_wrap=True))
    assert isinstance(outcome, Rejected)
    assert "collide" in outcome.reason


def test_evaluate_coset_layouts():
    cfg = ScanConfig(lx=16, ly=8, layout_rule="coset", w_max=2)
    outcomes = evaluate_word_layouts(parse_word("NE2N"), cfg)
    assert [o.layout for o in outcomes] == ["coset:00", "coset:01"]
    assert all(isinstance(o, ScanRecord) for o in outcomes)


def test_evaluate_coset_layouts_degenerate_lattice():
    outcomes = evaluate_word_layouts(parse_word("N2"), ScanConfig(layout_rule="coset"))
    assert len(outcomes) == 1
    assert isinstance(outcomes[0], Rejected)


def test_distance_value_and_sort_key():
    assert distance_value("4") == 4
    assert distance_value(">4") == 4.5
    assert distance_value("-") == -1
    a = ScanRecord(word="NE2N", w=4, n=64, k=6, dX="4", dZ="4", support=4)
    b = ScanRecord(word="NES2EN", w=6, n=64, k=6, dX=">4", dZ=">4", support=6)
    c = ScanRecord(word="N2E2N2", w=6, n=64, k=18, dX="4", dZ="4", support=6)
    assert sorted([a, c, b], key=ScanRecord.sort_key) == [b, c, a]


def test_scan_empty_range():
    assert scan(ScanConfig(min_len=3, max_len=2)) == []


def test_scan_is_deterministic_across_workers():
    base = dict(min_len=4, max_len=5, lx=8, ly=8, w_max=2)
    serial = scan(ScanConfig(**base, workers=1))
    parallel = scan(ScanConfig(**base, workers=4))
    assert serial
    assert serial == parallel
    csv_a = to_csv(records_frame([r.model_dump() for r in serial], CSV_COLUMNS))
    csv_b = to_csv(records_frame([r.model_dump() for r in parallel], CSV_COLUMNS))
    assert csv_a == csv_b


def test_scan_workflow_state():
    final = run_scan_workflow(ScanConfig(min_len=4, max_len=4, lx=8, ly=8, w_max=1))
    assert final["current_stage"] == "collect"
    assert len(final["records"]) + len(final["rejected"]) == len(final["words"])
    assert final["results"] == sorted(final["records"], key=ScanRecord.sort_key)
    assert any("words enumerated" in line for line in final["log"])


def test_scan_of_case_word_family():
    cfg = ScanConfig(min_len=7, max_len=7, lx=12, ly=6, w_max=4, include_cyclic=False)
    records = {r.word: r for r in scan(cfg)}
    case = format_word(canonical_word(parse_word("NE2NE2N"), include_cyclic=False))
    assert (records[case].n, records[case].k, records[case].dX, records[case].dZ) == (36, 4, "2", "2")


@pytest.mark.slow
def test_reproduces_16x8_table():
    cfg = ScanConfig(min_len=4, max_len=8, lx=16, ly=8, w_max=4, workers=4)
    records = {r.word: r for r in scan(cfg)}
    for text, w, n, k, distance in TABLE_16X8:
        word = parse_word(text)
        key = format_word(canonical_word(word, is_closed(word)))
        assert key in records, text
        record = records[key]
        assert (record.w, record.n, record.k) == (w, n, k), text
        assert (record.dX, record.dZ) == (distance, distance), text
