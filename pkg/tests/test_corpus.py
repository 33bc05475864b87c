import pytest

from homcoh import corpus, roots
from homcoh.corpus import ENTRIES, run_corpus


def test_full_corpus_passes():
    report = run_corpus()
    assert report.passed, report.failures


def test_summary_covers_every_entry():
    report = run_corpus()
    assert len(report.results) == len(ENTRIES)
    assert {e.side for e in ENTRIES} == {"D5", "B4"}


def test_filter_restricts_entries():
    report = run_corpus("sym-power")
    assert [e.label for e, _ in report.results] == ["sym-power-sections"]


def test_empty_filter_match_is_vacuous_pass():
    report = run_corpus("no-such-entry")
    assert report.passed and not report.results


def test_fault_in_short_root_row_breaks_exactly_the_b4_side(monkeypatch):
    original = roots.cartan_matrix

    def faulty(datum):
        matrix = original(datum)
        if datum.family == "B":
            rows = [list(r) for r in matrix]
            rows[2][3] = -rows[2][3]  # flip the doubled entry of the short-node row
            return tuple(tuple(r) for r in rows)
        return matrix

    monkeypatch.setattr(roots, "cartan_matrix", faulty)
    report = run_corpus()
    failed = {label for label, _ in report.failures}
    b4_labels = {e.label for e in ENTRIES if e.side == "B4"}
    d5_labels = {e.label for e in ENTRIES if e.side == "D5"}
    assert failed, "the fault must be detected"
    assert failed <= b4_labels, f"only rank-4 entries may fail, got {failed}"
    assert not (failed & d5_labels)


def test_corpus_survives_after_fault_removed():
    # caches must not have been poisoned by the fault-injection test
    assert run_corpus().passed
