"""Test script to verify the directional code toolkit works end to end."""

import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

CASE = "NE2NE2N"


def test_tools():
    """Test individual tools."""
    print("=" * 60)
    print("TESTING TOOLS")
    print("=" * 60)

    from src.tools.word import parse_word, canonical_word, format_word
    from src.tools.pattern import ancilla_coset_count, support_pattern, word_lattice
    from src.tools.torus import CheckerboardTorus, build_code, verify_commutation
    from src.tools.layouts import row_alternating_layout
    from src.tools.parameters import code_parameters
    from src.tools.qc import RingSpec, predicted_k, qc_cross_check

    word = parse_word(CASE)

    print(f"\n1. Testing Word Parser for {CASE}...")
    assert len(word) == 7
    print(f"   ✓ Parsed {len(word)} letters, canonical {format_word(canonical_word(word))}")

    print("\n2. Testing Support Pattern...")
    offsets = support_pattern(word)
    lattice = word_lattice(word)
    assert offsets.offsets[0] == (0, 1)
    assert lattice.index == 8
    print(f"   ✓ Offsets {list(offsets.offsets)}")
    print(f"   Lattice basis {lattice.basis}, {ancilla_coset_count(lattice)} ancilla cosets")

    print("\n3. Testing Code Builder on 12x6...")
    torus = CheckerboardTorus(12, 6)
    code = build_code(word, torus, row_alternating_layout(torus))
    assert verify_commutation(code)
    print(f"   ✓ H_X {code.hx.rows}x{code.n}, H_Z {code.hz.rows}x{code.n}, checks commute")

    print("\n4. Testing Parameters...")
    params = code_parameters(code, 4)
    assert (params.n, params.k) == (36, 4)
    assert (str(params.d_x), str(params.d_z)) == ("2", "2")
    print(f"   ✓ [[{params.n}, {params.k}, {params.distance}]]")

    print("\n5. Testing Quasi-Cyclic Reduction...")
    assert predicted_k(word, RingSpec.for_torus(torus)) == 4
    check = qc_cross_check(word, torus)
    assert check.passed
    print(f"   ✓ Predicted k = 4, cross-check {check.as_dict()['verdict']}")


def test_workers():
    """Test worker functions."""
    print("\n" + "=" * 60)
    print("TESTING WORKERS")
    print("=" * 60)

    from src.config import ScanConfig
    from src.tools.word import parse_word
    from src.workers.word_enumerator import enumerate_words
    from src.workers.evaluator import ScanRecord, evaluate_word

    print("\n1. Testing Word Enumerator (length 4)...")
    words = list(enumerate_words(ScanConfig(min_len=4, max_len=4)))
    assert words and all(w.raw.startswith("N") for w in words)
    print(f"   ✓ {len(words)} canonical words")

    print(f"\n2. Testing Evaluator for {CASE} on 12x6...")
    record = evaluate_word(parse_word(CASE), ScanConfig(lx=12, ly=6, w_max=4))
    assert isinstance(record, ScanRecord)
    assert (record.n, record.k, record.dX, record.dZ) == (36, 4, "2", "2")
    print(f"   ✓ {record.word}: n={record.n} k={record.k} dX={record.dX} dZ={record.dZ}")


def test_orchestrator():
    """Test the full orchestrated workflows."""
    print("\n" + "=" * 60)
    print("TESTING ORCHESTRATOR")
    print("=" * 60)

    from src.config import ScanConfig
    from src.orchestrator.pipeline import run_instance_workflow, scan

    print(f"\nRunning instance workflow for {CASE} on 24x12...")
    final = run_instance_workflow(CASE, 24, 12, w_max=3)
    assert not final.get("error")
    report = final["report"]
    assert (report["n"], report["k"]) == (144, 4)
    print(f"   ✓ n={report['n']} k={report['k']} dX={report['dX']} dZ={report['dZ']}")

    print("\nRunning scan workflow on 8x8 (lengths 4-5)...")
    serial = scan(ScanConfig(min_len=4, max_len=5, lx=8, ly=8, w_max=2))
    parallel = scan(ScanConfig(min_len=4, max_len=5, lx=8, ly=8, w_max=2, workers=4))
    assert serial == parallel
    print(f"   ✓ {len(serial)} records, identical across worker counts")
    print("\n" + "-" * 40)
    print("TOP RECORDS:")
    print("-" * 40)
    for record in serial[:5]:
        print(f"   {record.word:<10} w={record.w} k={record.k} dX={record.dX} dZ={record.dZ}")


def main():
    """Run all tests."""
    print("\n" + "=" * 60)
    print("DIRECTIONAL CODE TOOLKIT TEST SUITE")
    print("=" * 60)

    all_passed = True

    for name, check in (("Tools", test_tools), ("Workers", test_workers), ("Orchestrator", test_orchestrator)):
        try:
            check()
        except AssertionError as e:
            all_passed = False
            print(f"\n✗ {name} test FAILED {e}")
        else:
            print(f"\n✓ {name} test PASSED")

    # Summary
    print("\n" + "=" * 60)
    if all_passed:
        print("ALL TESTS PASSED ✓")
    else:
        print("SOME TESTS FAILED ✗")
    print("=" * 60)

    return 0 if all_passed else 1


if __name__ == "__main__":
    exit(main())
