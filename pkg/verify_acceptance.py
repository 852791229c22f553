"""
Acceptance run for sadiclab

Runs every acceptance check end to end, mostly through the same CLI
invocations the README documents, and prints a pass/fail summary.

Usage:
    python verify_acceptance.py            # everything
    python verify_acceptance.py 1 7 8      # selected checks
"""

import io
import json
import random
import sys
import time
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from sadiclab.main import main as cli
from sadiclab.schemas.examples import SturmianSpec
from sadiclab.schemas.word import Alphabet, TwoSidedWindow, Word
from sadiclab.services.examples import counterexample_directive, sturmian_directive
from sadiclab.services.returns import brute_force_return_words, decode, encode, return_words
from sadiclab.services.sadic import limit_prefix
from sadiclab.services.words import find_all
from sadiclab.utils.errors import InsufficientOccurrencesError

# Test results
test_results = []


class TestResult:
    def __init__(self, name: str, passed: bool, message: str = ""):
        self.name = name
        self.passed = passed
        self.message = message
        test_results.append(self)

    def __str__(self):
        status = "✅ PASS" if self.passed else "❌ FAIL"
        msg = f" - {self.message}" if self.message else ""
        return f"{status} | {self.name}{msg}"


def print_section(title: str):
    """Print a section header"""
    print(f"\n{'='*60}")
    print(f"  {title}")
    print('='*60)


def run_cli(argv: List[str]) -> Tuple[int, List[dict], float]:
    """Exit code, parsed JSON lines and wall time of one CLI invocation"""
    out, err = io.StringIO(), io.StringIO()
    started = time.perf_counter()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli(argv + ["--format", "jsonl", "-q"])
    elapsed = time.perf_counter() - started
    rows = [json.loads(line) for line in out.getvalue().splitlines() if line.strip()]
    if code == 2:
        print(f"   usage/input error: {err.getvalue().strip().splitlines()[-1]}")
    return code, rows, elapsed


def check_not_lr():
    """1. Return words to ca blow up by 3^{n+2}/2 under rho_n"""
    print_section("1. Counterexample is not linearly recurrent")
    code, rows, elapsed = run_cli(["counterexample", "verify", "--n", "1,2,3", "--window", "100000"])
    for row in rows:
        ratio = Fraction(row["ratio"])
        TestResult(
            f"n={row['n']}: |w| >= 3^{row['n'] + 2}, rho_n(ca) exactly twice",
            row["passed"] and ratio >= Fraction(3 ** (row["n"] + 2), 2),
            f"|w|={row['w_length']}, ratio {ratio} >= {row['ratio_bound']}"
        )
    TestResult("exit code and runtime", code == 0 and len(rows) == 3 and elapsed < 30, f"{elapsed:.1f}s")


def check_gap_lemma():
    """2. Gaps of ca in sigma^n tau (z) are at least 3^{n+1}"""
    print_section("2. Gap lemma")
    code, rows, _ = run_cli(["counterexample", "gap-lemma", "--n", "1,2,3,4,5", "--window", "100000"])
    for row in rows:
        TestResult(
            f"n={row['n']}: min gap >= {row['bound']}",
            row["passed"] and row["occurrences"] >= 3,
            f"min gap {row['min_gap']} over {row['occurrences']} occurrences, strict: {row['strict']}"
        )
    TestResult("exit code", code == 0 and len(rows) == 5)


def check_complexity_ceiling():
    """3. p(n) <= 27 n on 3^10 symbols of the counterexample"""
    print_section("3. Complexity ceiling")
    code, rows, elapsed = run_cli([
        "complexity", "--builtin", "counterexample", "--max-n", "100", "--bound", "3", "--window", "59049"
    ])
    report = rows[0] if rows else {}
    TestResult(
        "p(n) <= 27n for n <= 100",
        code == 0 and report.get("complexity_ok") is True and elapsed < 10,
        f"max p(n)/n = {report.get('max_ratio')}, {elapsed:.1f}s"
    )


def check_length_hypothesis():
    """4. Telescoped lengths are 3^{k+1}, so the length hypothesis holds with D = 3"""
    print_section("4. Length hypothesis")
    code, rows, _ = run_cli([
        "complexity", "--builtin", "counterexample", "--max-n", "10", "--bound", "3", "--depths", "8",
        "--window", "2187"
    ])
    report = rows[0] if rows else {}
    expected = [3 ** (k + 1) for k in range(10)]
    TestResult("hypothesis at depths <= 8", code == 0 and report.get("hypothesis_ok") is True)
    TestResult(
        "telescoped lengths are 3^{k+1}",
        report.get("min_lengths") == expected and report.get("max_lengths") == expected
    )


def check_theta_injective():
    """5. Theta is one to one, encode/decode reproduce the window"""
    print_section("5. Return-word coding")
    rng = random.Random(5)
    sources = [
        limit_prefix(counterexample_directive(), 4000).word,
        limit_prefix(sturmian_directive(SturmianSpec(quotients=(0, 1))), 4000).word,
    ]
    pairs = 0
    collisions = 0
    round_trips = 0
    bad_round_trips = 0
    while pairs < 10_000:
        word = rng.choice(sources)
        x = TwoSidedWindow.from_prefix(word, origin=100)
        p = rng.randint(2, 3000)
        u, v = x.slice(p - 2, p), x.slice(p, p + rng.randint(1, 3))
        table = return_words(x, u, v)
        if table.size < 2:
            continue
        for _ in range(50):
            first = Word.from_symbols(table.code_alphabet, [rng.randrange(table.size) for _ in range(rng.randint(1, 6))])
            second = Word.from_symbols(table.code_alphabet, [rng.randrange(table.size) for _ in range(rng.randint(1, 6))])
            if first == second:
                continue
            pairs += 1
            collisions += decode(table, first) == decode(table, second)

        following = [q - x.origin for q in find_all(word.codes, (u + v).codes) if q - x.origin >= p - 2]
        count = rng.randint(1, 5)
        if len(following) > count:
            round_trips += 1
            code = encode(table, x, p - 2, count)
            bad_round_trips += decode(table, code) != x.slice(p, following[count] + 2)

    TestResult("distinct codes decode to distinct words", collisions == 0, f"{pairs} pairs")
    TestResult("encode/decode reproduce window slices", bad_round_trips == 0, f"{round_trips} round trips")


def check_derived_tower():
    """6. Derived tower of the golden window, K = 3, levels 0..2"""
    print_section("6. Derived tower")
    code, rows, elapsed = run_cli(["derive", "--builtin", "golden", "--K", "3", "--levels", "2"])
    for row in rows[:-1]:
        TestResult(
            f"level {row['level']}",
            row["identity_ok"] and row["size"] <= row["size_bound"]
            and (row["level"] == 0 or (row["proper"] is not None and row["positive"]
                                       and row["max_image_length"] <= row["length_bound"])),
            f"#R={row['size']}, max|lambda(b)|={row['max_image_length']}"
        )
    summary = rows[-1] if rows else {}
    TestResult(
        "lambda_0 ... lambda_n(1) is a prefix of x[0, inf)",
        code == 0 and summary.get("reconstruction_ok") is True and elapsed < 60,
        f"{elapsed:.1f}s"
    )


def check_block_identities():
    """7. Closed forms of tau^i sigma^j tau^k for 1 <= i, j, k <= 4"""
    print_section("7. Sturmian block identities")
    code, rows, _ = run_cli(["sturmian", "--cf", "0,1", "--check-blocks", "4,4,4", "--upto"])
    tau_rows = [r for r in rows if r["form"] == "tau"]
    TestResult("64 triples, both letters", len(tau_rows) == 128 and all(r["equal"] for r in tau_rows))
    TestResult("sigma form by letter exchange", all(r["equal"] for r in rows) and code == 0)


def check_sturmian_gaps():
    """8. Golden directive: observed D_n <= 5 for n <= 6"""
    print_section("8. Sturmian gap bound")
    code, rows, _ = run_cli(["sturmian", "--cf", "0,1", "--verdict", "--levels", "6", "--window", "10000"])
    report = rows[0] if rows else {"rows": []}
    for row in report["rows"]:
        TestResult(f"level {row['level']} ({row['form']})", row["within"], f"D >= {row['observed']}")
    TestResult("verdict", code == 0 and report.get("verdict") == "consistent with LR")


def check_contrast():
    """9. Golden return ratios stay bounded, i_k = k exceeds them"""
    print_section("9. Return-ratio contrast")
    code, rows, _ = run_cli([
        "sturmian", "--cf", "0,1", "--max-u-len", "200", "--window", "20000",
        "--contrast", "1,2", "--contrast-extend", "linear"
    ])
    report = rows[0] if rows else {}
    base = Fraction(report["base_max"]) if report.get("base_max") else None
    TestResult("golden profile below 4", base is not None and base <= 4, f"max {report.get('base_max')}")
    TestResult("i_k = k exceeds golden", code == 0, f"max {report.get('other_max')}")


def check_oracle():
    """10. return_words agrees with the symbol-by-symbol oracle"""
    print_section("10. Oracle equivalence")
    rng = random.Random(10)
    disagreements = 0
    for _ in range(500):
        alphabet = Alphabet.of("abc"[:rng.choice((2, 3))])
        length = rng.randint(2, 2000)
        word = Word.from_symbols(alphabet, [rng.randrange(alphabet.size) for _ in range(length)])
        x = TwoSidedWindow(word=word, origin=rng.randint(0, length))
        p = rng.randint(x.start + 1, x.end - 1)
        u = x.slice(p - rng.randint(0, min(3, p - x.start)), p)
        v = x.slice(p, p + rng.randint(1, min(3, x.end - p)))
        expected = brute_force_return_words(x, u, v)
        try:
            found = set(return_words(x, u, v).returns)
        except InsufficientOccurrencesError:
            found = set()
        disagreements += found != expected
    TestResult("500 random instances", disagreements == 0, f"{disagreements} disagreement(s)")


CHECKS: Dict[str, Callable[[], None]] = {
    "1": check_not_lr,
    "2": check_gap_lemma,
    "3": check_complexity_ceiling,
    "4": check_length_hypothesis,
    "5": check_theta_injective,
    "6": check_derived_tower,
    "7": check_block_identities,
    "8": check_sturmian_gaps,
    "9": check_contrast,
    "10": check_oracle,
}


def print_summary():
    """Print test summary"""
    print_section("Test Summary")
    total = len(test_results)
    passed = sum(1 for t in test_results if t.passed)
    failed = total - passed
    print(f"Total Tests: {total}")
    print(f"✅ Passed: {passed}")
    print(f"❌ Failed: {failed}")
    if failed > 0:
        print("\nFailed Tests:")
        for test in test_results:
            if not test.passed:
                print(f"  ❌ {test.name}")
        print()
    return failed == 0


def main():
    """Run the selected checks"""
    selected = sys.argv[1:] or list(CHECKS)
    unknown = [key for key in selected if key not in CHECKS]
    if unknown:
        print(f"unknown check(s): {', '.join(unknown)}; choose from 1-10")
        sys.exit(2)

    print("\n" + "="*60)
    print("  sadiclab - Acceptance Checks")
    print("="*60)
    for key in selected:
        CHECKS[key]()

    print_section("Detailed Results")
    for test in test_results:
        print(f"  {test}")

    if print_summary():
        print("🎉 All acceptance checks passed.\n")
        sys.exit(0)
    print("⚠️  Some acceptance checks failed. Please review the results above.\n")
    sys.exit(1)


if __name__ == "__main__":
    main()
