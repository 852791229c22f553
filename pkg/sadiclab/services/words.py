"""
Exact scanning primitives on words: occurrences, factors, complexity, gaps.

Everything here is a naive scan over the code-point string of a word. These
functions double as the reference oracle for the faster paths elsewhere.
"""
import logging
from typing import Dict, List, Optional, Set

from sadiclab.schemas.reports import GapSummary
from sadiclab.schemas.word import TwoSidedWindow, Word
from sadiclab.utils.errors import EmptyPatternError, LengthError

logger = logging.getLogger(__name__)


def find_all(text: str, pattern: str) -> List[int]:
    """All (possibly overlapping) start positions of pattern in text"""
    positions = []
    i = text.find(pattern)
    while i != -1:
        positions.append(i)
        i = text.find(pattern, i + 1)
    return positions


def occurrences(w: Word, u: Word) -> List[int]:
    """Ascending start positions i with w[i:i+|u|] = u"""
    if len(u) == 0:
        raise EmptyPatternError("u")
    w.same_alphabet(u)
    return find_all(w.codes, u.codes)


def factor_codes(codes: str, n: int) -> Set[str]:
    return {codes[i:i + n] for i in range(len(codes) - n + 1)}


def factors(w: Word, n: int) -> Set[Word]:
    """Distinct length-n factors of w"""
    if n < 0 or n > len(w):
        raise LengthError(f"factor length {n} out of range for a word of length {len(w)}", n, len(w))
    return {Word.raw(w.alphabet, f) for f in factor_codes(w.codes, n)}


def complexity(w: Word, n: int) -> int:
    """
    Number of distinct length-n factors.

    p(0) = 1 (the empty word). On a prefix of an infinite sequence this is a
    lower bound for the sequence's complexity.
    """
    if n < 0 or n > len(w):
        raise LengthError(f"factor length {n} out of range for a word of length {len(w)}", n, len(w))
    return len(factor_codes(w.codes, n))


def complexity_profile(w: Word, max_n: int) -> List[int]:
    """[p(1), ..., p(max_n)]"""
    if max_n > len(w):
        raise LengthError(f"factor length {max_n} out of range for a word of length {len(w)}", max_n, len(w))
    return [len(factor_codes(w.codes, n)) for n in range(1, max_n + 1)]


def gaps(positions: List[int]) -> List[int]:
    return [b - a for a, b in zip(positions, positions[1:])]


def max_gap(w: Word, u: Word) -> Optional[int]:
    """Largest distance between consecutive occurrences of u; None below two occurrences"""
    found = gaps(occurrences(w, u))
    return max(found) if found else None


def max_gap_over_length2(w: Word) -> GapSummary:
    """
    Largest gap between consecutive occurrences of any length-2 factor.

    Factors seen only once do not enter the maximum; they set the truncation
    flag and report their distance to the window end instead.
    """
    if len(w) < 2:
        raise LengthError("need a word of length at least 2", 2, len(w))
    codes = w.codes
    last: Dict[str, int] = {}
    best: Dict[str, int] = {}
    for i in range(len(codes) - 1):
        pair = codes[i:i + 2]
        previous = last.get(pair)
        if previous is not None:
            gap = i - previous
            if gap > best.get(pair, 0):
                best[pair] = gap
        last[pair] = i

    singles = sorted(pair for pair in last if pair not in best)
    tail = max((len(codes) - last[pair] for pair in singles), default=None)
    observed = max(best.values()) if best else None

    def render(pair: str) -> str:
        return Word.raw(w.alphabet, pair).text

    summary = GapSummary(
        max_gap=observed,
        truncated=bool(singles),
        per_factor={render(pair): gap for pair, gap in sorted(best.items())},
        single_occurrence=[render(pair) for pair in singles],
        tail_distance=tail
    )
    if summary.truncated:
        logger.debug(f"length-2 gap scan: {len(singles)} factor(s) seen once, window may under-observe gaps")
    return summary


def common_prefix_length(a: Word, b: Word) -> int:
    """Length of the longest common prefix of two words over the same alphabet"""
    a.same_alphabet(b)
    n = min(len(a), len(b))
    for i in range(n):
        if a.codes[i] != b.codes[i]:
            return i
    return n


def slice_window(x: TwoSidedWindow, start: int, end: int) -> Word:
    """x[start, end) in two-sided positions"""
    return x.slice(start, end)
