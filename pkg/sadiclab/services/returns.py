"""
Return words to u.v, the coding Theta, derived morphisms and the derived tower.

Positions are two-sided: position 0 of a window is index `origin` of its word.
A return word to u.v is x[j+|u|, k+|u|) for consecutive occurrences j < k of
uv; Theta numbers them by first appearance of u w v in x[-|u|, inf).
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Set

from sadiclab.config import settings
from sadiclab.schemas.directive import DirectiveSequence
from sadiclab.schemas.morphism import Morphism
from sadiclab.schemas.returns import (
    DerivedTower,
    LRRatioProfile,
    LRRatioRow,
    ReturnWordTable,
    TowerLevel,
)
from sadiclab.schemas.word import TwoSidedWindow, Word
from sadiclab.services.morphisms import apply, is_positive, is_proper
from sadiclab.services.pool import ordered_map
from sadiclab.services.sadic import limit_prefix
from sadiclab.services.words import find_all
from sadiclab.utils.errors import (
    AlphabetMismatchError,
    EmptyPatternError,
    FactorizationError,
    IncompleteTableError,
    InsufficientOccurrencesError,
    NonConvergenceError,
    ParameterError,
)

logger = logging.getLogger(__name__)


def completeness_span(K: int, pattern_length: int) -> int:
    """Scanned span a table needs before it counts as complete: 2K(K+1)|uv|"""
    return 2 * K * (K + 1) * pattern_length


def return_words(
    x: TwoSidedWindow,
    u: Word,
    v: Word,
    K: Optional[int] = None
) -> ReturnWordTable:
    """
    Ordered table of return words to u.v in the window.

    Completeness is relative to the window: the table is marked complete when
    every return word was seen at least twice and, if K is given, the scanned
    span reaches 2K(K+1)|uv|.
    """
    if len(v) == 0:
        raise EmptyPatternError("v")
    if u.alphabet != x.alphabet or v.alphabet != x.alphabet:
        raise AlphabetMismatchError(u.alphabet.symbols, x.alphabet.symbols)

    uv = u + v
    codes = x.word.codes
    lowest = max(x.origin - len(u), 0)
    usable = [p for p in find_all(codes, uv.codes) if p >= lowest]
    if len(usable) < 2:
        raise InsufficientOccurrencesError(uv.text, len(usable))

    order: List[str] = []
    counts: Dict[str, int] = {}
    first: Dict[str, int] = {}
    shift = len(u)
    for j, k in zip(usable, usable[1:]):
        w = codes[j + shift:k + shift]
        if w not in counts:
            order.append(w)
            counts[w] = 0
            first[w] = j - x.origin
        counts[w] += 1

    span = (lowest - x.origin, x.end)
    complete = all(n >= 2 for n in counts.values())
    if K is not None:
        complete = complete and span[1] - span[0] >= completeness_span(K, len(uv))
    if not complete:
        logger.debug(f"return words to |u|={len(u)}, |v|={len(v)}: table not window-complete")

    return ReturnWordTable(
        u=u,
        v=v,
        returns=tuple(Word.raw(x.alphabet, w) for w in order),
        counts=tuple(counts[w] for w in order),
        first_positions=tuple(first[w] for w in order),
        source_span=span,
        occurrences=len(usable),
        complete=complete
    )


def brute_force_return_words(x: TwoSidedWindow, u: Word, v: Word) -> Set[Word]:
    """Reference oracle: symbol-by-symbol occurrence scan, consecutive spans collected"""
    if len(v) == 0:
        raise EmptyPatternError("v")
    pattern = list(u.symbols) + list(v.symbols)
    symbols = list(x.word.symbols)
    lowest = max(x.origin - len(u), 0)
    found = [
        i for i in range(lowest, len(symbols) - len(pattern) + 1)
        if all(symbols[i + t] == pattern[t] for t in range(len(pattern)))
    ]
    return {
        Word.from_symbols(x.alphabet, symbols[j + len(u):k + len(u)])
        for j, k in zip(found, found[1:])
    }


def encode(t: ReturnWordTable, x: TwoSidedWindow, start: int, count: int) -> Word:
    """Return-word indices tiling x from the occurrence of uv at `start`"""
    uv = t.u + t.v
    if x.slice(start, min(start + len(uv), x.end)) != uv:
        raise ParameterError("from", f"position {start} is not an occurrence of uv")
    codes = x.word.codes
    shift = len(t.u)
    letters = []
    j = start + x.origin
    for _ in range(count):
        k = codes.find(uv.codes, j + 1)
        if k == -1:
            raise InsufficientOccurrencesError(uv.text, len(letters) + 1, count + 1)
        segment = codes[j + shift:k + shift]
        index = t.index_of(Word.raw(x.alphabet, segment))
        if index is None:
            raise FactorizationError("?", Word.raw(x.alphabet, segment).text, "Segment is not in the return-word table")
        letters.append(chr(index - 1))
        j = k
    return Word.raw(t.code_alphabet, "".join(letters))


def decode(t: ReturnWordTable, code: Word) -> Word:
    """Theta(code)"""
    if code.alphabet != t.code_alphabet:
        raise AlphabetMismatchError(code.alphabet.symbols, t.code_alphabet.symbols)
    return apply(t.theta, code)


def derived_morphism(prev: ReturnWordTable, next: ReturnWordTable) -> Morphism:
    """
    lambda : R_next -> R_prev* with Theta_prev lambda = Theta_next.

    u_next Theta_next(b) v_next is a factor of x; the occurrences of
    u_prev v_prev inside it cut Theta_next(b) into consecutive previous-level
    return words, which Theta_prev's injectivity turns into one code word.
    """
    if not (next.u.endswith(prev.u) and next.v.startswith(prev.v)):
        raise ParameterError("prev", "previous (u, v) must be central in the next (u, v)")
    uv_prev = (prev.u + prev.v).codes
    head, shift = len(next.u), len(prev.u)
    images = []
    for b, w in enumerate(next.returns, start=1):
        s = next.u.codes + w.codes + next.v.codes
        cuts = [
            o + shift for o in find_all(s, uv_prev)
            if head <= o + shift <= head + len(w)
        ]
        if not cuts or cuts[0] != head or cuts[-1] != head + len(w):
            raise FactorizationError(str(b), w.text, "Return word is not delimited by previous-level occurrences")
        letters = []
        for a, c in zip(cuts, cuts[1:]):
            segment = Word.raw(w.alphabet, s[a:c])
            index = prev.index_of(segment)
            if index is None:
                raise FactorizationError(str(b), segment.text)
            letters.append(chr(index - 1))
        images.append(Word.raw(prev.code_alphabet, "".join(letters)))
    return Morphism.build(next.code_alphabet, prev.code_alphabet, images, name="lambda")


def tower_alpha(K: int) -> int:
    """alpha = K^2 (K + 1)"""
    return K * K * (K + 1)


def build_tower(x: TwoSidedWindow, K: int, levels: int) -> DerivedTower:
    """
    Tables for u_n = x[-alpha^n, 0), v_n = x[0, alpha^n), n = 0..levels, and
    the derived morphisms between them, with every bound checked.
    """
    if K < 2:
        raise ParameterError("K", "K must be at least 2")
    if levels < 0:
        raise ParameterError("levels", "levels must be non-negative")
    alpha = tower_alpha(K)
    size_bound = K * (K + 1) ** 2
    length_bound = alpha * K * K

    tables: List[ReturnWordTable] = []
    for n in range(levels + 1):
        size = alpha ** n
        u, v = x.slice(-size, 0), x.slice(0, size)
        table = return_words(x, u, v, K=K)
        if not table.complete:
            raise IncompleteTableError(
                n, table.source_span[1] - table.source_span[0],
                completeness_span(K, 2 * size), list(table.counts)
            )
        tables.append(table)

    tower_levels: List[TowerLevel] = []
    diagnoses: List[str] = []
    for n, table in enumerate(tables):
        if n == 0:
            morphism = table.theta.model_copy(update={"name": "lambda0"})
            identity_ok, proper, positive = True, None, None
        else:
            morphism = derived_morphism(tables[n - 1], table)
            morphism = morphism.model_copy(update={"name": f"lambda{n}"})
            identity_ok = all(
                decode(tables[n - 1], image) == table.returns[b]
                for b, image in enumerate(morphism.images)
            )
            proper = is_proper(morphism)
            positive = is_positive(morphism)
        longest = max(len(image) for image in morphism.images)
        level = TowerLevel(
            level=n,
            window_length=alpha ** n,
            table=table,
            morphism=morphism,
            size=table.size,
            max_image_length=longest,
            identity_ok=identity_ok,
            proper=proper,
            positive=positive
        )
        tower_levels.append(level)

        if table.size > size_bound:
            diagnoses.append(f"level {n}: #R = {table.size} exceeds K(K+1)^2 = {size_bound}; K = {K} is too small")
        if n > 0 and longest > length_bound:
            diagnoses.append(f"level {n}: |lambda(b)| = {longest} exceeds alpha K^2 = {length_bound}; K = {K} is too small")
        if not identity_ok:
            diagnoses.append(f"level {n}: Theta_{n - 1} lambda_{n} differs from Theta_{n}")
        if n > 0 and proper is None:
            diagnoses.append(f"level {n}: lambda_{n} is not proper")
        if n > 0 and not positive:
            diagnoses.append(f"level {n}: some letter of R_{n - 1} is missing from an image of lambda_{n}")

    reconstruction_ok = _check_reconstruction(x, tower_levels)
    if not reconstruction_ok:
        diagnoses.append("lambda_0 ... lambda_n(1) does not reproduce Theta_n(1) as a prefix of x[0, inf)")
    for line in diagnoses:
        logger.warning(line)
    logger.info(f"derived tower with K={K}: sizes {[lv.size for lv in tower_levels]}")

    bound_failures = [line for line in diagnoses if "too small" in line]
    return DerivedTower(
        K=K,
        alpha=alpha,
        size_bound=size_bound,
        length_bound=length_bound,
        levels=tower_levels,
        reconstruction_ok=reconstruction_ok,
        bounds_ok=not bound_failures,
        diagnoses=diagnoses
    )


def _check_reconstruction(x: TwoSidedWindow, levels: List[TowerLevel]) -> bool:
    right = x.nonnegative()
    for n, level in enumerate(levels):
        w = Word.raw(level.table.code_alphabet, chr(0))
        for k in range(n, -1, -1):
            w = apply(levels[k].morphism, w)
        if w != level.table.returns[0] or not right.startswith(w):
            return False
    return True


def build_tower_from_directive(
    d: DirectiveSequence,
    K: int,
    levels: int,
    right_extent: Optional[int] = None,
    depth_budget: Optional[int] = None
) -> DerivedTower:
    """
    Generate a prefix of the S-adic sequence, re-centre it at alpha^levels
    and build the tower, doubling the right extent while tables are incomplete.
    """
    if K < 2:
        raise ParameterError("K", "K must be at least 2")
    left = tower_alpha(K) ** levels
    right = right_extent or K * (K + 1) * left
    while True:
        prefix = limit_prefix(d, left + right, depth_budget)
        if not prefix.converged:
            raise NonConvergenceError(0, left + right, prefix.stable_length, prefix.depth_used)
        x = TwoSidedWindow.from_prefix(prefix.word, origin=left)
        try:
            return build_tower(x, K, levels)
        except (IncompleteTableError, InsufficientOccurrencesError) as e:
            if 2 * right + left > settings.MAX_WINDOW:
                raise
            logger.info(f"tower window of {left + right} symbols too small ({e.error_code}), doubling")
            right *= 2


def lr_ratio_estimate(x: TwoSidedWindow, max_u_len: int) -> LRRatioProfile:
    """
    For each length l <= max_u_len: the largest |w| / l over length-l factors u
    of the window and return words w to u (consecutive-occurrence gaps).
    """
    if max_u_len < 1:
        raise ParameterError("max_u_len", "max_u_len must be at least 1")
    codes = x.word.codes

    def scan(length: int) -> Optional[LRRatioRow]:
        last: Dict[str, int] = {}
        repeated: Set[str] = set()
        best = 0
        for i in range(len(codes) - length + 1):
            f = codes[i:i + length]
            p = last.get(f)
            if p is not None:
                repeated.add(f)
                if i - p > best:
                    best = i - p
            last[f] = i
        if not repeated:
            return None
        return LRRatioRow(length=length, max_return_length=best, ratio=Fraction(best, length), factors=len(repeated))

    results = ordered_map(scan, range(1, max_u_len + 1))
    rows = [r for r in results if r is not None]
    omitted = [length for length, r in zip(range(1, max_u_len + 1), results) if r is None]
    if omitted:
        logger.info(f"ratio profile: no repeated factor at {len(omitted)} length(s), rows omitted")
    return LRRatioProfile(
        rows=rows,
        omitted=omitted,
        max_ratio=max((r.ratio for r in rows), default=None)
    )
