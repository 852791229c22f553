"""
S-adic generation and diagnostics.

Prefixes of x = lim s0 s1 ... sn (a a a ...) and of its tails x^(n) are built
innermost-first with truncation: the first L symbols of s(w) only depend on
the first L letters of w, since images are non-empty.
"""
import logging
from collections import Counter
from fractions import Fraction
from math import ceil
from typing import Callable, Dict, List, Optional, Union

from sadiclab.config import settings
from sadiclab.schemas.directive import (
    BoundWitness,
    ComplexityBoundReport,
    ComplexityRow,
    DirectiveSequence,
    DnObservation,
    GeneratedPrefix,
    LRSufficientReport,
    PrimitivityReport,
    PrimitivityRow,
    TelescopeLengths,
)
from sadiclab.schemas.morphism import Morphism
from sadiclab.schemas.word import Word
from sadiclab.services.morphisms import apply_prefix, compose_all, is_positive, letters_missing
from sadiclab.services.pool import ordered_map
from sadiclab.services.words import common_prefix_length, complexity_profile, max_gap_over_length2
from sadiclab.utils.errors import DirectiveError, LengthError, NonConvergenceError, ParameterError

logger = logging.getLogger(__name__)


def telescope(d: DirectiveSequence, start: int, end: int) -> Morphism:
    """sigma_start sigma_{start+1} ... sigma_end, in directive order"""
    if start > end:
        raise DirectiveError(f"telescope needs start <= end, got {start} > {end}", level=start)
    return compose_all(d.morphism(k) for k in range(start, end + 1))


def telescoped_lengths(d: DirectiveSequence, depth: int, start: int = 0) -> List[TelescopeLengths]:
    """
    |sigma_start ... sigma_k (c)| for k = start..depth, by integer arithmetic only.

    |S_k(c)| = sum over b of |S_{k-1}(b)| * (occurrences of b in sigma_k(c)).
    """
    first = d.morphism(start)
    lengths: Dict[str, int] = {token: 1 for token in first.codomain.symbols}
    rows = []
    for k in range(start, depth + 1):
        m = d.morphism(k)
        current = {}
        for letter, image in zip(m.domain.symbols, m.images):
            counts = Counter(image.tokens)
            current[letter] = sum(lengths[b] * n for b, n in counts.items())
        rows.append(TelescopeLengths(
            depth=k,
            letters=m.domain.symbols,
            lengths=tuple(current[c] for c in m.domain.symbols)
        ))
        lengths = current
    return rows


def group_directive(
    d: DirectiveSequence,
    start: Callable[[int], int],
    description: Optional[str] = None
) -> DirectiveSequence:
    """
    Re-block the stream: level m is sigma_{start(m)} ... sigma_{start(m+1)-1}.

    `start` must be strictly increasing with start(0) = 0.
    """
    def rule(m: int) -> Morphism:
        return telescope(d, start(m), start(m + 1) - 1)

    length = None
    if d.length is not None:
        length = 0
        while start(length + 1) <= d.length:
            length += 1
        if length == 0:
            raise DirectiveError("directive too short for a single group")
    return DirectiveSequence(
        rule=rule,
        seed=d.seed,
        description=description or f"{d.description} (grouped)",
        length=length,
        seed_prolongable=d.seed_prolongable
    )


def limit_prefix(
    d: DirectiveSequence,
    target: int,
    depth_budget: Optional[int] = None
) -> GeneratedPrefix:
    """Certified prefix of x = lim s0 ... sn (seed seed ...)"""
    return _generate(d, target, depth_budget, level=0)


def tail_prefix(
    d: DirectiveSequence,
    n: int,
    target: int,
    depth_budget: Optional[int] = None
) -> GeneratedPrefix:
    """Certified prefix of x^(n) = lim s_n s_{n+1} ... (seed seed ...)"""
    if not d.has_level(n):
        raise DirectiveError(f"directive has no level {n}", level=n)
    return _generate(d.shifted(n), target, depth_budget, level=n)


def _generate(d: DirectiveSequence, target: int, depth_budget: Optional[int], level: int) -> GeneratedPrefix:
    if target < 1:
        raise LengthError("target length must be at least 1", target, 1)
    budget = depth_budget or settings.DEFAULT_DEPTH_BUDGET
    seed = d.seed

    # Certificate 1: when every sigma_k(seed) of the whole directive starts with
    # the seed, S_k(seed) is a prefix of the limit. Certificate 2: three
    # consecutive iterates agree.
    prolongable = d.seed_prolongable
    lengths: Optional[Dict[str, int]] = None
    iterates: List[Word] = []
    depth = -1
    seed_length = 1

    for depth in range(budget):
        if not d.has_level(depth):
            depth -= 1
            break
        m = d.morphism(depth)
        if seed not in m.domain:
            raise DirectiveError(f"seed {seed!r} is not a letter of A_{depth + 1}", level=level + depth)
        if lengths is None:
            lengths = {token: 1 for token in m.codomain.symbols}
        lengths = {
            letter: sum(lengths[b] for b in image.tokens)
            for letter, image in zip(m.domain.symbols, m.images)
        }
        seed_length = lengths[seed]
        if prolongable and m.image(seed).first() != seed:
            prolongable = False
            logger.warning(f"level {level}: sigma_{depth}({seed}) does not start with {seed}, using agreement")

        if prolongable:
            if seed_length >= target:
                word = _iterate(d, depth, seed, seed_length, target)
                logger.info(f"level {level}: {target} symbols certified at depth {depth}")
                return GeneratedPrefix(
                    word=word, stable_length=target, depth_used=depth, converged=True,
                    target=target, level=level, certificate="prolongable"
                )
            continue

        iterates.append(_iterate(d, depth, seed, seed_length, target))
        iterates = iterates[-3:]
        if len(iterates) == 3 and len({w.codes for w in iterates}) == 1:
            logger.info(f"level {level}: {target} symbols stable over depths {depth - 2}..{depth}")
            return GeneratedPrefix(
                word=iterates[-1], stable_length=target, depth_used=depth, converged=True,
                target=target, level=level, certificate="agreement"
            )

    if depth < 0:
        raise DirectiveError("directive has no morphisms", level=level)
    if not d.has_level(depth + 1):
        # finite directive: the limit is S_depth(seed seed ...), read off exactly
        word = _iterate(d, depth, seed, seed_length, target)
        logger.info(f"level {level}: finite directive exhausted at depth {depth}, prefix is exact")
        return GeneratedPrefix(
            word=word, stable_length=target, depth_used=depth, converged=True,
            target=target, level=level, certificate="finite"
        )
    if prolongable:
        word = _iterate(d, depth, seed, seed_length, target)
        stable = min(seed_length, len(word))
        certificate = "prolongable"
    else:
        word = iterates[-1]
        stable = common_prefix_length(iterates[-2], word) if len(iterates) > 1 else 0
        certificate = "agreement"
    logger.warning(
        f"level {level}: prefix of length {target} not certified within depth {depth} "
        f"(stable {stable})"
    )
    return GeneratedPrefix(
        word=word, stable_length=stable, depth_used=depth, converged=False,
        target=target, level=level, certificate=certificate
    )


def _iterate(d: DirectiveSequence, depth: int, seed: str, seed_length: int, target: int) -> Word:
    """First `target` symbols of s0 ... s_depth (seed^r), r large enough to reach target"""
    inner = d.morphism(depth).domain
    repetitions = ceil(target / seed_length)
    w = Word.from_tokens([seed] * repetitions, inner)
    for k in range(depth, -1, -1):
        w = apply_prefix(d.morphism(k), w, target)
    return w


def check_primitive_window(d: DirectiveSequence, r_max: int, s0: int) -> PrimitivityReport:
    """
    For r = 0..r_max: does every letter of A_r occur in
    sigma_r ... sigma_{r+s0}(c) for every c of A_{r+s0+1}?
    """
    if r_max < 0 or s0 < 0:
        raise ParameterError("r_max" if r_max < 0 else "s0", "r_max and s0 must be non-negative")

    def row(r: int) -> PrimitivityRow:
        block = telescope(d, r, r + s0)
        names = [d.morphism(k).name or f"s{k}" for k in range(r, r + s0 + 1)]
        return PrimitivityRow(
            level=r,
            block=" ".join(names),
            positive=is_positive(block),
            missing=letters_missing(block)
        )

    rows = ordered_map(row, range(r_max + 1))
    for item in rows:
        if not item.positive:
            logger.info(f"primitivity window fails at level {item.level} ({item.block})")
    return PrimitivityReport(s0=s0, r_max=r_max, rows=rows, passed=all(r.positive for r in rows))


def dn_statistic(
    d: DirectiveSequence,
    n: int,
    window: int,
    depth_budget: Optional[int] = None
) -> DnObservation:
    """Largest gap of a length-2 factor in a window of x^(n) (a lower bound for D_n)"""
    if window < 2:
        raise LengthError("D_n needs a window of at least 2 symbols", window, 2)
    prefix = tail_prefix(d, n, window, depth_budget)
    if not prefix.converged:
        raise NonConvergenceError(n, window, prefix.stable_length, prefix.depth_used)
    summary = max_gap_over_length2(prefix.word)
    return DnObservation(
        level=n,
        observed=summary.max_gap,
        truncated=summary.truncated,
        window=window,
        per_factor=summary.per_factor
    )


def has_growth_trend(values: List[int]) -> bool:
    """The later half of the observations sets a new record over the earlier half"""
    if len(values) < 2:
        return False
    split = (len(values) + 1) // 2
    return max(values[split:]) > max(values[:split])


def lr_sufficient_report(
    d: DirectiveSequence,
    n_max: int,
    window: int,
    depth_budget: Optional[int] = None
) -> LRSufficientReport:
    """D_0 ... D_{n_max} and a boundedness verdict"""
    if n_max < 0:
        raise ParameterError("n_max", "n_max must be non-negative")
    rows = ordered_map(lambda n: dn_statistic(d, n, window, depth_budget), range(n_max + 1))
    values = [r.observed or 0 for r in rows]
    growing = has_growth_trend(values)
    verdict = "unbounded trend" if growing else "consistent with LR"
    logger.info(f"D_n over levels 0..{n_max}: {values} -> {verdict}")
    return LRSufficientReport(
        rows=rows,
        max_observed=max(values) if values else None,
        growing=growing,
        verdict=verdict
    )


def complexity_bound_check(
    d: DirectiveSequence,
    D: Union[int, Fraction],
    n_max: int,
    window: int,
    depths: int = 8,
    depth_budget: Optional[int] = None
) -> ComplexityBoundReport:
    """
    Checks the hypotheses and the conclusion of the linear complexity bound:
    |S_{k+1}(b)| <= D |S_k(c)| for all b, c and k <= depths; min |S_k| strictly
    increasing; p(n) <= D (Card A)^2 n for 1 <= n <= n_max on a window prefix.
    """
    D = Fraction(D)
    if D < 1:
        raise ParameterError("D", "D must be at least 1")
    if n_max < 1 or n_max > window:
        raise ParameterError("n_max", "n_max must lie in [1, window]")

    table = telescoped_lengths(d, depths + 1)
    violations = []
    for k in range(depths + 1):
        low, high = table[k], table[k + 1]
        b_index = max(range(len(high.lengths)), key=high.lengths.__getitem__)
        c_index = min(range(len(low.lengths)), key=low.lengths.__getitem__)
        lhs, rhs = high.lengths[b_index], D * low.lengths[c_index]
        if lhs > rhs:
            violations.append(BoundWitness(
                depth=k, b=high.letters[b_index], c=low.letters[c_index], lhs=lhs, rhs=rhs
            ))
    min_lengths = [min(row.lengths) for row in table]
    max_lengths = [max(row.lengths) for row in table]
    growth_ok = all(a < b for a, b in zip(min_lengths, min_lengths[1:]))

    letters = set()
    for k in range(depths + 2):
        m = d.morphism(k)
        letters.update(m.domain.symbols)
        letters.update(m.codomain.symbols)
    card = len(letters)

    prefix = limit_prefix(d, window, depth_budget)
    if not prefix.converged:
        raise NonConvergenceError(0, window, prefix.stable_length, prefix.depth_used)
    profile = complexity_profile(prefix.word, n_max)
    bad_rows = []
    for n, p in enumerate(profile, start=1):
        bound = D * card * card * n
        if p > bound:
            bad_rows.append(ComplexityRow(n=n, p=p, bound=bound))
    max_ratio = max(Fraction(p, n) for n, p in enumerate(profile, start=1))

    if violations:
        logger.warning(f"length hypothesis fails at {len(violations)} depth(s), first at depth {violations[0].depth}")
    return ComplexityBoundReport(
        D=D,
        alphabet_size=card,
        depths=depths,
        min_lengths=min_lengths,
        max_lengths=max_lengths,
        hypothesis_ok=not violations,
        violations=violations,
        growth_ok=growth_ok,
        window=window,
        complexity_ok=not bad_rows,
        complexity_violations=bad_rows,
        max_ratio=max_ratio,
        passed=not violations and growth_ok and not bad_rows
    )
