"""
Built-in constructions: the primitive non-LR directive over {a, b, c} and the
Sturmian directives tau^{i1} sigma^{i2} tau^{i3} ... over {0, 1}.
"""
import logging
import threading
from bisect import bisect_right
from fractions import Fraction
from itertools import product
from math import ceil
from typing import Iterable, List, Optional, Sequence, Tuple

from sadiclab.schemas.directive import DirectiveSequence, seed_prolongs
from sadiclab.schemas.examples import (
    BlockIdentityReport,
    BlockIdentityRow,
    CounterexampleSpec,
    GapLemmaReport,
    NotLRReport,
    ProfileContrastReport,
    SturmianGapReport,
    SturmianSpec,
    SturmianVerdictReport,
    SturmianVerdictRow,
    TelescopingReport,
)
from sadiclab.schemas.morphism import Morphism
from sadiclab.schemas.word import Alphabet, TwoSidedWindow, Word
from sadiclab.services.morphisms import apply, apply_prefix, compose_all, power
from sadiclab.services.pool import ordered_map
from sadiclab.services.returns import lr_ratio_estimate
from sadiclab.services.sadic import (
    dn_statistic,
    group_directive,
    has_growth_trend,
    limit_prefix,
    telescope,
)
from sadiclab.services.words import common_prefix_length, find_all, gaps, max_gap_over_length2
from sadiclab.utils.errors import (
    DirectiveError,
    InsufficientOccurrencesError,
    NonConvergenceError,
    ParameterError,
)

logger = logging.getLogger(__name__)

ABC = Alphabet.of("abc")
BINARY = Alphabet.of("01")

SIGMA = Morphism.from_mapping({"a": "acb", "b": "bab", "c": "cbc"}, ABC, ABC, name="sigma")
TAU = Morphism.from_mapping({"a": "abc", "b": "acb", "c": "aac"}, ABC, ABC, name="tau")

STURMIAN_TAU = Morphism.from_mapping({"0": "0", "1": "10"}, BINARY, BINARY, name="tau")
STURMIAN_SIGMA = Morphism.from_mapping({"0": "01", "1": "1"}, BINARY, BINARY, name="sigma")

CA = ABC.word("ca")

# Letter exchange 0 <-> 1 maps the tau form of a block onto the sigma form
_EXCHANGE = str.maketrans("01", "10")


# Counterexample

def counterexample_block_start(k: int, first_block: int = 1) -> int:
    """Stream index where the block sigma^k tau starts"""
    if k < first_block:
        raise ParameterError("k", f"block {k} precedes the first block {first_block}")
    return (k - 1) * k // 2 - (first_block - 1) * first_block // 2 + (k - first_block)


def counterexample_directive(first_block: int = 1) -> DirectiveSequence:
    """
    Stream sigma^f tau sigma^{f+1} tau ... with seed a, f = first_block.

    first_block=1 gives x itself; first_block=n+2 gives the tail y with
    x = rho_n sigma^{n+1} tau (y).
    """
    if first_block < 1:
        raise ParameterError("first_block", "blocks are numbered from 1")

    def rule(n: int) -> Morphism:
        k = first_block
        while counterexample_block_start(k + 1, first_block) <= n:
            k += 1
        return SIGMA if n - counterexample_block_start(k, first_block) < k else TAU

    return DirectiveSequence(
        rule=rule,
        seed="a",
        description=f"sigma^{first_block} tau sigma^{first_block + 1} tau ...",
        primitivity_constant=1,
        seed_prolongable=seed_prolongs((SIGMA, TAU), "a")
    )


def rho(n: int) -> Morphism:
    """rho_n = sigma tau sigma^2 tau ... sigma^n tau, constant length 3^{n(n+3)/2}"""
    if n < 1:
        raise ParameterError("n", "n must be at least 1")
    d = counterexample_directive()
    m = telescope(d, 0, counterexample_block_start(n + 1) - 1)
    return m.model_copy(update={"name": f"rho{n}"})


def _block(n: int) -> Morphism:
    """sigma^n tau"""
    return compose_all([power(SIGMA, n), TAU])


def _tail_prefix(first_block: int, length: int, depth_budget: Optional[int]) -> Word:
    prefix = limit_prefix(counterexample_directive(first_block), length, depth_budget)
    if not prefix.converged:
        raise NonConvergenceError(0, length, prefix.stable_length, prefix.depth_used)
    return prefix.word


def verify_gap_lemma(
    n: int,
    window: int,
    z: Optional[Word] = None,
    depth_budget: Optional[int] = None
) -> GapLemmaReport:
    """
    Gaps between successive occurrences of ca in sigma^n tau (z), against 3^{n+1}.

    z defaults to the tail y of the counterexample for parameter n.
    """
    if n < 1:
        raise ParameterError("n", "n must be at least 1")
    block = _block(n)
    scale = 3 ** (n + 1)
    if z is None:
        z = _tail_prefix(n + 2, ceil(window / scale) + 1, depth_budget)
    image = apply_prefix(block, z, window)
    positions = find_all(image.codes, CA.codes)
    found = gaps(positions)
    conclusive = len(positions) >= 3
    low = min(found) if found else None
    if not conclusive:
        logger.warning(f"gap check n={n}: {len(positions)} occurrence(s) of ca, inconclusive")
    return GapLemmaReport(
        n=n,
        bound=scale,
        window=len(image),
        occurrences=len(positions),
        min_gap=low,
        max_gap=max(found) if found else None,
        conclusive=conclusive,
        strict=low > scale if conclusive else None,
        passed=conclusive and low >= scale
    )


def verify_not_lr(
    n: int,
    window: int,
    x_window: int = 1_000_000,
    depth_budget: Optional[int] = None
) -> NotLRReport:
    """
    Exhibit a return word w to ca in sigma^{n+1} tau (y) and pull it back through rho_n.

    rho_n(w) is then a return word to rho_n(ca) in x, of ratio |w| / 2.
    """
    if n < 1:
        raise ParameterError("n", "n must be at least 1")
    spec = CounterexampleSpec(n=n)
    scale = 3 ** (n + 2)
    y = _tail_prefix(spec.tail_first_block, ceil(window / scale) + 1, depth_budget)
    image = apply_prefix(_block(n + 1), y, window)
    positions = find_all(image.codes, CA.codes)
    if len(positions) < 2:
        raise InsufficientOccurrencesError(CA.text, len(positions))

    returns = gaps(positions)
    j = positions[0]
    w = image[j:positions[1]]

    r = rho(n)
    rho_length = len(r.images[0])
    rho_ca = apply(r, CA)
    rho_wca = apply(r, w + CA)
    exactly_twice = len(find_all(rho_wca.codes, rho_ca.codes)) == 2
    rho_w_length = len(rho_wca) - len(rho_ca)

    x_prefix_ok = None
    end = (j + len(w) + 2) * rho_length
    if end <= x_window:
        x = _tail_prefix(1, end, depth_budget)
        x_prefix_ok = x[j * rho_length:end] == rho_wca
    else:
        logger.info(f"not-LR n={n}: x-prefix check needs {end} symbols, skipped")

    ratio = Fraction(rho_w_length, len(rho_ca))
    passed = (
        len(w) >= scale
        and min(returns) >= scale
        and exactly_twice
        and x_prefix_ok is not False
    )
    logger.info(f"not-LR n={n}: |w|={len(w)}, ratio {ratio}")
    return NotLRReport(
        n=n,
        window=len(image),
        position=j,
        w_length=len(w),
        w_bound=scale,
        min_return_length=min(returns),
        returns_seen=len(returns),
        rho_length=rho_length,
        rho_w_length=rho_w_length,
        exactly_twice=exactly_twice,
        x_prefix_ok=x_prefix_ok,
        ratio=ratio,
        ratio_bound=Fraction(scale, 2),
        passed=passed
    )


def verify_telescoping(n: int, length: int, depth_budget: Optional[int] = None) -> TelescopingReport:
    """First `length` symbols of x against rho_n sigma^{n+1} tau (y)"""
    if n < 1:
        raise ParameterError("n", "n must be at least 1")
    r = rho(n)
    per_letter = len(r.images[0]) * 3 ** (n + 2)
    y = _tail_prefix(CounterexampleSpec(n=n).tail_first_block, ceil(length / per_letter) + 1, depth_budget)
    rhs = apply_prefix(r, apply_prefix(_block(n + 1), y, length), length)
    x = _tail_prefix(1, length, depth_budget)
    common = common_prefix_length(x, rhs)
    return TelescopingReport(
        n=n,
        length=length,
        first_mismatch=None if common == length else common,
        passed=common == length
    )


# Sturmian family

class _BlockStream:
    """
    Non-empty blocks of a Sturmian stream, materialised on demand.

    blocks[t] = (kind, exponent); offsets[t] = stream index where block t starts.
    """

    def __init__(self, spec: SturmianSpec):
        self.spec = spec
        self.blocks: List[Tuple[str, int]] = []
        self.offsets: List[int] = [0]
        self._k = 0
        self._done = False
        self._lock = threading.Lock()

    def ensure(self, count: int) -> bool:
        """Materialise `count` blocks; False when the stream is shorter"""
        with self._lock:
            while len(self.blocks) < count and not self._done:
                self._k += 1
                q = self.spec.quotient(self._k)
                if q is None:
                    self._done = True
                elif q > 0:
                    self.blocks.append(("tau" if self._k % 2 else "sigma", q))
                    self.offsets.append(self.offsets[-1] + q)
            return len(self.blocks) >= count

    def kind_at(self, n: int) -> Optional[str]:
        while self.offsets[-1] <= n:
            if not self.ensure(len(self.blocks) + 1):
                return None
        return self.blocks[bisect_right(self.offsets, n) - 1][0]

    def total(self) -> Optional[int]:
        """Stream length of a finite spec"""
        if not self.spec.finite:
            return None
        self.ensure(len(self.spec.quotients))
        return self.offsets[-1]


def sturmian_directive(s: SturmianSpec) -> DirectiveSequence:
    """Flattened stream tau x i1, sigma x i2, tau x i3, ... with seed 0"""
    stream = _BlockStream(s)
    length = stream.total()
    if length == 0:
        raise DirectiveError("Sturmian quotients produce an empty stream")

    def rule(n: int) -> Morphism:
        kind = stream.kind_at(n)
        if kind is None:
            raise DirectiveError(f"Sturmian stream ends before level {n}", level=n)
        return STURMIAN_TAU if kind == "tau" else STURMIAN_SIGMA

    return DirectiveSequence(
        rule=rule,
        seed="0",
        description=f"sturmian {s}",
        length=length,
        seed_prolongable=seed_prolongs((STURMIAN_TAU, STURMIAN_SIGMA), "0")
    )


def block_morphism(i: int, j: int, k: int, form: str = "tau") -> Morphism:
    """tau^i sigma^j tau^k, or sigma^i tau^j sigma^k for form='sigma'"""
    outer, middle = (STURMIAN_TAU, STURMIAN_SIGMA) if form == "tau" else (STURMIAN_SIGMA, STURMIAN_TAU)
    return compose_all([power(outer, i), power(middle, j), power(outer, k)])


def block_closed_form(i: int, j: int, k: int, letter: str, form: str = "tau") -> str:
    """0(10^i)^j and 10^i(0(10^i)^j)^k, letters exchanged for the sigma form"""
    if form == "sigma":
        exchanged = block_closed_form(i, j, k, letter.translate(_EXCHANGE), "tau")
        return exchanged.translate(_EXCHANGE)
    unit = "1" + "0" * i
    if letter == "0":
        return "0" + unit * j
    return unit + ("0" + unit * j) * k


def verify_block_identities(
    triples: Iterable[Tuple[int, int, int]],
    forms: Sequence[str] = ("tau", "sigma")
) -> BlockIdentityReport:
    """Computed block images against the closed forms, both letters, each form"""
    rows = []
    for (i, j, k), form in product(triples, forms):
        if min(i, j, k) < 1:
            raise ParameterError("i,j,k", "block exponents must be positive")
        m = block_morphism(i, j, k, form)
        for letter in BINARY.symbols:
            computed = m.image(letter).text
            expected = block_closed_form(i, j, k, letter, form)
            rows.append(BlockIdentityRow(
                i=i, j=j, k=k, form=form, letter=letter,
                computed=computed, closed_form=expected, equal=computed == expected
            ))
    bad = [r for r in rows if not r.equal]
    if bad:
        logger.warning(f"{len(bad)} block identity row(s) differ, first ({bad[0].i},{bad[0].j},{bad[0].k}) {bad[0].form}")
    return BlockIdentityReport(rows=rows, passed=not bad)


def all_triples(i_max: int, j_max: int, k_max: int) -> List[Tuple[int, int, int]]:
    return list(product(range(1, i_max + 1), range(1, j_max + 1), range(1, k_max + 1)))


def verify_sturmian_gaps(i: int, j: int, k: int, x_tail: Word, form: str = "tau") -> SturmianGapReport:
    """
    Length-2 gaps of the block image of x_tail.

    Only 2 max{i, j, k} + 3 decides `passed`; the per-factor bounds are
    reported alongside.
    """
    if min(i, j, k) < 1:
        raise ParameterError("i,j,k", "block exponents must be positive")
    y = apply(block_morphism(i, j, k, form), x_tail)
    summary = max_gap_over_length2(y)
    bound = 2 * max(i, j, k) + 3

    double = "0" if form == "tau" else "1"
    sub_bounds = {"01": i + 2, "10": i + 2, double * 2: 2 * j + 3 if i == 1 else 3}
    forbidden = ("1" if form == "tau" else "0") * 2
    factors = sorted(set(summary.per_factor) | set(summary.single_occurrence))
    sub_ok = forbidden not in factors and all(
        gap <= sub_bounds[f] for f, gap in summary.per_factor.items() if f in sub_bounds
    )
    if not sub_ok:
        logger.info(f"block ({i},{j},{k}) {form}: a per-factor bound does not hold on this window")
    return SturmianGapReport(
        i=i, j=j, k=k, form=form,
        length=len(y),
        bound=bound,
        per_factor=summary.per_factor,
        max_gap=summary.max_gap,
        factors=factors,
        sub_bounds=sub_bounds,
        sub_bounds_ok=sub_ok,
        passed=summary.max_gap is None or summary.max_gap <= bound
    )


def sturmian_lr_verdict(
    s: SturmianSpec,
    n_max: int,
    window: int,
    max_u_len: Optional[int] = None,
    depth_budget: Optional[int] = None
) -> SturmianVerdictReport:
    """
    Group the stream into alternating triples tau^i sigma^j tau^k / sigma^i tau^j sigma^k,
    observe D_m on each tail and hold it against 2 max(triple) + 3.
    """
    if n_max < 0:
        raise ParameterError("levels", "levels must be non-negative")
    d = sturmian_directive(s)
    stream = _BlockStream(s)

    dropped = 0
    if s.finite:
        stream.ensure(len(s.quotients))
        triples, dropped = divmod(len(stream.blocks), 3)
        if triples == 0:
            raise DirectiveError("Sturmian stream too short for a single triple")
        if dropped:
            logger.info(f"{dropped} trailing block(s) outside any triple, dropped")
        n_max = min(n_max, triples - 1)

    def start(m: int) -> int:
        if stream.ensure(3 * m):
            return stream.offsets[3 * m]
        return d.length + m

    grouped = group_directive(d, start, description=f"sturmian {s} (triples)")
    stream.ensure(3 * (n_max + 1))

    def row(m: int) -> SturmianVerdictRow:
        observation = dn_statistic(grouped, m, window, depth_budget)
        blocks = stream.blocks[3 * m:3 * m + 3]
        exponents = tuple(q for _, q in blocks)
        bound = 2 * max(exponents) + 3
        observed = observation.observed
        return SturmianVerdictRow(
            level=m,
            form=" ".join(kind for kind, _ in blocks),
            exponents=exponents,
            observed=observed,
            truncated=observation.truncated,
            bound=bound,
            within=observed is None or observed <= bound
        )

    rows = ordered_map(row, range(n_max + 1))
    values = [r.observed or 0 for r in rows]
    growing = has_growth_trend(values)
    verdict = "unbounded trend" if growing else "consistent with LR"

    profile = None
    if max_u_len:
        prefix = limit_prefix(d, window, depth_budget)
        if not prefix.converged:
            raise NonConvergenceError(0, window, prefix.stable_length, prefix.depth_used)
        profile = lr_ratio_estimate(TwoSidedWindow(word=prefix.word), max_u_len)

    logger.info(f"sturmian {s}: D over {len(rows)} triple(s) {values} -> {verdict}")
    return SturmianVerdictReport(
        quotients=str(s),
        rows=rows,
        dropped_blocks=dropped,
        max_quotient=max(max(r.exponents) for r in rows),
        growing=growing,
        verdict=verdict,
        profile=profile,
        passed=all(r.within for r in rows)
    )


def contrast_profiles(
    base: SturmianSpec,
    other: SturmianSpec,
    window: int,
    max_u_len: int,
    depth_budget: Optional[int] = None
) -> ProfileContrastReport:
    """Does `other` (unbounded quotients, say) show larger return ratios than `base`?"""

    def profile(s: SturmianSpec):
        prefix = limit_prefix(sturmian_directive(s), window, depth_budget)
        if not prefix.converged:
            raise NonConvergenceError(0, window, prefix.stable_length, prefix.depth_used)
        return lr_ratio_estimate(TwoSidedWindow(word=prefix.word), max_u_len)

    first, second = ordered_map(profile, [base, other])
    passed = (
        first.max_ratio is not None
        and second.max_ratio is not None
        and second.max_ratio > first.max_ratio
    )
    logger.info(f"ratio contrast {base} vs {other}: {first.max_ratio} vs {second.max_ratio}")
    return ProfileContrastReport(
        base=str(base),
        other=str(other),
        window=window,
        max_u_len=max_u_len,
        base_max=first.max_ratio,
        other_max=second.max_ratio,
        passed=passed
    )
