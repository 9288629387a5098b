"""The canonical-form engine.

`beta1` expands a word letterwise into a mountain range; `beta2` uplifts
rivers until none remain.  Uplifting a river either replaces it with the
freshly validated 5-tuple built from its neighbourhood or, when that
candidate degenerates (equal neighbours with mutually inverse anchors),
deletes four tokens.  The system is noetherian and locally confluent, so
the river-free form is unique and `beta = beta2 . beta1` is a complete
invariant of the congruence class.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .alphabet import (BASE, GenTuple, ONE, X, XP, Anchor, height_of,
                       intern_tuple, involute)
from .errors import LandscapeError, NormalizationOverflow
from .landscape import Landscape, TRIVIAL, Word, join
from . import landscape as _lsc

_B1_X = Landscape((ONE, BASE, ONE), (ONE, X))
_B1_XP = Landscape((ONE, BASE, ONE), (XP, ONE))
_B1_BASE = Landscape((ONE, BASE, ONE), (ONE, ONE))


@dataclass(frozen=True)
class UpliftStep:
    """One river uplift; `inserted` is None for the deletion case."""

    before: Landscape
    river: int
    inserted: GenTuple | None
    after: Landscape

    @property
    def deleted(self) -> bool:
        return self.inserted is None


def beta1_letter(tok) -> Landscape:
    """The mountain associated to a single token.

    For a tuple g of height >= 2 the left hill climbs the middle chain
    g^{c^n}, ..., g^c, g, inserting before each chain letter h the block
    (h.la)' h.l h.la; the right hill is the dual descent.  Odd heights end
    the chain at the base tuple and wrap the result in 1 1 ... 1 1.
    """
    if tok is ONE:
        return TRIVIAL
    if tok is X:
        return _B1_X
    if tok is XP:
        return _B1_XP
    if tok is BASE:
        return _B1_BASE
    if not isinstance(tok, GenTuple):
        raise ValueError(f"{tok!r} is not an alphabet token")
    chain = [tok]
    while chain[-1].height >= 4:
        chain.append(chain[-1].c)
    bottom = chain[-1].c  # ONE for even height, BASE for odd
    toks = [bottom]
    for h in reversed(chain):
        toks.extend((involute(h.la), h.l, h.la, h))
    for h in chain:
        toks.extend((involute(h.ra), h.r, h.ra, h.c))
    if tok.height % 2 == 1:
        toks = [ONE, Anchor.ONE] + toks + [Anchor.ONE, ONE]
    return Landscape(toks[0::2], toks[1::2])


def beta1(w: Word) -> Landscape:
    """Letterwise expansion joined at the shared unit boundaries."""
    out = beta1_letter(w.tokens[0])
    for tok in w.tokens[1:]:
        out = join(out, beta1_letter(tok))
    return out


def uplift(u: Landscape, river: int) -> UpliftStep:
    """Uplift the river at letter index `river`.

    Deletion happens exactly when the candidate tuple would be invalid:
    equal neighbours flanked by mutually inverse anchors.
    """
    if river not in u.rivers:
        raise LandscapeError(f"letter {river} is not a river")
    left, mid, right = u.letters[river - 1:river + 2]
    a_in, a_out = u.anchors[river - 1], u.anchors[river]
    if left is right and a_in is involute(a_out):
        after = Landscape(u.letters[:river] + u.letters[river + 2:],
                          u.anchors[:river - 1] + u.anchors[river + 1:])
        return UpliftStep(u, river, None, after)
    h = intern_tuple(right, involute(a_out), mid, a_in, left)
    after = Landscape(u.letters[:river] + (h,) + u.letters[river + 1:],
                      u.anchors)
    return UpliftStep(u, river, h, after)


def river_vector(u: Landscape, size: int) -> tuple:
    """River counts indexed by height 0..size-1 (the termination measure)."""
    counts = [0] * size
    for i in u.rivers:
        counts[u.heights[i]] += 1
    return tuple(counts)


def _choose(u: Landscape, strategy: str, rng) -> int:
    rivers = u.rivers
    if strategy == "leftmost":
        return rivers[0]
    if strategy == "lowest-first":
        return min(rivers, key=lambda i: (u.heights[i], i))
    if strategy == "random":
        return rng.choice(rivers)
    raise ValueError(f"unknown strategy {strategy!r}")


def beta2_steps(u: Landscape, strategy: str = "lowest-first",
                seed: int | None = None):
    """Normalize and return (river-free landscape, list of UpliftSteps)."""
    rng = random.Random(seed) if strategy == "random" else None
    tokens = 2 * u.n + 1
    ceiling = tokens * tokens
    # height can rise at most n/2 above the start
    vec_size = u.height + u.n // 2 + 2
    steps = []
    current = u
    while current.rivers:
        if len(steps) >= ceiling:
            raise NormalizationOverflow(
                f"normalization exceeded {ceiling} steps")
        step = uplift(current, _choose(current, strategy, rng))
        assert (river_vector(step.after, vec_size) <
                river_vector(step.before, vec_size))
        steps.append(step)
        current = step.after
    return current, steps


def beta2(u: Landscape, strategy: str = "lowest-first",
          seed: int | None = None) -> Landscape:
    """The unique river-free landscape reachable from `u` by uplifting."""
    return beta2_steps(u, strategy, seed)[0]


def beta(w: Word) -> Landscape:
    """The canonical mountain of the congruence class of `w`."""
    return beta2(beta1(w))


@dataclass(frozen=True)
class ConfluenceReport:
    word: str
    passed: bool
    trials: int
    canonical: str
    steps_min: int
    steps_max: int
    divergent: str | None
    measure_ok: bool


def check_confluence(w: Word, trials: int = 20, seed: int = 0) -> ConfluenceReport:
    """Normalize beta1(w) under many strategies and compare normal forms.

    Also re-verifies (without relying on `assert`) that the river-count
    vector strictly decreases lexicographically at every step.
    """
    start = beta1(w)
    vec_size = start.height + start.n // 2 + 2
    runs = [beta2_steps(start, "lowest-first"), beta2_steps(start, "leftmost")]
    for t in range(trials):
        runs.append(beta2_steps(start, "random", seed=seed * 100003 + t))
    canonical = runs[0][0]
    divergent = None
    measure_ok = True
    for result, steps in runs:
        if result != canonical and divergent is None:
            divergent = result.format()
        for step in steps:
            if not (river_vector(step.after, vec_size) <
                    river_vector(step.before, vec_size)):
                measure_ok = False
    counts = [len(steps) for _, steps in runs]
    return ConfluenceReport(
        word=w.format(),
        passed=divergent is None and measure_ok,
        trials=trials,
        canonical=canonical.format(),
        steps_min=min(counts),
        steps_max=max(counts),
        divergent=divergent,
        measure_ok=measure_ok,
    )
