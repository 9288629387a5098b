"""Words over the generator alphabet and the landscape grammar.

A word is any nonempty token sequence.  A landscape is the alternating
letter/anchor reading of a word in which every letter-anchor-letter
triplet is anchored: the lower letter is a wing of the higher one and the
anchor is the matching wing anchor (ascending) or its involute
(descending).  Rivers, ridges and peaks are positions in the letter
sequence; mountains (river-free landscapes from 1 to 1) are the canonical
forms computed by the rewrite module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import (Anchor, GenTuple, ONE, Token, TupleClass, format_token,
                       get_height_cap, height_of, involute, is_letter,
                       parse_token)
from .errors import HeightCapExceeded, LandscapeError, ParseError


@dataclass(frozen=True)
class Word:
    """A nonempty sequence of alphabet tokens."""

    tokens: tuple

    def __post_init__(self):
        if not self.tokens:
            raise ParseError("empty word")

    def format(self, mode: str = "alias") -> str:
        return format_word(self, mode)

    def __str__(self):
        return self.format()

    def __len__(self):
        return len(self.tokens)


def word_of(*tokens) -> Word:
    return Word(tuple(tokens))


def parse_word(text: str) -> Word:
    """Whitespace-separated tokens; tuple literals and aliases resolved."""
    pieces = text.split()
    if not pieces:
        raise ParseError("empty input")
    tokens = []
    for pos, piece in enumerate(pieces):
        try:
            tokens.append(parse_token(piece))
        except ParseError as exc:
            raise ParseError(str(exc), position=pos) from None
    return Word(tuple(tokens))


def format_word(w: Word, mode: str = "alias") -> str:
    if mode not in ("alias", "expanded"):
        raise ValueError(f"unknown format mode {mode!r}")
    expanded = mode == "expanded"
    return " ".join(format_token(t, expanded=expanded) for t in w.tokens)


def _triplet_anchored(g1, a, g2) -> bool:
    h1, h2 = height_of(g1), height_of(g2)
    if h2 == h1 + 1:
        # ascending: g1 must be a wing of g2 with g2's own anchor
        return (g1 is g2.l and a is g2.la) or (g1 is g2.r and a is g2.ra)
    if h1 == h2 + 1:
        # descending: g2 must be a wing of g1 with the involuted anchor
        return ((g2 is g1.l and a is involute(g1.la)) or
                (g2 is g1.r and a is involute(g1.ra)))
    return False


class Landscape:
    """A validated alternating word g0 a1 g1 ... an gn.

    Rivers, ridges, peaks and the height are computed at construction;
    instances are immutable and compared by their token content.
    """

    __slots__ = ("letters", "anchors", "heights", "rivers", "ridges",
                 "peaks", "height", "_hash")

    def __init__(self, letters, anchors):
        letters = tuple(letters)
        anchors = tuple(anchors)
        if not letters or len(anchors) != len(letters) - 1:
            raise LandscapeError("letter/anchor counts do not alternate")
        heights = []
        for g in letters:
            if not is_letter(g):
                raise LandscapeError(f"{g!r} cannot label a vertex")
            heights.append(height_of(g))
        for i in range(1, len(letters)):
            if not _triplet_anchored(letters[i - 1], anchors[i - 1],
                                     letters[i]):
                raise LandscapeError(
                    f"triplet at letter {i - 1} is not anchored")
        self.letters = letters
        self.anchors = anchors
        self.heights = tuple(heights)
        rivers, ridges = [], []
        for i in range(1, len(letters) - 1):
            if heights[i - 1] == heights[i + 1] == heights[i] + 1:
                rivers.append(i)
            elif heights[i - 1] == heights[i + 1] == heights[i] - 1:
                ridges.append(i)
        self.rivers = tuple(rivers)
        self.ridges = tuple(ridges)
        if ridges:
            top = max(heights[i] for i in ridges)
            self.peaks = tuple(i for i in ridges if heights[i] == top)
        else:
            self.peaks = ()
        self.height = max(heights)
        self._hash = None

    # -- basic structure ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.anchors)

    def sigma(self):
        return self.letters[0]

    def tau(self):
        return self.letters[-1]

    def tokens(self) -> tuple:
        out = [self.letters[0]]
        for a, g in zip(self.anchors, self.letters[1:]):
            out.append(a)
            out.append(g)
        return tuple(out)

    def to_word(self) -> Word:
        return Word(self.tokens())

    def format(self, mode: str = "alias") -> str:
        return format_word(self.to_word(), mode)

    def sub(self, i: int, j: int) -> "Landscape":
        """The sub-landscape spanning letters i..j inclusive."""
        return Landscape(self.letters[i:j + 1], self.anchors[i:j])

    # -- classification ----------------------------------------------------

    def is_uphill(self) -> bool:
        return self.n >= 1 and all(
            self.heights[i] == self.heights[i - 1] + 1
            for i in range(1, len(self.letters)))

    def is_downhill(self) -> bool:
        return self.n >= 1 and all(
            self.heights[i] == self.heights[i - 1] - 1
            for i in range(1, len(self.letters)))

    def is_hill(self) -> bool:
        return self.is_uphill() or self.is_downhill()

    def is_valley(self) -> bool:
        if len(self.rivers) != 1 or self.ridges:
            return False
        m = self.rivers[0]
        down = all(self.heights[i] == self.heights[i - 1] - 1
                   for i in range(1, m + 1))
        up = all(self.heights[i] == self.heights[i - 1] + 1
                 for i in range(m + 1, len(self.letters)))
        return down and up

    def is_canyon(self) -> bool:
        return self.is_valley() and self.sigma() is self.tau()

    def is_mountain_range(self) -> bool:
        return self.sigma() is ONE and self.tau() is ONE

    def is_mountain(self) -> bool:
        return self.is_mountain_range() and not self.rivers

    # -- equality ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Landscape) and
                self.letters == other.letters and
                self.anchors == other.anchors)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.letters, self.anchors))
        return self._hash

    def __repr__(self):
        return f"Landscape({self.format()!r})"


TRIVIAL = Landscape((ONE,), ())


@dataclass(frozen=True)
class NotLandscape:
    """First fault found when reading a word as a landscape."""

    position: int
    reason: str


@dataclass(frozen=True)
class LandscapeInfo:
    landscape: Landscape
    rivers: tuple
    ridges: tuple
    peaks: tuple
    height: int
    uphill: bool
    downhill: bool
    hill: bool
    valley: bool
    canyon: bool
    mountain_range: bool
    mountain: bool


def analyze(w: Word):
    """Read a word as a landscape; NotLandscape reports the earliest fault."""
    tokens = w.tokens
    if len(tokens) % 2 == 0:
        return NotLandscape(len(tokens) - 1,
                            "even token count breaks letter/anchor alternation")
    letters, anchors = [], []
    for pos, tok in enumerate(tokens):
        if pos % 2 == 0:
            if not is_letter(tok):
                return NotLandscape(pos, f"{tok!r} is not a letter")
            letters.append(tok)
        else:
            if not isinstance(tok, Anchor):
                return NotLandscape(pos, f"{tok!r} is not an anchor")
            anchors.append(tok)
    for i in range(1, len(letters)):
        if not _triplet_anchored(letters[i - 1], anchors[i - 1], letters[i]):
            return NotLandscape(2 * i - 1,
                                f"triplet at letter {i - 1} is not anchored")
    scape = Landscape(letters, anchors)
    return LandscapeInfo(
        landscape=scape,
        rivers=scape.rivers,
        ridges=scape.ridges,
        peaks=scape.peaks,
        height=scape.height,
        uphill=scape.is_uphill(),
        downhill=scape.is_downhill(),
        hill=scape.is_hill(),
        valley=scape.is_valley(),
        canyon=scape.is_canyon(),
        mountain_range=scape.is_mountain_range(),
        mountain=scape.is_mountain(),
    )


def join(u: Landscape, v: Landscape) -> Landscape:
    """The junction product u * v, merging the shared boundary letter."""
    if u.tau() is not v.sigma():
        raise LandscapeError(
            f"junction mismatch: {format_token(u.tau())} vs "
            f"{format_token(v.sigma())}")
    return Landscape(u.letters + v.letters[1:], u.anchors + v.anchors)


def reverse(u: Landscape) -> Landscape:
    """Letters reversed, anchors reversed and involuted."""
    return Landscape(tuple(reversed(u.letters)),
                     tuple(involute(a) for a in reversed(u.anchors)))


def hills_of(u: Landscape):
    """Split a mountain into its left (uphill) and right (downhill) hills."""
    if not u.is_mountain():
        raise LandscapeError("hills_of needs a mountain")
    if u.n == 0:
        return (TRIVIAL, TRIVIAL)
    p = u.peaks[0]
    return (u.sub(0, p), u.sub(p, len(u.letters) - 1))


def _slot_order(g: GenTuple):
    slots = [(g.l, g.la), (g.r, g.ra)]
    if g.klass is TupleClass.E:
        # wings coincide; the anchor-1 slot comes first
        slots.sort(key=lambda s: s[1].rank)
    return slots


_UPHILL_CACHE: dict = {}


def _uphills(g):
    if g is ONE:
        return [TRIVIAL]
    cached = _UPHILL_CACHE.get(g)
    if cached is not None:
        return cached
    out = []
    for pred, a in _slot_order(g):
        for stem in _uphills(pred):
            out.append(Landscape(stem.letters + (g,), stem.anchors + (a,)))
    _UPHILL_CACHE[g] = out
    return out


def enumerate_hills(g, direction: str = "up"):
    """All 2^height(g) uphills from 1 to g (or downhills from g to 1).

    Order: at every descent the left slot precedes the right slot, and on
    class-E letters the anchor-1 slot precedes the other.  Downhills are
    the reverses of the uphills, in the same order.
    """
    if not is_letter(g):
        raise ValueError(f"{g!r} is not a letter")
    if height_of(g) > get_height_cap():
        raise HeightCapExceeded(
            f"letter height {height_of(g)} exceeds cap {get_height_cap()}")
    ups = _uphills(g)
    if direction == "up":
        return list(ups)
    if direction == "down":
        return [reverse(u) for u in ups]
    raise ValueError(f"unknown direction {direction!r}")


def is_landscape_prefix(p: Landscape, u: Landscape) -> bool:
    k = len(p.letters)
    return (len(u.letters) >= k and u.letters[:k] == p.letters and
            u.anchors[:k - 1] == p.anchors)


def is_landscape_suffix(s: Landscape, u: Landscape) -> bool:
    k = len(s.letters)
    if len(u.letters) < k:
        return False
    return (u.letters[len(u.letters) - k:] == s.letters and
            u.anchors[len(u.anchors) - (k - 1):] == s.anchors)
