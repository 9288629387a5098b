"""The two-idempotent triple world and its embedding.

Triples mirror the 5-tuples with the anchors dropped: the letters are 1,
the two height-1 idempotents e and f, and interned composites (l, c, r)
whose wings differ and share the middle entry.  i-mountains multiply by
junction merge followed by i-river uplifting (delete on equal neighbours,
otherwise insert the triple built from the neighbourhood).

The embedding pairs the sub-model of mountains whose letters stay inside
the distinguished tuple family and whose height-1 letters wear mutually
inverse anchors with the i-mountain model: `phi_*` drops anchors (reading
1 gxx' 1 as e and x' gxx' x as f), `psi_*` reinserts the unique anchors.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .alphabet import (BASE, G3D1, G3D2, G3D3, G3D4, GenTuple, ONE, X, XP,
                       TupleClass, get_height_cap, involute)
from .errors import DomainError, HeightCapExceeded, ParseError
from .landscape import Landscape, TRIVIAL, Word, enumerate_hills, join
from .rewrite import beta, beta1_letter
from .algebra import Element, product


class ILetter:
    __slots__ = ()


class IUnit(ILetter):
    __slots__ = ()
    height = 0

    def __repr__(self):
        return "1"


class IBase(ILetter):
    """A height-1 idempotent letter; both entries are the unit."""

    __slots__ = ("name",)
    height = 1

    def __init__(self, name):
        self.name = name

    @property
    def l(self):
        return IONE

    @property
    def r(self):
        return IONE

    def __repr__(self):
        return self.name


class ITriple(ILetter):
    """An interned composite triple (left, middle, right)."""

    __slots__ = ("l", "c", "r", "height", "_index")

    def __init__(self, l, c, r, height):
        self.l = l
        self.c = c
        self.r = r
        self.height = height
        self._index = None

    def __repr__(self):
        return f"h<{self.height}>"


IONE = IUnit()
E_LETTER = IBase("e")
F_LETTER = IBase("f")

_itriples: dict = {}
_ilevels: dict = {}


def intern_itriple(l, c, r) -> ITriple:
    key = (l, c, r)
    hit = _itriples.get(key)
    if hit is not None:
        return hit
    if not (isinstance(l, (IBase, ITriple)) and isinstance(r, (IBase, ITriple))):
        raise DomainError("triple wings must have height >= 1")
    if l.height != r.height:
        raise DomainError("triple wings must share a height")
    if l is r:
        raise DomainError("triple wings must differ")
    if c is not l.l and c is not l.r:
        raise DomainError("middle entry must be an entry of the left wing")
    if c is not r.l and c is not r.r:
        raise DomainError("middle entry must be an entry of the right wing")
    height = l.height + 1
    if height > get_height_cap():
        raise HeightCapExceeded(
            f"triple of height {height} exceeds cap {get_height_cap()}")
    tri = ITriple(l, c, r, height)
    _itriples[key] = tri
    return tri


def _ikey(x):
    if x is IONE:
        return (0, 0)
    if isinstance(x, IBase):
        return (1, 0 if x is E_LETTER else 1)
    if x._index is None:
        enumerate_ilevel(x.height)
    return (x.height, x._index)


def enumerate_ilevel(i: int):
    """Level i of the triple alphabet, lexicographic on (l, c, r)."""
    if i < 1:
        raise ValueError("levels start at 1")
    if i > get_height_cap():
        raise HeightCapExceeded(f"level {i} exceeds cap {get_height_cap()}")
    cached = _ilevels.get(i)
    if cached is not None:
        return list(cached)
    if i == 1:
        level = [E_LETTER, F_LETTER]
    else:
        prev = enumerate_ilevel(i - 1)
        level = []
        for l in prev:
            for r in prev:
                if l is r:
                    continue
                centers = {l.l, l.r} & {r.l, r.r}
                for c in sorted(centers, key=_ikey):
                    level.append(intern_itriple(l, c, r))
        level.sort(key=lambda t: (_ikey(t.l), _ikey(t.c), _ikey(t.r)))
        for k, t in enumerate(level, start=1):
            if t._index is None:
                t._index = k
    _ilevels[i] = level
    return list(level)


class IMountain:
    """A validated i-word: consecutive letters differ in height by one,
    the lower being an entry of the higher."""

    __slots__ = ("letters", "heights", "rivers", "_hash")

    def __init__(self, letters):
        letters = tuple(letters)
        if not letters:
            raise DomainError("empty i-word")
        heights = []
        for h in letters:
            if not isinstance(h, ILetter):
                raise DomainError(f"{h!r} is not an i-letter")
            heights.append(h.height)
        for i in range(1, len(letters)):
            if heights[i] == heights[i - 1] + 1:
                lo, hi = letters[i - 1], letters[i]
            elif heights[i] == heights[i - 1] - 1:
                lo, hi = letters[i], letters[i - 1]
            else:
                raise DomainError(f"height jump at position {i}")
            if lo is not hi.l and lo is not hi.r:
                raise DomainError(f"letter at position {i} is not an entry "
                                  f"of its neighbour")
        self.letters = letters
        self.heights = tuple(heights)
        self.rivers = tuple(
            i for i in range(1, len(letters) - 1)
            if heights[i - 1] == heights[i + 1] == heights[i] + 1)
        self._hash = None

    def is_imountain(self) -> bool:
        return (self.letters[0] is IONE and self.letters[-1] is IONE and
                not self.rivers)

    @property
    def height(self) -> int:
        return max(self.heights)

    def format(self, expanded: bool = False) -> str:
        return " ".join(format_iletter(h, expanded) for h in self.letters)

    def __eq__(self, other):
        return isinstance(other, IMountain) and self.letters == other.letters

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __repr__(self):
        return f"IMountain({self.format()!r})"


ITRIVIAL = IMountain((IONE,))


def _iuplift(letters, i):
    left, mid, right = letters[i - 1:i + 2]
    if left is right:
        return letters[:i] + letters[i + 2:]
    return letters[:i] + (intern_itriple(right, mid, left),) + letters[i + 1:]


def inormalize(u: IMountain, strategy: str = "lowest-first",
               seed: int | None = None) -> IMountain:
    rng = random.Random(seed) if strategy == "random" else None
    current = u
    while current.rivers:
        rivers = current.rivers
        if strategy == "leftmost":
            i = rivers[0]
        elif strategy == "lowest-first":
            i = min(rivers, key=lambda k: (current.heights[k], k))
        elif strategy == "random":
            i = rng.choice(rivers)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        current = IMountain(_iuplift(current.letters, i))
    return current


def iproduct(u: IMountain, v: IMountain,
             strategy: str = "lowest-first", seed: int | None = None) -> IMountain:
    """Junction-merged concatenation, uplifted to the i-river-free form."""
    if u.letters[-1] is not v.letters[0]:
        raise DomainError("i-junction mismatch")
    return inormalize(IMountain(u.letters + v.letters[1:]), strategy, seed)


# ---------------------------------------------------------------------------
# the distinguished tuple family and sub-model

_GCIRC3 = (G3D1, G3D2, G3D3, G3D4)
_gcirc_cache: dict = {}
_gcirc_levels: dict = {}
_gcirc_index: dict = {}


def in_Gcirc(g) -> bool:
    """Membership in the distinguished family closed under the embedding."""
    if not isinstance(g, GenTuple):
        return False
    if g.height <= 2:
        return True  # levels 1 and 2 in full
    if g.height == 3:
        return g in _GCIRC3
    hit = _gcirc_cache.get(g)
    if hit is None:
        hit = (g.klass is TupleClass.D and in_Gcirc(g.l) and in_Gcirc(g.r))
        _gcirc_cache[g] = hit
    return hit


def enumerate_gcirc(i: int):
    """Level i of the distinguished family, in a deterministic order."""
    if i < 1:
        raise ValueError("levels start at 1")
    if i > get_height_cap():
        raise HeightCapExceeded(f"level {i} exceeds cap {get_height_cap()}")
    cached = _gcirc_levels.get(i)
    if cached is not None:
        return list(cached)
    if i == 1:
        level = [BASE]
    elif i == 2:
        from .alphabet import G2E1, G2E2
        level = [G2E1, G2E2]
    elif i == 3:
        level = list(_GCIRC3)
    else:
        from .alphabet import intern_tuple
        prev = enumerate_gcirc(i - 1)
        level = []
        for l in prev:
            for r in prev:
                if l is r:
                    continue
                for c1, a1 in ((l.l, involute(l.la)), (l.r, involute(l.ra))):
                    for c2, a2 in ((r.l, involute(r.la)), (r.r, involute(r.ra))):
                        if c1 is c2:
                            level.append(intern_tuple(l, a1, c1, a2, r))
        level.sort(key=_gcirc_key)
    for k, g in enumerate(level, start=1):
        _gcirc_index.setdefault(g, k)
    _gcirc_levels[i] = level
    return list(level)


def _gcirc_key(g):
    def idx(tok):
        if tok is ONE:
            return 0
        if _gcirc_index.get(tok) is None:
            enumerate_gcirc(tok.height)
        return _gcirc_index[tok]
    return (idx(g.l), g.la.rank, idx(g.c), g.ra.rank, idx(g.r))


def in_Mcirc(u: Landscape) -> bool:
    """Sub-model membership: letters in the family, height-1 letters with
    mutually inverse flanking anchors."""
    if not u.is_mountain():
        raise DomainError("sub-model membership is defined on mountains")
    for i, g in enumerate(u.letters):
        if g is ONE:
            continue
        if not in_Gcirc(g):
            return False
        if g.height == 1 and u.anchors[i] is not involute(u.anchors[i - 1]):
            return False
    return True


# ---------------------------------------------------------------------------
# letter maps

def phi_letter(g: GenTuple) -> ITriple:
    """The triple image of a family tuple of height >= 2."""
    if not (isinstance(g, GenTuple) and g.height >= 2 and in_Gcirc(g)):
        raise DomainError(f"{g!r} is not a family tuple of height >= 2")
    if g.height == 2:
        from .alphabet import G2E1
        return (intern_itriple(E_LETTER, IONE, F_LETTER) if g is G2E1
                else intern_itriple(F_LETTER, IONE, E_LETTER))
    if g.height == 3:
        mid = E_LETTER if g.la is ONE else F_LETTER
        return intern_itriple(phi_letter(g.l), mid, phi_letter(g.r))
    return intern_itriple(phi_letter(g.l), phi_letter(g.c), phi_letter(g.r))


def psi_letter(h: ITriple) -> GenTuple:
    """The tuple image of a composite triple; middle-entry triples of
    height 1 land on the base tuple and the anchors are the unique
    anchoring choices."""
    if not isinstance(h, ITriple):
        raise DomainError(f"{h!r} is not a composite triple")
    from .alphabet import G2E1, G2E2, intern_tuple
    if h.height == 2:
        return G2E1 if h.l is E_LETTER else G2E2
    l5 = psi_letter(h.l)
    r5 = psi_letter(h.r)
    c5 = BASE if isinstance(h.c, IBase) else psi_letter(h.c)
    a = involute(l5.la if h.l.l is h.c else l5.ra)
    b = involute(r5.la if h.r.l is h.c else r5.ra)
    return intern_tuple(l5, a, c5, b, r5)


# ---------------------------------------------------------------------------
# mountain maps

def phi_mountain(u: Landscape) -> IMountain:
    """Drop anchors: 1 gxx' 1 reads e, x' gxx' x reads f."""
    if not in_Mcirc(u):
        raise DomainError("mountain is not in the sub-model")
    out = []
    for i, g in enumerate(u.letters):
        if g is ONE:
            out.append(IONE)
        elif g is BASE:
            out.append(E_LETTER if u.anchors[i - 1] is ONE else F_LETTER)
        else:
            out.append(phi_letter(g))
    return IMountain(out)


def psi_mountain(v: IMountain) -> Landscape:
    """Reinsert anchors: e and f fix their flanks, higher adjacencies admit
    exactly one anchoring anchor (asserted, never guessed)."""
    if not v.is_imountain():
        raise DomainError("not an i-mountain")
    letters = []
    anchors = [None] * (len(v.letters) - 1)
    for i, h in enumerate(v.letters):
        if h is IONE:
            letters.append(ONE)
        elif isinstance(h, IBase):
            letters.append(BASE)
            if h is E_LETTER:
                anchors[i - 1] = ONE
                anchors[i] = ONE
            else:
                anchors[i - 1] = XP
                anchors[i] = X
        else:
            letters.append(psi_letter(h))
    for j in range(len(anchors)):
        if anchors[j] is None:
            anchors[j] = _anchor_between(letters[j], letters[j + 1])
    return Landscape(letters, anchors)


def _anchor_between(p, q):
    if q.height == p.height + 1:
        if q.l is p and q.r is p:
            raise RuntimeError("ambiguous anchor reinsertion")
        if q.l is p:
            return q.la
        if q.r is p:
            return q.ra
    elif p.height == q.height + 1:
        if p.l is q and p.r is q:
            raise RuntimeError("ambiguous anchor reinsertion")
        if p.l is q:
            return involute(p.la)
        if p.r is q:
            return involute(p.ra)
    raise RuntimeError("no anchoring anchor exists")


def gbar(g: GenTuple) -> Element:
    """The sub-model representative of a family tuple of height >= 2.

    Even heights and odd heights whose middle chain lands on an anchor-1
    triple keep [g]; the others conjugate to [x' g x].
    """
    if not (isinstance(g, GenTuple) and g.height >= 2 and in_Gcirc(g)):
        raise DomainError(f"{g!r} is not a family tuple of height >= 2")
    if g.height % 2 == 0:
        result = Element(beta1_letter(g))
    else:
        h = g
        while h.height > 3:
            h = h.c
        if h.la is ONE:
            result = Element(beta1_letter(g))
        else:
            result = Element(beta(Word((XP, g, X))))
    if not in_Mcirc(result.mountain):
        raise RuntimeError(f"representative of {g!r} left the sub-model")
    return result


# ---------------------------------------------------------------------------
# sub-model enumeration and the embedding check

def _hill_flanks_ok(h: Landscape) -> bool:
    for i in range(1, len(h.letters) - 1):
        if h.heights[i] == 1 and h.anchors[i] is not involute(h.anchors[i - 1]):
            return False
    return True


def mcirc_hills(g, direction: str = "up"):
    """Hills usable in sub-model mountains with peak g (height >= 2)."""
    return [h for h in enumerate_hills(g, direction) if _hill_flanks_ok(h)]


def mcirc_mountains(height: int):
    """All sub-model mountains of the given height."""
    if height == 0:
        return [TRIVIAL]
    if height == 1:
        return [Landscape((ONE, BASE, ONE), (ONE, ONE)),
                Landscape((ONE, BASE, ONE), (XP, X))]
    out = []
    for g in enumerate_gcirc(height):
        for up in mcirc_hills(g, "up"):
            for down in mcirc_hills(g, "down"):
                out.append(join(up, down))
    return out


@dataclass(frozen=True)
class EmbeddingReport:
    passed: bool
    max_height: int
    bijection_checked: int
    hom_checked: int
    closure_failures: int
    failures: tuple


def check_embedding(max_height: int = 3, samples: int = 200,
                    seed: int = 0) -> EmbeddingReport:
    """Verify the embedding on enumerated and sampled material.

    Exhaustively up to height min(3, max_height): the mountain maps are
    mutually inverse bijections onto the i-mountains.  On sampled pairs up
    to max_height: products stay in the sub-model and commute with the
    maps.
    """
    failures = []
    rng = random.Random(seed)

    exhaustive_to = min(3, max_height)
    pool = []
    bijection_checked = 0
    for h in range(0, exhaustive_to + 1):
        level = mcirc_mountains(h)
        images = [phi_mountain(u) for u in level]
        if len(set(images)) != len(level):
            failures.append(f"phi not injective at height {h}")
        expected = _all_imountains(h)
        if set(images) != set(expected):
            failures.append(f"phi not onto the i-mountains at height {h}")
        for u, img in zip(level, images):
            bijection_checked += 1
            if psi_mountain(img) != u:
                failures.append(f"psi(phi(u)) != u for {u.format()}")
        pool.extend(level)

    for h in range(exhaustive_to + 1, max_height + 1):
        for g in enumerate_gcirc(h):
            ups = mcirc_hills(g, "up")
            downs = mcirc_hills(g, "down")
            for _ in range(4):
                pool.append(join(rng.choice(ups), rng.choice(downs)))

    hom_checked = 0
    closure_failures = 0
    for _ in range(samples):
        u = Element(rng.choice(pool))
        v = Element(rng.choice(pool))
        w = product(u, v)
        if not in_Mcirc(w.mountain):
            closure_failures += 1
            failures.append(
                f"product left the sub-model: {u.format()} * {v.format()}")
            continue
        lhs = phi_mountain(w.mountain)
        rhs = iproduct(phi_mountain(u.mountain), phi_mountain(v.mountain))
        hom_checked += 1
        if lhs != rhs:
            failures.append(
                f"homomorphism failed: {u.format()} * {v.format()}")

    return EmbeddingReport(
        passed=not failures,
        max_height=max_height,
        bijection_checked=bijection_checked,
        hom_checked=hom_checked,
        closure_failures=closure_failures,
        failures=tuple(failures),
    )


def _iuphills(h):
    if h is IONE:
        return [(IONE,)]
    out = []
    preds = [h.l] if h.l is h.r else [h.l, h.r]
    for pred in preds:
        for stem in _iuphills(pred):
            out.append(stem + (h,))
    return out


def _all_imountains(height: int):
    """Independent enumeration of i-mountains of the given height."""
    if height == 0:
        return [ITRIVIAL]
    out = []
    for h in enumerate_ilevel(height):
        ups = _iuphills(h)
        downs = [tuple(reversed(u)) for u in ups]
        for a in ups:
            for b in downs:
                out.append(IMountain(a + b[1:]))
    return out


# ---------------------------------------------------------------------------
# i-word grammar

_IALIAS = re.compile(r"^h\{(\d+)\.(\d+)\}$")
_IALIAS_HEIGHT_LIMIT = 6


def parse_iletter(text: str):
    if text == "1":
        return IONE
    if text == "e":
        return E_LETTER
    if text == "f":
        return F_LETTER
    m = _IALIAS.match(text)
    if m:
        i, k = int(m.group(1)), int(m.group(2))
        level = enumerate_ilevel(i)
        if not 1 <= k <= len(level):
            raise ParseError(f"alias {text!r} out of range: level {i} has "
                             f"{len(level)} elements")
        return level[k - 1]
    if text.startswith("(") and text.endswith(")"):
        parts = _split_triple(text)
        return intern_itriple(*[parse_iletter(p) for p in parts])
    raise ParseError(f"unknown i-token {text!r}")


def _split_triple(text: str):
    parts, depth, start = [], 0, 0
    body = text[1:-1]
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
        elif ch.isspace():
            raise ParseError(f"no whitespace allowed inside {text!r}")
    parts.append(body[start:])
    if depth != 0 or len(parts) != 3 or any(not p for p in parts):
        raise ParseError(f"malformed triple literal {text!r}")
    return parts


def parse_iword(text: str) -> IMountain:
    pieces = text.split()
    if not pieces:
        raise ParseError("empty input")
    letters = []
    for pos, piece in enumerate(pieces):
        try:
            letters.append(parse_iletter(piece))
        except ParseError as exc:
            raise ParseError(str(exc), position=pos) from None
    return IMountain(letters)


def format_iletter(h, expanded: bool = False) -> str:
    if h is IONE:
        return "1"
    if isinstance(h, IBase):
        return h.name
    if expanded or h.height > _IALIAS_HEIGHT_LIMIT:
        return "(%s,%s,%s)" % (format_iletter(h.l, True),
                               format_iletter(h.c, True),
                               format_iletter(h.r, True))
    if h._index is None:
        enumerate_ilevel(h.height)
    return "h{%d.%d}" % (h.height, h._index)
