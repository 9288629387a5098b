"""Anchors and the recursive 5-tuple generator alphabet.

The alphabet consists of the three anchors 1, x, x' (the anchor 1 doubles
as the height-0 letter) together with an infinite graded family of
generator 5-tuples (left, left-anchor, middle, right-anchor, right) grown
level by level above the base tuple (1,1,x,x',1).  A tuple whose wings
coincide has class E, one with distinct wings has class D.

All tuples are hash-consed: `validate_tuple`/`intern_tuple` return the one
shared instance for structurally equal input, so equality and hashing are
plain object identity everywhere downstream.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import HeightCapExceeded, InvalidTupleError, ParseError

DEFAULT_HEIGHT_CAP = 12
_height_cap = DEFAULT_HEIGHT_CAP


def get_height_cap() -> int:
    return _height_cap


def set_height_cap(cap: int) -> None:
    """Bound the height of constructible tuples (levels grow exponentially)."""
    global _height_cap
    if cap < 1:
        raise ValueError("height cap must be positive")
    _height_cap = cap


class Anchor(Enum):
    ONE = "1"
    X = "x"
    XP = "x'"

    @property
    def rank(self) -> int:
        return _ANCHOR_RANK[self]

    def involute(self) -> "Anchor":
        return _INVOLUTE[self]

    def __repr__(self):
        return self.value


_ANCHOR_RANK = {Anchor.ONE: 0, Anchor.X: 1, Anchor.XP: 2}
_INVOLUTE = {Anchor.ONE: Anchor.ONE, Anchor.X: Anchor.XP, Anchor.XP: Anchor.X}

ONE = Anchor.ONE
X = Anchor.X
XP = Anchor.XP


def involute(a: Anchor) -> Anchor:
    """The involution fixing 1 and swapping x with x'."""
    return _INVOLUTE[a]


class TupleClass(Enum):
    E = "e"  # equal wings
    D = "d"  # distinct wings


class Side(Enum):
    LEFT = "l"
    RIGHT = "r"


class GenTuple:
    """An interned generator 5-tuple.

    `l_side` records which side of the left wing carries the middle entry
    (the side whose anchor is the involute of `la`); `r_side` is the dual
    for the right wing.  Both are None exactly for the base tuple, whose
    middle entry is the anchor x rather than a letter.
    """

    __slots__ = ("l", "la", "c", "ra", "r", "height", "klass",
                 "l_side", "r_side", "_index", "_ground")

    def __init__(self, l, la, c, ra, r, height, klass, l_side, r_side):
        self.l = l
        self.la = la
        self.c = c
        self.ra = ra
        self.r = r
        self.height = height
        self.klass = klass
        self.l_side = l_side
        self.r_side = r_side
        self._index = None
        self._ground = None

    def __repr__(self):
        name = _CONVENIENCE_NAMES.get(self)
        if name is not None:
            return name
        return f"g<{self.height}{self.klass.value}>"


Token = Union[Anchor, GenTuple]

_intern_lock = threading.RLock()
_interned: dict = {}
_levels: dict = {}

BASE = GenTuple(ONE, ONE, X, XP, ONE, 1, TupleClass.E, None, None)
_interned[(ONE, ONE, X, XP, ONE)] = BASE


@dataclass(frozen=True)
class TupleFault:
    """Validation failure with a machine-readable reason code."""

    reason: str
    message: str


def is_letter(tok) -> bool:
    """Whether `tok` may label a landscape vertex (the unit or a tuple)."""
    return tok is ONE or isinstance(tok, GenTuple)


def height_of(tok) -> int:
    if tok is ONE:
        return 0
    if isinstance(tok, GenTuple):
        return tok.height
    raise ValueError(f"{tok!r} is not a letter")


def _entry_side(wing, c, a):
    """Side of `wing` holding entry `c` with anchor the involute of `a`.

    Returns None when neither side matches.  Both sides matching is
    impossible: class-E wings have distinct anchors and class-D wings
    have distinct entries.
    """
    want = involute(a)
    left = wing.l is c and wing.la is want
    right = wing.r is c and wing.ra is want
    if left and right:
        raise AssertionError(f"ambiguous side in {wing!r}")
    if left:
        return Side.LEFT
    if right:
        return Side.RIGHT
    return None


def validate_tuple(l, la, c, ra, r):
    """Validate a raw 5-tuple; return the interned GenTuple or a TupleFault."""
    key = (l, la, c, ra, r)
    hit = _interned.get(key)
    if hit is not None:
        return hit
    if not (isinstance(la, Anchor) and isinstance(ra, Anchor)):
        return TupleFault("malformed", "flank slots must hold anchors")
    if not (isinstance(l, GenTuple) and isinstance(r, GenTuple)):
        # the only tuple with unit wings is the pre-interned base
        return TupleFault("malformed", "wings must be generator tuples")
    if l.height != r.height:
        return TupleFault(
            "height-mismatch",
            f"wing heights differ: {l.height} vs {r.height}")
    height = l.height + 1
    if height > _height_cap:
        raise HeightCapExceeded(
            f"tuple of height {height} exceeds cap {_height_cap}")
    if height == 2:
        if c is not ONE:
            return TupleFault("height-mismatch",
                              "height-2 tuples have middle entry 1")
    elif not (isinstance(c, GenTuple) and c.height == height - 2):
        return TupleFault(
            "height-mismatch",
            f"middle entry must be a letter of height {height - 2}")
    if l is r:
        if l.klass is not TupleClass.E:
            return TupleFault("equal-wings-class-d",
                              "equal wings must be class E")
        if la is ra:
            return TupleFault("duplicate-anchor",
                              "class-E tuples carry two distinct anchors")
        expected = {ONE, X} if height % 2 == 0 else {ONE, XP}
        if {la, ra} != expected:
            return TupleFault(
                "anchor-parity",
                f"anchors of a height-{height} class-E tuple must be "
                f"{{{', '.join(sorted(a.value for a in expected))}}}")
    l_side = _entry_side(l, c, la)
    if l_side is None:
        return TupleFault(
            "side-condition",
            f"({c!r},{la!r}) matches no side of the left wing {l!r}")
    r_side = _entry_side(r, c, ra)
    if r_side is None:
        return TupleFault(
            "side-condition",
            f"({c!r},{ra!r}) matches no side of the right wing {r!r}")
    klass = TupleClass.E if l is r else TupleClass.D
    tup = GenTuple(l, la, c, ra, r, height, klass, l_side, r_side)
    with _intern_lock:
        hit = _interned.get(key)
        if hit is not None:
            return hit
        _interned[key] = tup
    return tup


def intern_tuple(l, la, c, ra, r) -> GenTuple:
    """Like validate_tuple but raises InvalidTupleError on a fault."""
    got = validate_tuple(l, la, c, ra, r)
    if isinstance(got, TupleFault):
        raise InvalidTupleError(got.reason, got.message)
    return got


def resolve_sides(g: GenTuple):
    """The sides of the wings carrying the middle entry (height >= 2 only)."""
    if not isinstance(g, GenTuple) or g.height < 2:
        raise ValueError("side resolution needs a tuple of height >= 2")
    return (g.l_side, g.r_side)


def wing_triplets(g: GenTuple):
    """The 3-token words (la)' l la and (ra)' r ra  (height >= 2 only)."""
    if not isinstance(g, GenTuple) or g.height < 2:
        raise ValueError("wing triplets need a tuple of height >= 2")
    return ((involute(g.la), g.l, g.la), (involute(g.ra), g.r, g.ra))


def _index_of(g: GenTuple) -> int:
    if g._index is None:
        _level(g.height, g.klass)
    assert g._index is not None
    return g._index


def sort_key(tok):
    """Total order on letters: 1 first, then by (height, class E<D, index)."""
    if tok is ONE:
        return (0, 0, 0)
    return (tok.height, 0 if tok.klass is TupleClass.E else 1, _index_of(tok))


def _lex_key(g: GenTuple):
    return (sort_key(g.l), g.la.rank, sort_key(g.c), g.ra.rank, sort_key(g.r))


def _level(i: int, klass: TupleClass):
    cached = _levels.get((i, klass))
    if cached is not None:
        return cached
    if klass is TupleClass.E:
        if i == 1:
            level = [BASE]
        else:
            level = []
            for g in _level(i - 1, TupleClass.E):
                level.append(intern_tuple(g, involute(g.la), g.l,
                                          involute(g.ra), g))
                level.append(intern_tuple(g, involute(g.ra), g.l,
                                          involute(g.la), g))
    else:
        if i <= 2:
            level = []
        else:
            prev = _level(i - 1, TupleClass.E) + _level(i - 1, TupleClass.D)
            level = []
            for l in prev:
                for r in prev:
                    if l is r:
                        continue
                    for c1, a1 in ((l.l, involute(l.la)), (l.r, involute(l.ra))):
                        for c2, a2 in ((r.l, involute(r.la)),
                                       (r.r, involute(r.ra))):
                            if c1 is c2:
                                level.append(intern_tuple(l, a1, c1, a2, r))
            level.sort(key=_lex_key)
    for k, g in enumerate(level, start=1):
        if g._index is None:
            g._index = k
    _levels[(i, klass)] = level
    return level


def enumerate_level(i: int, klass: str = "all"):
    """All tuples of height `i`, in the deterministic enumeration order.

    Class 'e' enumerates in recursive child order from the base tuple;
    class 'd' lexicographically on (l, la, c, ra, r); 'all' concatenates.
    """
    if i < 1:
        raise ValueError("levels start at 1")
    if i > _height_cap:
        raise HeightCapExceeded(f"level {i} exceeds height cap {_height_cap}")
    if klass == "e":
        return list(_level(i, TupleClass.E))
    if klass == "d":
        return list(_level(i, TupleClass.D))
    if klass == "all":
        return list(_level(i, TupleClass.E)) + list(_level(i, TupleClass.D))
    raise ValueError(f"unknown class {klass!r}")


def ground(tok) -> frozenset:
    """All letters recursively inside `tok`, including `tok` itself."""
    if tok is ONE:
        return _GROUND_ONE
    if not isinstance(tok, GenTuple):
        raise ValueError(f"{tok!r} is not a letter")
    if tok._ground is None:
        tok._ground = ground(tok.l) | {tok} | ground(tok.r)
    return tok._ground


_GROUND_ONE = frozenset((ONE,))


def preceq(h, g) -> bool:
    """The ground order: h <= g iff h occurs in ground(g)."""
    if not is_letter(h) or not is_letter(g):
        raise ValueError("preceq compares letters")
    return h in ground(g)


# ---------------------------------------------------------------------------
# aliases and the tuple-literal grammar

_CONVENIENCE: dict = {}
_CONVENIENCE_NAMES: dict = {}


def _register(name: str, tup: GenTuple) -> GenTuple:
    _CONVENIENCE[name] = tup
    _CONVENIENCE_NAMES[tup] = name
    return tup


G2E1 = intern_tuple(BASE, ONE, ONE, X, BASE)
G2E2 = intern_tuple(BASE, X, ONE, ONE, BASE)
G3D1 = intern_tuple(G2E1, ONE, BASE, ONE, G2E2)
G3D2 = intern_tuple(G2E1, XP, BASE, XP, G2E2)
G3D3 = intern_tuple(G2E2, ONE, BASE, ONE, G2E1)
G3D4 = intern_tuple(G2E2, XP, BASE, XP, G2E1)

_register("gxx'", BASE)
_register("g2e1", G2E1)
_register("g2e2", G2E2)
_register("g3d1", G3D1)
_register("g3d2", G3D2)
_register("g3d3", G3D3)
_register("g3d4", G3D4)

_INDEXED_ALIAS = re.compile(r"^g\{(\d+)\.(e|d)\.(\d+)\}$")

# Indexed aliases are emitted only when the level is cheap to enumerate;
# class-D levels beyond this height fall back to expanded literals.
_ALIAS_D_HEIGHT_LIMIT = 4


def parse_token(text: str) -> Token:
    """One word token: an anchor, an alias, or a nested tuple literal."""
    if text == "1":
        return ONE
    if text == "x":
        return X
    if text == "x'":
        return XP
    tup = _CONVENIENCE.get(text)
    if tup is not None:
        return tup
    m = _INDEXED_ALIAS.match(text)
    if m:
        i, klass, k = int(m.group(1)), m.group(2), int(m.group(3))
        level = enumerate_level(i, klass)
        if not 1 <= k <= len(level):
            raise ParseError(
                f"alias {text!r} out of range: level {i}.{klass} has "
                f"{len(level)} elements")
        return level[k - 1]
    if text.startswith("("):
        return _parse_literal(text)
    raise ParseError(f"unknown token {text!r}")


def _parse_literal(text: str) -> GenTuple:
    if not text.endswith(")"):
        raise ParseError(f"unbalanced tuple literal {text!r}")
    parts = _split_top(text[1:-1], text)
    if len(parts) != 5:
        raise ParseError(f"tuple literal needs 5 slots, got {len(parts)}: "
                         f"{text!r}")
    slots = [parse_token(p) for p in parts]
    for idx in (1, 3):
        if not isinstance(slots[idx], Anchor):
            raise ParseError(f"slot {idx + 1} of {text!r} must be an anchor")
    return intern_tuple(*slots)


def _split_top(body: str, whole: str):
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {whole!r}")
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
        elif ch.isspace():
            raise ParseError(f"no whitespace allowed inside {whole!r}")
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {whole!r}")
    parts.append(body[start:])
    if any(not p for p in parts):
        raise ParseError(f"empty slot in tuple literal {whole!r}")
    return parts


def expanded_literal(tok: Token) -> str:
    if isinstance(tok, Anchor):
        return tok.value
    return "(%s,%s,%s,%s,%s)" % (
        expanded_literal(tok.l), tok.la.value, expanded_literal(tok.c),
        tok.ra.value, expanded_literal(tok.r))


def format_token(tok: Token, expanded: bool = False) -> str:
    """Render one token; alias mode prefers names, then indexed aliases."""
    if isinstance(tok, Anchor):
        return tok.value
    if expanded:
        return expanded_literal(tok)
    name = _CONVENIENCE_NAMES.get(tok)
    if name is not None:
        return name
    if tok.klass is TupleClass.E or tok.height <= _ALIAS_D_HEIGHT_LIMIT:
        return "g{%d.%s.%d}" % (tok.height, tok.klass.value, _index_of(tok))
    return expanded_literal(tok)


def by_name(name: str) -> Token:
    """Resolve a single token name (alias, anchor, or literal)."""
    return parse_token(name)
