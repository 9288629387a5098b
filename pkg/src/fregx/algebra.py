"""The semigroup of canonical mountains.

Elements are represented solely by their canonical mountains; the product
joins two mountains at the shared unit boundary and renormalizes.  Green's
relations reduce to hill comparisons, idempotency and the natural partial
order to gorge checks, and sandwich sets to a filtered search inside one
finite D-class (inverses of e*f are D-equivalent to it, and the defining
equations confine membership further).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .alphabet import GenTuple, ONE, ground, height_of, preceq
from .errors import DomainError, LandscapeError
from .landscape import (Landscape, TRIVIAL, Word, enumerate_hills, hills_of,
                        is_landscape_prefix, is_landscape_suffix, join,
                        parse_word, reverse)
from .rewrite import beta, beta2


@dataclass(frozen=True)
class Element:
    """A congruence class, held as its unique canonical mountain."""

    mountain: Landscape

    def __post_init__(self):
        if not self.mountain.is_mountain():
            raise LandscapeError("elements are represented by mountains")

    @staticmethod
    def of_word(w: Word) -> "Element":
        return Element(beta(w))

    @staticmethod
    def of_tokens(*tokens) -> "Element":
        return Element(beta(Word(tuple(tokens))))

    @staticmethod
    def parse(text: str) -> "Element":
        return Element(beta(parse_word(text)))

    @cached_property
    def left_hill(self) -> Landscape:
        return hills_of(self.mountain)[0]

    @cached_property
    def right_hill(self) -> Landscape:
        return hills_of(self.mountain)[1]

    @property
    def peak(self):
        """The peak letter; the unit for the trivial mountain."""
        m = self.mountain
        return m.letters[m.peaks[0]] if m.peaks else ONE

    def format(self, mode: str = "alias") -> str:
        return self.mountain.format(mode)

    def __str__(self):
        return self.format()


IDENTITY = Element(TRIVIAL)


def product(u: Element, v: Element) -> Element:
    return Element(beta2(join(u.mountain, v.mountain)))


def equal(w1: Word, w2: Word) -> bool:
    """The word problem: do the two words lie in the same class?"""
    return beta(w1) == beta(w2)


def canonical_inverse(u: Element) -> Element:
    """The class of the reversed mountain, an inverse of u."""
    return Element(reverse(u.mountain))


def is_gorge(w: Landscape) -> bool:
    """A canyon that normalizes to its single boundary letter."""
    if not w.is_canyon():
        return False
    return beta2(w) == Landscape((w.sigma(),), ())


def _gorge_or_point(w: Landscape) -> bool:
    # the degenerate single-letter case stands in for the trivial canyon
    return is_gorge(w) if w.n else True


def is_idempotent(u: Element) -> bool:
    """u*u == u; cross-checked against the gorge criterion."""
    by_product = product(u, u) == u
    by_gorge = _gorge_or_point(join(u.right_hill, u.left_hill))
    if by_product != by_gorge:
        raise RuntimeError(f"idempotency criteria disagree on {u}")
    return by_product


def is_inverse_pair(u: Element, v: Element) -> bool:
    """Mutual inverses; product and gorge criteria must agree."""
    by_product = (product(product(u, v), u) == u and
                  product(product(v, u), v) == v)
    by_gorge = (_gorge_or_point(join(u.right_hill, v.left_hill)) and
                _gorge_or_point(join(v.right_hill, u.left_hill)))
    if by_product != by_gorge:
        raise RuntimeError(f"inverse criteria disagree on ({u}, {v})")
    return by_product


RELATIONS = ("R", "L", "J", "H", "D")
EQUIVALENT = "equivalent"
BELOW = "strictly-below"
ABOVE = "strictly-above"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class GreenReport:
    relation: str
    verdict: str


def _order_verdict(below: bool, above: bool) -> str:
    if below and above:
        return EQUIVALENT
    if below:
        return BELOW
    if above:
        return ABOVE
    return INCOMPARABLE


def green_leq(u: Element, v: Element, rel: str) -> bool:
    """u <= v in the R, L or J quasi-order."""
    if rel == "R":
        return is_landscape_prefix(v.left_hill, u.left_hill)
    if rel == "L":
        return is_landscape_suffix(v.right_hill, u.right_hill)
    if rel in ("J", "D"):
        return preceq(v.peak, u.peak)
    if rel == "H":
        return green_leq(u, v, "R") and green_leq(u, v, "L")
    raise ValueError(f"unknown relation {rel!r}")


def green_compare(u: Element, v: Element, rel: str) -> GreenReport:
    """Compare two elements; D coincides with J and H with equality."""
    if rel not in RELATIONS:
        raise ValueError(f"unknown relation {rel!r}")
    return GreenReport(rel, _order_verdict(green_leq(u, v, rel),
                                           green_leq(v, u, rel)))


def covers(u: Element, v: Element, rel: str) -> bool:
    """Whether v covers u (one step above) in the R, L or J order."""
    if rel == "R":
        return (is_landscape_prefix(v.left_hill, u.left_hill) and
                len(u.left_hill.letters) == len(v.left_hill.letters) + 1)
    if rel == "L":
        return (is_landscape_suffix(v.right_hill, u.right_hill) and
                len(u.right_hill.letters) == len(v.right_hill.letters) + 1)
    if rel in ("J", "D"):
        ku = u.peak
        if not isinstance(ku, GenTuple):
            return False
        return v.peak is ku.l or v.peak is ku.r
    raise ValueError(f"unknown relation {rel!r}")


def natural_leq(v: Element, u: Element) -> bool:
    """v <= u in the natural partial order, decided by a gorge check.

    For v < u both hills of v must strictly extend those of u, and the
    canyon that descends v's extra right arc onto the peak of u and climbs
    back up v's extra left arc must rewrite to the peak of v.
    """
    if v == u:
        return True
    lu, lv = u.left_hill, v.left_hill
    ru, rv = u.right_hill, v.right_hill
    if len(lv.letters) <= len(lu.letters) or not is_landscape_prefix(lu, lv):
        return False
    if len(rv.letters) <= len(ru.letters) or not is_landscape_suffix(ru, rv):
        return False
    k = len(lu.letters)  # lv.letters[k-1] is the peak of u
    a1 = lv.anchors[k - 1]
    u1 = lv.sub(k, len(lv.letters) - 1)
    m = len(rv.letters) - len(ru.letters)  # rv.letters[m] starts ru
    a2 = rv.anchors[m - 1]
    u2 = rv.sub(0, m - 1)
    canyon = Landscape(u2.letters + (u.peak,) + u1.letters,
                       u2.anchors + (a2, a1) + u1.anchors)
    return is_gorge(canyon)


def r_class(u: Element):
    """The finite R-class: same left hill, all downhills from the peak."""
    return [Element(join(u.left_hill, d))
            for d in enumerate_hills(u.peak, "down")]


def l_class(u: Element):
    return [Element(join(up, u.right_hill))
            for up in enumerate_hills(u.peak, "up")]


def natural_leq_oracle(v: Element, u: Element) -> bool:
    """Brute-force order test: v = e*u = u*f with idempotent e R v, f L v."""
    if v == u:
        return True
    def idem(t):
        return product(t, t) == t
    left = any(idem(e) and product(e, u) == v for e in r_class(v))
    right = any(idem(f) and product(u, f) == v for f in l_class(v))
    return left and right


def dclass(g):
    """All elements with peak g: every uphill joined with every downhill."""
    ups = enumerate_hills(g, "up")
    downs = enumerate_hills(g, "down")
    return [Element(join(a, b)) for a in ups for b in downs]


def sandwich(e: Element, f: Element):
    """The sandwich set S(e, f) = {g idempotent | fg = g = ge, egf = ef}.

    Inverses of e*f live in its D-class, and the defining equations pin
    membership inside it, so filtering that finite class is exhaustive.
    """
    if not is_idempotent(e) or not is_idempotent(f):
        raise DomainError("sandwich arguments must be idempotent")
    ef = product(e, f)
    out = []
    for t in dclass(ef.peak):
        if (product(f, t) == t and product(t, e) == t and
                is_idempotent(t) and product(product(e, t), f) == ef):
            out.append(t)
    return out


def r_below_witness(u: Element, v: Element) -> Element:
    """For left_hill(v) a prefix of left_hill(u): a w with v * w = u."""
    lv = v.left_hill
    if not is_landscape_prefix(lv, u.left_hill):
        raise DomainError("left hill of v must be a prefix of left hill of u")
    k = len(lv.letters) - 1
    u1 = u.mountain.sub(k, len(u.mountain.letters) - 1)
    return Element(join(reverse(v.right_hill), u1))
