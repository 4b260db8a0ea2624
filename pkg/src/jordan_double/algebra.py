"""The Hopf algebra D: PBW normal forms, grading, coproduct, counit, antipode.

A PBW monomial ``x^a y^b g^m xi^k u^i v^j`` is stored as the exponent tuple
``(a, b, m, k, i, j)`` with ``m`` a signed integer.  Products are computed by
right-multiplying a normal monomial by one letter at a time and pushing the
letter leftwards with the defining relations oriented toward the order
``x < y < g < xi < u < v``:

====  ==========================================================
y x   x y - 1/2 x^2
g y   y g + x g            (and gi y = y gi - x gi)
xi y  y xi - 2 y           xi x = x xi - 2 x
u y   y u + 1 - g          u x = x u
v y   y v + 1/2 g xi + y u
v x   x v + 1 - g + x u
v g   g v + g u            (and v gi = gi v - gi u)
v xi  xi v - 2 v           u xi = xi u - 2 u
v u   u v - 1/2 u^2        u g = g u, xi g = g xi, g x = x g
====  ==========================================================

Termination: give ``y`` and ``v`` weight 2 and every other letter weight 1,
and order words by (total weight, number of inversions against the normal
order).  Each rule keeps the letters of the sorted pair, removing one
inversion, and every correction term has strictly smaller total weight
(``y x -> x^2``, ``g y -> x g``, ``v y -> g xi, y u``, ``v g -> g u``, ...).
Rewriting decreases the multiset of word measures, so it terminates.
Confluence is not proved here; the tests compare two reduction strategies.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .linalg import as_fraction, format_rational

__all__ = [
    "Monomial",
    "Element",
    "Tensor",
    "LETTERS",
    "GENERATORS",
    "RELATIONS",
    "generator",
    "monomial",
    "multiply",
    "normal_form",
    "grade",
    "coproduct",
    "counit",
    "antipode",
    "verify_presentation",
    "raising_factorial",
    "word_polynomial_normal_form",
]

Monomial = tuple  # (a_x, b_y, m_g, k_xi, i_u, j_v)

LETTERS = ("x", "y", "g", "gi", "xi", "u", "v")
GENERATORS = ("x", "y", "g", "xi", "u", "v")
_SLOT = {"x": 0, "y": 1, "g": 2, "xi": 3, "u": 4, "v": 5}
_ONE_MONO: Monomial = (0, 0, 0, 0, 0, 0)
HALF = Fraction(1, 2)


def monomial(x=0, y=0, g=0, xi=0, u=0, v=0) -> Monomial:
    return (x, y, g, xi, u, v)


def _bump(m: Monomial, slot: int, by: int = 1) -> Monomial:
    lst = list(m)
    lst[slot] += by
    return tuple(lst)


def _last_letter(m: Monomial) -> str | None:
    a, b, gm, k, i, j = m
    if j:
        return "v"
    if i:
        return "u"
    if k:
        return "xi"
    if gm > 0:
        return "g"
    if gm < 0:
        return "gi"
    if b:
        return "y"
    if a:
        return "x"
    return None


def _drop_last(m: Monomial, letter: str) -> Monomial:
    if letter == "gi":
        return _bump(m, 2, 1)
    return _bump(m, _SLOT[letter], -1)


def _append(m: Monomial, letter: str) -> Monomial:
    if letter == "gi":
        return _bump(m, 2, -1)
    return _bump(m, _SLOT[letter], 1)


# letter order position used to decide whether appending is already normal
_RANK = {"x": 0, "y": 1, "g": 2, "gi": 2, "xi": 3, "u": 4, "v": 5}


def _add_into(acc: dict, terms, coef: Fraction) -> None:
    for mono, c in terms:
        nv = acc.get(mono, 0) + coef * c
        if nv:
            acc[mono] = nv
        else:
            acc.pop(mono, None)


@lru_cache(maxsize=None)
def _mono_times_letter(m: Monomial, t: str) -> tuple:
    """Normal form of ``m * t`` as a tuple of ``(monomial, coefficient)``."""
    last = _last_letter(m)
    if last is None or _RANK[last] <= _RANK[t]:
        return ((_append(m, t), Fraction(1)),)
    rest = _drop_last(m, last)
    # rest * last * t, with last > t: rewrite (last t) as a combination of words
    acc: dict = {}
    for coef, word in _SWAP[last, t]:
        _add_into(acc, _times_word(rest, word), coef)
    return tuple(acc.items())


def _times_word(m: Monomial, word: tuple) -> list:
    terms = {m: Fraction(1)}
    for t in word:
        acc: dict = {}
        for mono, c in terms.items():
            _add_into(acc, _mono_times_letter(mono, t), c)
        terms = acc
    return list(terms.items())


def _w(*pairs):
    return tuple((as_fraction(c), tuple(word.split()) if word else ()) for c, word in pairs)


# (left, right) -> expansion of left*right with right moved to the left
_SWAP = {
    ("y", "x"): _w((1, "x y"), (-HALF, "x x")),
    ("g", "x"): _w((1, "x g")),
    ("gi", "x"): _w((1, "x gi")),
    ("g", "y"): _w((1, "y g"), (1, "x g")),
    ("gi", "y"): _w((1, "y gi"), (-1, "x gi")),
    ("xi", "x"): _w((1, "x xi"), (-2, "x")),
    ("xi", "y"): _w((1, "y xi"), (-2, "y")),
    ("xi", "g"): _w((1, "g xi")),
    ("xi", "gi"): _w((1, "gi xi")),
    ("u", "x"): _w((1, "x u")),
    ("u", "y"): _w((1, "y u"), (1, ""), (-1, "g")),
    ("u", "g"): _w((1, "g u")),
    ("u", "gi"): _w((1, "gi u")),
    ("u", "xi"): _w((1, "xi u"), (-2, "u")),
    ("v", "x"): _w((1, "x v"), (1, ""), (-1, "g"), (1, "x u")),
    ("v", "y"): _w((1, "y v"), (HALF, "g xi"), (1, "y u")),
    ("v", "g"): _w((1, "g v"), (1, "g u")),
    ("v", "gi"): _w((1, "gi v"), (-1, "gi u")),
    ("v", "xi"): _w((1, "xi v"), (-2, "v")),
    ("v", "u"): _w((1, "u v"), (-HALF, "u u")),
}


class Element:
    """A finite rational combination of PBW monomials (canonical form)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for mono, c in items:
            c = as_fraction(c)
            if c:
                nv = acc.get(mono, 0) + c
                if nv:
                    acc[mono] = nv
                else:
                    del acc[mono]
        self.terms = acc

    @classmethod
    def scalar(cls, c) -> "Element":
        return cls({_ONE_MONO: c})

    @classmethod
    def mono(cls, m: Monomial, c=1) -> "Element":
        return cls({tuple(m): c})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Element.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        other = _coerce(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms.items(), Fraction(1))
        return Element._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element._raw({m: c * other for m, c in self.terms.items()} if other else {})
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return multiply(_coerce(other), self)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for g (use gi)")
        out = Element.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        e = object.__new__(cls)
        e.terms = terms
        return e

    def is_homogeneous(self) -> bool:
        return len({grade(m) for m in self.terms}) <= 1

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: mc[0], reverse=True)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Element({to_text(self)!r})"


def _coerce(value) -> Element:
    if isinstance(value, Element):
        return value
    if isinstance(value, (int, Fraction)):
        return Element.scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an algebra element")


def generator(name: str) -> Element:
    if name == "gi":
        return Element.mono((0, 0, -1, 0, 0, 0))
    if name == "1":
        return Element.scalar(1)
    return Element.mono(_append(_ONE_MONO, name))


def letters_of(m: Monomial) -> tuple:
    a, b, gm, k, i, j = m
    return (("x",) * a + ("y",) * b + (("g",) * gm if gm > 0 else ("gi",) * (-gm))
            + ("xi",) * k + ("u",) * i + ("v",) * j)


def multiply(a: Element, b: Element) -> Element:
    """PBW normal form of ``a * b``."""
    a, b = _coerce(a), _coerce(b)
    acc: dict = {}
    for mb, cb in b.terms.items():
        word = letters_of(mb)
        for ma, ca in a.terms.items():
            _add_into(acc, _times_word(ma, word), ca * cb)
    return Element._raw(acc)


def normal_form(word: Iterable[str], strategy: str = "left") -> Element:
    """Normal form of a word in the letters ``x y g gi xi u v``.

    ``strategy="left"`` folds the word from the left, ``"right"`` multiplies
    each letter onto the normal form of the remaining suffix; both must agree.
    """
    word = list(word)
    for t in word:
        if t not in LETTERS:
            raise ValueError(f"unknown generator {t!r}")
    if strategy == "left":
        out = Element.scalar(1)
        for t in word:
            acc: dict = {}
            for mono, c in out.terms.items():
                _add_into(acc, _mono_times_letter(mono, t), c)
            out = Element._raw(acc)
        return out
    if strategy == "right":
        out = Element.scalar(1)
        for t in reversed(word):
            out = multiply(generator(t), out)
        return out
    raise ValueError(f"unknown strategy {strategy!r}")


def grade(m: Monomial) -> int:
    a, b, _, _, i, j = m
    return -2 * (a + b) + 2 * (i + j)


# --------------------------------------------------------------------------
# relations


def word_polynomial(*pairs) -> tuple:
    """Build ``((coef, word), ...)`` from ``(coef, "w1 w2 ...")`` pairs."""
    return _w(*pairs)


# each relation is a noncommutative polynomial that must vanish in D
RELATIONS = {
    "R1": word_polynomial((1, "xi g"), (-1, "g xi")),
    "R2": word_polynomial((1, "g x"), (-1, "x g")),
    "R3": word_polynomial((1, "g y"), (-1, "y g"), (-1, "x g")),
    "R4": word_polynomial((1, "xi y"), (-1, "y xi"), (2, "y")),
    "R5": word_polynomial((1, "xi x"), (-1, "x xi"), (2, "x")),
    "R6": word_polynomial((1, "u g"), (-1, "g u")),
    "R7": word_polynomial((1, "v g"), (-1, "g v"), (-1, "g u")),
    "R8": word_polynomial((1, "v xi"), (-1, "xi v"), (2, "v")),
    "R9": word_polynomial((1, "u xi"), (-1, "xi u"), (2, "u")),
    "R10": word_polynomial((1, "y x"), (-1, "x y"), (HALF, "x x")),
    "R11": word_polynomial((1, "v u"), (-1, "u v"), (HALF, "u u")),
    "R12": word_polynomial((1, "u x"), (-1, "x u")),
    "R13": word_polynomial((1, "v x"), (-1, "x v"), (-1, ""), (1, "g"), (-1, "x u")),
    "R14": word_polynomial((1, "u y"), (-1, "y u"), (-1, ""), (1, "g")),
    "R15": word_polynomial((1, "v y"), (-1, "y v"), (-HALF, "g xi"), (-1, "y u")),
}


def word_polynomial_normal_form(poly, strategy: str = "left") -> Element:
    out = Element()
    for c, word in poly:
        out = out + normal_form(word, strategy) * c
    return out


def verify_presentation() -> dict[str, bool]:
    """Normalize every defining relation; each must reduce to zero."""
    return {name: not word_polynomial_normal_form(rel) for name, rel in RELATIONS.items()}


# --------------------------------------------------------------------------
# Hopf structure


class Tensor:
    """Element of ``D (x) D`` (or a higher tensor power) as a term map."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for key, c in items:
            c = as_fraction(c)
            if c:
                nv = acc.get(key, 0) + c
                if nv:
                    acc[key] = nv
                else:
                    del acc[key]
        self.terms = acc

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Tensor") -> "Tensor":
        acc = dict(self.terms)
        _add_into(acc, other.terms.items(), Fraction(1))
        return Tensor(acc)

    def __sub__(self, other: "Tensor") -> "Tensor":
        acc = dict(self.terms)
        _add_into(acc, other.terms.items(), Fraction(-1))
        return Tensor(acc)

    def scale(self, c) -> "Tensor":
        return Tensor({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "Tensor") -> "Tensor":
        """Componentwise product; every leg is normalized independently."""
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                legs = [_times_word(m1, letters_of(m2)) for m1, m2 in zip(k1, k2)]
                _add_product(acc, legs, c1 * c2)
        return Tensor(acc)

    @classmethod
    def one(cls, legs: int = 2) -> "Tensor":
        return cls({(_ONE_MONO,) * legs: 1})

    @classmethod
    def pure(cls, *elements: Element) -> "Tensor":
        acc: dict = {}
        _add_product(acc, [list(_coerce(e).terms.items()) for e in elements], Fraction(1))
        return cls(acc)

    def __str__(self):
        parts = []
        for key, c in sorted(self.terms.items(), reverse=True):
            legs = " (x) ".join(_mono_text(m) or "1" for m in key)
            parts.append(f"{format_rational(c)}*[{legs}]")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def _add_product(acc: dict, legs: list, coef: Fraction) -> None:
    """Accumulate coef * (leg_1 (x) ... (x) leg_r) for legs given as term lists."""
    partial = [((), coef)]
    for leg in legs:
        partial = [(key + (m,), c * cm) for key, c in partial for m, cm in leg]
    for key, c in partial:
        nv = acc.get(key, 0) + c
        if nv:
            acc[key] = nv
        else:
            acc.pop(key, None)


def _delta_letter(t: str) -> Tensor:
    one = Element.scalar(1)
    e = generator(t)
    if t in ("g", "gi"):
        return Tensor.pure(e, e)
    if t in ("u", "xi"):
        return Tensor.pure(e, one) + Tensor.pure(one, e)
    if t in ("x", "y"):
        return Tensor.pure(e, one) + Tensor.pure(generator("g"), e)
    if t == "v":
        return (Tensor.pure(e, one) + Tensor.pure(one, e)
                - Tensor.pure(generator("xi"), generator("u")).scale(HALF))
    raise ValueError(t)


@lru_cache(maxsize=None)
def _delta_mono(m: Monomial) -> Tensor:
    out = Tensor.one()
    for t in letters_of(m):
        out = out * _delta_letter(t)
    return out


def coproduct(a: Element) -> Tensor:
    a = _coerce(a)
    acc: dict = {}
    for m, c in a.terms.items():
        _add_into(acc, _delta_mono(m).terms.items(), c)
    return Tensor(acc)


def counit(a: Element) -> Fraction:
    a = _coerce(a)
    return sum((c for (x, y, _, k, i, j), c in a.terms.items() if not (x or y or k or i or j)), Fraction(0))


_S_LETTER = {
    "g": lambda: generator("gi"),
    "gi": lambda: generator("g"),
    "x": lambda: -(generator("gi") * generator("x")),
    "y": lambda: -(generator("gi") * generator("y")),
    "xi": lambda: -generator("xi"),
    "u": lambda: -generator("u"),
    "v": lambda: -generator("v") - generator("xi") * generator("u") * HALF,
}


@lru_cache(maxsize=None)
def _antipode_mono(m: Monomial) -> Element:
    out = Element.scalar(1)
    for t in reversed(letters_of(m)):
        out = out * _S_LETTER[t]()
    return out


def antipode(a: Element) -> Element:
    """Antipode, extended from the generators as an algebra antihomomorphism."""
    a = _coerce(a)
    out = Element()
    for m, c in a.terms.items():
        out = out + _antipode_mono(m) * c
    return out


def raising_factorial(t, k: int) -> Fraction:
    if k < 0:
        raise ValueError("k must be nonnegative")
    t = as_fraction(t)
    out = Fraction(1)
    for i in range(1, k + 1):
        out *= t + i - 1
    return out


# --------------------------------------------------------------------------
# canonical text


_TEXT_NAMES = ("x", "y", "g", "xi", "u", "v")


def _mono_text(m: Monomial) -> str:
    parts = []
    for name, e in zip(_TEXT_NAMES, m):
        if name == "g" and e < 0:
            name, e = "gi", -e
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def to_text(a: Element) -> str:
    """Canonical text: terms by descending exponent tuple, e.g. ``1/2*x^2 + x*y``."""
    out = []
    for m, c in _coerce(a).sorted_terms():
        body = _mono_text(m)
        mag = abs(c)
        if not body:
            term = format_rational(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{format_rational(mag)}*{body}"
        if not out:
            out.append(term if c > 0 else f"-{term}")
        else:
            out.append(("+ " if c > 0 else "- ") + term)
    return " ".join(out) if out else "0"
