"""Sampled checks of the Hopf algebra axioms."""

from __future__ import annotations

import random

from .algebra import (LETTERS, Element, Tensor, antipode, coproduct, counit, generator, multiply,
                      verify_presentation)

__all__ = ["random_monomial_element", "sample_elements", "hopf_axioms", "hopf_report"]


def random_monomial_element(rng: random.Random, max_degree: int) -> Element:
    """Normal form of a random word of length <= max_degree in all seven letters."""
    length = rng.randint(0, max_degree)
    out = Element.scalar(1)
    for _ in range(length):
        out = out * generator(rng.choice(LETTERS))
    return out


def sample_elements(count: int, max_degree: int, seed: int = 0) -> list[Element]:
    rng = random.Random(seed)
    return [generator(t) for t in LETTERS] + [random_monomial_element(rng, max_degree) for _ in range(count)]


def _accumulate(acc: dict, key, c) -> None:
    nv = acc.get(key, 0) + c
    if nv:
        acc[key] = nv
    else:
        acc.pop(key, None)


def _contract(t: Tensor, left, right) -> Element:
    """sum c * left(a) * right(b) over the terms a (x) b of t."""
    acc: dict = {}
    for (a, b), c in t.terms.items():
        for m, cm in multiply(left(Element.mono(a)), right(Element.mono(b))).terms.items():
            _accumulate(acc, m, c * cm)
    return Element(acc)


def _apply_leg(t: Tensor, leg: int) -> Tensor:
    """Apply the coproduct to one leg of a two-leg tensor."""
    acc: dict = {}
    for key, c in t.terms.items():
        for k, v in coproduct(Element.mono(key[leg])).terms.items():
            _accumulate(acc, k + (key[1],) if leg == 0 else (key[0],) + k, c * v)
    return Tensor(acc)


def _counit_leg(t: Tensor, leg: int) -> Element:
    out = Element()
    for key, c in t.terms.items():
        eps = counit(Element.mono(key[leg]))
        if eps:
            out = out + Element.mono(key[1 - leg]) * (c * eps)
    return out


def hopf_axioms(a: Element) -> dict[str, bool]:
    d = coproduct(a)
    eps = Element.scalar(counit(a))
    ident = lambda e: e  # noqa: E731
    return {
        "coassociativity": _apply_leg(d, 0) == _apply_leg(d, 1),
        "counit_left": _counit_leg(d, 0) == a,
        "counit_right": _counit_leg(d, 1) == a,
        "antipode_left": _contract(d, antipode, ident) == eps,
        "antipode_right": _contract(d, ident, antipode) == eps,
    }


def hopf_report(degree: int = 5, samples: int = 200, seed: int = 0) -> dict:
    """Presentation check plus the Hopf axioms on generators and random monomials.

    Also checks that the coproduct is multiplicative and the antipode is an
    antihomomorphism on consecutive sample pairs.
    """
    pres = verify_presentation()
    elems = sample_elements(samples, degree, seed)
    failures: dict[str, list[str]] = {}
    counts = {"coassociativity": 0, "counit_left": 0, "counit_right": 0, "antipode_left": 0,
              "antipode_right": 0, "coproduct_multiplicative": 0, "antipode_antihomomorphism": 0}
    for a in elems:
        for name, ok in hopf_axioms(a).items():
            counts[name] += 1
            if not ok:
                failures.setdefault(name, []).append(str(a))
    for a, b in zip(elems, elems[1:]):
        ab = a * b
        counts["coproduct_multiplicative"] += 1
        if coproduct(ab) != coproduct(a) * coproduct(b):
            failures.setdefault("coproduct_multiplicative", []).append(f"({a}) * ({b})")
        counts["antipode_antihomomorphism"] += 1
        if antipode(ab) != antipode(b) * antipode(a):
            failures.setdefault("antipode_antihomomorphism", []).append(f"({a}) * ({b})")
    ok = all(pres.values()) and not failures
    return {
        "ok": ok,
        "relations": pres,
        "samples": len(elems),
        "max_degree": degree,
        "checked": counts,
        "failures": failures,
    }

