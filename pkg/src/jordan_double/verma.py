"""Actions on Verma modules induced from a weight module of D^0.

Two independent routes are provided.

* :func:`verma_closed_action` evaluates the closed formulas for the rank-one
  Verma module ``M(n)`` on ``z(i, j) = y^i x^j z``.
* :class:`InducedAction` applies the defining relations recursively to
  ``y^i x^j p`` for ``p`` in an arbitrary finite-dimensional D^0-module on
  which ``u`` and ``v`` act by zero.  It is the oracle for the closed
  formulas and the constructor for rank-two Verma modules.

Vectors are dicts ``{(i, j, p): coefficient}``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from .algebra import raising_factorial
from .linalg import Matrix

__all__ = ["verma_closed_action", "InducedAction"]

HALF = Fraction(1, 2)


def _acc(out: dict, key, c) -> None:
    nv = out.get(key, 0) + c
    if nv:
        out[key] = nv
    else:
        out.pop(key, None)


def verma_closed_action(gen: str, n, i: int, j: int) -> dict:
    """``gen . z(i, j)`` in ``M(n)`` as ``{(i', j'): coefficient}``."""
    n = Fraction(n)
    out: dict = {}
    if gen == "y":
        out[i + 1, j] = Fraction(1)
    elif gen == "x":
        for k in range(i + 1):
            _acc(out, (i - k, j + k + 1), Fraction(comb(i, k) * factorial(k), 2 ** k))
    elif gen == "g":
        for k in range(i + 1):
            _acc(out, (i - k, j + k), comb(i, k) * raising_factorial(2, k) / 2 ** k)
    elif gen == "xi":
        _acc(out, (i, j), n - 2 * (i + j))
    elif gen == "u":
        for k in range(1, i):
            _acc(out, (i - 1 - k, j + k), -Fraction(comb(i, k + 1) * factorial(k + 1), 2 ** k))
    elif gen == "v":
        if i:
            _acc(out, (i - 1, j), i * (n - 2 * j - i + 1) / 2)
        for k in range(1, i):
            coef = Fraction(comb(i, k + 1) * factorial(k + 1), 2 ** (k + 1)) * (n - 2 * (i + j) + 2)
            _acc(out, (i - 1 - k, j + k), coef)
    else:
        raise ValueError(f"unknown generator {gen!r}")
    return out


class InducedAction:
    """Recursive action on ``Ind(P)`` with basis ``y^i x^j p_r``.

    ``g_top`` and ``xi_top`` are the matrices of ``g`` and ``xi`` on ``P``
    (columns are images of basis vectors).  Nothing is truncated here;
    callers drop terms outside their window.
    """

    def __init__(self, g_top: Matrix, xi_top: Matrix):
        if g_top.shape != xi_top.shape or g_top.rows != g_top.cols:
            raise ValueError("top matrices must be square of equal size")
        self.dim_top = g_top.rows
        self._g = g_top
        self._xi = xi_top
        self._cache: dict = {}

    def act(self, gen: str, vec: dict) -> dict:
        out: dict = {}
        for key, c in vec.items():
            for k2, c2 in self.act_basis(gen, *key).items():
                _acc(out, k2, c * c2)
        return out

    @staticmethod
    def _y(vec: dict) -> dict:
        return {(i + 1, j, p): c for (i, j, p), c in vec.items()}

    @staticmethod
    def _lin(*parts) -> dict:
        out: dict = {}
        for coef, vec in parts:
            for k, c in vec.items():
                _acc(out, k, coef * c)
        return out

    def act_basis(self, gen: str, i: int, j: int, p: int) -> dict:
        key = (gen, i, j, p)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        res = self._compute(gen, i, j, p)
        self._cache[key] = res
        return res

    def _compute(self, gen: str, i: int, j: int, p: int) -> dict:
        if gen == "y":
            return {(i + 1, j, p): Fraction(1)}
        act, lin, y = self.act, self._lin, self._y
        if i > 0:
            w = {(i - 1, j, p): Fraction(1)}
            if gen == "x":   # x y = y x + 1/2 x^2
                xw = act("x", w)
                return lin((1, y(xw)), (HALF, act("x", xw)))
            if gen == "g":   # g y = y g + x g
                gw = act("g", w)
                return lin((1, y(gw)), (1, act("x", gw)))
            if gen == "xi":  # xi y = y xi - 2 y
                return lin((1, y(act("xi", w))), (-2, y(w)))
            if gen == "u":   # u y = y u + 1 - g
                return lin((1, y(act("u", w))), (1, w), (-1, act("g", w)))
            if gen == "v":   # v y = y v + 1/2 g xi + y u
                return lin((1, y(act("v", w))), (HALF, act("g", act("xi", w))), (1, y(act("u", w))))
        elif j > 0:
            w = {(0, j - 1, p): Fraction(1)}
            if gen == "x":
                return {(0, j + 1, p): Fraction(1)}
            if gen == "g":   # g x = x g
                return act("x", act("g", w))
            if gen == "xi":  # xi x = x xi - 2 x
                return lin((1, act("x", act("xi", w))), (-2, act("x", w)))
            if gen == "u":   # u x = x u
                return act("x", act("u", w))
            if gen == "v":   # v x = x v + 1 - g + x u
                return lin((1, act("x", act("v", w))), (1, w), (-1, act("g", w)),
                           (1, act("x", act("u", w))))
        else:
            if gen == "x":
                return {(0, 1, p): Fraction(1)}
            if gen in ("g", "xi"):
                mat = self._g if gen == "g" else self._xi
                return {(0, 0, r): c for r, c in enumerate(mat.column(p)) if c}
            if gen in ("u", "v"):
                return {}
        raise ValueError(f"unknown generator {gen!r}")
