"""Finite-dimensional D-modules as six generator matrices.

Matrices act on column vectors: column ``c`` of ``act("y")`` holds the
coordinates of ``y . e_c``.  ``g^{-1}`` is never stored; it is obtained by
inverting ``act("g")`` when an element involving it is evaluated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import algebra
from .algebra import GENERATORS, RELATIONS, Element, antipode, coproduct, generator
from .linalg import (Echelon, Matrix, NotInvertible, Subspace, as_fraction, format_rational,
                     generalized_eigenspace, inverse)
from .verma import InducedAction, verma_closed_action

__all__ = [
    "FdModule",
    "TruncatedVerma",
    "VerifyReport",
    "WeightDecomposition",
    "NotSuitablyGraded",
    "verify_module",
    "build_simple",
    "pullback_sl2",
    "build_T",
    "build_S",
    "build_verma_trunc",
    "build_verma2_trunc",
    "verma_recursive_trunc",
    "as_truncation",
    "weight_decomposition",
    "basis_weights",
    "hw_data",
    "hw_series",
    "dual",
    "tensor",
    "direct_sum",
    "generated_subspace",
    "submodule",
    "submodule_generated",
    "quotient",
    "evaluate",
    "evaluate_words",
]


class FdModule:
    """A finite-dimensional D-module; immutable once built."""

    __slots__ = ("dim", "gens", "labels", "provenance", "_ginv")

    def __init__(self, gens: Mapping[str, Matrix], labels: Sequence[str] | None = None,
                 provenance: Mapping | None = None):
        missing = [t for t in GENERATORS if t not in gens]
        if missing:
            raise ValueError(f"missing generator matrices: {missing}")
        dim = gens["g"].rows
        for t in GENERATORS:
            if gens[t].shape != (dim, dim):
                raise ValueError(f"generator {t} has shape {gens[t].shape}, expected {(dim, dim)}")
        if labels is None:
            labels = [f"e{i}" for i in range(dim)]
        if len(labels) != dim:
            raise ValueError("one label per basis vector is required")
        self.dim = dim
        self.gens = {t: gens[t] for t in GENERATORS}
        self.labels = tuple(labels)
        self.provenance = dict(provenance or {"kind": "custom"})
        self._ginv = None

    def act(self, t: str) -> Matrix:
        if t == "gi":
            return self.g_inverse()
        return self.gens[t]

    def g_inverse(self) -> Matrix:
        if self._ginv is None:
            self._ginv = inverse(self.gens["g"])
        return self._ginv

    def __getattr__(self, name):
        if name in GENERATORS:
            return self.gens[name]
        raise AttributeError(name)

    def __repr__(self):
        return f"FdModule(dim={self.dim}, provenance={self.provenance})"

    def __eq__(self, other):
        if not isinstance(other, FdModule):
            return NotImplemented
        return self.gens == other.gens

    __hash__ = None

    def apply(self, t: str, vector) -> tuple:
        return self.act(t) @ vector


@dataclass(frozen=True)
class TruncatedVerma:
    """The span of ``z(i, j)``, ``i + j <= depth`` inside a Verma module.

    ``g, xi, u, v`` preserve the window and act exactly; ``x`` and ``y`` are
    partial (terms leaving the window are dropped).
    """

    module: FdModule
    depth: int
    levels: tuple
    partial: tuple = ("x", "y")

    @property
    def dim(self) -> int:
        return self.module.dim

    def interior(self, margin: int = 2) -> list[int]:
        return [k for k, lev in enumerate(self.levels) if lev <= self.depth - margin]


@dataclass
class VerifyReport:
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": dict(self.checks)}


# --------------------------------------------------------------------------
# evaluation of algebra elements


def evaluate_words(M: FdModule, poly) -> Matrix:
    """Matrix of a noncommutative polynomial ``((coef, word), ...)`` on ``M``."""
    acc: dict = {}
    for c, word in poly:
        if word:
            mat = M.act(word[0])
            for t in word[1:]:
                mat = mat @ M.act(t)
            items = mat.nonzero().items()
        else:
            items = (((i, i), 1) for i in range(M.dim))
        for key, v in items:
            acc[key] = acc.get(key, 0) + c * v
    return Matrix.from_sparse(M.dim, M.dim, acc)


def _mono_matrix(M: FdModule, mono) -> Matrix:
    return evaluate_words(M, ((1, algebra.letters_of(mono)),))


def evaluate(M: FdModule, a: Element) -> Matrix:
    """Matrix of an algebra element acting on ``M``."""
    return evaluate_words(M, [(c, algebra.letters_of(mono)) for mono, c in a.terms.items()])


# --------------------------------------------------------------------------
# verification


def verify_module(M: FdModule | TruncatedVerma) -> VerifyReport:
    """Check the defining relations, invertibility of g and the nilpotency of g-1, x, u."""
    report = VerifyReport()
    if isinstance(M, TruncatedVerma):
        T, M = M, M.module
        interior = T.interior()
    else:
        T = None
    try:
        M.g_inverse()
        report.checks["g_invertible"] = True
    except NotInvertible:
        report.checks["g_invertible"] = False
    for name, rel in RELATIONS.items():
        letters = {t for _, w in rel for t in w}
        if report.checks["g_invertible"] is False and "gi" in letters:
            report.checks[name] = False
            continue
        mat = evaluate_words(M, rel)
        if T is None or not (letters & set(T.partial)):
            report.checks[name] = mat.is_zero()
        else:
            report.checks[name] = all(not any(mat.column(c)) for c in interior)
    ident = Matrix.identity(M.dim)
    report.checks["nilpotent_g_minus_1"] = (M.g - ident).is_nilpotent()
    report.checks["nilpotent_x"] = M.x.is_nilpotent()
    report.checks["nilpotent_u"] = M.u.is_nilpotent()
    return report


# --------------------------------------------------------------------------
# constructors


def _module_from_images(basis: Sequence, images: Mapping[str, Sequence[dict]], labels, provenance) -> FdModule:
    index = {b: k for k, b in enumerate(basis)}
    n = len(basis)
    gens = {}
    for t in GENERATORS:
        items = {}
        for col, img in enumerate(images[t]):
            for key, c in img.items():
                row = index.get(key)
                if row is not None and c:
                    items[row, col] = c
        gens[t] = Matrix.from_sparse(n, n, items)
    return FdModule(gens, labels, provenance)


def build_simple(n: int) -> FdModule:
    """The simple module L(n) with basis z(0), ..., z(n)."""
    if n < 0:
        raise ValueError("L(n) needs n >= 0")
    basis = list(range(n + 1))
    images = {t: [] for t in GENERATORS}
    for i in basis:
        images["x"].append({})
        images["u"].append({})
        images["g"].append({i: 1})
        images["xi"].append({i: n - 2 * i})
        images["y"].append({i + 1: 1})
        images["v"].append({i - 1: Fraction(i * (n - i + 1), 2)} if i else {})
    return _module_from_images(basis, images, [f"z({i})" for i in basis], {"kind": "L", "n": n})


def pullback_sl2(E: Matrix, F: Matrix, H: Matrix, labels=None) -> FdModule:
    """Pull an sl2-representation back along D -> U(sl2): v = e/2, y = f, xi = h."""
    if not ((E @ F - F @ E) == H and (H @ E - E @ H) == E.scale(2) and (H @ F - F @ H) == F.scale(-2)):
        raise ValueError("E, F, H do not satisfy the sl2 relations")
    d = E.rows
    zero = Matrix.zeros(d)
    gens = {"x": zero, "u": zero, "g": Matrix.identity(d), "y": F, "xi": H, "v": E.scale(Fraction(1, 2))}
    return FdModule(gens, labels, {"kind": "sl2-pullback"})


def _T_basis(n: int, m: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(m + 1) for i in range(n + 2 * (m - j) + 1)]


def build_T(n: int, m: int) -> FdModule:
    """T(n, m) = M(n + 2m) modulo the span of the z(i, j) outside the staircase."""
    if n < 0 or m < 0:
        raise ValueError("T(n, m) needs n, m >= 0")
    p = n + 2 * m
    basis = _T_basis(n, m)
    images = {t: [verma_closed_action(t, p, i, j) for i, j in basis] for t in GENERATORS}
    labels = [f"z({i},{j})" for i, j in basis]
    return _module_from_images(basis, images, labels, {"kind": "T", "n": n, "m": m})


def build_S(n: int, gamma) -> FdModule:
    """The self-extension S_gamma(n) with basis s_0..s_n, w_0..w_n."""
    if n < 0:
        raise ValueError("S_gamma(n) needs n >= 0")
    gamma = as_fraction(gamma)
    basis = [("s", i) for i in range(n + 1)] + [("w", i) for i in range(n + 1)]
    images = {t: [] for t in GENERATORS}
    for kind, i in basis:
        vcoef = Fraction(i * (n - i + 1), 2)
        if kind == "s":
            images["x"].append({})
            images["y"].append({("s", i + 1): 1})
            images["g"].append({("s", i): 1})
            images["xi"].append({("s", i): n - 2 * i})
            images["u"].append({})
            images["v"].append({("s", i - 1): vcoef} if i else {})
        else:
            images["x"].append({("s", i + 1): gamma})
            images["y"].append({("w", i + 1): 1})
            images["g"].append({("w", i): 1, ("s", i): -Fraction(n - 2 * i, 2) * gamma})
            images["xi"].append({("w", i): n - 2 * i})
            images["u"].append({("s", i - 1): vcoef * gamma} if i else {})
            images["v"].append({("w", i - 1): vcoef,
                                ("s", i - 1): -Fraction(i * (n - 2 * i + 2) * (n + 1 - i), 4) * gamma}
                               if i else {})
    labels = [f"{k}_{i}" for k, i in basis]
    return _module_from_images(basis, images, labels, {"kind": "S", "n": n, "gamma": format_rational(gamma)})


def _window(depth: int) -> list[tuple[int, int]]:
    return [(k - j, j) for k in range(depth + 1) for j in range(k + 1)]


def build_verma_trunc(n: int, depth: int) -> TruncatedVerma:
    """Window ``i + j <= depth`` of M(n), built from the closed formulas."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    basis = _window(depth)
    images = {t: [verma_closed_action(t, n, i, j) for i, j in basis] for t in GENERATORS}
    M = _module_from_images(basis, images, [f"z({i},{j})" for i, j in basis],
                            {"kind": "verma", "n": n, "depth": depth})
    return TruncatedVerma(M, depth, tuple(i + j for i, j in basis))


def verma_recursive_trunc(n: int, depth: int) -> TruncatedVerma:
    """Same window as :func:`build_verma_trunc`, computed by applying the relations."""
    engine = InducedAction(Matrix.identity(1), Matrix.diagonal([n]))
    basis = _window(depth)
    images = {t: [{(a, b): c for (a, b, _), c in engine.act_basis(t, i, j, 0).items()} for i, j in basis]
              for t in GENERATORS}
    M = _module_from_images(basis, images, [f"z({i},{j})" for i, j in basis],
                            {"kind": "verma-recursive", "n": n, "depth": depth})
    return TruncatedVerma(M, depth, tuple(i + j for i, j in basis))


def build_verma2_trunc(n: int, lam, mu, depth: int) -> TruncatedVerma:
    """Window of the rank-two Verma module induced from (s, w) with
    ``g w = w + lam s`` and ``xi w = n w + mu s``."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    lam, mu = as_fraction(lam), as_fraction(mu)
    g_top = Matrix.from_rows([[1, lam], [0, 1]])
    xi_top = Matrix.from_rows([[n, mu], [0, n]])
    engine = InducedAction(g_top, xi_top)
    basis = [(i, j, p) for p in (0, 1) for i, j in _window(depth)]
    images = {t: [engine.act_basis(t, *b) for b in basis] for t in GENERATORS}
    labels = [f"{'sw'[p]}({i},{j})" for i, j, p in basis]
    M = _module_from_images(basis, images, labels,
                            {"kind": "verma2", "n": n, "lambda": format_rational(lam),
                             "mu": format_rational(mu), "depth": depth})
    return TruncatedVerma(M, depth, tuple(i + j for i, j, _ in basis))


_VERMA_KINDS = ("verma", "verma-recursive", "verma2")
_LEVEL_LABEL = re.compile(r"\((\d+),(\d+)\)$")


def as_truncation(M: FdModule) -> FdModule | TruncatedVerma:
    """Re-attach the truncation window to a Verma window loaded from a file."""
    prov = M.provenance
    if prov.get("kind") not in _VERMA_KINDS or "depth" not in prov:
        return M
    levels = []
    for lab in M.labels:
        m = _LEVEL_LABEL.search(lab)
        if m is None:
            return M
        levels.append(int(m.group(1)) + int(m.group(2)))
    return TruncatedVerma(M, int(prov["depth"]), tuple(levels))


def direct_sum(*modules: FdModule) -> FdModule:
    gens = {t: Matrix.block_diagonal([M.gens[t] for M in modules]) for t in GENERATORS}
    labels = [f"{k}:{lab}" for k, M in enumerate(modules) for lab in M.labels]
    return FdModule(gens, labels, {"kind": "sum", "of": [M.provenance for M in modules]})


# --------------------------------------------------------------------------
# weights


class NotSuitablyGraded(ValueError):
    pass


@dataclass
class WeightDecomposition:
    spaces: dict  # weight -> Subspace

    @property
    def weights(self) -> list[int]:
        return sorted(self.spaces, reverse=True)

    def dims(self) -> dict[int, int]:
        return {w: self.spaces[w].dim for w in self.weights}


def basis_weights(M: FdModule) -> list[int] | None:
    """Weight of every basis vector when the basis is adapted to the weight
    decomposition (each basis vector lies in a generalized xi-eigenspace),
    else ``None``."""
    xi = M.xi
    d = M.dim
    diag = [xi[i, i] for i in range(d)]
    if any(v.denominator != 1 for v in diag):
        return None
    for (r, c), _ in xi.nonzero().items():
        if diag[r] != diag[c]:
            return None
    groups: dict = {}
    for i, w in enumerate(diag):
        groups.setdefault(w, []).append(i)
    for w, idx in groups.items():
        block = xi.submatrix(idx, idx) - Matrix.identity(len(idx)).scale(w)
        if not block.is_nilpotent():
            return None
    return [int(w) for w in diag]


def weight_decomposition(M: FdModule) -> WeightDecomposition:
    """Generalized xi-eigenspaces over the integers."""
    bw = basis_weights(M)
    spaces = {}
    if bw is not None:
        for w in sorted(set(bw), reverse=True):
            vecs = []
            for i, wi in enumerate(bw):
                if wi == w:
                    e = [Fraction(0)] * M.dim
                    e[i] = Fraction(1)
                    vecs.append(e)
            spaces[w] = Subspace(M.dim, vecs, _checked=True)
    else:
        total = 0
        for w in range(M.dim, -M.dim - 1, -1):
            sp = generalized_eigenspace(M.xi, w)
            if sp.dim:
                spaces[w] = sp
                total += sp.dim
                if total == M.dim:
                    break
        if total != M.dim:
            raise NotSuitablyGraded("not suitably graded: integer weight spaces do not fill the module")
    return WeightDecomposition(spaces)


def hw_data(M: FdModule) -> tuple[int, int]:
    if M.dim == 0:
        raise ValueError("the zero module has no highest weight")
    wd = weight_decomposition(M)
    top = max(wd.spaces)
    return top, wd.spaces[top].dim


# --------------------------------------------------------------------------
# submodules, quotients, duals, tensor products


def generated_subspace(M: FdModule, vectors: Iterable, actions: Sequence[str] = GENERATORS) -> Subspace:
    """Smallest subspace containing ``vectors`` and stable under ``actions``."""
    ech = Echelon(M.dim)
    kept: list = []
    queue = []
    for v in vectors:
        v = tuple(as_fraction(c) for c in v)
        if len(v) != M.dim:
            raise ValueError("vector length does not match the module dimension")
        if ech.add(v):
            kept.append(v)
            queue.append(v)
    while queue:
        v = queue.pop()
        for t in actions:
            w = M.act(t) @ v
            if any(w) and ech.add(w):
                kept.append(w)
                queue.append(w)
    return Subspace(M.dim, kept, _checked=True)


def _is_stable(M: FdModule, S: Subspace) -> bool:
    ech = S.echelon()
    return all(ech.contains(M.act(t) @ b) for t in GENERATORS for b in S.basis)


def submodule(M: FdModule, S: Subspace, labels=None) -> FdModule:
    """The submodule on a generator-stable subspace, in the basis ``S.basis``."""
    if not _is_stable(M, S):
        raise ValueError("subspace is not a submodule")
    k = S.dim
    gens = {}
    for t in GENERATORS:
        cols = [S.coordinates(M.act(t) @ b) for b in S.basis]
        gens[t] = Matrix.from_columns(cols, k) if k else Matrix.zeros(0)
    if labels is None:
        labels = [_vector_label(M, b) for b in S.basis]
    return FdModule(gens, labels, {"kind": "sub", "of": M.provenance})


def _vector_label(M: FdModule, vec) -> str:
    nz = [(i, c) for i, c in enumerate(vec) if c]
    if len(nz) == 1 and nz[0][1] == 1:
        return M.labels[nz[0][0]]
    return " + ".join(f"{format_rational(c)}*{M.labels[i]}" for i, c in nz)


def submodule_generated(M: FdModule, vectors: Iterable) -> FdModule:
    return submodule(M, generated_subspace(M, vectors))


def quotient(M: FdModule, S: Subspace | FdModule) -> FdModule:
    """``M / S`` in the basis of standard vectors complementing ``S``."""
    if isinstance(S, FdModule):
        raise TypeError("pass the subspace (e.g. from generated_subspace), not a module")
    if not _is_stable(M, S):
        raise ValueError("contract violation: subspace is not generator-stable")
    comp = S.complement_indices()
    full = Subspace(M.dim, list(S.basis) + [_unit(M.dim, i) for i in comp], _checked=True)
    k = S.dim
    q = len(comp)
    gens = {}
    for t in GENERATORS:
        cols = [full.coordinates(M.act(t).column(i))[k:] for i in comp]
        gens[t] = Matrix.from_columns(cols, q) if q else Matrix.zeros(0)
    labels = [f"[{M.labels[i]}]" for i in comp]
    return FdModule(gens, labels, {"kind": "quotient", "of": M.provenance, "by_dim": k})


def _unit(n: int, i: int) -> tuple:
    e = [Fraction(0)] * n
    e[i] = Fraction(1)
    return tuple(e)


def dual(M: FdModule) -> FdModule:
    """``M*`` with ``(t f)(m) = f(S(t) m)``: the matrix of t is ``rho(S(t))^T``."""
    gens = {t: evaluate(M, antipode(generator(t))).transpose() for t in GENERATORS}
    return FdModule(gens, [f"{lab}*" for lab in M.labels], {"kind": "dual", "of": M.provenance})


def tensor(M: FdModule, N: FdModule) -> FdModule:
    """``M (x) N`` through the coproduct; basis ``e_a (x) f_b`` in row-major order."""
    gens = {}
    for t in GENERATORS:
        out = Matrix.zeros(M.dim * N.dim)
        for (m1, m2), c in coproduct(generator(t)).terms.items():
            out = out + _mono_matrix(M, m1).kron(_mono_matrix(N, m2)).scale(c)
        gens[t] = out
    labels = [f"{a}(x){b}" for a in M.labels for b in N.labels]
    return FdModule(gens, labels, {"kind": "tensor", "of": [M.provenance, N.provenance]})


def hw_series(M: FdModule) -> list[FdModule]:
    """Subquotients ``M_i / M_{i-1}`` of the series where each ``M_i`` is the
    preimage of the submodule generated by the top weight space of ``M / M_{i-1}``."""
    series = []
    current = Subspace(M.dim, (), _checked=True)
    while current.dim < M.dim:
        Q = quotient(M, current)
        wd = weight_decomposition(Q)
        top = wd.spaces[max(wd.spaces)]
        gen_q = generated_subspace(Q, top.basis)
        series.append(submodule(Q, gen_q))
        # lift: quotient basis vectors are standard vectors of M at the complement indices
        comp = current.complement_indices()
        lifted = []
        for vec in gen_q.basis:
            full = [Fraction(0)] * M.dim
            for c, i in zip(vec, comp):
                full[i] = c
            lifted.append(full)
        current = generated_subspace(M, list(current.basis) + lifted)
    return series
