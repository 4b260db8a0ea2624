"""Hom spaces, socles, composition factors, indecomposability and Ext^1.

Ext^1 uses the block-triangular description of an extension: with the
submodule first, every generator acts by ``[[A_t, phi_t], [0, B_t]]``.
Each defining relation has degree at most two in the generators, so its
off-diagonal block is linear in the unknown maps ``phi_t``; a word
``t_1 ... t_k`` contributes ``sum_p A_{t_1}..A_{t_{p-1}} phi_{t_p} B_{t_{p+1}}..B_{t_k}``.
Coboundaries are ``phi_t = A_t h - h B_t``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .algebra import GENERATORS, RELATIONS
from .linalg import (Echelon, Matrix, Subspace, algebra_radical, generalized_eigenspace, kernel_of_rows,
                     rank)
from .modules import FdModule, basis_weights, build_simple, hw_data, quotient, submodule, weight_decomposition

__all__ = [
    "HomSpace",
    "ExtResult",
    "UNDETERMINED",
    "hom_space",
    "is_isomorphic",
    "socle",
    "socle_subspace",
    "composition_factors",
    "is_indecomposable",
    "ext1",
    "build_extension",
]

UNDETERMINED = "undetermined"


@dataclass
class HomSpace:
    source: FdModule
    target: FdModule
    basis: list  # of Matrix, target.dim x source.dim

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combination(self, coefficients: Sequence) -> Matrix:
        out = Matrix.zeros(self.target.dim, self.source.dim)
        for c, h in zip(coefficients, self.basis):
            if c:
                out = out + h.scale(c)
        return out


def _sparse_cols(mat: Matrix) -> list[list[tuple[int, Fraction]]]:
    cols = [[] for _ in range(mat.cols)]
    for (i, j), v in mat.nonzero().items():
        cols[j].append((i, v))
    return cols


def hom_space(M: FdModule, N: FdModule) -> HomSpace:
    """Basis of the intertwiners ``h: M -> N`` (``N_t h = h M_t`` for all t)."""
    wm, wn = basis_weights(M), basis_weights(N)
    # unknown h[r, c]; module maps preserve weights, so only equal-weight pairs
    if wm is not None and wn is not None:
        pairs = [(r, c) for r in range(N.dim) for c in range(M.dim) if wn[r] == wm[c]]
    else:
        pairs = [(r, c) for r in range(N.dim) for c in range(M.dim)]
    index = {p: k for k, p in enumerate(pairs)}
    rows = []
    for t in GENERATORS:
        Nrows = N.act(t)._sparse_rows()
        Mcols = _sparse_cols(M.act(t))
        for r in range(N.dim):
            for c in range(M.dim):
                eq: dict = {}
                for k, a in Nrows[r]:
                    var = index.get((k, c))
                    if var is not None:
                        eq[var] = eq.get(var, 0) + a
                for k, b in Mcols[c]:
                    var = index.get((r, k))
                    if var is not None:
                        eq[var] = eq.get(var, 0) - b
                if any(eq.values()):
                    rows.append(eq)
    basis = []
    for vec in kernel_of_rows(rows, len(pairs)):
        basis.append(Matrix.from_sparse(N.dim, M.dim, {pairs[k]: v for k, v in enumerate(vec) if v}))
    return HomSpace(M, N, basis)


def is_isomorphic(M: FdModule, N: FdModule, *, seed: int = 0, retries: int = 32):
    """``True``/``False``, or :data:`UNDETERMINED` when the search is exhausted.

    ``False`` is only returned on an exact obstruction: dimension, weight
    profile, ``dim Hom(M, N) != dim End(M)``, or differing socle/top
    multiplicities ``dim Hom(L(k), -)`` and ``dim Hom(-, L(k))``.
    """
    if M.dim != N.dim:
        return False
    if M.dim == 0:
        return True
    H = hom_space(M, N)
    if H.dim == 0:
        return False
    # exact obstructions: Hom dimensions are isomorphism invariants
    if hom_space(M, M).dim != H.dim or hom_space(N, N).dim != H.dim:
        return False
    wd = weight_decomposition(M).dims()
    if wd != weight_decomposition(N).dims():
        return False
    for k in range(0, max(wd) + 1):
        Lk = build_simple(k)
        if hom_space(Lk, M).dim != hom_space(Lk, N).dim or hom_space(M, Lk).dim != hom_space(N, Lk).dim:
            return False
    lattice = range(-2, 3)
    tried = 0
    for coeffs in product(lattice, repeat=H.dim):
        if not any(coeffs):
            continue
        if rank(H.combination(coeffs)) == M.dim:
            return True
        tried += 1
        if tried >= 64:
            break
    rng = random.Random(seed)
    for _ in range(retries):
        coeffs = [Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 997)) for _ in range(H.dim)]
        if rank(H.combination(coeffs)) == M.dim:
            return True
    return UNDETERMINED


def socle_subspace(M: FdModule) -> Subspace:
    top = hw_data(M)[0] if M.dim else -1
    vecs = []
    for k in range(0, top + 1):
        for h in hom_space(build_simple(k), M).basis:
            vecs.extend(h.column(c) for c in range(h.cols))
    return Subspace(M.dim, vecs)


def socle(M: FdModule) -> FdModule:
    """Sum of the images of all maps ``L(k) -> M``."""
    return submodule(M, socle_subspace(M))


def _semisimple_factors(S: FdModule) -> list[int]:
    """Multiset of k with L(k) in the semisimple module S (checked)."""
    for t in ("x", "u"):
        if not S.act(t).is_zero():
            raise RuntimeError("socle layer is not semisimple: %s acts nontrivially" % t)
    if not (S.g - Matrix.identity(S.dim)).is_zero():
        raise RuntimeError("socle layer is not semisimple: g is not the identity")
    dims = weight_decomposition(S).dims()
    factors = []
    for k in sorted((w for w in dims if w >= 0), reverse=True):
        mult = dims[k] - dims.get(k + 2, 0)
        if mult < 0:
            raise RuntimeError("socle layer weight profile is not a sum of simples")
        factors.extend([k] * mult)
    if sum(k + 1 for k in factors) != S.dim:
        raise RuntimeError("socle layer is not a direct sum of simple modules")
    return factors


def socle_layers(M: FdModule) -> list[list[int]]:
    layers = []
    while M.dim:
        S = socle_subspace(M)
        layers.append(sorted(_semisimple_factors(submodule(M, S))))
        M = quotient(M, S)
    return layers


def composition_factors(M: FdModule) -> list[int]:
    """Highest weights of the composition factors, sorted (a multiset)."""
    return sorted(k for layer in socle_layers(M) for k in layer)


def _fitting_split(M: FdModule, a: Matrix) -> bool:
    """True if some integer eigenvalue of ``a`` splits M (Fitting decomposition)."""
    d = M.dim
    for lam in sorted(range(-d, d + 1), key=abs):
        sp = generalized_eigenspace(a, lam)
        if 0 < sp.dim < d:
            return True
    return False


def is_indecomposable(M: FdModule):
    """``True``/``False`` or :data:`UNDETERMINED`.

    ``End(M)`` is local iff its quotient by the trace-form radical is one
    dimensional.  Otherwise look for an endomorphism with a proper
    generalized eigenspace, which splits M by Fitting's lemma.
    """
    if M.dim == 0:
        return False
    E = hom_space(M, M)
    R = algebra_radical(E.basis)
    if E.dim - R.dim == 1:
        return True
    candidates = list(E.basis)
    rng = random.Random(1)
    for _ in range(8):
        candidates.append(E.combination([rng.randint(-3, 3) for _ in range(E.dim)]))
    for a in candidates:
        if _fitting_split(M, a):
            return False
    return UNDETERMINED


# --------------------------------------------------------------------------
# Ext^1


@dataclass
class ExtResult:
    sub: FdModule
    quot: FdModule
    dimension: int
    cocycle_basis: list = field(default_factory=list)  # of dict generator -> Matrix (sub.dim x quot.dim)
    cocycle_space_dim: int = 0
    coboundary_dim: int = 0


def _word_products(M: FdModule, word: Sequence[str]) -> list[Matrix]:
    """prefix[p] = product of the first p letters' matrices."""
    out = [Matrix.identity(M.dim)]
    for t in word:
        out.append(out[-1] @ M.act(t))
    return out


def _suffix_products(M: FdModule, word: Sequence[str]) -> list[Matrix]:
    out = [Matrix.identity(M.dim)]
    for t in reversed(word):
        out.append(M.act(t) @ out[-1])
    return out[::-1]  # out[p] = product of letters p..end


def ext1(quot: FdModule, sub: FdModule) -> ExtResult:
    """Ext^1 classes of extensions ``0 -> sub -> E -> quot -> 0``."""
    a, b = sub.dim, quot.dim
    block = a * b
    gens = list(GENERATORS)
    offset = {t: k * block for k, t in enumerate(gens)}
    nvars = len(gens) * block

    # phi[t][r, c] -> variable offset[t] + r*b + c
    rows = []
    for rel in RELATIONS.values():
        acc: dict = {}  # (r, c) -> {var: coef}
        for coef, word in rel:
            if any(t == "gi" for t in word):
                raise ValueError("relations with g^-1 are not expected here")
            pre = _word_products(sub, word)
            suf = _suffix_products(quot, word)
            for p, t in enumerate(word):
                P = pre[p]._sparse_rows()          # a x a
                Q = suf[p + 1]                     # b x b
                Qrows = Q._sparse_rows()
                off = offset[t]
                # (P phi Q)[r, c] = sum_{k, l} P[r, k] phi[k, l] Q[l, c]
                for r in range(a):
                    for k, pv in P[r]:
                        for l in range(b):
                            for c, qv in Qrows[l]:
                                eq = acc.setdefault((r, c), {})
                                var = off + k * b + l
                                eq[var] = eq.get(var, 0) + coef * pv * qv
        rows.extend(eq for eq in acc.values() if any(eq.values()))
    cocycles = kernel_of_rows(rows, nvars)

    # coboundaries: h (a x b) -> (A_t h - h B_t)_t
    cob_vectors = []
    for hr in range(a):
        for hc in range(b):
            vec: dict = {}
            for t in gens:
                A, B = sub.act(t), quot.act(t)
                off = offset[t]
                for r in range(a):
                    v = A[r, hr]
                    if v:
                        vec[off + r * b + hc] = vec.get(off + r * b + hc, 0) + v
                for c in range(b):
                    v = B[hc, c]
                    if v:
                        vec[off + hr * b + c] = vec.get(off + hr * b + c, 0) - v
            cob_vectors.append(vec)
    ech = Echelon(nvars)
    for vec in cob_vectors:
        ech.add(vec)
    cob_dim = len(ech)
    reps = []
    for vec in cocycles:
        if ech.add(vec):
            reps.append({t: Matrix(a, b, vec[offset[t]:offset[t] + block]) for t in gens})
    return ExtResult(sub, quot, len(cocycles) - cob_dim, reps, len(cocycles), cob_dim)


def build_extension(result: ExtResult, coefficients: Sequence) -> FdModule:
    """Middle term of the extension given by ``sum c_k * cocycle_k``; basis sub then quot."""
    if len(coefficients) != result.dimension:
        raise ValueError(f"expected {result.dimension} coefficients, got {len(coefficients)}")
    sub, quot = result.sub, result.quot
    a, b = sub.dim, quot.dim
    gens = {}
    for t in GENERATORS:
        phi = Matrix.zeros(a, b)
        for c, rep in zip(coefficients, result.cocycle_basis):
            if c:
                phi = phi + rep[t].scale(c)
        items = dict(sub.act(t).nonzero())
        for (i, j), v in phi.nonzero().items():
            items[i, a + j] = v
        for (i, j), v in quot.act(t).nonzero().items():
            items[a + i, a + j] = v
        gens[t] = Matrix.from_sparse(a + b, a + b, items)
    labels = [f"sub:{lab}" for lab in sub.labels] + [f"quot:{lab}" for lab in quot.labels]
    prov = {"kind": "extension", "sub": sub.provenance, "quot": quot.provenance,
            "coefficients": [str(Fraction(c)) for c in coefficients]}
    return FdModule(gens, labels, prov)
