"""Dynamical Weyl group operators as exact rational-function matrices.

Higher-rank operators are assembled from the rank-1 closed form: along a
reduced word, the t-th simple reflection acts through the sl(2)-string
decomposition of the current weight space, with the dynamical variable twisted
to the pairing of x against the t-th crossing coroot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .ratfun import DegreeOneForm, PoleError, RatFun
from .rep import Irrep, divided_f_power, sl2_strings, weight_add
from .rootdata import (
    Weight,
    WeylWord,
    canonical_word,
    crossing_coroots,
    is_reduced,
    pairing,
    positive_coroots,
    simple_reflection,
    simple_root,
)


class DynWeylError(Exception):
    pass


RatMatrix = list[list[RatFun]]


def _rmat_mul(a: RatMatrix, b: RatMatrix, nx: int) -> RatMatrix:
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = [[RatFun.zero(nx) for _ in range(cols)] for _ in range(rows)]
    for r in range(rows):
        for t in range(inner):
            e = a[r][t]
            if e.is_zero():
                continue
            for c in range(cols):
                if not b[t][c].is_zero():
                    out[r][c] = out[r][c] + e * b[t][c]
    return out


def _rmat_identity(n: int, nx: int) -> RatMatrix:
    return [[RatFun.one(nx) if r == c else RatFun.zero(nx) for c in range(n)] for r in range(n)]


@dataclass
class OperatorBlock:
    """One weight block of a dynamical operator: V_source -> V_target."""

    V: Irrep
    word: WeylWord
    source: Weight
    target: Weight
    matrix: RatMatrix

    @property
    def nx(self) -> int:
        return self.V.type.rank

    def equals(self, other: "OperatorBlock") -> bool:
        if (self.source, self.target) != (other.source, other.target):
            return False
        return all(
            a == b for ra, rb in zip(self.matrix, other.matrix) for a, b in zip(ra, rb)
        )

    def substitute(self, images: list[DegreeOneForm]) -> "OperatorBlock":
        return OperatorBlock(
            V=self.V,
            word=self.word,
            source=self.source,
            target=self.target,
            matrix=[[e.substitute(images) for e in row] for row in self.matrix],
        )

    def to_json(self) -> dict:
        return {
            "algebra": str(self.V.type),
            "hw": list(self.V.hw.coords),
            "mu": list(self.source.coords),
            "word": list(self.word),
            "target": list(self.target.coords),
            "basis_labels": {
                "source": self.V.basis_labels(self.source),
                "target": self.V.basis_labels(self.target),
            },
            "matrix": [[e.to_json() for e in row] for row in self.matrix],
        }

    def format(self) -> str:
        lines = [
            f"{self.V.type} V({self.V.hw})  word {list(self.word)}:"
            f" V_({self.source}) -> V_({self.target})"
        ]
        for row in self.matrix:
            lines.append("  [" + ",  ".join(e.format() for e in row) + "]")
        return "\n".join(lines)


def rank1_coefficient(m: int, k: int, xi: DegreeOneForm) -> RatFun:
    """The closed-form sl(2) coefficient on the string component (m, k):

        (-1)^k * prod_{j=1..k} (xi + (j+1)h) / (xi + (j-m+k)h)
    """
    if k < 0 or m - 2 * k < 0:
        raise DynWeylError(f"string component (m={m}, k={k}) outside the dominant regime")
    num_forms = [xi.shift_h(j + 1) for j in range(1, k + 1)]
    den_forms = [xi.shift_h(j - m + k) for j in range(1, k + 1)]
    return RatFun.from_factors((-1) ** k, num_forms, den_forms, xi.nx)


def simple_reflection_block(V: Irrep, i: int, nu: Weight, xi: DegreeOneForm) -> OperatorBlock:
    """Block of A_{s_i}: V_nu -> V_{s_i nu} with dynamical variable xi.

    Each sl(2)-string component (m, k) is sent through f_i^(k) u -> c(m,k,xi)
    f_i^(m-k) u; the result is expressed in the standard weight-space bases.
    """
    if nu[i - 1] < 0:
        raise DynWeylError(f"<{nu}, coroot {i}> < 0: outside the dominant regime")
    t = V.type
    nx = t.rank
    dec = sl2_strings(V, i, nu)
    target = simple_reflection(t, i, nu)
    dim = V.weight_dim(nu)
    alpha = simple_root(t, i)
    p_inv = linalg.invert(dec.change_of_basis)
    coeffs: list[RatFun] = []
    out_cols: list[list[Fraction]] = []
    for comp in dec.components:
        c = rank1_coefficient(comp.m, comp.k, xi)
        w = nu
        for _ in range(comp.k):
            w = weight_add(w, alpha)
        for u in comp.primitives:
            coeffs.append(c)
            out_cols.append(divided_f_power(V, i, w, comp.m - comp.k, u))
    matrix = [[RatFun.zero(nx) for _ in range(dim)] for _ in range(V.weight_dim(target))]
    for col_t in range(dim):
        c = coeffs[col_t]
        for r in range(V.weight_dim(target)):
            for col in range(dim):
                s = out_cols[col_t][r] * p_inv[col_t][col]
                if s:
                    matrix[r][col] = matrix[r][col] + c.scale(s)
    return OperatorBlock(V=V, word=(i,), source=nu, target=target, matrix=matrix)


def word_operator_block(V: Irrep, word: WeylWord, mu: Weight) -> OperatorBlock:
    """A_w on V_mu for a reduced word, composed right-to-left: the rightmost
    stored letter acts first.

    The Weyl group acts on the dynamical parameter through the shifted action
    w*x = w(x + h rho) - h rho, so the t-th step uses the variable
    xi_t = <x, gamma_t> + (ht(gamma_t) - 1) h with gamma_t the t-th crossing
    coroot.  For a single letter the shift vanishes and xi is just x_i; for
    longer words the shift is what makes the composition independent of the
    choice of reduced word (the sl(2) adjoint block already distinguishes the
    shifted action from the naive one).
    """
    word = tuple(word)
    t = V.type
    if not mu.is_dominant():
        raise DynWeylError(f"source weight {mu} is not dominant")
    if mu not in V.basis:
        raise DynWeylError(f"{mu} is not a weight of V({V.hw})")
    gammas = crossing_coroots(t, word)  # raises on a non-reduced word
    nx = t.rank
    cur = mu
    matrix = _rmat_identity(V.weight_dim(mu), nx)
    for step, letter in enumerate(reversed(word)):
        gamma = gammas[step]
        p = Fraction(cur[letter - 1])
        assert p == pairing(mu, gamma) and p >= 0, "negative intermediate pairing"
        xi = DegreeOneForm.make(gamma.coords, gamma.height() - 1)
        blk = simple_reflection_block(V, letter, cur, xi)
        matrix = _rmat_mul(blk.matrix, matrix, nx)
        cur = simple_reflection(t, letter, cur)
    return OperatorBlock(V=V, word=word, source=mu, target=cur, matrix=matrix)


def dynamical_operator(V: Irrep, word: WeylWord, mu: Weight) -> OperatorBlock:
    """A_w on V_mu for the Weyl element given by any word (not necessarily
    reduced): computed on the canonical reduced word."""
    return word_operator_block(V, canonical_word(V.type, tuple(word)), mu)


def rho_shift(b: OperatorBlock) -> OperatorBlock:
    """Substitute x_i -> -x_i - h in every entry."""
    nx = b.nx
    images = [
        DegreeOneForm.make([-1 if j == i else 0 for j in range(nx)], -1) for i in range(nx)
    ]
    return b.substitute(images)


def classical_limit(b: OperatorBlock, rng) -> linalg.Matrix:
    """Evaluate at h = 0.  The result must not depend on x; this is checked at
    two distinct random rational points (re-drawn on accidental poles)."""
    nx = b.nx

    def sample() -> list[Fraction]:
        return [Fraction(rng.randint(10**3, 10**6)) for _ in range(nx)] + [Fraction(0)]

    def eval_at(point):
        return [[e.evaluate(point) for e in row] for row in b.matrix]

    results = []
    points = []
    attempts = 0
    while len(results) < 2:
        attempts += 1
        if attempts > 16:
            raise DynWeylError("entry has a pole identically at h=0")
        point = sample()
        if point in points:
            continue
        try:
            results.append(eval_at(point))
        except PoleError:
            continue
        points.append(point)
    if results[0] != results[1]:
        raise DynWeylError("h=0 specialization depends on x")
    return results[0]


def denominators_are_local(b: OperatorBlock) -> bool:
    """Every denominator factor must be (a scalar multiple of)
    <x + h rho, gamma> - m*h with gamma a positive coroot and m a positive
    integer; equivalently <x, gamma> + c*h with c an integer < ht(gamma).
    For gamma simple this is the familiar x_i - m*h, m >= 0."""
    pos = positive_coroots(b.V.type)
    for row in b.matrix:
        for e in row:
            for form, _mult in e.den:
                if not _is_local_form(form, pos):
                    return False
    return True


def _is_local_form(form: DegreeOneForm, pos) -> bool:
    for gamma in pos:
        scale = None
        ok = True
        for fc, gc in zip(form.xcoeffs, gamma.coords):
            if gc == 0:
                if fc != 0:
                    ok = False
                    break
                continue
            r = fc / gc
            if scale is None:
                scale = r
            elif r != scale:
                ok = False
                break
        if not ok or scale is None or scale <= 0:
            continue
        c = form.hcoeff / scale
        if c.denominator == 1 and c < gamma.height():
            return True
    return False
