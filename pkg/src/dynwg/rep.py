"""Construction of irreducible highest-weight representations with exact
rational Chevalley generator matrices.

The builder walks weight levels top-down.  Candidate vectors at each level are
f_i applied to the basis of the level above; the contravariant (Shapovalov)
Gram matrix of the candidates is computed from the previous level's data, and
an echelon sweep in a fixed monomial order picks the quotient basis.  The form
is positive definite on the irreducible quotient, so Gram rank equals the
weight-space dimension.

Independent oracles (Weyl dimension formula and Freudenthal recursion) are
implemented without reference to the constructed matrices.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import linalg
from .linalg import Matrix, Vector
from .rootdata import (
    CorootVector,
    LieType,
    Weight,
    cartan_matrix,
    dominant_representative,
    pairing,
    positive_coroots,
    positive_roots_in_simple_basis,
    rho,
    simple_root,
)

Word = tuple[int, ...]  # f_{i1} f_{i2} ... f_{ik} v, leftmost applied last


class RepError(Exception):
    pass


class DimensionCapError(RepError):
    pass


def weight_add(a: Weight, b: Weight) -> Weight:
    return Weight(tuple(x + y for x, y in zip(a.coords, b.coords)))


def weight_sub(a: Weight, b: Weight) -> Weight:
    return Weight(tuple(x - y for x, y in zip(a.coords, b.coords)))


# ---------------------------------------------------------------------------
# oracles


def weyl_dimension(t: LieType, lam: Weight) -> int:
    """dim V(lam) by the Weyl dimension formula."""
    if not lam.is_dominant():
        raise RepError(f"highest weight {lam} is not dominant")
    lam_rho = weight_add(lam, rho(t))
    num = Fraction(1)
    den = Fraction(1)
    for g in positive_coroots(t):
        num *= pairing(lam_rho, g)
        den *= pairing(rho(t), g)
    d = num / den
    assert d.denominator == 1
    return int(d)


@lru_cache(maxsize=None)
def _symmetrizers(t: LieType) -> tuple[Fraction, ...]:
    """d_i with d_i * A[i][j] symmetric, found by walking the Dynkin graph."""
    a = cartan_matrix(t)
    r = t.rank
    d: list[Fraction | None] = [None] * r
    d[0] = Fraction(1)
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(r):
            if i != j and a[i][j] and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                frontier.append(j)
    assert all(x is not None for x in d)
    return tuple(d)


@lru_cache(maxsize=None)
def _cartan_inverse(t: LieType) -> Matrix:
    a = [[Fraction(x) for x in row] for row in cartan_matrix(t)]
    return linalg.invert(a)


def _root_coords(t: LieType, mu: Weight) -> Vector:
    """Simple-root coordinates of a vector given in fundamental coordinates."""
    return linalg.mat_vec(_cartan_inverse(t), [Fraction(c) for c in mu.coords])


def _ip(t: LieType, mu: Weight, nu: Weight) -> Fraction:
    """W-invariant inner product in fundamental coordinates."""
    d = _symmetrizers(t)
    c = _root_coords(t, nu)
    return sum((c[j] * d[j] * mu.coords[j] for j in range(t.rank)), Fraction(0))


def _in_positive_root_cone(t: LieType, mu: Weight) -> bool:
    c = _root_coords(t, mu)
    return all(x >= 0 and x.denominator == 1 for x in c)


def freudenthal_multiplicity(t: LieType, lam: Weight, mu: Weight) -> int:
    """Weight multiplicity of mu in V(lam) by the Freudenthal recursion."""
    if not lam.is_dominant():
        raise RepError(f"highest weight {lam} is not dominant")
    return _freudenthal(t, lam, dominant_representative(t, mu))


@lru_cache(maxsize=None)
def _freudenthal(t: LieType, lam: Weight, mu: Weight) -> int:
    if mu == lam:
        return 1
    if not _in_positive_root_cone(t, weight_sub(lam, mu)):
        return 0
    d = _symmetrizers(t)
    a = cartan_matrix(t)
    total = Fraction(0)
    for c_alpha in positive_roots_in_simple_basis(t):
        alpha = Weight(
            tuple(sum(a[i][j] * c_alpha[j] for j in range(t.rank)) for i in range(t.rank))
        )
        k = 1
        while True:
            nu = weight_add(mu, Weight(tuple(k * x for x in alpha.coords)))
            if not _in_positive_root_cone(t, weight_sub(lam, nu)):
                break
            m = _freudenthal(t, lam, dominant_representative(t, nu))
            if m:
                ip = sum(
                    (Fraction(c_alpha[j]) * d[j] * nu.coords[j] for j in range(t.rank)),
                    Fraction(0),
                )
                total += 2 * m * ip
            k += 1
    lam_rho = weight_add(lam, rho(t))
    mu_rho = weight_add(mu, rho(t))
    denom = _ip(t, lam_rho, lam_rho) - _ip(t, mu_rho, mu_rho)
    if not denom:
        return 0
    mult = total / denom
    assert mult.denominator == 1 and mult >= 0
    return int(mult)


def dominant_weights_up_to_dim(t: LieType, dim_cap: int) -> list[Weight]:
    """All dominant highest weights lam with weyl_dimension <= dim_cap."""
    zero = Weight((0,) * t.rank)
    seen = {zero}
    out = []
    frontier = [zero]
    while frontier:
        nxt = []
        for lam in frontier:
            if weyl_dimension(t, lam) > dim_cap:
                continue
            out.append(lam)
            for i in range(t.rank):
                up = list(lam.coords)
                up[i] += 1
                w = Weight(tuple(up))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(out, key=lambda w: (weyl_dimension(t, w), w.coords))


# ---------------------------------------------------------------------------
# irreducible representation


@dataclass
class Irrep:
    """V(hw) with exact generator matrices, graded by weight.

    Basis vectors are labelled by f-monomial words; per-weight blocks of the
    generators are kept separately (weights never mix under e_i, f_i, h_i).
    """

    type: LieType
    hw: Weight
    basis: dict[Weight, list[Word]]
    e_blocks: dict[tuple[int, Weight], Matrix]  # (i, nu): V_nu -> V_{nu+alpha_i}
    f_blocks: dict[tuple[int, Weight], Matrix]  # (i, nu): V_nu -> V_{nu-alpha_i}
    weight_order: list[Weight] = field(default_factory=list)

    def __post_init__(self):
        if not self.weight_order:
            self.weight_order = sorted(
                self.basis, key=lambda w: (_level(self.type, self.hw, w), w.coords)
            )

    @property
    def dim(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def weight_dim(self, nu: Weight) -> int:
        return len(self.basis.get(nu, ()))

    def weights(self) -> list[Weight]:
        return list(self.weight_order)

    def global_index(self) -> dict[tuple[Weight, int], int]:
        idx = {}
        n = 0
        for w in self.weight_order:
            for k in range(len(self.basis[w])):
                idx[(w, k)] = n
                n += 1
        return idx

    def basis_labels(self, nu: Weight) -> list[str]:
        """Divided-power monomial labels, e.g. f1^(2)*f2*v."""
        labels = []
        for word in self.basis.get(nu, []):
            parts = []
            for letter in word:
                if parts and parts[-1][0] == letter:
                    parts[-1][1] += 1
                else:
                    parts.append([letter, 1])
            text = "*".join(f"f{i}" if n == 1 else f"f{i}^({n})" for i, n in parts)
            labels.append(f"{text}*v" if text else "v")
        return labels

    def e_block(self, i: int, nu: Weight) -> Matrix:
        target = weight_add(nu, simple_root(self.type, i))
        blk = self.e_blocks.get((i, nu))
        if blk is None:
            blk = linalg.zeros(self.weight_dim(target), self.weight_dim(nu))
        return blk

    def f_block(self, i: int, nu: Weight) -> Matrix:
        target = weight_sub(nu, simple_root(self.type, i))
        blk = self.f_blocks.get((i, nu))
        if blk is None:
            blk = linalg.zeros(self.weight_dim(target), self.weight_dim(nu))
        return blk

    def generator_map(self, kind: str, i: int) -> "BlockLinearMap":
        alpha = simple_root(self.type, i)
        if kind == "e":
            shift = alpha.coords
            blocks = {nu: self.e_block(i, nu) for nu in self.basis}
        elif kind == "f":
            shift = tuple(-c for c in alpha.coords)
            blocks = {nu: self.f_block(i, nu) for nu in self.basis}
        elif kind == "h":
            shift = (0,) * self.type.rank
            blocks = {
                nu: linalg.mat_scale(linalg.identity(self.weight_dim(nu)), Fraction(nu[i - 1]))
                for nu in self.basis
            }
        else:
            raise RepError(f"unknown generator kind {kind!r}")
        return BlockLinearMap(self, shift, blocks)

    def apply_generator(self, kind: str, i: int, vector: Vector) -> Vector:
        if len(vector) != self.dim:
            raise RepError("vector has wrong dimension")
        gmap = self.generator_map(kind, i)
        idx = self.global_index()
        out = [Fraction(0)] * self.dim
        for nu in self.weight_order:
            dnu = self.weight_dim(nu)
            seg = [vector[idx[(nu, k)]] for k in range(dnu)]
            if not any(seg):
                continue
            target = Weight(tuple(a + b for a, b in zip(nu.coords, gmap.shift)))
            if target not in self.basis:
                continue
            img = linalg.mat_vec(gmap.blocks[nu], seg)
            for k, val in enumerate(img):
                out[idx[(target, k)]] += val
        return out

    def highest_weight_vector(self) -> Vector:
        idx = self.global_index()
        v = [Fraction(0)] * self.dim
        v[idx[(self.hw, 0)]] = Fraction(1)
        return v


def _run_normalizer(word: Word) -> Fraction:
    """1 / product of factorials of the run lengths of the word."""
    denom = 1
    run = 0
    prev = None
    for letter in word:
        run = run + 1 if letter == prev else 1
        prev = letter
        denom *= run
    return Fraction(1, denom)


def _level(t: LieType, hw: Weight, nu: Weight) -> int:
    c = _root_coords(t, weight_sub(hw, nu))
    lv = sum(c, Fraction(0))
    assert lv.denominator == 1
    return int(lv)


@dataclass
class BlockLinearMap:
    """A weight-homogeneous linear map, stored per weight block."""

    irrep: Irrep
    shift: tuple[int, ...]
    blocks: dict[Weight, Matrix]

    def _target(self, nu: Weight) -> Weight:
        return Weight(tuple(a + b for a, b in zip(nu.coords, self.shift)))

    def block(self, nu: Weight) -> Matrix:
        blk = self.blocks.get(nu)
        if blk is None:
            blk = linalg.zeros(self.irrep.weight_dim(self._target(nu)), self.irrep.weight_dim(nu))
        return blk

    def compose(self, other: "BlockLinearMap") -> "BlockLinearMap":
        """self after other."""
        shift = tuple(a + b for a, b in zip(self.shift, other.shift))
        blocks = {}
        for nu in self.irrep.basis:
            mid = other._target(nu)
            b_in = other.block(nu)
            if mid in self.irrep.basis:
                blocks[nu] = linalg.mat_mul(self.block(mid), b_in)
            else:
                tgt = Weight(tuple(a + b for a, b in zip(nu.coords, shift)))
                blocks[nu] = linalg.zeros(self.irrep.weight_dim(tgt), self.irrep.weight_dim(nu))
        return BlockLinearMap(self.irrep, shift, blocks)

    def sub(self, other: "BlockLinearMap") -> "BlockLinearMap":
        if self.shift != other.shift:
            raise RepError("cannot subtract maps of different weight shifts")
        return BlockLinearMap(
            self.irrep,
            self.shift,
            {nu: linalg.mat_sub(self.block(nu), other.block(nu)) for nu in self.irrep.basis},
        )

    def scale(self, c: Fraction) -> "BlockLinearMap":
        return BlockLinearMap(
            self.irrep, self.shift, {nu: linalg.mat_scale(b, c) for nu, b in self.blocks.items()}
        )

    def commutator(self, other: "BlockLinearMap") -> "BlockLinearMap":
        return self.compose(other).sub(other.compose(self))

    def is_zero(self) -> bool:
        return all(linalg.is_zero_matrix(b) for b in self.blocks.values())

    def equals(self, other: "BlockLinearMap") -> bool:
        return self.shift == other.shift and self.sub(other).is_zero()


def check_chevalley_serre(V: Irrep) -> list[str]:
    """Verify the defining relations on the generator matrices exactly.

    Returns a list of human-readable failure descriptions (empty = all good).
    """
    t = V.type
    a = cartan_matrix(t)
    failures = []
    E = {i: V.generator_map("e", i) for i in range(1, t.rank + 1)}
    F = {i: V.generator_map("f", i) for i in range(1, t.rank + 1)}
    H = {i: V.generator_map("h", i) for i in range(1, t.rank + 1)}
    for i in E:
        for j in E:
            comm = E[i].commutator(F[j])
            if i == j:
                if not comm.equals(H[i]):
                    failures.append(f"[e_{i}, f_{i}] != h_{i}")
            elif not comm.is_zero():
                failures.append(f"[e_{i}, f_{j}] != 0")
            aij = Fraction(a[i - 1][j - 1])
            if not H[i].commutator(E[j]).equals(E[j].scale(aij)):
                failures.append(f"[h_{i}, e_{j}] != <alpha_{j},coroot_{i}> e_{j}")
            if not H[i].commutator(F[j]).equals(F[j].scale(-aij)):
                failures.append(f"[h_{i}, f_{j}] != -<alpha_{j},coroot_{i}> f_{j}")
            if i != j:
                n = 1 - a[i - 1][j - 1]
                for kind, gens in (("e", E), ("f", F)):
                    cur = gens[j]
                    for _ in range(n):
                        cur = gens[i].commutator(cur)
                    if not cur.is_zero():
                        failures.append(f"Serre relation ad({kind}_{i})^{n}({kind}_{j}) != 0")
    return failures


# ---------------------------------------------------------------------------
# construction


class _IrrepBuilder:
    def __init__(self, t: LieType, hw: Weight):
        self.t = t
        self.hw = hw
        self.a = cartan_matrix(t)
        self.alphas = [simple_root(t, i) for i in range(1, t.rank + 1)]
        # per-weight state
        self.basis: dict[Weight, list[Word]] = {}
        self.gram_inv: dict[Weight, Matrix] = {}
        self.cands: dict[Weight, list[Word]] = {}
        self.cand_index: dict[Weight, dict[Word, int]] = {}
        self.cand_gram: dict[Weight, Matrix] = {}
        self.cand_coords: dict[Weight, list[Vector]] = {}
        self.chosen_idx: dict[Weight, list[int]] = {}
        self.eblocks: dict[tuple[int, Weight], Matrix] = {}

    def build(self) -> Irrep:
        t, hw = self.t, self.hw
        top: Word = ()
        self.basis[hw] = [top]
        self.gram_inv[hw] = [[Fraction(1)]]
        self.cands[hw] = [top]
        self.cand_index[hw] = {top: 0}
        self.cand_gram[hw] = [[Fraction(1)]]
        self.cand_coords[hw] = [[Fraction(1)]]
        self.chosen_idx[hw] = [0]
        for i in range(1, t.rank + 1):
            self.eblocks[(i, hw)] = []
        prev_weights = [hw]
        while prev_weights:
            level_weights = self._process_level(prev_weights)
            prev_weights = level_weights
        return self._assemble()

    def _word_weight(self, parent: Weight, letter: int) -> Weight:
        return weight_sub(parent, self.alphas[letter - 1])

    def _process_level(self, prev_weights: list[Weight]) -> list[Weight]:
        t = self.t
        # gather candidates grouped by weight, remembering (letter, parent, parent basis idx)
        groups: dict[Weight, list[tuple[Word, int, Weight, int]]] = {}
        for tau in prev_weights:
            for bidx, b in enumerate(self.basis[tau]):
                for j in range(1, t.rank + 1):
                    nu = self._word_weight(tau, j)
                    groups.setdefault(nu, []).append(((j,) + b, j, tau, bidx))
        new_weights = []
        for nu in sorted(groups, key=lambda w: w.coords):
            cands = sorted(groups[nu], key=lambda c: c[0])
            words = [c[0] for c in cands]
            gram = self._candidate_gram(cands)
            chosen = self._select(nu, words, gram)
            if chosen:
                new_weights.append(nu)
        # candidate coordinates in the chosen basis (needed one level down)
        for nu in groups:
            self._candidate_coords(nu)
        # e-blocks of the new basis vectors
        for nu in new_weights:
            self._compute_eblocks(nu)
        return new_weights

    def _shap(self, c1, c2) -> Fraction:
        """Contravariant form of two candidates via the previous level's data."""
        w1, i, tau1, b1 = c1
        w2, j, tau2, b2 = c2
        total = Fraction(0)
        if i == j and tau1 == tau2:
            # <wt(b'), coroot_i> S(b, b')
            gram_prev = self.cand_gram[tau1]
            idx = self.cand_index[tau1]
            bw1, bw2 = self.basis[tau1][b1], self.basis[tau1][b2]
            total += Fraction(tau2[i - 1]) * gram_prev[idx[bw1]][idx[bw2]]
        sigma = weight_add(tau2, self.alphas[i - 1])
        eb = self.eblocks.get((i, tau2))
        if eb and sigma in self.basis:
            prev_cands = self.cand_index[tau1]
            gram_prev = self.cand_gram[tau1]
            b_word = self.basis[tau1][b1]
            row = prev_cands[b_word]
            for k, bk in enumerate(self.basis[sigma]):
                gamma = eb[k][b2]
                if gamma:
                    total += gamma * gram_prev[row][prev_cands[(j,) + bk]]
        return total

    def _candidate_gram(self, cands) -> Matrix:
        n = len(cands)
        g = linalg.zeros(n, n)
        for p in range(n):
            for q in range(p, n):
                v = self._shap(cands[p], cands[q])
                g[p][q] = v
                g[q][p] = v
        return g

    def _select(self, nu: Weight, words: list[Word], gram: Matrix) -> list[int]:
        chosen: list[int] = []
        g_inv: Matrix = []
        for c in range(len(words)):
            v = [gram[k][c] for k in chosen]
            if chosen:
                sol = linalg.mat_vec(g_inv, v)
                schur = gram[c][c] - sum(a * b for a, b in zip(v, sol))
            else:
                schur = gram[c][c]
            if schur:
                if schur < 0:
                    raise RepError("contravariant form is not positive definite")
                chosen.append(c)
                g_inv = linalg.invert([[gram[a][b] for b in chosen] for a in chosen])
        self.cands[nu] = words
        self.cand_index[nu] = {w: k for k, w in enumerate(words)}
        self.cand_gram[nu] = gram
        self.chosen_idx[nu] = chosen
        if chosen:
            self.basis[nu] = [words[c] for c in chosen]
            self.gram_inv[nu] = g_inv
        return chosen

    def _candidate_coords(self, nu: Weight):
        words = self.cands[nu]
        chosen = self.chosen_idx[nu]
        if not chosen:
            self.cand_coords[nu] = [[] for _ in words]
            return
        g_inv = self.gram_inv[nu]
        gram = self.cand_gram[nu]
        coords = []
        for c in range(len(words)):
            rhs = [gram[k][c] for k in chosen]
            coords.append(linalg.mat_vec(g_inv, rhs))
        self.cand_coords[nu] = coords

    def _compute_eblocks(self, nu: Weight):
        t = self.t
        for i in range(1, t.rank + 1):
            sigma = weight_add(nu, self.alphas[i - 1])
            rows = len(self.basis.get(sigma, ()))
            cols = len(self.basis[nu])
            blk = linalg.zeros(rows, cols)
            if rows:
                sig_basis_pos = {w: k for k, w in enumerate(self.basis[sigma])}
                for col, word in enumerate(self.basis[nu]):
                    j, bprime = word[0], word[1:]
                    tau2 = weight_add(nu, self.alphas[j - 1])  # weight of b'
                    if i == j:
                        # delta term: sigma == tau2, b' is a basis word there
                        blk[sig_basis_pos[bprime]][col] += Fraction(tau2[i - 1])
                    upper = weight_add(tau2, self.alphas[i - 1])
                    eb = self.eblocks.get((i, tau2))
                    if eb and upper in self.basis:
                        bidx = self.basis[tau2].index(bprime)
                        cidx = self.cand_index[sigma]
                        ccoords = self.cand_coords[sigma]
                        for k, bk in enumerate(self.basis[upper]):
                            gamma = eb[k][bidx]
                            if gamma:
                                vec = ccoords[cidx[(j,) + bk]]
                                for r in range(rows):
                                    blk[r][col] += gamma * vec[r]
            self.eblocks[(i, nu)] = blk

    def _assemble(self) -> Irrep:
        # The echelon pivoting picks raw f-monomials; rescale each basis word
        # by its run-length factorials so that repeated letters act as divided
        # powers (f_i^k v becomes f_i^k/k! v).  This is the normalization in
        # which the rank-1 reflection coefficients appear verbatim as matrix
        # entries.
        t = self.t
        sigma = {nu: [_run_normalizer(w) for w in words] for nu, words in self.basis.items()}
        f_blocks: dict[tuple[int, Weight], Matrix] = {}
        for nu, words in self.basis.items():
            for i in range(1, t.rank + 1):
                target = weight_sub(nu, self.alphas[i - 1])
                rows = len(self.basis.get(target, ()))
                blk = linalg.zeros(rows, len(words))
                if rows:
                    cidx = self.cand_index[target]
                    ccoords = self.cand_coords[target]
                    for col, b in enumerate(words):
                        vec = ccoords[cidx[(i,) + b]]
                        for r in range(rows):
                            blk[r][col] = vec[r]
                f_blocks[(i, nu)] = blk
        alphas = self.alphas

        def rescale(blocks, direction):
            out = {}
            for (i, nu), blk in blocks.items():
                if not blk:
                    continue
                target = (
                    weight_add(nu, alphas[i - 1])
                    if direction > 0
                    else weight_sub(nu, alphas[i - 1])
                )
                s_src, s_tgt = sigma[nu], sigma[target]
                out[(i, nu)] = [
                    [blk[r][c] * s_src[c] / s_tgt[r] for c in range(len(s_src))]
                    for r in range(len(s_tgt))
                ]
            return out

        return Irrep(
            type=t,
            hw=self.hw,
            basis=self.basis,
            e_blocks=rescale(self.eblocks, +1),
            f_blocks=rescale(f_blocks, -1),
        )


def build_irrep(
    t: LieType,
    hw: Weight,
    dim_cap: int = 500,
    cache_dir: str | None = None,
) -> Irrep:
    """Construct (or load from cache) the irreducible representation V(hw)."""
    if not hw.is_dominant():
        raise RepError(f"highest weight {hw} is not dominant")
    predicted = weyl_dimension(t, hw)
    if predicted > dim_cap:
        raise DimensionCapError(
            f"dim V({hw}) = {predicted} exceeds the cap {dim_cap}"
        )
    if cache_dir is not None:
        cached = load_cached_irrep(t, hw, cache_dir)
        if cached is not None:
            return cached
    irrep = _IrrepBuilder(t, hw).build()
    if cache_dir is not None:
        save_irrep(irrep, cache_dir)
    return irrep


# ---------------------------------------------------------------------------
# sl(2)-strings


@dataclass
class StringComponent:
    """One irreducible sl(2)_i constituent passing through a weight space.

    m is the highest sl(2)-weight of the string, k the depth (m - 2k is the
    sl(2)-weight at the decomposed space); primitives live at weight
    nu + k*alpha_i and inject via the divided power f_i^(k).
    """

    m: int
    k: int
    primitives: list[Vector]
    injection: Matrix  # columns: f_i^(k) of each primitive, in the basis of V_nu


@dataclass
class StringDecomposition:
    index: int
    weight: Weight
    components: list[StringComponent]
    change_of_basis: Matrix  # columns of all injections, invertible on V_nu


def divided_f_power(V: Irrep, i: int, nu: Weight, k: int, vec: Vector) -> Vector:
    """f_i^k / k! applied to a vector in the V_nu block."""
    alpha = simple_root(V.type, i)
    cur = vec
    w = nu
    for _ in range(k):
        cur = linalg.mat_vec(V.f_block(i, w), cur)
        w = weight_sub(w, alpha)
    return [c / factorial(k) for c in cur]


def sl2_strings(V: Irrep, i: int, nu: Weight) -> StringDecomposition:
    """Decompose V_nu into sl(2)_i strings: V_nu = (+)_k f_i^(k)(ker e_i at nu+k*alpha_i)."""
    if nu not in V.basis:
        raise RepError(f"{nu} is not a weight of V({V.hw})")
    alpha = simple_root(V.type, i)
    dim_nu = V.weight_dim(nu)
    components = []
    cols: list[Vector] = []
    k = 0
    w = nu
    while w in V.basis:
        m = nu[i - 1] + 2 * k
        kernel = linalg.nullspace(V.e_block(i, w), V.weight_dim(w))
        if kernel and k <= m:
            injections = [divided_f_power(V, i, w, k, u) for u in kernel]
            inj_matrix = linalg.transpose(injections)
            components.append(StringComponent(m=m, k=k, primitives=kernel, injection=inj_matrix))
            cols.extend(injections)
        k += 1
        w = weight_add(w, alpha)
    if len(cols) != dim_nu:
        raise RepError("sl(2)-string decomposition does not fill the weight space")
    change = linalg.transpose(cols)
    linalg.invert(change)  # raises if the assembled basis is singular
    return StringDecomposition(index=i, weight=nu, components=components, change_of_basis=change)


# ---------------------------------------------------------------------------
# cache

CACHE_VERSION = 1


def default_cache_dir() -> str:
    env = os.environ.get("DYNWG_CACHE")
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "dynwg")


def cache_filename(t: LieType, hw: Weight) -> str:
    return f"{t}__{'_'.join(str(c) for c in hw.coords)}.v{CACHE_VERSION}.json"


def _matrix_to_triplets(m: Matrix):
    return [[r, c, str(v)] for r, row in enumerate(m) for c, v in enumerate(row) if v]


def _triplets_to_matrix(tr, rows: int, cols: int) -> Matrix:
    m = linalg.zeros(rows, cols)
    for r, c, v in tr:
        m[r][c] = Fraction(v)
    return m


def irrep_to_json(V: Irrep) -> dict:
    weights = []
    for nu in V.weight_order:
        weights.append({"coords": list(nu.coords), "words": [list(w) for w in V.basis[nu]]})
    gens = {"e": [], "f": []}
    for (i, nu), blk in sorted(V.e_blocks.items(), key=lambda kv: (kv[0][0], kv[0][1].coords)):
        gens["e"].append({"i": i, "weight": list(nu.coords), "entries": _matrix_to_triplets(blk)})
    for (i, nu), blk in sorted(V.f_blocks.items(), key=lambda kv: (kv[0][0], kv[0][1].coords)):
        gens["f"].append({"i": i, "weight": list(nu.coords), "entries": _matrix_to_triplets(blk)})
    return {
        "version": CACHE_VERSION,
        "type": str(V.type),
        "hw": list(V.hw.coords),
        "dim": V.dim,
        "weights": weights,
        "generators": gens,
    }


def irrep_from_json(obj: dict) -> Irrep:
    t = LieType.parse(obj["type"])
    hw = Weight.make(obj["hw"])
    basis = {
        Weight.make(w["coords"]): [tuple(word) for word in w["words"]] for w in obj["weights"]
    }
    e_blocks: dict[tuple[int, Weight], Matrix] = {}
    f_blocks: dict[tuple[int, Weight], Matrix] = {}
    for kind, store in (("e", e_blocks), ("f", f_blocks)):
        for item in obj["generators"][kind]:
            i = int(item["i"])
            nu = Weight.make(item["weight"])
            alpha = simple_root(t, i)
            target = weight_add(nu, alpha) if kind == "e" else weight_sub(nu, alpha)
            rows = len(basis.get(target, ()))
            store[(i, nu)] = _triplets_to_matrix(item["entries"], rows, len(basis[nu]))
    V = Irrep(type=t, hw=hw, basis=basis, e_blocks=e_blocks, f_blocks=f_blocks)
    if V.dim != obj["dim"]:
        raise RepError("corrupt cache entry: dimension mismatch")
    return V


def save_irrep(V: Irrep, cache_dir: str):
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, cache_filename(V.type, V.hw))
    if os.path.exists(path):
        return
    lock = path + ".lock"
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        return  # another writer is at work; readers keep using fresh builds
    try:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(irrep_to_json(V), fh, sort_keys=True)
        os.replace(tmp, path)
    finally:
        os.close(fd)
        os.unlink(lock)


def load_cached_irrep(t: LieType, hw: Weight, cache_dir: str) -> Irrep | None:
    path = os.path.join(cache_dir, cache_filename(t, hw))
    if not os.path.exists(path):
        return None
    # wait out an in-flight writer's rename
    lock = path + ".lock"
    for _ in range(50):
        if not os.path.exists(lock):
            break
        time.sleep(0.1)
    with open(path) as fh:
        return irrep_from_json(json.load(fh))


def list_cached_irreps(cache_dir: str) -> list[str]:
    if not os.path.isdir(cache_dir):
        return []
    return sorted(f for f in os.listdir(cache_dir) if f.endswith(".json"))
