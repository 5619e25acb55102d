"""Lie brackets of tangent fields, bracket-generation ladders, Levi type.

All computations happen in the intrinsic chart (w, zeta, xi) of the
complexified manifold, where the pair of m-vector fields takes the form

    L_i    = d/dw_i
    Lbar_i = d/dzeta_i - i * sum_j theta_{j, zeta_i}(zeta, w, qbar) d/dxi_j.

Span dimensions are exact row reductions over Q(i) at numeric basepoints;
a symbolic basepoint leaves the chart variables in the matrix and samples
its generic rank.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import ChartMismatch, SegreError, WrongDimensions
from .invariants import segre_invariants
from .manifold import Basepoint, CRManifold
from .ranks import DEFAULT_TRIALS, exact_rank, random_point
from .scalars import I, ZERO
from .series import Series, VarSpace


def chart_space(M: CRManifold) -> VarSpace:
    """The intrinsic (w, zeta, xi) chart of the complexified manifold."""
    return M.space.subspace(("w", "zeta", "xi"))


@dataclass(frozen=True)
class TangentVectorField:
    """A single vector field in the intrinsic chart, one coefficient per variable."""

    space: VarSpace
    coefficients: tuple
    label: str = ""

    def apply(self, f: Series) -> Series:
        out = Series.zero(self.space, f.order)
        for a, coeff in enumerate(self.coefficients):
            if coeff.is_zero():
                continue
            out = out + coeff * f.diff(self.space.names[a])
        return out

    def value_at(self, point) -> list:
        return [c.evaluate(point) for c in self.coefficients]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def key(self):
        return tuple(
            tuple(sorted(c.terms.items(), key=lambda t: t[0])) for c in self.coefficients
        )

    def __neg__(self):
        return TangentVectorField(
            self.space, tuple(-c for c in self.coefficients), f"-{self.label}"
        )


def bracket(X: TangentVectorField, Y: TangentVectorField) -> TangentVectorField:
    """[X, Y]_i = X(Y_i) - Y(X_i), exact."""
    if X.space != Y.space:
        raise ChartMismatch("bracket of fields over different charts")
    coeffs = tuple(
        X.apply(Y.coefficients[a]) - Y.apply(X.coefficients[a])
        for a in range(X.space.dim)
    )
    return TangentVectorField(X.space, coeffs, f"[{X.label},{Y.label}]")


def tangent_fields(M: CRManifold) -> Tuple[List[TangentVectorField], List[TangentVectorField]]:
    """The 2m chart fields (L_1..L_m, Lbar_1..Lbar_m)."""
    cs = chart_space(M)
    order = M.order
    zero = Series.zero(cs, order)
    one = Series.constant(cs, 1, order)
    L = []
    for i, wv in enumerate(cs.block_vars("w")):
        coeffs = [zero] * cs.dim
        coeffs[cs.index_of(wv)] = one
        L.append(TangentVectorField(cs, tuple(coeffs), f"L{i + 1}"))
    Lbar = []
    xi_idx = [cs.index_of(v) for v in cs.block_vars("xi")]
    for i, zv in enumerate(cs.block_vars("zeta")):
        coeffs = [zero] * cs.dim
        coeffs[cs.index_of(zv)] = one
        for j in range(M.d):
            c = M.restrict(M.theta[j].diff(M.space.block_vars("zeta")[i]))
            coeffs[xi_idx[j]] = (-I) * c.lift(cs)
        Lbar.append(TangentVectorField(cs, tuple(coeffs), f"Lbar{i + 1}"))
    return L, Lbar


def chart_point(M: CRManifold, basepoint: Basepoint):
    """Chart coordinates (w, zeta, xi) of a numeric basepoint, or None (symbolic)."""
    if basepoint.kind == "origin":
        return [ZERO] * (2 * M.m + M.d)
    if basepoint.kind == "numeric":
        return list(basepoint.w) + list(basepoint.zeta) + list(basepoint.xi)
    return None


def _span_dim(rows, point, dim, trials, seed) -> int:
    """Span dimension of symbolic row vectors at a point (or generic, sampled)."""
    if point is not None:
        matrix = [[c.evaluate(point) for c in row] for row in rows]
        return exact_rank(matrix)
    rng = random.Random(seed)
    best = 0
    for _ in range(trials):
        p = random_point(rng, dim)
        matrix = [[c.evaluate(p) for c in row] for row in rows]
        best = max(best, exact_rank(matrix))
    return best


@dataclass(frozen=True)
class HormanderData:
    """Bracket-generation ladder: jumps (mu_k, l_k, dim_k) above dim 2m at level 1."""

    ladder: tuple  # ((mu_1, l_1, dim_1), ...)
    h: int
    minimal: bool
    base_dim: int  # 2m
    full_dim: int  # 2m + d
    level_dims: tuple  # dim of D^mu at the basepoint for mu = 1..last computed

    def multiplicities(self):
        return tuple(l for _, l, _ in self.ladder)


def hormander_numbers(
    M: CRManifold,
    basepoint: Optional[Basepoint] = None,
    max_length: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> HormanderData:
    """Dimension jumps of the iterated bracket spans of the CR pair.

    Brackets are enumerated as left-normed words [X, [..., Y]] with X among
    the 2m generators, which span every bracket level of the generated Lie
    algebra.  Identically zero and duplicate fields are dropped; the ladder
    stops at the full dimension 2m + d or at max_length (default 2d + 2).
    """
    basepoint = basepoint or Basepoint.origin()
    max_length = max_length or (2 * M.d + 2)
    if max_length < 2:
        raise SegreError("max_length must be >= 2")
    L, Lbar = tangent_fields(M)
    generators = L + Lbar
    cs = generators[0].space
    point = chart_point(M, basepoint)
    full = 2 * M.m + M.d
    rows = [f.coefficients for f in generators]
    dims = [_span_dim(rows, point, cs.dim, trials, seed)]
    if dims[0] != 2 * M.m:
        raise SegreError("internal: the 2m chart fields must be independent")
    ladder = []
    level = generators
    seen = {f.key() for f in generators}
    for mu in range(2, max_length + 1):
        new_level = []
        for g in generators:
            for h in level:
                b = bracket(g, h)
                if b.is_zero():
                    continue
                k = b.key()
                nk = (-b).key()
                if k in seen or nk in seen:
                    continue
                seen.add(k)
                new_level.append(b)
        level = new_level
        rows.extend(f.coefficients for f in level)
        dim = _span_dim(rows, point, cs.dim, trials, seed)
        dims.append(dim)
        if dim > dims[-2]:
            ladder.append((mu, dim - dims[-2], dim))
        if dim == full:
            break
        if not level:
            break
    return HormanderData(
        ladder=tuple(ladder),
        h=len(ladder),
        minimal=(dims[-1] == full),
        base_dim=2 * M.m,
        full_dim=full,
        level_dims=tuple(dims),
    )


def gradient_rows(M: CRManifold) -> List[List[Series]]:
    """Holomorphic gradients of rho_j in chart variables: (-i theta_bar_{j,w}, e_j)."""
    cs = chart_space(M)
    rows = []
    for j in range(M.d):
        row = [(-I) * M.theta_bar[j].diff(wv) for wv in M.space.block_vars("w")]
        unit = [
            Series.constant(M.space, 1 if l == j else 0, M.order) for l in range(M.d)
        ]
        rows.append([c.lift(cs) for c in row] + [u.lift(cs) for u in unit])
    return rows


def levi_type(
    M: CRManifold,
    basepoint: Optional[Basepoint] = None,
    kmax: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> Optional[int]:
    """Smallest k with Span{Lbar^beta grad rho_j : |beta| <= k} = C^n at the
    basepoint; None when kmax (default m + d) is exhausted.  A symbolic
    basepoint yields the generic Levi type."""
    basepoint = basepoint or Basepoint.origin()
    kmax = kmax or (M.m + M.d)
    _, Lbar = tangent_fields(M)
    cs = Lbar[0].space
    point = chart_point(M, basepoint)
    rows = gradient_rows(M)
    all_rows = list(rows)
    if _span_dim(all_rows, point, cs.dim, trials, seed) == M.n:
        return 0
    level = rows
    for k in range(1, kmax + 1):
        level = [
            [f.apply(c) for c in row] for f in Lbar for row in level
        ]
        all_rows.extend(level)
        if _span_dim(all_rows, point, cs.dim, trials, seed) == M.n:
            return k
    return None


def holomorphic_nondegeneracy(
    M: CRManifold, kmax: Optional[int] = None, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> dict:
    """Generic Levi type via a symbolic basepoint; finite means nondegenerate."""
    ell = levi_type(M, Basepoint.symbolic(), kmax, trials, seed)
    return {
        "nondegenerate": ell is not None,
        "levi_type_generic": ell,
        "kmax": kmax or (M.m + M.d),
    }


def e1_determinant(M: CRManifold):
    """For m = d = 2: the determinant of (theta_{j, w_i}) restricted to the
    second chain of the origin (z = 0); it is nonzero iff e_1(0) = 2."""
    if M.m != 2 or M.d != 2:
        raise WrongDimensions("this determinant test needs m = 2, d = 2")
    sub = {n: Series.variable(M.space, n, M.order) for n in M.space.names}
    for zv in M.space.block_vars("z"):
        sub[zv] = Series.zero(M.space, M.order)
    w_vars = M.space.block_vars("w")
    entries = [
        [M.theta[j].diff(w_vars[i]).compose(sub) for i in range(2)] for j in range(2)
    ]
    det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    return det, not det.is_zero()


def crosscheck_totals(
    M: CRManifold,
    basepoint: Optional[Basepoint] = None,
    kmax: Optional[int] = None,
    max_length: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> dict:
    """Assert sum(l) = sum(e) and that the bracket and chain minimality
    verdicts coincide at the basepoint."""
    basepoint = basepoint or Basepoint.origin()
    inv = segre_invariants(M, basepoint, kmax, trials, seed, certify=False)
    hd = hormander_numbers(M, basepoint, max_length, trials, seed)
    sum_e = sum(inv.multitype[2:])
    sum_l = sum(hd.multiplicities())
    return {
        "sum_e": sum_e,
        "sum_l": sum_l,
        "totals_agree": sum_e == sum_l,
        "minimal_chains": inv.minimal,
        "minimal_brackets": hd.minimal,
        "verdicts_agree": inv.minimal == hd.minimal,
        "ok": (sum_e == sum_l) and (inv.minimal == hd.minimal),
        "invariants": inv,
        "hormander": hd,
    }
