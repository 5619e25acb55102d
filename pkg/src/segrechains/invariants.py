"""Rank profiles of chain maps and the derived biholomorphic invariants.

The generic ranks r_k of the chains start at r_1 = m, r_2 = 2m and grow by
increments e_k = r_{k+2} - r_{k+1}; once an increment vanishes after a
nonzero one, all later increments vanish, so the profile computation stops
at the first plateau (an optional paranoid mode keeps going and asserts that
no later jump occurs).  kappa counts the positive increments, the type is
mu = 2 + kappa, the multitype is (m, m, e_1, ..., e_kappa), and the manifold
is minimal at the basepoint exactly when the increments sum to d.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional

from .chains import default_kmax, gamma, psi
from .errors import NotAHypersurface, SegreError, WitnessNotFound
from .manifold import Basepoint, CRManifold
from .ranks import (
    DEFAULT_TRIALS,
    NUM_BOUND,
    generic_rank,
    random_point,
    rank_at_point,
)
from .scalars import ZERO
from .series import Series


@dataclass(frozen=True)
class RankProfile:
    """Generic ranks r_k (k = 1..), their increments, and rank witnesses."""

    r: tuple
    e: tuple
    witnesses: tuple
    certified: bool
    stopped_at: int
    kmax: int

    def rank(self, k: int) -> int:
        """r_k for a computed k (ranks are constant after the plateau)."""
        if 1 <= k <= len(self.r):
            return self.r[k - 1]
        return self.r[-1]


@dataclass(frozen=True)
class SegreInvariants:
    kappa: int
    mu: int
    nu: int
    multitype: tuple
    minimal: bool
    orbit_dim_complexified: int
    orbit_dim_intrinsic: int
    orbit_dim_real: int
    profile: RankProfile


def _chain_rank(M, k, basepoint, parity, trials, seed, certify):
    # ranks are taken in the intrinsic (2m+d)-coordinate chart of the chain:
    # equivalent to the ambient rank for exact manifolds, and structurally
    # bounded by dim M for truncated jets
    chain = gamma(M, k, basepoint, parity, verify=False)
    return generic_rank(
        chain.in_chart(), wrt=chain.u_blocks(), trials=trials, seed=seed + k,
        certify=certify,
    )


def rank_profile(
    M: CRManifold,
    basepoint: Optional[Basepoint] = None,
    kmax: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    certify: bool = False,
    paranoid: bool = False,
) -> RankProfile:
    """Generic ranks of the chains at the basepoint, with early stop at the
    first plateau; one conjugate-parity rank is recomputed as a symmetry check."""
    basepoint = basepoint or Basepoint.origin()
    kmax = kmax or default_kmax(M)
    if kmax < 3:
        raise SegreError("kmax must be >= 3")
    rs: List[int] = []
    witnesses = []
    certified = True
    stopped_at = kmax
    for k in range(1, kmax + 1):
        res = _chain_rank(M, k, basepoint, "L", trials, seed, certify)
        rs.append(res.rank)
        witnesses.append(tuple(res.witness) if res.witness else None)
        certified = certified and res.certified
        if k >= 3 and rs[-1] == rs[-2]:
            stopped_at = k
            if not paranoid:
                break
        if k >= 3 and rs[-1] < rs[-2]:
            raise SegreError("internal: sampled ranks decreased; raise trials")
    if paranoid:
        plateau = rs.index(max(rs)) + 1
        if any(rs[i] != rs[-1] for i in range(plateau - 1, len(rs))):
            raise SegreError("internal: rank jumped after a plateau")
    if rs[0] != M.m or (len(rs) > 1 and rs[1] != 2 * M.m):
        raise SegreError(
            "internal: r_1, r_2 must equal m, 2m; sampling failed or input invalid"
        )
    e = tuple(rs[k + 1] - rs[k] for k in range(1, len(rs) - 1))
    # sigma-consistency: one conjugate-parity rank must agree
    k_check = min(3, len(rs))
    res_bar = _chain_rank(M, k_check, basepoint, "Lbar", trials, seed, certify=False)
    if res_bar.rank != rs[k_check - 1]:
        raise SegreError("internal: conjugate chain rank disagrees; raise trials")
    return RankProfile(tuple(rs), e, tuple(witnesses), certified, stopped_at, kmax)


def segre_invariants(
    M: CRManifold,
    basepoint: Optional[Basepoint] = None,
    kmax: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    certify: bool = False,
) -> SegreInvariants:
    profile = rank_profile(M, basepoint, kmax, trials, seed, certify)
    conclusive = (
        len(profile.r) >= 2 and profile.r[-1] == profile.r[-2]
    ) or profile.r[-1] == 2 * M.m + M.d
    if not conclusive:
        raise SegreError(
            f"ranks still increasing at kmax={profile.kmax}; raise kmax"
        )
    e_pos = []
    for inc in profile.e:
        if inc <= 0:
            break
        e_pos.append(inc)
    kappa = len(e_pos)
    mu = 2 + kappa
    nu = mu - 1
    total = sum(e_pos)
    if not (kappa <= M.d and mu <= M.d + 2):
        raise SegreError("internal: type bounds kappa <= d, mu <= d + 2 violated")
    return SegreInvariants(
        kappa=kappa,
        mu=mu,
        nu=nu,
        multitype=(M.m, M.m) + tuple(e_pos),
        minimal=(total == M.d),
        orbit_dim_complexified=2 * M.m + total,
        orbit_dim_intrinsic=M.m + total,
        orbit_dim_real=2 * M.m + total,
        profile=profile,
    )


def hypersurface_minimality(M: CRManifold) -> bool:
    """Minimality test for d = 1: the series theta(zeta, w, 0) must be nonzero."""
    if M.d != 1:
        raise NotAHypersurface(f"d = {M.d}, expected a hypersurface")
    sub = {n: Series.variable(M.space, n, M.order) for n in M.space.names}
    sub["z1"] = Series.zero(M.space, M.order)
    return not M.theta[0].compose(sub).is_zero()


@dataclass(frozen=True)
class WitnessRecord:
    """A return-to-basepoint chain witnessing the maximal attained rank."""

    w_star: tuple  # mu blocks of m scalars, last block zero
    omega_star: tuple  # mu - 1 blocks: reversed negatives
    chain_length: int  # 2*mu - 1
    rank_at_witness: int
    returns_to_basepoint: bool
    parity: str


def _basepoint_values(M: CRManifold, basepoint: Basepoint):
    if basepoint.kind == "origin":
        return [ZERO] * (2 * M.n)
    if basepoint.kind == "numeric":
        return list(basepoint.w) + list(basepoint.z) + list(basepoint.zeta) + list(
            basepoint.xi
        )
    raise SegreError("witness search needs a numeric basepoint")


def witness_point(
    M: CRManifold,
    invariants: SegreInvariants,
    basepoint: Optional[Basepoint] = None,
    parity: str = "L",
    seed: int = 0,
    retries: int = 20,
) -> WitnessRecord:
    """Find w* = (w_1*, ..., w_{mu-1}*, 0) where the length-mu chain attains
    rank 2m + sum(e), set omega* = (-w_{mu-1}*, ..., -w_1*), and verify that
    the length-(2mu-1) chain returns to the basepoint with the same rank."""
    basepoint = basepoint or Basepoint.origin()
    mu = invariants.mu
    target = invariants.orbit_dim_complexified
    m = M.m
    chain_mu = gamma(M, mu, basepoint, parity, verify=False)
    rng = random.Random(seed)
    found = None
    for attempt in range(2 * retries):
        bound = NUM_BOUND if attempt < retries else NUM_BOUND * 10
        blocks = [random_point(rng, m, bound) for _ in range(mu - 1)]
        point = [c for blk in blocks for c in blk] + [ZERO] * m
        if rank_at_point(chain_mu.in_chart(), chain_mu.u_blocks(), point) == target:
            found = blocks
            break
    if found is None:
        raise WitnessNotFound(
            f"no rank-{target} point of the required shape after {2 * retries} tries"
        )
    w_star = tuple(tuple(blk) for blk in found) + ((ZERO,) * m,)
    omega_star = tuple(tuple(-c for c in blk) for blk in reversed(found))
    length = 2 * mu - 1
    chain_long = gamma(M, length, basepoint, parity, verify=False)
    point = [c for blk in (w_star + omega_star) for c in blk]
    value = chain_long.map.evaluate(point)
    returns = value == _basepoint_values(M, basepoint)
    rank = rank_at_point(chain_long.in_chart(), chain_long.u_blocks(), point)
    if M.order is None:
        # exact mode: the return identity and the attained rank are theorems
        if not returns:
            raise SegreError("internal: witness chain failed to return to the basepoint")
        if rank != target:
            raise SegreError(f"internal: witness rank {rank} != expected {target}")
    return WitnessRecord(w_star, omega_star, length, rank, returns, parity)


def psi_rank_checks(
    M: CRManifold,
    basepoint: Optional[Basepoint] = None,
    kmax: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> dict:
    """Check m + gen-rk(psi^{k+1}) = gen-rk(Gamma_{k+2}) for each k, and the
    return/rank properties of the conjugate projected chain at length 2*nu."""
    basepoint = basepoint or Basepoint.origin()
    inv = segre_invariants(M, basepoint, kmax, trials, seed, certify=False)
    profile = inv.profile
    results = []
    upto = len(profile.r) - 2
    for k in range(0, upto + 1):
        pm = psi(M, k + 1, basepoint, "L")
        blocks = [f"u{i}" for i in range(1, k + 2)]
        lhs = M.m + generic_rank(pm, wrt=blocks, trials=trials, seed=seed + k).rank
        rhs = profile.rank(k + 2)
        results.append({"k": k, "lhs": lhs, "rhs": rhs, "ok": lhs == rhs})
    witness_ok = None
    if basepoint.kind in ("origin", "numeric") and M.order is None:
        witness = witness_point(M, inv, basepoint, parity="Lbar", seed=seed)
        two_nu = 2 * inv.nu
        pm = psi(M, two_nu, basepoint, "Lbar")  # projects to the (w, z) space
        blocks_flat = witness.w_star + witness.omega_star
        point = [c for blk in blocks_flat[:two_nu] for c in blk]
        value = pm.evaluate(point)
        expected_t = _basepoint_values(M, basepoint)[: M.n]
        rank = rank_at_point(pm, [f"u{i}" for i in range(1, two_nu + 1)], point)
        witness_ok = (value == expected_t) and rank == inv.orbit_dim_intrinsic
    return {
        "identities": results,
        "all_ok": all(r["ok"] for r in results) and witness_ok in (None, True),
        "projected_witness_ok": witness_ok,
        "invariants": inv,
    }
