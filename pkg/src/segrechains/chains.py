"""Concatenated flow maps on the complexified manifold.

gamma(M, k, ...) builds the chain map in k parameter blocks u1..uk by
alternating the two exact vectorial flows

    L-flow:    (w, z, zeta, xi) |-> (w + u, qbar(w + u, zeta, xi), zeta, xi)
    Lbar-flow: (w, z, zeta, xi) |-> (w, z, zeta + u, q(zeta + u, w, z))

starting from a basepoint (origin, numeric, or symbolic).  psi projects the
chain alternately to the two coordinate half-spaces, v_map builds the
classical nested-substitution maps independently of the flow machinery, and
check_reparam verifies the linear reparametrization identities that tie the
two constructions together.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import DimensionMismatch, OffManifold, SegreError, UnknownVariable
from .manifold import Basepoint, CRManifold, _ambient_subst
from .series import Series, SeriesMap, VarSpace


def default_kmax(M: CRManifold) -> int:
    """Default maximum chain length 2d + 3 (chains cannot gain rank later)."""
    return 2 * M.d + 3


def chain_space(M: CRManifold, k: int, basepoint: Basepoint) -> VarSpace:
    """Domain of a length-k chain: blocks u1..uk plus basepoint parameters."""
    blocks = [
        (f"u{i}", tuple(f"u{i}_{j}" for j in range(1, M.m + 1)))
        for i in range(1, k + 1)
    ]
    pairs = [(v, v) for _, vs in blocks for v in vs]
    extra = basepoint.param_blocks(M)
    for bn, vs in extra:
        blocks.append((bn, vs))
    if any(bn == "pw" for bn, _ in extra):
        pairs += [(f"pw{i}", f"pzeta{i}") for i in range(1, M.m + 1)]
    return VarSpace(blocks, pairs)


def _flow_step(M: CRManifold, which: str, comps, params, space, order):
    """One vectorial flow applied to ambient state components over `space`."""
    m, d = M.m, M.d
    w, z = list(comps[:m]), list(comps[m : m + d])
    zeta, xi = list(comps[m + d : 2 * m + d]), list(comps[2 * m + d :])
    if which == "L":
        new_w = [w[i] + params[i] for i in range(m)]
        sub = _ambient_subst(M, space, new_w, zeta, xi, order)
        new_z = [M.qbar[j].compose(sub) for j in range(d)]
        return new_w + new_z + zeta + xi
    if which == "Lbar":
        new_zeta = [zeta[i] + params[i] for i in range(m)]
        sub = _ambient_subst(M, space, w, new_zeta, xi, order, z_vals=z)
        new_xi = [M.q[j].compose(sub) for j in range(d)]
        return w + z + new_zeta + new_xi
    raise ValueError(f"unknown flow kind {which!r}")


def flow(M: CRManifold, which: str, state: SeriesMap, param_block: str) -> SeriesMap:
    """Flow a point of the complexified manifold by an m-block of times.

    `state` must have the ambient space as codomain and satisfy rho = 0
    identically (OffManifold otherwise); `param_block` names a block of m
    variables of the state's domain used as the flow time.
    """
    if state.codomain != M.space:
        raise DimensionMismatch("state must assign all ambient coordinates")
    sub = state.as_subst()
    for j, r in enumerate(M.rho()):
        if not r.compose(sub).is_zero():
            raise OffManifold(f"state violates rho_{j + 1} = 0")
    space = state.domain
    names = space.block_vars(param_block)
    if len(names) != M.m:
        raise DimensionMismatch(f"block {param_block!r} must have {M.m} variables")
    params = [Series.variable(space, nm, state.order) for nm in names]
    comps = _flow_step(M, which, list(state.components), params, space, state.order)
    return SeriesMap(comps, M.space)


def _flow_kind(parity: str, step: int) -> str:
    """Type of the step-th flow (1-based) for a chain of the given parity."""
    if parity == "L":
        return "L" if step % 2 == 1 else "Lbar"
    if parity == "Lbar":
        return "Lbar" if step % 2 == 1 else "L"
    raise ValueError(f"parity must be 'L' or 'Lbar', not {parity!r}")


@dataclass(frozen=True)
class ChainMap:
    """A concatenated flow map with range in the complexified manifold."""

    manifold: CRManifold
    k: int
    parity: str
    basepoint: Basepoint
    map: SeriesMap  # ambient components over chain_space(M, k, basepoint)
    chart: str  # suggested chart: "wzetaxi" for odd k, "wzzeta" for even

    def in_chart(self, chart: Optional[str] = None) -> SeriesMap:
        """Project the ambient map to a coordinate chart of the manifold."""
        chart = chart or self.chart
        M = self.manifold
        if chart == "ambient":
            return self.map
        charts = {
            "wzzeta": ("w", "z", "zeta"),
            "wzetaxi": ("w", "zeta", "xi"),
            "t": ("w", "z"),
            "tau": ("zeta", "xi"),
        }
        if chart not in charts:
            raise UnknownVariable(f"unknown chart {chart!r}")
        names = [v for b in charts[chart] for v in M.space.block_vars(b)]
        return self.map.project(names, M.space.subspace(charts[chart]))

    def param_names(self):
        return [
            f"u{i}_{j}"
            for i in range(1, self.k + 1)
            for j in range(1, self.manifold.m + 1)
        ]

    def u_blocks(self):
        return [f"u{i}" for i in range(1, self.k + 1)]


def _chain_states(M: CRManifold, k: int, basepoint: Basepoint, parity: str):
    """Ambient state components after 0..k flows, each over its own chain space."""
    cache = getattr(M, "_chain_cache", None)
    if cache is None:
        cache = M._chain_cache = {}
    key = (basepoint, parity, k)
    if key in cache:
        return cache[key]
    if k == 0:
        space = chain_space(M, 0, basepoint)
        comps = basepoint.state_components(M, space, M.order)
    else:
        prev = _chain_states(M, k - 1, basepoint, parity)
        space = chain_space(M, k, basepoint)
        lifted = [s.lift(space) for s in prev]
        params = [
            Series.variable(space, f"u{k}_{j}", M.order) for j in range(1, M.m + 1)
        ]
        comps = _flow_step(M, _flow_kind(parity, k), lifted, params, space, M.order)
    cache[key] = comps
    return comps


def gamma(M: CRManifold, k: int, basepoint: Optional[Basepoint] = None,
          parity: str = "L", verify: bool = True) -> ChainMap:
    """The length-k chain map in m*k parameters (plus basepoint parameters)."""
    if k < 1:
        raise DimensionMismatch("chain length must be >= 1")
    basepoint = basepoint or Basepoint.origin()
    comps = _chain_states(M, k, basepoint, parity)
    smap = SeriesMap(comps, M.space)
    chain = ChainMap(M, k, parity, basepoint, smap, "wzetaxi" if k % 2 else "wzzeta")
    if verify:
        verify_in_manifold(chain)
    return chain


def verify_in_manifold(chain: ChainMap) -> bool:
    """Check that substituting the chain into every rho_j gives the zero series."""
    sub = chain.map.as_subst()
    for j, r in enumerate(chain.manifold.rho()):
        if not r.compose(sub).is_zero():
            raise SegreError(
                f"internal: chain of length {chain.k} leaves the manifold at rho_{j + 1}"
            )
    return True


def psi(M: CRManifold, k: int, basepoint: Optional[Basepoint] = None,
        parity: str = "L") -> SeriesMap:
    """Projected chain: even chains to the (zeta, xi) half-space, odd chains to
    (w, z) — with the two projections swapped for the conjugate parity."""
    chain = gamma(M, k, basepoint, parity, verify=False)
    to_tau = (k % 2 == 0) if parity == "L" else (k % 2 == 1)
    return chain.in_chart("tau" if to_tau else "t")


def v_space(M: CRManifold, k: int) -> VarSpace:
    blocks = [
        (f"u{i}", tuple(f"u{i}_{j}" for j in range(1, M.m + 1)))
        for i in range(1, max(k, 1) + 1)
    ][: k if k else 0]
    return VarSpace(blocks, [(v, v) for _, vs in blocks for v in vs])


def v_map(M: CRManifold, k: int) -> SeriesMap:
    """The nested-substitution map into the (w, z) space, built independently
    of the flow machinery (cross-check oracle for the chains)."""
    if k < 0:
        raise DimensionMismatch("k must be >= 0")
    t_space = M.space.subspace(("w", "z"))
    if k == 0:
        space = VarSpace([])
        comps = [Series.zero(space, M.order) for _ in range(M.n)]
        return SeriesMap(comps, t_space)
    space = v_space(M, k)
    order = M.order
    zero = [Series.zero(space, order)] * max(M.m, M.d)

    def ublock(i):
        return [Series.variable(space, f"u{i}_{j}", order) for j in range(1, M.m + 1)]

    # innermost transversal value, then fold outwards down to slot 2
    if k % 2 == 1:
        sub = _ambient_subst(M, space, ublock(k), zero[: M.m], zero[: M.d], order)
        tail = [M.qbar[j].compose(sub) for j in range(M.d)]
    else:
        sub = _ambient_subst(M, space, zero[: M.m], ublock(k), zero[: M.d], order,
                             z_vals=zero[: M.d])
        tail = [M.q[j].compose(sub) for j in range(M.d)]
    for s in range(k - 1, 1, -1):
        if s % 2 == 0:
            sub = _ambient_subst(M, space, ublock(s + 1), ublock(s), zero[: M.d],
                                 order, z_vals=tail)
            tail = [M.q[j].compose(sub) for j in range(M.d)]
        else:
            sub = _ambient_subst(M, space, ublock(s), ublock(s + 1), tail, order)
            tail = [M.qbar[j].compose(sub) for j in range(M.d)]
    if k == 1:
        comps = ublock(1) + tail
    else:
        sub = _ambient_subst(M, space, ublock(1), ublock(2), tail, order)
        comps = ublock(1) + [M.qbar[j].compose(sub) for j in range(M.d)]
    return SeriesMap(comps, t_space)


def _conjugate_coefficients(s: Series) -> Series:
    return Series(s.space, {e: c.conjugate() for e, c in s.terms.items()}, s.order)


def _reparam_args(M: CRManifold, k: int, space: VarSpace):
    """Slot s of the nested map receives u_{k+1-s} + u_{k-1-s} + ... (step 2)."""
    order = M.order
    sub = {}
    for s in range(1, k + 1):
        for j in range(1, M.m + 1):
            total = Series.zero(space, order)
            t = k + 1 - s
            while t >= 1:
                total = total + Series.variable(space, f"u{t}_{j}", order)
                t -= 2
            sub[f"u{s}_{j}"] = total
    return sub


def check_reparam(M: CRManifold, k: int) -> bool:
    """Verify the reparametrization identity tying v^k to the projected chain.

    Odd k:  v^k(partial sums)            == pi_t(Gamma_k).
    Even k: conj(v^k)(partial sums)      == pi_tau(Gamma_k).
    Stated for k <= 5; a failed identity returns False rather than raising.
    """
    if not 1 <= k <= 5:
        raise DimensionMismatch("reparametrization identities are stated for k <= 5")
    chain = gamma(M, k, Basepoint.origin(), "L", verify=False)
    space = chain.map.domain
    v = v_map(M, k)
    args = _reparam_args(M, k, space)
    comps = list(v.components)
    if k % 2 == 0:
        comps = [_conjugate_coefficients(c) for c in comps]
    lhs = [c.compose(args) for c in comps]
    rhs = chain.in_chart("t" if k % 2 else "tau").components
    return all(a == b for a, b in zip(lhs, rhs))


def sigma_image(chain: ChainMap) -> ChainMap:
    """The chain transported by the antiholomorphic involution.

    Components are sigma-conjugated (coefficients conjugated, the ambient
    component blocks swapped along w<->zeta, z<->xi) and the chain parameters
    are renamed to their conjugates, which flips the parity.
    """
    M = chain.manifold
    space = M.space
    old = chain.map.components
    comps = [None] * len(old)
    for a in range(space.dim):
        b = space.partner(a)
        comps[a] = old[b].sigma_conjugate()
    bp = chain.basepoint
    if bp.kind == "numeric":
        bp = Basepoint.numeric(
            M,
            tuple(c.conjugate() for c in bp.zeta),
            tuple(c.conjugate() for c in bp.xi),
            tuple(c.conjugate() for c in bp.w),
            tuple(c.conjugate() for c in bp.z),
        )
    parity = "Lbar" if chain.parity == "L" else "L"
    return ChainMap(M, chain.k, parity, bp, SeriesMap(comps, space), chain.chart)
