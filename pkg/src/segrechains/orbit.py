"""Formal orbits of systems of commuting m-vector fields.

A VFSystem is a finite family of a m-vector fields (each an m-tuple of
commuting, pointwise independent coordinate fields) with polynomial
coefficients.  Flows are realized as truncated Lie series
exp(s.L)(x) = sum_k (s.L)^k(x) / k!; for fields whose Lie series terminates
(all the complexified CR pairs in this package) the flow is exact.

greedy_multitype implements the greedy rank-increment construction: starting
from the concatenated flows of all a fields, repeatedly append the field
whose extra flow maximizes the generic-rank increment, stopping when no
field adds rank.  The resulting orbit dimension am + sum(e) can be
cross-checked against the independent left-normed bracket span oracle
lie_span_dimension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import (
    ChartMismatch,
    DimensionMismatch,
    RankAssumptionViolated,
    SegreError,
    WitnessNotFound,
)
from .manifold import CRManifold
from .ranks import (
    DEFAULT_TRIALS,
    NUM_BOUND,
    exact_rank,
    generic_rank,
    random_point,
    rank_at_point,
)
from .scalars import ZERO
from .series import Series, SeriesMap, VarSpace


def coordinate_space(n: int, prefix: str = "x") -> VarSpace:
    names = tuple(f"{prefix}{i}" for i in range(1, n + 1))
    return VarSpace([(prefix, names)])


class VFSystem:
    """A system of a m-vector fields over an n-dimensional coordinate space.

    fields[alpha][i] is a tuple of n coefficient Series over `space`.
    Components within one m-tuple must commute symbolically, and the a*m
    coefficient vectors must have rank a*m at the origin (checked there and
    at sampled points).
    """

    def __init__(self, space: VarSpace, fields, order=None, check: bool = True,
                 trials: int = 3, seed: int = 0):
        self.space = space
        self.n = space.dim
        self.fields = tuple(tuple(tuple(comp) for comp in fld) for fld in fields)
        self.a = len(self.fields)
        if self.a < 1:
            raise DimensionMismatch("a system needs at least one m-vector field")
        self.m = len(self.fields[0])
        self.order = order
        for fld in self.fields:
            if len(fld) != self.m:
                raise DimensionMismatch("all m-vector fields must share one m")
            for comp in fld:
                if len(comp) != self.n:
                    raise DimensionMismatch("field components need n coefficients")
        if check:
            self._check_commutation()
            self._check_pointwise_rank(trials, seed)

    def _apply(self, coeffs, f: Series) -> Series:
        out = Series.zero(self.space, f.order)
        for a, c in enumerate(coeffs):
            if c.is_zero():
                continue
            out = out + c * f.diff(self.space.names[a])
        return out

    def _check_commutation(self):
        for fld in self.fields:
            for i in range(self.m):
                for j in range(i + 1, self.m):
                    for a in range(self.n):
                        lhs = self._apply(fld[i], fld[j][a])
                        rhs = self._apply(fld[j], fld[i][a])
                        if lhs != rhs:
                            raise ChartMismatch(
                                "components within an m-vector field must commute"
                            )

    def _coefficient_rows(self):
        return [comp for fld in self.fields for comp in fld]

    def _check_pointwise_rank(self, trials, seed):
        rows = self._coefficient_rows()
        points = [[ZERO] * self.n]
        rng = random.Random(seed)
        points += [random_point(rng, self.n) for _ in range(trials)]
        for p in points:
            matrix = [[c.evaluate(p) for c in row] for row in rows]
            if exact_rank(matrix) != self.a * self.m:
                raise RankAssumptionViolated(
                    f"the {self.a * self.m} component fields must be pointwise "
                    f"independent (rank deficit at {p})"
                )


@dataclass(frozen=True)
class FlowMap:
    """exp(s.L) as a SeriesMap over (s, x); exact=True when the Lie series
    terminated below the truncation order."""

    map: SeriesMap
    exact: bool
    order: Optional[int]


def formal_flow(system: VFSystem, alpha: int, order: Optional[int],
                time_prefix: str = "s") -> FlowMap:
    """Truncated-exponential flow of the alpha-th m-vector field (0-based).

    With an integer order, the result is the degree-order jet in (s, x); with
    order=None the Lie series must terminate (polynomial flow) and the map is
    exact.  Satisfies exp(0.L) = id and the flow equation to the jet order.
    """
    field = system.fields[alpha]
    n, m = system.n, system.m
    times = tuple(f"{time_prefix}{j}" for j in range(1, m + 1))
    domain = VarSpace([(time_prefix, times)] + list(system.space.blocks))
    lifted = [[c.lift(domain) for c in comp] for comp in field]
    svars = [Series.variable(domain, t) for t in times]
    # D = sum_j s_j * L_j as one derivation over (s, x).  The Lie series is
    # accumulated exactly and truncated by total degree: each application of
    # D raises the s-degree by one, so order+1 terms always suffice, and a
    # dropped monomial of degree > order can never re-enter lower degrees.
    dcoeffs = [Series.zero(domain)] * domain.dim
    for j in range(m):
        for a in range(n):
            idx = domain.index_of(system.space.names[a])
            dcoeffs[idx] = dcoeffs[idx] + svars[j] * lifted[j][a]

    def D(f: Series) -> Series:
        out = Series.zero(domain)
        for a, c in enumerate(dcoeffs):
            if c.is_zero():
                continue
            out = out + c * f.diff(domain.names[a])
        return out

    def drop_high(f: Series):
        if order is None:
            return f, False
        kept = {e: c for e, c in f.terms.items() if sum(e) <= order}
        return Series(domain, kept, None), len(kept) != len(f.terms)

    cap = order if order is not None else 200
    comps = []
    exact = True
    for a in range(n):
        term = Series.variable(domain, system.space.names[a])
        total = term
        k = 0
        terminated = False
        dropped_any = False
        while k < cap:
            k += 1
            term, dropped = drop_high(D(term) * Fraction(1, k))
            dropped_any = dropped_any or dropped
            if term.is_zero():
                terminated = True
                break
            total = total + term
        if order is None and not terminated:
            raise SegreError(
                "Lie series does not terminate for this field; "
                "pass a finite truncation order"
            )
        exact = exact and terminated and not dropped_any
        comps.append(Series(domain, total.terms, order))
    return FlowMap(SeriesMap(comps, system.space), exact, order)


def _time_space(system: VFSystem, k: int) -> VarSpace:
    blocks = [
        (f"t{i}", tuple(f"t{i}_{j}" for j in range(1, system.m + 1)))
        for i in range(1, k + 1)
    ]
    return VarSpace(blocks)


def concatenated_flow(system: VFSystem, word: Sequence[int],
                      flows: Optional[dict] = None,
                      order: Optional[int] = None) -> Tuple[SeriesMap, bool]:
    """The map t_(k) -> flow_{word[k-1]}(t_k, ... flow_{word[0]}(t_1, 0) ...).

    Returns (map over the t-blocks, all_flows_exact).
    """
    k = len(word)
    space = _time_space(system, k)
    state = [Series.zero(space, order) for _ in range(system.n)]
    exact = True
    flows = flows if flows is not None else {}
    for step, alpha in enumerate(word, start=1):
        if alpha not in flows:
            flows[alpha] = formal_flow(system, alpha, order)
        fl = flows[alpha]
        exact = exact and fl.exact
        sub = {}
        for j in range(1, system.m + 1):
            sub[f"s{j}"] = Series.variable(space, f"t{step}_{j}", order)
        for a, name in enumerate(system.space.names):
            sub[name] = state[a]
        state = [c.compose(sub) for c in fl.map.components]
    return SeriesMap(state, system.space), exact


@dataclass(frozen=True)
class OrbitResult:
    word: tuple  # selected field indices (0-based), length mu0
    e: tuple
    kappa0: int
    mu0: int
    multitype: tuple
    orbit_dim: int
    ranks: tuple  # generic ranks along the greedy construction
    flows_exact: bool
    witness: Optional[dict]


def greedy_multitype(
    system: VFSystem,
    kmax: Optional[int] = None,
    order: Optional[int] = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    start_order: Optional[Sequence[int]] = None,
    witness: bool = True,
) -> OrbitResult:
    """Greedy rank-increment construction of a minimality multitype at 0.

    Ties among rank-maximizing candidate fields break to the lowest index;
    kmax bounds the word length (default a + n - a*m + 1); `order` is the
    flow jet order (None = require terminating Lie series).
    """
    a, m, n = system.a, system.m, system.n
    kmax = kmax or (a + (n - a * m) + 1)
    word = list(start_order) if start_order is not None else list(range(a))
    if sorted(word) != list(range(a)):
        raise DimensionMismatch("start_order must be a permutation of the fields")
    flows: dict = {}
    base_map, exact = concatenated_flow(system, word, flows, order)
    blocks = [f"t{i}" for i in range(1, a + 1)]
    zero_pt = [ZERO] * (a * m)
    if rank_at_point(base_map, blocks, zero_pt) != a * m:
        raise RankAssumptionViolated(
            "concatenated initial flows are rank-deficient at 0"
        )
    rank = generic_rank(base_map, wrt=blocks, trials=trials, seed=seed).rank
    ranks = [rank]
    e: List[int] = []
    while len(word) < kmax:
        best_alpha, best_rank = None, rank
        for alpha in range(a):
            cand, cexact = concatenated_flow(system, word + [alpha], flows, order)
            cblocks = [f"t{i}" for i in range(1, len(word) + 2)]
            r = generic_rank(
                cand, wrt=cblocks, trials=trials, seed=seed + len(word)
            ).rank
            exact = exact and cexact
            if r > best_rank:
                best_alpha, best_rank = alpha, r
        if best_alpha is None:
            break
        e.append(best_rank - rank)
        rank = best_rank
        ranks.append(rank)
        word.append(best_alpha)
    kappa0 = len(e)
    mu0 = a + kappa0
    result = OrbitResult(
        word=tuple(word),
        e=tuple(e),
        kappa0=kappa0,
        mu0=mu0,
        multitype=(m,) * a + tuple(e),
        orbit_dim=a * m + sum(e),
        ranks=tuple(ranks),
        flows_exact=exact,
        witness=None,
    )
    if witness:
        try:
            record = _orbit_witness(system, result, flows, order, trials, seed)
        except WitnessNotFound:
            record = None
        result = replace(result, witness=record)
    return result


def _orbit_witness(system, result, flows, order, trials, seed, retries=20):
    """Witness per the greedy construction: a point t* = (t_1*, .., t_{mu0-1}*, 0)
    of maximal rank whose reversed, negated flows return the endpoint to 0."""
    mu0 = result.mu0
    m = system.m
    target = result.orbit_dim
    fwd, exact = concatenated_flow(system, result.word, flows, order)
    blocks = [f"t{i}" for i in range(1, mu0 + 1)]
    rng = random.Random(seed)
    found = None
    for attempt in range(2 * retries):
        bound = NUM_BOUND if attempt < retries else NUM_BOUND * 10
        tblocks = [random_point(rng, m, bound) for _ in range(mu0 - 1)]
        point = [c for blk in tblocks for c in blk] + [ZERO] * m
        if rank_at_point(fwd, blocks, point) == target:
            found = tblocks
            break
    if found is None:
        raise WitnessNotFound("no maximal-rank point of the required shape")
    # reversed flows at the negated times, composed symbolically
    space = fwd.domain
    state = list(fwd.components)
    for i in range(mu0 - 1, 0, -1):
        alpha = result.word[i - 1]
        fl = flows[alpha]
        sub = {}
        for j in range(1, m + 1):
            sub[f"s{j}"] = Series.constant(space, -found[i - 1][j - 1], order)
        for a, name in enumerate(system.space.names):
            sub[name] = state[a]
        state = [c.compose(sub) for c in fl.map.components]
    ret = SeriesMap(state, system.space)
    point = [c for blk in found for c in blk] + [ZERO] * m
    value = ret.evaluate(point)
    returns = all(v == ZERO for v in value)
    rank = rank_at_point(ret, blocks, point)
    return {
        "t_star": tuple(tuple(blk) for blk in found) + ((ZERO,) * m,),
        "rank_at_t_star": rank,
        "returns_to_origin": returns,
        "exact_flows": exact,
    }


def orbit_dimension(system: VFSystem, kmax: Optional[int] = None,
                    order: Optional[int] = None, trials: int = DEFAULT_TRIALS,
                    seed: int = 0) -> int:
    return greedy_multitype(
        system, kmax, order, trials, seed, witness=False
    ).orbit_dim


def lie_span_dimension(system: VFSystem, max_length: Optional[int] = None) -> int:
    """Independent oracle: dimension at 0 of the Lie algebra generated by the
    a*m component fields, via left-normed brackets up to max_length.

    The default bound n + 2 is raised to (max coefficient degree + 1) when the
    coefficients have higher degree, which covers bracket jumps that appear
    only at the weighted order of the coefficients (e.g. the quadrics
    z = conj(z) + i (w conj(w))^k need length 2k); pass max_length explicitly
    to push further.
    """
    if max_length is None:
        degmax = max(
            (c.total_degree() for fld in system.fields for comp in fld for c in comp),
            default=0,
        )
        max_length = max(system.n + 2, degmax + 1)
    singles = [comp for fld in system.fields for comp in fld]
    space = system.space
    origin = [ZERO] * system.n

    def apply(coeffs, f):
        out = Series.zero(space, f.order)
        for a, c in enumerate(coeffs):
            if c.is_zero():
                continue
            out = out + c * f.diff(space.names[a])
        return out

    def brkt(x, y):
        return tuple(apply(x, y[a]) - apply(y, x[a]) for a in range(system.n))

    def key(f):
        return tuple(tuple(sorted(c.terms.items(), key=lambda t: t[0])) for c in f)

    rows = [[c.evaluate(origin) for c in f] for f in singles]
    level = list(singles)
    seen = {key(f) for f in singles}
    dim = exact_rank(rows)
    for _ in range(2, max_length + 1):
        new_level = []
        for g in singles:
            for h in level:
                b = brkt(g, h)
                if all(c.is_zero() for c in b):
                    continue
                kb = key(b)
                nb = key(tuple(-c for c in b))
                if kb in seen or nb in seen:
                    continue
                seen.add(kb)
                new_level.append(b)
        if not new_level:
            break
        level = new_level
        rows.extend([c.evaluate(origin) for c in f] for f in level)
        dim = exact_rank(rows)
        if dim == system.n:
            break
    return dim


def cr_pair_system(M: CRManifold, check: bool = True) -> VFSystem:
    """The complexified CR pair {L, Lbar} as a VFSystem over the intrinsic
    chart (w, zeta, xi); its greedy multitype reproduces the chain profile."""
    from .lie import tangent_fields

    L, Lbar = tangent_fields(M)
    space = L[0].space
    fields = [
        tuple(tuple(f.coefficients) for f in L),
        tuple(tuple(f.coefficients) for f in Lbar),
    ]
    return VFSystem(space, fields, order=M.order, check=check)
