"""CR-generic manifolds in graph form and their complexified geometry.

A manifold of CR dimension m and codimension d is stored through the d-tuple
theta_bar over the ambient complexified coordinates (w, z, zeta, xi): the
graph equations are z_j = qbar_j := xi_j + i*theta_bar_j(w, zeta, xi), or
equivalently xi_j = q_j := z_j - i*theta_j(zeta, w, z) with theta the
sigma-conjugate of theta_bar.  Construction validates the reality identity

    theta(zeta, w, qbar(w, zeta, xi)) == theta_bar(w, zeta, xi)

term by term (exactly in polynomial mode, modulo the truncation order
otherwise); failure raises RealityViolation with the first bad monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    OffManifold,
    RealityViolation,
    SegreError,
    SingularInput,
)
from .exprs import format_series, parse_series
from .scalars import GaussianRational, I, ZERO
from .series import Series, SeriesMap, VarSpace, grlex_key


def ambient_space(m: int, d: int) -> VarSpace:
    """(w, z, zeta, xi) with the sigma-pairing w<->zeta, z<->xi."""
    w = tuple(f"w{i}" for i in range(1, m + 1))
    z = tuple(f"z{j}" for j in range(1, d + 1))
    zeta = tuple(f"zeta{i}" for i in range(1, m + 1))
    xi = tuple(f"xi{j}" for j in range(1, d + 1))
    pairs = list(zip(w, zeta)) + list(zip(z, xi))
    return VarSpace(
        [("w", w), ("z", z), ("zeta", zeta), ("xi", xi)], pairs
    )


def real_graph_space(m: int, d: int) -> VarSpace:
    """(w, wb, x) used by the real graph form 2*Im(z) = h(w, conj(w), Re(z))."""
    w = tuple(f"w{i}" for i in range(1, m + 1))
    wb = tuple(f"wb{i}" for i in range(1, m + 1))
    x = tuple(f"x{j}" for j in range(1, d + 1))
    return VarSpace([("w", w), ("wb", wb), ("x", x)], list(zip(w, wb)) + [(v, v) for v in x])


class CRManifold:
    """Validated CR-generic manifold in graph coordinates."""

    def __init__(self, m: int, d: int, theta_bar: Sequence[Series], order, space: VarSpace):
        self.m = m
        self.d = d
        self.n = m + d
        self.order = order
        self.space = space
        self.theta_bar = tuple(theta_bar)
        self.theta = tuple(t.sigma_conjugate() for t in self.theta_bar)
        xi_vars = space.block_vars("xi")
        z_vars = space.block_vars("z")
        self.qbar = tuple(
            Series.variable(space, xi_vars[j], order) + I * self.theta_bar[j]
            for j in range(d)
        )
        self.q = tuple(
            Series.variable(space, z_vars[j], order) - I * self.theta[j]
            for j in range(d)
        )
        self._graph_subst = None
        self._validate_reality()

    # -- derived data -----------------------------------------------------

    def rho(self) -> Tuple[Series, ...]:
        """Defining d-tuple of the complexification: rho_j = z_j - qbar_j."""
        z_vars = self.space.block_vars("z")
        return tuple(
            Series.variable(self.space, z_vars[j], self.order) - self.qbar[j]
            for j in range(self.d)
        )

    def graph_subst(self) -> dict:
        """Substitution restricting an ambient series to the graph z = qbar."""
        if self._graph_subst is None:
            sub = {
                n: Series.variable(self.space, n, self.order)
                for n in self.space.names
            }
            for j, zn in enumerate(self.space.block_vars("z")):
                sub[zn] = self.qbar[j]
            self._graph_subst = sub
        return self._graph_subst

    def restrict(self, s: Series) -> Series:
        """Restrict an ambient series to the manifold (substitute z = qbar)."""
        return s.compose(self.graph_subst())

    # -- validation ---------------------------------------------------------

    def _validate_reality(self):
        w_vars = self.space.block_vars("w")
        zeta_vars = self.space.block_vars("zeta")
        z_vars = self.space.block_vars("z")
        xi_vars = self.space.block_vars("xi")
        for j, tb in enumerate(self.theta_bar):
            if not tb.constant_term().is_zero():
                raise RealityViolation(
                    f"theta_bar_{j + 1} has a nonzero constant term", component=j + 1
                )
            bad = tb.used_indices() - {
                self.space.index_of(v) for v in w_vars + zeta_vars + xi_vars
            }
            if bad:
                names = [self.space.names[i] for i in sorted(bad)]
                raise RealityViolation(
                    f"theta_bar_{j + 1} uses forbidden variables {names}",
                    component=j + 1,
                )
        sub = {n: Series.variable(self.space, n, self.order) for n in self.space.names}
        for j, zn in enumerate(z_vars):
            sub[zn] = self.qbar[j]
        for j in range(self.d):
            residual = self.theta[j].compose(sub) - self.theta_bar[j]
            if not residual.is_zero():
                exp = min(residual.terms, key=grlex_key)
                mono = format_series(
                    Series(self.space, {exp: residual.terms[exp]}, self.order)
                )
                raise RealityViolation(
                    f"reality identity fails for component {j + 1}: "
                    f"first offending monomial {mono}",
                    component=j + 1,
                    monomial=mono,
                )

    def __repr__(self):
        tag = "EXACT" if self.order is None else f"N={self.order}"
        return f"CRManifold(m={self.m}, d={self.d}, {tag})"


def new_manifold(m: int, d: int, theta_bar, order=None) -> CRManifold:
    """Build and validate a manifold from its graph data.

    theta_bar entries may be expression strings or Series over ambient_space(m, d).
    order=None selects polynomial (EXACT) mode.
    """
    if len(theta_bar) != d:
        raise DimensionMismatch(f"expected {d} graph components, got {len(theta_bar)}")
    space = ambient_space(m, d)
    parsed = []
    for item in theta_bar:
        if isinstance(item, str):
            parsed.append(parse_series(item, space, order))
        else:
            parsed.append(item.lift(space).truncate(order))
    return CRManifold(m, d, parsed, order, space)


def graph_from_real(m: int, d: int, h, order=None, max_iter: int = 32) -> CRManifold:
    """Convert the real graph form 2*Im(z) = h(w, conj(w), Re(z)) to theta_bar.

    Requires h(0) = 0, dh(0) = 0 and the reality condition (swapping the w
    and wb blocks and conjugating coefficients must fix h).  The transversal
    part Re(z) is eliminated by the fixed-point iteration
    x = xi + (i/2) h(w, zeta, x); for polynomial h with transversal
    dependence that does not terminate, a finite truncation order is required.
    """
    hspace = real_graph_space(m, d)
    hs = []
    for item in h:
        if isinstance(item, str):
            hs.append(parse_series(item, hspace, order))
        else:
            hs.append(item.lift(hspace).truncate(order))
    if len(hs) != d:
        raise DimensionMismatch(f"expected {d} components, got {len(hs)}")
    for j, s in enumerate(hs):
        if not s.constant_term().is_zero():
            raise SingularInput(f"h_{j + 1}(0) != 0")
        if any(sum(exp) == 1 for exp in s.terms):
            raise SingularInput(f"dh_{j + 1}(0) != 0")
        if s.sigma_conjugate() != s:
            raise RealityViolation(
                f"h_{j + 1} violates the reality condition on its coefficients",
                component=j + 1,
            )
    space = ambient_space(m, d)
    w_vars = space.block_vars("w")
    zeta_vars = space.block_vars("zeta")
    xi_vars = space.block_vars("xi")
    base = {f"w{i + 1}": Series.variable(space, w_vars[i], order) for i in range(m)}
    base.update(
        {f"wb{i + 1}": Series.variable(space, zeta_vars[i], order) for i in range(m)}
    )
    half_i = GaussianRational(0, "1/2")
    x = [Series.variable(space, xi_vars[j], order) for j in range(d)]
    limit = max_iter if order is None else max(order, 1)
    converged = False
    for _ in range(limit):
        sub = dict(base)
        sub.update({f"x{j + 1}": x[j] for j in range(d)})
        new_x = [
            Series.variable(space, xi_vars[j], order) + half_i * hs[j].compose(sub)
            for j in range(d)
        ]
        if new_x == x:
            converged = True
            break
        x = new_x
    if order is None and not converged:
        raise SegreError(
            "transversal elimination does not terminate for this polynomial "
            "input; rebuild with a finite truncation order"
        )
    sub = dict(base)
    sub.update({f"x{j + 1}": x[j] for j in range(d)})
    theta_bar = [hs[j].compose(sub) for j in range(d)]
    return CRManifold(m, d, theta_bar, order, space)


# -- basepoints -------------------------------------------------------------


@dataclass(frozen=True)
class Basepoint:
    """A point of the complexified manifold: the origin, numeric, or symbolic.

    Numeric basepoints must satisfy z = qbar(w, zeta, xi) exactly.  A symbolic
    basepoint stands for a Zariski-generic point: fresh parameter blocks
    pw, pzeta, pxi are appended to chain domains and z is the derived series
    qbar(pw, pzeta, pxi).
    """

    kind: str  # "origin" | "numeric" | "symbolic"
    w: Optional[tuple] = None
    z: Optional[tuple] = None
    zeta: Optional[tuple] = None
    xi: Optional[tuple] = None

    @staticmethod
    def origin() -> "Basepoint":
        return Basepoint("origin")

    @staticmethod
    def numeric(M: CRManifold, w, z, zeta, xi) -> "Basepoint":
        w, z, zeta, xi = (tuple(v) for v in (w, z, zeta, xi))
        if (len(w), len(z), len(zeta), len(xi)) != (M.m, M.d, M.m, M.d):
            raise DimensionMismatch("basepoint coordinate sizes do not match (m, d)")
        point = list(w) + [ZERO] * M.d + list(zeta) + list(xi)
        for j in range(M.d):
            if M.qbar[j].evaluate(point) != z[j]:
                raise OffManifold(
                    f"basepoint violates z_{j + 1} = qbar_{j + 1}(w, zeta, xi)"
                )
        return Basepoint("numeric", w, z, zeta, xi)

    @staticmethod
    def symbolic() -> "Basepoint":
        return Basepoint("symbolic")

    def param_blocks(self, M: CRManifold):
        """Extra variable blocks a symbolic basepoint adds to a chain domain."""
        if self.kind != "symbolic":
            return ()
        return (
            ("pw", tuple(f"pw{i}" for i in range(1, M.m + 1))),
            ("pzeta", tuple(f"pzeta{i}" for i in range(1, M.m + 1))),
            ("pxi", tuple(f"pxi{j}" for j in range(1, M.d + 1))),
        )

    def state_components(self, M: CRManifold, space: VarSpace, order):
        """The 2n starting components (w, z, zeta, xi) over a chain domain."""
        if self.kind == "origin":
            return [Series.zero(space, order) for _ in range(2 * M.n)]
        if self.kind == "numeric":
            values = list(self.w) + list(self.z) + list(self.zeta) + list(self.xi)
            return [Series.constant(space, v, order) for v in values]
        pw = [Series.variable(space, f"pw{i}", order) for i in range(1, M.m + 1)]
        pzeta = [Series.variable(space, f"pzeta{i}", order) for i in range(1, M.m + 1)]
        pxi = [Series.variable(space, f"pxi{j}", order) for j in range(1, M.d + 1)]
        sub = _ambient_subst(M, space, pw, pzeta, pxi, order)
        z = [M.qbar[j].compose(sub) for j in range(M.d)]
        return pw + z + pzeta + pxi


def _ambient_subst(M: CRManifold, space, w_vals, zeta_vals, xi_vals, order, z_vals=None):
    """Substitution ambient -> target space from component series."""
    sub = {}
    for i, name in enumerate(M.space.block_vars("w")):
        sub[name] = w_vals[i]
    for i, name in enumerate(M.space.block_vars("zeta")):
        sub[name] = zeta_vals[i]
    for j, name in enumerate(M.space.block_vars("xi")):
        sub[name] = xi_vals[j]
    for j, name in enumerate(M.space.block_vars("z")):
        sub[name] = z_vals[j] if z_vals is not None else Series.zero(space, order)
    return sub


# -- ambient CR vector fields ------------------------------------------------


@dataclass(frozen=True)
class MVectorField:
    """An m-tuple of commuting coordinate vector fields in the ambient chart.

    coefficients[i][a] is the coefficient series of d/d(ambient var a) in the
    i-th component field.
    """

    manifold: CRManifold
    label: str  # "L" | "Lbar"
    coefficients: tuple

    def apply(self, i: int, f: Series) -> Series:
        """Derivation: component i applied to an ambient series."""
        space = self.manifold.space
        out = Series.zero(space, f.order)
        for a, coeff in enumerate(self.coefficients[i]):
            if coeff.is_zero():
                continue
            out = out + coeff * f.diff(space.names[a])
        return out

    def bracket_coefficients(self, i: int, j: int):
        """Ambient coefficients of [X_i, X_j] (used by the commutation check)."""
        space = self.manifold.space
        out = []
        for a in range(space.dim):
            cj = self.coefficients[j][a]
            ci = self.coefficients[i][a]
            out.append(self.apply(i, cj) - self.apply(j, ci))
        return out


def vector_fields(M: CRManifold) -> Tuple[MVectorField, MVectorField]:
    """The complexified CR pair: L = d/dw + i*theta_bar_w d/dz and
    Lbar = d/dzeta - i*theta_zeta d/dxi, with symbolic tangency and
    commutativity certificates."""
    space = M.space
    w_vars = space.block_vars("w")
    zeta_vars = space.block_vars("zeta")
    z_idx = space.block("z")
    xi_idx = space.block("xi")
    zero = Series.zero(space, M.order)

    L_rows = []
    for i, wv in enumerate(w_vars):
        row = [zero] * space.dim
        row[space.index_of(wv)] = Series.constant(space, 1, M.order)
        for j in range(M.d):
            row[z_idx[j]] = I * M.theta_bar[j].diff(wv)
        L_rows.append(tuple(row))
    Lbar_rows = []
    for i, zv in enumerate(zeta_vars):
        row = [zero] * space.dim
        row[space.index_of(zv)] = Series.constant(space, 1, M.order)
        for j in range(M.d):
            row[xi_idx[j]] = -I * M.theta[j].diff(zv)
        Lbar_rows.append(tuple(row))
    L = MVectorField(M, "L", tuple(L_rows))
    Lbar = MVectorField(M, "Lbar", tuple(Lbar_rows))
    for X in (L, Lbar):
        _certify_tangency(M, X)
        _certify_commutation(M, X)
    return L, Lbar


def _certify_tangency(M: CRManifold, X: MVectorField):
    for i in range(M.m):
        for j, r in enumerate(M.rho()):
            if not M.restrict(X.apply(i, r)).is_zero():
                raise SegreError(
                    f"internal: {X.label}^{i + 1} is not tangent to rho_{j + 1}"
                )


def _certify_commutation(M: CRManifold, X: MVectorField):
    for i in range(M.m):
        for j in range(i + 1, M.m):
            if any(not c.is_zero() for c in X.bracket_coefficients(i, j)):
                raise SegreError(
                    f"internal: components {i + 1},{j + 1} of {X.label} do not commute"
                )


# -- complexified Segre varieties --------------------------------------------


def segre_leaf(M: CRManifold, tau_p=None, t_p=None, order=None) -> SeriesMap:
    """Parametrized complexified Segre variety.

    With tau_p=(zeta_p, xi_p): the leaf w |-> (w, qbar(w, zeta_p, xi_p),
    zeta_p, xi_p) of the first flow foliation.  With t_p=(w_p, z_p): the
    conjugate leaf zeta |-> (w_p, z_p, zeta, q(zeta, w_p, z_p)).  Fixed-point
    coordinates may be numeric tuples or the string "symbolic".
    """
    if (tau_p is None) == (t_p is None):
        raise DimensionMismatch("give exactly one of tau_p, t_p")
    order = M.order if order is None else order
    conjugate = t_p is not None
    leaf_block = ("zeta", tuple(f"zeta{i}" for i in range(1, M.m + 1))) if conjugate \
        else ("w", tuple(f"w{i}" for i in range(1, M.m + 1)))
    symbolic = (tau_p == "symbolic") or (t_p == "symbolic")
    blocks = [leaf_block]
    if symbolic:
        if conjugate:
            blocks += [
                ("pw", tuple(f"pw{i}" for i in range(1, M.m + 1))),
                ("pz", tuple(f"pz{j}" for j in range(1, M.d + 1))),
            ]
        else:
            blocks += [
                ("pzeta", tuple(f"pzeta{i}" for i in range(1, M.m + 1))),
                ("pxi", tuple(f"pxi{j}" for j in range(1, M.d + 1))),
            ]
    space = VarSpace(blocks, [(v, v) for v in leaf_block[1]])
    leaf_vars = [Series.variable(space, v, order) for v in leaf_block[1]]
    zero = Series.zero(space, order)

    if not conjugate:
        if symbolic:
            zeta_p = [Series.variable(space, f"pzeta{i}", order) for i in range(1, M.m + 1)]
            xi_p = [Series.variable(space, f"pxi{j}", order) for j in range(1, M.d + 1)]
        else:
            zeta_c, xi_c = tau_p
            zeta_p = [Series.constant(space, v, order) for v in zeta_c]
            xi_p = [Series.constant(space, v, order) for v in xi_c]
        sub = _ambient_subst(M, space, leaf_vars, zeta_p, xi_p, order)
        z = [M.qbar[j].compose(sub) for j in range(M.d)]
        comps = leaf_vars + z + zeta_p + xi_p
    else:
        if symbolic:
            w_p = [Series.variable(space, f"pw{i}", order) for i in range(1, M.m + 1)]
            z_p = [Series.variable(space, f"pz{j}", order) for j in range(1, M.d + 1)]
        else:
            w_c, z_c = t_p
            w_p = [Series.constant(space, v, order) for v in w_c]
            z_p = [Series.constant(space, v, order) for v in z_c]
        sub = _ambient_subst(M, space, w_p, leaf_vars, [zero] * M.d, order, z_vals=z_p)
        xi = [M.q[j].compose(sub) for j in range(M.d)]
        comps = w_p + z_p + leaf_vars + xi
    return SeriesMap(comps, M.space)
