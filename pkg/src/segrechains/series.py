"""Sparse multivariate polynomial / truncated power series arithmetic over Q(i).

A VarSpace is an ordered collection of named variable blocks with an optional
sigma-pairing (the involution that swaps each holomorphic variable with its
complexified conjugate).  A Series is a finite map from exponent vectors to
GaussianRational coefficients, either EXACT (a polynomial, order=None) or a
jet truncated at a total degree.  A SeriesMap is a tuple of Series sharing one
domain, with its components assigned to the variables of a codomain space.

All values are immutable after construction; results are kept canonical
(no zero coefficients, no terms beyond the truncation order), so equality
is plain dict equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DimensionMismatch,
    TruncationUnsound,
    UnknownVariable,
    UnpairedVariable,
    VarSpaceMismatch,
)
from .scalars import GaussianRational, ONE, ZERO


class VarSpace:
    """Ordered blocks of named variables with an optional sigma-pairing.

    blocks: sequence of (block_name, (var_name, ...)).
    pairs:  sequence of (var_a, var_b); each entry pairs a with b *and* b
            with a (a == b declares a self-paired variable, as used for
            chain parameters).
    """

    __slots__ = ("blocks", "names", "_index", "_partner", "_block_index")

    def __init__(self, blocks, pairs=()):
        blocks = tuple((str(bn), tuple(str(v) for v in vs)) for bn, vs in blocks)
        names = []
        block_index = {}
        for bn, vs in blocks:
            if bn in block_index:
                raise VarSpaceMismatch(f"duplicate block name {bn!r}")
            block_index[bn] = tuple(range(len(names), len(names) + len(vs)))
            names.extend(vs)
        if len(set(names)) != len(names):
            raise VarSpaceMismatch("variable names must be unique")
        index = {v: i for i, v in enumerate(names)}
        partner = {}
        for a, b in pairs:
            ia, ib = index.get(a), index.get(b)
            if ia is None or ib is None:
                raise UnknownVariable(f"pairing refers to unknown variable {a!r}/{b!r}")
            partner[ia] = ib
            partner[ib] = ia
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_partner", partner)
        object.__setattr__(self, "_block_index", block_index)

    def __setattr__(self, name, value):
        raise AttributeError("VarSpace is immutable")

    @property
    def dim(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def block(self, block_name: str):
        """Indices of a named block."""
        try:
            return self._block_index[block_name]
        except KeyError:
            raise UnknownVariable(f"unknown block {block_name!r}") from None

    def block_vars(self, block_name: str):
        return tuple(self.names[i] for i in self.block(block_name))

    def block_names(self):
        return tuple(bn for bn, _ in self.blocks)

    def partner(self, index: int) -> Optional[int]:
        return self._partner.get(index)

    def pairs(self):
        return tuple(sorted((min(a, b), max(a, b)) for a, b in self._partner.items()))

    def extended(self, blocks, pairs=()) -> "VarSpace":
        """A new space with extra blocks appended; existing pairing is kept."""
        old_pairs = [
            (self.names[a], self.names[b]) for a, b in self._partner.items() if a <= b
        ]
        return VarSpace(tuple(self.blocks) + tuple(blocks), old_pairs + list(pairs))

    def subspace(self, block_names) -> "VarSpace":
        """The space made of the given blocks, keeping internal pairings."""
        keep = set(block_names)
        blocks = [(bn, vs) for bn, vs in self.blocks if bn in keep]
        kept_names = {v for _, vs in blocks for v in vs}
        pairs = [
            (self.names[a], self.names[b])
            for a, b in self._partner.items()
            if a <= b and self.names[a] in kept_names and self.names[b] in kept_names
        ]
        return VarSpace(blocks, pairs)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, VarSpace):
            return NotImplemented
        return self.blocks == other.blocks and self._partner == other._partner

    def __hash__(self):
        return hash((self.blocks, tuple(sorted(self._partner.items()))))

    def __repr__(self):
        return f"VarSpace({', '.join(bn for bn, _ in self.blocks)})"


def _merge_order(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _as_scalar(c) -> GaussianRational:
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, (int, Fraction)):
        return GaussianRational(c)
    raise TypeError(f"not an exact scalar: {c!r}")


def grlex_key(exp):
    """Graded-lexicographic sort key used for canonical term order."""
    return (sum(exp), exp)


class Series:
    """A sparse polynomial (order=None) or truncated jet (order=N) over Q(i)."""

    __slots__ = ("space", "terms", "order")

    def __init__(self, space: VarSpace, terms=None, order: Optional[int] = None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = _as_scalar(c)
                if c.is_zero():
                    continue
                exp = tuple(exp)
                if len(exp) != space.dim:
                    raise DimensionMismatch(
                        f"exponent length {len(exp)} != space dim {space.dim}"
                    )
                if order is not None and sum(exp) > order:
                    continue
                clean[exp] = c
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(space: VarSpace, order=None) -> "Series":
        return Series(space, {}, order)

    @staticmethod
    def constant(space: VarSpace, c, order=None) -> "Series":
        zero_exp = (0,) * space.dim
        return Series(space, {zero_exp: _as_scalar(c)}, order)

    @staticmethod
    def variable(space: VarSpace, name: str, order=None) -> "Series":
        i = space.index_of(name)
        exp = tuple(1 if j == i else 0 for j in range(space.dim))
        return Series(space, {exp: ONE}, order)

    @staticmethod
    def monomial(space: VarSpace, powers: dict, c=1, order=None) -> "Series":
        exp = [0] * space.dim
        for name, e in powers.items():
            exp[space.index_of(name)] += int(e)
        return Series(space, {tuple(exp): _as_scalar(c)}, order)

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * self.space.dim, ZERO)

    def total_degree(self) -> int:
        """Degree of the stored polynomial part (-1 for the zero series)."""
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, powers: dict) -> GaussianRational:
        exp = [0] * self.space.dim
        for name, e in powers.items():
            exp[self.space.index_of(name)] = int(e)
        return self.terms.get(tuple(exp), ZERO)

    def used_indices(self):
        used = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(i)
        return used

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]))

    # -- arithmetic --------------------------------------------------------

    def _check_space(self, other: "Series"):
        if self.space != other.space:
            raise VarSpaceMismatch("series live over different variable spaces")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Series.constant(self.space, other, self.order)
        if not isinstance(other, Series):
            return NotImplemented
        self._check_space(other)
        order = _merge_order(self.order, other.order)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, ZERO) + c
            if s.is_zero():
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return Series(self.space, terms, order)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.space, {e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Series.constant(self.space, other, self.order)
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = _as_scalar(other)
            if c.is_zero():
                return Series.zero(self.space, self.order)
            return Series(
                self.space, {e: k * c for e, k in self.terms.items()}, self.order
            )
        if not isinstance(other, Series):
            return NotImplemented
        self._check_space(other)
        order = _merge_order(self.order, other.order)
        terms = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if order is not None and d1 + sum(e2) > order:
                    continue
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(exp, ZERO) + c1 * c2
                if s.is_zero():
                    terms.pop(exp, None)
                else:
                    terms[exp] = s
        return Series(self.space, terms, order)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Series.constant(self.space, 1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def truncate(self, order: Optional[int]) -> "Series":
        if order is None:
            return Series(self.space, self.terms, None)
        return Series(self.space, self.terms, _merge_order(self.order, order))

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.space == other.space
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(
            (self.space, self.order, tuple(sorted(self.terms.items(), key=lambda t: t[0])))
        )

    # -- calculus ------------------------------------------------------------

    def diff(self, name: str) -> "Series":
        """Partial derivative; the truncation order drops by one."""
        i = self.space.index_of(name)
        terms = {}
        for exp, c in self.terms.items():
            e = exp[i]
            if e == 0:
                continue
            new = list(exp)
            new[i] = e - 1
            terms[tuple(new)] = c * e
        order = None if self.order is None else max(self.order - 1, 0)
        return Series(self.space, terms, order)

    def evaluate(self, point: Sequence) -> GaussianRational:
        """Exact value of the stored polynomial part at a Gaussian-rational point.

        In truncated mode this is jet evaluation: the value of the stored
        polynomial, used only for rank sampling.
        """
        if len(point) != self.space.dim:
            raise DimensionMismatch(
                f"point dimension {len(point)} != space dim {self.space.dim}"
            )
        point = [_as_scalar(p) for p in point]
        total = ZERO
        for exp, c in self.terms.items():
            v = c
            for i, e in enumerate(exp):
                if e:
                    v = v * point[i] ** e
            total = total + v
        return total

    def sigma_conjugate(self) -> "Series":
        """Conjugate coefficients and transport exponents along the sigma-pairing."""
        space = self.space
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * space.dim
            for i, e in enumerate(exp):
                if not e:
                    continue
                j = space.partner(i)
                if j is None:
                    raise UnpairedVariable(
                        f"variable {space.names[i]!r} has no sigma-partner"
                    )
                new[j] += e
            terms[tuple(new)] = c.conjugate()
        return Series(space, terms, self.order)

    def compose(self, sub) -> "Series":
        """Substitute a series for every variable.

        `sub` is a SeriesMap whose codomain is this series' space, or a dict
        mapping variable names to Series over a common target space.  In
        truncated mode every substituted series that actually occurs must
        have zero constant term, otherwise the truncated result would be
        wrong (TruncationUnsound).
        """
        if isinstance(sub, SeriesMap):
            mapping = sub.as_subst()
        else:
            mapping = dict(sub)
        missing = [n for n in self.space.names if n not in mapping]
        if missing:
            raise UnknownVariable(f"substitution missing variables {missing}")
        used = self.used_indices()
        target = None
        order = self.order
        for i in sorted(used):
            s = mapping[self.space.names[i]]
            if target is None:
                target = s.space
            elif s.space != target:
                raise VarSpaceMismatch("substituted series live over different spaces")
            if self.order is not None and not s.constant_term().is_zero():
                raise TruncationUnsound(
                    f"substituting a series with nonzero constant term for "
                    f"{self.space.names[i]!r} into a truncated series"
                )
            order = _merge_order(order, s.order)
        if target is None:
            # no variable occurs: constant (or zero) series transported verbatim
            for s in mapping.values():
                target = s.space
                order = _merge_order(order, s.order)
                break
            if target is None:
                raise VarSpaceMismatch("empty substitution for a constant series")
        result = Series.zero(target, order)
        powers = {}  # var index -> [1, s, s^2, ...]
        for exp, c in self.terms.items():
            prod = Series.constant(target, c, order)
            for i, e in enumerate(exp):
                if not e:
                    continue
                cache = powers.setdefault(i, [Series.constant(target, 1, order)])
                while len(cache) <= e:
                    cache.append(cache[-1] * mapping[self.space.names[i]])
                prod = prod * cache[e]
            result = result + prod
        return result

    def lift(self, space: VarSpace) -> "Series":
        """Re-express over a larger space containing all used variables (by name)."""
        if space == self.space:
            return self
        table = []
        for i, name in enumerate(self.space.names):
            table.append(space.index_of(name) if name in space else None)
        terms = {}
        for exp, c in self.terms.items():
            new = [0] * space.dim
            for i, e in enumerate(exp):
                if not e:
                    continue
                if table[i] is None:
                    raise UnknownVariable(
                        f"variable {self.space.names[i]!r} absent from target space"
                    )
                new[table[i]] = e
            terms[tuple(new)] = c
        return Series(space, terms, self.order)

    # -- display ---------------------------------------------------------

    def __repr__(self):
        from .exprs import format_series

        tag = "EXACT" if self.order is None else f"O({self.order})"
        return f"Series[{tag}]({format_series(self)})"


class SeriesMap:
    """An ordered tuple of Series over one domain, one per codomain variable."""

    __slots__ = ("components", "domain", "codomain")

    def __init__(self, components: Iterable[Series], codomain: VarSpace):
        components = tuple(components)
        if not components:
            raise DimensionMismatch("a SeriesMap needs at least one component")
        domain = components[0].space
        order = components[0].order
        for s in components:
            if s.space != domain:
                raise VarSpaceMismatch("components live over different domains")
            if s.order != order:
                raise VarSpaceMismatch("components carry different truncation orders")
        if len(components) != codomain.dim:
            raise DimensionMismatch(
                f"{len(components)} components for codomain of dim {codomain.dim}"
            )
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)

    def __setattr__(self, name, value):
        raise AttributeError("SeriesMap is immutable")

    @property
    def order(self):
        return self.components[0].order

    def as_subst(self) -> dict:
        return dict(zip(self.codomain.names, self.components))

    def component(self, name: str) -> Series:
        return self.components[self.codomain.index_of(name)]

    def evaluate(self, point: Sequence):
        return [s.evaluate(point) for s in self.components]

    def jacobian(self, wrt=None):
        """Matrix of Series: rows follow components, columns the given variables.

        `wrt` is a list of variable names or block names of the domain
        (defaults to all domain variables).
        """
        names = self._resolve_names(wrt)
        return [[s.diff(v) for v in names] for s in self.components]

    def _resolve_names(self, wrt):
        if wrt is None:
            return list(self.domain.names)
        names = []
        for item in wrt:
            if item in self.domain.block_names():
                names.extend(self.domain.block_vars(item))
            else:
                self.domain.index_of(item)  # raises UnknownVariable if absent
                names.append(item)
        return names

    def project(self, names, codomain: VarSpace) -> "SeriesMap":
        """Keep the components assigned to `names`, in that order."""
        comps = [self.component(n) for n in names]
        return SeriesMap(comps, codomain)

    def __eq__(self, other):
        if not isinstance(other, SeriesMap):
            return NotImplemented
        return (
            self.components == other.components and self.codomain == other.codomain
        )

    def __hash__(self):
        return hash((self.components, self.codomain))

    def __repr__(self):
        return f"SeriesMap({self.domain!r} -> {self.codomain!r})"


def identity_map(space: VarSpace, order=None) -> SeriesMap:
    return SeriesMap(
        [Series.variable(space, n, order) for n in space.names], space
    )


def constant_map(domain: VarSpace, values, codomain: VarSpace, order=None) -> SeriesMap:
    comps = [Series.constant(domain, v, order) for v in values]
    return SeriesMap(comps, codomain)
