"""Shared test utilities: random exact inputs and independent brute oracles."""

import random
from fractions import Fraction

from segrechains.lie import bracket, chart_point, tangent_fields
from segrechains.manifold import graph_from_real, real_graph_space
from segrechains.ranks import exact_rank
from segrechains.scalars import GaussianRational
from segrechains.series import Series


def small_scalar(rng, bound=5):
    return GaussianRational(
        Fraction(rng.randint(-bound, bound), rng.randint(1, 3)),
        Fraction(rng.randint(-bound, bound), rng.randint(1, 3)),
    )


def random_series(rng, space, max_degree=3, terms=4, order=None):
    """A sparse random polynomial over the given space."""
    out = Series.zero(space, order)
    for _ in range(terms):
        exp = [0] * space.dim
        for _ in range(rng.randint(0, max_degree)):
            exp[rng.randrange(space.dim)] += 1
        out = out + Series(space, {tuple(exp): small_scalar(rng)}, order)
    return out


def random_real_graph(m, rng, transversal=False, with_x=False, order=None,
                      max_degree=3, terms=3):
    """A random real hypersurface (d=1) built through the real graph form.

    Reality is enforced on coefficients: pairs h_{k,alpha,beta} /
    conj(h_{k,beta,alpha}).  With with_x=True terms may carry powers of the
    transversal variable (which needs a finite truncation order for the
    elimination); with transversal=True every term does, which forces
    theta(zeta, w, 0) = 0, a nonminimal input.
    """
    space = real_graph_space(m, 1)
    h = Series.zero(space, order)
    for _ in range(terms):
        alpha = [0] * m
        beta = [0] * m
        if transversal:
            k = rng.randint(1, 2)
        elif with_x:
            k = rng.randint(0, 1)
        else:
            k = 0
        for _ in range(rng.randint(1, max_degree)):
            alpha[rng.randrange(m)] += 1
        for _ in range(rng.randint(1, max_degree)):
            beta[rng.randrange(m)] += 1
        c = small_scalar(rng, bound=3)
        powers = {f"w{i + 1}": alpha[i] for i in range(m)}
        powers.update({f"wb{i + 1}": beta[i] for i in range(m)})
        powers["x1"] = k
        term = Series.monomial(space, powers, c, order)
        mirror_powers = {f"w{i + 1}": beta[i] for i in range(m)}
        mirror_powers.update({f"wb{i + 1}": alpha[i] for i in range(m)})
        mirror_powers["x1"] = k
        mirror = Series.monomial(space, mirror_powers, c.conjugate(), order)
        h = h + term + mirror
    return graph_from_real(m, 1, [h], order)


def random_hypersurface(rng, index):
    """Mixed stream of exact and truncated random hypersurfaces: rigid exact,
    Levi-flat, transversally perturbed, and forced-nonminimal inputs."""
    m = rng.choice([1, 2])
    mode = index % 4
    if mode == 0:
        return random_real_graph(m, rng)
    if mode == 1:
        return random_real_graph(m, rng, with_x=True, order=8)
    if mode == 2:
        return random_real_graph(m, rng, transversal=True, order=8)
    return graph_from_real(m, 1, ["0"])


def brute_bracket_span_dims(M, basepoint, max_length):
    """Independent ladder oracle: enumerate EVERY left-normed bracket word
    of each length (no sharing, no dedup) and row-reduce the values."""
    L, Lbar = tangent_fields(M)
    generators = L + Lbar
    point = chart_point(M, basepoint)

    def value_rows(fields):
        return [[c.evaluate(point) for c in f.coefficients] for f in fields]

    words = {1: list(generators)}
    dims = []
    rows = value_rows(generators)
    dims.append(exact_rank(rows))
    for mu in range(2, max_length + 1):
        words[mu] = [bracket(g, h) for g in generators for h in words[mu - 1]]
        rows = rows + value_rows(words[mu])
        dims.append(exact_rank(rows))
    return dims


def brute_ladder(M, basepoint, max_length):
    """(mu, l) jumps extracted from the brute-force span dimensions."""
    dims = brute_bracket_span_dims(M, basepoint, max_length)
    ladder = []
    for i in range(1, len(dims)):
        if dims[i] > dims[i - 1]:
            ladder.append((i + 1, dims[i] - dims[i - 1]))
    return ladder, dims
