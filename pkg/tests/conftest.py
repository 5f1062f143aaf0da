import random

import pytest
from hypothesis import strategies as st

from symideal.core import GF, QQ, ZZ, Polynomial


@pytest.fixture
def rng():
    return random.Random(20241016)


def random_poly(rng, ring, rows, max_col=3, max_terms=4, max_exp=2, max_vars=3, coeff_range=3):
    """A random x-polynomial with small support."""
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = {}
        for _ in range(rng.randint(0, max_vars)):
            key = (rng.randint(1, max_col), rng.randint(1, rows))
            exps[key] = exps.get(key, 0) + rng.randint(1, max_exp)
        m = tuple(sorted((c, r, e) for (c, r), e in exps.items()))
        c = rng.randint(-coeff_range, coeff_range)
        if ring.kind == "rat" and rng.random() < 0.3:
            from fractions import Fraction
            c = Fraction(c, rng.randint(1, 4))
        terms[m] = terms.get(m, 0) + c
    return Polynomial(ring, rows, terms)


RINGS = [ZZ, QQ, GF(2), GF(5)]


@st.composite
def polynomials(draw, ring=QQ, rows=2, max_col=3):
    mono = st.lists(st.tuples(st.integers(1, max_col), st.integers(1, rows), st.integers(1, 3)),
                    max_size=3, unique_by=lambda t: (t[0], t[1]))
    coeff = st.integers(-5, 5)
    if ring.kind == "rat":
        coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    terms = draw(st.lists(st.tuples(mono, coeff), max_size=4))
    return Polynomial(ring, rows, [(tuple(m), c) for m, c in terms])


def random_component_element(rng, ring, rows, D, ambient="symmetric"):
    """A random element of the ambient algebra's multidegree-D component."""
    from symideal.equivariant import Ambient, ambient_basis
    total = Polynomial.zero(ring, rows)
    for b in ambient_basis(Ambient(ambient), rows, D, ring):
        total = total + b.scale(rng.randrange(-2, 3) if ring.kind != "gf" else rng.randrange(ring.p))
    return total


def random_membership_instance(rng, ring, max_rows=3, max_width=3, max_degree=4):
    """A multihomogeneous target and symmetric generators for cross-oracle tests.

    The target's multidegree has full support on columns 1..width.  Half of
    the targets are built inside the ideal, the rest are random component
    elements.
    """
    from symideal.actions import ColumnMap, apply_column
    from symideal.equivariant import Ambient, EquivariantIdealSpec, ambient_basis
    rows = rng.randint(1, max_rows)
    width = rng.randint(1, max_width)
    degree = rng.randint(width, max(width, max_degree))
    D = [1] * width
    for _ in range(degree - width):
        D[rng.randrange(width)] += 1
    D = tuple(D)
    gens = []
    for _ in range(rng.randint(1, 2)):
        gw = rng.randint(1, width)
        G = tuple(rng.randint(1, 2) for _ in range(gw))
        if sum(G) > degree:
            G = (1,) * gw
        g = random_component_element(rng, ring, rows, G)
        if g:
            gens.append(g)
    if not gens:
        gens.append(ambient_basis(Ambient.SYMMETRIC, rows, (1,), ring)[0])
    spec = EquivariantIdealSpec(ring, rows, gens, Ambient.SYMMETRIC)
    if rng.random() < 0.5:
        f = Polynomial.zero(ring, rows)
        for _ in range(rng.randint(1, 3)):
            g = rng.choice(gens)
            cols = sorted(g.columns())
            targets = rng.sample(range(1, width + 1), len(cols))
            img = apply_column(ColumnMap(tuple(zip(cols, targets))), g)
            rest = [d - e for d, e in zip(D, img.multidegree() + (0,) * width)]
            if min(rest) < 0:
                continue
            f = f + img * random_component_element(rng, ring, rows, tuple(rest))
        if not f:
            f = random_component_element(rng, ring, rows, D)
    else:
        f = random_component_element(rng, ring, rows, D)
    return f, spec, width, degree
