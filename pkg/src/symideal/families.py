"""Generator families and spanning sets of multigraded components."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .actions import orbit_representative, orbit_sum
from .core import QQ, CoefficientRing, Polynomial, PolynomialError, grevlex_key, md_trim


def h_family(n: int, k: int, ring: CoefficientRing = QQ) -> Polynomial:
    """``x[1,1]...x[1,k] + ... + x[n,1]...x[n,k]``."""
    if n < 1 or k < 1:
        raise PolynomialError("h_family needs n >= 1 and k >= 1")
    return Polynomial(ring, n, {tuple((j, i, 1) for j in range(1, k + 1)): 1
                                for i in range(1, n + 1)})


def _permutation_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def determinant_gen(n: int, cols, ring: CoefficientRing = QQ) -> Polynomial:
    """Determinant of the ``n x n`` matrix ``(x[r, cols[c]])``."""
    cols = tuple(cols)
    if len(cols) != n or any(c < 1 for c in cols):
        raise PolynomialError(f"need {n} positive column indices, got {cols}")
    terms: dict = {}
    for perm in itertools.permutations(range(n)):
        exps: dict = {}
        for r in range(n):
            key = (cols[perm[r]], r + 1)
            exps[key] = exps.get(key, 0) + 1
        m = tuple(sorted((c, r, e) for (c, r), e in exps.items()))
        terms[m] = terms.get(m, 0) + _permutation_sign(perm)
    return Polynomial(ring, n, terms)


def cycle_product(k: int, ring: CoefficientRing = QQ) -> Polynomial:
    """``d_12 d_23 ... d_(k-1)k d_1k`` in two rows."""
    if k < 3:
        raise PolynomialError("cycle_product needs k >= 3")
    result = determinant_gen(2, (1, k), ring)
    for a in range(1, k):
        result = result * determinant_gen(2, (a, a + 1), ring)
    return result


def tilde_product(n: int, f: Polynomial) -> Polynomial:
    """``f(x[1,1], x[1,2], ...) * ... * f(x[n,1], x[n,2], ...)`` for a t-template ``f``."""
    if f.kind != "t" and not f.is_constant():
        raise PolynomialError("tilde_product needs a t-polynomial template")
    result = Polynomial.constant(f.ring, n)
    for i in range(1, n + 1):
        row = Polynomial(f.ring, n, {tuple((c, i, e) for c, _, e in m): v for m, v in f.items()})
        result = result * row
    return result


def monomials_of_multidegree(n: int, D) -> list:
    """Every monomial in ``n`` rows whose column totals equal ``D``."""
    D = md_trim(D)
    per_column = []
    for j, d in enumerate(D, start=1):
        if d == 0:
            continue
        choices = []
        for split in itertools.product(range(d + 1), repeat=n):
            if sum(split) == d:
                choices.append(tuple((j, i + 1, e) for i, e in enumerate(split) if e))
        per_column.append(choices)
    return [tuple(sorted(itertools.chain.from_iterable(combo)))
            for combo in itertools.product(*per_column)]


@lru_cache(maxsize=4096)
def symmetric_component_basis(n: int, D, ring: CoefficientRing = QQ) -> tuple:
    """Orbit sums, one per S_n-orbit of monomials of multidegree ``D``."""
    reps = {orbit_representative(m, n) for m in monomials_of_multidegree(n, D)}
    return tuple(orbit_sum(m, n, ring) for m in sorted(reps, key=grevlex_key, reverse=True))


@lru_cache(maxsize=4096)
def full_component_basis(n: int, D, ring: CoefficientRing = QQ) -> tuple:
    mons = sorted(monomials_of_multidegree(n, D), key=grevlex_key, reverse=True)
    return tuple(Polynomial(ring, n, {m: 1}) for m in mons)


def _pair_multisets(remaining: dict):
    """Multisets of pairs ``(a, b)``, ``a < b``, using column ``j`` exactly ``remaining[j]`` times."""
    live = sorted(j for j, d in remaining.items() if d)
    if not live:
        yield ()
        return
    a = live[0]
    need = remaining[a]
    partners = live[1:]
    for choice in itertools.combinations_with_replacement(partners, need):
        rest = dict(remaining)
        rest[a] = 0
        ok = True
        for b in choice:
            rest[b] -= 1
            if rest[b] < 0:
                ok = False
                break
        if not ok:
            continue
        for tail in _pair_multisets(rest):
            yield tuple((a, b) for b in choice) + tail


@lru_cache(maxsize=4096)
def l2_component_span(D, ring: CoefficientRing = QQ) -> tuple:
    """Products of determinants ``d_ab`` in two rows with multidegree ``D``.

    A spanning set, deduplicated as polynomials; empty when no multiset of
    column pairs covers ``D``.
    """
    D = md_trim(D)
    remaining = {j: d for j, d in enumerate(D, start=1) if d}
    seen = []
    for pairs in _pair_multisets(remaining):
        prod = Polynomial.constant(ring, 2)
        for a, b in pairs:
            prod = prod * determinant_gen(2, (a, b), ring)
        if prod and prod not in seen:
            seen.append(prod)
    return tuple(seen)
