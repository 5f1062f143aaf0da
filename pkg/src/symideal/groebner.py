"""Buchberger's algorithm with cofactor tracking, multivariate division and
ideal membership over QQ or GF(p).

Polynomials are handled internally as ``{monomial: coefficient}`` dicts.  Every
basis element carries its expression in the original generators, so a
membership verdict comes with cofactors ``c_i`` satisfying ``f = sum c_i g_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (GREVLEX, Polynomial, PolynomialError, grevlex_key, mono_degree,
                   mono_div, mono_divides, mono_lcm, mono_mul)


def _check_field(polys, order: str):
    if order != GREVLEX:
        raise PolynomialError(f"unsupported monomial order {order!r}")
    rings = {f.ring for f in polys}
    if len(rings) > 1:
        raise PolynomialError("polynomials over different rings")
    for ring in rings:
        if not ring.is_field:
            raise PolynomialError(f"{ring} is not a field")


def _axpy(target: dict, src: dict, mono, coeff, ring):
    """``target -= coeff * mono * src`` in place."""
    for m, c in src.items():
        mm = mono_mul(m, mono)
        v = ring(target.get(mm, 0) - coeff * c)
        if v:
            target[mm] = v
        else:
            target.pop(mm, None)


def _cof_axpy(target: dict, src: dict, mono, coeff, ring):
    for idx, poly in src.items():
        dst = target.setdefault(idx, {})
        _axpy(dst, poly, mono, coeff, ring)
        if not dst:
            del target[idx]


def _scaled(d: dict, c, ring) -> dict:
    return {m: v for m, a in d.items() if (v := ring(a * c))}


@dataclass
class _Element:
    poly: dict
    cof: dict  # generator index -> cofactor dict
    lm: tuple = field(init=False)

    def __post_init__(self):
        self.lm = max(self.poly, key=grevlex_key)


def _reduce(p: dict, cof: dict, basis: list, ring, full: bool = True):
    """Reduce ``p`` (with its cofactor record) modulo ``basis``; monic basis assumed."""
    p = dict(p)
    cof = {i: dict(v) for i, v in cof.items()}
    rem: dict = {}
    while p:
        m = max(p, key=grevlex_key)
        c = p[m]
        for el in basis:
            if mono_divides(el.lm, m):
                t = mono_div(m, el.lm)
                _axpy(p, el.poly, t, c, ring)
                _cof_axpy(cof, el.cof, t, c, ring)
                break
        else:
            if not full:
                rem.update(p)
                break
            rem[m] = c
            del p[m]
    return rem, cof


def divide(f: Polynomial, divisors: list, order: str = GREVLEX):
    """Multivariate division: ``f = sum q_i d_i + r`` with no term of ``r``
    divisible by any leading monomial.  Returns ``(quotients, remainder)``."""
    _check_field([f, *divisors], order)
    ring = f.ring
    divs = [(dict(d.items()), d.leading_monomial(), d.leading_coefficient()) if d else None
            for d in divisors]
    p = dict(f.items())
    rem: dict = {}
    quot = [dict() for _ in divisors]
    while p:
        m = max(p, key=grevlex_key)
        c = p[m]
        for i, d in enumerate(divs):
            if d is not None and mono_divides(d[1], m):
                t = mono_div(m, d[1])
                a = ring(c * ring.inv(d[2]))
                v = ring(quot[i].get(t, 0) + a)
                if v:
                    quot[i][t] = v
                else:
                    quot[i].pop(t, None)
                _axpy(p, d[0], t, a, ring)
                break
        else:
            rem[m] = c
            del p[m]
    quotients = [f._new(q) for q in quot]
    remainder = f._new(rem)
    total = remainder
    for q, d in zip(quotients, divisors):
        total = total + q * d
    assert total == f, "division reconstruction failed"
    return quotients, remainder


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis, elements sorted by descending leading monomial.

    ``cofactors[k][i]`` expresses element ``k`` in terms of generator ``i``.
    """

    order: str
    elements: tuple
    variables: frozenset
    generators: tuple
    cofactors: tuple
    degree_bound: int | None = None

    def normal_form(self, f: Polynomial) -> Polynomial:
        if not self.elements:
            return f
        return divide(f, list(self.elements), self.order)[1]

    def is_groebner(self) -> bool:
        """Buchberger criterion: every S-polynomial reduces to zero."""
        els = list(self.elements)
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                if self.normal_form(s_polynomial(els[i], els[j])):
                    return False
        return True


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(lf, lg)
    ring = f.ring
    return (f.mul_term(mono_div(lcm, lf), ring.inv(f.leading_coefficient()))
            - g.mul_term(mono_div(lcm, lg), ring.inv(g.leading_coefficient())))


def _coprime(a, b) -> bool:
    va = {(c, r) for c, r, _ in a}
    return not any((c, r) in va for c, r, _ in b)


def _make_monic(poly: dict, cof: dict, ring) -> _Element:
    lc = poly[max(poly, key=grevlex_key)]
    inv = ring.inv(lc)
    return _Element(_scaled(poly, inv, ring),
                    {i: _scaled(v, inv, ring) for i, v in cof.items()})


def _tracked_buchberger(gens: list, ring, degree_bound=None) -> list:
    basis: list = []
    for i, g in enumerate(gens):
        if g:
            basis.append(_make_monic(dict(g.items()), {i: {(): ring(1)}}, ring))
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_key(pq):
        a, b = pq
        return (mono_degree(mono_lcm(basis[a].lm, basis[b].lm)), a, b)

    while pairs:
        if any(not el.lm for el in basis):
            break
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        if _coprime(fi.lm, fj.lm):
            continue
        lcm = mono_lcm(fi.lm, fj.lm)
        if degree_bound is not None and mono_degree(lcm) > degree_bound:
            continue
        ti, tj = mono_div(lcm, fi.lm), mono_div(lcm, fj.lm)
        s: dict = {}
        scof: dict = {}
        _axpy(s, fi.poly, ti, ring(-1), ring)
        _cof_axpy(scof, fi.cof, ti, ring(-1), ring)
        _axpy(s, fj.poly, tj, ring(1), ring)
        _cof_axpy(scof, fj.cof, tj, ring(1), ring)
        if not s:
            continue
        r, rcof = _reduce(s, scof, basis, ring)
        if r:
            basis.append(_make_monic(r, rcof, ring))
            k = len(basis) - 1
            pairs |= {(a, k) for a in range(k)}

    unit = next((el for el in basis if not el.lm), None)
    if unit is not None:
        return [unit]

    # minimalize: drop elements whose leading monomial is divisible by another's
    minimal = []
    for idx, el in enumerate(basis):
        if any(mono_divides(o.lm, el.lm) and (o.lm != el.lm or jdx < idx)
               for jdx, o in enumerate(basis) if jdx != idx):
            continue
        minimal.append(el)

    # interreduce tails
    reduced = []
    for idx, el in enumerate(minimal):
        others = [o for jdx, o in enumerate(minimal) if jdx != idx]
        lead = {el.lm: el.poly[el.lm]}
        tail = {m: c for m, c in el.poly.items() if m != el.lm}
        cof = {i: dict(v) for i, v in el.cof.items()}
        if tail and others:
            # reduce the tail while keeping the cofactor record of the whole element
            tail_rem, cof = _reduce(tail, cof, others, ring)
            tail_rem[el.lm] = lead[el.lm]
            reduced.append(_Element(tail_rem, cof))
        else:
            reduced.append(el)
    reduced.sort(key=lambda el: grevlex_key(el.lm), reverse=True)
    return reduced


def buchberger(generators: list, order: str = GREVLEX, degree_bound: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``generators``.

    With ``degree_bound`` set, S-pairs whose lcm exceeds the bound are skipped;
    for homogeneous input the result is then a Groebner basis up to that degree.
    """
    if not generators:
        raise PolynomialError("buchberger needs at least one generator")
    _check_field(generators, order)
    ring = generators[0].ring
    proto = generators[0]
    for g in generators[1:]:
        proto._check(g)
    els = _tracked_buchberger(list(generators), ring, degree_bound)
    elements = tuple(proto._new(el.poly) for el in els)
    cofactors = tuple(
        tuple(proto._new(el.cof.get(i, {})) for i in range(len(generators))) for el in els)
    variables = frozenset((c, r) for g in generators for m, _ in g.items() for c, r, _ in m)
    gb = GroebnerBasis(order, elements, variables, tuple(generators), cofactors, degree_bound)
    for el, cof in zip(elements, cofactors):
        total = proto._new({})
        for c, g in zip(cof, generators):
            total = total + c * g
        assert total == el, "cofactor record diverged from basis element"
    for g in generators:
        assert not gb.normal_form(g), "generator does not reduce to zero"
    return gb


@dataclass(frozen=True)
class IdealMembership:
    member: bool
    cofactors: tuple | None = None
    basis: GroebnerBasis | None = None


def ideal_member(f: Polynomial, generators: list, order: str = GREVLEX,
                 degree_bound: int | None = None) -> IdealMembership:
    """Decide ``f in (generators)``; members come with verified cofactors."""
    _check_field([f, *generators], order)
    if not f:
        return IdealMembership(True, tuple(f._new({}) for _ in generators))
    nonzero = [g for g in generators if g]
    if not nonzero:
        return IdealMembership(False)
    gb = buchberger(generators, order, degree_bound)
    quotients, rem = divide(f, list(gb.elements), order)
    if rem:
        return IdealMembership(False, None, gb)
    cofactors = []
    for i in range(len(generators)):
        c = f._new({})
        for q, row in zip(quotients, gb.cofactors):
            if q:
                c = c + q * row[i]
        cofactors.append(c)
    total = f._new({})
    for c, g in zip(cofactors, generators):
        total = total + c * g
    if total != f:
        raise AssertionError("membership cofactors do not re-evaluate to the target")
    return IdealMembership(True, tuple(cofactors), gb)
