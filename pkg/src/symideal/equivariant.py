"""Sym(N)-invariant ideals at finite truncation.

An ideal is given by finitely many generators; its elements are sums
``sum_s sigma_s(g_{l_s}) * f_s`` with column maps ``sigma_s`` and cofactors
``f_s`` drawn from the ambient algebra (the full ring, the symmetric
polynomials, or the determinant subalgebra L_2).

Two membership oracles are provided:

* :func:`member_truncated` works in the finitely many variables of columns
  ``1..width``.  It can certify membership; non-membership is only reported
  when the target and generators are multihomogeneous (then truncation loses
  nothing), otherwise the verdict is ``UNDECIDED``.
* :func:`member_multigraded` solves the exact linear system in the
  multidegree component of a multihomogeneous target.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from enum import Enum

from .actions import ColumnMap, apply_column, is_symmetric, symmetrize
from .core import (CharacteristicObstruction, Polynomial, PolynomialError, md_leq, md_sub,
                   md_trim, parse_polynomial)
from .families import (cycle_product, full_component_basis, h_family, l2_component_span,
                       symmetric_component_basis)
from .groebner import ideal_member
from .linalg import solve_in_span

MAX_WIDTH = 8
MAX_DEGREE = 12


class Ambient(str, Enum):
    FULL = "full"
    SYMMETRIC = "symmetric"
    L2 = "l2"


class Status(str, Enum):
    MEMBER = "member"
    NOT_MEMBER = "not_member"
    UNDECIDED = "undecided"


class Oracle(str, Enum):
    GROEBNER = "groebner"
    MULTIGRADED = "multigraded"


def in_l2(f: Polynomial) -> bool:
    """Whether every multihomogeneous component of ``f`` lies in the L_2 span."""
    if f.rows != 2:
        return False
    for D, part in f.components().items():
        span = l2_component_span(D, f.ring)
        if solve_in_span([dict(b.items()) for b in span], dict(part.items()), f.ring) is None:
            return False
    return True


@dataclass(frozen=True)
class EquivariantIdealSpec:
    """Generators of a Sym(N)-invariant ideal inside an ambient algebra."""

    ring: object
    rows: int
    generators: tuple
    ambient: Ambient = Ambient.SYMMETRIC

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "ambient", Ambient(self.ambient))
        for i, g in enumerate(self.generators):
            if g.ring != self.ring or g.kind != "x" or (g.rows != self.rows and not g.is_constant()):
                raise PolynomialError(f"generator {i} is not in {self.ring}[x] with {self.rows} rows")
            if self.ambient is Ambient.SYMMETRIC and not is_symmetric(g):
                raise PolynomialError(f"generator {i} is not symmetric")
        if self.ambient is Ambient.L2:
            if self.rows != 2:
                raise PolynomialError("the L_2 ambient needs rows = 2")
            for i, g in enumerate(self.generators):
                if not in_l2(g):
                    raise PolynomialError(f"generator {i} is not in L_2")


@dataclass(frozen=True)
class CertificateTerm:
    sigma: ColumnMap
    gen: int
    cofactor: Polynomial


@dataclass(frozen=True)
class MembershipCertificate:
    """The identity ``target = sum sigma(generators[gen]) * cofactor``."""

    target: Polynomial
    terms: tuple = ()

    def evaluate(self, generators) -> Polynomial:
        total = self.target._new({})
        for term in self.terms:
            total = total + apply_column(term.sigma, generators[term.gen]) * term.cofactor
        return total

    def to_json(self) -> dict:
        return {"target": str(self.target),
                "terms": [{"sigma": str(t.sigma), "gen": t.gen, "cofactor": str(t.cofactor)}
                          for t in self.terms]}

    @classmethod
    def from_json(cls, data: dict, ring, rows: int) -> MembershipCertificate:
        target = parse_polynomial(data["target"], ring, rows, "x")
        terms = tuple(CertificateTerm(ColumnMap.parse(t["sigma"]), int(t["gen"]),
                                      parse_polynomial(t["cofactor"], ring, rows, "x"))
                      for t in data["terms"])
        return cls(target, terms)


@dataclass(frozen=True)
class MembershipVerdict:
    status: Status
    certificate: MembershipCertificate | None
    width: int | None
    degree_bound: int | None
    oracle: Oracle
    stats: dict = field(default_factory=dict)


def verify_certificate(cert: MembershipCertificate, spec: EquivariantIdealSpec) -> tuple:
    """Re-evaluate ``cert`` exactly.  Returns ``(ok, diagnostic)``."""
    gens = spec.generators
    for t in cert.terms:
        if not 0 <= t.gen < len(gens):
            return False, f"generator index {t.gen} out of range"
        if t.cofactor.ring != spec.ring:
            return False, "cofactor ring mismatch"
    try:
        value = cert.evaluate(gens)
    except PolynomialError as exc:
        return False, f"identity mismatch: {exc}"
    if value != cert.target:
        return False, "identity mismatch"
    for i, t in enumerate(cert.terms):
        if spec.ambient is Ambient.SYMMETRIC and not is_symmetric(t.cofactor):
            return False, f"ambient violation: cofactor {i} is not symmetric"
        if spec.ambient is Ambient.L2 and not in_l2(t.cofactor):
            return False, f"ambient violation: cofactor {i} is not in L_2"
    return True, "ok"


def _merge_terms(triples) -> tuple:
    """Sum cofactors sharing ``(sigma, gen)``; drop zeros; keep first-seen order."""
    merged: dict = {}
    for sigma, gen, cof in triples:
        key = (sigma, gen)
        merged[key] = merged[key] + cof if key in merged else cof
    return tuple(CertificateTerm(s, g, c) for (s, g), c in merged.items() if c)


def _finish(cert: MembershipCertificate, spec, oracle: Oracle, **kw) -> MembershipVerdict:
    ok, why = verify_certificate(cert, spec)
    if not ok:
        raise AssertionError(f"oracle produced an invalid certificate: {why}")
    return MembershipVerdict(Status.MEMBER, cert, oracle=oracle, **kw)


def _require_field(spec):
    if not spec.ring.is_field:
        raise PolynomialError(f"membership needs field coefficients, got {spec.ring}")


def _symmetrizable(ring, n: int) -> bool:
    return ring.kind == "rat" or (ring.kind == "gf" and ring.p > n)


def orbit_images(spec: EquivariantIdealSpec, width: int) -> list:
    """``(sigma, gen, sigma(g))`` for every injection of a generator's columns
    into ``1..width``; images deduplicated as polynomials."""
    out = []
    seen = set()
    for gi, g in enumerate(spec.generators):
        cols = sorted(g.columns())
        if len(cols) > width:
            raise PolynomialError(f"width {width} too small for generator {gi} on columns {cols}")
        for targets in itertools.permutations(range(1, width + 1), len(cols)):
            sigma = ColumnMap(tuple(zip(cols, targets)))
            img = apply_column(sigma, g)
            if img and img not in seen:
                seen.add(img)
                out.append((sigma, gi, img))
    return out


def expand_truncated(spec: EquivariantIdealSpec, width: int) -> list:
    return [img for _, _, img in orbit_images(spec, width)]


def ambient_basis(ambient: Ambient, rows: int, D, ring) -> tuple:
    """Spanning set of the ambient algebra's multidegree-``D`` component."""
    D = md_trim(D)
    if ambient is Ambient.SYMMETRIC:
        return symmetric_component_basis(rows, D, ring)
    if ambient is Ambient.L2:
        return l2_component_span(D, ring)
    return full_component_basis(rows, D, ring)


def _multidegrees(width: int, total: int):
    for combo in itertools.combinations_with_replacement(range(width), total):
        D = [0] * width
        for j in combo:
            D[j] += 1
        yield md_trim(D)


def member_truncated(f: Polynomial, spec: EquivariantIdealSpec, width: int,
                     degree_bound: int) -> MembershipVerdict:
    """Membership using only columns ``1..width`` and products of degree <= ``degree_bound``.

    The full ring (and the symmetric subring when ``n!`` is invertible) goes
    through Buchberger; a full-ring certificate is pulled back to symmetric
    cofactors by symmetrization.  Otherwise the degree-capped products
    ``sigma(g) * b``, ``b`` ranging over ambient spanning sets, are solved
    against ``f`` directly.
    """
    _require_field(spec)
    if f.ring != spec.ring:
        raise PolynomialError("target ring differs from the ideal's ring")
    if not 1 <= width <= MAX_WIDTH:
        raise PolynomialError(f"width must be in 1..{MAX_WIDTH}")
    if not 0 <= degree_bound <= MAX_DEGREE:
        raise PolynomialError(f"degree bound must be in 0..{MAX_DEGREE}")
    if any(c > width for c in f.columns()):
        raise PolynomialError(f"target uses columns beyond width {width}")
    kw = dict(width=width, degree_bound=degree_bound)
    if not f:
        return MembershipVerdict(Status.MEMBER, MembershipCertificate(f), oracle=Oracle.GROEBNER, **kw)
    images = orbit_images(spec, width)
    # A failed search is a global NOT_MEMBER only through the multidegree
    # argument: a non-constant multihomogeneous target whose whole component
    # fits inside the truncation.  Everything else stays UNDECIDED.
    exact = (not f.is_constant() and f.is_multihomogeneous() and f.degree() <= degree_bound
             and all(g.is_multihomogeneous() for g in spec.generators))
    stats = {"images": len(images)}
    if spec.ambient is Ambient.FULL or (spec.ambient is Ambient.SYMMETRIC
                                        and _symmetrizable(spec.ring, spec.rows)):
        res = ideal_member(f, [img for _, _, img in images], degree_bound=degree_bound) \
            if images else None
        if res is not None and res.member:
            terms = _merge_terms((s, gi, c) for (s, gi, _), c in zip(images, res.cofactors))
            cert = MembershipCertificate(f, terms)
            if spec.ambient is Ambient.SYMMETRIC:
                cert = retract_certificate(cert, spec)
            stats["basis"] = len(res.basis.elements) if res.basis else 0
            return _finish(cert, spec, Oracle.GROEBNER, stats=stats, **kw)
    else:
        homogeneous = f.is_homogeneous() and all(g.is_homogeneous() for g in spec.generators)
        vectors, labels = [], []
        for sigma, gi, img in images:
            dg = img.degree()
            totals = [f.degree() - dg] if homogeneous else range(degree_bound - dg + 1)
            for total in totals:
                if total < 0 or dg + total > degree_bound:
                    continue
                for E in _multidegrees(width, total):
                    for b in ambient_basis(spec.ambient, spec.rows, E, spec.ring):
                        vectors.append(dict((img * b).items()))
                        labels.append((sigma, gi, b))
        stats["products"] = len(vectors)
        coeffs = solve_in_span(vectors, dict(f.items()), spec.ring)
        if coeffs is not None:
            terms = _merge_terms((s, gi, b.scale(a)) for (s, gi, b), a in zip(labels, coeffs) if a)
            return _finish(MembershipCertificate(f, terms), spec, Oracle.GROEBNER, stats=stats, **kw)
    status = Status.NOT_MEMBER if exact else Status.UNDECIDED
    return MembershipVerdict(status, None, oracle=Oracle.GROEBNER, stats=stats, **kw)


def member_multigraded(f: Polynomial, spec: EquivariantIdealSpec) -> MembershipVerdict:
    """Exact equivariant membership for a multihomogeneous target.

    Only ``sigma(g)`` with ``d(sigma(g)) <= d(f)`` and ``sigma`` landing in the
    support of ``d(f)`` can contribute to the component of ``f``; each is paired
    with a spanning set of the ambient component at the complementary
    multidegree and the resulting finite linear system is solved.
    """
    _require_field(spec)
    if f.ring != spec.ring:
        raise PolynomialError("target ring differs from the ideal's ring")
    if not f:
        return MembershipVerdict(Status.MEMBER, MembershipCertificate(f), None, None,
                                 Oracle.MULTIGRADED)
    if not f.is_multihomogeneous():
        raise PolynomialError("member_multigraded needs a multihomogeneous target")
    D = f.multidegree()
    support = [j for j, d in enumerate(D, start=1) if d]
    vectors, labels = [], []
    injections = 0
    images = 0
    for gi, g in enumerate(spec.generators):
        if not g:
            continue
        if not g.is_multihomogeneous():
            raise PolynomialError(f"generator {gi} is not multihomogeneous")
        gd = g.multidegree()
        cols = sorted(g.columns())
        seen = set()
        for targets in itertools.permutations(support, len(cols)):
            if any(gd[c - 1] > D[t - 1] for c, t in zip(cols, targets)):
                continue
            injections += 1
            sigma = ColumnMap(tuple(zip(cols, targets)))
            img = apply_column(sigma, g)
            if img in seen:
                continue
            seen.add(img)
            images += 1
            img_d = img.multidegree()
            if not md_leq(img_d, D):
                continue
            for b in ambient_basis(spec.ambient, spec.rows, md_sub(D, img_d), spec.ring):
                vectors.append(dict((img * b).items()))
                labels.append((sigma, gi, b))
    stats = {"multidegree": list(D), "injections": injections, "images": images,
             "products": len(vectors)}
    coeffs = solve_in_span(vectors, dict(f.items()), spec.ring)
    if coeffs is None:
        return MembershipVerdict(Status.NOT_MEMBER, None, None, None, Oracle.MULTIGRADED, stats)
    terms = _merge_terms((s, gi, b.scale(a)) for (s, gi, b), a in zip(labels, coeffs) if a)
    return _finish(MembershipCertificate(f, terms), spec, Oracle.MULTIGRADED,
                   width=None, degree_bound=None, stats=stats)


def retract_certificate(cert: MembershipCertificate, spec: EquivariantIdealSpec) -> MembershipCertificate:
    """Replace every cofactor by its symmetrization.

    Valid because the target and generators are symmetric and symmetrization
    fixes symmetric factors, so the identity survives term by term.
    """
    ring, n = spec.ring, spec.rows
    if ring.kind == "gf" and ring.p <= n:
        raise CharacteristicObstruction(f"characteristic obstruction: p <= n (p={ring.p}, n={n})")
    if not _symmetrizable(ring, n):
        raise PolynomialError(f"cannot symmetrize over {ring}")
    if not is_symmetric(cert.target):
        raise PolynomialError("retraction needs a symmetric target")
    if not all(is_symmetric(g) for g in spec.generators):
        raise PolynomialError("retraction needs symmetric generators")
    full = EquivariantIdealSpec(ring, n, spec.generators, Ambient.FULL)
    ok, why = verify_certificate(cert, full)
    if not ok:
        raise PolynomialError(f"invalid input certificate: {why}")
    out = MembershipCertificate(cert.target, _merge_terms(
        (t.sigma, t.gen, symmetrize(t.cofactor)) for t in cert.terms))
    sym = EquivariantIdealSpec(ring, n, spec.generators, Ambient.SYMMETRIC)
    ok, why = verify_certificate(out, sym)
    if not ok:
        raise AssertionError(f"retraction broke the certificate: {why}")
    return out


@dataclass(frozen=True)
class ScanEntry:
    k: int
    status: Status
    certificate_terms: int
    runtime_ms: float


def stabilization_scan(family: str, ks, ring, rows: int = 2) -> list:
    """For each ``k``: is member ``k`` of the family in the ideal of the smaller members?

    ``family`` is ``"h"`` (symmetric ambient, ``rows`` rows) or ``"cycle"``
    (L_2 ambient, two rows).
    """
    out = []
    for k in ks:
        start = time.perf_counter()
        if family == "h":
            target = h_family(rows, k, ring)
            spec = EquivariantIdealSpec(ring, rows, [h_family(rows, l, ring) for l in range(1, k)],
                                        Ambient.SYMMETRIC)
        elif family == "cycle":
            target = cycle_product(k, ring)
            spec = EquivariantIdealSpec(ring, 2, [cycle_product(l, ring) for l in range(3, k)],
                                        Ambient.L2)
        else:
            raise PolynomialError(f"unknown family {family!r}")
        verdict = member_multigraded(target, spec)
        if verdict.status is Status.MEMBER:
            ok, why = verify_certificate(verdict.certificate, spec)
            if not ok:
                raise AssertionError(why)
        elapsed = (time.perf_counter() - start) * 1000
        size = len(verdict.certificate.terms) if verdict.certificate else 0
        out.append(ScanEntry(k, verdict.status, size, elapsed))
    return out

