"""The characteristic-p obstruction for the ideal generated by the ``h_k``,
plus drivers for the fixed-instance verifications.

The obstruction works at the integer level.  A would-be identity
``h_k = sum sigma_s(h_l) f_s`` over GF(p) with ``n = p`` rows and symmetric
``f_s`` lifts to ``h_k = sum sigma_s(h_l) g_s + p*g`` over ZZ.  Collapsing
every ``x[i,j]`` to ``t[j]`` sends ``h_k`` to ``p*t_1...t_k`` (valuation 1)
while every right-hand term picks up at least ``p**2``: one ``p`` from the
collapsed ``h_l`` and one from the symmetric squarefree-column cofactor,
whose monomials fall into S_p-orbits of size divisible by ``p``.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field

from .actions import ColumnMap, apply_column, is_symmetric, orbit_size, orbit_sum, row_orbit
from .core import GF, ZZ, Polynomial, PolynomialError, is_prime, valuation_p
from .equivariant import (Ambient, CertificateTerm, EquivariantIdealSpec, MembershipCertificate,
                          MembershipVerdict, member_multigraded)
from .families import cycle_product, h_family, symmetric_component_basis
from .morphisms import collapse_columns, lift_canonical, reduce_mod_p, row_truncate

CONTRADICTION = "ContradictionEstablished"
RESIDUAL_NONZERO = "ResidualNonzero"


def _json_val(v):
    return None if v == math.inf else v


@dataclass(frozen=True)
class ObstructionReport:
    k: int
    p: int
    lhs_valuation: int
    term_valuations: tuple
    residual_mod_p: Polynomial
    conclusion: str
    pg_valuation: float | int | None = None
    synthetic_valuation: float | int | None = None
    runtime_ms: float | None = None

    def to_json(self, timings: bool = False) -> dict:
        return {
            "theorem": "7",
            "params": {"k": self.k, "p": self.p, "rows": self.p},
            "verdict": self.conclusion,
            "valuations": [_json_val(v) for v in self.term_valuations],
            "lhs_valuation": self.lhs_valuation,
            "pg_valuation": _json_val(self.pg_valuation),
            "synthetic_valuation": _json_val(self.synthetic_valuation),
            "residual_mod_p": str(self.residual_mod_p),
            "runtime_ms": round(self.runtime_ms) if timings and self.runtime_ms is not None else None,
        }


def _ones(k: int) -> tuple:
    return (1,) * k


def obstruction_check(k: int, p: int, candidate: MembershipCertificate, lengths=None,
                      synthetic: bool = False) -> ObstructionReport:
    """Classify a candidate identity ``h_k = sum sigma_s(h_l) f_s`` over GF(p), ``p`` rows.

    ``candidate.terms[s].gen`` indexes ``lengths`` (default ``gen -> h_{gen+1}``).
    With ``synthetic=True`` the mod-p residual is added back as an artificial
    extra term, making the identity exact mod ``p`` so the valuation argument
    can run end to end; the artificial term is reported separately.
    """
    start = time.perf_counter()
    if not is_prime(p):
        raise PolynomialError(f"{p} is not prime")
    ring = GF(p)
    target = h_family(p, k, ring)
    if candidate.target != target:
        raise PolynomialError(f"candidate target is not h_{k} over GF({p}) with {p} rows")
    ones = _ones(k)
    lifted_terms = []
    for idx, term in enumerate(candidate.terms):
        l = lengths[term.gen] if lengths is not None else term.gen + 1
        if l == k or l < 1:
            raise PolynomialError(f"term {idx} uses h_{l}; generators must be h_l with l != k")
        cof = term.cofactor
        if cof.ring != ring or cof.rows != p and not cof.is_constant():
            raise PolynomialError(f"term {idx}: cofactor not over GF({p}) in {p} rows")
        if not is_symmetric(cof):
            raise PolynomialError(f"term {idx}: cofactor is not symmetric")
        image = apply_column(term.sigma, h_family(p, l, ring))
        product = image * cof
        if product and product.multidegrees() != {ones}:
            raise PolynomialError(f"term {idx}: product is not of multidegree {ones}")
        lifted_terms.append(lift_canonical(image) * lift_canonical(cof))

    lhs = lift_canonical(target)
    residual = lhs
    for t in lifted_terms:
        residual = residual - t
    residual_mod_p = reduce_mod_p(residual, p)
    fake = None
    if synthetic and residual_mod_p:
        fake = lift_canonical(residual_mod_p)
        residual = residual - fake
        residual_mod_p = reduce_mod_p(residual, p)

    lhs_val = valuation_p(collapse_columns(lhs), p)
    term_vals = tuple(valuation_p(collapse_columns(t), p) for t in lifted_terms)
    pg_val = None
    conclusion = RESIDUAL_NONZERO
    if not residual_mod_p:
        # residual is p*g with g symmetric of multidegree (1,...,1)
        pg_val = valuation_p(collapse_columns(residual), p)
        lhs_eta = collapse_columns(lhs)
        rhs_eta = collapse_columns(residual)
        for t in lifted_terms:
            rhs_eta = rhs_eta + collapse_columns(t)
        if fake is not None:
            rhs_eta = rhs_eta + collapse_columns(fake)
        assert lhs_eta == rhs_eta, "collapsed identity does not balance"
        if all(v >= 2 for v in term_vals) and pg_val >= 2:
            conclusion = CONTRADICTION
    syn_val = valuation_p(collapse_columns(fake), p) if fake is not None else None
    return ObstructionReport(k, p, lhs_val, term_vals, residual_mod_p, conclusion, pg_val, syn_val,
                             (time.perf_counter() - start) * 1000)


def random_candidate(k: int, p: int, rng: random.Random, max_terms: int = 4) -> MembershipCertificate:
    """A well-formed (and necessarily wrong) candidate identity for ``h_k``."""
    ring = GF(p)
    terms = []
    for _ in range(rng.randint(0, max_terms) if k > 1 else 0):
        l = rng.randint(1, k - 1)
        targets = rng.sample(range(1, k + 1), l)
        sigma = ColumnMap(tuple(zip(range(1, l + 1), targets)))
        comp = tuple(0 if j in targets else 1 for j in range(1, k + 1))
        basis = symmetric_component_basis(p, comp, ring)
        cof = Polynomial.zero(ring, p)
        for b in basis:
            cof = cof + b.scale(rng.randrange(p))
        if cof:
            terms.append(CertificateTerm(sigma, l - 1, cof))
    return MembershipCertificate(h_family(p, k, ring), tuple(terms))


def nonmembership_hk(n: int, p: int, k: int, kmax: int | None = None,
                     truncate: bool = True) -> MembershipVerdict:
    """Is ``h_k`` in the Sym(N)-invariant ideal of symmetric polynomials over GF(p)
    generated by ``{h_l : l <= kmax, l != k}``?  Expected: no, whenever ``p <= n``.

    With ``truncate`` the question is first pushed to ``p`` rows by sending the
    rows ``p+1..n`` to zero, which maps a certificate in ``n`` rows to one in
    ``p`` rows.  Generators ``h_l`` with ``l > k`` cannot contribute to
    multidegree ``(1,...,1)``, so any ``kmax >= k`` gives the same answer.
    """
    if not is_prime(p):
        raise PolynomialError(f"{p} is not prime")
    if p > n:
        raise PolynomialError(f"p = {p} > n = {n}: the obstruction does not apply")
    if k < 1:
        raise PolynomialError("k must be positive")
    kmax = k if kmax is None else kmax
    if kmax < k:
        raise PolynomialError("kmax must be at least k")
    ring = GF(p)
    rows = p if truncate else n
    target = h_family(n, k, ring)
    gens = [h_family(n, l, ring) for l in range(1, kmax + 1) if l != k]
    if truncate:
        target = row_truncate(target, p)
        gens = [row_truncate(g, p) for g in gens]
    spec = EquivariantIdealSpec(ring, rows, gens, Ambient.SYMMETRIC)
    return member_multigraded(target, spec)


@dataclass(frozen=True)
class OrbitAuditReport:
    p: int
    width: int
    monomials: int
    orbit_sizes: dict
    failures: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures


def orbit_divisibility_audit(p: int, width: int) -> OrbitAuditReport:
    """Check every non-constant monomial in ``p`` rows with column degrees in
    {0, 1} on columns ``1..width``: S_p-orbit size divisible by ``p`` and the
    collapsed orbit sum divisible by ``p``."""
    if p not in (2, 3, 5):
        raise PolynomialError("audit supports p in {2, 3, 5}")
    if not 1 <= width <= 5:
        raise PolynomialError("audit supports width 1..5")
    sizes: Counter = Counter()
    failures = []
    count = 0
    for rows in itertools.product(range(p + 1), repeat=width):
        if not any(rows):
            continue
        m = tuple((j, r, 1) for j, r in enumerate(rows, start=1) if r)
        count += 1
        size = orbit_size(m, p)
        if size != len(row_orbit(m, p)):
            failures.append((m, "orbit size formula disagrees with enumeration"))
        sizes[size] += 1
        if size % p:
            failures.append((m, f"orbit size {size} not divisible by {p}"))
        if valuation_p(collapse_columns(orbit_sum(m, p, ZZ)), p) < 1:
            failures.append((m, "collapsed orbit sum not divisible by p"))
    return OrbitAuditReport(p, width, count, dict(sorted(sizes.items())), tuple(failures))


def vaughanlee_check(k: int, kmax: int | None = None) -> MembershipVerdict:
    """Is ``d_12 d_23 ... d_1k`` in the Sym(N)-invariant ideal of L_2 over GF(2)
    generated by the other cycle products up to ``kmax``?  Expected: no."""
    if not 3 <= k <= 5:
        raise PolynomialError("vaughanlee_check supports 3 <= k <= 5")
    kmax = k if kmax is None else kmax
    if kmax < k:
        raise PolynomialError("kmax must be at least k")
    ring = GF(2)
    gens = [cycle_product(l, ring) for l in range(3, kmax + 1) if l != k]
    spec = EquivariantIdealSpec(ring, 2, gens, Ambient.L2)
    return member_multigraded(cycle_product(k, ring), spec)
