import random

import pytest
import sympy

from conftest import random_poly
from symideal.core import GF, QQ, ZZ, Polynomial, PolynomialError, mono_divides, parse_polynomial
from symideal.groebner import buchberger, divide, ideal_member, s_polynomial


def P(text, ring=QQ, rows=2):
    return parse_polynomial(text, ring, rows)


def sym_name(c, r):
    return f"x_{r}_{c}"


def to_sympy(f):
    expr = sympy.Integer(0)
    for m, c in f.items():
        term = sympy.Rational(c.numerator, c.denominator) if f.ring.kind == "rat" else sympy.Integer(c)
        for col, row, e in m:
            term *= sympy.Symbol(sym_name(col, row)) ** e
        expr += term
    return expr


def sympy_gens(polys):
    variables = sorted({(c, r) for f in polys for m in f.monomials() for c, r, _ in m})
    return [sympy.Symbol(sym_name(c, r)) for c, r in variables]


def grevlex_monic(poly, ring):
    lc = poly.LC(order="grevlex")
    if ring.kind == "gf":
        return poly.mul_ground(pow(int(lc), -1, ring.p))
    return poly.mul_ground(1 / sympy.Rational(lc))


class TestDivide:
    def test_exact(self):
        q, r = divide(P("x[1,1]^2"), [P("x[1,1]")])
        assert q == [P("x[1,1]")] and r.is_zero()

    def test_no_division(self):
        q, r = divide(P("x[1,1]"), [P("x[1,2]")])
        assert q[0].is_zero() and r == P("x[1,1]")

    def test_field_required(self):
        with pytest.raises(PolynomialError):
            divide(P("x[1,1]", ZZ), [P("x[1,1]", ZZ)])

    @pytest.mark.parametrize("ring", [QQ, GF(2), GF(7)])
    def test_reconstruction(self, ring):
        rng = random.Random(11)
        for _ in range(170):
            f = random_poly(rng, ring, 2)
            divs = [random_poly(rng, ring, 2, max_terms=2) for _ in range(rng.randint(1, 3))]
            q, r = divide(f, divs)
            total = r
            for qi, d in zip(q, divs):
                total = total + qi * d
            assert total == f
            leads = [d.leading_monomial() for d in divs if d]
            assert not any(mono_divides(l, m) for l in leads for m in r.monomials())


class TestBuchberger:
    def test_single(self):
        assert buchberger([P("x[1,1]")]).elements == (P("x[1,1]"),)

    def test_linear(self):
        gb = buchberger([P("x[1,1]+x[2,1]"), P("x[1,1]-x[2,1]")])
        assert set(gb.elements) == {P("x[1,1]"), P("x[2,1]")}

    def test_unit(self):
        gb = buchberger([P("x[1,1]^2+x[1,2]"), P("3")])
        assert gb.elements == (P("1"),)

    def test_records_order(self):
        assert buchberger([P("x[1,1]")]).order == "grevlex"

    def test_empty_rejected(self):
        with pytest.raises(PolynomialError):
            buchberger([])

    @pytest.mark.parametrize("ring", [QQ, GF(2), GF(3)])
    def test_reduced_and_criterion(self, ring):
        rng = random.Random(12)
        for _ in range(40):
            gens = [random_poly(rng, ring, 2, max_terms=3, max_exp=2) for _ in range(rng.randint(1, 3))]
            if not any(gens):
                continue
            gb = buchberger(gens)
            assert gb.is_groebner()
            els = gb.elements
            for i, e in enumerate(els):
                assert e.leading_coefficient() == 1
                for j, o in enumerate(els):
                    if i != j:
                        assert not any(mono_divides(o.leading_monomial(), m) for m in e.monomials())
            for g in gens:
                assert gb.normal_form(g).is_zero()

    def test_permutation_invariance(self):
        rng = random.Random(13)
        for _ in range(40):
            gens = [random_poly(rng, QQ, 2, max_terms=3) for _ in range(3)]
            if not any(gens):
                continue
            shuffled = gens[:]
            rng.shuffle(shuffled)
            assert buchberger(gens).elements == buchberger(shuffled).elements

    @pytest.mark.parametrize("ring", [QQ, GF(2), GF(5)])
    def test_against_sympy(self, ring):
        rng = random.Random(14)
        checked = 0
        for _ in range(40):
            gens = [random_poly(rng, ring, 2, max_col=2, max_terms=3) for _ in range(rng.randint(1, 3))]
            gens = [g for g in gens if g]
            if not gens:
                continue
            ours = buchberger(gens)
            variables = sympy_gens(gens)
            kw = {"modulus": ring.p} if ring.kind == "gf" else {"domain": "QQ"}
            if not variables:
                continue
            theirs = sympy.groebner([to_sympy(g) for g in gens], *variables, order="grevlex", **kw)
            theirs = {grevlex_monic(sympy.Poly(t, *variables, **kw), ring) for t in theirs.exprs}
            mine = {sympy.Poly(to_sympy(e), *variables, **kw) for e in ours.elements}
            assert mine == theirs
            checked += 1
        assert checked >= 30


class TestIdealMember:
    def test_member_with_cofactor(self):
        res = ideal_member(P("x[1,1]^2*x[1,2]"), [P("x[1,1]")])
        assert res.member and res.cofactors == (P("x[1,1]*x[1,2]"),)

    def test_unit_not_member(self):
        assert not ideal_member(P("1"), [P("x[1,1]")]).member

    def test_cofactors_sound(self):
        rng = random.Random(15)
        hits = 0
        for _ in range(100):
            gens = [random_poly(rng, GF(3), 2, max_terms=2) for _ in range(2)]
            f = sum((random_poly(rng, GF(3), 2, max_terms=2) * g for g in gens), Polynomial.zero(GF(3), 2))
            if rng.random() < 0.3:
                f = f + random_poly(rng, GF(3), 2, max_terms=1)
            res = ideal_member(f, gens)
            if res.member:
                hits += 1
                total = Polynomial.zero(GF(3), 2)
                for c, g in zip(res.cofactors, gens):
                    total = total + c * g
                assert total == f
        assert hits >= 50

    def test_s_polynomial_cancels_leads(self):
        f, g = P("x[1,1]^2+x[1,2]"), P("x[1,1]*x[2,1]-1")
        s = s_polynomial(f, g)
        assert all(m != ((1, 1, 2), (1, 2, 1)) for m in s.monomials())
