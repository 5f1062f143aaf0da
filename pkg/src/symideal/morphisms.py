"""Row truncation, reduction mod p and its canonical lift, the column collapse
``x[i,j] -> t[j]``, and the endomorphisms ``psi_kl``."""

from __future__ import annotations

from .core import GF, ZZ, Polynomial, PolynomialError, is_prime


def row_truncate(f: Polynomial, p: int) -> Polynomial:
    """Send ``x[i,j]`` to 0 for ``i > p``; the result lives in ``p`` rows."""
    if f.kind != "x":
        raise PolynomialError("row truncation needs an x-polynomial")
    if not 1 <= p <= f.rows:
        raise PolynomialError(f"target row count {p} not in 1..{f.rows}")
    out = {m: c for m, c in f.items() if all(r <= p for _, r, _ in m)}
    return Polynomial(f.ring, p, out, "x", _trusted=True)


def reduce_mod_p(f: Polynomial, p: int) -> Polynomial:
    if f.ring.kind != "int":
        raise PolynomialError("reduce_mod_p needs an integer polynomial")
    if not is_prime(p):
        raise PolynomialError(f"{p} is not prime")
    return f.map_coefficients(int, GF(p))


def lift_canonical(f: Polynomial) -> Polynomial:
    """Coefficient-wise lift GF(p) -> ZZ with representatives 0..p-1."""
    if f.ring.kind != "gf":
        raise PolynomialError("lift_canonical needs a GF(p) polynomial")
    return Polynomial(ZZ, f.rows, dict(f.items()), f.kind, _trusted=True)


def collapse_columns(f: Polynomial) -> Polynomial:
    """``x[i,j] -> t[j]`` over ZZ."""
    if f.ring.kind != "int":
        raise PolynomialError("collapse_columns is only defined over ZZ")
    if f.kind != "x":
        raise PolynomialError("collapse_columns needs an x-polynomial")
    out: dict = {}
    for m, c in f.items():
        exps: dict = {}
        for col, _, e in m:
            exps[col] = exps.get(col, 0) + e
        key = tuple((col, 0, e) for col, e in sorted(exps.items()))
        out[key] = out.get(key, 0) + c
    return Polynomial(ZZ, 0, out, "t")


def psi_kl(f: Polynomial, k: int, l: int) -> Polynomial:
    """Substitute ``x[i,l] -> x[i,k] * x[i,l]`` for every row ``i``."""
    if k == l:
        raise PolynomialError("psi_kl needs k != l")
    if f.kind != "x":
        raise PolynomialError("psi_kl needs an x-polynomial")
    out: dict = {}
    for m, c in f.items():
        exps = {(col, row): e for col, row, e in m}
        for col, row, e in m:
            if col == l:
                exps[k, row] = exps.get((k, row), 0) + e
        key = tuple(sorted((col, row, e) for (col, row), e in exps.items()))
        out[key] = out.get(key, 0) + c
    return Polynomial(f.ring, f.rows, out, "x")
