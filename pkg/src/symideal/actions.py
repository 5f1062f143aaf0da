"""Row permutations (S_n), finitely supported column maps (Sym(N)) and the
symmetrization operator."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .core import CharacteristicObstruction, Polynomial, PolynomialError, grevlex_key


@dataclass(frozen=True)
class RowPermutation:
    """``images[i-1]`` is the image of row ``i``."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise PolynomialError(f"{list(self.images)} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> RowPermutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> RowPermutation:
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str) -> RowPermutation:
        m = re.fullmatch(r"\s*\[\s*(\d+(?:\s*,\s*\d+)*)?\s*\]\s*", text)
        if not m:
            raise PolynomialError(f"bad row permutation {text!r}")
        return cls(tuple(int(v) for v in (m.group(1) or "").split(",") if v.strip()))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self):
        return len(self.images)

    def __str__(self):
        return "[" + ",".join(map(str, self.images)) + "]"


@dataclass(frozen=True)
class ColumnMap:
    """Finitely supported injective relabelling ``j -> sigma(j)`` of columns.

    Columns outside the listed support are fixed.  Fixed points are dropped, so
    the identity is the empty map.
    """

    pairs: tuple = ()

    def __post_init__(self):
        pairs = sorted((int(a), int(b)) for a, b in self.pairs)
        if len({a for a, _ in pairs}) != len(pairs):
            raise PolynomialError("column map lists a source twice")
        if any(a < 1 or b < 1 for a, b in pairs):
            raise PolynomialError("columns start at 1")
        if len({b for _, b in pairs}) != len(pairs):
            raise PolynomialError(f"column map {dict(pairs)} is not injective")
        object.__setattr__(self, "pairs", tuple((a, b) for a, b in pairs if a != b))

    @classmethod
    def from_dict(cls, mapping: dict) -> ColumnMap:
        return cls(tuple(mapping.items()))

    @classmethod
    def parse(cls, text: str) -> ColumnMap:
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise PolynomialError(f"bad column map {text!r}")
        pairs = []
        for item in filter(None, (s.strip() for s in body[1:-1].split(","))):
            m = re.fullmatch(r"(\d+)\s*->\s*(\d+)", item)
            if not m:
                raise PolynomialError(f"bad column map entry {item!r}")
            pairs.append((int(m.group(1)), int(m.group(2))))
        return cls(tuple(pairs))

    def __call__(self, j: int) -> int:
        return dict(self.pairs).get(j, j)

    @property
    def support(self) -> tuple:
        return tuple(a for a, _ in self.pairs)

    def compose(self, other: ColumnMap) -> ColumnMap:
        """``self o other``: apply ``other`` first."""
        cols = set(self.support) | set(other.support)
        return ColumnMap(tuple((j, self(other(j))) for j in sorted(cols)))

    def is_identity(self) -> bool:
        return not self.pairs

    def __str__(self):
        return "{" + ",".join(f"{a}->{b}" for a, b in self.pairs) + "}"


def apply_row(tau: RowPermutation, f: Polynomial) -> Polynomial:
    """``tau(x[i,j]) = x[tau(i),j]``."""
    if f.kind != "x":
        raise PolynomialError("row action needs an x-polynomial")
    if len(tau) != f.rows:
        raise PolynomialError(f"permutation of {len(tau)} rows applied to {f.rows}-row polynomial")
    img = tau.images
    out = {tuple(sorted((c, img[r - 1], e) for c, r, e in m)): v for m, v in f.items()}
    return Polynomial(f.ring, f.rows, out, "x", _trusted=True)


def apply_column(sigma: ColumnMap, f: Polynomial) -> Polynomial:
    """``sigma(x[i,j]) = x[i,sigma(j)]`` (and ``t[j] -> t[sigma(j)]``)."""
    if sigma.is_identity():
        return f
    cols = f.columns()
    table = {j: sigma(j) for j in cols}
    if len(set(table.values())) != len(table):
        raise PolynomialError(f"column map {sigma} is not injective on columns {sorted(cols)}")
    out = {tuple(sorted((table[c], r, e) for c, r, e in m)): v for m, v in f.items()}
    return Polynomial(f.ring, f.rows, out, f.kind, _trusted=True)


def is_symmetric(f: Polynomial) -> bool:
    """Invariance under every adjacent row transposition."""
    if f.kind != "x":
        raise PolynomialError("symmetry is defined for x-polynomials")
    return all(apply_row(RowPermutation.transposition(f.rows, i, i + 1), f) == f
               for i in range(1, f.rows))


def _row_parts(m, n: int) -> list:
    parts = [[] for _ in range(n)]
    for c, r, e in m:
        if r > n:
            raise PolynomialError(f"row {r} exceeds row bound {n}")
        parts[r - 1].append((c, e))
    return [tuple(p) for p in parts]


def _from_row_parts(parts) -> tuple:
    return tuple(sorted((c, i + 1, e) for i, part in enumerate(parts) for c, e in part))


def _multiset_permutations(items: list):
    items = sorted(items)
    counts: dict = {}
    for it in items:
        counts[it] = counts.get(it, 0) + 1
    keys = list(counts)
    out: list = []

    def rec():
        if len(out) == len(items):
            yield tuple(out)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                out.append(k)
                yield from rec()
                out.pop()
                counts[k] += 1

    yield from rec()


def row_orbit(m, n: int) -> list:
    """All ``tau(m)`` for ``tau`` in S_n, in descending grevlex order.

    A row permutation only shuffles the row parts of ``m``, so the orbit is
    the set of distinct arrangements of those parts.
    """
    parts = _row_parts(m, n)
    orbit = {_from_row_parts(arr) for arr in _multiset_permutations(parts)}
    return sorted(orbit, key=grevlex_key, reverse=True)


def orbit_size(m, n: int) -> int:
    parts = _row_parts(m, n)
    size = math.factorial(n)
    for part in set(parts):
        size //= math.factorial(parts.count(part))
    return size


def orbit_sum(m, n: int, ring) -> Polynomial:
    return Polynomial(ring, n, {mm: 1 for mm in row_orbit(m, n)})


def orbit_representative(m, n: int) -> tuple:
    """Canonical member of the S_n-orbit of ``m`` (row parts sorted descending)."""
    parts = sorted(_row_parts(m, n), reverse=True)
    return _from_row_parts(parts)


def symmetrize(f: Polynomial) -> Polynomial:
    """``(1/n!) * sum over tau in S_n of tau(f)``."""
    if f.kind != "x":
        raise PolynomialError("symmetrization needs an x-polynomial")
    n = f.rows
    ring = f.ring
    if ring.kind == "int":
        raise PolynomialError("symmetrization is not defined over ZZ")
    if ring.kind == "gf" and ring.p <= n:
        raise CharacteristicObstruction(f"characteristic obstruction: p <= n (p={ring.p}, n={n}); 1/n! undefined")
    total = Polynomial.zero(ring, n)
    for images in itertools.permutations(range(1, n + 1)):
        total = total + apply_row(RowPermutation(images), f)
    return total.scale(ring.inv(ring(math.factorial(n))))
