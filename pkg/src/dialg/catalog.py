"""Generators for example dialgebras and the named catalog built from them.

The catalog files shipped in ``dialg/data`` are exactly what the
generators produce; :func:`regenerate` rebuilds one for comparison.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from importlib import resources
from typing import Callable, Mapping, Sequence

from .algebra import (
    LEFT,
    PRODUCTS,
    RIGHT,
    Algebra,
    change_basis,
    check_axioms,
    direct_sum,
    quotient,
    satisfies_axioms,
    span_of,
)
from .io import parse_algebra, write_algebra
from .linalg import QQ, Field, inverse


def _require_valid(L: Algebra) -> Algebra:
    report = check_axioms(L)
    if not report.ok:
        raise ValueError(f"generated algebra is not diassociative: {report.summary()}")
    return L


def gen_abelian(n: int, field: Field = QQ) -> Algebra:
    if n < 0:
        raise ValueError("dimension must be non-negative")
    return Algebra.abelian(field, n, name=f"abelian({n})")


def gen_double_assoc(table: Mapping[tuple[int, int], Mapping[int, object]], n: int, field: Field = QQ,
                     name: str = "") -> Algebra:
    """Both products equal to the bilinear product ``e_i e_j = sum table[i, j][k] e_k``.

    The mixed identities collapse to associativity when the two products
    coincide, so the table must be associative.
    """
    entries = {}
    for (i, j), row in table.items():
        for k, v in row.items():
            for op in PRODUCTS:
                entries[op, i, j, k] = v
    return _require_valid(Algebra.from_entries(field, n, entries, name))


def gen_matrix_units(m: int, units: Sequence[tuple[int, int]], field: Field = QQ, name: str = "") -> Algebra:
    """Doubled subalgebra of m x m matrices spanned by the given (1-based)
    matrix units, in the order given."""
    pos = {u: t for t, u in enumerate(units)}
    if len(pos) != len(units) or not all(1 <= a <= m and 1 <= b <= m for a, b in units):
        raise ValueError("matrix units must be distinct pairs in 1..m")
    table = {}
    for (a, b), s in pos.items():
        for (c, d), t in pos.items():
            if b != c:
                continue
            if (a, d) not in pos:
                raise ValueError(f"e{a}{b} e{c}{d} = e{a}{d} leaves the span")
            table[s, t] = {pos[a, d]: 1}
    return gen_double_assoc(table, len(units), field, name)


def gen_matrix_double(m: int, field: Field = QQ) -> Algebra:
    """The full m x m matrix algebra with both products equal to matrix
    multiplication; basis e_11, e_12, ..., e_mm row-major."""
    if m < 1:
        raise ValueError("matrix size must be positive")
    units = [(a, b) for a in range(1, m + 1) for b in range(1, m + 1)]
    return gen_matrix_units(m, units, field, name=f"matrix_double({m})")


def gen_truncated_poly(n: int, field: Field = QQ, right: bool = True) -> Algebra:
    """span{t, ..., t^n} with t^a * t^b = t^(a+b), zero past t^n.

    Both products are the truncated multiplication; with ``right=False`` the
    second product is zero instead, which only satisfies the identities for
    n <= 2 (``x -| (y -| z)`` must equal ``x -| (y |- z) = 0``).
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    if not right and n > 2:
        raise ValueError("a zero second product needs n <= 2")
    entries = {}
    for a in range(n):
        for b in range(n):
            if a + b + 1 < n:
                entries[LEFT, a, b, a + b + 1] = 1
                if right:
                    entries[RIGHT, a, b, a + b + 1] = 1
    suffix = "" if right else ", right=False"
    return _require_valid(Algebra.from_entries(field, n, entries, name=f"truncated_poly({n}{suffix})"))


def gen_rank_one(n: int, field: Field = QQ) -> Algebra:
    """``x -| y = phi(y) x`` and ``x |- y = phi(x) y`` with phi the first
    coordinate functional.  Perfect, with genuinely different products once
    n >= 2."""
    if n < 1:
        raise ValueError("dimension must be positive")
    entries = {}
    for i in range(n):
        entries[LEFT, i, 0, i] = 1
        entries[RIGHT, 0, i, i] = 1
    return _require_valid(Algebra.from_entries(field, n, entries, name=f"rank_one({n})"))


def random_invertible(n: int, field: Field, rng: random.Random) -> tuple:
    while True:
        m = tuple(tuple(field.random(rng) for _ in range(n)) for _ in range(n))
        if inverse(m, field) is not None:
            return m


def gen_random(field: Field, n: int, seed: int, require: bool = True, density: float | None = None,
               max_tries: int = 200_000) -> Algebra:
    """A random dialgebra, reproducible from ``seed``.

    Each sample puts random nonzero constants on a few random slots (between
    1 and 2n of them, or each slot with probability ``density``) and is
    rejected unless it is nonzero and satisfies the identities; the survivor is then moved
    to a random basis so its constants are dense.  With ``require=False``
    the first sample is returned unchecked.
    """
    rng = random.Random(seed)
    slots = [(op, i, j, k) for op in PRODUCTS for i in range(n) for j in range(n) for k in range(n)]
    for _ in range(max_tries):
        if density is None:
            chosen = rng.sample(slots, min(len(slots), rng.randint(1, 2 * n)))
        else:
            chosen = [key for key in slots if rng.random() < density]
        entries = {}
        for key in chosen:
            v = field.random(rng)
            if v:
                entries[key] = v
        L = Algebra.from_entries(field, n, entries)
        if not require:
            return L
        if entries and satisfies_axioms(L):
            return change_basis(L, random_invertible(n, field, rng))
    raise RuntimeError(f"no valid sample in {max_tries} tries")


def _corner() -> Algebra:
    # span{e12, e22, e23, e13} inside 3x3 matrices: perfect, with e13 central
    return gen_matrix_units(3, [(1, 2), (2, 2), (2, 3), (1, 3)], name="corner")


def _corner_quotient() -> Algebra:
    C = _corner()
    Q, _ = quotient(C, span_of(C, [C.unit(3)]))
    return Algebra.from_entries(Q.field, Q.dim, Q.entries(), "corner_quotient")


GENERATORS: dict[str, Callable[..., Algebra]] = {
    "abelian": gen_abelian,
    "matrix_double": gen_matrix_double,
    "truncated_poly": gen_truncated_poly,
    "rank_one": gen_rank_one,
    "random": gen_random,
}


@dataclass(frozen=True)
class CatalogEntry:
    """A named algebra with its frozen invariants over Q.

    ``multiplier`` is ``dim M(L)``; the hand-derivable values are checked
    against independent oracles in the test suite.
    """

    name: str
    build: Callable[[], Algebra] = dc_field(compare=False)
    derived: int
    center: int
    perfect: bool
    multiplier: int

    def generate(self) -> Algebra:
        L = self.build()
        return Algebra.from_entries(L.field, L.dim, L.entries(), self.name)


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("d1", lambda: gen_abelian(1), derived=0, center=1, perfect=False, multiplier=2),
        CatalogEntry("a2", lambda: gen_abelian(2), derived=0, center=2, perfect=False, multiplier=8),
        CatalogEntry("k1", lambda: gen_matrix_double(1), derived=1, center=0, perfect=True, multiplier=0),
        CatalogEntry("n2", lambda: gen_truncated_poly(2, right=False), derived=1, center=1, perfect=False,
                     multiplier=1),
        CatalogEntry("t2", lambda: gen_truncated_poly(2), derived=1, center=1, perfect=False, multiplier=2),
        CatalogEntry("t3", lambda: gen_truncated_poly(3), derived=2, center=1, perfect=False, multiplier=2),
        CatalogEntry("r2", lambda: gen_rank_one(2), derived=2, center=0, perfect=True, multiplier=0),
        CatalogEntry("r3", lambda: gen_rank_one(3), derived=3, center=0, perfect=True, multiplier=0),
        CatalogEntry("m2d", lambda: gen_matrix_double(2), derived=4, center=0, perfect=True, multiplier=0),
        CatalogEntry("m3d", lambda: gen_matrix_double(3), derived=9, center=0, perfect=True, multiplier=0),
        CatalogEntry("corner", _corner, derived=4, center=1, perfect=True, multiplier=0),
        CatalogEntry("corner_quotient", _corner_quotient, derived=3, center=0, perfect=True, multiplier=1),
        CatalogEntry("k1_corner_quotient", lambda: direct_sum(gen_matrix_double(1), _corner_quotient()),
                     derived=4, center=0, perfect=True, multiplier=1),
    ]
}


def regenerate(name: str) -> str:
    return write_algebra(CATALOG[name].generate())


def catalog_text(name: str) -> str:
    if name not in CATALOG:
        raise KeyError(f"unknown catalog algebra {name!r}")
    return resources.files("dialg").joinpath("data", f"{name}.dialg").read_text()


def load(name: str, field: Field | None = None) -> Algebra:
    L = parse_algebra(catalog_text(name), field)
    return Algebra(L.field, L.dim, L.left, L.right, name)


def perfect_names() -> list[str]:
    return [name for name, e in CATALOG.items() if e.perfect]
