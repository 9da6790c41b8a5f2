"""Exact dense/sparse linear algebra over the rationals and prime fields.

Scalars are plain Python objects: ``fractions.Fraction`` over Q and ``int``
in ``range(p)`` over F_p.  A :class:`Field` knows how to coerce, invert,
parse and print them.  Matrices are tuples of row tuples; the heavy lifting
is done on sparse ``{column: value}`` rows inside :class:`Echelon`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, FieldError

Vector = tuple
Matrix = tuple  # tuple of row Vectors

_MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not (_is_prime(self.p) and self.p < _MAX_PRIME):
            raise FieldError(f"modulus {self.p} is not a prime below 2^31")

    @classmethod
    def rationals(cls) -> Field:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(int(p))

    @classmethod
    def from_spec(cls, text: str) -> Field:
        """Parse ``Q`` or ``p=<prime>``."""
        text = text.strip()
        if text == "Q":
            return cls(0)
        if text.startswith("p="):
            try:
                return cls(int(text[2:]))
            except ValueError:
                pass
        raise FieldError(f"bad field spec {text!r} (expected Q or p=<prime>)")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * self.inv(x.denominator % self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(x), -1, self.p)
        return 1 / Fraction(x)

    def parse(self, text: str):
        num, sep, den = text.partition("/")
        try:
            value = Fraction(int(num), int(den)) if sep else Fraction(int(num))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad scalar literal {text!r}") from exc
        if self.p and value.denominator % self.p == 0:
            raise FieldError(f"{text!r} is not defined mod {self.p}")
        return self(value)

    def format(self, x) -> str:
        if self.p:
            return str(int(x) % self.p)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def elements(self):
        """All elements of a prime field, in order ``0, 1, ..., p-1``."""
        if not self.p:
            raise FieldError("Q cannot be enumerated")
        return range(self.p)

    def random(self, rng, bound: int = 3):
        """A random element; over Q an integer in ``[-bound, bound]``."""
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(-bound, bound))

    def __str__(self) -> str:
        return f"p={self.p}" if self.p else "Q"


QQ = Field(0)


# ---------------------------------------------------------------------------
# sparse incremental elimination
# ---------------------------------------------------------------------------


class Echelon:
    """A row space kept in reduced row-echelon form as sparse rows.

    Rows are added one at a time; the pivot of a row is its leftmost nonzero
    column and every pivot column is cleared from all other rows, so the
    stored basis is always the unique RREF of the span.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self._rows: dict[int, dict[int, object]] = {}

    @classmethod
    def from_subspace(cls, space: Subspace) -> Echelon:
        ech = cls(space.field, space.ambient_dim)
        for row in space.basis:
            sparse = to_sparse(row)
            ech._rows[min(sparse)] = sparse
        return ech

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def reduce(self, row: dict) -> dict:
        """Return the canonical representative of ``row`` modulo the span."""
        p = self.field.p
        out = {c: v for c, v in row.items() if v}
        for c in [c for c in out if c in self._rows]:
            f = out.get(c)
            if not f:
                continue
            for j, v in self._rows[c].items():
                w = out.get(j, 0) - f * v
                if p:
                    w %= p
                if w:
                    out[j] = w
                else:
                    out.pop(j, None)
        return out

    def add(self, row: dict) -> int | None:
        """Insert a row; return its new pivot column, or None if dependent."""
        red = self.reduce(row)
        if not red:
            return None
        p = self.field.p
        piv = min(red)
        s = self.field.inv(red[piv])
        red = {c: (v * s % p if p else v * s) for c, v in red.items()}
        for other in self._rows.values():
            f = other.get(piv)
            if not f:
                continue
            for j, v in red.items():
                w = other.get(j, 0) - f * v
                if p:
                    w %= p
                if w:
                    other[j] = w
                else:
                    other.pop(j, None)
        self._rows[piv] = red
        return piv

    def extend(self, rows: Iterable[dict]) -> None:
        for row in rows:
            self.add(row)

    def sparse_rows(self) -> list[dict]:
        return [self._rows[c] for c in sorted(self._rows)]

    def rows(self) -> Matrix:
        return tuple(to_dense(r, self.ncols, self.field) for r in self.sparse_rows())

    def kernel_basis(self) -> list[dict]:
        """Basis of ``{x : row . x = 0 for every stored row}``, one per free column."""
        p = self.field.p
        one = self.field.one
        out = []
        for f in range(self.ncols):
            if f in self._rows:
                continue
            vec = {f: one}
            for c, row in self._rows.items():
                v = row.get(f)
                if v:
                    vec[c] = (-v) % p if p else -v
            out.append(vec)
        return out

    def to_subspace(self) -> Subspace:
        return Subspace(self.field, self.ncols, self.rows())


def to_sparse(vec: Sequence) -> dict:
    return {i: v for i, v in enumerate(vec) if v}


def to_dense(row: dict, n: int, field: Field) -> Vector:
    z = field.zero
    return tuple(row.get(i, z) for i in range(n))


def _ncols(m: Sequence[Sequence], ncols: int | None) -> int:
    if ncols is not None:
        return ncols
    if not m:
        raise ValueError("ncols is required for a matrix with no rows")
    return len(m[0])


def echelon(m: Sequence[Sequence], field: Field, ncols: int | None = None) -> Echelon:
    ech = Echelon(field, _ncols(m, ncols))
    for row in m:
        ech.add(to_sparse(row))
    return ech


# ---------------------------------------------------------------------------
# dense API
# ---------------------------------------------------------------------------


def rref(m: Sequence[Sequence], field: Field, ncols: int | None = None) -> Matrix:
    """Reduced row-echelon form with zero rows dropped."""
    return echelon(m, field, ncols).rows()


def rank(m: Sequence[Sequence], field: Field, ncols: int | None = None) -> int:
    return echelon(m, field, ncols).rank


def nullspace(m: Sequence[Sequence], field: Field, ncols: int | None = None) -> Subspace:
    """The subspace ``{x : m x = 0}`` of the column space."""
    n = _ncols(m, ncols)
    ech = echelon(m, field, n)
    out = Echelon(field, n)
    out.extend(ech.kernel_basis())
    return out.to_subspace()


def solve(m: Sequence[Sequence], b: Sequence, field: Field, ncols: int | None = None):
    """One solution of ``m x = b`` (free variables zero), or None."""
    n = _ncols(m, ncols)
    if len(b) != len(m):
        raise ValueError("right-hand side length does not match row count")
    ech = Echelon(field, n + 1)
    for row, rhs in zip(m, b):
        sparse = to_sparse(row)
        if rhs:
            sparse[n] = field(rhs)
        ech.add(sparse)
    if n in ech._rows:
        return None
    x = [field.zero] * n
    for c, row in ech._rows.items():
        x[c] = row.get(n, field.zero)
    return tuple(x)


def solve_sparse(rows: Iterable[tuple[dict, object]], nvars: int, field: Field):
    """Like :func:`solve` for sparse equations ``(coeffs, rhs)``.

    Returns ``(solution or None, dimension of the homogeneous solution space)``.
    """
    ech = Echelon(field, nvars + 1)
    for coeffs, rhs in rows:
        row = dict(coeffs)
        if rhs:
            row[nvars] = rhs
        ech.add(row)
    homogeneous_rank = ech.rank - (1 if nvars in ech._rows else 0)
    free = nvars - homogeneous_rank
    if nvars in ech._rows:
        return None, free
    x = [field.zero] * nvars
    for c, row in ech._rows.items():
        x[c] = row.get(nvars, field.zero)
    return tuple(x), free


def identity(n: int, field: Field) -> Matrix:
    z, o = field.zero, field.one
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def zeros(r: int, c: int, field: Field) -> Matrix:
    return tuple((field.zero,) * c for _ in range(r))


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    n = _ncols(m, ncols)
    return tuple(tuple(row[j] for row in m) for j in range(n))


def mat_vec(m: Sequence[Sequence], v: Sequence, field: Field) -> Vector:
    p = field.p
    out = []
    for row in m:
        s = sum((a * b for a, b in zip(row, v) if a and b), field.zero)
        out.append(s % p if p else s)
    return tuple(out)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence], field: Field, ncols: int | None = None) -> Matrix:
    bt = transpose(b, ncols)
    return tuple(mat_vec(bt, row, field) for row in a)


def vec_add(u: Sequence, v: Sequence, field: Field) -> Vector:
    if field.p:
        return tuple((a + b) % field.p for a, b in zip(u, v))
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence, field: Field) -> Vector:
    if field.p:
        return tuple((a - b) % field.p for a, b in zip(u, v))
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(s, v: Sequence, field: Field) -> Vector:
    if field.p:
        return tuple(s * a % field.p for a in v)
    return tuple(s * a for a in v)


def inverse(m: Sequence[Sequence], field: Field) -> Matrix | None:
    """Inverse of a square matrix, or None when singular."""
    n = len(m)
    ech = Echelon(field, 2 * n)
    for i, row in enumerate(m):
        sparse = to_sparse(row)
        sparse[n + i] = field.one
        ech.add(sparse)
    if ech.pivots[:n] != list(range(n)) or ech.rank != n:
        return None
    return tuple(tuple(ech._rows[i].get(n + j, field.zero) for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^ambient_dim stored by its RREF basis (no zero rows).

    Two subspaces are equal exactly when their bases are equal.
    """

    field: Field
    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
        ech = Echelon(field, ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise AmbientMismatchError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            ech.add(to_sparse(v))
        return ech.to_subspace()

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, identity(ambient_dim, field))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, v in enumerate(row) if v) for row in self.basis)

    def _check(self, other: Subspace) -> None:
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatchError(f"ambient dimensions {self.ambient_dim} and {other.ambient_dim} differ")
        if other.field != self.field:
            raise FieldError(f"fields {self.field} and {other.field} differ")

    def reduce(self, v: Sequence) -> Vector:
        """Canonical representative of ``v`` modulo this subspace."""
        if len(v) != self.ambient_dim:
            raise AmbientMismatchError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        red = Echelon.from_subspace(self).reduce(to_sparse(v))
        return to_dense(red, self.ambient_dim, self.field)

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in :attr:`basis`; ``v`` must lie in the span."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[c] for c in self.pivots)

    def sum(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.field, self.ambient_dim, self.basis + other.basis)

    __add__ = sum

    def intersect(self, other: Subspace) -> Subspace:
        """Intersection via the kernel of ``[A^T | -B^T]``."""
        self._check(other)
        a, b = self.basis, other.basis
        if not a or not b:
            return Subspace.zero(self.field, self.ambient_dim)
        neg = [tuple(-x % self.field.p if self.field.p else -x for x in row) for row in b]
        system = transpose(list(a) + neg, self.ambient_dim)
        ker = nullspace(system, self.field, len(a) + len(b))
        vectors = []
        for coeffs in ker.basis:
            v = (self.field.zero,) * self.ambient_dim
            for c, row in zip(coeffs[: len(a)], a):
                if c:
                    v = vec_add(v, vec_scale(c, row, self.field), self.field)
            vectors.append(v)
        return Subspace.span(self.field, self.ambient_dim, vectors)

    __and__ = intersect

    def issubspace(self, other: Subspace) -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    __le__ = issubspace

    def complement(self) -> Subspace:
        """Coordinate complement spanned by the non-pivot unit vectors."""
        piv = set(self.pivots)
        z, o = self.field.zero, self.field.one
        rows = tuple(
            tuple(o if j == i else z for j in range(self.ambient_dim))
            for i in range(self.ambient_dim)
            if i not in piv
        )
        return Subspace(self.field, self.ambient_dim, rows)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def complement(a: Subspace) -> Subspace:
    return a.complement()
