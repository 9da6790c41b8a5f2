"""Diassociative algebras given by structure constants.

An algebra of dimension ``n`` carries two tensors ``left[i][j][k]`` and
``right[i][j][k]`` with ``e_i -| e_j = sum_k left[i][j][k] e_k`` and
``e_i |- e_j = sum_k right[i][j][k] e_k``.  Indices are 0-based in code and
1-based only in the text format.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Mapping, Sequence

from .errors import AmbientMismatchError, FieldError, NotAnIdealError, NotClosedError
from .linalg import (
    Echelon,
    Field,
    Matrix,
    Subspace,
    Vector,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    to_dense,
    to_sparse,
    zeros,
)

LEFT, RIGHT = "left", "right"
PRODUCTS = (LEFT, RIGHT)


@dataclass(frozen=True)
class Algebra:
    field: Field
    dim: int
    left: tuple
    right: tuple
    name: str = dc_field(default="", compare=False)

    def __post_init__(self):
        n = self.dim
        for t in (self.left, self.right):
            if len(t) != n or any(len(r) != n or any(len(c) != n for c in r) for r in t):
                raise ValueError(f"structure tensors must be {n}x{n}x{n}")

    @classmethod
    def from_entries(
        cls,
        field: Field,
        dim: int,
        entries: Mapping[tuple[str, int, int, int], object],
        name: str = "",
    ) -> Algebra:
        """Build from ``{(product, i, j, k): value}`` with 0-based indices."""
        z = field.zero
        tensors = {op: [[[z] * dim for _ in range(dim)] for _ in range(dim)] for op in PRODUCTS}
        for (op, i, j, k), v in entries.items():
            tensors[op][i][j][k] = field(v)
        return cls(field, dim, _freeze(tensors[LEFT]), _freeze(tensors[RIGHT]), name)

    @classmethod
    def abelian(cls, field: Field, dim: int, name: str = "") -> Algebra:
        return cls.from_entries(field, dim, {}, name)

    def tensor(self, op: str) -> tuple:
        return self.left if op == LEFT else self.right

    def entries(self) -> dict[tuple[str, int, int, int], object]:
        """Nonzero structure constants keyed by ``(product, i, j, k)``."""
        out = {}
        for op in PRODUCTS:
            for (i, j), row in self._table[op].items():
                for k, v in row.items():
                    out[op, i, j, k] = v
        return out

    def with_field(self, field: Field) -> Algebra:
        """Reinterpret the structure constants in another field."""
        return Algebra.from_entries(field, self.dim, self.entries(), self.name)

    @cached_property
    def _table(self) -> dict[str, dict[tuple[int, int], dict[int, object]]]:
        out = {}
        for op in PRODUCTS:
            t = self.tensor(op)
            out[op] = {
                (i, j): to_sparse(t[i][j])
                for i in range(self.dim)
                for j in range(self.dim)
                if any(t[i][j])
            }
        return out

    def basis_product(self, op: str, i: int, j: int) -> dict:
        """``e_i * e_j`` as a sparse vector."""
        return self._table[op].get((i, j), {})

    def mul_sparse(self, op: str, x: dict, y: dict) -> dict:
        p = self.field.p
        out: dict = {}
        table = self._table[op]
        for i, a in x.items():
            for j, b in y.items():
                prod = table.get((i, j))
                if not prod:
                    continue
                ab = a * b
                for k, c in prod.items():
                    out[k] = out.get(k, 0) + ab * c
        if p:
            out = {k: v % p for k, v in out.items()}
        return {k: v for k, v in out.items() if v}

    def mul(self, op: str, x: Sequence, y: Sequence) -> Vector:
        return to_dense(self.mul_sparse(op, to_sparse(x), to_sparse(y)), self.dim, self.field)

    def unit(self, i: int) -> Vector:
        return identity(self.dim, self.field)[i]

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def __str__(self):
        return self.name or f"Algebra(dim={self.dim}, field={self.field})"


def _freeze(t) -> tuple:
    return tuple(tuple(tuple(c) for c in r) for r in t)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

# Each identity is (name, lhs, rhs) where a side is (outer, inner, nesting).
# "l" nesting means (x o1 y) o2 z, "r" means x o2 (y o1 z).
IDENTITIES = (
    ("assoc-left", (LEFT, LEFT, "l"), (LEFT, LEFT, "r")),     # (x-|y)-|z = x-|(y-|z)
    ("left-absorb", (LEFT, LEFT, "r"), (LEFT, RIGHT, "r")),   # x-|(y-|z) = x-|(y|-z)
    ("middle", (LEFT, RIGHT, "l"), (RIGHT, LEFT, "r")),       # (x|-y)-|z = x|-(y-|z)
    ("right-absorb", (RIGHT, LEFT, "l"), (RIGHT, RIGHT, "l")),  # (x-|y)|-z = (x|-y)|-z
    ("assoc-right", (RIGHT, RIGHT, "l"), (RIGHT, RIGHT, "r")),  # (x|-y)|-z = x|-(y|-z)
)


@dataclass(frozen=True)
class Violation:
    identity: str
    triple: tuple[int, int, int]
    lhs: Vector
    rhs: Vector


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "all identities hold"
        v = self.violations[0]
        i, j, k = (t + 1 for t in v.triple)
        return f"{len(self.violations)} violation(s); first: {v.identity} at (e{i}, e{j}, e{k})"


def _side(L: Algebra, side, i, j, k) -> dict:
    outer, inner, nest = side
    ei, ej, ek = {i: L.field.one}, {j: L.field.one}, {k: L.field.one}
    if nest == "l":
        return L.mul_sparse(outer, L.mul_sparse(inner, ei, ej), ek)
    return L.mul_sparse(outer, ei, L.mul_sparse(inner, ej, ek))


def check_axioms(L: Algebra) -> AxiomReport:
    """Check associativity of both products and the three mixed identities
    on every basis triple, collecting every violation."""
    bad = []
    n = L.dim
    for name, lhs, rhs in IDENTITIES:
        for i, j, k in iproduct(range(n), repeat=3):
            a = _side(L, lhs, i, j, k)
            b = _side(L, rhs, i, j, k)
            if a != b:
                bad.append(Violation(name, (i, j, k), to_dense(a, n, L.field), to_dense(b, n, L.field)))
    return AxiomReport(tuple(bad))


def satisfies_axioms(L: Algebra) -> bool:
    """Like ``check_axioms(L).ok`` but stops at the first violation."""
    for _, lhs, rhs in IDENTITIES:
        for i, j, k in iproduct(range(L.dim), repeat=3):
            if _side(L, lhs, i, j, k) != _side(L, rhs, i, j, k):
                return False
    return True


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------


def _check_space(L: Algebra, S: Subspace) -> None:
    if S.ambient_dim != L.dim:
        raise AmbientMismatchError(f"subspace of F^{S.ambient_dim} used in an algebra of dimension {L.dim}")


def diamond(S: Subspace, T: Subspace, L: Algebra) -> Subspace:
    """Span of all ``s -| t`` and ``s |- t`` for s in S, t in T."""
    _check_space(L, S)
    _check_space(L, T)
    ech = Echelon(L.field, L.dim)
    for s in S.basis:
        for t in T.basis:
            xs, xt = to_sparse(s), to_sparse(t)
            for op in PRODUCTS:
                ech.add(L.mul_sparse(op, xs, xt))
    return ech.to_subspace()


def derived(L: Algebra) -> Subspace:
    ech = Echelon(L.field, L.dim)
    for op in PRODUCTS:
        ech.extend(L._table[op].values())
    return ech.to_subspace()


def is_perfect(L: Algebra) -> bool:
    return derived(L).dim == L.dim


def hom_to_field_dim(L: Algebra) -> int:
    """Dimension of the space of homomorphisms from L to the 1-dimensional
    algebra with zero products, i.e. ``dim L - dim L'``."""
    return L.dim - derived(L).dim


def center(L: Algebra) -> Subspace:
    """Two-sided annihilator of both products."""
    n = L.dim
    rows = []
    for op in PRODUCTS:
        t = L.tensor(op)
        for j in range(n):
            for k in range(n):
                rows.append(tuple(t[i][j][k] for i in range(n)))  # z * e_j
                rows.append(tuple(t[j][i][k] for i in range(n)))  # e_j * z
    return nullspace(rows, L.field, n)


@dataclass(frozen=True)
class MultiplicationOperators:
    """Left and right multiplication by a fixed element, as matrices acting on
    column vectors."""

    left_left: Matrix   # x -> a -| x
    left_right: Matrix  # x -> a |- x
    right_left: Matrix  # x -> x -| a
    right_right: Matrix  # x -> x |- a


def multiplication_operators(L: Algebra, a: Sequence) -> MultiplicationOperators:
    cols = {
        "ll": [L.mul(LEFT, a, L.unit(j)) for j in range(L.dim)],
        "lr": [L.mul(RIGHT, a, L.unit(j)) for j in range(L.dim)],
        "rl": [L.mul(LEFT, L.unit(j), a) for j in range(L.dim)],
        "rr": [L.mul(RIGHT, L.unit(j), a) for j in range(L.dim)],
    }
    t = {key: tuple(zip(*c)) if c else () for key, c in cols.items()}
    return MultiplicationOperators(t["ll"], t["lr"], t["rl"], t["rr"])


def is_ideal(L: Algebra, S: Subspace) -> bool:
    full = L.full()
    return diamond(S, full, L).sum(diamond(full, S, L)) <= S


def is_subalgebra(L: Algebra, S: Subspace) -> bool:
    return diamond(S, S, L) <= S


# ---------------------------------------------------------------------------
# linear maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearMap:
    """``x -> matrix @ x`` from F^source_dim to F^target_dim."""

    field: Field
    source_dim: int
    target_dim: int
    matrix: Matrix

    def __post_init__(self):
        if len(self.matrix) != self.target_dim or any(len(r) != self.source_dim for r in self.matrix):
            raise ValueError(f"matrix shape does not match {self.target_dim}x{self.source_dim}")

    @classmethod
    def from_columns(cls, field: Field, source_dim: int, target_dim: int, columns: Sequence[Sequence]) -> LinearMap:
        if source_dim == 0:
            return cls(field, 0, target_dim, tuple(() for _ in range(target_dim)))
        return cls(field, source_dim, target_dim, tuple(zip(*columns)))

    @classmethod
    def identity(cls, field: Field, n: int) -> LinearMap:
        return cls(field, n, n, identity(n, field))

    @classmethod
    def zero(cls, field: Field, source_dim: int, target_dim: int) -> LinearMap:
        return cls(field, source_dim, target_dim, zeros(target_dim, source_dim, field))

    def __call__(self, v: Sequence) -> Vector:
        return mat_vec(self.matrix, v, self.field)

    def columns(self) -> list[Vector]:
        return [tuple(row[j] for row in self.matrix) for j in range(self.source_dim)]

    def compose(self, other: LinearMap) -> LinearMap:
        """``self o other``."""
        if other.target_dim != self.source_dim:
            raise ValueError("dimension mismatch in composition")
        if other.source_dim == 0:
            return LinearMap.zero(self.field, 0, self.target_dim)
        m = mat_mul(self.matrix, other.matrix, self.field, other.source_dim)
        if self.target_dim == 0:
            m = ()
        return LinearMap(self.field, other.source_dim, self.target_dim, m)

    __matmul__ = compose

    def image(self) -> Subspace:
        return Subspace.span(self.field, self.target_dim, self.columns())

    def kernel(self) -> Subspace:
        return nullspace(self.matrix, self.field, self.source_dim)

    def rank(self) -> int:
        return self.image().dim

    def is_identity(self) -> bool:
        return self.source_dim == self.target_dim and self.matrix == identity(self.source_dim, self.field)


def is_homomorphism(f: LinearMap, L1: Algebra, L2: Algebra) -> bool:
    """``f(x * y) = f(x) * f(y)`` on all basis pairs for both products."""
    if f.source_dim != L1.dim or f.target_dim != L2.dim:
        return False
    cols = f.columns()
    for op in PRODUCTS:
        for i in range(L1.dim):
            for j in range(L1.dim):
                lhs = f(to_dense(L1.basis_product(op, i, j), L1.dim, L1.field))
                if lhs != L2.mul(op, cols[i], cols[j]):
                    return False
    return True


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def quotient(L: Algebra, I: Subspace) -> tuple[Algebra, LinearMap]:
    """``L/I`` on the coordinate complement of ``I`` plus the projection."""
    _check_space(L, I)
    if not is_ideal(L, I):
        raise NotAnIdealError("subspace is not a two-sided ideal")
    ech = Echelon.from_subspace(I)
    keep = [c for c in range(L.dim) if c not in set(I.pivots)]
    pos = {c: t for t, c in enumerate(keep)}
    m = len(keep)

    def project(v: dict) -> dict:
        return {pos[c]: x for c, x in ech.reduce(v).items()}

    entries = {}
    for op in PRODUCTS:
        for a, i in enumerate(keep):
            for b, j in enumerate(keep):
                for k, x in project(L.basis_product(op, i, j)).items():
                    entries[op, a, b, k] = x
    Q = Algebra.from_entries(L.field, m, entries)
    cols = [to_dense(project({c: L.field.one}), m, L.field) for c in range(L.dim)]
    return Q, LinearMap.from_columns(L.field, L.dim, m, cols)


def direct_sum(L1: Algebra, L2: Algebra) -> Algebra:
    if L1.field != L2.field:
        raise FieldError(f"cannot add algebras over {L1.field} and {L2.field}")
    n1 = L1.dim
    entries = dict(L1.entries())
    for (op, i, j, k), v in L2.entries().items():
        entries[op, i + n1, j + n1, k + n1] = v
    name = f"{L1.name}+{L2.name}" if L1.name and L2.name else ""
    return Algebra.from_entries(L1.field, n1 + L2.dim, entries, name)


def subalgebra(L: Algebra, S: Subspace) -> tuple[Algebra, LinearMap]:
    """The subalgebra on the RREF basis of ``S`` and its inclusion map.

    Coordinates of a vector of ``S`` in the RREF basis are its entries at the
    pivot columns.
    """
    _check_space(L, S)
    piv = S.pivots
    entries = {}
    for op in PRODUCTS:
        for a, u in enumerate(S.basis):
            for b, v in enumerate(S.basis):
                w = L.mul(op, u, v)
                if not S.contains(w):
                    raise NotClosedError("subspace is not closed under multiplication")
                for c, p in enumerate(piv):
                    if w[p]:
                        entries[op, a, b, c] = w[p]
    T = Algebra.from_entries(L.field, S.dim, entries)
    return T, LinearMap.from_columns(L.field, S.dim, L.dim, S.basis)


def change_basis(L: Algebra, P: Sequence[Sequence]) -> Algebra:
    """The isomorphic algebra whose basis vectors are the columns of ``P``
    (invertible) written in the old basis."""
    Pinv = inverse(P, L.field)
    if Pinv is None:
        raise ValueError("change of basis matrix is singular")
    n = L.dim
    cols = [tuple(row[j] for row in P) for j in range(n)]
    entries = {}
    for op in PRODUCTS:
        for i in range(n):
            for j in range(n):
                w = mat_vec(Pinv, L.mul(op, cols[i], cols[j]), L.field)
                for k, x in enumerate(w):
                    if x:
                        entries[op, i, j, k] = x
    return Algebra.from_entries(L.field, n, entries, L.name)


def image_of(f: LinearMap, S: Subspace) -> Subspace:
    return Subspace.span(f.field, f.target_dim, [f(v) for v in S.basis])


def span_of(L: Algebra, vectors: Iterable[Sequence]) -> Subspace:
    return Subspace.span(L.field, L.dim, vectors)
