"""Second cohomology with central (annihilated) coefficients.

A cochain pair ``(f_left, f_right)`` assigns to every pair of basis vectors
of L a vector of F^k for each product.  It is a 2-cocycle exactly when the
algebra built by :func:`dialg.extensions.from_cocycle` satisfies the
dialgebra identities.  Expanding an identity on the extension
``(a, x) * (b, y) = (f(x, y), x * y)`` leaves only the F^k component of each
side, which is ``f_outer(x inner y, z)`` or ``f_outer(x, y inner z)``; that
is how :func:`cocycle_system` reads its rows off :data:`IDENTITIES`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Sequence

from .algebra import IDENTITIES, PRODUCTS, Algebra, LinearMap, check_axioms
from .errors import AxiomError, NotACocycleError
from .linalg import Echelon, Field, Matrix, Subspace, Vector, solve_sparse, to_dense

_OP_INDEX = {op: t for t, op in enumerate(PRODUCTS)}


@dataclass(frozen=True)
class CochainPair:
    """``left[i][j]`` and ``right[i][j]`` are length-k tuples."""

    field: Field
    base_dim: int
    coeff_dim: int
    left: tuple
    right: tuple

    @classmethod
    def zero(cls, field: Field, n: int, k: int) -> CochainPair:
        z = tuple(tuple((field.zero,) * k for _ in range(n)) for _ in range(n))
        return cls(field, n, k, z, z)

    @classmethod
    def from_vector(cls, field: Field, n: int, k: int, vec: Sequence) -> CochainPair:
        if len(vec) != 2 * n * n * k:
            raise ValueError(f"cochain vector must have length {2 * n * n * k}")
        halves = []
        for o in range(2):
            halves.append(
                tuple(
                    tuple(tuple(vec[coord(n, k, o, i, j, c)] for c in range(k)) for j in range(n))
                    for i in range(n)
                )
            )
        return cls(field, n, k, halves[0], halves[1])

    @classmethod
    def from_entries(cls, field: Field, n: int, k: int, entries) -> CochainPair:
        """From ``{(product, i, j, c): value}``, 0-based."""
        vec = [field.zero] * (2 * n * n * k)
        for (op, i, j, c), v in entries.items():
            vec[coord(n, k, _OP_INDEX[op], i, j, c)] = field(v)
        return cls.from_vector(field, n, k, vec)

    def table(self, op: str) -> tuple:
        return self.left if op == PRODUCTS[0] else self.right

    def to_vector(self) -> Vector:
        n, k = self.base_dim, self.coeff_dim
        out = [self.field.zero] * (2 * n * n * k)
        for o, op in enumerate(PRODUCTS):
            t = self.table(op)
            for i, j, c in iproduct(range(n), range(n), range(k)):
                out[coord(n, k, o, i, j, c)] = t[i][j][c]
        return tuple(out)

    def entries(self) -> dict:
        n, k = self.base_dim, self.coeff_dim
        out = {}
        for op in PRODUCTS:
            t = self.table(op)
            for i, j, c in iproduct(range(n), range(n), range(k)):
                if t[i][j][c]:
                    out[op, i, j, c] = t[i][j][c]
        return out

    def __add__(self, other: CochainPair) -> CochainPair:
        p = self.field.p
        vec = [a + b for a, b in zip(self.to_vector(), other.to_vector())]
        if p:
            vec = [v % p for v in vec]
        return CochainPair.from_vector(self.field, self.base_dim, self.coeff_dim, vec)

    def __neg__(self) -> CochainPair:
        p = self.field.p
        vec = [(-v) % p if p else -v for v in self.to_vector()]
        return CochainPair.from_vector(self.field, self.base_dim, self.coeff_dim, vec)

    def __sub__(self, other: CochainPair) -> CochainPair:
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.to_vector())


def coord(n: int, k: int, op_index: int, i: int, j: int, c: int) -> int:
    """Position of ``f_op(e_i, e_j)_c``; order is (product, i, j, coefficient)."""
    return ((op_index * n + i) * n + j) * k + c


def stack_cochains(pairs: Sequence[CochainPair], field: Field, n: int) -> CochainPair:
    """One cochain with values in F^m whose m coordinates are the given 1-dimensional cochains."""
    m = len(pairs)
    entries = {}
    for c, f in enumerate(pairs):
        if f.coeff_dim != 1 or f.base_dim != n:
            raise ValueError("stack_cochains expects 1-dimensional cochains on the same base")
        for (op, i, j, _), v in f.entries().items():
            entries[op, i, j, c] = v
    return CochainPair.from_entries(field, n, m, entries)


def _require_axioms(L: Algebra) -> None:
    report = check_axioms(L)
    if not report.ok:
        raise AxiomError(f"{L} is not a diassociative algebra: {report.summary()}", report)


def _term(L: Algebra, side, x, y, z, k: int, c: int, sign) -> dict:
    """Sparse coefficients of ``+-f_outer(...)_c`` in cochain coordinates."""
    outer, inner, nest = side
    n = L.dim
    o = _OP_INDEX[outer]
    out = {}
    if nest == "l":
        for m, v in L.basis_product(inner, x, y).items():
            out[coord(n, k, o, m, z, c)] = sign * v
    else:
        for m, v in L.basis_product(inner, y, z).items():
            out[coord(n, k, o, x, m, c)] = sign * v
    return out


def _cocycle_rows(L: Algebra, k: int) -> list[dict]:
    n, p = L.dim, L.field.p
    rows = []
    for _, lhs, rhs in IDENTITIES:
        for x, y, z in iproduct(range(n), repeat=3):
            for c in range(k):
                row = _term(L, lhs, x, y, z, k, c, 1)
                for key, v in _term(L, rhs, x, y, z, k, c, -1).items():
                    row[key] = row.get(key, 0) + v
                row = {key: (v % p if p else v) for key, v in row.items()}
                row = {key: v for key, v in row.items() if v}
                if row:
                    rows.append(row)
    return rows


def cocycle_system(L: Algebra, k: int) -> Matrix:
    """The linear constraints on the ``2 n^2 k`` cochain coordinates.

    Rows are deduplicated and sorted, so the matrix does not depend on the
    order in which basis triples were visited.
    """
    _require_axioms(L)
    ncols = 2 * L.dim * L.dim * k
    dense = {to_dense(r, ncols, L.field) for r in _cocycle_rows(L, k)}
    return tuple(sorted(dense))


def is_cocycle(L: Algebra, f: CochainPair) -> bool:
    vec = f.to_vector()
    p = L.field.p
    for row in _cocycle_rows(L, f.coeff_dim):
        s = sum(v * vec[c] for c, v in row.items())
        if (s % p if p else s) != 0:
            return False
    return True


def coboundary(L: Algebra, g: LinearMap) -> CochainPair:
    """``(g o -|, g o |-)`` for a linear map ``g: L -> F^k``."""
    n, k = L.dim, g.target_dim
    entries = {}
    for op in PRODUCTS:
        for i, j in iproduct(range(n), repeat=2):
            w = g(to_dense(L.basis_product(op, i, j), n, L.field))
            for c, v in enumerate(w):
                if v:
                    entries[op, i, j, c] = v
    return CochainPair.from_entries(L.field, n, k, entries)


def _coboundary_vectors(L: Algebra, k: int) -> list[dict]:
    n = L.dim
    out = []
    for c in range(k):
        for m in range(n):
            vec = {}
            for o, op in enumerate(PRODUCTS):
                t = L.tensor(op)
                for i, j in iproduct(range(n), repeat=2):
                    if t[i][j][m]:
                        vec[coord(n, k, o, i, j, c)] = t[i][j][m]
            out.append(vec)
    return out


def coboundary_space(L: Algebra, k: int) -> Subspace:
    """Span of all ``(g o -|, g o |-)``; its dimension is ``k dim L'``."""
    ech = Echelon(L.field, 2 * L.dim * L.dim * k)
    ech.extend(_coboundary_vectors(L, k))
    return ech.to_subspace()


@dataclass(frozen=True)
class CohomologyResult:
    field: Field
    base_dim: int
    coeff_dim: int
    z2: Subspace
    b2: Subspace
    representatives: tuple[CochainPair, ...]

    @property
    def z2_dim(self) -> int:
        return self.z2.dim

    @property
    def b2_dim(self) -> int:
        return self.b2.dim

    @property
    def h2_dim(self) -> int:
        return self.z2.dim - self.b2.dim


def h2(L: Algebra, k: int = 1, order: Sequence[int] | None = None) -> CohomologyResult:
    """H^2(L, F^k) with trivial action.

    Representatives are the Z^2 basis vectors (in RREF with respect to the
    coordinate permutation ``order``) that are independent modulo B^2, each
    reduced to its canonical form modulo B^2.
    """
    return _h2(L, k, tuple(order) if order is not None else None)


@lru_cache(maxsize=256)
def _h2(L: Algebra, k: int, order: tuple[int, ...] | None) -> CohomologyResult:
    _require_axioms(L)
    n, field = L.dim, L.field
    ncols = 2 * n * n * k
    system = Echelon(field, ncols)
    system.extend(_cocycle_rows(L, k))
    kernel = system.kernel_basis()
    if order is not None:
        if sorted(order) != list(range(ncols)):
            raise ValueError("order must be a permutation of the cochain coordinates")
        permuted = Echelon(field, ncols)
        permuted.extend({t: v[order[t]] for t in range(ncols) if v.get(order[t])} for v in kernel)
        kernel = [{order[t]: x for t, x in row.items()} for row in permuted.sparse_rows()]
    z2 = Echelon(field, ncols)
    z2.extend(kernel)
    b2 = Echelon(field, ncols)
    b2.extend(_coboundary_vectors(L, k))
    seen = Echelon.from_subspace(b2.to_subspace())
    reps = []
    candidates = kernel if order is not None else z2.sparse_rows()
    for z in candidates:
        if seen.add(z) is not None:
            reps.append(CochainPair.from_vector(field, n, k, to_dense(b2.reduce(z), ncols, field)))
    return CohomologyResult(field, n, k, z2.to_subspace(), b2.to_subspace(), tuple(reps))


def multiplier(L: Algebra) -> CohomologyResult:
    """M(L) computed as H^2(L, F); ``multiplier(L).h2_dim`` is ``dim M(L)``."""
    return h2(L, 1)


def is_coboundary(L: Algebra, f: CochainPair) -> LinearMap | None:
    """A linear ``g: L -> F^k`` with ``f = (g o -|, g o |-)``, or None."""
    if not is_cocycle(L, f):
        raise NotACocycleError("cochain pair does not satisfy the cocycle identities")
    n, k = L.dim, f.coeff_dim
    eqs = []
    for o, op in enumerate(PRODUCTS):
        t = f.table(op)
        for i, j in iproduct(range(n), repeat=2):
            prod = L.basis_product(op, i, j)
            for c in range(k):
                coeffs = {c * n + m: v for m, v in prod.items()}
                eqs.append((coeffs, t[i][j][c]))
    sol, _ = solve_sparse(eqs, n * k, L.field)
    if sol is None:
        return None
    matrix = tuple(tuple(sol[c * n + m] for m in range(n)) for c in range(k))
    return LinearMap(L.field, n, k, matrix)

