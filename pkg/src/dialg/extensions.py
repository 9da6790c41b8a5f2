"""Central extensions, coverings between them, and universal central extensions.

Every extension ``0 -> A -> H -> L -> 0`` is stored with explicit maps; the
*frame* ``[embedding | section]`` identifies H with ``A (+) L``, and in that
frame the product of H is ``(a, x) * (b, y) = (f(x, y), x * y)`` where f is
the extension's cocycle.  Extensions built by :func:`from_cocycle` use the
canonical layout: kernel coordinates first, base coordinates second.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from .algebra import (
    PRODUCTS,
    Algebra,
    LinearMap,
    center,
    check_axioms,
    derived,
    direct_sum,
    is_homomorphism,
    is_ideal,
    is_perfect,
    quotient,
    subalgebra,
)
from .cohomology import CochainPair, h2, is_coboundary, multiplier, stack_cochains
from .errors import (
    ExtensionMismatchError,
    FieldError,
    InvalidSectionError,
    NotACocycleError,
    NotCentralError,
    NotHomomorphismError,
    NotPerfectError,
)
from .linalg import (
    Subspace,
    identity,
    inverse,
    mat_vec,
    nullspace,
    solve,
    solve_sparse,
    to_dense,
    vec_add,
    vec_sub,
)


def cocycle_total(L: Algebra, f: CochainPair) -> Algebra:
    """The algebra ``F^k (+) L`` with ``(a, x) * (b, y) = (f(x, y), x * y)``.

    No axiom check is made here; see :func:`from_cocycle`.
    """
    if f.base_dim != L.dim or f.field != L.field:
        raise ValueError("cochain does not match the algebra")
    k = f.coeff_dim
    entries = {}
    for (op, i, j, m), v in L.entries().items():
        entries[op, k + i, k + j, k + m] = v
    for (op, i, j, c), v in f.entries().items():
        entries[op, k + i, k + j, c] = v
    return Algebra.from_entries(L.field, k + L.dim, entries)


@dataclass(frozen=True)
class CentralExtension:
    base: Algebra
    total: Algebra
    projection: LinearMap  # total -> base
    embedding: LinearMap   # F^k -> total
    section: LinearMap     # base -> total, projection o section = id
    cocycle: CochainPair

    @property
    def kernel_dim(self) -> int:
        return self.embedding.source_dim

    @property
    def field(self):
        return self.base.field

    def kernel(self) -> Subspace:
        return self.embedding.image()

    @cached_property
    def frame_inverse(self) -> tuple:
        """Inverse of ``[embedding | section]``; its first k rows read off
        kernel coordinates."""
        return _frame_inverse(self.embedding, self.section)


def _frame(embedding: LinearMap, section: LinearMap) -> tuple:
    return tuple(a + b for a, b in zip(embedding.matrix, section.matrix))


def _frame_inverse(embedding: LinearMap, section: LinearMap) -> tuple:
    inv = inverse(_frame(embedding, section), embedding.field)
    if inv is None:
        raise InvalidSectionError("embedding and section do not span the total algebra")
    return inv


def _defect(total: Algebra, base: Algebra, embedding: LinearMap, section: LinearMap, frame_inv) -> CochainPair:
    n, k, field = base.dim, embedding.source_dim, base.field
    cols = section.columns()
    entries = {}
    for op in PRODUCTS:
        for i, j in iproduct(range(n), repeat=2):
            lifted = section(to_dense(base.basis_product(op, i, j), n, field))
            d = vec_sub(total.mul(op, cols[i], cols[j]), lifted, field)
            a = mat_vec(frame_inv[:k], d, field)
            for c, v in enumerate(a):
                if v:
                    entries[op, i, j, c] = v
    return CochainPair.from_entries(field, n, k, entries)


def make_extension(
    base: Algebra,
    total: Algebra,
    projection: LinearMap,
    embedding: LinearMap | None = None,
    section: LinearMap | None = None,
) -> CentralExtension:
    """Wrap a surjective homomorphism ``total -> base`` as an extension.

    Missing embedding/section are chosen deterministically (RREF kernel
    basis; free-variables-zero preimages).  Centrality is *not* enforced;
    use :func:`is_central`.
    """
    if base.field != total.field:
        raise FieldError("base and total are over different fields")
    field = base.field
    if projection.source_dim != total.dim or projection.target_dim != base.dim:
        raise ValueError("projection has the wrong shape")
    if not is_homomorphism(projection, total, base):
        raise NotHomomorphismError("projection is not a homomorphism")
    if projection.rank() != base.dim:
        raise ValueError("projection is not surjective")
    ker = projection.kernel()
    if embedding is None:
        embedding = LinearMap.from_columns(field, ker.dim, total.dim, ker.basis)
    elif embedding.image() != ker or embedding.rank() != embedding.source_dim:
        raise ValueError("embedding is not an isomorphism onto the kernel of the projection")
    if section is None:
        cols = [solve(projection.matrix, base.unit(i), field, total.dim) for i in range(base.dim)]
        section = LinearMap.from_columns(field, base.dim, total.dim, cols)
    elif not (projection @ section).is_identity():
        raise InvalidSectionError("projection o section is not the identity")
    frame_inv = _frame_inverse(embedding, section)
    f = _defect(total, base, embedding, section, frame_inv)
    return CentralExtension(base, total, projection, embedding, section, f)


def from_cocycle(L: Algebra, f: CochainPair) -> CentralExtension:
    """The extension of L by F^k defined by ``f`` in the canonical layout."""
    total = cocycle_total(L, f)
    report = check_axioms(total)
    if not report.ok:
        raise NotACocycleError(f"cochain is not a 2-cocycle: {report.summary()}", report)
    n, k, field = L.dim, f.coeff_dim, L.field
    eye = identity(n + k, field)
    projection = LinearMap(field, n + k, n, eye[k:])
    embedding = LinearMap.from_columns(field, k, n + k, eye[:k])
    section = LinearMap.from_columns(field, n, n + k, eye[k:])
    return CentralExtension(L, total, projection, embedding, section, f)


def identity_extension(L: Algebra) -> CentralExtension:
    """``0 -> 0 -> L -> L -> 0``."""
    return from_cocycle(L, CochainPair.zero(L.field, L.dim, 0))


def to_cocycle(E: CentralExtension, section: LinearMap | None = None) -> CochainPair:
    """Defect ``s(x) * s(y) - s(x * y)`` of a section, in kernel coordinates."""
    if section is None:
        return E.cocycle
    if section.source_dim != E.base.dim or section.target_dim != E.total.dim:
        raise InvalidSectionError("section has the wrong shape")
    if not (E.projection @ section).is_identity():
        raise InvalidSectionError("projection o section is not the identity")
    frame_inv = _frame_inverse(E.embedding, section)
    return _defect(E.total, E.base, E.embedding, section, frame_inv)


def is_central(E: CentralExtension) -> bool:
    return E.kernel() <= center(E.total)


def _require_central(*exts: CentralExtension) -> None:
    for E in exts:
        if not is_central(E):
            raise NotCentralError("extension kernel is not contained in the center of the total algebra")


def splits(E: CentralExtension) -> LinearMap | None:
    """A homomorphic section, or None when the extension does not split."""
    _require_central(E)
    g = is_coboundary(E.base, E.cocycle)
    if g is None:
        return None
    beta = LinearMap(
        E.field,
        E.base.dim,
        E.total.dim,
        tuple(vec_add(a, b, E.field) for a, b in zip(E.section.matrix, (E.embedding @ g).matrix)),
    )
    if not (is_homomorphism(beta, E.base, E.total) and (E.projection @ beta).is_identity()):
        raise RuntimeError("splitting map failed verification")
    return beta


def equivalent(E: CentralExtension, E1: CentralExtension) -> bool:
    """Same base and kernel dimension, cocycles differing by a coboundary."""
    if E.base != E1.base or E.kernel_dim != E1.kernel_dim:
        return False
    return is_coboundary(E.base, E.cocycle - E1.cocycle) is not None


# ---------------------------------------------------------------------------
# coverings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoveringMorphism:
    map: LinearMap          # tau: H -> H1
    restriction: LinearMap  # tau on the kernel: F^k -> F^k1


@dataclass(frozen=True)
class Covering:
    """Result of :func:`find_covering`.

    ``solution_space_dim`` is the dimension of the space of differences
    between covering morphisms; 0 means the covering (if any) is unique.
    """

    witness: CoveringMorphism | None
    solution_space_dim: int

    @property
    def covers(self) -> bool:
        return self.witness is not None

    @property
    def unique(self) -> bool:
        return self.witness is not None and self.solution_space_dim == 0


def find_covering(E: CentralExtension, E1: CentralExtension) -> Covering:
    """Homomorphisms ``tau: H -> H1`` with ``pi1 o tau = pi``.

    In the frames of both extensions ``tau(a, x) = (phi(a) + t(x), x)`` and,
    the kernels being central, ``tau`` is multiplicative iff
    ``phi o f + t o * = f1`` for both products: a linear system in
    ``(phi, t)``.
    """
    if E.base != E1.base:
        raise ExtensionMismatchError("extensions have different base algebras")
    _require_central(E, E1)
    L, field = E.base, E.field
    n, k, k1 = L.dim, E.kernel_dim, E1.kernel_dim
    nphi = k1 * k
    f, f1 = E.cocycle, E1.cocycle
    eqs = []
    for op in PRODUCTS:
        ft, f1t = f.table(op), f1.table(op)
        for i, j in iproduct(range(n), repeat=2):
            prod = L.basis_product(op, i, j)
            for c1 in range(k1):
                coeffs = {c1 * k + a: ft[i][j][a] for a in range(k) if ft[i][j][a]}
                for m, v in prod.items():
                    coeffs[nphi + c1 * n + m] = v
                eqs.append((coeffs, f1t[i][j][c1]))
    sol, free = solve_sparse(eqs, nphi + k1 * n, field)
    if sol is None:
        return Covering(None, free)
    phi = tuple(tuple(sol[c1 * k + a] for a in range(k)) for c1 in range(k1))
    t = tuple(tuple(sol[nphi + c1 * n + m] for m in range(n)) for c1 in range(k1))
    eye = identity(n, field)
    z = field.zero
    canon = tuple(phi[c1] + t[c1] for c1 in range(k1)) + tuple((z,) * k + eye[m] for m in range(n))
    canon_map = LinearMap(field, k + n, k1 + n, canon)
    frame1 = LinearMap(field, k1 + n, E1.total.dim, _frame(E1.embedding, E1.section))
    frame_inv = LinearMap(field, E.total.dim, k + n, E.frame_inverse)
    tau = frame1 @ canon_map @ frame_inv
    if not (is_homomorphism(tau, E.total, E1.total) and (E1.projection @ tau) == E.projection):
        raise RuntimeError("covering morphism failed verification")
    return Covering(CoveringMorphism(tau, LinearMap(field, k, k1, phi)), free)


# ---------------------------------------------------------------------------
# pullbacks and composition
# ---------------------------------------------------------------------------


def image_algebra(psi: LinearMap, L: Algebra) -> Algebra:
    """The algebra structure on ``F^h`` making a surjective ``psi: L -> F^h``
    a homomorphism (requires ``ker psi`` to be an ideal)."""
    if psi.rank() != psi.target_dim:
        raise ValueError("map is not surjective")
    if not is_ideal(L, psi.kernel()):
        raise NotHomomorphismError("kernel of the map is not an ideal")
    field, h = L.field, psi.target_dim
    pre = [solve(psi.matrix, u, field, L.dim) for u in identity(h, field)]
    entries = {}
    for op in PRODUCTS:
        for a, b in iproduct(range(h), repeat=2):
            for c, v in enumerate(psi(L.mul(op, pre[a], pre[b]))):
                if v:
                    entries[op, a, b, c] = v
    return Algebra.from_entries(field, h, entries)


def pullback(
    psi: LinearMap, mu: LinearMap, L: Algebra, S: Algebra, target: Algebra | None = None
) -> tuple[Algebra, LinearMap, LinearMap]:
    """``T = {(a, b) in L x S : psi(a) = mu(b)}`` with its two projections.

    ``psi: L -> Hq`` and ``mu: S -> Hq`` must be surjective homomorphisms
    onto a common algebra; when ``target`` is omitted it is the structure
    induced through ``psi``.
    """
    if psi.target_dim != mu.target_dim:
        raise ValueError("psi and mu have different targets")
    if psi.source_dim != L.dim or mu.source_dim != S.dim:
        raise ValueError("maps do not match the given algebras")
    if psi.rank() != psi.target_dim or mu.rank() != mu.target_dim:
        raise ValueError("psi and mu must be surjective")
    if target is None:
        target = image_algebra(psi, L)
    if not (is_homomorphism(psi, L, target) and is_homomorphism(mu, S, target)):
        raise NotHomomorphismError("pullback inputs are not homomorphisms onto a common algebra")
    field = L.field
    n, m = L.dim, S.dim
    system = tuple(
        tuple(row_psi) + tuple((-v) % field.p if field.p else -v for v in row_mu)
        for row_psi, row_mu in zip(psi.matrix, mu.matrix)
    )
    space = nullspace(system, field, n + m)
    T, incl = subalgebra(direct_sum(L, S), space)
    eye = identity(n + m, field)
    proj_L = LinearMap(field, n + m, n, eye[:n]) @ incl
    proj_S = LinearMap(field, n + m, m, eye[n:]) @ incl
    return T, proj_L, proj_S


def compose(E1: CentralExtension, E2: CentralExtension) -> CentralExtension:
    """``G -> L -> Hq`` from ``E1: B -> G -> L`` and ``E2: C -> L -> Hq``.

    The composite is central when G is perfect; that hypothesis is enforced.
    """
    if E1.base != E2.total:
        raise ExtensionMismatchError("base of the first extension is not the total of the second")
    if not is_perfect(E1.total):
        raise NotPerfectError("composite is only guaranteed central over a perfect total algebra")
    pi = E2.projection @ E1.projection
    section = E1.section @ E2.section
    E3 = make_extension(E2.base, E1.total, pi, section=section)
    if not is_central(E3):
        raise RuntimeError("composite of central extensions over a perfect total is not central")
    return E3


def central_quotient_extension(L: Algebra, Z: Subspace) -> CentralExtension:
    """``0 -> Z -> L -> L/Z -> 0`` for an ideal Z."""
    Q, proj = quotient(L, Z)
    embedding = LinearMap.from_columns(L.field, Z.dim, L.dim, Z.basis)
    return make_extension(Q, L, proj, embedding=embedding)


def random_central_extension(L: Algebra, k: int, rng: random.Random) -> CentralExtension:
    """Extension by a uniformly mixed element of Z^2(L, F^k)."""
    z2 = h2(L, k).z2
    field = L.field
    vec = [field.zero] * z2.ambient_dim
    for row in z2.basis:
        c = field.random(rng)
        if c:
            vec = [a + c * b for a, b in zip(vec, row)]
    if field.p:
        vec = [v % field.p for v in vec]
    return from_cocycle(L, CochainPair.from_vector(field, L.dim, k, vec))


# ---------------------------------------------------------------------------
# universal central extensions and covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    ok: bool
    reasons: tuple[str, ...]

    def __bool__(self):
        return self.ok


def certify_universal(E: CentralExtension) -> Certificate:
    """Universality via: kernel central, total perfect, M(total) = 0.

    A universal central extension has perfect total; conversely a central
    extension with perfect total whose total has trivial multiplier admits a
    unique covering onto every central extension of the base.
    """
    reasons = []
    central = is_central(E)
    reasons.append("kernel is central" if central else "kernel is not central")
    perfect = is_perfect(E.total)
    reasons.append("total algebra is perfect" if perfect else "total algebra is not perfect")
    if perfect:
        m = multiplier(E.total).h2_dim
        reasons.append(f"multiplier of the total algebra has dimension {m}")
        trivial = m == 0
    else:
        trivial = False
    return Certificate(central and perfect and trivial, tuple(reasons))


def universal_central_extension(L: Algebra, order=None) -> CentralExtension:
    """The extension of a perfect L by M(L) whose total algebra is the cover.

    The cocycle stacks the H^2(L, F) representatives chosen by :func:`h2`
    (``order`` permutes cochain coordinates to force a different choice).
    """
    if not is_perfect(L):
        raise NotPerfectError(f"{L} is not perfect; it has no universal central extension")
    res = h2(L, 1, order)
    f = stack_cochains(res.representatives, L.field, L.dim)
    E = from_cocycle(L, f)
    cert = certify_universal(E)
    if not cert:
        raise RuntimeError("constructed extension failed certification: " + "; ".join(cert.reasons))
    return E


@dataclass(frozen=True)
class DefiningPairReport:
    cover: Algebra
    multiplier_dim: int
    quotient_matches: bool       # K/M has the structure constants of L
    kernel_in_center: bool       # M inside Z(K)
    kernel_in_derived: bool      # M inside K'
    cover_perfect: bool
    cover_multiplier_dim: int
    quotient_multiplier_dim: int  # dim M(K/M), expected to equal dim M

    @property
    def ok(self) -> bool:
        return (
            self.quotient_matches
            and self.kernel_in_center
            and self.kernel_in_derived
            and self.cover_perfect
            and self.cover_multiplier_dim == 0
            and self.quotient_multiplier_dim == self.multiplier_dim
        )

    def flags(self) -> dict[str, bool]:
        return {
            "quotient_matches": self.quotient_matches,
            "kernel_in_center": self.kernel_in_center,
            "kernel_in_derived": self.kernel_in_derived,
            "cover_perfect": self.cover_perfect,
            "cover_multiplier_trivial": self.cover_multiplier_dim == 0,
            "central_quotient_roundtrip": self.quotient_multiplier_dim == self.multiplier_dim,
        }


def verify_cover_properties(L: Algebra) -> DefiningPairReport:
    E = universal_central_extension(L)
    C = E.total
    A = E.kernel()
    Q, _ = quotient(C, A)
    return DefiningPairReport(
        cover=C,
        multiplier_dim=E.kernel_dim,
        quotient_matches=Q == L,
        kernel_in_center=A <= center(C),
        kernel_in_derived=A <= derived(C),
        cover_perfect=is_perfect(C),
        cover_multiplier_dim=multiplier(C).h2_dim,
        quotient_multiplier_dim=multiplier(Q).h2_dim,
    )
