"""Run the structural results about perfect dialgebras on a concrete algebra.

Each row checks one statement (universal extensions force perfectness,
covers are perfect with trivial multiplier, ...) by direct computation and
reports PASS, FAIL or SKIP when the statement's hypotheses do not hold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .algebra import Algebra, LinearMap, center, check_axioms, derived, direct_sum, hom_to_field_dim, is_perfect, quotient
from .cohomology import CochainPair, coboundary, h2, multiplier
from .catalog import random_invertible
from .errors import DialgError
from .extensions import (
    CentralExtension,
    central_quotient_extension,
    certify_universal,
    compose,
    find_covering,
    from_cocycle,
    identity_extension,
    is_central,
    make_extension,
    pullback,
    random_central_extension,
    splits,
    universal_central_extension,
    verify_cover_properties,
)
from .linalg import Subspace, mat_vec

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass(frozen=True)
class Check:
    label: str
    statement: str
    status: str
    detail: str


def transform_cocycle(f: CochainPair, P) -> CochainPair:
    """Apply the k x k matrix P to the values of f."""
    entries = {}
    for op in ("left", "right"):
        t = f.table(op)
        for i in range(f.base_dim):
            for j in range(f.base_dim):
                for c, v in enumerate(mat_vec(P, t[i][j], f.field)):
                    if v:
                        entries[op, i, j, c] = v
    return CochainPair.from_entries(f.field, f.base_dim, f.coeff_dim, entries)


def twisted_universal_extension(L: Algebra, rng: random.Random) -> CentralExtension:
    """A second universal extension built independently of the default one:
    representatives chosen under the reversed coordinate order, mixed by a
    random automorphism of the kernel and shifted by a random coboundary."""
    n = L.dim
    order = list(reversed(range(2 * n * n)))
    E = universal_central_extension(L, order=order)
    k, field = E.kernel_dim, L.field
    P = random_invertible(k, field, rng) if k else ()
    g = LinearMap(field, n, k, tuple(tuple(field.random(rng) for _ in range(n)) for _ in range(k)))
    f = transform_cocycle(E.cocycle, P) + coboundary(L, g)
    return from_cocycle(L, f)


def abelianization_extension(E: CentralExtension) -> CentralExtension:
    """``0 -> A x H/H' -> H x H/H' -> L -> 0`` projecting the first factor."""
    H = E.total
    Q, _ = quotient(H, derived(H))
    total = direct_sum(H, Q)
    proj = LinearMap(E.field, total.dim, E.base.dim, tuple(row + (E.field.zero,) * Q.dim for row in E.projection.matrix))
    return make_extension(E.base, total, proj)


def sample_extensions(L: Algebra, rng: random.Random, samples: int) -> list[CentralExtension]:
    out = [identity_extension(L)]
    for k in (1, 2):
        out.extend(random_central_extension(L, k, rng) for _ in range(samples))
    for rep in multiplier(L).representatives:
        out.append(from_cocycle(L, rep))
    return out


class _Suite:
    def __init__(self, L: Algebra, seed: int, samples: int):
        self.L = L
        self.rng = random.Random(seed)
        self.samples = samples
        self.perfect = is_perfect(L)
        self.mult = multiplier(L).h2_dim
        self._uce = None

    @property
    def uce(self) -> CentralExtension:
        if self._uce is None:
            self._uce = universal_central_extension(self.L)
        return self._uce

    def needs_perfect(self):
        if not self.perfect:
            return SKIP, "hypothesis not met: L is not perfect"
        return None

    # -- rows -------------------------------------------------------------

    def axioms(self):
        report = check_axioms(self.L)
        return (PASS if report.ok else FAIL), report.summary()

    def uce_forces_perfect(self):
        E = self.uce if self.perfect else identity_extension(self.L)
        aux = abelianization_extension(E)
        cov = find_covering(E, aux)
        H_perfect = is_perfect(E.total)
        ok = cov.covers and (cov.solution_space_dim == 0) == H_perfect
        if not self.perfect:
            try:
                universal_central_extension(self.L)
                ok = False
            except DialgError:
                pass
        detail = (
            f"dim H/H'={hom_to_field_dim(E.total)} covering_family_dim={cov.solution_space_dim} "
            f"base_perfect={self.perfect}"
        )
        return (PASS if ok else FAIL), detail

    def uce_unique(self):
        E = self.uce
        E2 = twisted_universal_extension(self.L, self.rng)
        a, b = find_covering(E, E2), find_covering(E2, E)
        if not (a.unique and b.unique):
            return FAIL, "universal extensions do not cover each other uniquely"
        tau, tau1 = a.witness, b.witness
        roundtrip = (tau1.map @ tau.map).is_identity() and (tau.map @ tau1.map).is_identity()
        onto = tau.restriction.rank() == E2.kernel_dim and tau1.restriction.rank() == E.kernel_dim
        ok = roundtrip and onto
        return (PASS if ok else FAIL), f"mutually_inverse={roundtrip} kernel_onto={onto} kernel_dim={E.kernel_dim}"

    def perfect_cover_unique(self):
        E = self.uce
        targets = sample_extensions(self.L, self.rng, self.samples)
        results = [find_covering(E, E1) for E1 in targets]
        ok = all(r.covers and r.solution_space_dim == 0 for r in results)
        return (PASS if ok else FAIL), f"targets={len(targets)} all_unique={ok}"

    def trivial_iff_split(self):
        ident = certify_universal(identity_extension(self.L)).ok
        exts = sample_extensions(self.L, self.rng, self.samples)
        all_split = all(splits(E1) is not None for E1 in exts)
        ok = ident == all_split and ident == (self.mult == 0)
        return (PASS if ok else FAIL), f"identity_universal={ident} all_sampled_split={all_split} samples={len(exts)}"

    def _tower(self):
        E1 = self.uce
        E2 = central_quotient_extension(self.L, center(self.L))
        return E1, E2, compose(E1, E2)

    def composite_central(self):
        E1, E2, E3 = self._tower()
        ok = is_central(E3) and E3.kernel_dim == E1.kernel_dim + E2.kernel_dim
        return (PASS if ok else FAIL), f"composite_kernel_dim={E3.kernel_dim} central={is_central(E3)}"

    def composite_universal(self):
        E1, E2, E3 = self._tower()
        cert = certify_universal(E3)
        Hq = E2.base
        E4 = random_central_extension(Hq, 1, self.rng)
        T, proj_L, proj_S = pullback(E2.projection, E4.projection, self.L, E4.total, target=Hq)
        ET = make_extension(self.L, T, proj_L)
        alpha = find_covering(E1, ET)
        if not alpha.unique:
            return FAIL, "universal extension does not cover the pullback extension uniquely"
        beta = proj_S @ alpha.witness.map
        commutes = (E4.projection @ beta) == E3.projection
        direct = find_covering(E3, E4)
        ok = cert.ok and commutes and direct.unique and T.dim == self.L.dim + E4.total.dim - Hq.dim
        return (PASS if ok else FAIL), f"certified={cert.ok} pullback_dim={T.dim} induced_map_commutes={commutes}"

    def identity_universal(self):
        if self.mult != 0:
            return SKIP, "hypothesis not met: no universal extension of L has zero kernel"
        E = self.uce
        ok = E.kernel_dim == 0 and certify_universal(identity_extension(self.L)).ok
        return (PASS if ok else FAIL), f"identity_extension_universal={ok}"

    def cover(self):
        r = verify_cover_properties(self.L)
        ok = r.quotient_matches and r.kernel_in_center and r.kernel_in_derived and r.cover_perfect
        flags = " ".join(f"{k}={v}" for k, v in r.flags().items())
        return (PASS if ok else FAIL), f"cover_dim={r.cover.dim} {flags}"

    def uce_universal(self):
        cert = certify_universal(self.uce)
        return (PASS if cert.ok else FAIL), "; ".join(cert.reasons)

    def uce_kernel_multiplier(self):
        E = self.uce
        E2 = twisted_universal_extension(self.L, self.rng)
        ok = E.kernel_dim == self.mult == E2.kernel_dim and E.total.dim == self.L.dim + self.mult
        return (PASS if ok else FAIL), f"kernel_dim={E.kernel_dim} multiplier_dim={self.mult}"

    def trivial_multiplier_h2(self):
        if self.mult != 0:
            return SKIP, "hypothesis not met: M(L) != 0"
        dims = [h2(self.L, k).h2_dim for k in (1, 2, 3)]
        return (PASS if not any(dims) else FAIL), f"h2_dims(k=1,2,3)={dims}"

    def central_quotient(self):
        C = self.uce.total
        A = self.uce.kernel()
        ideals = [A, center(C)] + [Subspace.span(C.field, C.dim, A.basis[:j]) for j in range(A.dim)]
        if self.mult == 0:
            pairs = [(self.L, center(self.L))]
        else:
            pairs = []
        pairs += [(C, Z) for Z in dict.fromkeys(ideals)]
        bad = []
        for K, Z in pairs:
            Q, _ = quotient(K, Z)
            if multiplier(Q).h2_dim != Z.dim:
                bad.append(Z.dim)
        ok = not bad
        return (PASS if ok else FAIL), f"central_ideals_checked={len(pairs)} mismatches={len(bad)}"

    def cover_perfect_no_multiplier(self):
        C = self.uce.total
        m = multiplier(C).h2_dim
        ok = is_perfect(C) and m == 0
        return (PASS if ok else FAIL), f"cover_dim={C.dim} cover_perfect={is_perfect(C)} cover_multiplier_dim={m}"


# label, statement, method name, needs a perfect algebra
ROWS: tuple[tuple[str, str, str, bool], ...] = (
    ("axioms", "L satisfies both associativity laws and the three mixed identities", "axioms", False),
    ("uce-forces-perfect", "a universal central extension has perfect base and total", "uce_forces_perfect", False),
    ("uce-unique", "universal central extensions of L are isomorphic, kernel onto kernel", "uce_unique", True),
    ("perfect-cover-unique", "over a perfect total, covering implies unique covering", "perfect_cover_unique", True),
    ("trivial-iff-split", "0->0->L->L->0 is universal iff every central extension splits", "trivial_iff_split", True),
    ("composite-central", "composite of central extensions over a perfect total is central", "composite_central", True),
    ("composite-universal", "composite with a universal first stage is universal", "composite_universal", True),
    ("identity-universal", "a universal extension with zero kernel makes 0->0->L->L->0 universal", "identity_universal", True),
    ("cover", "the universal extension's total is a cover: K/M = L, M in Z(K) and K'", "cover", True),
    ("uce-universal", "the extension by the multiplier is universal", "uce_universal", True),
    ("uce-kernel-multiplier", "the kernel of a universal extension has the dimension of M(L)", "uce_kernel_multiplier", True),
    ("trivial-multiplier-h2", "M(L)=0 forces H^2(L,A)=0 for central A", "trivial_multiplier_h2", True),
    ("central-quotient", "for perfect K with M(K)=0 and central Z, dim M(K/Z) = dim Z", "central_quotient", True),
    ("cover-perfect-no-multiplier", "a cover of a perfect algebra is perfect with trivial multiplier", "cover_perfect_no_multiplier", True),
)


def verify_theorems(L: Algebra, seed: int = 0, samples: int = 3) -> list[Check]:
    suite = _Suite(L, seed, samples)
    out = []
    for label, statement, method, perfect_only in ROWS:
        fn: Callable = getattr(suite, method)
        if perfect_only and not suite.perfect:
            status, detail = suite.needs_perfect()
        else:
            try:
                status, detail = fn()
            except (DialgError, RuntimeError) as exc:
                status, detail = FAIL, f"{type(exc).__name__}: {exc}"
        out.append(Check(label, statement, status, detail))
    return out


def format_table(checks: list[Check]) -> str:
    width = max(len(c.label) for c in checks)
    lines = [f"{'statement'.ljust(width)}  status  detail"]
    for c in checks:
        lines.append(f"{c.label.ljust(width)}  {c.status.ljust(6)}  {c.detail}")
    return "\n".join(lines)
