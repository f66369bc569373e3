"""Determinantal models of the Bordiga and Palatini scrolls in P^5.

Bordiga: the 3x3 minors of a 4x3 matrix ``M(x)`` of random linear forms.  The
scroll map sends ``x`` to the kernel ``λ`` of ``M(x)``; writing
``M(x) λ = N(λ) x`` the fibre over ``λ ∈ P^2`` is the line ``N(λ) x = 0``.

Palatini: four skew 6x6 matrices ``A_k``; ``X`` is where the 6x4 matrix with
columns ``A_k x`` drops rank, the base surface is the Pfaffian cubic
``V = {Pf(Σ λ_k A_k) = 0}`` and the fibre over ``λ ∈ V`` is ``ker A(λ)``.
With ``plant_lines`` the pencils ``<A_0, A_1>`` and ``<A_2, A_3>`` are made of
block-diagonal matrices (in two random bases), so ``V`` contains the skew
lines ``{λ2 = λ3 = 0}`` and ``{λ0 = λ1 = 0}``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Callable

from ..algebra.field import Field
from ..algebra.linalg import nullspace, random_invertible, rank
from ..algebra.polymatrix import det, maximal_minors_signed, minors, pfaffian
from ..algebra.ring import Poly, PolyRing
from ..geometry.maps import RationalMap
from ..geometry.sampling import points_on_hypersurface, random_point
from ..geometry.variety import Variety
from ..ideals.ideal import Ideal

log = logging.getLogger(__name__)


class GenericityError(RuntimeError):
    """A random draw landed in a special position; retry with another seed."""


@dataclass
class ScrollInstance:
    name: str
    field: Field
    ring: PolyRing                      # coordinates x0..x5 on P^5
    X: Variety
    V: Variety                          # base surface, in the λ ring
    u: RationalMap                      # X -> V
    fiber_rows: list[list[Poly]]        # K(λ): rows of linear forms in λ, one column per x_i
    kernel_rows: list[int]              # rows of K(λ) cutting the fibre for general λ ∈ V
    expected_degree: int
    expected_genus: int
    seed: int = 0
    data: dict = field(default_factory=dict)
    u_presentations: list = field(default_factory=list)   # forms of u from different minors

    @property
    def lam_ring(self) -> PolyRing:
        return self.V.ring

    @property
    def r(self) -> int:
        return self.ring.nvars - 1

    def fiber_matrix_at(self, lam) -> list[list[int]]:
        return [[c.evaluate(lam) for c in row] for row in self.fiber_rows]

    def fiber_points(self, lam) -> list[list[int]]:
        """Two points spanning the fibre line over ``lam``."""
        K = self.fiber_matrix_at(lam)
        ker = nullspace(K, self.field, self.ring.nvars)
        if len(ker) != 2:
            raise GenericityError(f"fibre over {lam} has projective dimension {len(ker) - 1}")
        return [[int(c) for c in v] for v in ker]

    def fiber_ideal(self, lam) -> Ideal:
        K = self.fiber_matrix_at(lam)
        forms = [self.ring.linear_form(row) for row in K]
        return Ideal([f for f in forms if f], self.ring)

    def random_base_point(self, rng) -> list[int]:
        if self.V.ideal.is_zero():
            return random_point(self.lam_ring.nvars, self.field, rng)
        f = self.V.ideal.gens[0]
        return points_on_hypersurface(f, rng, 1)[0]

    def sampler(self) -> Callable:
        """Random points of X: a random fibre, then a random point on it."""
        fld = self.field

        def sample(rng):
            while True:
                lam = self.random_base_point(rng)
                try:
                    a, b = self.fiber_points(lam)
                except GenericityError:
                    continue
                s, t = fld.random(rng), fld.random_nonzero(rng)
                pt = [fld.add(fld.mul(s, x), fld.mul(t, y)) for x, y in zip(a, b)]
                if any(pt):
                    return pt

        return sample

    def kernel_block(self) -> list[list[Poly]]:
        return [self.fiber_rows[i] for i in self.kernel_rows]

    def constant_row(self, l: Poly) -> list[Poly]:
        """Coefficients of a linear form in x as constants of the λ ring."""
        n = self.ring.nvars
        return [self.lam_ring.constant(l.coefficient(tuple(int(j == i) for j in range(n)))) for i in range(n)]

    def section_curve(self, l0: Poly, l1: Poly) -> Poly:
        """Form on the base cutting the fibres that meet ``{l0 = l1 = 0}``.

        Bordiga: ``det [N(λ); l0; l1]``.  Palatini: the Pfaffian of ``A(λ)``
        bordered by the two rows, a quadric.
        """
        L = self.lam_ring
        r0, r1 = self.constant_row(l0), self.constant_row(l1)
        if self.name == "bordiga":
            return det([list(r) for r in self.fiber_rows] + [r0, r1], L)
        n = self.ring.nvars
        zero = L.zero()
        B = [list(self.fiber_rows[i]) + [r0[i], r1[i]] for i in range(n)]
        B.append([-c for c in r0] + [zero, zero])
        B.append([-c for c in r1] + [zero, zero])
        return pfaffian(B, L)

    def limit_direction(self, l0: Poly, l1: Poly, rng) -> tuple[Poly, Poly]:
        """Forms ``(b0, b1)`` on the base giving ``(l0 : l1)`` along the fibre, for fibres meeting ``{l0 = l1 = 0}``.

        With ``K`` the kernel block and ``r`` a random constant row,
        ``b = (-det[K; l0; r], det[K; r; l1])``.
        """
        L = self.lam_ring
        fld = self.field
        r = self.constant_row(self.ring.linear_form([fld.random(rng) for _ in range(self.ring.nvars)]))
        K = [list(row) for row in self.kernel_block()]
        d1 = det(K + [self.constant_row(l0), r], L)
        d0 = det(K + [r, self.constant_row(l1)], L)
        return -d1, d0


def _random_linear_matrix(ring: PolyRing, rows: int, cols: int, rng) -> tuple[list, list]:
    fld = ring.field
    coeffs = [[[fld.random(rng) for _ in range(ring.nvars)] for _ in range(cols)] for _ in range(rows)]
    return coeffs, [[ring.linear_form(c) for c in row] for row in coeffs]


# --------------------------------------------------------------------------
# Bordiga
# --------------------------------------------------------------------------

def build_bordiga(field: Field, seed: int = 1, retries: int = 20,
                  adjust: Callable | None = None) -> ScrollInstance:
    """A Bordiga scroll from a random 4x3 linear matrix, retried until X has degree 6.

    ``adjust(coeffs, rng)`` may rewrite the coefficient array ``m[i][j][k]``
    (coefficient of ``x_k`` in entry ``(i, j)``) before X is built.
    """
    last = None
    for attempt in range(retries):
        rng = random.Random(seed * 1_000_003 + attempt)
        try:
            inst = _bordiga_attempt(field, rng, adjust)
            inst.seed = seed
            inst.data["attempt"] = attempt
            return inst
        except GenericityError as exc:
            log.info("bordiga draw %d rejected: %s", attempt, exc)
            last = exc
    raise GenericityError(f"no valid Bordiga draw in {retries} attempts: {last}")


def _bordiga_attempt(field: Field, rng, adjust: Callable | None = None) -> ScrollInstance:
    R = PolyRing(6, field)
    coeffs, M = _random_linear_matrix(R, 4, 3, rng)
    if adjust is not None:
        coeffs = adjust(coeffs, rng)
        M = [[R.linear_form(c) for c in row] for row in coeffs]
    gens = minors(M, 3, R)
    I_X = Ideal(gens, R)
    if I_X.graded_piece_dimension(3) != 4:
        raise GenericityError("cubic minors are dependent")
    X = Variety(I_X, "X")
    if (X.dim, X.degree) != (3, 6):
        raise GenericityError(f"X has dimension {X.dim} and degree {X.degree}")
    # u: kernel of M(x) via the cross product of two rows
    pres = _presentations([maximal_minors_signed([M[i], M[j]], R) for i, j in ((0, 1), (2, 3), (0, 2))], I_X)
    u_forms = pres[0]
    L = PolyRing(3, field)
    # N(λ)_{i,k} = Σ_j m_{ijk} λ_j
    N = [[L.linear_form([coeffs[i][j][k] for j in range(3)]) for k in range(6)] for i in range(4)]
    inst = ScrollInstance("bordiga", field, R, X, Variety(Ideal.zero(L), "P2"),
                          RationalMap(u_forms, X, "u"), N, [0, 1, 2, 3], 6, 3,
                          data={"M": [[[int(c) if field.p else str(c) for c in e] for e in row] for row in coeffs]},
                          u_presentations=pres)
    return inst


def _presentations(cands: list, I_X: Ideal) -> list:
    out = [c for c in cands if not all(I_X.contains(f) for f in c)]
    if len(out) < 2:
        raise GenericityError("fewer than two presentations of the scroll map")
    return out


# --------------------------------------------------------------------------
# Palatini
# --------------------------------------------------------------------------

def _random_skew(n: int, field: Field, rng) -> list[list]:
    A = [[field.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = field.random(rng)
            A[i][j] = c
            A[j][i] = field.neg(c)
    return A


def _block_skew(field: Field, rng) -> list[list]:
    """A 6x6 skew matrix made of two 3x3 diagonal blocks (rank at most 4)."""
    A = [[field.zero] * 6 for _ in range(6)]
    for off in (0, 3):
        B = _random_skew(3, field, rng)
        for i in range(3):
            for j in range(3):
                A[off + i][off + j] = B[i][j]
    return A


def _congruence(A, P, field: Field):
    n = len(A)
    # P^T A P
    AP = [[sum(field.mul(A[i][k], P[k][j]) for k in range(n)) for j in range(n)] for i in range(n)]
    out = [[field(sum(field.mul(P[k][i], AP[k][j]) for k in range(n))) for j in range(n)] for i in range(n)]
    return out


def build_palatini(field: Field, seed: int = 1, retries: int = 20, plant_lines: bool = True,
                   accept: Callable | None = None) -> ScrollInstance:
    """A Palatini scroll; retried until X has degree 7 and V is smooth (and ``accept`` holds)."""
    last = None
    for attempt in range(retries):
        rng = random.Random(seed * 1_000_033 + attempt)
        try:
            inst = _palatini_attempt(field, rng, plant_lines, accept)
            inst.seed = seed
            inst.data["attempt"] = attempt
            return inst
        except GenericityError as exc:
            log.info("palatini draw %d rejected: %s", attempt, exc)
            last = exc
    raise GenericityError(f"no valid Palatini draw in {retries} attempts: {last}")


def palatini_matrices(field: Field, rng, plant_lines: bool) -> list[list[list]]:
    if not plant_lines:
        return [_random_skew(6, field, rng) for _ in range(4)]
    P = random_invertible(6, field, rng)
    Q = random_invertible(6, field, rng)
    return [_congruence(_block_skew(field, rng), P, field), _congruence(_block_skew(field, rng), P, field),
            _congruence(_block_skew(field, rng), Q, field), _congruence(_block_skew(field, rng), Q, field)]


def pfaffian_cubic(As, L: PolyRing) -> Poly:
    Alam = [[L.linear_form([As[k][i][j] for k in range(4)]) for j in range(6)] for i in range(6)]
    return pfaffian(Alam, L)


def _palatini_attempt(field: Field, rng, plant_lines: bool, accept) -> ScrollInstance:
    from ..geometry.local import is_smooth

    As = palatini_matrices(field, rng, plant_lines)
    L = PolyRing(4, field)
    Alam = [[L.linear_form([As[k][i][j] for k in range(4)]) for j in range(6)] for i in range(6)]
    F = pfaffian(Alam, L)
    if F.degree() != 3:
        raise GenericityError("Pfaffian is not a cubic")
    if accept is not None and not accept(As, F, rng):
        raise GenericityError("draw rejected by the caller")
    V = Variety(Ideal([F], L), "V")
    if not is_smooth(V, [F]):
        raise GenericityError("Pfaffian cubic is singular")
    R = PolyRing(6, field)
    # N(x): column k is A_k x
    N = [[R.linear_form(As[k][i]) for k in range(4)] for i in range(6)]
    mins = [f for f in minors(N, 4, R) if f]
    I_X = Ideal(mins, R).saturate_irrelevant(rng)
    I_X = Ideal(I_X.minimal_generators(), R)
    X = Variety(I_X, "X")
    if (X.dim, X.degree) != (3, 7):
        raise GenericityError(f"X has dimension {X.dim} and degree {X.degree}")
    # u: λ from three rows of N(x)
    pres = _presentations([maximal_minors_signed([N[r] for r in rows], R)
                           for rows in ((0, 1, 2), (3, 4, 5), (0, 2, 4))], I_X)
    u_forms = pres[0]
    inst = ScrollInstance("palatini", field, R, X, V, RationalMap(u_forms, X, "u"), Alam, [], 7, 4,
                          data={"A": [[[int(c) if field.p else str(c) for c in row] for row in A] for A in As],
                                "planted_lines": plant_lines},
                          u_presentations=pres)
    inst.kernel_rows = _choose_kernel_rows(inst, rng)
    return inst


def _choose_kernel_rows(inst: ScrollInstance, rng) -> list[int]:
    """Four rows of A(λ) of full rank at a random point of V."""
    lam = inst.random_base_point(rng)
    K = inst.fiber_matrix_at(lam)
    chosen: list[int] = []
    for i, row in enumerate(K):
        if rank([K[j] for j in chosen] + [row], inst.field) > len(chosen):
            chosen.append(i)
        if len(chosen) == 4:
            return chosen
    raise GenericityError("A(λ) has rank below 4 at a random point of V")


# --------------------------------------------------------------------------
# checks on an instance
# --------------------------------------------------------------------------

def fibers_are_lines(inst: ScrollInstance, rng, count: int = 3) -> bool:
    """Fibres over random points of V are lines contained in X and mapped to that point by u."""
    fld = inst.field
    for _ in range(count):
        lam = inst.random_base_point(rng)
        J = inst.fiber_ideal(lam)
        H = J.hilbert()
        if (H.dim, H.degree) != (1, 1):
            return False
        if not inst.X.ideal.issubset(J):
            return False
        a, b = inst.fiber_points(lam)
        pt = [fld.add(x, fld.mul(3, y)) for x, y in zip(a, b)]
        img = inst.u.evaluate(pt)
        if any(img):
            for i in range(len(lam)):
                for j in range(i + 1, len(lam)):
                    if fld.sub(fld.mul(img[i], lam[j]), fld.mul(img[j], lam[i])):
                        return False
    return True


def u_maps_into_V(inst: ScrollInstance, rng, count: int = 5) -> bool:
    if inst.V.ideal.is_zero():
        return True
    samp = inst.sampler()
    F = inst.V.ideal.gens[0]
    for _ in range(count):
        x = samp(rng)
        lam = inst.u.evaluate(x)
        if any(lam) and F.evaluate(lam):
            return False
    return True


