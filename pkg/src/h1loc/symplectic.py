"""Symplectic similitude linear algebra over F_p and Z/p^n.

The fixed skew form is J = [[0, I_d], [-I_d, 0]] in block shape; a
similitude is A with A^T J A = nu J for a unit nu (the multiplier), and
then det(A) = nu^d.  The multiplier is the linear-algebra shadow of the
cyclotomic character.

For 2d = 4 the group GSp_4(F_p) has order p^4 (p-1)^3 (p+1)^2 (p^2+1) and
the eigenvalues of any element pair up as l1, l2, nu/l1, nu/l2; the pairing
is certified through characteristic-polynomial coefficient identities
(c0 = nu^2 and c1 = nu c3), which avoids root-finding in F_{p^4}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CapExceededError, InputError, PreconditionError
from .groups import MatGroup
from .ringmat import Mat, ModuleSpec, RowSystem, _howell_rows, char_poly


@dataclass(frozen=True)
class SymplecticSpace:
    spec: ModuleSpec

    def __post_init__(self):
        if self.spec.rank % 2:
            raise InputError("symplectic rank must be even")

    @property
    def d(self) -> int:
        return self.spec.rank // 2

    @property
    def J(self) -> Mat:
        d, q = self.d, self.spec.modulus
        rows = [[0] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            rows[i][d + i] = 1
            rows[d + i][i] = -1
        return Mat.from_rows(rows, q)

    def pair(self, v, w) -> int:
        """<v, w> = v^T J w."""
        q = self.spec.modulus
        Jv = self.J.apply(w)
        return sum(int(a) * int(b) for a, b in zip(v, Jv)) % q


@dataclass(frozen=True)
class SimilitudeWitness:
    element: Mat
    multiplier: int


def similitude_multiplier(A: Mat, space: SymplecticSpace) -> Optional[int]:
    """nu with A^T J A = nu J, or None; asserts det(A) = nu^d when found."""
    spec = space.spec
    q = spec.modulus
    if A.rows != spec.rank or A.cols != spec.rank:
        raise InputError("matrix size does not match the symplectic space")
    S = A.transpose().mul(space.J).mul(A)
    nu = S.entries[0][space.d]
    if np.gcd(nu, q) != 1:
        return None
    if S.key() != space.J.scale(nu).key():
        return None
    if A.det() != pow(nu, space.d, q):
        raise AssertionError("similitude with det != nu^d (internal)")
    return int(nu)


def gsp4_order(p: int) -> int:
    """|GSp_4(F_p)| = p^4 (p-1)^3 (p+1)^2 (p^2+1)."""
    if p < 3:
        raise InputError("gsp4_order requires p >= 3")
    return p ** 4 * (p - 1) ** 3 * (p + 1) ** 2 * (p * p + 1)


def transvection(v, c: int, space: SymplecticSpace) -> Mat:
    """x -> x + c <x, v> v, a symplectic transvection (multiplier 1)."""
    q = space.spec.modulus
    m = space.spec.rank
    cols = []
    for j in range(m):
        e = [0] * m
        e[j] = 1
        pairing = space.pair(e, v)
        cols.append([(e[i] + c * pairing * v[i]) % q for i in range(m)])
    rows = [[cols[j][i] for j in range(m)] for i in range(m)]
    return Mat.from_rows(rows, q)


def gsp4_generators(p: int):
    """Transvections along a fixed spanning set plus one similitude of
    nontrivial multiplier; at p = 3 these generate all 103680 elements."""
    spec = ModuleSpec(p, 1, 4)
    space = SymplecticSpace(spec)
    vs = []
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        vs.append(tuple(e))
    for i in range(4):
        for j in range(i + 1, 4):
            e = [0] * 4
            e[i] = 1
            e[j] = 1
            vs.append(tuple(e))
    gens = [transvection(v, 1, space) for v in vs]
    nu = _primitive_root(p)
    gens.append(Mat.from_rows([[nu, 0, 0, 0], [0, nu, 0, 0],
                               [0, 0, 1, 0], [0, 0, 0, 1]], p))
    return gens, space


def _primitive_root(p: int) -> int:
    for g in range(2, p):
        seen = set()
        x = 1
        for _ in range(p - 1):
            x = x * g % p
            seen.add(x)
        if len(seen) == p - 1:
            return g
    raise InputError("no primitive root (p not prime?)")


def eigenvalue_pairing_check(A: Mat, space: SymplecticSpace) -> bool:
    """The root pairing l1, l2, nu/l1, nu/l2 in coefficient form: for
    char(A) = x^4 + c3 x^3 + c2 x^2 + c1 x + c0, checks c0 = nu^2 and
    c1 = nu c3."""
    if space.spec.rank != 4 or space.spec.n != 1:
        raise InputError("pairing check is for 4x4 matrices mod p")
    nu = similitude_multiplier(A, space)
    if nu is None:
        raise PreconditionError("A is a symplectic similitude")
    p = space.spec.p
    _, c3, c2, c1, c0 = char_poly(A, space.spec)
    return c0 == nu * nu % p and c1 == nu * c3 % p


def eigenvalue_pairing_sweep(mats: np.ndarray, p: int) -> int:
    """Vectorized pairing check over a batch of 4x4 matrices mod p; returns
    the number of failures (0 expected).  Raises if a matrix in the batch is
    not a similitude."""
    q = p
    mats = np.asarray(mats, dtype=np.int64) % p
    d = 2
    J = np.zeros((4, 4), dtype=np.int64)
    for i in range(d):
        J[i, d + i] = 1
        J[d + i, i] = -1
    J %= p
    S = np.einsum("nji,jk,nkl->nil", mats, J, mats) % p
    nu = S[:, 0, d].copy()
    if np.any(np.gcd(nu, p) != 1):
        raise PreconditionError("every matrix is a similitude")
    expect = (nu[:, None, None] * J[None, :, :]) % p
    if not (S == expect).all():
        raise PreconditionError("every matrix is a similitude")
    # elementary symmetric functions from principal minors (exact integers)
    a = mats
    e1 = np.trace(a, axis1=1, axis2=2)
    e2 = np.zeros(len(a), dtype=np.int64)
    for i, j in itertools.combinations(range(4), 2):
        e2 += a[:, i, i] * a[:, j, j] - a[:, i, j] * a[:, j, i]
    e3 = np.zeros(len(a), dtype=np.int64)
    for idx in itertools.combinations(range(4), 3):
        s = a[:, idx, :][:, :, idx]
        e3 += (s[:, 0, 0] * (s[:, 1, 1] * s[:, 2, 2] - s[:, 1, 2] * s[:, 2, 1])
               - s[:, 0, 1] * (s[:, 1, 0] * s[:, 2, 2] - s[:, 1, 2] * s[:, 2, 0])
               + s[:, 0, 2] * (s[:, 1, 0] * s[:, 2, 1] - s[:, 1, 1] * s[:, 2, 0]))
    e4 = np.zeros(len(a), dtype=np.int64)
    for j in range(4):
        cols = [c for c in range(4) if c != j]
        s = a[:, 1:, :][:, :, cols]
        minor = (s[:, 0, 0] * (s[:, 1, 1] * s[:, 2, 2] - s[:, 1, 2] * s[:, 2, 1])
                 - s[:, 0, 1] * (s[:, 1, 0] * s[:, 2, 2] - s[:, 1, 2] * s[:, 2, 0])
                 + s[:, 0, 2] * (s[:, 1, 0] * s[:, 2, 1] - s[:, 1, 1] * s[:, 2, 0]))
        e4 += (-1) ** j * a[:, 0, j] * minor
    c3 = (-e1) % p
    c1 = (-e3) % p
    c0 = e4 % p
    ok = (c0 == nu * nu % p) & (c1 == nu * c3 % p)
    return int((~ok).sum())


def invariant_subspaces(G: MatGroup, dim: int, cap: int = 5000):
    """All G-stable subspaces of the given dimension of F_p^rank, each as a
    row-reduced basis; enumeration over reduced echelon forms, capped."""
    spec = G.spec
    if spec.n != 1:
        raise InputError("invariant subspace enumeration works mod p")
    p, m = spec.p, spec.rank
    if not 1 <= dim < m:
        raise InputError("dimension out of range")
    count = _gaussian_binomial(m, dim, p)
    if count > cap:
        raise CapExceededError(f"subspace enumeration ({count} subspaces)", cap)
    gens = [g.to_array() % p for g in G.generators]
    out = []
    for basis in _echelon_bases(m, dim, p):
        B = np.array(basis, dtype=np.int64)
        sys = RowSystem(B, p, 1)
        stable = True
        for garr in gens:
            for row in B:
                if not sys.contains((garr @ row) % p):
                    stable = False
                    break
            if not stable:
                break
        if stable:
            out.append(Mat.from_rows(basis, p))
    return out


def _gaussian_binomial(m: int, k: int, p: int) -> int:
    num = den = 1
    for i in range(k):
        num *= p ** (m - i) - 1
        den *= p ** (k - i) - 1
    return num // den


def _echelon_bases(m: int, k: int, p: int):
    """Reduced row echelon bases of all k-dimensional subspaces of F_p^m."""
    for pivots in itertools.combinations(range(m), k):
        free_pos = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, m):
                if c not in pivots:
                    free_pos.append((r, c))
        for vals in itertools.product(range(p), repeat=len(free_pos)):
            basis = [[0] * m for _ in range(k)]
            for r, pc in enumerate(pivots):
                basis[r][pc] = 1
            for (r, c), v in zip(free_pos, vals):
                basis[r][c] = v
            yield basis


def perp(V: Mat, space: SymplecticSpace) -> Mat:
    """V^perp = {w : <v, w> = 0 for all v in V}, basis rows in normal form.

    Subspaces are row-basis matrices; zero rows mean the zero subspace."""
    spec = space.spec
    p = spec.p
    if spec.n != 1:
        raise InputError("perp works mod p")
    m = spec.rank
    if V.rows == 0:
        return Mat.identity(m, p)
    B = V.to_array() % p
    # <v, w> = (v^T J) w; stack the linear forms v^T J over the basis rows
    forms = (B @ space.J.to_array()) % p
    ker = RowSystem(forms.T, p, 1).kernel()
    H = _howell_rows(ker, p, 1) if ker.shape[0] else \
        np.zeros((0, m), dtype=np.int64)
    out = Mat.from_rows([[int(x) for x in row] for row in H], p)
    dimV = _howell_rows(B, p, 1).shape[0]
    if dimV + H.shape[0] != m:
        raise AssertionError("dim V + dim V^perp != 2d (internal)")
    return out


def is_stable(V: Mat, G: MatGroup) -> bool:
    p = G.spec.p
    B = V.to_array() % p
    sys = RowSystem(B, p, 1)
    for g in G.generators:
        garr = g.to_array() % p
        for row in B:
            if not sys.contains((garr @ row) % p):
                return False
    return True


def projective_order(G: MatGroup) -> int:
    """|G / (G intersect scalars)|."""
    return G.order // len(G.scalar_elements())
