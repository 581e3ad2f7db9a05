"""Z^1, B^1, H^1 and the first local cohomology group of a matrix group
acting on (Z/p^j)^rank.

A 1-cocycle Z satisfies Z_{st} = Z_s + s Z_t and is determined by its values
on the generators.  Writing z for the stacked generator values, the value at
any element is C_sigma @ z for coefficient matrices C built along the BFS
multiplication tree; imposing the identity for every (generator, element)
pair then forces it for all pairs.  Z^1 is the kernel of that stacked linear
system over Z/p^j.

The locally trivial cocycles add, for every sigma, the condition
Z_sigma in Im(sigma - 1).  Over Z/p^j a submodule is cut out by the linear
forms vanishing on it (w in ker((sigma-1)^T) gives w . Z_sigma = 0), so
Z^1_loc is again a kernel and H^1_loc = Z^1_loc / B^1 is a finite abelian
group with explicit invariant factors and representative cocycles.

The module exponent j defaults to n; j < n computes cohomology with
coefficients in the p^j-torsion (the action factors through reduction).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InputError, PreconditionError
from .groups import MatGroup, element_order
from .ringmat import (AbelianStructure, Mat, ModuleSpec, RowSystem,
                      eigenvalues_in_ext, quotient_structure, span_order)


class Cocycle:
    """A 1-cocycle: one module vector per group element.

    values maps every element of the group to a tuple; module_exponent j
    says the values live in (Z/p^j)^rank and the action is reduced mod p^j.
    """

    def __init__(self, group: MatGroup, values: dict, module_exponent=None):
        self.group = group
        self.module_exponent = (module_exponent if module_exponent is not None
                                else group.spec.n)
        self.q = group.spec.p ** self.module_exponent
        self.values = {k: tuple(int(x) % self.q for x in v)
                       for k, v in values.items()}

    def at(self, mat: Mat) -> tuple:
        return self.values[mat.key()]

    def action_matrix(self, mat: Mat) -> Mat:
        return mat.reduce_mod(self.q)

    def generator_vector(self) -> np.ndarray:
        """Values on the group generators, stacked (the z coordinates)."""
        out = []
        for g in self.group.generators:
            out.extend(self.values[g.key()])
        return np.array(out, dtype=np.int64)

    def is_valid(self) -> bool:
        """Exhaustive check of the cocycle identity on all pairs."""
        G = self.group
        q = self.q
        ident = G.identity
        if any(self.values[ident.key()]):
            return False
        for a in G.elements:
            amat = self.action_matrix(a)
            za = self.values[a.key()]
            for b in G.elements:
                ab = a.mul(b)
                lhs = self.values[ab.key()]
                zb = self.values[b.key()]
                rhs = tuple((za[i] + sum(amat.entries[i][k] * zb[k]
                                         for k in range(len(zb)))) % q
                            for i in range(len(za)))
                if lhs != rhs:
                    return False
        return True

    def scale(self, c: int) -> "Cocycle":
        return Cocycle(self.group,
                       {k: tuple((c * x) % self.q for x in v)
                        for k, v in self.values.items()},
                       self.module_exponent)

    def add(self, other: "Cocycle") -> "Cocycle":
        return Cocycle(self.group,
                       {k: tuple((x + y) % self.q for x, y in
                                 zip(v, other.values[k]))
                        for k, v in self.values.items()},
                       self.module_exponent)

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.values.values())


@dataclass
class CohomGroup:
    """A cohomology group: invariant factors plus representative cocycles."""

    structure: AbelianStructure
    representatives: list

    @property
    def order(self) -> int:
        return self.structure.order

    @property
    def is_trivial(self) -> bool:
        return self.structure.is_trivial

    def describe(self) -> str:
        return self.structure.describe()


class _CocycleSystem:
    """Per-(group, module exponent) linear-algebra state, cached on the group."""

    def __init__(self, G: MatGroup, j: int):
        self.G = G
        self.j = j
        spec = G.spec
        self.p = spec.p
        self.q = spec.p ** j
        self.m = spec.rank
        self.k = len(G.generators)
        self.size = G.order
        q, m, k = self.q, self.m, self.k
        self.acts = G.element_array() % q   # size x m x m
        self.dim = k * m
        # C[sigma]: value of a cocycle at sigma as a linear map of z
        C = np.zeros((self.size, m, self.dim), dtype=np.int64)
        for idx in range(self.size):
            par = G.tree_parent[idx]
            if par < 0:
                continue
            g = G.tree_gen[idx]
            C[idx] = C[par].copy()
            C[idx][:, g * m:(g + 1) * m] += self.acts[par]
            C[idx] %= q
        self.C = C
        self._z1 = None
        self._b1 = None
        self._z1loc = None
        self._cocycle_rows = None

    def cocycle_constraints(self) -> np.ndarray:
        if self._cocycle_rows is not None:
            return self._cocycle_rows
        G, m, q = self.G, self.m, self.q
        if self.k == 0:
            self._cocycle_rows = np.zeros((0, self.dim), dtype=np.int64)
            return self._cocycle_rows
        blocks = []
        E = np.zeros((self.k, m, self.dim), dtype=np.int64)
        for g in range(self.k):
            E[g][:, g * m:(g + 1) * m] = np.eye(m, dtype=np.int64)
        for gidx, gmat in enumerate(G.generators):
            gi = G.index_of(gmat)
            gact = self.acts[gi]
            for sidx in range(self.size):
                prod_idx = G.index_of(gmat.mul(G.elements[sidx]))
                rows = (self.C[prod_idx] - E[gidx] - gact @ self.C[sidx]) % q
                blocks.append(rows)
        self._cocycle_rows = np.concatenate(blocks, axis=0)
        return self._cocycle_rows

    def z1_gens(self) -> np.ndarray:
        if self._z1 is None:
            rows = np.unique(self.cocycle_constraints(), axis=0)
            sys = RowSystem(rows.T, self.p, self.j)
            self._z1 = sys.kernel()
        return self._z1

    def b1_gens(self) -> np.ndarray:
        if self._b1 is None:
            out = []
            for t in range(self.m):
                e = np.zeros(self.m, dtype=np.int64)
                e[t] = 1
                z = []
                for gmat in self.G.generators:
                    gact = self.acts[self.G.index_of(gmat)]
                    z.extend(((gact - np.eye(self.m, dtype=np.int64)) @ e) % self.q)
                out.append(z)
            self._b1 = (np.array(out, dtype=np.int64) % self.q
                        if out else np.zeros((0, self.dim), dtype=np.int64))
        return self._b1

    def local_constraints(self) -> np.ndarray:
        blocks = [self.cocycle_constraints()]
        ident = np.eye(self.m, dtype=np.int64)
        for idx in range(self.size):
            B = (self.acts[idx] - ident) % self.q
            # w B = 0 makes w . v = 0 a test for v in Im(B); over Z/p^j the
            # double annihilator recovers the image exactly
            W = RowSystem(B, self.p, self.j).kernel()
            if W.shape[0]:
                blocks.append((W @ self.C[idx]) % self.q)
        return np.concatenate(blocks, axis=0)

    def z1loc_gens(self) -> np.ndarray:
        if self._z1loc is None:
            rows = np.unique(self.local_constraints(), axis=0)
            sys = RowSystem(rows.T, self.p, self.j)
            self._z1loc = sys.kernel()
        return self._z1loc

    def expand(self, z: np.ndarray) -> Cocycle:
        """Full cocycle from stacked generator values, along the BFS tree."""
        vals = np.zeros((self.size, self.m), dtype=np.int64)
        zz = np.asarray(z, dtype=np.int64) % self.q
        for idx in range(self.size):
            par = self.G.tree_parent[idx]
            if par < 0:
                continue
            g = self.G.tree_gen[idx]
            vals[idx] = (vals[par] +
                         self.acts[par] @ zz[g * self.m:(g + 1) * self.m]) % self.q
        return Cocycle(self.G,
                       {m.key(): tuple(int(x) for x in vals[i])
                        for i, m in enumerate(self.G.elements)},
                       self.j)


def _system(G: MatGroup, module_exponent=None) -> _CocycleSystem:
    j = module_exponent if module_exponent is not None else G.spec.n
    if not 1 <= j <= G.spec.n:
        raise InputError("module exponent out of range")
    if j not in G._cohom_cache:
        G._cohom_cache[j] = _CocycleSystem(G, j)
    return G._cohom_cache[j]


def cocycle_space(G: MatGroup, module_exponent=None):
    """Generators of Z^1(G, M) as Cocycle objects."""
    sys = _system(G, module_exponent)
    return [sys.expand(z) for z in sys.z1_gens()]


def coboundaries(G: MatGroup, module_exponent=None):
    """Generators of B^1(G, M): one coboundary per module basis vector."""
    sys = _system(G, module_exponent)
    return [sys.expand(z) for z in sys.b1_gens()]


def h1(G: MatGroup, module_exponent=None) -> CohomGroup:
    """H^1(G, M) = Z^1/B^1 with invariant factors and representatives."""
    sys = _system(G, module_exponent)
    struct = quotient_structure(sys.z1_gens(), sys.b1_gens(), G.spec,
                                modulus=sys.q)
    reps = [sys.expand(np.array(gen, dtype=np.int64))
            for gen in struct.generators]
    return CohomGroup(struct, reps)


def h1_loc(G: MatGroup, module_exponent=None) -> CohomGroup:
    """The subgroup of H^1 of classes [Z] with Z_sigma in Im(sigma - 1) for
    every sigma: locally trivial classes, computed as Z^1_loc / B^1."""
    sys = _system(G, module_exponent)
    z1loc = sys.z1loc_gens()
    b1 = sys.b1_gens()
    # B^1 is contained in Z^1_loc: coboundaries solve their own conditions
    loc_span = RowSystem(z1loc, sys.p, sys.j)
    for row in b1:
        if not loc_span.contains(row):
            raise AssertionError("coboundary outside Z^1_loc (internal)")
    struct = quotient_structure(z1loc, b1, G.spec, modulus=sys.q)
    reps = [sys.expand(np.array(gen, dtype=np.int64))
            for gen in struct.generators]
    return CohomGroup(struct, reps)


def sizes(G: MatGroup, module_exponent=None):
    """(|Z^1|, |B^1|, |H^1|, |H^1_loc|) from the linear-algebra path."""
    sys = _system(G, module_exponent)
    z1 = span_order(sys.z1_gens(), sys.p, sys.j) if len(sys.z1_gens()) else 1
    b1 = span_order(sys.b1_gens(), sys.p, sys.j) if len(sys.b1_gens()) else 1
    zl = span_order(sys.z1loc_gens(), sys.p, sys.j) \
        if len(sys.z1loc_gens()) else 1
    return z1, b1, z1 // b1, zl // b1


def is_coboundary(Z: Cocycle):
    """A vector v with Z_sigma = sigma v - v for all sigma, or None.

    Agreement on the generators forces agreement everywhere, so the system
    stacks (g - 1) over the generators only."""
    G = Z.group
    q = Z.q
    m = G.spec.rank
    if not G.generators:
        return (0,) * m
    rows = []
    rhs = []
    for g in G.generators:
        B = (g.to_array() % q - np.eye(m, dtype=np.int64)) % q
        rows.append(B)
        rhs.extend(Z.values[g.key()])
    A = np.concatenate(rows, axis=0)
    sol = RowSystem(A.T, G.spec.p, Z.module_exponent).solve(
        np.array(rhs, dtype=np.int64))
    if sol is None:
        return None
    return tuple(int(x) for x in sol)


def satisfies_local_conditions(Z: Cocycle):
    """(flag, witnesses): for each sigma a v with (sigma - 1) v = Z_sigma,
    or None where unsolvable.  True iff solvable everywhere."""
    G = Z.group
    q = Z.q
    m = G.spec.rank
    witnesses = {}
    ok = True
    for mat in G.elements:
        B = (mat.to_array() % q - np.eye(m, dtype=np.int64)) % q
        sol = RowSystem(B.T, G.spec.p, Z.module_exponent).solve(
            np.array(Z.values[mat.key()], dtype=np.int64))
        witnesses[mat.key()] = tuple(int(x) for x in sol) \
            if sol is not None else None
        if sol is None:
            ok = False
    return ok, witnesses


def cocycle_from_generator_values(G: MatGroup, gen_values: dict,
                                  module_exponent=None) -> Cocycle:
    """Extend prescribed generator values to the whole group along the tree
    and certify the cocycle identity exhaustively (raises if inconsistent)."""
    sys = _system(G, module_exponent)
    z = []
    for g in G.generators:
        z.extend(gen_values[g.key()])
    Z = sys.expand(np.array(z, dtype=np.int64))
    if not Z.is_valid():
        raise InputError("generator values do not extend to a cocycle")
    return Z


def class_order(Z: Cocycle) -> int:
    """Order of [Z] in H^1: least t >= 1 with t Z a coboundary."""
    sys = _system(Z.group, Z.module_exponent)
    b1 = RowSystem(sys.b1_gens(), sys.p, sys.j)
    z = Z.generator_vector()
    t = 1
    while True:
        if b1.contains((t * z) % sys.q):
            return t
        t += 1
        if t > sys.q:
            raise AssertionError("class order exceeded module exponent bound")


def restrict(Z: Cocycle, H: MatGroup) -> Cocycle:
    """Value-wise restriction to a subgroup."""
    for x in H.elements:
        if x.key() not in Z.values:
            raise InputError("H is not a subgroup of the cocycle's group")
    return Cocycle(H, {x.key(): Z.values[x.key()] for x in H.elements},
                   Z.module_exponent)


def inflate(Zq: Cocycle, G: MatGroup, project: Callable[[Mat], Mat],
            check: bool = True) -> Cocycle:
    """Pull a cocycle on a quotient back through project: G -> quotient.

    The kernel of project must act trivially on the coefficient module of
    Zq (automatic for reduction mod p^j with coefficients in the p^j-torsion)."""
    vals = {}
    for x in G.elements:
        img = project(x)
        if img.key() not in Zq.values:
            raise InputError("projection leaves the quotient cocycle's group")
        vals[x.key()] = Zq.values[img.key()]
    W = Cocycle(G, vals, Zq.module_exponent)
    if check and not W.is_valid():
        raise InputError("inflation did not produce a cocycle "
                         "(kernel acts nontrivially?)")
    return W


def mod_p_projection(G: MatGroup):
    """(quotient group mod p, projection map) for inflation through the
    reduction G -> G mod p."""
    Q = G.reduce_mod(1)
    p = G.spec.p

    def project(x: Mat) -> Mat:
        return x.reduce_mod(p)

    return Q, project


@dataclass
class TorsionIsomorphismReport:
    torsion_factors: tuple        # invariant factors of H^1(G, M[p])
    h1_p_torsion_factors: tuple   # invariant factors of H^1(G, M)[p]
    injective: bool

    @property
    def ok(self) -> bool:
        return (self.torsion_factors == self.h1_p_torsion_factors
                and self.injective)


def torsion_isomorphism_check(G: MatGroup, delta: Mat) -> TorsionIsomorphismReport:
    """Certify that multiplication by p^(n-1) identifies H^1(G, M[p]) with
    the p-torsion of H^1(G, M), given delta in G with delta - 1 bijective."""
    spec = G.spec
    if delta not in G:
        raise PreconditionError("delta is an element of G")
    from math import gcd as _gcd
    if _gcd(delta.minus_identity().det(), spec.modulus) != 1:
        raise PreconditionError("delta - 1 is bijective",
                                "determinant is not a unit")
    lhs = h1(G, module_exponent=1)
    full = h1(G)
    # p-torsion of the full group contributes one factor p per nontrivial
    # invariant factor
    tors_factors = tuple(spec.p for _ in full.structure.invariant_factors)
    sysn = _system(G, spec.n)
    # injectivity of [W] -> [p^(n-1) lift(W)]: image subgroup order == |lhs|
    shift = spec.p ** (spec.n - 1)
    image_gens = [(np.array(g, dtype=np.int64) * shift) % sysn.q
                  for g in lhs.structure.generators]
    if image_gens:
        amb = np.vstack([np.array(image_gens, dtype=np.int64),
                         sysn.b1_gens()])
        image_struct = quotient_structure(amb, sysn.b1_gens(), spec,
                                          modulus=sysn.q)
        injective = image_struct.order == lhs.order
    else:
        injective = lhs.order == 1
    return TorsionIsomorphismReport(lhs.structure.invariant_factors,
                                    tors_factors, injective)


@dataclass
class RatioCriterionReport:
    """Outcome of the eigenvalue-ratio vanishing check for H^1(G, M)."""

    delta: Optional[Mat]
    quotient_h1_trivial: Optional[bool]
    ratio_condition: Optional[bool]
    offending_pair: Optional[tuple]
    verdict: str                  # 'certified' | 'not_applicable' | 'inconclusive'
    h1_factors: Optional[tuple] = None


def eigenvalue_ratio_condition(delta_bar: Mat, p: int):
    """Whether no ratio of eigenvalues of delta_bar (mod p, order prime to
    p) is itself an eigenvalue; i = j is included, so eigenvalue 1 always
    fails.  Returns (holds, offending_triple_or_None); holds is None when
    the eigenvalues do not all lie in a supported extension field."""
    spec1 = ModuleSpec(p, 1, delta_bar.rows)
    field = None
    eig = None
    for deg in (1, 2, 4):
        f, rts = eigenvalues_in_ext(delta_bar, spec1, deg)
        if sum(mlt for _, mlt in rts) == delta_bar.rows:
            field, eig = f, rts
            break
    if field is None:
        return None, None
    values = [r for r, _ in eig]
    for a in values:
        for b in values:
            ratio = field.mul(a, field.inv(b))
            if ratio in values:
                return False, (a, b, ratio)
    return True, None


def eigenvalue_ratio_vanishing(G: MatGroup) -> RatioCriterionReport:
    """Sufficient criterion for H^1(G, M) = 0: some delta with delta - 1
    bijective, trivial H^1 of the mod-p quotient, and no eigenvalue ratio
    of a p-prime power of delta-bar being itself an eigenvalue.  When the
    hypotheses hold the conclusion is also verified by direct computation.
    """
    spec = G.spec
    from math import gcd as _gcd
    delta = None
    for x in G.elements:
        if _gcd(x.minus_identity().det(), spec.modulus) == 1:
            delta = x
            break
    if delta is None:
        return RatioCriterionReport(None, None, None, None, "inconclusive")
    Q = G.reduce_mod(1)
    q_h1 = h1(Q, module_exponent=1)
    if not q_h1.is_trivial:
        return RatioCriterionReport(delta, False, None, None, "not_applicable")
    # p-prime power of the reduction of delta
    dbar = delta.reduce_mod(spec.p)
    o = element_order(dbar)
    while o % spec.p == 0:
        dbar = dbar.pow(spec.p)
        o = element_order(dbar)
    holds, offending = eigenvalue_ratio_condition(dbar, spec.p)
    if holds is None:
        return RatioCriterionReport(delta, True, None, None, "inconclusive")
    if not holds:
        return RatioCriterionReport(delta, True, False, offending,
                                    "not_applicable")
    direct = h1(G)
    if not direct.is_trivial:
        raise AssertionError("ratio criterion certified a nonvanishing H^1 "
                             "(internal)")
    return RatioCriterionReport(delta, True, True, None, "certified",
                                direct.structure.invariant_factors)
