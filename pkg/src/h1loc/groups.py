"""Finite matrix groups over Z/p^n.

Groups are closures of generator lists under multiplication, enumerated
breadth first with a deterministic order (BFS layer, then lexicographic on
entries).  The closure keeps, for every element, one factorization
element = parent * generator; the cohomology module rides on that tree.

Also here: element orders, p-Sylow subgroups by normalizer ascent, Frattini
subgroups of p-groups, the constructive conjugation-eigenbasis decomposition
of a normalized p-group, and coset-representative corrections into Sylow
normalizers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial, gcd

import numpy as np

from .errors import CapExceededError, InputError, PreconditionError
from .ringmat import Mat, ModuleSpec, char_poly, kernel, _howell_rows

DEFAULT_CAP = 200_000


class MatGroup:
    """A closed finite matrix group; construct through MatGroup.close()."""

    def __init__(self, spec, generators, elements, index, tree_parent, tree_gen):
        self.spec = spec
        self.generators = tuple(generators)
        self.elements = elements            # BFS-lex order, identity first
        self._index = index                 # Mat.key() -> position
        self.tree_parent = tree_parent      # element i == elements[parent] * gen
        self.tree_gen = tree_gen
        self.order = len(elements)
        self._array = None
        self._inverse_cache = {}
        self._order_cache = {}
        self._cohom_cache = {}

    # -- construction ------------------------------------------------------

    @classmethod
    def close(cls, generators, spec: ModuleSpec, cap: int = DEFAULT_CAP):
        """Breadth-first closure of the generators under multiplication."""
        q = spec.modulus
        r = spec.rank
        gens = []
        for i, g in enumerate(generators):
            if isinstance(g, Mat):
                g = Mat.from_rows(g.entries, q)
            else:
                g = Mat.from_rows(g, q)
            if g.rows != r or g.cols != r:
                raise InputError(f"generator {i + 1} is not {r}x{r}")
            if not g.is_invertible():
                raise InputError(f"generator {i + 1} not invertible")
            gens.append(g)
        ident = Mat.identity(r, q)
        if not gens:
            return cls(spec, (), [ident], {ident.key(): 0}, [-1], [-1])

        garr = np.stack([g.to_array() for g in gens])
        elements = [ident]
        index = {ident.key(): 0}
        tree_parent = [-1]
        tree_gen = [-1]
        layer = np.stack([ident.to_array()])
        layer_idx = [0]
        while len(layer):
            prods = np.einsum("aij,bjk->abik", layer, garr) % q
            L, k = prods.shape[0], prods.shape[1]
            flat = prods.reshape(L * k, r * r)
            seen_here = {}
            for t in range(L * k):
                row = flat[t]
                key = tuple(tuple(int(x) for x in row[i * r:(i + 1) * r])
                            for i in range(r))
                if key in index or key in seen_here:
                    continue
                seen_here[key] = (layer_idx[t // k], t % k)
            if not seen_here:
                break
            new_keys = sorted(seen_here)
            if len(elements) + len(new_keys) > cap:
                raise CapExceededError("group closure", cap)
            next_layer = []
            next_idx = []
            for key in new_keys:
                mat = Mat(key, q)
                index[key] = len(elements)
                elements.append(mat)
                par, gi = seen_here[key]
                tree_parent.append(par)
                tree_gen.append(gi)
                next_layer.append(mat.to_array())
                next_idx.append(index[key])
            layer = np.stack(next_layer)
            layer_idx = next_idx
        return cls(spec, gens, elements, index, tree_parent, tree_gen)

    @classmethod
    def from_elements(cls, elements, spec: ModuleSpec, cap: int = DEFAULT_CAP):
        """Group from a set already closed under the operations: picks a small
        generating set greedily (lexicographic element order) and re-closes."""
        elems = sorted({Mat.from_rows(e.entries if isinstance(e, Mat) else e,
                                      spec.modulus).key()
                        for e in elements})
        ident = Mat.identity(spec.rank, spec.modulus)
        gens = []
        have = {ident.key()}
        for key in elems:
            if key in have:
                continue
            gens.append(Mat(key, spec.modulus))
            have = {m.key() for m in cls.close(gens, spec, cap=cap).elements}
        grp = cls.close(gens, spec, cap=cap)
        if grp.order != len(elems):
            raise InputError("element set is not closed under multiplication")
        return grp

    # -- basic structure ---------------------------------------------------

    @property
    def identity(self) -> Mat:
        return self.elements[0]

    def element_array(self) -> np.ndarray:
        if self._array is None:
            self._array = np.stack([m.to_array() for m in self.elements])
        return self._array

    def __contains__(self, mat: Mat) -> bool:
        return mat.key() in self._index

    def index_of(self, mat: Mat) -> int:
        try:
            return self._index[mat.key()]
        except KeyError:
            raise InputError("matrix is not an element of the group") from None

    def inverse(self, mat: Mat) -> Mat:
        key = mat.key()
        if key not in self._inverse_cache:
            self._inverse_cache[key] = mat.inv()
        return self._inverse_cache[key]

    def element_order(self, mat: Mat) -> int:
        key = mat.key()
        if key not in self._order_cache:
            self._order_cache[key] = element_order(mat, cap=self.order + 1)
        return self._order_cache[key]

    def is_subgroup_of(self, other: "MatGroup") -> bool:
        return all(x in other for x in self.elements)

    def conjugate_subgroup(self, H: "MatGroup", x: Mat) -> bool:
        """Whether x H x^-1 == H."""
        xi = self.inverse(x) if x in self else x.inv()
        return all(x.mul(h).mul(xi) in H for h in H.generators)

    def reduce_mod(self, j: int, cap: int = DEFAULT_CAP) -> "MatGroup":
        """Image of the group under entrywise reduction mod p^j."""
        sub = self.spec.with_exponent(j)
        return MatGroup.close([g.reduce_mod(sub.modulus) for g in self.generators],
                              sub, cap=cap)

    def scalar_elements(self):
        ident = Mat.identity(self.spec.rank, self.spec.modulus)
        return [m for m in self.elements
                if m.key() == ident.scale(m.entries[0][0]).key()]

    def sorted_by_order(self):
        """Element indices sorted by (element order, deterministic position)."""
        return sorted(range(self.order),
                      key=lambda i: (self.element_order(self.elements[i]), i))


def element_order(A: Mat, cap: int = 10 ** 6) -> int:
    """Least k >= 1 with A^k = Id (direct iteration, capped)."""
    if not A.is_invertible():
        raise InputError("element order of a non-invertible matrix")
    ident = Mat.identity(A.rows, A.modulus)
    x = A
    k = 1
    while x.key() != ident.key():
        x = x.mul(A)
        k += 1
        if k > cap:
            raise CapExceededError("element order iteration", cap)
    return k


def _factor(n: int) -> dict:
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _p_element_mask(G: MatGroup) -> np.ndarray:
    """Boolean mask over G.elements: order is a power of p.

    x is a p-element iff x^(p^A) = 1 where p^A is the p-part of |G|;
    computed by batched repeated p-th powers."""
    p = G.spec.p
    q = G.spec.modulus
    A = _factor(G.order).get(p, 0)
    arr = G.element_array().copy()
    for _ in range(A):
        arr = _batch_power(arr, p, q)
    ident = np.eye(G.spec.rank, dtype=np.int64)
    return (arr == ident).all(axis=(1, 2))


def _batch_power(arr: np.ndarray, k: int, q: int) -> np.ndarray:
    result = np.broadcast_to(np.eye(arr.shape[1], dtype=np.int64),
                             arr.shape).copy()
    base = arr % q
    while k:
        if k & 1:
            result = np.einsum("nij,njk->nik", result, base) % q
        base = np.einsum("nij,njk->nik", base, base) % q
        k >>= 1
    return result


def p_sylow(G: MatGroup) -> MatGroup:
    """A p-Sylow subgroup of G by normalizer ascent.

    Starts from a p-element of maximal order and repeatedly extends by
    p-elements of the normalizer of the current p-subgroup until the exact
    p-part of |G| is reached.  Ties are broken by the deterministic element
    order, so the result is reproducible."""
    spec = G.spec
    p = spec.p
    target = p ** _factor(G.order).get(p, 0)
    if target == 1:
        return MatGroup.close([], spec)
    mask = _p_element_mask(G)
    p_idxs = [i for i in range(G.order) if mask[i]]
    best = max(p_idxs, key=lambda i: (G.element_order(G.elements[i]), -i))
    current = MatGroup.close([G.elements[best]], spec)
    while current.order < target:
        norm_elems = _normalizer_elements(G, current)
        ext = None
        for i in p_idxs:
            x = G.elements[i]
            if x.key() in norm_elems and x not in current:
                ext = x
                break
        if ext is None:
            raise AssertionError("Sylow ascent stalled (internal)")
        current = MatGroup.close(list(current.generators) + [ext], spec)
    return current


def _normalizer_elements(G: MatGroup, H: MatGroup) -> set:
    out = set()
    for x in G.elements:
        xi = G.inverse(x)
        if all(x.mul(h).mul(xi) in H for h in H.generators):
            out.add(x.key())
    return out


def normalizer(G: MatGroup, H: MatGroup) -> MatGroup:
    """{x in G : x H x^-1 = H} as a closed subgroup."""
    if not H.is_subgroup_of(G):
        raise InputError("H is not contained in G")
    keys = _normalizer_elements(G, H)
    return MatGroup.from_elements([Mat(k, G.spec.modulus) for k in keys], G.spec)


def is_p_group(H: MatGroup) -> bool:
    f = _factor(H.order)
    return len(f) <= 1 and (not f or H.spec.p in f)


def reduce_generators(mats, spec: ModuleSpec, cap: int = DEFAULT_CAP):
    """Greedy sublist of mats generating the same group: keeps a matrix only
    when it enlarges the closure so far.  Meant for small groups where
    generator lists would otherwise snowball."""
    ident = Mat.identity(spec.rank, spec.modulus)
    kept = []
    have = {ident.key()}
    for m in mats:
        if m.key() in have:
            continue
        kept.append(m)
        have = {x.key()
                for x in MatGroup.close(kept, spec, cap=cap).elements}
    return kept


def frattini(H: MatGroup) -> MatGroup:
    """Frattini subgroup of a p-group: generated by generator p-th powers and
    the commutator subgroup (equivalent to the maximal-subgroup intersection
    for p-groups; that definition is kept as a test oracle)."""
    if not is_p_group(H):
        raise PreconditionError("H is a p-group", f"|H| = {H.order}")
    p = H.spec.p
    if H.order == 1:
        return H
    gens = reduce_generators(H.generators, H.spec, cap=H.order + 1)
    comm_gens = []
    for a in gens:
        for b in gens:
            c = a.mul(b).mul(H.inverse(a)).mul(H.inverse(b))
            comm_gens.append(c)
    comm_gens = reduce_generators(comm_gens, H.spec, cap=H.order + 1)
    # normal closure of the commutators inside H
    K = MatGroup.close(comm_gens, H.spec, cap=H.order + 1)
    changed = True
    while changed:
        changed = False
        extra = []
        for x in gens:
            xi = H.inverse(x)
            for kgen in K.generators:
                c = x.mul(kgen).mul(xi)
                if c not in K:
                    extra.append(c)
        if extra:
            K = MatGroup.close(reduce_generators(
                list(K.generators) + extra, H.spec, cap=H.order + 1),
                H.spec, cap=H.order + 1)
            changed = True
    phi_gens = reduce_generators(
        list(K.generators) + [g.pow(p) for g in gens], H.spec,
        cap=H.order + 1)
    phi = MatGroup.close(phi_gens, H.spec, cap=H.order + 1)
    # H/phi must be elementary abelian: generator images commute and have
    # exponent p; generators of H suffice for both checks
    for a in gens:
        if a.pow(p) not in phi:
            raise AssertionError("H/phi not exponent p (internal)")
        for b in gens:
            c = a.mul(b).mul(H.inverse(a)).mul(H.inverse(b))
            if c not in phi:
                raise AssertionError("H/phi not abelian (internal)")
    return phi


@dataclass(frozen=True)
class Decomposition:
    """Generators h_i of a p-group with g h_i g^-1 = h_i^lambda_i."""

    pairs: tuple  # ((h_i, lambda_i), ...)


def _coset_coordinates(H: MatGroup, phi: MatGroup, basis):
    """Map every element of H to its F_p coordinate vector over the given
    basis of H/phi (basis elements of H whose cosets are independent)."""
    p = H.spec.p
    coords = {}
    powers = []
    for b in basis:
        row = [Mat.identity(H.spec.rank, H.spec.modulus)]
        for _ in range(p - 1):
            row.append(row[-1].mul(b))
        powers.append(row)
    for cvec in itertools.product(range(p), repeat=len(basis)):
        m = powers[0][cvec[0]] if basis else Mat.identity(H.spec.rank,
                                                          H.spec.modulus)
        for i in range(1, len(basis)):
            m = m.mul(powers[i][cvec[i]])
        for f in phi.elements:
            coords[m.mul(f).key()] = cvec
    return coords


def _frattini_basis(H: MatGroup, phi: MatGroup):
    """Greedy basis of H/phi: walk H in its deterministic order and keep
    elements that enlarge the subgroup generated so far."""
    basis = []
    current = phi
    for x in H.elements:
        if x in current:
            continue
        basis.append(x)
        current = MatGroup.close(list(phi.generators) + basis, H.spec,
                                 cap=H.order + 1)
        if current.order == H.order:
            break
    return basis


def _discrete_log_power(h: Mat, target: Mat, order: int) -> int:
    x = Mat.identity(h.rows, h.modulus)
    for lam in range(order):
        if x.key() == target.key():
            return lam
        x = x.mul(h)
    raise AssertionError("conjugate is not a power of the generator (internal)")


def decompose_generators(g: Mat, H: MatGroup) -> Decomposition:
    """Generators h_1..h_r of the p-group H with g h_i g^-1 = h_i^lambda_i.

    Hypotheses (each failure raises PreconditionError naming it): H is a
    p-group, g normalizes H, and the order of g divides p-1.  The recursion
    mirrors the existence proof: diagonalize the conjugation action on
    H/phi(H) over F_p and split off one eigenvector at a time.
    """
    spec = H.spec
    p = spec.p
    if not is_p_group(H):
        raise PreconditionError("H is a p-group", f"|H| = {H.order}")
    gi = g.inv()
    for h in H.generators:
        if g.mul(h).mul(gi) not in H:
            raise PreconditionError("H is normal in <g, H>",
                                    "g does not normalize H")
    og = element_order(g)
    if (p - 1) % og != 0:
        raise PreconditionError("order of g divides p-1",
                                f"order(g) = {og}, p-1 = {p - 1}")

    def recurse(sub: MatGroup):
        if sub.order == 1:
            return []
        phi = frattini(sub)
        basis = _frattini_basis(sub, phi)
        k = len(basis)
        if k == 1:
            h1 = basis[0]
            o = element_order(h1)
            conj = g.mul(h1).mul(gi)
            lam = _discrete_log_power(h1, conj, o)
            return [(h1, lam)]
        coords = _coset_coordinates(sub, phi, basis)
        cols = []
        for b in basis:
            cols.append(coords[g.mul(b).mul(gi).key()])
        F = Mat.from_rows([[cols[j][i] for j in range(k)] for i in range(k)], p)
        fp_spec = ModuleSpec(p, 1, k)
        cp = char_poly(F, fp_spec)
        eigenvecs = []
        for lam in range(p):
            acc = 0
            for c in cp:
                acc = (acc * lam + c) % p
            if acc:
                continue
            shifted = F.sub(Mat.identity(k, p).scale(lam))
            for vec in kernel(shifted, fp_spec):
                if any(vec):
                    eigenvecs.append(vec)
        # semisimplicity (order of the action divides p-1) guarantees a basis
        span = _howell_rows(np.array(eigenvecs, dtype=np.int64), p, 1)
        if span.shape[0] != k:
            raise AssertionError("conjugation action not diagonalizable "
                                 "(internal; hypotheses violated?)")
        chosen = []
        current = phi
        for vec in eigenvecs:
            cand = Mat.identity(spec.rank, spec.modulus)
            for b, c in zip(basis, vec):
                cand = cand.mul(b.pow(int(c)))
            if cand in current:
                continue
            chosen.append(cand)
            current = MatGroup.close(list(phi.generators) + chosen, spec,
                                     cap=sub.order + 1)
            if current.order == sub.order:
                break
        H1 = MatGroup.close(list(phi.generators) + [chosen[0]], spec,
                            cap=sub.order + 1)
        H2 = MatGroup.close(list(phi.generators) + chosen[1:], spec,
                            cap=sub.order + 1)
        return recurse(H1) + recurse(H2)

    pairs = recurse(H)
    # dedupe and certify
    seen = set()
    unique = []
    for h, lam in pairs:
        if h.key() in seen:
            continue
        seen.add(h.key())
        unique.append((h, lam))
    regen = MatGroup.close([h for h, _ in unique], spec, cap=H.order + 1) \
        if unique else MatGroup.close([], spec)
    if {m.key() for m in regen.elements} != {m.key() for m in H.elements}:
        raise AssertionError("decomposition does not regenerate H (internal)")
    for h, lam in unique:
        if g.mul(h).mul(gi).key() != h.pow(lam).key():
            raise AssertionError("conjugation identity failed (internal)")
    return Decomposition(tuple(unique))


def lift_normalizer(G: MatGroup, N: MatGroup, H: MatGroup, g: Mat) -> Mat:
    """An element of the coset gN that normalizes the p-Sylow H.

    Requires N normal in G and the class of g normalizing HN/N; finds
    x = n h in HN with x H x^-1 = g H g^-1 and returns n^-1 g."""
    if not N.is_subgroup_of(G) or not H.is_subgroup_of(G):
        raise PreconditionError("N and H are subgroups of G")
    for x in G.generators:
        xi = G.inverse(x)
        for m in N.generators:
            if x.mul(m).mul(xi) not in N:
                raise PreconditionError("N is normal in G")
    if g not in G:
        raise PreconditionError("g is an element of G")
    gi = G.inverse(g)
    if all(g.mul(h).mul(gi) in H for h in H.generators):
        return g  # already a normalizer element
    # HN as a set of products
    HN_keys = set()
    for nn in N.elements:
        for h in H.elements:
            HN_keys.add(nn.mul(h).key())
    for h in H.generators:
        if g.mul(h).mul(gi).key() not in HN_keys:
            raise PreconditionError("class of g normalizes HN/N")
    target = {g.mul(h).mul(gi).key() for h in H.elements}
    x_found = None
    for key in sorted(HN_keys):
        x = Mat(key, G.spec.modulus)
        xi = x.inv()
        if {x.mul(h).mul(xi).key() for h in H.elements} == target:
            x_found = x
            break
    if x_found is None:
        raise AssertionError("Sylow conjugator not found in HN (internal)")
    n_part = None
    for h in H.elements:
        cand = x_found.mul(H.inverse(h))
        if cand in N:
            n_part = cand
            break
    if n_part is None:
        raise AssertionError("x does not factor as n h (internal)")
    out = N.inverse(n_part).mul(g)
    oi = out.inv()
    assert gi.mul(out) in N, "result left the coset gN"
    assert all(out.mul(h).mul(oi) in H for h in H.generators), \
        "result does not normalize H"
    return out


def sylow_normalizer_element(G: MatGroup, N: MatGroup):
    """An element of order p-1 normalizing a p-Sylow subgroup of G, given a
    normal N with G/N cyclic of order p-1.

    Returns (element, report); the report certifies the order of the class
    modulo N, which is always a multiple of (p-1)/i for i = gcd((2d)!, p-1)
    coming from the block structure of semisimple matrices."""
    p = G.spec.p
    if G.order % N.order != 0 or G.order // N.order != p - 1:
        raise PreconditionError("G/N has order p-1",
                                f"|G|/|N| = {G.order / N.order}")

    def class_order(x: Mat) -> int:
        y = x
        t = 1
        while y not in N:
            y = y.mul(x)
            t += 1
        return t

    g0 = None
    for x in G.elements:
        if class_order(x) == p - 1:
            g0 = x
            break
    if g0 is None:
        raise PreconditionError("G/N is cyclic of order p-1",
                                "no class of full order")
    H = p_sylow(G)
    g1 = lift_normalizer(G, N, H, g0)
    o = element_order(g1)
    assert o % (p - 1) == 0
    g = g1.pow(o // (p - 1))
    assert element_order(g) == p - 1
    gi = g.inv()
    assert all(g.mul(h).mul(gi) in H for h in H.generators)
    t = class_order(g)
    i = gcd(factorial(G.spec.rank), p - 1)
    lower = (p - 1) // i
    if t % lower != 0:
        raise AssertionError("class order certificate failed (internal)")
    report = {"i": i, "class_order": t, "order": p - 1,
              "class_order_multiple_of": lower}
    return g, report


def find_normalized_sylow(G: MatGroup, g: Mat):
    """Search harness: look for a p-Sylow subgroup of G normalized by g.

    Whether such a Sylow always exists for g of order dividing p-1 is an open
    question; this only reports what the search finds on one input."""
    spec = G.spec
    p = spec.p
    H = p_sylow(G)
    target = p ** _factor(G.order).get(p, 0)
    gi = g.inv()
    seen = set()
    # all Sylows are conjugate; enumerate x H x^-1 over x in G
    for x in G.elements:
        xi = G.inverse(x)
        conj_gens = [x.mul(h).mul(xi) for h in H.generators]
        key = frozenset(cg.key() for cg in conj_gens)
        if key in seen:
            continue
        seen.add(key)
        S = MatGroup.close(conj_gens, spec, cap=target + 1)
        if all(g.mul(h).mul(gi) in S for h in S.generators):
            return S
    return None
