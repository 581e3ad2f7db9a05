"""Brute-force oracles.

Everything here recomputes results of the main modules by direct enumeration
over small instances, deliberately avoiding the Howell/kernel machinery so
the two paths stay independent.  The test suite freezes values produced by
these oracles and cross-checks the linear-algebra path against them.
"""

from __future__ import annotations

import itertools

import numpy as np


def span_enumerate(rows, q: int) -> set:
    """The full additive span of the given row vectors in (Z/q)^c."""
    rows = [tuple(int(x) % q for x in r) for r in rows]
    if not rows:
        return {()}
    c = len(rows[0])
    span = set()
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        v = [0] * c
        for a, row in zip(coeffs, rows):
            if a:
                for i in range(c):
                    v[i] += a * row[i]
        span.add(tuple(x % q for x in v))
    return span


def all_solutions(A_rows, b, q: int) -> set:
    """Every x with A x = b mod q, by scanning the whole module."""
    rows = [tuple(int(x) % q for x in r) for r in A_rows]
    cols = len(rows[0]) if rows else 0
    b = tuple(int(x) % q for x in b)
    out = set()
    for x in itertools.product(range(q), repeat=cols):
        if all(sum(r[i] * x[i] for i in range(cols)) % q == bj
               for r, bj in zip(rows, b)):
            out.add(x)
    return out


def _closure_set(gens, identity):
    got = {identity.key(): identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                z = x.mul(g)
                if z.key() not in got:
                    got[z.key()] = z
                    new.append(z)
        frontier = new
    return got


def maximal_subgroup_intersection(group) -> set:
    """Frattini subgroup of a small group straight from its definition: the
    intersection of all maximal subgroups (whole group when none exist)."""
    elems = list(group.elements)
    order = len(elems)
    ident = group.identity

    def closure_keys(gen_list):
        return frozenset(_closure_set(gen_list, ident).keys())

    subgroups = {closure_keys([e]) for e in elems}
    changed = True
    while changed:
        changed = False
        for sg in list(subgroups):
            members = [x for x in elems if x.key() in sg]
            for e in elems:
                if e.key() in sg:
                    continue
                bigger = closure_keys(members + [e])
                if bigger not in subgroups:
                    subgroups.add(bigger)
                    changed = True
    proper = [sg for sg in subgroups if len(sg) < order]
    maximal = [sg for sg in proper if not any(sg < other for other in proper)]
    if not maximal:
        return {e.key() for e in elems}
    inter = set(maximal[0])
    for sg in maximal[1:]:
        inter &= sg
    return inter


def cocycle_counts(group, module_exponent=None):
    """(|Z1|, |B1|, |H1|, |H1_loc|) by enumerating all value assignments on
    the generators, extending along the multiplication tree, and keeping the
    assignments that satisfy the cocycle identity on every pair.

    A 1-cocycle is determined by its generator values, so this enumeration
    covers every map G -> M satisfying the identity.  Quadratic in |G| per
    candidate; only meant for small groups and small modules.
    """
    spec = group.spec
    p = spec.p
    n_mod = module_exponent if module_exponent is not None else spec.n
    q = p ** n_mod
    m = spec.rank
    k = len(group.generators)
    size = len(group.elements)
    mats = np.stack([g.to_array() for g in group.elements]) % q

    if k == 0:
        return 1, 1, 1, 1

    total = (q ** m) ** k
    assign = np.indices([q] * (k * m)).reshape(k * m, -1).T.astype(np.int64)
    assign = assign.reshape(total, k, m)
    vals = np.zeros((total, size, m), dtype=np.int16)
    for idx in range(size):
        par = group.tree_parent[idx]
        if par < 0:
            continue
        g = group.tree_gen[idx]
        v = (vals[:, par, :].astype(np.int64) +
             assign[:, g, :] @ mats[par].T) % q
        vals[:, idx, :] = v

    index_of = {mat.key(): i for i, mat in enumerate(group.elements)}
    # cheap filter first: identity against (generator, element) pairs only
    ok = np.ones(total, dtype=bool)
    for gmat in group.generators:
        i = index_of[gmat.key()]
        for j in range(size):
            ij = index_of[gmat.mul(group.elements[j]).key()]
            rhs = (vals[:, i, :].astype(np.int64) +
                   vals[:, j, :].astype(np.int64) @ mats[i].T) % q
            ok &= (vals[:, ij, :] == rhs).all(axis=1)
    # the real check: every pair
    survivors = np.nonzero(ok)[0]
    sv = vals[survivors].astype(np.int64)
    good = np.ones(len(survivors), dtype=bool)
    for i in range(size):
        for j in range(size):
            ij = index_of[group.elements[i].mul(group.elements[j]).key()]
            rhs = (sv[:, i, :] + sv[:, j, :] @ mats[i].T) % q
            good &= (sv[:, ij, :] == rhs).all(axis=1)
    z1 = int(good.sum())

    cob = set()
    for mv in itertools.product(range(q), repeat=m):
        v = np.array(mv, dtype=np.int64)
        cob.add(tuple(tuple((mats[i] @ v - v) % q) for i in range(size)))
    b1 = len(cob)

    images = []
    for i in range(size):
        B = (mats[i] - np.eye(m, dtype=np.int64)) % q
        img = {tuple((B @ np.array(x, dtype=np.int64)) % q)
               for x in itertools.product(range(q), repeat=m)}
        images.append(img)
    loc = 0
    for t in np.nonzero(good)[0]:
        row = sv[t]
        if all(tuple(row[i]) in images[i] for i in range(size)):
            loc += 1

    assert z1 % b1 == 0 and loc % b1 == 0
    return z1, b1, z1 // b1, loc // b1
