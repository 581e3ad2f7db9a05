"""Criterion checkers: worked cases and report invariants."""

import pytest

from corpus import M
from h1loc.cohomology import h1_loc
from h1loc.counterexample import build, twist_matrix
from h1loc.criteria import (fixed_point_free_criterion, fixed_point_spectrum,
                            lift_qualifying_element, similitude_criterion,
                            sylow_normalizer_criterion)
from h1loc.errors import PreconditionError
from h1loc.groups import MatGroup, element_order
from h1loc.ringmat import Mat, ModuleSpec


def test_fixed_point_free_criterion_diag():
    spec = ModuleSpec(5, 1, 2)
    G1 = MatGroup.close([M([[2, 0], [0, 3]], 5)], spec)
    rep = fixed_point_free_criterion(G1)
    assert rep.certified
    assert all(i.status == "satisfied" for i in rep.items)


def test_fixed_point_free_criterion_on_family_reduction():
    inst = build(5)
    Q = inst.G2.reduce_mod(1)
    assert Q.order == 3  # the p-part reduces to the identity
    rep = fixed_point_free_criterion(Q, inst.G2)
    assert not rep.certified
    # order-3 twist: 3 does not divide p-1 = 4, so the search fails
    assert rep.items[0].status == "failed"
    assert rep.cross_check == (5, 5)


def test_fixed_point_free_criterion_trivial_group():
    spec = ModuleSpec(5, 1, 2)
    T = MatGroup.close([], spec)
    rep = fixed_point_free_criterion(T)
    # the identity fixes every nonzero vector
    assert rep.items[0].status == "failed"
    assert not rep.certified


def test_sylow_normalizer_criterion_positive():
    spec = ModuleSpec(5, 2, 2)
    G = MatGroup.close([M([[2, 0], [0, 3]], 25), M([[1, 5], [0, 1]], 25)],
                       spec)
    rep = sylow_normalizer_criterion(G)
    assert rep.certified
    assert rep.cross_check == ()
    g = rep.items[-1].witness
    assert (5 - 1) % element_order(g) == 0


def test_sylow_normalizer_criterion_family_not_applicable():
    inst = build(5)
    rep = sylow_normalizer_criterion(inst.G2)
    assert rep.conclusion == "not_applicable"
    assert rep.cross_check == (5, 5)


def test_sylow_normalizer_criterion_cyclic_p_group():
    # no qualifying element (identity is not bijective minus one), yet the
    # direct computation vanishes: conclusions stay honest
    spec = ModuleSpec(5, 2, 2)
    C = MatGroup.close([M([[1, 1], [0, 1]], 25)], spec)
    rep = sylow_normalizer_criterion(C)
    assert rep.conclusion == "not_applicable"
    assert rep.cross_check == ()


def test_lift_qualifying_element_n1_identity_case():
    spec = ModuleSpec(5, 1, 2)
    g1 = M([[2, 0], [0, 3]], 5)
    G1 = MatGroup.close([g1], spec)
    assert lift_qualifying_element(G1, g1).key() == g1.key()


def test_lift_qualifying_element_mod25():
    spec = ModuleSpec(5, 2, 2)
    G = MatGroup.close([M([[2, 0], [0, 3]], 25), M([[1, 5], [0, 1]], 25)],
                       spec)
    g1 = M([[2, 0], [0, 3]], 5)
    g = lift_qualifying_element(G, g1)
    assert (5 - 1) % element_order(g) == 0
    assert g.reduce_mod(5).key() == g1.key()
    import math
    assert math.gcd(g.minus_identity().det(), 25) == 1


def test_lift_qualifying_element_preconditions():
    spec = ModuleSpec(5, 2, 2)
    borel = MatGroup.close([M([[2, 0], [0, 3]], 25), M([[1, 1], [0, 1]], 25)],
                           spec)
    with pytest.raises(PreconditionError, match="order"):
        lift_qualifying_element(borel, M([[1, 1], [0, 1]], 5))
    with pytest.raises(PreconditionError, match="bijective"):
        lift_qualifying_element(borel, Mat.identity(2, 5))
    with pytest.raises(PreconditionError, match="element of"):
        lift_qualifying_element(borel, M([[0, 1], [1, 0]], 5))


def test_similitude_criterion_gl2():
    spec = ModuleSpec(5, 1, 2)
    GL2 = MatGroup.close([M([[2, 0], [0, 1]], 5), M([[4, 1], [4, 0]], 5)],
                         spec)
    rep = similitude_criterion(GL2)
    assert rep.certified
    assert rep.cross_check == ()
    item = next(i for i in rep.items if "Sylow-normalizer" in i.name)
    assert "i = 2" in item.detail


def test_similitude_criterion_small_diag_not_certified():
    spec = ModuleSpec(5, 1, 2)
    D = MatGroup.close([M([[2, 0], [0, 1]], 5)], spec)
    rep = similitude_criterion(D)
    assert rep.conclusion == "not_applicable"
    # multiplier happens to be surjective (det powers), but every
    # qualifying element fixes a vector
    assert rep.items[-1].status == "failed"


def test_similitude_criterion_multiplier_not_surjective():
    spec = ModuleSpec(5, 1, 2)
    SL2 = MatGroup.close([M([[1, 1], [0, 1]], 5), M([[1, 0], [1, 1]], 5)],
                         spec)
    rep = similitude_criterion(SL2)
    assert rep.conclusion == "not_applicable"
    assert any(i.name.startswith("multiplier") and i.status == "failed"
               for i in rep.items)


def test_fixed_point_spectrum_examples():
    spec = ModuleSpec(5, 1, 2)
    T = MatGroup.close([], spec)
    sm, flag = fixed_point_spectrum(T)
    assert list(sm.values()) == [2] and flag
    U = MatGroup.close([M([[1, 1], [0, 1]], 5)], spec)
    _, flag_u = fixed_point_spectrum(U)
    assert flag_u
    Neg = MatGroup.close([M([[4, 0], [0, 4]], 5)], spec)
    _, flag_n = fixed_point_spectrum(Neg)
    assert not flag_n


def test_report_lines_render():
    spec = ModuleSpec(5, 2, 2)
    G = MatGroup.close([M([[2, 0], [0, 3]], 25)], spec)
    rep = sylow_normalizer_criterion(G)
    text = "\n".join(rep.lines())
    assert "criterion" in text and "conclusion" in text
