"""Index systems: final assignment, descent, axioms, the chain lemma."""

from fractions import Fraction

import pytest

from logmodel.blowup import INF, Branch, BlowupTree, desingularize
from logmodel.errors import AxiomViolation
from logmodel.exactalg import GRat, parse_poly2
from logmodel.indices import (
    IndexSystem,
    assign_final_indices,
    descend_indices,
    solve_invariant_tree,
    validate_indices,
)
from logmodel.multiplet import Duplet, duplet_from_branches


def B(label, text, conj=None):
    return Branch.make(label, parse_poly2(text), conj)


def ex1_duplet():
    branches = [
        B("S1", "x - y^2"),
        B("S2", "x + y^2"),
        B("S3", "y - i*x", conj="S4"),
        B("S4", "y + i*x", conj="S3"),
    ]
    return duplet_from_branches(branches, dic_centers=[(1, INF)])


def test_example1_final_indices_symmetric():
    d = ex1_duplet()
    final = assign_final_indices(d)
    q3 = d.tree.branch_step("S3", 2).pid
    q4 = d.tree.branch_step("S4", 2).pid
    assert final[(q3, ("D", 1))] == GRat(-1)
    assert final[(q4, ("D", 1))] == GRat(-1)
    assert final[(q3, ("S", "S3"))] == GRat(-1)
    assert final[(q4, ("S", "S4"))] == GRat(-1)
    # the corner D1/D2 is a regular support point: no entry
    assert all(item != ("D", 2) for _, item in final)


def test_single_component_forced_values():
    d = duplet_from_branches([B("S", "y - x^2")])
    final = assign_final_indices(d)
    p = d.tree.branch_step("S", 1).pid
    assert final[(p, ("D", 1))] == GRat(-1)
    assert final[(p, ("S", "S"))] == GRat(-1)


def chain_duplet():
    # blow up the origin, then the landing point of y on D1: chain
    # D1(-2) -- D2(-1) with the separatrix attached to D2
    tree = BlowupTree([B("S", "y")]).blow_up(0)
    tree = tree.blow_up(tree.branch_step("S", 1).pid)
    return Duplet(tree, frozenset())


def test_chain_example_hand_oracle():
    d = chain_duplet()
    assert d.tree.components[1].c_at(2) == -2
    assert d.tree.components[2].c_at(2) == -1
    final = assign_final_indices(d)
    corner = next(
        pid
        for pid in d.tree.corners_alive(2)
        if {d.tree.points[pid].frame_x_comp, d.tree.points[pid].frame_y_comp} == {1, 2}
    )
    p = d.tree.branch_step("S", 2).pid
    assert final[(corner, ("D", 1))] == GRat(-2)
    assert final[(corner, ("D", 2))] == GRat(Fraction(-1, 2))
    assert final[(p, ("D", 2))] == GRat(Fraction(-1, 2))
    assert final[(p, ("S", "S"))] == GRat(-2)


def test_linear_chain_lemma():
    for r in range(1, 7):
        weights = {1: GRat(-1)}
        for k in range(2, r + 1):
            weights[k] = GRat(-2)
        edges = [(k, k + 1) for k in range(1, r)]
        _, attach = solve_invariant_tree(weights, edges, root=1)
        assert attach == GRat(Fraction(-1, r))
        # separatrix index = reciprocal
        assert attach.inverse() == GRat(-r)


def test_descend_example1():
    d = ex1_duplet()
    final = assign_final_indices(d)
    system = descend_indices(d, final)
    p = d.tree.centers[1]
    # i_p(D1) = 1 at level 1 (the paper's value)
    assert system.value(1, p, ("D", 1)) == GRat(1)
    assert system.value(1, p, ("S", "S1")) == GRat(1)
    # level-1 sum over D1: 1 - 1 - 1 = -1 = c(D1)
    q3 = d.tree.branch_step("S3", 1).pid
    assert system.value(1, q3, ("D", 1)) == GRat(-1)
    # S3 descends to index 0 at the origin
    assert system.value(0, 0, ("S", "S3")) == GRat(0)
    # S1 descends to 2 at the origin
    assert system.value(0, 0, ("S", "S1")) == GRat(2)
    rep = validate_indices(d, system)
    assert rep.ok, rep.render()


def test_descend_is_deterministic():
    d = ex1_duplet()
    final = assign_final_indices(d)
    s1 = descend_indices(d, final)
    s2 = descend_indices(d, final)
    assert s1.levels == s2.levels


def test_validate_detects_broken_sum():
    d = ex1_duplet()
    final = assign_final_indices(d)
    q3 = d.tree.branch_step("S3", 2).pid
    bad = dict(final)
    bad[(q3, ("D", 1))] = GRat(-2)
    with pytest.raises(AxiomViolation):
        descend_indices(d, bad)
    system = IndexSystem(d, {2: bad})
    rep = validate_indices(d, system)
    assert any(not f.ok and f.axiom == "I.3" for f in rep.findings)


def test_validate_detects_broken_reciprocal():
    d = ex1_duplet()
    final = assign_final_indices(d)
    q3 = d.tree.branch_step("S3", 2).pid
    bad = dict(final)
    bad[(q3, ("S", "S3"))] = GRat(Fraction(-1, 2))
    system = IndexSystem(d, {2: bad})
    rep = validate_indices(d, system)
    assert any(not f.ok and f.axiom == "I.4" for f in rep.findings)


def test_assigned_indices_always_negative_and_valid():
    for d in (ex1_duplet(), chain_duplet()):
        final = assign_final_indices(d)
        from logmodel.exactalg import is_negative_real

        assert all(is_negative_real(v) for v in final.values())
        system = descend_indices(d, final)
        assert validate_indices(d, system).ok
