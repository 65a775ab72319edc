"""Duplet axioms, localization and dominance."""

import pytest

from logmodel.blowup import INF, ORIGIN_PID, Branch, desingularize
from logmodel.errors import InvalidCenter
from logmodel.exactalg import GRat, parse_poly2
from logmodel.multiplet import (
    Duplet,
    dominates,
    duplet_from_branches,
    localize,
    validate_configuration,
    validate_duplet,
    validate_structure,
)


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


def ex2_duplet():
    branches = [
        B("S1", "x^3 - (y - x)^2"),
        B("S2", "x^3 - (y + x)^2"),
        B("S3", "x^3 - (y - 4x)^2"),
        B("S4", "x^3 - (y + 4x)^2"),
    ]
    return duplet_from_branches(branches, dic_centers=["origin"])


def test_example1_structure_valid():
    d = ex1_duplet()
    assert d.dic == frozenset({2})
    rep = validate_structure(d)
    assert rep.ok, rep.render()


def test_both_components_dicritical_violates_d3():
    d = ex1_duplet()
    bad = Duplet(d.tree, frozenset({1, 2}))
    rep = validate_structure(bad)
    fails = [f for f in rep.failures() if f.axiom == "D.3"]
    assert fails and "D1 meets D2" in fails[0].witness


def test_example1_configuration_valid():
    d = ex1_duplet()
    rep = validate_duplet(d)
    assert rep.ok, rep.render()
    assert d.sep_flag("S1") == "dic"
    assert d.sep_flag("S3") == "iso"


def test_missing_isolated_separatrix_violates_s2():
    branches = [B("S1", "x - y^2"), B("S2", "x + y^2")]
    d = duplet_from_branches(branches, dic_centers=[(1, INF)])
    rep = validate_configuration(d)
    fails = [f for f in rep.failures() if f.axiom == "S.2"]
    assert fails


def test_radial_top_level_rejected():
    d = duplet_from_branches([B("X", "x"), B("Y", "y")], dic_centers=["origin"])
    rep = validate_configuration(d)
    assert any(not f.ok and "radial" in f.witness for f in rep.findings)


def test_valence_one_dicritical_needs_separatrix():
    # dicritical second blow-up with no branch landing on it
    branches = [B("S3", "y - i*x", conj="S4"), B("S4", "y + i*x", conj="S3")]
    tree = desingularize(branches)
    tree = tree.blow_up(tree.ensure_point(1, INF))
    d = Duplet(tree, frozenset({2}))
    rep = validate_configuration(d)
    fails = [f for f in rep.failures() if f.axiom == "S.3"]
    assert fails and "valence 1" in fails[0].witness


def test_example2_duplet_valid():
    rep = validate_duplet(ex2_duplet())
    assert rep.ok, rep.render()


def test_s4_flags_unjustified_blowup():
    d = ex1_duplet()
    tree = d.tree.blow_up(d.tree.ensure_point(1, GRat(5)))
    bad = Duplet(tree, d.dic)
    rep = validate_configuration(bad)
    fails = [f for f in rep.failures() if f.axiom == "S.4"]
    assert fails


def test_localize_example1_at_center():
    d = ex1_duplet()
    p = d.tree.centers[1]  # the infinity point of D1
    local = localize(d, p)
    # radial local structure: one blow-up, dicritical, with the local branches
    # of S1, S2 dicritical and the local branch of D1 isolated
    assert local.height == 1
    assert local.dic == frozenset({1})
    assert local.sep_flag("S1") == "dic"
    assert local.sep_flag("S2") == "dic"
    # the local branch of D1 meets the dicritical fiber, so it is dicritical too
    assert local.sep_flag("D1") == "dic"
    assert local.declared_sep.get("D1") == "dic"
    rep = validate_duplet(local)
    assert rep.ok, rep.render()


def test_localize_example1_at_isolated_attachment():
    d = ex1_duplet()
    q3 = d.tree.branch_step("S3", 2).pid
    local = localize(d, q3)
    # trivial tower over q3: S3 local branch is isolated, D1 also isolated
    assert local.height == 0
    assert local.sep_labels() == ["D1", "S3"]
    assert local.declared_sep.get("D1") == "iso"


def test_localize_at_free_point_is_empty():
    d = ex1_duplet()
    free = d.tree.ensure_point(1, GRat(7))
    local = localize(d, free)
    assert local.height == 0
    assert local.sep_labels() == ["D1"]


def test_dominates_reflexive():
    d = ex1_duplet()
    ok, witnesses, reason = dominates(d, d)
    assert ok and witnesses == [], reason


def test_dominates_example2_escape_branch():
    d = ex2_duplet()
    # an invariant branch through t = 2 on the dicritical component (where the
    # paper's quartic level curves are tangent) forces extra blow-ups there
    extra = Branch.make("E", parse_poly2("y - 2*x"))
    tree2 = d.tree.extend_with_branch(extra)
    tree2 = tree2.blow_up(tree2.find_point(1, GRat(2)))
    d2 = Duplet(tree2, d.dic)
    ok, witnesses, reason = dominates(d2, d)
    assert ok, reason
    assert len(witnesses) == 1 and witnesses[0][0] == "E"
    assert witnesses[0][1] == "D1 @ 2"


def test_dominates_rejects_nondicritical_landing():
    d = ex1_duplet()
    extra = Branch.make("E", parse_poly2("y - 3*x"))
    tree2 = d.tree.extend_with_branch(extra)
    d2 = Duplet(tree2, d.dic)
    ok, _, reason = dominates(d2, d)
    assert not ok and "non-dicritical" in reason


def test_localize_invalid_center():
    d = ex1_duplet()
    with pytest.raises(InvalidCenter):
        localize(d, 999)
