"""Blow-up trees: strict transforms, resolution, Noether numbers, dual graphs."""

import random

import pytest

from logmodel.blowup import (
    INF,
    Branch,
    BlowupTree,
    desingularize,
    dual_graph,
    dual_graph_dot,
    intersection_number,
    intersection_oracle,
    is_negative_definite,
    multiplicity,
    strict_transform,
)
from logmodel.errors import LogmodelError, NotOnCurve
from logmodel.exactalg import GRat, parse_poly2


def B(label, text, conj=None):
    return Branch.make(label, parse_poly2(text), conj)


EX1 = [
    B("S1", "x - y^2"),
    B("S2", "x + y^2"),
    B("S3", "y - i*x", conj="S4"),
    B("S4", "y + i*x", conj="S3"),
]

EX2 = [
    B("S1", "x^3 - (y - x)^2"),
    B("S2", "x^3 - (y + x)^2"),
    B("S3", "x^3 - (y - 4x)^2"),
    B("S4", "x^3 - (y + 4x)^2"),
]


def test_multiplicity_examples():
    assert multiplicity(parse_poly2("x - y^2")) == 1
    assert multiplicity(parse_poly2("x^3 - (y-x)^2")) == 2
    assert multiplicity(parse_poly2("x^2*(x^2 + 2y^2 + 1)")) == 2
    with pytest.raises(NotOnCurve):
        multiplicity(parse_poly2("x + 1"))


def test_strict_transform_examples():
    st, nu = strict_transform(parse_poly2("x - y^2"), "y")
    assert nu == 1 and st == parse_poly2("u - y", vars=("u", "y"))
    st, nu = strict_transform(parse_poly2("x^3 - (y - 4x)^2"), "x")
    assert nu == 2 and st == parse_poly2("x - (t - 4)^2", vars=("x", "t"))
    st, nu = strict_transform(parse_poly2("x"), "y")
    assert nu == 1 and st == parse_poly2("u", vars=("u", "y"))


def test_blow_up_origin_single():
    tree = BlowupTree([B("S", "y - x^2")]).blow_up(0)
    assert tree.height == 1
    assert tree.components[1].c_at(1) == -1


def test_example1_tree():
    tree = desingularize(EX1)
    assert tree.height == 2
    # sigma_2 is centred at the infinity point of D1
    p = tree.points[tree.centers[1]]
    assert p.coord_on(1) == INF
    assert tree.components[1].c_at(1) == -1
    assert tree.components[1].c_at(2) == -2
    assert tree.components[2].c_at(2) == -1
    # landing points at level 2: t = 1 and t = -1 on D2, D1 corner at 0
    assert tree.branch_step("S1", 2).pid == tree.find_point(2, GRat(1))
    assert tree.branch_step("S2", 2).pid == tree.find_point(2, GRat(-1))
    assert tree.find_point(2, GRat(0)) is not None
    g = dual_graph(tree, 2)
    assert g.weights == {1: -2, 2: -1}
    assert g.edges == [(1, 2)]


def test_corner_blowup_decrements_both():
    tree = desingularize([B("C", "x^3 - y^2")])
    # cusp: three blow-ups, final chain (-3, -2, -1)
    assert tree.height == 3
    assert {c: tree.components[c].c_at(3) for c in (1, 2, 3)} == {1: -3, 2: -2, 3: -1}


def test_desingularize_counts():
    assert desingularize(EX1).height == 2
    assert desingularize([B("X", "x"), B("Y", "y")]).height == 1
    assert desingularize(EX2).height == 9


def test_desingularize_idempotent():
    for branches in (EX1, EX2):
        tree = desingularize(branches)
        assert tree.is_resolved
        assert tree.unsettled_points() == []


def test_intersection_numbers_examples():
    tree = desingularize(EX1)
    assert intersection_number(tree, "S1", "S2") == 2
    assert intersection_oracle(EX1[0].equation, EX1[1].equation) == 2

    txy = desingularize([B("X", "x"), B("Y", "y")])
    assert intersection_number(txy, "X", "Y") == 1

    t2 = desingularize(EX2[:2])
    assert intersection_number(t2, "S1", "S2") == 4
    assert intersection_oracle(EX2[0].equation, EX2[1].equation) == 4


def _random_branch(rng, idx):
    kind = rng.choice(["line", "parabola", "cusp", "tangentline"])
    a = rng.randint(-4, 4)
    if kind == "line":
        text = f"y - {a}*x" if a >= 0 else f"y + {-a}*x"
    elif kind == "parabola":
        c = rng.choice([1, -1, 2])
        text = f"x - {c}*y^2" if c > 0 else f"x + {-c}*y^2"
    elif kind == "cusp":
        text = f"x^3 - (y - {a}*x)^2" if a >= 0 else f"x^3 - (y + {-a}*x)^2"
    else:
        c = rng.choice([1, -1, 2, -2])
        text = f"y - {a}*x - {c}*x^2" if a >= 0 else f"y + {-a}*x - {c}*x^2"
    return B(f"R{idx}", text)


def test_noether_matches_resultant_on_random_pairs():
    rng = random.Random(1234)
    done = 0
    while done < 20:
        b1 = _random_branch(rng, 1)
        b2 = _random_branch(rng, 2)
        if str(b1.equation) == str(b2.equation):
            continue
        try:
            tree = desingularize([b1, b2])
        except LogmodelError:
            continue
        noether = intersection_number(tree, "R1", "R2")
        oracle = intersection_oracle(b1.equation, b2.equation)
        assert noether == oracle, f"{b1.equation} vs {b2.equation}"
        done += 1


def test_example2_dual_graph_star():
    tree = desingularize(EX2)
    g = dual_graph(tree, 9)
    assert len(g.vertices) == 9
    assert g.weights[1] == -9
    deg = {c: 0 for c in g.vertices}
    for a, b in g.edges:
        deg[a] += 1
        deg[b] += 1
    assert deg[1] == 4  # four chains hang off the first component
    assert sorted(deg.values()) == [1, 1, 1, 1, 2, 2, 2, 2, 4]


def test_every_level_negative_definite():
    for branches in (EX1, EX2):
        tree = desingularize(branches)
        for level in range(1, tree.height + 1):
            dual_graph(tree, level)  # raises if not negative definite


def test_not_negative_definite_detector():
    assert not is_negative_definite([[1]])
    assert is_negative_definite([[-2, 1], [1, -1]])
    assert not is_negative_definite([[-1, 1], [1, -1]])


def test_blowup_count_vs_self_intersection():
    for branches in (EX1, EX2):
        tree = desingularize(branches)
        hits = {c: 0 for c in tree.components}
        for pid in tree.centers:
            for c in tree.comps_through(pid):
                hits[c] += 1
        for c, comp in tree.components.items():
            assert hits[c] == -1 - comp.c_at(tree.height)


def test_dot_output_is_deterministic():
    tree = desingularize(EX1)
    g = dual_graph(tree, 2)
    dot = dual_graph_dot(g, dic_flags={2})
    assert dot == dual_graph_dot(dual_graph(tree, 2), dic_flags={2})
    assert '"D1" -- "D2";' in dot
    assert "doublecircle" in dot


def test_blow_up_purity():
    tree = BlowupTree(EX1)
    t2 = tree.blow_up(0)
    assert tree.height == 0 and t2.height == 1
