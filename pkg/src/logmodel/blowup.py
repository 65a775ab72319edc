"""Trees of infinitely near points for finite branch sets.

Chart conventions.  Every point carries a local frame (X, Y): the most recent
divisor component through the point has equation Y = 0, a second component
(at corners) has X = 0.  Blowing up substitutes Y = X*T (first chart, new
component X = 0, chart coordinate T = Y/X) or X = U*Y (second chart, covering
T = infinity).  A branch with tangent cone (Y - a*X)^m lands at T = a; a cone
X^m lands at infinity.  The strict transform of Y = 0 meets the new component
at T = 0, the strict transform of X = 0 at infinity.

Frames also store the polynomial map down to level-0 coordinates, which is
how local curves at deep points acquire level-0 equations (via implicitize).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import (
    BranchNotInTree,
    InvalidCenter,
    LogmodelError,
    NonReducible,
    NotOnCurve,
)
from .exactalg import GRat, Poly1, Poly2, order_at_zero, resultant_y

INF = "inf"

ORIGIN_PID = 0

_FINITE_VARS = ("t", "x")
_INF_VARS = ("u", "y")


def coord_key(coord):
    """Deterministic sort key for chart coordinates; infinity last."""
    if coord == INF:
        return (1, Fraction(0), Fraction(0))
    return (0, coord.re, coord.im)


@dataclass(frozen=True)
class Branch:
    """A local irreducible plane curve germ given by an exact equation."""

    label: str
    equation: Poly2
    conj_label: str | None = None  # None marks a real branch

    @property
    def is_real(self) -> bool:
        return self.conj_label is None

    @staticmethod
    def make(label: str, equation: Poly2, conj_label: str | None = None) -> "Branch":
        if equation.is_zero:
            raise LogmodelError(f"branch {label}: zero equation")
        if not equation.eval(0, 0).is_zero:
            raise NotOnCurve(f"branch {label}: equation does not vanish at the origin")
        if equation.tangent_direction() is None:
            raise NonReducible(
                f"branch {label}: tangent cone is not a power of a single line"
            )
        if conj_label is None and not equation.is_real():
            raise LogmodelError(
                f"branch {label}: non-real coefficients on a branch marked real"
            )
        return Branch(label, equation, conj_label)


@dataclass
class Point:
    pid: int
    birth: int
    frame_x_comp: int | None
    frame_y_comp: int | None
    on: tuple  # ((comp_id, coord), ...) incidences
    down_x: Poly2
    down_y: Poly2
    frame_vars: tuple
    blown_at: int | None = None

    @property
    def is_corner(self) -> bool:
        return self.frame_x_comp is not None and self.frame_y_comp is not None

    def coord_on(self, comp_id):
        for c, coord in self.on:
            if c == comp_id:
                return coord
        return None

    def is_real(self) -> bool:
        for _, coord in self.on:
            if coord != INF and coord.im != 0:
                return False
        return True

    def alive_at(self, level: int) -> bool:
        return self.birth <= level and (self.blown_at is None or self.blown_at > level)


@dataclass
class Component:
    cid: int  # equals the birth level
    creator_pid: int
    self_int: dict = field(default_factory=dict)  # level -> c

    def c_at(self, level: int) -> int:
        return self.self_int[level]


@dataclass
class TraceStep:
    level: int
    pid: int
    local_eq: Poly2
    mult: int


class BlowupTree:
    """Blow-up history with per-branch strict-transform traces.

    Mutating helpers are private; :meth:`blow_up` returns a new tree.
    """

    def __init__(self, branches):
        labels = [b.label for b in branches]
        if len(set(labels)) != len(labels):
            raise LogmodelError("duplicate branch labels")
        eqs = {}
        for b in branches:
            key = str(_normalize_eq(b.equation))
            if key in eqs:
                raise LogmodelError(
                    f"branches {eqs[key]} and {b.label} have the same equation"
                )
            eqs[key] = b.label
        self.branches = {b.label: b for b in branches}
        self.height = 0
        origin = Point(
            pid=ORIGIN_PID,
            birth=0,
            frame_x_comp=None,
            frame_y_comp=None,
            on=(),
            down_x=Poly2.var_x(),
            down_y=Poly2.var_y(),
            frame_vars=("x", "y"),
        )
        self.points = {ORIGIN_PID: origin}
        self.point_index = {}  # (comp, coord) -> pid
        self.components = {}
        self.centers = []  # pid of the center of sigma_j at position j-1
        self.traces = {
            b.label: [TraceStep(0, ORIGIN_PID, b.equation, b.equation.order)]
            for b in branches
        }
        self._next_pid = 1

    # -- copying ---------------------------------------------------------
    def _copy(self) -> "BlowupTree":
        t = BlowupTree.__new__(BlowupTree)
        t.branches = dict(self.branches)
        t.height = self.height
        t.points = {pid: replace(p) for pid, p in self.points.items()}
        t.point_index = dict(self.point_index)
        t.components = {
            cid: Component(c.cid, c.creator_pid, dict(c.self_int))
            for cid, c in self.components.items()
        }
        t.centers = list(self.centers)
        t.traces = {lbl: list(steps) for lbl, steps in self.traces.items()}
        t._next_pid = self._next_pid
        return t

    # -- queries -----------------------------------------------------------
    def point(self, pid: int) -> Point:
        return self.points[pid]

    def find_point(self, comp_id: int, coord):
        return self.point_index.get((comp_id, _canon_coord(coord)))

    def branch_step(self, label: str, level: int) -> TraceStep:
        if label not in self.traces:
            raise BranchNotInTree(label)
        steps = self.traces[label]
        out = steps[0]
        for s in steps:
            if s.level <= level:
                out = s
            else:
                break
        return out

    def branch_base(self, label: str, level: int) -> int:
        return self.branch_step(label, level).pid

    def branches_at(self, pid: int, level: int):
        return [
            lbl for lbl in self.traces if self.branch_base(lbl, level) == pid
        ]

    def comps_through(self, pid: int):
        p = self.points[pid]
        out = []
        if p.frame_x_comp is not None:
            out.append(p.frame_x_comp)
        if p.frame_y_comp is not None:
            out.append(p.frame_y_comp)
        return out

    def comps_alive(self, level: int):
        return sorted(c for c in self.components if c <= level)

    def corners_alive(self, level: int):
        out = []
        for p in self.points.values():
            if p.is_corner and p.alive_at(level):
                out.append(p.pid)
        return sorted(out)

    def points_on_component(self, comp_id: int):
        """All registered points on a component, sorted by coordinate."""
        seen = {}
        for (c, coord), pid in self.point_index.items():
            if c == comp_id:
                seen[pid] = coord
        return sorted(seen.items(), key=lambda kv: coord_key(kv[1]))

    def multiplicity_at(self, label: str, pid: int):
        """Multiplicity of a branch at one of its infinitely near points."""
        for s in self.traces[label]:
            if s.pid == pid:
                return s.mult
        raise NotOnCurve(f"branch {label} does not pass through point {pid}")

    # -- point creation ------------------------------------------------------
    def _register(self, point: Point):
        self.points[point.pid] = point
        for c, coord in point.on:
            self.point_index[(c, _canon_coord(coord))] = point.pid

    def ensure_point(self, comp_id: int, coord) -> int:
        """Point on a component at the given chart coordinate (create if free)."""
        coord = _canon_coord(coord)
        pid = self.find_point(comp_id, coord)
        if pid is not None:
            return pid
        comp = self.components.get(comp_id)
        if comp is None:
            raise InvalidCenter(f"no component D{comp_id}")
        creator = self.points[comp.creator_pid]
        point = self._landing_point(creator, comp_id, coord)
        self._register(point)
        return point.pid

    def _landing_point(self, center: Point, new_comp: int, coord) -> Point:
        """Build the frame of a point on the component created at ``center``."""
        pid = self._next_pid
        self._next_pid += 1
        if coord == INF:
            down_x = center.down_x.subst(
                Poly2({(1, 1): 1}, vars=_INF_VARS), Poly2({(0, 1): 1}, vars=_INF_VARS)
            )
            down_y = center.down_y.subst(
                Poly2({(1, 1): 1}, vars=_INF_VARS), Poly2({(0, 1): 1}, vars=_INF_VARS)
            )
            return Point(
                pid=pid,
                birth=new_comp,
                frame_x_comp=center.frame_x_comp,
                frame_y_comp=new_comp,
                on=_corner_on(new_comp, INF, center, center.frame_x_comp),
                down_x=down_x,
                down_y=down_y,
                frame_vars=_INF_VARS,
            )
        a = coord
        x_expr = Poly2({(0, 1): 1}, vars=_FINITE_VARS)  # old X = Y'
        y_expr = Poly2({(1, 1): 1, (0, 1): a}, vars=_FINITE_VARS)  # old Y = Y'(X'+a)
        down_x = center.down_x.subst(x_expr, y_expr)
        down_y = center.down_y.subst(x_expr, y_expr)
        x_comp = center.frame_y_comp if a == GRat(0) else None
        return Point(
            pid=pid,
            birth=new_comp,
            frame_x_comp=x_comp,
            frame_y_comp=new_comp,
            on=_corner_on(new_comp, a, center, x_comp),
            down_x=down_x,
            down_y=down_y,
            frame_vars=_FINITE_VARS,
        )

    # -- blow-up --------------------------------------------------------------
    def blow_up(self, center_pid: int) -> "BlowupTree":
        t = self._copy()
        t._blow_up(center_pid)
        return t

    def _blow_up(self, center_pid: int):
        if center_pid not in self.points:
            raise InvalidCenter(f"unknown point {center_pid}")
        center = self.points[center_pid]
        if not center.alive_at(self.height):
            raise InvalidCenter(f"point {center_pid} is not at the current top level")
        j = self.height + 1
        new_cid = j
        self.centers.append(center_pid)
        center.blown_at = j
        self.height = j
        # self-intersections
        through = set(self.comps_through(center_pid))
        for cid, comp in self.components.items():
            prev = comp.self_int[j - 1]
            comp.self_int[j] = prev - 1 if cid in through else prev
        comp = Component(new_cid, center_pid, {j: -1})
        self.components[new_cid] = comp
        # corner points with the components through the center
        if center.frame_y_comp is not None:
            self.ensure_point(new_cid, GRat(0))
        if center.frame_x_comp is not None:
            self.ensure_point(new_cid, INF)
        # strict transforms of branches based at the center
        for lbl in sorted(self.traces):
            step = self.traces[lbl][-1]
            if step.pid != center_pid:
                continue
            direction = step.local_eq.tangent_direction()
            if direction is None:
                raise NonReducible(
                    f"branch {lbl}: tangent cone is not a power of one line at level {j - 1}"
                )
            kind, a = direction
            nu = step.local_eq.order
            if kind == "finite":
                pid = self.ensure_point(new_cid, a)
                x_expr = Poly2({(0, 1): 1}, vars=_FINITE_VARS)
                y_expr = Poly2({(1, 1): 1, (0, 1): a}, vars=_FINITE_VARS)
            else:
                pid = self.ensure_point(new_cid, INF)
                x_expr = Poly2({(1, 1): 1}, vars=_INF_VARS)
                y_expr = Poly2({(0, 1): 1}, vars=_INF_VARS)
            transformed = step.local_eq.subst(x_expr, y_expr).divide_y_power(nu)
            new_eq = _recentre(transformed)
            self.traces[lbl].append(TraceStep(j, pid, new_eq, new_eq.order))

    # -- incremental branches ---------------------------------------------------
    def extend_with_branch(self, branch: Branch) -> "BlowupTree":
        """Replay the existing centers over one additional branch."""
        t = self._copy()
        if branch.label in t.branches:
            raise LogmodelError(f"duplicate branch label {branch.label}")
        t.branches[branch.label] = branch
        steps = [TraceStep(0, ORIGIN_PID, branch.equation, branch.equation.order)]
        for j, center_pid in enumerate(t.centers, start=1):
            step = steps[-1]
            if step.pid != center_pid:
                continue
            direction = step.local_eq.tangent_direction()
            if direction is None:
                raise NonReducible(
                    f"branch {branch.label}: tangent cone is not one line at level {j - 1}"
                )
            kind, a = direction
            nu = step.local_eq.order
            if kind == "finite":
                pid = t.ensure_point(j, a)
                x_expr = Poly2({(0, 1): 1}, vars=_FINITE_VARS)
                y_expr = Poly2({(1, 1): 1, (0, 1): a}, vars=_FINITE_VARS)
            else:
                pid = t.ensure_point(j, INF)
                x_expr = Poly2({(1, 1): 1}, vars=_INF_VARS)
                y_expr = Poly2({(0, 1): 1}, vars=_INF_VARS)
            transformed = step.local_eq.subst(x_expr, y_expr).divide_y_power(nu)
            new_eq = _recentre(transformed)
            steps.append(TraceStep(j, pid, new_eq, new_eq.order))
        t.traces[branch.label] = steps
        return t

    # -- resolution ---------------------------------------------------------------
    def unsettled_points(self):
        """Points whose blow-up is still required by curve resolution."""
        level = self.height
        by_pid = {}
        for lbl in self.traces:
            pid = self.branch_base(lbl, level)
            by_pid.setdefault(pid, []).append(lbl)
        out = []
        for pid, labels in by_pid.items():
            point = self.points[pid]
            if pid == ORIGIN_PID:
                out.append(pid)
                continue
            if len(labels) >= 2:
                out.append(pid)
                continue
            step = self.branch_step(labels[0], level)
            if step.mult > 1 or point.is_corner:
                out.append(pid)
                continue
            direction = step.local_eq.tangent_direction()
            if direction is None:
                raise NonReducible(
                    f"branch {labels[0]}: tangent cone is not one line at level {level}"
                )
            if direction == ("finite", GRat(0)):
                out.append(pid)  # tangent to the divisor component
        return sorted(out, key=self._point_order_key)

    def _point_order_key(self, pid):
        p = self.points[pid]
        if pid == ORIGIN_PID:
            return (0, 0, (0, Fraction(0), Fraction(0)))
        comp = min(c for c, _ in p.on)
        return (p.birth, comp, coord_key(p.coord_on(comp)))

    @property
    def is_resolved(self) -> bool:
        return not self.unsettled_points()


def desingularize(branches, cap: int = 64) -> BlowupTree:
    """Minimal deterministic resolution of a finite branch set."""
    tree = BlowupTree(list(branches))
    for _ in range(cap):
        pending = tree.unsettled_points()
        if not pending:
            return tree
        tree = tree.blow_up(pending[0])
    if tree.unsettled_points():
        raise NonReducible(f"resolution did not terminate within {cap} blow-ups")
    return tree


# ---------------------------------------------------------------------------
# Free operations.


def multiplicity(f: Poly2, at=(0, 0)) -> int:
    """Order of vanishing of f at a point given in the current coordinates."""
    a, b = at
    g = f.translate(GRat.of(a) if not isinstance(a, GRat) else a, GRat.of(b) if not isinstance(b, GRat) else b)
    if g.is_zero or not g.eval(0, 0).is_zero:
        raise NotOnCurve("equation does not vanish at the point")
    return g.order


def strict_transform(f: Poly2, chart: str):
    """One blow-up at the origin in the named chart ('x': y = x*t, 'y': x = u*y)."""
    if f.is_zero or not f.eval(0, 0).is_zero:
        raise NotOnCurve("equation does not vanish at the blow-up center")
    nu = f.order
    if chart == "x":
        g = f.subst_first_chart()
        return g.divide_x_power(nu), nu
    if chart == "y":
        g = f.subst_second_chart()
        return g.divide_y_power(nu), nu
    raise LogmodelError(f"unknown chart {chart!r}")


def intersection_number(tree: BlowupTree, s1: str, s2: str) -> int:
    """Noether's formula over the common infinitely near points."""
    if s1 == s2:
        raise LogmodelError("intersection number requires distinct branches")
    if s1 not in tree.traces or s2 not in tree.traces:
        raise BranchNotInTree(f"{s1} or {s2}")
    m1 = {s.pid: s.mult for s in tree.traces[s1]}
    m2 = {s.pid: s.mult for s in tree.traces[s2]}
    if tree.traces[s1][-1].pid == tree.traces[s2][-1].pid:
        raise LogmodelError("branches are not separated in this tree")
    return sum(m1[p] * m2[p] for p in m1.keys() & m2.keys())


def intersection_oracle(f: Poly2, g: Poly2) -> int:
    """Independent intersection number via the order of the resultant."""
    r = resultant_y(f, g)
    k = order_at_zero(r)
    if not isinstance(k, int):
        raise LogmodelError("branches share a component")
    return k


# ---------------------------------------------------------------------------
# Dual graphs.


@dataclass
class DualGraph:
    level: int
    vertices: list  # component ids
    weights: dict  # cid -> c
    edges: list  # sorted (cid, cid) pairs

    def intersection_matrix(self):
        idx = {c: k for k, c in enumerate(self.vertices)}
        n = len(self.vertices)
        m = [[Fraction(0)] * n for _ in range(n)]
        for c in self.vertices:
            m[idx[c]][idx[c]] = Fraction(self.weights[c])
        for a, b in self.edges:
            m[idx[a]][idx[b]] += 1
            m[idx[b]][idx[a]] += 1
        return m


def dual_graph(tree: BlowupTree, level: int) -> DualGraph:
    if not 1 <= level <= tree.height:
        raise LogmodelError(f"level {level} out of range")
    vertices = tree.comps_alive(level)
    weights = {c: tree.components[c].c_at(level) for c in vertices}
    edges = []
    for pid in tree.corners_alive(level):
        p = tree.points[pid]
        edges.append(tuple(sorted((p.frame_x_comp, p.frame_y_comp))))
    g = DualGraph(level, vertices, weights, sorted(edges))
    if len(g.edges) != len(vertices) - 1:
        raise LogmodelError("divisor dual graph is not a tree")
    if not is_negative_definite(g.intersection_matrix()):
        raise LogmodelError(f"intersection matrix at level {level} is not negative definite")
    return g


def is_negative_definite(matrix) -> bool:
    """Exact LDL test: all pivots of the symmetric matrix are negative."""
    n = len(matrix)
    m = [[Fraction(v) for v in row] for row in matrix]
    for k in range(n):
        pivot = m[k][k]
        if pivot >= 0:
            return False
        for i in range(k + 1, n):
            if m[i][k] == 0:
                continue
            f = m[i][k] / pivot
            for jx in range(k, n):
                m[i][jx] -= f * m[k][jx]
    return True


def dual_graph_dot(graph: DualGraph, dic_flags=frozenset()) -> str:
    lines = ["graph divisor {"]
    for c in graph.vertices:
        shape = "doublecircle" if c in dic_flags else "circle"
        lines.append(f'  "D{c}" [label="D{c} (c={graph.weights[c]})", shape={shape}];')
    for a, b in graph.edges:
        lines.append(f'  "D{a}" -- "D{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Helpers.


def _canon_coord(coord):
    if coord == INF:
        return INF
    if isinstance(coord, GRat):
        return coord
    return GRat.of(coord)


def _corner_on(new_comp, coord, center: Point, other_comp):
    on = [(new_comp, coord)]
    if other_comp is not None:
        on.append((other_comp, center.coord_on(other_comp)))
    return tuple(on)


def _recentre(p: Poly2) -> Poly2:
    """Drop nothing; translated equations are already centred at the new base."""
    return p


def _normalize_eq(p: Poly2) -> Poly2:
    if p.is_zero:
        return p
    lead_key = min(p.terms, key=lambda k: (k[0] + k[1], k[1], k[0]))
    return p.scale(p.terms[lead_key].inverse())
