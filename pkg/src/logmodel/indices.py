"""Systems of Camacho-Sad-style indices on a dicritical duplet.

Final-level assignment follows the perturbed-weight scheme: small negative
rational indices at all separatrix attachments except one designated orbit,
exact negative-definiteness of the perturbed intersection matrix, then a
rooted-tree recursion that solves corner indices by the self-intersection
formula and the reciprocal rule.  Conjugation orbits share one value so the
symmetric pipeline stays equivariant.
"""

from __future__ import annotations

from fractions import Fraction

from .blowup import ORIGIN_PID
from .errors import AxiomViolation, InconsistentIndices, PerturbationRetryExhausted
from .exactalg import (
    GRat,
    QuadExt,
    conj,
    is_negative_real,
    is_positive_rational,
    is_zero,
    reciprocal,
)
from .blowup import is_negative_definite
from .multiplet import Duplet
from .report import ValidationReport


class IndexSystem:
    """Index values per level: {(pid, item): value} with item ('S', label) or ('D', cid)."""

    def __init__(self, duplet: Duplet, levels):
        self.duplet = duplet
        self.levels = levels

    def value(self, level, pid, item):
        return self.levels.get(level, {}).get((pid, item), GRat(0))

    def final(self):
        return self.levels[self.duplet.height]

    def render(self) -> str:
        from .blowup import INF

        lines = []
        tree = self.duplet.tree
        for level in sorted(self.levels):
            for (pid, item), v in sorted(
                self.levels[level].items(), key=lambda kv: (kv[0][0], kv[0][1])
            ):
                p = tree.points[pid]
                if pid == ORIGIN_PID:
                    where = "origin"
                else:
                    comp = min(c for c, _ in p.on)
                    coord = p.coord_on(comp)
                    where = f"D{comp} @ {'inf' if coord == INF else coord}"
                name = item[1] if item[0] == "S" else f"D{item[1]}"
                lines.append(f"level {level}: I[{where}]({name}) = {v}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Conjugation orbits on final-level points.


def point_orbit(duplet: Duplet, pid: int):
    """Orbit of a point under conjugation; singleton when not symmetric."""
    if not duplet.is_symmetric():
        return (pid,)
    p = duplet.tree.points[pid]
    if p.is_real():
        return (pid,)
    comp = min(c for c, _ in p.on)
    coord = p.coord_on(comp)
    mate = duplet.tree.find_point(comp, coord.conjugate())
    if mate is None or mate == pid:
        return (pid,)
    return tuple(sorted((pid, mate)))


# ---------------------------------------------------------------------------
# Rooted-tree solver.


def solve_invariant_tree(weights, edges, root, root_orbit_size=1):
    """Solve corner indices on an invariant tree of components.

    ``weights``: cid -> perturbed self-intersection; ``edges``: iterable of
    (cid, cid) corners.  Returns (corner_values, attachment_value) where
    ``corner_values[(a, b)]`` is the index of component a at the corner with b
    and ``attachment_value`` solves the remaining point on the root (divided
    over the orbit size).
    """
    adj = {c: [] for c in weights}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    corner_values = {}

    def down(c, parent):
        total = weights[c]
        for nb in adj[c]:
            if nb == parent:
                continue
            child_val = down(nb, c)
            corner_values[(c, nb)] = reciprocal(child_val)
            total = total - corner_values[(c, nb)]
        if parent is None:
            return total
        corner_values[(c, parent)] = total
        if is_zero(total):
            raise InconsistentIndices(f"vanishing corner index on D{c}")
        return total

    remaining = down(root, None)
    attach = remaining / root_orbit_size if root_orbit_size != 1 else remaining
    return corner_values, attach


# ---------------------------------------------------------------------------
# Final-level assignment.


def assign_final_indices(duplet: Duplet, retries: int = 8):
    """Negative rational indices at every singular support point of level n."""
    tree = duplet.tree
    n = duplet.height
    sing = duplet.support_singular_points(n)
    out = {}
    for group in duplet.ndic_connected_components():
        comp_set = set(group)
        corners = []
        attachments = {}  # cid -> list of (pid, label)
        for pid, items in sing.items():
            dcomps = [c for kind, c in items if kind == "D" and c in comp_set]
            slabels = [l for kind, l in items if kind == "S"]
            if len(dcomps) == 2:
                corners.append((pid, dcomps[0], dcomps[1]))
            elif len(dcomps) == 1 and slabels:
                attachments.setdefault(dcomps[0], []).append((pid, slabels[0]))
        root = None
        for cid in group:
            if attachments.get(cid):
                root = cid
                break
        if root is None:
            raise AxiomViolation(
                f"invariant component {group} carries no separatrix (S.2 fails)"
            )
        root_label = min(lbl for _, lbl in attachments[root])
        root_pid = next(pid for pid, lbl in attachments[root] if lbl == root_label)
        root_orbit = point_orbit(duplet, root_pid)

        chosen_orbits = []
        seen = set(root_orbit)
        for cid in group:
            for pid, lbl in attachments.get(cid, []):
                if pid in seen:
                    continue
                orbit = point_orbit(duplet, pid)
                seen.update(orbit)
                chosen_orbits.append((cid, orbit))
        n_trace = sum(len(v) for v in attachments.values())
        base = Fraction(-1, 8 * max(len(group), 1) * max(n_trace, 1))
        edges = sorted({tuple(sorted((a, b))) for _, a, b in corners})

        for attempt in range(retries + 1):
            eps = base / (2**attempt)
            chosen = {}
            weights = {c: Fraction(tree.components[c].c_at(n)) for c in group}
            for cid, orbit in chosen_orbits:
                chosen[orbit] = GRat(eps)
                weights[cid] += -eps * len([p for p in orbit])
            matrix = _weighted_matrix(group, weights, edges)
            if not is_negative_definite(matrix):
                continue
            try:
                gw = {c: GRat(w) for c, w in weights.items()}
                corner_vals, attach = solve_invariant_tree(
                    gw, edges, root, len(root_orbit)
                )
            except InconsistentIndices:
                continue
            values = dict(corner_vals)
            if all(is_negative_real(v) for v in values.values()) and is_negative_real(
                attach
            ):
                break
        else:
            raise PerturbationRetryExhausted(
                f"no admissible perturbation for component {group}"
            )

        for (a, b), v in values.items():
            pid = _corner_pid(tree, a, b, n)
            out[(pid, ("D", a))] = v
        for cid, orbit in chosen_orbits:
            for pid in orbit:
                lbl = next(l for p, l in attachments[cid] if p == pid)
                out[(pid, ("D", cid))] = chosen[orbit]
                out[(pid, ("S", lbl))] = reciprocal(chosen[orbit])
        for pid in root_orbit:
            lbl = next(l for p, l in attachments[root] if p == pid)
            out[(pid, ("D", root))] = attach
            out[(pid, ("S", lbl))] = reciprocal(attach)
    return out


def _weighted_matrix(group, weights, edges):
    idx = {c: k for k, c in enumerate(group)}
    m = [[Fraction(0)] * len(group) for _ in group]
    for c in group:
        m[idx[c]][idx[c]] = Fraction(weights[c])
    for a, b in edges:
        m[idx[a]][idx[b]] += 1
        m[idx[b]][idx[a]] += 1
    return m


def _corner_pid(tree, a, b, level):
    for pid in tree.corners_alive(level):
        p = tree.points[pid]
        if {p.frame_x_comp, p.frame_y_comp} == {a, b}:
            return pid
    raise InconsistentIndices(f"no corner between D{a} and D{b}")


# ---------------------------------------------------------------------------
# Descent to the lower levels.


def descend_indices(duplet: Duplet, final) -> IndexSystem:
    """Unique extension of final-level data by the transformation law."""
    tree = duplet.tree
    n = duplet.height
    levels = {n: dict(final)}
    for j in range(n, 0, -1):
        center = tree.centers[j - 1]
        data = {}
        for (pid, item), v in levels[j].items():
            if tree.points[pid].birth < j:
                data[(pid, item)] = v
        # branches through the blow-up center
        for lbl in tree.branches:
            step_lo = tree.branch_step(lbl, j - 1)
            if step_lo.pid != center:
                continue
            step_hi = tree.branch_step(lbl, j)
            up = levels[j].get((step_hi.pid, ("S", lbl)), GRat(0))
            nu = step_lo.mult
            data[(center, ("S", lbl))] = up + GRat(nu * nu)
        # invariant components through the center
        for cid in tree.comps_through(center):
            if cid in duplet.dic:
                continue
            corner = _corner_pid(tree, cid, j, j)
            up = levels[j].get((corner, ("D", cid)), GRat(0))
            data[(center, ("D", cid))] = up + GRat(1)
        levels[j - 1] = data
    system = IndexSystem(duplet, levels)
    rep = validate_indices(duplet, system)
    if not rep.ok:
        raise AxiomViolation("; ".join(f.render() for f in rep.failures()))
    return system


# ---------------------------------------------------------------------------
# Validation.


def validate_indices(duplet: Duplet, system: IndexSystem) -> ValidationReport:
    rep = ValidationReport()
    tree = duplet.tree
    n = duplet.height

    # (I.1): recompute the descent from the final level and compare
    redo = IndexSystem(duplet, {n: dict(system.levels.get(n, {}))})
    recomputed = {n: dict(system.levels.get(n, {}))}
    try:
        for j in range(n, 0, -1):
            center = tree.centers[j - 1]
            data = {}
            for (pid, item), v in recomputed[j].items():
                if tree.points[pid].birth < j:
                    data[(pid, item)] = v
            for lbl in tree.branches:
                step_lo = tree.branch_step(lbl, j - 1)
                if step_lo.pid != center:
                    continue
                step_hi = tree.branch_step(lbl, j)
                up = recomputed[j].get((step_hi.pid, ("S", lbl)), GRat(0))
                data[(center, ("S", lbl))] = up + GRat(step_lo.mult**2)
            for cid in tree.comps_through(center):
                if cid in duplet.dic:
                    continue
                corner = _corner_pid(tree, cid, j, j)
                up = recomputed[j].get((corner, ("D", cid)), GRat(0))
                data[(center, ("D", cid))] = up + GRat(1)
            recomputed[j - 1] = data
        mismatch = []
        for j in recomputed:
            stored = {
                k: v for k, v in system.levels.get(j, {}).items() if not is_zero(v)
            }
            redone = {k: v for k, v in recomputed[j].items() if not is_zero(v)}
            if stored != redone:
                mismatch.append(j)
        rep.add(
            "I.1",
            not mismatch,
            f"transformation law fails at levels {mismatch}" if mismatch else "descent reproduces the stored system",
        )
    except InconsistentIndices as exc:
        rep.add("I.1", False, str(exc))

    # (I.2): nonzero values only at singular support points
    bad = []
    for j, data in system.levels.items():
        sing = set(duplet.support_singular_points(j))
        for (pid, item), v in data.items():
            if not is_zero(v) and pid not in sing:
                bad.append((j, pid, item))
    rep.add(
        "I.2",
        not bad,
        "; ".join(f"nonzero index at regular point {p} (level {j})" for j, p, _ in bad)
        if bad
        else "regular support points carry index zero",
    )

    # (I.3): self-intersection formula per invariant component per level
    bad3 = []
    for j in range(1, n + 1):
        data = system.levels.get(j, {})
        for cid in duplet.ndic_comps(j):
            total = GRat(0)
            for (pid, item), v in data.items():
                if item == ("D", cid) and tree.points[pid].alive_at(j):
                    total = total + v
            want = GRat(tree.components[cid].c_at(j))
            if total != want:
                bad3.append(f"D{cid} at level {j}: sum {total} != c = {want}")
    rep.add("I.3", not bad3, "; ".join(bad3) if bad3 else "Camacho-Sad sums match")

    # (I.4): simple singularity rule at the final level
    bad4 = []
    final = system.levels.get(n, {})
    for pid, items in duplet.support_singular_points(n).items():
        if len(items) != 2:
            bad4.append(f"point {pid} is not simple")
            continue
        v1 = final.get((pid, items[0]))
        v2 = final.get((pid, items[1]))
        if v1 is None or v2 is None:
            bad4.append(f"missing index at point {pid}")
            continue
        for v in (v1, v2):
            if is_zero(v) or is_positive_rational(v):
                bad4.append(f"index {v} at point {pid} lies in Q+ or vanishes")
        if not is_zero(v1) and reciprocal(v1) != v2:
            bad4.append(f"indices at point {pid} are not reciprocal: {v1}, {v2}")
    rep.add("I.4", not bad4, "; ".join(bad4) if bad4 else "simple singularity rule holds", level=n)
    return rep
