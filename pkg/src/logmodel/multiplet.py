"""Dicritical structures, configurations of separatrices and duplets."""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import INF, ORIGIN_PID, Branch, BlowupTree, coord_key, desingularize
from .errors import InvalidCenter, LogmodelError
from .exactalg import GRat, Poly2
from .report import ValidationReport


@dataclass
class Duplet:
    """Blow-up tree with dicritical flags and the separatrix partition.

    ``dic`` holds the flagged component ids; separatrix dic/iso tags are
    derived from the final landing components and validated against any
    declared tags.
    """

    tree: BlowupTree
    dic: frozenset
    declared_sep: dict = field(default_factory=dict)
    allow_radial: bool = False

    # -- basic structure -----------------------------------------------------
    @property
    def height(self) -> int:
        return self.tree.height

    def ndic_comps(self, level=None):
        level = self.height if level is None else level
        return [c for c in self.tree.comps_alive(level) if c not in self.dic]

    def dic_comps(self, level=None):
        level = self.height if level is None else level
        return [c for c in self.tree.comps_alive(level) if c in self.dic]

    def landing_comp(self, label: str) -> int:
        step = self.tree.branch_step(label, self.height)
        p = self.tree.points[step.pid]
        if p.frame_y_comp is None:
            raise LogmodelError(f"branch {label} is not resolved onto the divisor")
        return p.frame_y_comp

    def sep_flag(self, label: str) -> str:
        return "dic" if self.landing_comp(label) in self.dic else "iso"

    def sep_labels(self, flag=None):
        labels = sorted(self.tree.branches)
        if flag is None:
            return labels
        return [l for l in labels if self.sep_flag(l) == flag]

    def valence(self, cid: int, level=None) -> int:
        level = self.height if level is None else level
        count = 0
        for pid in self.tree.corners_alive(level):
            p = self.tree.points[pid]
            if cid in (p.frame_x_comp, p.frame_y_comp):
                count += 1
        return count

    def ndic_connected_components(self, level=None):
        """Connected components of the invariant part, as sorted id lists."""
        level = self.height if level is None else level
        comps = set(self.ndic_comps(level))
        parent = {c: c for c in comps}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for pid in self.tree.corners_alive(level):
            p = self.tree.points[pid]
            a, b = p.frame_x_comp, p.frame_y_comp
            if a in comps and b in comps:
                parent[find(a)] = find(b)
        groups = {}
        for c in comps:
            groups.setdefault(find(c), []).append(c)
        return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])

    def attachments(self, cid: int):
        """Separatrices whose final base lies on the component, with points."""
        out = []
        for lbl in sorted(self.tree.branches):
            step = self.tree.branch_step(lbl, self.height)
            p = self.tree.points[step.pid]
            if p.frame_y_comp == cid or p.frame_x_comp == cid:
                out.append((lbl, step.pid))
        return out

    def support_singular_points(self, level=None):
        """Points of supp_level with at least two local support branches."""
        level = self.height if level is None else level
        ndic = set(self.ndic_comps(level))
        counts = {}

        def bump(pid, item):
            counts.setdefault(pid, []).append(item)

        for pid in self.tree.corners_alive(level):
            p = self.tree.points[pid]
            if p.frame_x_comp in ndic:
                bump(pid, ("D", p.frame_x_comp))
            if p.frame_y_comp in ndic:
                bump(pid, ("D", p.frame_y_comp))
        for lbl in self.tree.branches:
            step = self.tree.branch_step(lbl, level)
            pid = step.pid
            p = self.tree.points[pid]
            if pid == ORIGIN_PID:
                bump(pid, ("S", lbl))
                continue
            if not p.alive_at(level):
                continue
            bump(pid, ("S", lbl))
            if p.frame_y_comp in ndic:
                bump(pid, ("D", p.frame_y_comp))
            if p.frame_x_comp in ndic:
                bump(pid, ("D", p.frame_x_comp))
        return {
            pid: sorted(set(items))
            for pid, items in counts.items()
            if len(set(items)) >= 2
        }

    def is_symmetric(self) -> bool:
        """Conjugation-closed branches and real blow-up centers."""
        labels = self.tree.branches
        for lbl, b in labels.items():
            if b.conj_label is None:
                if not b.equation.is_real():
                    return False
            else:
                mate = labels.get(b.conj_label)
                if mate is None or mate.equation != b.equation.conjugate():
                    return False
        return all(self.tree.points[pid].is_real() for pid in self.tree.centers)

    def conjugate_branch(self, label: str) -> str:
        b = self.tree.branches[label]
        return label if b.conj_label is None else b.conj_label


# ---------------------------------------------------------------------------
# Structure axioms.


def validate_structure(duplet: Duplet) -> ValidationReport:
    rep = ValidationReport()
    tree = duplet.tree
    unknown = [c for c in duplet.dic if c not in tree.components]
    rep.add("D.1", not unknown, f"unknown dicritical components {unknown}" if unknown else "flags partition each level")
    rep.add("D.2", True, "flags propagate along strict transforms by construction")
    bad = []
    for pid in tree.corners_alive(tree.height):
        p = tree.points[pid]
        if p.frame_x_comp in duplet.dic and p.frame_y_comp in duplet.dic:
            bad.append((p.frame_x_comp, p.frame_y_comp))
    rep.add(
        "D.3",
        not bad,
        "; ".join(f"D{a} meets D{b}" for a, b in sorted(bad)) if bad else "no two final dicritical components intersect",
        level=tree.height,
    )
    return rep


def _kappa_needed_points(duplet: Duplet):
    """Centers demanded by the infinitesimal class of the dicritical part."""
    tree = duplet.tree
    needed = set()
    for cid in duplet.dic:
        pid = tree.components[cid].creator_pid
        while True:
            needed.add(pid)
            p = tree.points[pid]
            if pid == ORIGIN_PID:
                break
            host = p.frame_y_comp if p.frame_y_comp is not None else p.frame_x_comp
            pid = tree.components[host].creator_pid
    return needed


def validate_configuration(duplet: Duplet) -> ValidationReport:
    rep = ValidationReport()
    tree = duplet.tree
    n = tree.height

    rep.add(
        "S.1/resolution",
        tree.is_resolved,
        "strict transforms are smooth, disjoint and transversal at trace points"
        if tree.is_resolved
        else f"unresolved points remain: {tree.unsettled_points()}",
        level=n,
    )

    if duplet.declared_sep:
        bad = [
            lbl
            for lbl in sorted(duplet.declared_sep)
            if duplet.declared_sep[lbl] != duplet.sep_flag(lbl)
        ]
        rep.add(
            "S.1/partition",
            not bad,
            "; ".join(f"{l}: declared {duplet.declared_sep[l]}, derived {duplet.sep_flag(l)}" for l in bad)
            if bad
            else "declared dic/iso tags match the landing components",
        )

    iso = set(duplet.sep_labels("iso"))
    radial = n >= 1 and not iso and set(duplet.dic_comps()) == set(tree.comps_alive(n))
    if radial and not duplet.allow_radial:
        rep.add(
            "S.2",
            False,
            "radial case (no isolated separatrices) is not accepted as a top-level input",
            level=n,
        )
    else:
        missing = []
        for group in duplet.ndic_connected_components():
            has = any(
                duplet.sep_flag(lbl) == "iso"
                and duplet.landing_comp(lbl) in group
                for lbl in tree.branches
            )
            if not has:
                missing.append(group)
        rep.add(
            "S.2",
            not missing,
            "; ".join(f"component {g} lacks an isolated separatrix" for g in missing)
            if missing
            else "every invariant connected component receives an isolated separatrix",
            level=n,
        )

    bad3 = []
    for cid in duplet.dic_comps():
        val = duplet.valence(cid)
        dic_seps = [
            lbl
            for lbl, pid in duplet.attachments(cid)
            if duplet.sep_flag(lbl) == "dic" and duplet.landing_comp(lbl) == cid
        ]
        if val == 1 and not dic_seps:
            bad3.append(f"D{cid} has valence 1 and no dicritical separatrix")
        if val == 0 and len(dic_seps) < 2:
            bad3.append(f"D{cid} has valence 0 and fewer than two dicritical separatrices")
    rep.add("S.3", not bad3, "; ".join(bad3), level=n)

    # minimality surrogate: every center is justified by curve resolution,
    # by the dicritical class, or by separation of dicritical components.
    kappa = _kappa_needed_points(duplet)
    replay = BlowupTree(list(tree.branches.values()))
    unjustified = []
    note = ""
    curve_pending = True
    for j, center in enumerate(tree.centers, start=1):
        desc = _center_descriptor(tree, center)
        pending = replay.unsettled_points()
        pending_desc = {_center_descriptor(replay, pid) for pid in pending}
        p = tree.points[center]
        corner_dic = (
            p.is_corner
            and p.frame_x_comp in duplet.dic
            and p.frame_y_comp in duplet.dic
        )
        if desc in pending_desc:
            if not curve_pending:
                note = f"curve-resolution blow-up at level {j} after class blow-ups began"
        elif center in kappa or corner_dic:
            curve_pending = False
        else:
            unjustified.append(f"sigma_{j} at {desc}")
        local = replay.find_point(*desc) if desc != ("origin", None) else ORIGIN_PID
        if local is None:
            local = replay.ensure_point(*desc)
        replay = replay.blow_up(local)
    rep.add(
        "S.4",
        not unjustified,
        "; ".join(unjustified) if unjustified else (note or "all centers justified by resolution or the dicritical class"),
    )
    return rep


def _center_descriptor(tree: BlowupTree, pid: int):
    if pid == ORIGIN_PID:
        return ("origin", None)
    p = tree.points[pid]
    comp = min(c for c, _ in p.on)
    return (comp, p.coord_on(comp))


def validate_duplet(duplet: Duplet) -> ValidationReport:
    rep = validate_structure(duplet)
    rep.merge(validate_configuration(duplet))
    return rep


# ---------------------------------------------------------------------------
# Localization.


def _points_over(tree: BlowupTree, pid: int):
    """Centers lying in the fiber over a point (the point itself included)."""
    over = {pid}
    changed = True
    while changed:
        changed = False
        for q in tree.points.values():
            if q.pid in over:
                continue
            host = q.frame_y_comp if q.frame_y_comp is not None else q.frame_x_comp
            if host is None:
                continue
            creator = tree.components[host].creator_pid
            if creator in over:
                over.add(q.pid)
                changed = True
    return over


def localize(duplet: Duplet, pid: int) -> Duplet:
    """Duplet induced on the tower of blow-ups above one point."""
    tree = duplet.tree
    if pid not in tree.points:
        raise InvalidCenter(f"unknown point {pid}")
    point = tree.points[pid]
    if pid != ORIGIN_PID and point.frame_y_comp is None:
        raise InvalidCenter("localization requires a divisor point or the origin")
    level = point.birth
    over = _points_over(tree, pid)
    sub_centers = [c for c in tree.centers if c in over]

    local_labels = [
        lbl for lbl in sorted(tree.branches) if tree.branch_step(lbl, level).pid == pid
    ]
    local_branches = []
    for lbl in local_labels:
        step = tree.branch_step(lbl, level)
        eq = Poly2(dict(step.local_eq.terms), vars=("x", "y"))
        conj = tree.branches[lbl].conj_label
        if conj not in local_labels:
            conj = None
        local_branches.append(Branch(lbl, eq, conj))

    # local branches of invariant global components through the point
    comp_branch_flags = {}
    if pid != ORIGIN_PID:
        for slot, cid in (("y", point.frame_y_comp), ("x", point.frame_x_comp)):
            if cid is None or cid in duplet.dic:
                continue
            eq = Poly2.var_y() if slot == "y" else Poly2.var_x()
            lbl = f"D{cid}"
            flag = "iso"
            for q in tree.points.values():
                if not q.is_corner or not q.alive_at(tree.height):
                    continue
                if cid not in (q.frame_x_comp, q.frame_y_comp):
                    continue
                other = q.frame_x_comp if q.frame_y_comp == cid else q.frame_y_comp
                if other in duplet.dic and q.pid in over:
                    flag = "dic"
            local_branches.append(Branch(lbl, eq, None))
            comp_branch_flags[lbl] = flag

    sub = BlowupTree(local_branches)
    comp_map = {}
    for k, center in enumerate(sub_centers, start=1):
        gp = tree.points[center]
        if center == pid:
            local_pid = ORIGIN_PID
        else:
            gcomp = gp.frame_y_comp
            coord = gp.coord_on(gcomp)
            local_pid = sub.ensure_point(comp_map[gcomp], coord)
        global_comp = None
        for cid, comp in tree.components.items():
            if comp.creator_pid == center:
                global_comp = cid
                break
        sub = sub.blow_up(local_pid)
        comp_map[global_comp] = k

    local_dic = frozenset(comp_map[c] for c in comp_map if c in duplet.dic)
    declared = {}
    for b in local_branches:
        if b.label in comp_branch_flags:
            declared[b.label] = comp_branch_flags[b.label]
    return Duplet(sub, local_dic, declared_sep=declared, allow_radial=True)


# ---------------------------------------------------------------------------
# Dominance.


def dominates(bigger: Duplet, smaller: Duplet):
    """Check the dominance order; returns (bool, witnesses, reason)."""
    t2, t1 = bigger.tree, smaller.tree
    n1, n2 = t1.height, t2.height
    if n2 < n1:
        return False, [], "height decreases"
    for j in range(n1):
        d1 = _center_descriptor(t1, t1.centers[j])
        d2 = _center_descriptor(t2, t2.centers[j])
        if d1 != d2:
            return False, [], f"centers differ at level {j + 1}: {d1} vs {d2}"
    for cid in t1.comps_alive(n1):
        if (cid in smaller.dic) != (cid in bigger.dic):
            return False, [], f"flag of D{cid} differs"
    # separatrix sets
    eq1 = {str(b.equation): lbl for lbl, b in t1.branches.items()}
    eq2 = {str(b.equation): lbl for lbl, b in t2.branches.items()}
    missing = [lbl for k, lbl in eq1.items() if k not in eq2]
    if missing:
        return False, [], f"separatrices lost: {missing}"
    for k, lbl1 in eq1.items():
        if smaller.sep_flag(lbl1) != bigger.sep_flag(eq2[k]):
            return False, [], f"classification of {lbl1} changed"
    witnesses = []
    dic_n = set(smaller.dic_comps())
    supp_pids = set(smaller.support_singular_points())
    for lbl in t1.branches:
        supp_pids.add(t1.branch_step(lbl, n1).pid)
    for k, lbl2 in sorted(eq2.items()):
        if k in eq1:
            continue
        if bigger.sep_flag(lbl2) != "iso":
            return False, [], f"extra separatrix {lbl2} is not isolated"
        extended = t1.extend_with_branch(bigger.tree.branches[lbl2])
        step = extended.branch_step(lbl2, n1)
        p = extended.points[step.pid]
        host = p.frame_y_comp
        if host not in dic_n:
            return False, [], f"extra separatrix {lbl2} lands on a non-dicritical component"
        if p.is_corner or step.pid in supp_pids or extended.branches_at(step.pid, n1) != [lbl2]:
            return False, [], f"extra separatrix {lbl2} lands on the support"
        witnesses.append((lbl2, f"D{host} @ {_coord_str(p.coord_on(host))}"))
    # extra blow-ups must sit over dicritical trace points, non-dicritically
    for j in range(n1, n2):
        cid = j + 1
        if cid in bigger.dic:
            return False, [], f"extra blow-up sigma_{j + 1} is dicritical"
        center = t2.points[t2.centers[j]]
        if center.birth <= n1:
            host = center.frame_y_comp
            if host not in dic_n or center.is_corner:
                return False, [], (
                    f"extra blow-up sigma_{j + 1} is not over a dicritical trace point"
                )
    return True, witnesses, ""


def _coord_str(coord):
    return "inf" if coord == INF else str(coord)


# ---------------------------------------------------------------------------
# Builders.


def duplet_from_branches(branches, dic_centers=(), centers=None, declared_sep=None):
    """Duplet from branch list: canonical resolution or explicit centers.

    ``dic_centers`` lists the centers (as descriptors) whose blow-ups are
    dicritical; ``centers`` optionally fixes the full blow-up sequence.
    """
    if centers is None:
        tree = desingularize(list(branches))
    else:
        tree = BlowupTree(list(branches))
        for desc in centers:
            tree = tree.blow_up(_resolve_descriptor(tree, desc))
    dic = set()
    for desc in dic_centers:
        want = ("origin", None) if desc == "origin" else (desc[0], desc[1])
        for j, center in enumerate(tree.centers, start=1):
            if _center_descriptor(tree, center) == want:
                dic.add(j)
                break
        else:
            raise InvalidCenter(f"no blow-up centred at {desc}")
    return Duplet(tree, frozenset(dic), declared_sep=dict(declared_sep or {}))


def _resolve_descriptor(tree: BlowupTree, desc, create=True):
    if desc == ("origin", None) or desc == "origin":
        return ORIGIN_PID
    comp, coord = desc
    if create:
        return tree.ensure_point(comp, coord)
    pid = tree.find_point(comp, coord)
    if pid is None:
        raise InvalidCenter(f"no point at D{comp} @ {_coord_str(coord)}")
    return pid
