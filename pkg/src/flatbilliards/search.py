"""Bounded search for branched covers over a base polygon.

The search grows tilings copy by copy: every move reflects an existing
copy across one of its free sides.  Positions are tracked in floating
point (the polygons involved keep features far above the rounding
scale); all group combinatorics, angles, and vertex classes stay exact,
and any surviving candidate is re-verified with exact arithmetic
before it is reported.

Pruning rules are tagged and counted:

- pre-checks that need no enumeration (square-tiled base, all vertex
  points periodic, no odd reflection subgroup admitting every angle);
- sound subtree prunes (a corner angle that can no longer be completed,
  a geometrically locked even angle or locked branching over a
  periodic point, two locked branch points, a pinched gap);
- the infinite-forcing heuristic: from a node whose completion is
  forced, replay the forced moves and prune when the configuration
  starts repeating itself under a translation;
- per-node rejections of completed tilings (even angle, unbranched,
  two branch points, periodic or unknown branch point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .catalog import CatalogEntry
from .covers import analyze_cover, appropriate_verdict, tile_by_words
from .periodicity import classify_point
from .polygons import LinearMap, group_of
from .unfolding import unfold

F = Fraction

_EPS = 1e-7
_ROUND = 10 ** 6


@dataclass
class SearchReport:
    family: str
    n: int | None
    cls: int
    max_copies: int
    outcome: str  # 'none_found' | 'candidate' | 'inconclusive'
    candidates: list = dc_field(default_factory=list)
    statistics: dict = dc_field(default_factory=dict)
    rejected: dict = dc_field(default_factory=dict)
    prechecks: list = dc_field(default_factory=list)


# ---------------------------------------------------------------------------
# float geometry helpers


def _mat(g: LinearMap):
    if g.kind == "rot":
        th = math.pi * float(g.param)
        c, s = math.cos(th), math.sin(th)
        return (c, -s, s, c)
    th = 2 * math.pi * float(g.param)
    c, s = math.cos(th), math.sin(th)
    return (c, s, s, -c)


def _apply(mat, p):
    return (mat[0] * p[0] + mat[1] * p[1], mat[2] * p[0] + mat[3] * p[1])


def _pkey(p):
    return (round(p[0] * _ROUND) + 0, round(p[1] * _ROUND) + 0)


def _reflect_point(a, u, p):
    wx, wy = p[0] - a[0], p[1] - a[1]
    t = wx * u[0] + wy * u[1]
    return (a[0] + 2 * t * u[0] - wx, a[1] + 2 * t * u[1] - wy)


def _sat_disjoint(A, B):
    """Do two convex polygons have disjoint interiors (touching allowed)?"""
    for poly1, poly2 in ((A, B), (B, A)):
        m = len(poly1)
        for i in range(m):
            x1, y1 = poly1[i]
            x2, y2 = poly1[(i + 1) % m]
            nx, ny = y1 - y2, x2 - x1
            lo1 = hi1 = poly1[0][0] * nx + poly1[0][1] * ny
            for p in poly1:
                v = p[0] * nx + p[1] * ny
                if v < lo1:
                    lo1 = v
                elif v > hi1:
                    hi1 = v
            lo2 = hi2 = poly2[0][0] * nx + poly2[0][1] * ny
            for p in poly2:
                v = p[0] * nx + p[1] * ny
                if v < lo2:
                    lo2 = v
                elif v > hi2:
                    hi2 = v
            scale = max(abs(lo1), abs(hi1), abs(lo2), abs(hi2), 1.0)
            if hi1 <= lo2 + _EPS * scale or hi2 <= lo1 + _EPS * scale:
                return True
    return False


# ---------------------------------------------------------------------------
# node model


class _Copy:
    __slots__ = ("lin", "verts", "word", "vset")

    def __init__(self, lin, verts, word):
        self.lin = lin
        self.verts = verts
        self.word = word
        self.vset = frozenset(_pkey(v) for v in verts)


class _Node:
    __slots__ = ("copies", "key", "legal")

    def __init__(self, copies):
        self.copies = copies
        self.key = None
        self.legal = {}


class _Analysis:
    __slots__ = ("external", "points", "boundary", "complete")


class _StatusOracle(dict):
    """Lazy periodicity status per base cone class.

    Classes named in the catalog facts are certified with the recorded
    direction; anything else falls back to the default direction list.
    Results are memoized so each class is classified at most once.
    """

    def __init__(self, M, facts):
        super().__init__()
        self.M = M
        self.facts = facts
        self.cps = {cp.class_id: cp for cp in M.cone_points()}
        if facts.get("all_vertex_points_periodic"):
            for cid in self.cps:
                self[cid] = "periodic"

    def __contains__(self, cid):
        return cid in self.cps

    def __missing__(self, cid):
        cp = self.cps[cid]
        known = set(self.facts.get("non_periodic_vertex_angles", ()))
        split = self.facts.get("split_direction")
        dirs = None
        if split is not None and cp.angle.multiple in known:
            dirs = [split]
        v = classify_point(self.M, cp, directions=dirs)
        if v.status == "unknown" and dirs is not None:
            v = classify_point(self.M, cp)
        self[cid] = v.status
        return v.status


class _Search:
    def __init__(self, base_polygon, statuses, max_copies,
                 max_nodes=200000):
        self.P = base_polygon
        self.max_copies = max_copies
        self.max_nodes = max_nodes
        self.statuses = statuses
        self.G = group_of(base_polygon)
        self.N = self.G.N
        self.elements = self.G.elements()
        self.mats = [_mat(g) for g in self.elements]
        verts = base_polygon.vertices()
        self.k = len(verts)
        self.base_verts = tuple(
            (float(v[0]), float(v[1])) for v in verts
        )
        self.angles = [a.multiple for a in base_polygon.angles()]
        self.M = unfold(base_polygon)
        # class of the corner at base vertex v inside the copy whose
        # orthogonal part is group element gi (face order matches the
        # group-element order)
        self.cls_of = []
        for gi in range(2 * self.N):
            face = self.M.faces[gi]
            row = []
            for v in range(self.k):
                pos = next(
                    q for q in range(self.k) if face.source_vertex[q] == v
                )
                row.append(self.M.class_of_corner((gi, pos)).class_id)
            self.cls_of.append(row)
        # reflecting a copy with linear part gi across its side s
        self.refl_lin = []
        for gi, g in enumerate(self.elements):
            row = []
            for s in range(self.k):
                d = g.apply_angle(base_polygon.edges[s].direction.multiple)
                r = LinearMap.reflection(d % 1)
                row.append(self.G.index_of(r.compose(g)))
            self.refl_lin.append(row)
        self.mult = [
            [
                self.G.index_of(self.elements[a].compose(self.elements[b]))
                for b in range(2 * self.N)
            ]
            for a in range(2 * self.N)
        ]
        self._admissible_q()
        self.convex_base = all(a < 1 for a in self.angles)

    # -- admissible reflection subgroups ----------------------------------

    def _counts_for_q(self, t, q):
        """Corner counts at a vertex of type t realizable when the
        final outline's reflection group is D_q."""
        out = []
        kk = 1
        while kk * self.angles[t] <= 2:
            sigma = kk * self.angles[t]
            if sigma in (1, 2) or q % sigma.denominator == 0:
                out.append(kk)
            kk += 1
        return out

    def _admissible_q(self):
        """Odd N_Q values compatible with every base angle, plus the
        union of corner-count budgets they allow per vertex type."""
        qs = []
        for q in range(3, self.N + 1, 2):
            if self.N % q:
                continue
            if not all(self._counts_for_q(t, q) for t in range(self.k)):
                continue
            # a simple polygon needs at least one convex vertex
            convex_possible = any(
                0 < kk * self.angles[t] < 1
                for t in range(self.k)
                for kk in self._counts_for_q(t, q)
            )
            if convex_possible:
                qs.append(q)
        self.qs = qs
        self.ok_counts = []
        self.max_count = []
        for t in range(self.k):
            allowed = set()
            for q in self.qs:
                allowed.update(self._counts_for_q(t, q))
            kk = 1
            while kk * self.angles[t] <= 2:
                if kk * self.angles[t] in (1, 2):
                    allowed.add(kk)
                kk += 1
            self.ok_counts.append(allowed)
            self.max_count.append(max(allowed) if allowed else 0)

    # -- node bookkeeping --------------------------------------------------

    def canonical_key(self, copies):
        best = None
        for gi in range(2 * self.N):
            mat = self.mats[gi]
            moved = [
                (self.mult[gi][c.lin], [_apply(mat, v) for v in c.verts])
                for c in copies
            ]
            mn = min(_pkey(v) for _, vs in moved for v in vs)
            ox, oy = mn[0] / _ROUND, mn[1] / _ROUND
            key = tuple(
                sorted(
                    (lin, tuple(_pkey((v[0] - ox, v[1] - oy)) for v in vs))
                    for lin, vs in moved
                )
            )
            if best is None or key < best:
                best = key
        return best

    def analyze_node(self, node):
        an = _Analysis()
        sides = {}
        for ci, c in enumerate(node.copies):
            for s in range(self.k):
                a = _pkey(c.verts[s])
                b = _pkey(c.verts[(s + 1) % self.k])
                sides.setdefault(frozenset((a, b)), []).append((ci, s))
        an.external = [own[0] for own in sides.values() if len(own) == 1]
        points = {}
        for ci, c in enumerate(node.copies):
            for v in range(self.k):
                rec = points.setdefault(
                    _pkey(c.verts[v]), {"corners": [], "ext": []}
                )
                rec["corners"].append((ci, v))
        for ci, s in an.external:
            c = node.copies[ci]
            points[_pkey(c.verts[s])]["ext"].append((ci, s))
            points[_pkey(c.verts[(s + 1) % self.k])]["ext"].append((ci, s))
        for rec in points.values():
            labels = {v for _, v in rec["corners"]}
            rec["label"] = labels.pop() if len(labels) == 1 else None
            if rec["label"] is not None:
                rec["sigma"] = len(rec["corners"]) * self.angles[rec["label"]]
            else:
                rec["sigma"] = None
        an.points = points
        an.boundary = {k: r for k, r in points.items() if r["ext"]}
        an.complete = all(
            len(rec["ext"]) == 2 for rec in an.boundary.values()
        ) and all(rec["sigma"] is not None for rec in points.values())
        return an

    def branch_class(self, node, rec):
        ci, v = rec["corners"][0]
        return self.cls_of[node.copies[ci].lin][v]

    def is_branching(self, rec):
        if rec["sigma"] is None or rec["sigma"] in (1, 2):
            return False
        kk = len(rec["corners"])
        n0 = self.angles[rec["label"]].denominator
        return kk // math.gcd(kk, n0) > 1

    # -- moves ---------------------------------------------------------------

    def reflect_copy(self, node, ci, s):
        c = node.copies[ci]
        a = c.verts[s]
        b = c.verts[(s + 1) % self.k]
        ux, uy = b[0] - a[0], b[1] - a[1]
        norm = math.hypot(ux, uy)
        u = (ux / norm, uy / norm)
        verts = tuple(_reflect_point(a, u, v) for v in c.verts)
        return _Copy(self.refl_lin[c.lin][s], verts, c.word + (s,))

    def legal_child(self, node, ci, s):
        """The reflected copy if placing it keeps interiors disjoint
        and creates no duplicate, else None.  Memoized per node."""
        if (ci, s) in node.legal:
            return node.legal[(ci, s)]
        new = self.reflect_copy(node, ci, s)
        result = new
        for cj, c in enumerate(node.copies):
            if c.vset == new.vset:
                result = None
                break
            if cj != ci and not _sat_disjoint(new.verts, c.verts):
                result = None
                break
        node.legal[(ci, s)] = result
        return result

    # -- subtree rules -------------------------------------------------------

    def subtree_prune(self, node, an):
        """A tag if no valid completed descendant can be appropriate,
        else None."""
        locked_branches = set()
        for key, rec in an.points.items():
            if rec["label"] is None:
                continue
            t = rec["label"]
            kk = len(rec["corners"])
            if kk > self.max_count[t]:
                return "angle overflow"
            if not rec["ext"]:
                # fully surrounded: a remaining gap could never be filled
                if rec["sigma"] != 2:
                    return "pinched"
                continue
            if kk in self.ok_counts[t] and not self.is_branching(rec):
                continue
            locked = all(
                self.legal_child(node, ci, s) is None
                for ci, s in rec["ext"]
            )
            if not locked:
                continue
            sigma = rec["sigma"]
            if sigma in (1, 2):
                continue
            if kk not in self.ok_counts[t]:
                if sigma.denominator % 2 == 0:
                    return "locked even angle"
                return "angle overflow"
            if self.is_branching(rec):
                cls = self.branch_class(node, rec)
                if self.statuses[cls] == "periodic":
                    return "locked periodic branch"
                locked_branches.add(cls)
        if len(locked_branches) >= 2:
            return "locked two branch points"
        return None

    # -- forced-completion simulation (infinite-forcing heuristic) -----------

    def worth_simulating(self, an):
        """Run the forced simulation only from nodes with a reflex
        outline vertex plus at least one corner that must still grow."""
        reflex = any(
            rec["sigma"] is not None
            and rec["sigma"] > 1
            and rec["sigma"] != 2
            for rec in an.boundary.values()
        )
        if not reflex:
            return False
        return any(
            rec["label"] is not None
            and len(rec["corners"]) not in self.ok_counts[rec["label"]]
            for rec in an.boundary.values()
        )

    def forced_sim(self, node, horizon=24):
        """Replay forced moves; True when the configuration repeats
        itself under a translation (an infinite forced strip)."""
        copies = list(node.copies)
        grown = 0
        while grown < horizon:
            sim = _Node(tuple(copies))
            an = self.analyze_node(sim)
            move = None
            for key in sorted(an.boundary):
                rec = an.boundary[key]
                if rec["label"] is None:
                    continue
                kk = len(rec["corners"])
                t = rec["label"]
                if kk > self.max_count[t]:
                    return False
                if kk in self.ok_counts[t]:
                    continue
                legal = sorted(
                    (ci, s)
                    for ci, s in rec["ext"]
                    if self.legal_child(sim, ci, s) is not None
                )
                if not legal:
                    return False
                if len(legal) <= 2:
                    move = legal[0]
                    break
            if move is None:
                return False
            copies.append(self.legal_child(sim, *move))
            grown += 1
            if grown >= 4 and self._translation_recurrence(copies):
                return True
        return False

    def _translation_recurrence(self, copies):
        """Does some translation map at least four copies onto copies?"""
        table = {(c.lin, tuple(sorted(c.vset))) for c in copies}
        by_lin = {}
        for c in copies:
            by_lin.setdefault(c.lin, []).append(c)
        seen_deltas = set()
        for group in by_lin.values():
            for i in range(len(group)):
                for j in range(len(group)):
                    if i == j:
                        continue
                    dx = group[j].verts[0][0] - group[i].verts[0][0]
                    dy = group[j].verts[0][1] - group[i].verts[0][1]
                    dk = _pkey((dx, dy))
                    if dk == (0, 0) or dk in seen_deltas:
                        continue
                    seen_deltas.add(dk)
                    hits = 0
                    for c in copies:
                        moved = tuple(
                            sorted(
                                _pkey((v[0] + dx, v[1] + dy))
                                for v in c.verts
                            )
                        )
                        if (c.lin, moved) in table:
                            hits += 1
                            if hits >= 4:
                                return True
        return False

    # -- candidate evaluation -------------------------------------------------

    def evaluate(self, node, an):
        """Tag for the node viewed as a completed tiling."""
        if not an.complete:
            return "incomplete tiling"
        denoms = set()
        branch = set()
        for rec in an.boundary.values():
            sigma = rec["sigma"]
            if sigma == 1 or sigma == 2:
                continue
            denoms.add(sigma.denominator)
            if self.is_branching(rec):
                branch.add(self.branch_class(node, rec))
        n_q = 1
        for d in denoms:
            n_q = n_q * d // math.gcd(n_q, d)
        if n_q % 2 == 0:
            return "even angle"
        if not branch:
            return "unbranched (lattice)"
        if len(branch) >= 2:
            return "two branch points"
        status = self.statuses[branch.pop()]
        if status == "periodic":
            return "branch point periodic"
        if status != "non_periodic":
            return "unknown candidate"
        return "candidate"


_KEEP_TAGS = {
    "two branch points",
    "candidate",
    "unknown candidate",
    "locked two branch points",
    "locked periodic branch",
    "locked even angle",
}


def node_from_words(searcher: _Search, words) -> _Node:
    """Rebuild a node from stored reflection words (each word chains
    reflections starting at the base copy)."""
    copies = []
    base_lin = searcher.G.index_of(LinearMap.identity())
    for w in words:
        c = _Copy(base_lin, searcher.base_verts, ())
        for s in w:
            c = searcher.reflect_copy(_Node((c,)), 0, s)
        copies.append(c)
    return _Node(tuple(copies))


def _tag(report, tag, node=None):
    report.statistics[tag] = report.statistics.get(tag, 0) + 1
    if tag in _KEEP_TAGS and node is not None:
        bucket = report.rejected.setdefault(tag, [])
        if len(bucket) < 64:
            bucket.append([list(c.word) for c in node.copies])


def search_appropriate(
    entry: CatalogEntry,
    max_copies: int,
    cls: int = 1,
    max_nodes: int = 200000,
) -> SearchReport:
    """Enumerate tilings over the catalog entry with at most
    `max_copies` copies and report whether any yields a cover branched
    over a single non-periodic point fixed by all its symmetries."""
    report = SearchReport(
        family=entry.family,
        n=entry.n,
        cls=cls,
        max_copies=max_copies,
        outcome="none_found",
        statistics={"nodes": 0},
    )
    P = entry.polygon

    if entry.facts.get("square_tiled"):
        report.prechecks.append(
            "square-tiled base: every cover is square-tiled, hence lattice"
        )
        return report
    if entry.facts.get("all_vertex_points_periodic"):
        report.prechecks.append(
            "all vertex points periodic: no non-periodic branch point exists"
        )
        return report

    M = unfold(P)
    statuses = _StatusOracle(M, entry.facts)
    searcher = _Search(P, statuses, max_copies, max_nodes)
    if not searcher.qs:
        report.prechecks.append(
            "no admissible reflection group: no odd N_Q admits every "
            "corner angle of the base"
        )
        return report
    if not searcher.convex_base:
        report.outcome = "inconclusive"
        report.prechecks.append(
            "non-convex base outside the pre-checks: enumeration "
            "not attempted"
        )
        return report

    if cls == 2:
        return _second_class(entry, searcher, report, max_copies, max_nodes)

    unknown_seen = _run_enumeration(searcher, report, want="appropriate")
    if report.candidates:
        report.outcome = "candidate"
    elif unknown_seen or report.statistics.get("resource budget", 0):
        report.outcome = "inconclusive"
    return report


def _run_enumeration(searcher: _Search, report: SearchReport, want: str,
                     bases=None):
    """Breadth-first enumeration over canonical nodes.  `want` is
    'appropriate' (first-class candidates) or 'periodic-branched'
    (intermediate bases for the second class, collected in `bases`).
    Returns whether an unknown verdict was encountered."""
    root = _Node(
        (
            _Copy(
                searcher.G.index_of(LinearMap.identity()),
                searcher.base_verts,
                (),
            ),
        )
    )
    root.key = searcher.canonical_key(root.copies)
    seen = {root.key}
    frontier = [root]
    unknown_seen = False
    while frontier:
        frontier.sort(key=lambda nd: nd.key)
        next_frontier = []
        for node in frontier:
            report.statistics["nodes"] += 1
            if report.statistics["nodes"] > searcher.max_nodes:
                _tag(report, "resource budget")
                return unknown_seen
            an = searcher.analyze_node(node)
            if want == "appropriate":
                tag = searcher.evaluate(node, an)
                if tag == "candidate":
                    tag = _confirm_candidate(searcher, report, node)
                if tag == "unknown candidate":
                    unknown_seen = True
                _tag(report, tag, node)
            else:
                _collect_periodic_branched(searcher, report, node, an, bases)
            if len(node.copies) >= searcher.max_copies:
                continue
            for ci, s in sorted(an.external):
                new = searcher.legal_child(node, ci, s)
                if new is None:
                    continue
                child = _Node(node.copies + (new,))
                child.key = searcher.canonical_key(child.copies)
                if child.key in seen:
                    continue
                seen.add(child.key)
                child_an = searcher.analyze_node(child)
                prune = searcher.subtree_prune(child, child_an)
                if prune is not None:
                    _tag(report, prune, child)
                    continue
                if searcher.worth_simulating(child_an) and searcher.forced_sim(
                    child
                ):
                    _tag(report, "infinite forcing", child)
                    continue
                next_frontier.append(child)
        frontier = next_frontier
    return unknown_seen


def _confirm_candidate(searcher, report, node) -> str:
    """Exact re-verification of a float-level candidate."""
    words = [list(c.word) for c in node.copies]
    try:
        t = tile_by_words(searcher.P, words)
        a = analyze_cover(t)
        verdict = appropriate_verdict(a, searcher.statuses)
    except Exception:
        return "rejected by exact verdict"
    if verdict["appropriate"] is True:
        report.candidates.append(
            {"words": words, "reasons": verdict["reasons"]}
        )
        return "candidate"
    if verdict["appropriate"] == "unknown":
        return "unknown candidate"
    return "rejected by exact verdict"


def _collect_periodic_branched(searcher, report, node, an, bases):
    """Second-class stage 1: completed tilings branched only over
    periodic points become intermediate bases."""
    if not an.complete:
        return
    branch = set()
    for rec in an.boundary.values():
        if searcher.is_branching(rec):
            branch.add(searcher.branch_class(node, rec))
    if not branch:
        return
    if any(searcher.statuses[c] != "periodic" for c in branch):
        return
    if len(bases) >= 8:
        return
    words = [list(c.word) for c in node.copies]
    try:
        t = tile_by_words(searcher.P, words)
        analyze_cover(t)
    except Exception:
        return
    key = t.outline.canonical_key()
    if key in {k for k, _ in bases}:
        return
    bases.append((key, t))
    report.rejected.setdefault("intermediate base", []).append(words)


def _second_class(entry, searcher, report, max_copies, max_nodes):
    """Compose: find intermediate bases branched only over periodic
    points, then search each of them for a first-class cover."""
    bases = []
    _run_enumeration(searcher, report, want="periodic-branched", bases=bases)
    report.statistics["intermediate bases"] = len(bases)
    any_inconclusive = report.statistics.get("resource budget", 0) > 0
    for _, t in bases:
        sub_entry = CatalogEntry(
            family=f"{entry.family}+",
            n=entry.n,
            polygon=t.outline,
            facts={"lattice": True},
        )
        sub = search_appropriate(
            sub_entry, max_copies, cls=1, max_nodes=max_nodes
        )
        for tag, count in sub.statistics.items():
            key = f"stage2 {tag}"
            report.statistics[key] = report.statistics.get(key, 0) + count
        if sub.outcome == "candidate":
            report.candidates.extend(sub.candidates)
        elif sub.outcome == "inconclusive":
            any_inconclusive = True
    if report.candidates:
        report.outcome = "candidate"
    elif any_inconclusive:
        report.outcome = "inconclusive"
    return report
