"""Ball-truncated cells, the a-function, gamma-constants and the asymptotic ring.

The left preorder is generated by single KL-generator multiplications:
z appears in b_s b_x exactly when z = sx (for sx > x) or mu(z, x) != 0 with
sz < z, and by positivity of all structure constants these generator steps
generate the same preorder as arbitrary left multiples.  Cells are the
strongly connected components of the resulting edge graphs, built from all
sources inside ball(L + margin) with margin defaulting to L (an edge chain
between ball(L) elements through a product b_u b_x with u, x in ball(L)
stays inside ball(2L) since h_{u,x,z} = 0 beyond length l(u) + l(x)).

Truncation is explicit: every class carries a completeness flag, set only
by a family dictionary certificate (type A: the two-sided class is anchored
by a parabolic longest element identifying its partition, and its left
classes are complete when they number n_lambda; universal: two two-sided
classes with left classes split by last letter; finite A: the whole group
is enumerated).  In-ball SCC classes always refine the true cells, so a
matching count certifies the restriction exactly.

For the extended affine family the computation runs on the rotation-free
part: left cells absorb rotations on the left (r^k w is left-equivalent to
w), right cells absorb them on the right (r^k w = (r^k w r^-k) r^k is
right-equivalent to the rotated window), and two-sided classes additionally
merge along diagram rotation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import coxeter, hecke, typea
from .coxeter import (
    AFFINE_A,
    EXT_AFFINE_A,
    FINITE_A,
    UNIVERSAL,
    Element,
    format_element,
)
from .errors import TruncationInsufficient
from .hecke import p_coeff, p_min_deg, p_to_laurent
from .laurent import LaurentPoly
from .report import Report


@dataclass(eq=False)
class CellClass:
    index: int
    kind: str                      # "left" | "right" | "two-sided"
    members: tuple                 # Elements in ball(L), sorted
    complete: bool = False
    partition: tuple | None = None # type A certificate, two-sided classes
    a_value: int | None = None
    a_exact: bool = False

    def __len__(self):
        return len(self.members)

    def label(self) -> str:
        tag = f"{self.kind}#{self.index}"
        if self.partition is not None:
            tag += "[" + ",".join(str(p) for p in self.partition) + "]"
        return tag


class GammaTable:
    """t_x t_y = sum_z gamma_{x,y,z} t_z over a diagonal H-cell, ball-restricted."""

    def __init__(self, elements, unit, a_value):
        self.elements = list(elements)
        self.unit = unit
        self.a_value = a_value
        self.rows: dict = {}       # (x, y) -> {z: gamma}
        self.complete: dict = {}   # (x, y) -> bool
        self.anomalies: list = []  # strings; nonempty signals a theory violation

    def entry(self, x, y):
        return self.rows.get((x, y))

    def to_json(self) -> dict:
        def key(e):
            return format_element(e)
        return {
            "a": self.a_value,
            "unit": key(self.unit) if self.unit is not None else None,
            "elements": [key(e) for e in self.elements],
            "rows": [
                {
                    "x": key(x),
                    "y": key(y),
                    "complete": self.complete[(x, y)],
                    "terms": {key(z): c for z, c in sorted(
                        row.items(), key=lambda t: (t[0].length, t[0].form))},
                }
                for (x, y), row in sorted(
                    self.rows.items(),
                    key=lambda t: (t[0][0].length, t[0][0].form,
                                   t[0][1].length, t[0][1].form))
            ],
            "anomalies": list(self.anomalies),
        }


class CellData:
    """Cell partition of a ball, with a-values, Duflo data and a product log."""

    def __init__(self, group, L: int, margin: int):
        self.group = group
        self.L = L
        self.margin = margin
        self.base = group if group.family != EXT_AFFINE_A else \
            coxeter.get_group(AFFINE_A, group.n)
        self.session = hecke.get_session(group)
        self.ball: list = []
        self.left: list = []
        self.right: list = []
        self.two_sided: list = []
        self._left_of: dict = {}       # base eid -> left class index
        self._right_of: dict = {}
        self._two_of: dict = {}
        self.product_log: dict = {}    # (Element, Element) -> {Element: LaurentPoly}
        self.duflo: dict = {}          # left class index -> Element | None

    # -- logged products -----------------------------------------------------

    def product(self, x: Element, y: Element) -> dict:
        key = (x, y)
        hit = self.product_log.get(key)
        if hit is None:
            raw = self.session.prod_ids(x.eid, y.eid)
            hit = {
                Element(self.group, z): p_to_laurent(p) for z, p in raw.items()
            }
            self.product_log[key] = hit
        return hit

    # -- class lookups ---------------------------------------------------------

    def _base_id(self, w: Element, side: str) -> int:
        if self.group.family != EXT_AFFINE_A:
            return w.eid
        g = self.group
        k, w0 = g.affine_part_id(w.eid)
        if side == "right":
            w0 = g.shift_id(w0, k)
        return self.base.intern(g.form_of(w0))

    def left_class_of(self, w: Element):
        idx = self._left_of.get(self._base_id(w, "left"))
        return self.left[idx] if idx is not None else None

    def right_class_of(self, w: Element):
        idx = self._right_of.get(self._base_id(w, "right"))
        return self.right[idx] if idx is not None else None

    def two_sided_class_of(self, w: Element):
        idx = self._two_of.get(self._base_id(w, "left"))
        return self.two_sided[idx] if idx is not None else None

    def two_sided_class_by_partition(self, lam):
        lam = typea.check_partition(lam)
        for cls in self.two_sided:
            if cls.partition == lam:
                return cls
        return None

    def left_classes_in(self, two_cls) -> list:
        out = []
        seen = set()
        for m in two_cls.members:
            lc = self.left_class_of(m)
            if lc is not None and lc.index not in seen:
                seen.add(lc.index)
                out.append(lc)
        return out

    def h_cell(self, left_cls) -> list:
        """Gamma = left class: the diagonal H-cell Gamma intersect Gamma^-1.

        For the extended family this scans the whole rotation-saturated ball,
        since rotated elements can sit in the H-cell even when the class
        member list shows only rotation-free representatives.
        """
        if self.group.family == EXT_AFFINE_A:
            pool = self.ball
        else:
            pool = left_cls.members
        out = []
        for m in pool:
            lc = self.left_class_of(m)
            if lc is None or lc.index != left_cls.index:
                continue
            lci = self.left_class_of(m.inverse())
            if lci is not None and lci.index == left_cls.index:
                out.append(m)
        return sorted(out, key=lambda e: (e.length, e.form))

    def a_of(self, w: Element) -> tuple[int, bool]:
        cls = self.two_sided_class_of(w)
        if cls is None or cls.a_value is None:
            raise TruncationInsufficient(
                f"no a-value available for {format_element(w)} in this ball"
            )
        return cls.a_value, cls.a_exact


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _scc(nodes, edges) -> list[list]:
    """Iterative Tarjan; returns components as lists of node ids."""
    index = {}
    low = {}
    onstack = set()
    stack: list = []
    comps = []
    counter = [0]
    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(edges.get(root, ())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        onstack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    onstack.add(w)
                    work.append((w, iter(edges.get(w, ()))))
                    advanced = True
                    break
                elif w in onstack:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    onstack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def cell_partition(g, L: int, margin: int | None = None) -> CellData:
    """Left/right/two-sided cell classes meeting ball(L).

    Edges are generated from every source in ball(L + margin); the margin
    defaults to L, except for universal groups where left steps preserve
    word suffixes (and right steps prefixes), so every merge already happens
    through the suffix chain inside ball(L + 1).  Classes are flagged
    complete only when a family dictionary certifies them; a-values come
    from parabolic anchors and are checked against the leading degree of the
    anchor's squared KL product.
    """
    group = coxeter._as_group(g)
    if margin is None:
        margin = 1 if group.family == UNIVERSAL else L
    cd = CellData(group, L, margin)
    base = cd.base
    sess = hecke.get_session(base)
    sources = [e.eid for e in coxeter.ball(base, L + margin)]
    source_set = set(sources)
    gens = base.generators()

    left_edges: dict = {}
    right_edges: dict = {}
    for x in sources:
        lx = base.length_of(x)
        le = set()
        re = set()
        murow = sess.mu_row(x)
        for s in gens:
            sx = base.mul_gen_left(x, s)
            if base.length_of(sx) > lx:
                if sx in source_set:
                    le.add(sx)
                for z, _m in murow.items():
                    if base.length_of(base.mul_gen_left(z, s)) < base.length_of(z):
                        le.add(z)
            xs = base.mul_gen_right(x, s)
            if base.length_of(xs) > lx:
                if xs in source_set:
                    re.add(xs)
                for z, _m in murow.items():
                    if base.length_of(base.mul_gen_right(z, s)) < base.length_of(z):
                        re.add(z)
        le.discard(x)
        re.discard(x)
        left_edges[x] = sorted(le)
        right_edges[x] = sorted(re)

    two_edges = {x: sorted(set(left_edges[x]) | set(right_edges[x])) for x in sources}
    if group.family == EXT_AFFINE_A:
        for x in sources:
            sh = base.shift_id(x, 1)
            if sh in source_set:
                two_edges[x] = sorted(set(two_edges[x]) | {sh})
            bk = base.shift_id(x, base.n - 1)
            if bk in source_set:
                two_edges[x] = sorted(set(two_edges[x]) | {bk})

    in_ball = {e.eid for e in coxeter.ball(base, L)}

    def build(kind, edges, of_map):
        comps = _scc(sources, edges)
        classes = []
        for comp in comps:
            members = [m for m in comp if m in in_ball]
            if not members:
                continue
            elems = tuple(sorted(
                (Element(group, group.intern(base.form_of(m)))
                 if group.family == EXT_AFFINE_A else Element(group, m)
                 for m in members),
                key=lambda e: (e.length, e.form),
            ))
            classes.append((comp, elems))
        classes.sort(key=lambda t: (t[1][0].length, t[1][0].form))
        out = []
        for i, (comp, elems) in enumerate(classes):
            cls = CellClass(index=i, kind=kind, members=elems)
            out.append(cls)
            for m in comp:
                if m in in_ball:
                    of_map[m] = i
        return out

    cd.left = build("left", left_edges, cd._left_of)
    cd.right = build("right", right_edges, cd._right_of)
    cd.two_sided = build("two-sided", two_edges, cd._two_of)

    if group.family == EXT_AFFINE_A:
        k_range = L
        saturated = []
        for e in coxeter.ball(base, L):
            for k in range(-k_range, k_range + 1):
                saturated.append(Element(group, group.with_rotation(
                    group.intern(base.form_of(e.eid)), k)))
        cd.ball = sorted(saturated, key=lambda e: (e.length, e.form))
    else:
        cd.ball = list(coxeter.ball(group, L))

    _certify(cd)
    return cd


def _certify(cd: CellData):
    """Set a-values and completeness flags from the family dictionaries."""
    group = cd.group
    family = group.family
    base = cd.base

    if family in (AFFINE_A, EXT_AFFINE_A, FINITE_A):
        n = group.n
        anchors = {}
        for lam in typea.partitions_of(n):
            gens_needed = typea.parabolic_generators(lam, n)
            if family == FINITE_A and any(s >= n for s in gens_needed):
                continue
            w = coxeter.longest_parabolic(group, gens_needed)
            if w.length <= cd.L:
                anchors[lam] = w
        for lam, w in anchors.items():
            cls = cd.two_sided_class_of(w)
            if cls is None:
                continue
            if cls.partition is not None and cls.partition != lam:
                cls.partition = None  # conflicting anchors: refuse to certify
                continue
            cls.partition = lam
        for cls in cd.two_sided:
            if cls.partition is None:
                continue
            lam = cls.partition
            a = typea.a_value_closed(lam)
            cls.a_value = a
            w = anchors[lam]
            prod = cd.product(w, w)
            lead = min(p.min_degree() for p in prod.values())
            cls.a_exact = (lead == -a)
            if not cls.a_exact:
                cls.a_value = None
                cls.partition = None
                continue
            lefts = cd.left_classes_in(cls)
            expected = typea.n_lambda(lam, n) if family != FINITE_A else \
                typea.standard_tableaux_count(typea.dual_partition(lam))
            if len(lefts) == expected:
                cls.complete = True
                for lc in lefts:
                    lc.complete = True
                    lc.a_value, lc.a_exact = a, True
        if family == FINITE_A:
            import math
            whole = len(cd.ball) == math.factorial(n)
            if whole:
                for cls in cd.two_sided + cd.left + cd.right:
                    cls.complete = True

    elif family == UNIVERSAL:
        n = group.n
        ident = group.identity
        for cls in cd.two_sided:
            if cls.members == (ident,):
                cls.a_value, cls.a_exact, cls.complete = 0, True, True
                cls.partition = None
        big = [cls for cls in cd.two_sided if cls.members != (ident,)]
        if len(big) == 1:
            cls = big[0]
            s = group.generator(min(group.generators()))
            prod = cd.product(s, s)
            lead = min(p.min_degree() for p in prod.values())
            if lead == -1:
                cls.a_value, cls.a_exact = 1, True
                lefts = cd.left_classes_in(cls)
                by_last = all(
                    len({m.form[-1] for m in lc.members}) == 1 for lc in lefts
                )
                if len(lefts) == n and by_last:
                    cls.complete = True
                    for lc in lefts:
                        lc.complete = True
                        lc.a_value, lc.a_exact = 1, True
        ecls = cd.left_class_of(ident)
        if ecls is not None and ecls.members == (ident,):
            ecls.complete = True
            ecls.a_value, ecls.a_exact = 0, True

    # right classes inherit certificates through inversion: Gamma -> Gamma^-1
    for rc in cd.right:
        lc = cd.left_class_of(rc.members[0].inverse())
        if lc is not None and lc.complete:
            sample_back = {cd.right_class_of(m.inverse()) for m in lc.members}
            if sample_back == {rc}:
                rc.complete = True
                rc.a_value, rc.a_exact = lc.a_value, lc.a_exact


# ---------------------------------------------------------------------------
# the a-function and gamma extraction
# ---------------------------------------------------------------------------


def a_value(z: Element, cd: CellData) -> int:
    """The a-value of z's two-sided class; exact only under a certificate."""
    val, exact = cd.a_of(z)
    if not exact:
        raise TruncationInsufficient(
            f"a({format_element(z)}) is only bounded below by {val} in this ball"
        )
    return val


def gamma(x: Element, y: Element, z: Element, cd: CellData) -> int:
    """gamma_{x,y,z} = coefficient of v^(-a(z^-1)) in h_{x,y,z^-1}."""
    zi = z.inverse()
    a, exact = cd.a_of(zi)
    if not exact:
        raise TruncationInsufficient(
            f"a-value of {format_element(zi)} not certified exact"
        )
    prod = cd.product(x, y)
    h = prod.get(zi)
    return h.coeff(-a) if h is not None else 0


def duflo_involutions(cd: CellData, classes=None) -> dict:
    """The distinguished involution of each (complete) left class.

    Certified by gamma_{x^-1, x, d} = 1 for every in-ball member x, plus
    uniqueness among in-ball involutions of the class.  Classes whose
    certificate fails map to None.  For the extended family the rotation-free
    members are tested; rotations relabel these products bijectively.
    """
    targets = classes if classes is not None else [c for c in cd.left if c.complete]
    out = {}
    for cls in targets:
        if not (cls.complete and cls.a_exact):
            out[cls.index] = None
            cd.duflo[cls.index] = None
            continue
        a = cls.a_value
        members = [m for m in cls.members
                   if cd.group.family != EXT_AFFINE_A
                   or cd.group.rotation_part(m.eid) == 0]
        candidates = None
        for x in members:
            prod = cd.product(x.inverse(), x)
            hits = set()
            for z, h in prod.items():
                if h.coeff(-a) == 1 and z == z.inverse():
                    lc = cd.left_class_of(z)
                    if lc is not None and lc.index == cls.index:
                        hits.add(z)
            candidates = hits if candidates is None else (candidates & hits)
            if not candidates:
                break
        if candidates and len(candidates) == 1:
            d = next(iter(candidates))
            out[cls.index] = d
            cd.duflo[cls.index] = d
        else:
            out[cls.index] = None
            cd.duflo[cls.index] = None
    return out


def jring_structure(H, cd: CellData) -> GammaTable:
    """The asymptotic multiplication table on a diagonal H-cell, in the ball.

    Each product is exact; an entry is flagged complete when every support
    element carrying the leading degree lies in the ball with a certified
    class, so its gamma-attribution is grounded rather than assumed.
    """
    H = sorted(H, key=lambda e: (e.length, e.form))
    if not H:
        raise TruncationInsufficient("empty H-cell")
    cls = cd.two_sided_class_of(H[0])
    if cls is None or not cls.a_exact:
        raise TruncationInsufficient("H-cell lacks a certified a-value")
    a = cls.a_value
    unit = None
    lcls = cd.left_class_of(H[0])
    if lcls is not None and lcls.index in cd.duflo:
        unit = cd.duflo[lcls.index]
    if unit is None:
        for d in H:
            if d == d.inverse() and cd.product(d, d).get(d, LaurentPoly.zero()).coeff(-a) == 1:
                unit = d
                break
    table = GammaTable(H, unit, a)
    hset = set(H)
    ball_set = set(cd.ball)
    lcls = cd.left_class_of(H[0])

    def in_hcell(z) -> bool:
        lz = cd.left_class_of(z)
        if lz is None or lz is not lcls:
            return False
        lzi = cd.left_class_of(z.inverse())
        return lzi is lcls

    for x in H:
        for y in H:
            prod = cd.product(x, y)
            row: dict = {}
            complete = True
            for zp, h in prod.items():
                # the leading coefficient of h_{x,y,zp} at v^(-a(zp)) is
                # gamma_{x,y,zp^-1}, the structure constant on t_zp; a
                # contribution to this H-cell's table needs a(zp) = a
                cls_z = cd.two_sided_class_of(zp)
                if cls_z is not None and cls_z.a_exact and zp in ball_set:
                    if cls_z.a_value == a:
                        lead = h.coeff(-a)
                        if lead:
                            if zp in hset:
                                row[zp] = lead
                            elif in_hcell(zp):
                                # genuine H-cell output beyond the supplied set
                                complete = False
                            else:
                                table.anomalies.append(
                                    "gamma support leaves the H-cell at "
                                    f"({format_element(x)},{format_element(y)},"
                                    f"{format_element(zp)})"
                                )
                    elif h.coeff(-cls_z.a_value):
                        table.anomalies.append(
                            f"deep gamma at ({format_element(x)},"
                            f"{format_element(y)},{format_element(zp)})"
                        )
                elif h.coeff(-a):
                    # support beyond the ball that could carry gamma weight
                    complete = False
            table.rows[(x, y)] = row
            table.complete[(x, y)] = complete
    return table


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------


def verify_positivity_properties(cd: CellData, log=None,
                                 cyclicity_bound: int | None = None) -> Report:
    """Bar-invariance, nonnegativity, degree bounds, gamma symmetry, P2.

    Runs over every product recorded in the cell data's log (or a supplied
    log, which fault-injection tests may corrupt).  Gamma cyclicity
    gamma_{x,y,z} = gamma_{z,x,y} is checked for in-ball triples, computing
    the rotated product on demand.
    """
    report = Report(f"positivity/symmetry on {cd.group.descriptor.code} "
                    f"n={cd.group.n} ball({cd.L})")
    if log is None:
        log = cd.product_log
    if cyclicity_bound is None:
        cyclicity_bound = cd.L

    bar = report.check("bar-invariance of every h_{x,y,z}")
    nonneg = report.check("nonnegativity of every coefficient")
    degb = report.check("min-degree(h_{x,y,z}) >= -a(z)")
    for (x, y), prod in list(log.items()):
        for z, h in prod.items():
            trip = f"({format_element(x)},{format_element(y)},{format_element(z)})"
            bar.count()
            if h.bar() != h:
                bar.fail(trip, h, h.bar())
            nonneg.count()
            if not h.is_nonnegative():
                nonneg.fail(trip, h, "coefficients >= 0")
            cls = cd.two_sided_class_of(z)
            if cls is not None and cls.a_exact:
                degb.count()
                if h.min_degree() < -cls.a_value:
                    degb.fail(trip, f"min-degree {h.min_degree()}", f"-a = {-cls.a_value}")
            else:
                degb.skip()

    cyc = report.check("gamma cyclicity gamma(x,y,z) = gamma(z,x,y)")
    ball_set = set(cd.ball)
    for (x, y), prod in list(log.items()):
        if x not in ball_set or y not in ball_set:
            continue
        if x.length > cyclicity_bound or y.length > cyclicity_bound:
            continue
        for zp, h in prod.items():
            z = zp.inverse()
            if z not in ball_set or z.length > cyclicity_bound:
                continue
            # gamma(x,y,z) reads h_{x,y,z^-1} at -a(z^-1);
            # gamma(z,x,y) reads h_{z,x,y^-1} at -a(y^-1)
            cls_z = cd.two_sided_class_of(zp)
            cls_y = cd.two_sided_class_of(y.inverse())
            if cls_z is None or not cls_z.a_exact or cls_y is None or not cls_y.a_exact:
                cyc.skip()
                continue
            g1 = h.coeff(-cls_z.a_value)
            h2 = cd.product(z, x).get(y.inverse())
            g2 = h2.coeff(-cls_y.a_value) if h2 is not None else 0
            cyc.count()
            if g1 != g2:
                cyc.fail(
                    f"({format_element(x)},{format_element(y)},{format_element(z)})",
                    g1, g2,
                )

    p2 = report.check("P2: gamma(x^-1, x, d) = 1 for the class Duflo")
    for idx, d in cd.duflo.items():
        if d is None:
            p2.skip()
            continue
        cls = cd.left[idx]
        a = cls.a_value
        for x in cls.members:
            if cd.group.family == EXT_AFFINE_A and cd.group.rotation_part(x.eid) != 0:
                continue
            key = (x.inverse(), x)
            if key not in log:
                continue
            h = log[key].get(d)
            val = h.coeff(-a) if h is not None else 0
            p2.count()
            if val != 1:
                p2.fail(f"(inv,{format_element(x)},{format_element(d)})", val, 1)
    return report


def verify_gammacan(spec, cd: CellData) -> Report:
    """h_{x,y,z} = pi(I) * gamma_{x,y,z^-1} on the H-cell of a parabolic anchor.

    ``spec`` is either a generator set I or a partition (resolved through
    its block parabolic).  Every pair-product over the in-ball H-cell is
    expanded; for support in the H-cell the identity must hold exactly, and
    leading-degree support outside the H-cell is flagged.
    """
    group = cd.group
    if isinstance(spec, (set, frozenset)):
        I = set(spec)
    else:
        I = set(typea.parabolic_generators(spec, group.n))
    w = coxeter.longest_parabolic(group, I)
    pi = typea.pi_I(group, I)
    lcls = cd.left_class_of(w)
    report = Report(
        f"h = pi(I) gamma on the H-cell of {format_element(w)}, "
        f"I={sorted(I)}, {cd.group.descriptor.code} n={cd.group.n} ball({cd.L})"
    )
    anchor = report.check("anchor class certified with a = l(w_I)")
    anchor.count()
    if lcls is None or not lcls.a_exact or lcls.a_value != w.length:
        anchor.fail(format_element(w), getattr(lcls, "a_value", None), w.length)
        return report
    a = lcls.a_value
    H = cd.h_cell(lcls)
    eq = report.check("h_{x,y,z} == pi(I) * gamma_{x,y,z^-1} for z in H")
    supp = report.check("leading-degree support stays inside H")
    hset = set(H)
    anchor_cls = cd.two_sided_class_of(w)
    for x in H:
        for y in H:
            prod = cd.product(x, y)
            for z, h in prod.items():
                lead = h.coeff(-a)
                if z in hset:
                    eq.count()
                    if h != pi * lead:
                        eq.fail(
                            f"({format_element(x)},{format_element(y)},{format_element(z)})",
                            h, pi * lead,
                        )
                else:
                    supp.count()
                    # leading-degree weight on a same-cell element outside H
                    # would contradict the gamma support theory
                    if lead != 0 and cd.two_sided_class_of(z) is anchor_cls:
                        supp.fail(
                            f"({format_element(x)},{format_element(y)},{format_element(z)})",
                            f"leading coefficient {lead}", "0",
                        )
    return report
