"""Kazhdan-Lusztig basis combinatorics: coefficients, mu-values, products.

Normalization.  The KL basis element b_w expands in the standard basis as
b_w = sum_y h_{y,w} delta_y with h_{w,w} = 1 and h_{y,w} in v*ZZ[v] for
y < w, so b_s = delta_s + v*delta_e and h_{y,w} = v^(l(w)-l(y)) P_{y,w}(v^-2)
for the classical KL polynomial P.  With this convention the product
b_x b_y = sum_z h_{x,y,z} b_z reproduces the published affine type A
decompositions verbatim.

The engine is the classical descent recursion:

    b_s b_w = b_{sw} + sum_{z < w, sz < z} mu(z, w) b_z        (sw > w)
    b_s b_w = (v + v^-1) b_w                                   (sw < w)

run over interned element ids.  Whole rows {h_{y,w}}_y are computed per
element and cached for one representative of each symmetry orbit
(w, w^-1, and their diagram rotations in affine type), since
h_{y,w} = h_{y^-1,w^-1} and rotation is a length-preserving automorphism.
Inside this module polynomials are flat tuples (offset, c_0, c_1, ...)
encoding sum_t c_t v^(offset+t); they become LaurentPoly at the API
boundary.

An independent product oracle multiplies entirely in the standard basis
(quadratic relations, then base change) for cross-validation.

The extended affine family routes through its rotation-free part:
b_{r^k x} b_{r^m y} = sum_z h_{shift(x,-m), y, z} b_{r^(k+m) z}.
"""

from __future__ import annotations

import json
import os
import threading

from . import coxeter
from .coxeter import (
    AFFINE_A,
    EXT_AFFINE_A,
    FINITE_A,
    UNIVERSAL,
    Element,
    Group,
    format_element,
    parse_element,
)
from .errors import (
    FormatViolation,
    GroupMismatch,
    IndexOutOfRange,
    InvariantViolation,
    IoFailure,
    ResourceLimit,
    UnsupportedFamily,
)
from .laurent import LaurentPoly

# ---------------------------------------------------------------------------
# flat polynomial helpers: p = (offset, c0, c1, ...) with c0 != 0 != c_last
# ---------------------------------------------------------------------------

P_ONE = (0, 1)


def _trim(offset: int, coeffs: list):
    lo = 0
    hi = len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    if lo == hi:
        return None
    while coeffs[hi - 1] == 0:
        hi -= 1
    return (offset + lo, *coeffs[lo:hi])


def p_add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    off = min(a[0], b[0])
    top = max(a[0] + len(a), b[0] + len(b)) - 1
    coeffs = [0] * (top - off)
    for i in range(1, len(a)):
        coeffs[a[0] - off + i - 1] += a[i]
    for i in range(1, len(b)):
        coeffs[b[0] - off + i - 1] += b[i]
    return _trim(off, coeffs)


def p_scale(a, c: int):
    if a is None or c == 0:
        return None
    return (a[0], *(x * c for x in a[1:]))


def p_shift(a, k: int):
    if a is None:
        return None
    return (a[0] + k, *a[1:])


def p_coeff(a, d: int) -> int:
    if a is None:
        return 0
    i = d - a[0]
    return a[i + 1] if 0 <= i < len(a) - 1 else 0


def p_mul(a, b):
    if a is None or b is None:
        return None
    coeffs = [0] * (len(a) + len(b) - 3)
    for i in range(1, len(a)):
        ai = a[i]
        if ai:
            for j in range(1, len(b)):
                coeffs[i + j - 2] += ai * b[j]
    return _trim(a[0] + b[0], coeffs)


def p_min_deg(a) -> int:
    return a[0]


def p_max_deg(a) -> int:
    return a[0] + len(a) - 2


def p_to_laurent(a) -> LaurentPoly:
    if a is None:
        return LaurentPoly.zero()
    return LaurentPoly({a[0] + i - 1: a[i] for i in range(1, len(a))})


def p_from_laurent(p: LaurentPoly):
    if p.is_zero():
        return None
    lo, hi = p.min_degree(), p.max_degree()
    return (lo, *(p.coeff(d) for d in range(lo, hi + 1)))


def p_pairs(a):
    """Ascending [degree, coefficient] pairs (the cache wire format)."""
    if a is None:
        return []
    return [[a[0] + i - 1, a[i]] for i in range(1, len(a)) if a[i]]


def p_from_pairs(pairs):
    out = None
    for d, c in pairs:
        out = p_add(out, (d, c))
    return out


# ---------------------------------------------------------------------------
# public element-keyed Hecke algebra values
# ---------------------------------------------------------------------------


class HeckeElt:
    """A finite ZZ[v,v^-1]-combination of KL basis elements b_w."""

    __slots__ = ("group", "_coeffs")

    def __init__(self, group: Group, coeffs=None):
        self.group = group
        self._coeffs: dict[int, tuple] = {}
        if coeffs:
            for w, p in coeffs.items():
                eid = w.eid if isinstance(w, Element) else int(w)
                q = p_from_laurent(p) if isinstance(p, LaurentPoly) else p
                if q is not None:
                    self._coeffs[eid] = q

    @classmethod
    def basis(cls, group: Group, w: Element) -> "HeckeElt":
        h = cls(group)
        h._coeffs[w.eid] = P_ONE
        return h

    @classmethod
    def _from_ids(cls, group: Group, coeffs: dict) -> "HeckeElt":
        h = cls(group)
        h._coeffs = dict(coeffs)
        return h

    @property
    def coeffs(self) -> dict:
        return {Element(self.group, eid): p_to_laurent(p) for eid, p in self._coeffs.items()}

    def coeff(self, w: Element) -> LaurentPoly:
        return p_to_laurent(self._coeffs.get(w.eid))

    def support(self) -> list:
        g = self.group
        order = sorted(self._coeffs, key=lambda e: (g.length_of(e), g.form_of(e)))
        return [Element(g, eid) for eid in order]

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, HeckeElt)
            and self.group is other.group
            and self._coeffs == other._coeffs
        )

    def __add__(self, other):
        if not isinstance(other, HeckeElt) or other.group is not self.group:
            raise GroupMismatch("cannot add Hecke elements from different groups")
        out = dict(self._coeffs)
        for eid, p in other._coeffs.items():
            s = p_add(out.get(eid), p)
            if s is None:
                out.pop(eid, None)
            else:
                out[eid] = s
        return HeckeElt._from_ids(self.group, out)

    def scaled(self, p: LaurentPoly) -> "HeckeElt":
        q = p_from_laurent(p)
        out = {}
        if q is not None:
            for eid, h in self._coeffs.items():
                out[eid] = p_mul(h, q)
        return HeckeElt._from_ids(self.group, out)

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for w in self.support():
            c = p_to_laurent(self._coeffs[w.eid])
            parts.append(f"({c})*b[{format_element(w)}]")
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# the per-group computation session
# ---------------------------------------------------------------------------


class HeckeSession:
    """KL rows, mu-rows and memoized products for one group session."""

    def __init__(self, group: Group, cache: "KLCache | None" = None,
                 oracle_bound: int = 28):
        self.group = group
        self.oracle_bound = oracle_bound
        self._lock = threading.Lock()
        self._rows: dict[int, dict] = {}
        self._canon: dict[int, tuple] = {}
        self._mu: dict[int, dict] = {}
        self._prod: dict[tuple, dict] = {}
        self._dim1: dict[int, int] = {}
        self.cache = cache
        if group.family == EXT_AFFINE_A:
            self.base = get_session(coxeter.get_group(AFFINE_A, group.n))
        else:
            self.base = self
        if cache is not None:
            cache.load_into(self)

    # -- symmetry orbit canonicalization ------------------------------------

    def _canonical(self, eid: int):
        hit = self._canon.get(eid)
        if hit is not None:
            return hit
        g = self.group
        inv = g.inverse_id(eid)
        # each candidate is shift^j(eid) or shift^j(inv); rebuilding the element
        # from the winner applies the opposite shift, stored directly as t
        orbit = [(g.form_of(eid), eid, 0, False), (g.form_of(inv), inv, 0, True)]
        if g.family in (AFFINE_A, EXT_AFFINE_A):
            a, b = eid, inv
            for j in range(1, g.n):
                a = g.shift_id(a, 1)
                b = g.shift_id(b, 1)
                t = g.n - j
                orbit.append((g.form_of(a), a, t, False))
                orbit.append((g.form_of(b), b, t, True))
        _, cid, t, inverted = min(orbit)
        res = (cid, t, inverted)
        self._canon[eid] = res
        return res

    # -- KL rows -------------------------------------------------------------

    def row_ids(self, eid: int) -> dict:
        """The full row {y: h_{y,w}} for w = eid.  Treat the result read-only."""
        g = self.group
        cid, j, inverted = self._canonical(eid)
        base = self._rows.get(cid)
        if base is None:
            base = self._compute_row(cid)
        if cid == eid:
            return base
        if inverted and j == 0:
            return {g.inverse_id(y): h for y, h in base.items()}
        if inverted:
            return {g.shift_id(g.inverse_id(y), j): h for y, h in base.items()}
        return {g.shift_id(y, j): h for y, h in base.items()}

    def _compute_row(self, cid: int) -> dict:
        g = self.group
        stack = [cid]
        while stack:
            w = stack[-1]
            cw = self._canonical(w)[0]
            if cw in self._rows:
                stack.pop()
                continue
            if cw != w:
                stack.append(cw)
                stack.pop(-2)
                continue
            lw = g.length_of(w)
            if lw == 0:
                with self._lock:
                    self._rows[w] = {w: P_ONE}
                stack.pop()
                continue
            s = min(g.descents_left(w))
            w1 = g.mul_gen_left(w, s)
            c1 = self._canonical(w1)[0]
            pending = []
            if c1 not in self._rows:
                pending.append(c1)
            mu1 = self._mu.get(w1)
            if mu1 is None and self._canonical(w1)[0] in self._rows:
                mu1 = self.mu_row(w1)
            if mu1 is not None:
                for z in mu1:
                    if g.length_of(g.mul_gen_left(z, s)) < g.length_of(z):
                        cz = self._canonical(z)[0]
                        if cz not in self._rows:
                            pending.append(cz)
            if pending:
                stack.extend(pending)
                continue
            row1 = self.row_ids(w1)
            out: dict = {}
            for y, h in row1.items():
                sy = g.mul_gen_left(y, s)
                out[sy] = p_add(out.get(sy), h)
                eps = 1 if g.length_of(sy) > g.length_of(y) else -1
                out[y] = p_add(out.get(y), p_shift(h, eps))
            for z, m in self.mu_row(w1).items():
                if g.length_of(g.mul_gen_left(z, s)) < g.length_of(z):
                    for y, h in self.row_ids(z).items():
                        r = p_add(out.get(y), p_scale(h, -m))
                        if r is None:
                            out.pop(y, None)
                        else:
                            out[y] = r
            out = {y: h for y, h in out.items() if h is not None}
            if out.get(w) != P_ONE:
                raise InvariantViolation(f"KL row of {g.form_of(w)} lost its leading 1")
            for y, h in out.items():
                if y != w and (h[0] < 1 or p_max_deg(h) > lw - g.length_of(y)):
                    raise InvariantViolation(
                        f"KL coefficient degree bound violated at {g.form_of(y)}, {g.form_of(w)}"
                    )
            with self._lock:
                self._rows[w] = out
            stack.pop()
        return self._rows[self._canonical(cid)[0]]

    def mu_row(self, eid: int) -> dict:
        """{z: mu(z, w)} for w = eid, mu being the coefficient of v in h_{z,w}."""
        hit = self._mu.get(eid)
        if hit is not None:
            return hit
        row = self.row_ids(eid)
        out = {}
        for y, h in row.items():
            if y != eid:
                m = p_coeff(h, 1)
                if m:
                    out[y] = m
        with self._lock:
            self._mu[eid] = out
        return out

    def dim_at_one(self, eid: int) -> int:
        """Column sum at v=1 of the KL-to-standard base change for b_w."""
        hit = self._dim1.get(eid)
        if hit is None:
            hit = sum(sum(h[1:]) for h in self.row_ids(eid).values())
            self._dim1[eid] = hit
        return hit

    # -- KL-basis products ----------------------------------------------------

    def leftmul_bs_ids(self, s: int, h: dict) -> dict:
        g = self.group
        out: dict = {}
        for w, p in h.items():
            sw = g.mul_gen_left(w, s)
            if g.length_of(sw) < g.length_of(w):
                out[w] = p_add(out.get(w), p_add(p_shift(p, 1), p_shift(p, -1)))
            else:
                out[sw] = p_add(out.get(sw), p)
                for z, m in self.mu_row(w).items():
                    if g.length_of(g.mul_gen_left(z, s)) < g.length_of(z):
                        r = p_add(out.get(z), p_scale(p, m))
                        if r is None:
                            out.pop(z, None)
                        else:
                            out[z] = r
        return {w: p for w, p in out.items() if p is not None}

    def prod_ids(self, x: int, y: int) -> dict:
        """b_x * b_y as {z: h_{x,y,z}}.  Treat the result read-only."""
        g = self.group
        if g.family == EXT_AFFINE_A:
            kx, x0 = g.affine_part_id(x)
            ky, y0 = g.affine_part_id(y)
            bg = self.base.group
            xs = bg.intern(g.form_of(g.shift_id(g.with_rotation(x0, 0), -ky)))
            ys = bg.intern(g.form_of(y0))
            inner = self.base.prod_ids(xs, ys)
            k = kx + ky
            out = {}
            for z, h in inner.items():
                out[g.with_rotation(g.intern(bg.form_of(z)), k)] = h
            return out
        key = (x, y)
        hit = self._prod.get(key)
        if hit is not None:
            return hit
        e = self.group.identity.eid
        if x == e:
            res = {y: P_ONE}
        elif y == e:
            res = {x: P_ONE}
        else:
            s = min(g.descents_left(x))
            x1 = g.mul_gen_left(x, s)
            res = self.leftmul_bs_ids(s, self.prod_ids(x1, y))
            for z, m in self.mu_row(x1).items():
                if g.length_of(g.mul_gen_left(z, s)) < g.length_of(z):
                    sub = self.prod_ids(z, y)
                    for w, p in sub.items():
                        r = p_add(res.get(w), p_scale(p, -m))
                        if r is None:
                            res.pop(w, None)
                        else:
                            res[w] = r
            res = {w: p for w, p in res.items() if p is not None}
        with self._lock:
            self._prod[key] = res
        if self.cache is not None:
            self.cache.append_product(self, x, y, res)
        return res

    # -- standard-basis oracle -------------------------------------------------

    def _delta_s_left(self, s: int, h: dict) -> dict:
        g = self.group
        out: dict = {}
        for w, p in h.items():
            sw = g.mul_gen_left(w, s)
            out[sw] = p_add(out.get(sw), p)
            if g.length_of(sw) < g.length_of(w):
                q = p_add(p_shift(p, -1), p_scale(p_shift(p, 1), -1))
                r = p_add(out.get(w), q)
                if r is None:
                    out.pop(w, None)
                else:
                    out[w] = r
        return {w: p for w, p in out.items() if p is not None}

    def oracle_prod_ids(self, x: int, y: int) -> dict:
        g = self.group
        if g.length_of(x) + g.length_of(y) > self.oracle_bound:
            raise ResourceLimit(
                f"oracle bound {self.oracle_bound} exceeded by lengths "
                f"{g.length_of(x)} + {g.length_of(y)}"
            )
        if g.family == EXT_AFFINE_A:
            kx, x0 = g.affine_part_id(x)
            ky, y0 = g.affine_part_id(y)
            bg = self.base.group
            xs = bg.intern(g.form_of(g.shift_id(g.with_rotation(x0, 0), -ky)))
            ys = bg.intern(g.form_of(y0))
            inner = self.base.oracle_prod_ids(xs, ys)
            k = kx + ky
            return {g.with_rotation(g.intern(bg.form_of(z)), k): h for z, h in inner.items()}
        # expand both factors in the standard basis and multiply there
        ydelta = dict(self.row_ids(y))
        acc: dict = {}
        for u, hu in self.row_ids(x).items():
            term = ydelta
            for s in reversed(coxeter.reduced_word(Element(g, u))):
                term = self._delta_s_left(s, term)
            for w, p in term.items():
                r = p_add(acc.get(w), p_mul(hu, p))
                if r is None:
                    acc.pop(w, None)
                else:
                    acc[w] = r
        acc = {w: p for w, p in acc.items() if p is not None}
        # greedy base change back to the KL basis, top length first
        out: dict = {}
        while acc:
            w = max(acc, key=lambda e: (g.length_of(e), g.form_of(e)))
            c = acc.pop(w)
            out[w] = c
            for yid, h in self.row_ids(w).items():
                if yid == w:
                    continue
                r = p_add(acc.get(yid), p_scale(p_mul(c, h), -1))
                if r is None:
                    acc.pop(yid, None)
                else:
                    acc[yid] = r
            acc = {e: p for e, p in acc.items() if p is not None}
        return out


_sessions: dict = {}
# reentrant: building an extended session fetches its affine base session
_sessions_lock = threading.RLock()


def get_session(group: Group, cache_dir: str | None = None) -> HeckeSession:
    key = id(group)
    with _sessions_lock:
        sess = _sessions.get(key)
        if sess is None:
            cache = KLCache(cache_dir, group) if cache_dir else None
            sess = HeckeSession(group, cache=cache)
            _sessions[key] = sess
        elif cache_dir and sess.cache is None:
            sess.cache = KLCache(cache_dir, group)
            sess.cache.load_into(sess)
        return sess


# ---------------------------------------------------------------------------
# spec operations
# ---------------------------------------------------------------------------


def _common_group(*elements) -> Group:
    g = elements[0].group
    for e in elements[1:]:
        if e.group is not g:
            raise GroupMismatch("elements from different group sessions")
    return g


def kl_coefficient(y: Element, w: Element) -> LaurentPoly:
    """h_{y,w}: the coefficient of delta_y in b_w (zero when y is not below w)."""
    g = _common_group(y, w)
    if g.family == UNIVERSAL:
        raise UnsupportedFamily("kl_coefficient is not exposed for universal groups")
    sess = get_session(g)
    yid, wid = y.eid, w.eid
    if g.family == EXT_AFFINE_A:
        ky, yid0 = g.affine_part_id(yid)
        kw, wid0 = g.affine_part_id(wid)
        if ky != kw:
            return LaurentPoly.zero()
        yid, wid = yid0, wid0
    res = p_to_laurent(sess.base.row_ids(
        sess.base.group.intern(g.form_of(wid)) if g.family == EXT_AFFINE_A else wid
    ).get(
        sess.base.group.intern(g.form_of(yid)) if g.family == EXT_AFFINE_A else yid
    ))
    if sess.cache is not None:
        sess.cache.append_kl(y, w, res)
    return res


def mu(z: Element, w: Element) -> int:
    """The coefficient of v in h_{z,w}."""
    return kl_coefficient(z, w).coeff(1)


def mult_by_bs(s: int, h: HeckeElt) -> HeckeElt:
    """Left multiplication b_s * h in KL coordinates."""
    g = h.group
    if s not in g.generators():
        raise IndexOutOfRange(f"generator {s} invalid for {g.descriptor}")
    sess = get_session(g)
    if g.family == EXT_AFFINE_A:
        out: dict = {}
        for eid, p in h._coeffs.items():
            k, e0 = g.affine_part_id(eid)
            # b_s b_{r^k w} = r^k * (b_{shift(s,-k)} b_w)
            s2 = (s - k) % g.n
            piece = sess.base.leftmul_bs_ids(
                s2, {sess.base.group.intern(g.form_of(e0)): p}
            )
            for z, q in piece.items():
                zid = g.with_rotation(g.intern(sess.base.group.form_of(z)), k)
                r = p_add(out.get(zid), q)
                out[zid] = r
        return HeckeElt._from_ids(g, {z: p for z, p in out.items() if p is not None})
    return HeckeElt._from_ids(g, sess.leftmul_bs_ids(s, h._coeffs))


def mult_kl(x: Element, y: Element) -> HeckeElt:
    """b_x * b_y = sum_z h_{x,y,z} b_z, by the memoized descent recursion."""
    g = _common_group(x, y)
    sess = get_session(g)
    return HeckeElt._from_ids(g, sess.prod_ids(x.eid, y.eid))


def mult_extended(a: Element, b: Element) -> HeckeElt:
    """Product in the extended affine family, twisting through rotation parts."""
    g = _common_group(a, b)
    if g.family != EXT_AFFINE_A:
        raise GroupMismatch("mult_extended needs the extAffineA family")
    return mult_kl(a, b)


def mult_standard_oracle(x: Element, y: Element) -> HeckeElt:
    """The same product computed in the standard basis (independent route)."""
    g = _common_group(x, y)
    sess = get_session(g)
    return HeckeElt._from_ids(g, sess.oracle_prod_ids(x.eid, y.eid))


# ---------------------------------------------------------------------------
# the on-disk cache
# ---------------------------------------------------------------------------

_KL_KEYS = {"g", "n", "y", "w", "h"}
_PROD_KEYS = {"g", "n", "x", "y", "terms"}


class KLCache:
    """Append-only JSONL cache of KL coefficients and KL-basis products.

    One record per line:

        {"g":"affA","n":4,"y":"w:2","w":"w:2132","h":[[1,1],[3,1]]}

    with "h" listing [degree, coefficient] pairs in ascending degree, and a
    parallel products file keyed by "x","y" whose value field "terms" lists
    {"z": element, "h": pairs} entries.
    """

    def __init__(self, directory: str, group: Group):
        self.directory = directory
        self.group = group
        try:
            os.makedirs(directory, exist_ok=True)
        except OSError as exc:
            raise IoFailure(f"cannot create cache directory {directory}: {exc}")
        self.kl_path = os.path.join(directory, "kl.jsonl")
        self.products_path = os.path.join(directory, "products.jsonl")
        self._seen_kl: set = set()
        self._seen_prod: set = set()
        self._lock = threading.Lock()

    def _iter_records(self, path: str, keys: set):
        if not os.path.exists(path):
            return
        with open(path, "r", encoding="ascii") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    raise FormatViolation(f"{path}:{lineno}: not a JSON record")
                if not isinstance(rec, dict) or set(rec) != keys:
                    raise FormatViolation(
                        f"{path}:{lineno}: expected keys {sorted(keys)}"
                    )
                if json.dumps(rec, separators=(",", ":"), sort_keys=True) != line:
                    raise FormatViolation(f"{path}:{lineno}: non-canonical record text")
                yield lineno, rec

    @staticmethod
    def _check_pairs(pairs, where: str):
        if not isinstance(pairs, list):
            raise FormatViolation(f"{where}: h must be a list of [degree, coeff] pairs")
        last = None
        for p in pairs:
            if (
                not isinstance(p, list)
                or len(p) != 2
                or not isinstance(p[0], int)
                or not isinstance(p[1], int)
                or p[1] == 0
            ):
                raise FormatViolation(f"{where}: bad pair {p!r}")
            if last is not None and p[0] <= last:
                raise FormatViolation(f"{where}: degrees not ascending")
            last = p[0]

    def load_into(self, session: HeckeSession):
        g = self.group
        code, n = g.descriptor.code, g.n
        for lineno, rec in self._iter_records(self.kl_path, _KL_KEYS):
            where = f"{self.kl_path}:{lineno}"
            self._check_pairs(rec["h"], where)
            if rec["g"] != code or rec["n"] != n:
                continue
            self._seen_kl.add((rec["y"], rec["w"]))
        for lineno, rec in self._iter_records(self.products_path, _PROD_KEYS):
            where = f"{self.products_path}:{lineno}"
            if rec["g"] != code or rec["n"] != n:
                continue
            if not isinstance(rec["terms"], list):
                raise FormatViolation(f"{where}: terms must be a list")
            coeffs = {}
            for t in rec["terms"]:
                if not isinstance(t, dict) or set(t) != {"z", "h"}:
                    raise FormatViolation(f"{where}: bad term {t!r}")
                self._check_pairs(t["h"], where)
                z = parse_element(g, t["z"])
                coeffs[z.eid] = p_from_pairs(t["h"])
            x = parse_element(g, rec["x"])
            y = parse_element(g, rec["y"])
            key = (x.eid, y.eid)
            self._seen_prod.add((rec["x"], rec["y"]))
            if g.family != EXT_AFFINE_A:
                session._prod.setdefault(key, coeffs)

    def _append(self, path: str, rec: dict):
        line = json.dumps(rec, separators=(",", ":"), sort_keys=True)
        with self._lock:
            try:
                with open(path, "a", encoding="ascii") as fh:
                    fh.write(line + "\n")
            except OSError as exc:
                raise IoFailure(f"cannot append to {path}: {exc}")

    def append_kl(self, y: Element, w: Element, h: LaurentPoly):
        ty, tw = format_element(y), format_element(w)
        if (ty, tw) in self._seen_kl:
            return
        self._seen_kl.add((ty, tw))
        pairs = [[d, c] for d, c in sorted(h.terms.items())]
        self._append(
            self.kl_path,
            {"g": self.group.descriptor.code, "n": self.group.n, "y": ty, "w": tw, "h": pairs},
        )

    def append_product(self, session: HeckeSession, x: int, y: int, res: dict):
        g = session.group
        tx = format_element(Element(g, x))
        ty = format_element(Element(g, y))
        if (tx, ty) in self._seen_prod:
            return
        self._seen_prod.add((tx, ty))
        order = sorted(res, key=lambda e: (g.length_of(e), g.form_of(e)))
        terms = [
            {"z": format_element(Element(g, z)), "h": p_pairs(res[z])} for z in order
        ]
        self._append(
            self.products_path,
            {"g": g.descriptor.code, "n": g.n, "x": tx, "y": ty, "terms": terms},
        )

    def lookup_product(self, x_text: str, y_text: str):
        """Replay a cached product record, None when absent (for verification)."""
        for _, rec in self._iter_records(self.products_path, _PROD_KEYS):
            if rec["x"] == x_text and rec["y"] == y_text:
                return rec["terms"]
        return None
