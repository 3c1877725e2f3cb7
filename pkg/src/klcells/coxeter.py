"""Elements, words, lengths, descents, Bruhat order and balls.

Four group families are supported:

``finiteA``
    The symmetric group S_n as one-line permutations of {1..n}, generated by
    the adjacent transpositions s_1 .. s_{n-1}.

``affineA``
    The affine symmetric group: bijections w of ZZ with w(i+n) = w(i)+n and
    sum(w(i)-i) = 0, stored as the window (w(1), ..., w(n)).  Generators are
    s_0 .. s_{n-1}; s_i swaps the residue classes of i and i+1 mod n, so s_0
    is the transposition pairing positions 0 and 1 modulo n (this window
    convention is a documented choice; for n = 4 it gives s_0 = [0,2,3,5]).

``extAffineA``
    The extension by the infinite cyclic group of length-zero rotations.
    The rotation r maps i to i+1, conjugates s_i to s_{i+1}, and an element
    r^k * w is stored as the single window of the composite; k is recovered
    as sum(w(i)-i)/n.

``universal``
    The rank-n universal (free) Coxeter group: the only relations are
    s_i^2 = e, so elements are exactly the words with no two equal adjacent
    letters, which serve as their own canonical forms.  Generators are
    numbered 1..n.

Elements are interned per group session: the canonical form maps to a small
integer id, and all hot per-element data (length, descent masks, generator
products, inverses) is cached in id-indexed lists.  Group sessions support
concurrent reads; inserts are serialized by a lock.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .errors import (
    GroupMismatch,
    IndexOutOfRange,
    InfiniteParabolic,
    ParseError,
    ResourceLimit,
    UnsupportedFamily,
)

FINITE_A = "finiteA"
AFFINE_A = "affineA"
EXT_AFFINE_A = "extAffineA"
UNIVERSAL = "universal"

FAMILIES = (FINITE_A, AFFINE_A, EXT_AFFINE_A, UNIVERSAL)

FAMILY_CODES = {
    FINITE_A: "finA",
    AFFINE_A: "affA",
    EXT_AFFINE_A: "extA",
    UNIVERSAL: "univ",
}
CODE_FAMILIES = {v: k for k, v in FAMILY_CODES.items()}


@dataclass(frozen=True)
class GroupDescriptor:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParseError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ParseError("rank parameter n must be >= 1")
        if self.family in (AFFINE_A, EXT_AFFINE_A) and self.n < 2:
            raise ParseError(f"{self.family} requires n >= 2")

    @property
    def code(self) -> str:
        return FAMILY_CODES[self.family]

    def generators(self) -> tuple[int, ...]:
        if self.family == FINITE_A:
            return tuple(range(1, self.n))
        if self.family in (AFFINE_A, EXT_AFFINE_A):
            return tuple(range(self.n))
        return tuple(range(1, self.n + 1))


class Element:
    """A group element: a (group session, interned id) handle.

    Equality and hashing go through the session identity and the id, so
    elements are cheap dictionary keys.  The canonical form is exposed as
    ``form`` (a tuple: one-line permutation, window, or universal word).
    """

    __slots__ = ("group", "eid")

    def __init__(self, group: "Group", eid: int):
        self.group = group
        self.eid = eid

    @property
    def form(self) -> tuple:
        return self.group.form_of(self.eid)

    @property
    def length(self) -> int:
        return self.group.length_of(self.eid)

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.group is other.group
            and self.eid == other.eid
        )

    def __hash__(self):
        return hash((id(self.group), self.eid))

    def __mul__(self, other):
        return multiply(self, other)

    def inverse(self) -> "Element":
        return Element(self.group, self.group.inverse_id(self.eid))

    def __repr__(self):
        return f"<{self.group.descriptor.code}:{format_element(self)}>"

    def __str__(self):
        return format_element(self)


# ---------------------------------------------------------------------------
# raw form arithmetic (family-dispatched, free functions on tuples)
# ---------------------------------------------------------------------------


def _affine_value(window: tuple, n: int, j: int) -> int:
    """w(j) for any integer j, from the window (w(1)..w(n))."""
    q, r = divmod(j - 1, n)
    return window[r] + q * n


def _affine_compose(a: tuple, b: tuple, n: int) -> tuple:
    """(a*b)(i) = a(b(i)) on windows."""
    return tuple(_affine_value(a, n, b[i]) for i in range(n))


def _affine_inverse(w: tuple, n: int) -> tuple:
    inv = [0] * n
    for j, val in enumerate(w, start=1):
        q, r = divmod(val - 1, n)
        inv[r] = j - q * n
    return tuple(inv)


def _affine_length(w: tuple, n: int) -> int:
    # closed inversion-count formula, O(n^2) per element
    total = 0
    for i in range(n):
        wi = w[i]
        for j in range(i + 1, n):
            d = w[j] - wi
            total += abs(d // n) if d < 0 else d // n
    return total


def _perm_length(w: tuple) -> int:
    total = 0
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] > w[j]:
                total += 1
    return total


def _word_reduce(letters: tuple) -> tuple:
    """Cancel equal adjacent letters until none remain (free product of Z/2)."""
    out: list = []
    for c in letters:
        if out and out[-1] == c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


# ---------------------------------------------------------------------------
# group session
# ---------------------------------------------------------------------------


class Group:
    """An interning session for one group: canonical form <-> small id."""

    def __init__(self, descriptor: GroupDescriptor, max_elements: int = 200_000):
        self.descriptor = descriptor
        self.max_elements = max_elements
        self._lock = threading.Lock()
        self._index: dict = {}
        self._forms: list = []
        self._lengths: list = []
        self._inv: list = []
        self._lmul: dict[int, list] = {s: [] for s in descriptor.generators()}
        self._rmul: dict[int, list] = {s: [] for s in descriptor.generators()}
        self._shift1: list = []  # rho-conjugation by one step (affine families)
        self.identity = Element(self, self.intern(self._identity_form()))

    # -- basic info --------------------------------------------------------

    @property
    def family(self) -> str:
        return self.descriptor.family

    @property
    def n(self) -> int:
        return self.descriptor.n

    def generators(self) -> tuple[int, ...]:
        return self.descriptor.generators()

    def generator(self, s: int) -> Element:
        if s not in self._lmul:
            raise IndexOutOfRange(f"generator {s} not valid for {self.descriptor}")
        return Element(self, self._gen_id(s))

    def _identity_form(self) -> tuple:
        if self.family == UNIVERSAL:
            return ()
        return tuple(range(1, self.n + 1))

    def _gen_form(self, s: int) -> tuple:
        n = self.n
        if self.family == UNIVERSAL:
            return (s,)
        if self.family == FINITE_A:
            p = list(range(1, n + 1))
            p[s - 1], p[s] = p[s], p[s - 1]
            return tuple(p)
        w = list(range(1, n + 1))
        if s == 0:
            w[0], w[n - 1] = 0, n + 1
        else:
            w[s - 1], w[s] = s + 1, s
        return tuple(w)

    def _gen_id(self, s: int) -> int:
        return self.intern(self._gen_form(s))

    # -- interning ----------------------------------------------------------

    def intern(self, form: tuple) -> int:
        eid = self._index.get(form)
        if eid is not None:
            return eid
        with self._lock:
            eid = self._index.get(form)
            if eid is not None:
                return eid
            if len(self._forms) >= self.max_elements:
                raise ResourceLimit(
                    f"element cap {self.max_elements} exceeded for {self.descriptor}"
                )
            eid = len(self._forms)
            self._forms.append(form)
            if self.family == UNIVERSAL:
                self._lengths.append(len(form))
            elif self.family == FINITE_A:
                self._lengths.append(_perm_length(form))
            else:
                self._lengths.append(_affine_length(form, self.n))
            self._inv.append(-1)
            for s in self._lmul:
                self._lmul[s].append(-1)
                self._rmul[s].append(-1)
            if self.family in (AFFINE_A, EXT_AFFINE_A):
                self._shift1.append(-1)
            self._index[form] = eid
            return eid

    def form_of(self, eid: int) -> tuple:
        return self._forms[eid]

    def length_of(self, eid: int) -> int:
        return self._lengths[eid]

    def element(self, form) -> Element:
        form = tuple(form)
        self._validate_form(form)
        return Element(self, self.intern(form))

    def _validate_form(self, form: tuple):
        n = self.n
        if self.family == FINITE_A:
            if sorted(form) != list(range(1, n + 1)):
                raise ParseError(f"{form} is not a permutation of 1..{n}")
        elif self.family in (AFFINE_A, EXT_AFFINE_A):
            if len(form) != n:
                raise ParseError(f"window {form} must have {n} entries")
            if len({v % n for v in form}) != n:
                raise ParseError(f"window {form} entries collide modulo {n}")
            k, rem = divmod(sum(form) - n * (n + 1) // 2, n)
            if rem != 0:
                raise ParseError(f"window {form} has non-integral rotation part")
            if self.family == AFFINE_A and k != 0:
                raise ParseError(f"window {form} has rotation part {k} != 0")
        else:
            if any(not (1 <= c <= n) for c in form):
                raise ParseError(f"letters in {form} outside 1..{n}")
            if any(form[i] == form[i + 1] for i in range(len(form) - 1)):
                raise ParseError(f"word {form} has equal adjacent letters")

    # -- per-id cached operations -------------------------------------------

    def mul_gen_right(self, eid: int, s: int) -> int:
        cache = self._rmul[s]
        res = cache[eid]
        if res >= 0:
            return res
        form = self._forms[eid]
        n = self.n
        if self.family == UNIVERSAL:
            out = _word_reduce(form + (s,))
        elif self.family == FINITE_A:
            p = list(form)
            p[s - 1], p[s] = p[s], p[s - 1]
            out = tuple(p)
        else:
            w = list(form)
            if s == 0:
                w[0], w[n - 1] = form[n - 1] - n, form[0] + n
            else:
                w[s - 1], w[s] = form[s], form[s - 1]
            out = tuple(w)
        res = self.intern(out)
        cache[eid] = res
        self._rmul[s][res] = eid  # involution
        return res

    def mul_gen_left(self, eid: int, s: int) -> int:
        cache = self._lmul[s]
        res = cache[eid]
        if res >= 0:
            return res
        form = self._forms[eid]
        n = self.n
        if self.family == UNIVERSAL:
            out = _word_reduce((s,) + form)
        elif self.family == FINITE_A:
            out = tuple(s + 1 if v == s else (s if v == s + 1 else v) for v in form)
        else:
            # apply the transposition of residue classes s, s+1 to the values
            lo = s if s > 0 else 0
            out_list = []
            for v in form:
                r = v % n
                if r == lo % n:
                    out_list.append(v + 1)
                elif r == (lo + 1) % n:
                    out_list.append(v - 1)
                else:
                    out_list.append(v)
            out = tuple(out_list)
        res = self.intern(out)
        cache[eid] = res
        self._lmul[s][res] = eid
        return res

    def mul_ids(self, a: int, b: int) -> int:
        fa, fb = self._forms[a], self._forms[b]
        if self.family == UNIVERSAL:
            return self.intern(_word_reduce(fa + fb))
        if self.family == FINITE_A:
            return self.intern(tuple(fa[v - 1] for v in fb))
        return self.intern(_affine_compose(fa, fb, self.n))

    def inverse_id(self, eid: int) -> int:
        res = self._inv[eid]
        if res >= 0:
            return res
        form = self._forms[eid]
        if self.family == UNIVERSAL:
            out = tuple(reversed(form))
        elif self.family == FINITE_A:
            inv = [0] * self.n
            for i, v in enumerate(form, start=1):
                inv[v - 1] = i
            out = tuple(inv)
        else:
            out = _affine_inverse(form, self.n)
        res = self.intern(out)
        self._inv[eid] = res
        self._inv[res] = eid
        return res

    def shift_id(self, eid: int, k: int = 1) -> int:
        """Conjugation by the k-th power of the diagram rotation."""
        if self.family not in (AFFINE_A, EXT_AFFINE_A):
            raise UnsupportedFamily("rho_shift needs an affine family")
        n = self.n
        k %= n
        if k == 0:
            return eid
        res = eid
        for _ in range(k):
            nxt = self._shift1[res]
            if nxt < 0:
                form = self._forms[res]
                # (r w r^-1)(i) = w(i-1) + 1
                shifted = tuple(
                    _affine_value(form, n, i - 1) + 1 for i in range(1, n + 1)
                )
                nxt = self.intern(shifted)
                self._shift1[res] = nxt
            res = nxt
        return res

    def rotation_part(self, eid: int) -> int:
        """The exponent k with the element in r^k * (affine part)."""
        if self.family not in (AFFINE_A, EXT_AFFINE_A):
            return 0
        form = self._forms[eid]
        n = self.n
        return (sum(form) - n * (n + 1) // 2) // n

    def affine_part_id(self, eid: int) -> tuple[int, int]:
        """Split r^k * w into (k, id of w); the window of w is window - k."""
        k = self.rotation_part(eid)
        if k == 0:
            return 0, eid
        form = self._forms[eid]
        return k, self.intern(tuple(v - k for v in form))

    def with_rotation(self, eid: int, k: int) -> int:
        """The id of r^k * (element eid), eid typically rotation-free."""
        if k == 0:
            return eid
        form = self._forms[eid]
        return self.intern(tuple(v + k for v in form))

    def descents_right(self, eid: int):
        form = self._forms[eid]
        n = self.n
        if self.family == UNIVERSAL:
            return (form[-1],) if form else ()
        if self.family == FINITE_A:
            return tuple(i for i in range(1, n) if form[i - 1] > form[i])
        out = []
        if form[n - 1] - n > form[0]:
            out.append(0)
        out.extend(i for i in range(1, n) if form[i - 1] > form[i])
        return tuple(out)

    def descents_left(self, eid: int):
        form = self._forms[eid]
        n = self.n
        if self.family == UNIVERSAL:
            return (form[0],) if form else ()
        if self.family == FINITE_A:
            pos = [0] * (n + 1)
            for i, v in enumerate(form):
                pos[v] = i
            return tuple(i for i in range(1, n) if pos[i] > pos[i + 1])
        inv = _affine_inverse(form, n)
        out = []
        if inv[n - 1] - n > inv[0]:
            out.append(0)
        out.extend(i for i in range(1, n) if inv[i - 1] > inv[i])
        return tuple(out)


_registry: dict = {}
_registry_lock = threading.Lock()


def get_group(descriptor_or_family, n: int | None = None, max_elements: int = 200_000) -> Group:
    """Fetch the per-process session for a group, creating it on first use."""
    if isinstance(descriptor_or_family, GroupDescriptor):
        desc = descriptor_or_family
    else:
        desc = GroupDescriptor(descriptor_or_family, n)
    with _registry_lock:
        g = _registry.get(desc)
        if g is None:
            g = Group(desc, max_elements=max_elements)
            _registry[desc] = g
        return g


def _as_group(g) -> Group:
    if isinstance(g, Group):
        return g
    if isinstance(g, GroupDescriptor):
        return get_group(g)
    raise ParseError(f"expected a group or descriptor, got {g!r}")


# ---------------------------------------------------------------------------
# spec operations
# ---------------------------------------------------------------------------


def element_from_word(g, word) -> Element:
    """Canonical form of the product s_{i1} ... s_{ir}."""
    group = _as_group(g)
    gens = set(group.generators())
    eid = group.identity.eid
    for s in word:
        if s not in gens:
            raise IndexOutOfRange(f"index {s} invalid for {group.descriptor}")
        eid = group.mul_gen_right(eid, s)
    return Element(group, eid)


def multiply(a: Element, b: Element) -> Element:
    if a.group is not b.group:
        raise GroupMismatch("elements of different group sessions")
    return Element(a.group, a.group.mul_ids(a.eid, b.eid))


def length(w: Element) -> int:
    return w.group.length_of(w.eid)


def descent_set(w: Element, side: str = "right") -> set:
    if side == "right":
        return set(w.group.descents_right(w.eid))
    if side == "left":
        return set(w.group.descents_left(w.eid))
    raise ParseError(f"side must be 'left' or 'right', got {side!r}")


def reduced_word(w: Element) -> tuple[int, ...]:
    """Deterministic rex: repeatedly strip the smallest right descent.

    For extAffineA the word covers only the rotation-free part, so elements
    with a nonzero rotation exponent are rejected (they have no expression in
    the simple generators; use the window form instead).
    """
    group = w.group
    if group.family == UNIVERSAL:
        return group.form_of(w.eid)
    if group.family == EXT_AFFINE_A and group.rotation_part(w.eid) != 0:
        raise UnsupportedFamily(
            "no reduced word exists for an element with nonzero rotation part"
        )
    letters = []
    eid = w.eid
    while True:
        ds = group.descents_right(eid)
        if not ds:
            break
        s = min(ds)
        letters.append(s)
        eid = group.mul_gen_right(eid, s)
    letters.reverse()
    return tuple(letters)


def bruhat_leq(x: Element, w: Element) -> bool:
    """Subword-property Bruhat comparison via the left-descent recursion.

    Equivalent to scanning one fixed rex of w (the greedy-descent one) and
    matching a rex of x as a subword.  Two elements of extAffineA are
    comparable only within equal rotation parts.
    """
    group = x.group
    if group is not w.group:
        raise GroupMismatch("elements of different group sessions")
    if group.family == UNIVERSAL:
        raise UnsupportedFamily("Bruhat order is not supported for universal groups")
    u, v = x.eid, w.eid
    if group.family == EXT_AFFINE_A:
        ku, u = group.affine_part_id(u)
        kv, v = group.affine_part_id(v)
        if ku != kv:
            return False
    while True:
        lv = group.length_of(v)
        if group.length_of(u) > lv:
            return False
        if lv == 0:
            return group.length_of(u) == 0
        s = min(group.descents_left(v))
        v = group.mul_gen_left(v, s)
        su = group.mul_gen_left(u, s)
        if group.length_of(su) < group.length_of(u):
            u = su


def ball(g, L: int, k_range: int | None = None):
    """All elements of length <= L, ordered by (length, canonical form).

    Produced by layered BFS over right generator multiplication.  For
    extAffineA, where infinitely many length-zero rotations exist, the ball
    is additionally truncated to rotation exponents |k| <= k_range
    (defaulting to L); this truncation is part of the ball contract for the
    extended family.
    """
    group = _as_group(g)
    if L < 0:
        raise ParseError("ball radius must be >= 0")
    layer = {group.identity.eid}
    seen = {group.identity.eid}
    gens = group.generators()
    for _ in range(L):
        nxt = set()
        for eid in layer:
            le = group.length_of(eid)
            for s in gens:
                t = group.mul_gen_right(eid, s)
                if group.length_of(t) == le + 1 and t not in seen:
                    nxt.add(t)
        seen |= nxt
        layer = nxt
        if not layer:
            break
    if group.family == EXT_AFFINE_A:
        kr = L if k_range is None else k_range
        out = set()
        for eid in seen:
            for k in range(-kr, kr + 1):
                out.add(group.with_rotation(eid, k))
        seen = out
    order = sorted(seen, key=lambda e: (group.length_of(e), group.form_of(e)))
    return [Element(group, eid) for eid in order]


def rho_shift(w: Element, k: int) -> Element:
    """Conjugation by the k-th power of the diagram rotation."""
    return Element(w.group, w.group.shift_id(w.eid, k))


def _components(indices, n: int, cyclic: bool):
    """Connected components of a generator subset in its Dynkin graph."""
    todo = set(indices)
    comps = []
    while todo:
        start = min(todo)
        comp = [start]
        todo.remove(start)
        grew = True
        while grew:
            grew = False
            for c in list(todo):
                for d in comp:
                    if abs(c - d) == 1 or (cyclic and {c % n, d % n} == {0, n - 1}):
                        comp.append(c)
                        todo.remove(c)
                        grew = True
                        break
        comps.append(sorted(comp))
    return comps


def parabolic_is_finite(g, I) -> bool:
    group = _as_group(g)
    gens = set(group.generators())
    I = set(I)
    if not I <= gens:
        raise IndexOutOfRange(f"generator set {sorted(I)} invalid for {group.descriptor}")
    if group.family == UNIVERSAL:
        return len(I) <= 1
    if group.family in (AFFINE_A, EXT_AFFINE_A):
        return I != gens
    return True


def longest_parabolic(g, I) -> Element:
    """The longest element w_I of a finite standard parabolic subgroup.

    Built componentwise: a connected component on c consecutive generators
    contributes the longest element of a symmetric group on c+1 strands, of
    length binomial(c+1, 2).
    """
    group = _as_group(g)
    if not parabolic_is_finite(group, I):
        raise InfiniteParabolic(f"parabolic on {sorted(set(I))} is infinite")
    I = set(I)
    if not I:
        return group.identity
    if group.family == UNIVERSAL:
        (s,) = I
        return group.generator(s)
    n = group.n
    cyclic = group.family in (AFFINE_A, EXT_AFFINE_A)
    word: list[int] = []
    for comp in _components(I, n, cyclic):
        # list a wrapped affine component as a consecutive run modulo n
        if cyclic and 0 in comp and (n - 1) in comp and len(comp) < n:
            members = set(comp)
            lo = next(c for c in comp if (c - 1) % n not in members)
            comp = [(lo + t) % n for t in range(len(comp))]
        # longest element of the component: s_a, s_{a+1} s_a, s_{a+2} s_{a+1} s_a, ...
        for t in range(len(comp)):
            word.extend(comp[j] for j in range(t, -1, -1))
    elem = element_from_word(group, tuple(word))
    expected = sum(
        (len(c) + 1) * len(c) // 2 for c in _components(I, n, cyclic)
    )
    assert elem.length == expected, (I, elem.length, expected)
    return elem


# ---------------------------------------------------------------------------
# text forms
# ---------------------------------------------------------------------------


def format_element(w: Element) -> str:
    """Canonical text: finite one-line, affine word or window, universal word."""
    group = w.group
    form = group.form_of(w.eid)
    if group.family == FINITE_A:
        return ",".join(str(v) for v in form)
    if group.family == UNIVERSAL:
        return "u:" + "".join(str(c) for c in form)
    if group.family == EXT_AFFINE_A and group.rotation_part(w.eid) != 0:
        return "[" + ",".join(str(v) for v in form) + "]"
    word = reduced_word(w)
    return "w:" + "".join(str(s) for s in word)


def parse_element(g, text: str) -> Element:
    """Accepts one-line, window, word and universal-word forms.

    ``w:0130``    word in the simple generators
    ``[0,2,3,5]`` affine or extended window
    ``2,1,4,3``   finite one-line permutation
    ``u:1213``    universal word
    ``r:2`` / ``r:-1*w:013``  rotation power, optionally times a word
    """
    group = _as_group(g)
    text = text.strip()
    try:
        if text.startswith("r:"):
            if group.family != EXT_AFFINE_A:
                raise ParseError("rotation elements only exist in extAffineA")
            body = text[2:]
            if "*" in body:
                kpart, rest = body.split("*", 1)
                base = parse_element(group, rest)
            else:
                kpart, base = body, group.identity
            return Element(group, group.with_rotation(base.eid, int(kpart)))
        if text.startswith("u:"):
            if group.family != UNIVERSAL:
                raise ParseError("u: form is for the universal family")
            return group.element(tuple(int(c) for c in text[2:]))
        if text.startswith("w:"):
            if group.family == UNIVERSAL:
                return group.element(tuple(int(c) for c in text[2:]))
            return element_from_word(group, tuple(int(c) for c in text[2:]))
        if text.startswith("["):
            if not text.endswith("]"):
                raise ParseError(f"unterminated window {text!r}")
            entries = tuple(int(v) for v in text[1:-1].split(",")) if text != "[]" else ()
            return group.element(entries)
        if group.family == FINITE_A:
            return group.element(tuple(int(v) for v in text.split(",")))
        raise ParseError(f"cannot parse element {text!r} for {group.descriptor}")
    except ParseError:
        raise
    except (ValueError, IndexError) as exc:
        raise ParseError(f"cannot parse element {text!r}: {exc}") from None
