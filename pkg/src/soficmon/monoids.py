"""Finite monoids given by tables and finitely generated monoids given by normal forms.

A :class:`MonoidHandle` is a multiplication oracle over canonical normal forms.
Elements are :class:`Element` values tied to their handle; two handles built
from the same data compare equal, so elements survive a JSON round trip.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetError, DomainError, ValidationError
from .rewriting import RewriteSystem, Word, format_word, parse_word
from .transform import (
    STANDARD,
    Transformation,
    all_transformations,
    check_convention,
    compose,
)

YES, NO, UNKNOWN = "yes", "no", "unknown"

BALL_BUDGET = 10**6


# ---------------------------------------------------------------------------
# finite tables


def _as_table(table) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in table)
    m = len(rows)
    if m == 0:
        raise ValidationError("empty multiplication table")
    for row in rows:
        if len(row) != m:
            raise ValidationError("multiplication table must be square")
        for x in row:
            if not 0 <= x < m:
                raise ValidationError(f"table entry {x} outside [0, {m - 1}]")
    return rows


def associativity_witness(table) -> tuple[int, int, int] | None:
    """First triple (x, y, z) in lexicographic order with (xy)z != x(yz), if any."""
    t = np.asarray(table, dtype=np.int64)
    m = t.shape[0]
    for x in range(m):
        left = t[t[x, :], :]  # (xy)z indexed [y, z]
        right = t[x, t]  # x(yz) indexed [y, z]
        bad = np.argwhere(left != right)
        if len(bad):
            y, z = bad[0]
            return x, int(y), int(z)
    return None


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    def __init__(self, table, names: Sequence[str] | None = None):
        rows = _as_table(table)
        object.__setattr__(self, "table", rows)
        object.__setattr__(self, "names", _names(names, len(rows)))
        witness = associativity_witness(rows)
        if witness is not None:
            x, y, z = witness
            raise ValidationError(f"not associative: ({x}*{y})*{z} != {x}*({y}*{z})", witness=witness)

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]


def _names(names, m) -> tuple[str, ...]:
    if names is None:
        return tuple(str(i) for i in range(m))
    names = tuple(str(n) for n in names)
    if len(names) != m or len(set(names)) != m:
        raise ValidationError("element names must be distinct, one per table row")
    return names


@dataclass(frozen=True, eq=False)
class FiniteMonoid(FiniteSemigroup):
    identity: int = 0

    def __init__(self, table, identity: int, names: Sequence[str] | None = None):
        super().__init__(table, names)
        m = self.size
        if not 0 <= identity < m:
            raise ValidationError(f"identity index {identity} out of range")
        for x in range(m):
            if self.table[identity][x] != x or self.table[x][identity] != x:
                raise ValidationError(f"index {identity} is not a two-sided identity", witness=x)
        object.__setattr__(self, "identity", identity)

    def __eq__(self, other):
        return (isinstance(other, FiniteMonoid) and self.table == other.table
                and self.identity == other.identity and self.names == other.names)

    def __hash__(self):
        return hash((self.table, self.identity, self.names))

    def opposite(self) -> "FiniteMonoid":
        m = self.size
        return FiniteMonoid([[self.table[y][x] for y in range(m)] for x in range(m)],
                            self.identity, self.names)


def finite_from_table(table, identity_index: int, names=None) -> FiniteMonoid:
    return FiniteMonoid(table, identity_index, names)


def full_map_monoid(n: int, convention: str = STANDARD) -> FiniteMonoid:
    """Map({0..n-1}) as a table; elements are named by their image strings."""
    check_convention(convention)
    if not 1 <= n <= 4:
        raise BudgetError("full_map_monoid supports 1 <= n <= 4")
    maps = all_transformations(n)
    index = {f: i for i, f in enumerate(maps)}
    table = [[index[compose(f, g, convention)] for g in maps] for f in maps]
    names = ["".join(map(str, f.images)) for f in maps]
    return FiniteMonoid(table, index[Transformation.identity(n)], names)


def cyclic_group(k: int) -> FiniteMonoid:
    return FiniteMonoid([[(i + j) % k for j in range(k)] for i in range(k)], 0)


def direct_product(a: FiniteMonoid, b: FiniteMonoid) -> FiniteMonoid:
    pairs = list(iproduct(range(a.size), range(b.size)))
    index = {p: i for i, p in enumerate(pairs)}
    table = [[index[(a.mul(x1, y1), b.mul(x2, y2))] for (y1, y2) in pairs] for (x1, x2) in pairs]
    names = [f"({a.names[x]},{b.names[y]})" for x, y in pairs]
    return FiniteMonoid(table, index[(a.identity, b.identity)], names)


def is_left_cancellative(m: FiniteSemigroup) -> bool:
    return all(len(set(row)) == len(row) for row in m.table)


def is_right_cancellative(m: FiniteSemigroup) -> bool:
    n = m.size
    return all(len({m.table[x][y] for x in range(n)}) == n for y in range(n))


def left_regular_embedding(m: FiniteMonoid) -> dict[int, Transformation]:
    """x -> L_x (y -> xy); a monoid morphism into Map(M) for standard composition."""
    return {x: Transformation(m.table[x]) for x in range(m.size)}


def right_regular_embedding(m: FiniteMonoid) -> dict[int, Transformation]:
    """x -> R_x (y -> yx); a monoid morphism for diagrammatic composition."""
    return {x: Transformation(m.table[y][x] for y in range(m.size)) for x in range(m.size)}


def adjoin_identity(s: FiniteSemigroup) -> FiniteMonoid:
    """M(S) = S + {1}; the new identity gets index |S| and the name "1"."""
    k = s.size
    table = [list(row) + [x] for x, row in enumerate(s.table)]
    table.append(list(range(k + 1)))
    names = list(s.names) + ["1" if "1" not in s.names else "1_M"]
    return FiniteMonoid(table, k, names)


def left_zero_semigroup(k: int) -> FiniteSemigroup:
    return FiniteSemigroup([[x] * k for x in range(k)], [chr(ord("a") + i) for i in range(k)])


def right_zero_semigroup(k: int) -> FiniteSemigroup:
    return FiniteSemigroup([list(range(k)) for _ in range(k)], [chr(ord("a") + i) for i in range(k)])


# ---------------------------------------------------------------------------
# handles


@dataclass(frozen=True)
class Element:
    handle: "MonoidHandle"
    normal_form: tuple

    def __repr__(self):
        return f"<{self.handle.kind}:{self.label}>"

    @property
    def label(self) -> str:
        return self.handle.label(self)

    def __mul__(self, other: "Element") -> "Element":
        return self.handle.multiply(self, other)


class MonoidHandle:
    """Finitely generated monoid with canonical normal forms."""

    kind = "abstract"
    left_cancellative = UNKNOWN

    def __init__(self, generators: Sequence[str]):
        self.generators = tuple(generators)

    # subclasses provide: _key, _normalize_word, _mul, label, sort_key, parse
    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        return type(self) is type(other) and hash(self) == hash(other) and self._key() == other._key()

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            self._hash = hash((type(self).__name__, self._key()))
            return self._hash

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(self.generators)})"

    def element(self, nf) -> Element:
        return Element(self, tuple(nf))

    def identity(self) -> Element:
        return self.normalize(())

    def generator_elements(self) -> list[Element]:
        return [self.normalize((i,)) for i in range(len(self.generators))]

    def generator(self, label: str) -> Element:
        return self.normalize((self.generators.index(label),))

    def normalize(self, word) -> Element:
        if isinstance(word, str):
            word = parse_word(word, self.generators)
        word = tuple(word)
        if any(not 0 <= i < len(self.generators) for i in word):
            raise DomainError(f"word {word} uses a letter outside the generators")
        return self._normalize_word(word)

    def multiply(self, x: Element, y: Element) -> Element:
        if x.handle != self or y.handle != self:
            raise DomainError("elements belong to a different monoid")
        return self._mul(x, y)

    def product(self, elements: Iterable[Element]) -> Element:
        acc = self.identity()
        for e in elements:
            acc = self.multiply(acc, e)
        return acc

    def label(self, e: Element) -> str:
        raise NotImplementedError

    def sort_key(self, e: Element):
        raise NotImplementedError

    def parse(self, text: str) -> Element:
        return self.normalize(parse_word(text, self.generators))

    def sorted(self, elements: Iterable[Element]) -> list[Element]:
        return sorted(set(elements), key=self.sort_key)

    def ball_distances(self, r: int, budget: int = BALL_BUDGET) -> dict[Element, int]:
        """BFS over right multiplication by generators, up to depth r."""
        if r < 0:
            raise ValueError("radius must be non-negative")
        one = self.identity()
        dist = {one: 0}
        frontier = [one]
        gens = self.generator_elements()
        for d in range(1, r + 1):
            nxt = []
            for s in frontier:
                for g in gens:
                    t = self._mul(s, g)
                    if t not in dist:
                        dist[t] = d
                        nxt.append(t)
                        if len(dist) > budget:
                            raise BudgetError(f"ball of radius {r} exceeds {budget} elements")
            frontier = nxt
            if not frontier:
                break
        return dist

    def opposite(self) -> "MonoidHandle":
        return OppositeMonoid(self)

    def to_json(self) -> dict:
        raise NotImplementedError


def elements_ball(h: MonoidHandle, r: int, budget: int = BALL_BUDGET) -> list[Element]:
    """B_r(1_M) in shortlex order of normal forms."""
    return h.sorted(h.ball_distances(r, budget))


def word_length(h: MonoidHandle, e: Element, max_radius: int = 64, budget: int = BALL_BUDGET) -> int:
    """Least r with e in B_r(1_M)."""
    frontier = {h.identity()}
    seen = set(frontier)
    gens = h.generator_elements()
    for d in range(max_radius + 1):
        if e in frontier:
            return d
        nxt = {h.multiply(s, g) for s in frontier for g in gens} - seen
        seen |= nxt
        if len(seen) > budget:
            raise BudgetError("word length search exceeded budget")
        frontier = nxt
        if not frontier:
            break
    raise BudgetError(f"{e.label} not reached within radius {max_radius}")


def normalize(h: MonoidHandle, word) -> Element:
    return h.normalize(word)


def multiply(x: Element, y: Element) -> Element:
    if x.handle != y.handle:
        raise DomainError("elements belong to different monoids")
    return x.handle.multiply(x, y)


def folner_interior(h: MonoidHandle, omega: Iterable[Element], k: Iterable[Element]) -> list[Element]:
    """{s in omega : sK contained in omega}.

    Candidates are drawn from ``omega``; when 1 is in K this is the whole
    interior, since s = s1 must lie in omega.
    """
    omega = set(omega)
    k = list(k)
    return h.sorted(s for s in omega if all(h.multiply(s, t) in omega for t in k))


class FreeMonoid(MonoidHandle):
    kind = "free"
    left_cancellative = YES

    def _key(self):
        return self.generators

    def _normalize_word(self, word):
        return self.element(word)

    def _mul(self, x, y):
        return self.element(x.normal_form + y.normal_form)

    def label(self, e):
        return format_word(e.normal_form, self.generators)

    def sort_key(self, e):
        return (len(e.normal_form), e.normal_form)

    def to_json(self):
        return {"kind": "free", "alphabet": list(self.generators)}


class FreeCommutativeMonoid(MonoidHandle):
    """Normal form: the exponent vector."""

    kind = "free_commutative"
    left_cancellative = YES

    def __init__(self, generators: Sequence[str] | int):
        if isinstance(generators, int):
            generators = [f"x{i + 1}" for i in range(generators)]
        super().__init__(generators)

    def _key(self):
        return self.generators

    def _normalize_word(self, word):
        exps = [0] * len(self.generators)
        for i in word:
            exps[i] += 1
        return self.element(exps)

    def _mul(self, x, y):
        return self.element(a + b for a, b in zip(x.normal_form, y.normal_form))

    def _word(self, e):
        return tuple(i for i, c in enumerate(e.normal_form) for _ in range(c))

    def label(self, e):
        return format_word(self._word(e), self.generators)

    def sort_key(self, e):
        w = self._word(e)
        return (len(w), w)

    def opposite(self):
        return self

    def to_json(self):
        return {"kind": "free_commutative", "alphabet": list(self.generators)}


class Naturals(MonoidHandle):
    """(N, +) generated by 1; elements are labelled by their decimal value."""

    kind = "naturals"
    left_cancellative = YES

    def __init__(self):
        super().__init__(["1"])

    def _key(self):
        return ()

    def _normalize_word(self, word):
        return self.element((len(word),))

    def _mul(self, x, y):
        return self.element((x.normal_form[0] + y.normal_form[0],))

    def value(self, n: int) -> Element:
        if n < 0:
            raise DomainError("naturals are non-negative")
        return self.element((n,))

    def label(self, e):
        return str(e.normal_form[0])

    def sort_key(self, e):
        return e.normal_form

    def parse(self, text):
        try:
            return self.value(int(text))
        except ValueError:
            raise ValidationError(f"not a natural number: {text!r}") from None

    def opposite(self):
        return self

    def to_json(self):
        return {"kind": "naturals"}


class Bicyclic(MonoidHandle):
    """<p, q : pq = 1>; the element q^a p^b has normal form (a, b)."""

    kind = "bicyclic"
    left_cancellative = NO

    def __init__(self):
        super().__init__(["p", "q"])

    def _key(self):
        return ()

    def _normalize_word(self, word):
        a = b = 0
        for letter in word:
            if letter == 0:  # p
                b += 1
            elif b:  # q cancels a pending p
                b -= 1
            else:
                a += 1
        return self.element((a, b))

    def _mul(self, x, y):
        a, b = x.normal_form
        c, d = y.normal_form
        if b <= c:
            return self.element((a + c - b, d))
        return self.element((a, b - c + d))

    def pair(self, a: int, b: int) -> Element:
        if a < 0 or b < 0:
            raise DomainError("exponents must be non-negative")
        return self.element((a, b))

    def word(self, e) -> Word:
        a, b = e.normal_form
        return (1,) * a + (0,) * b

    def label(self, e):
        return format_word(self.word(e), self.generators)

    def sort_key(self, e):
        w = self.word(e)
        return (len(w), w)

    def to_json(self):
        return {"kind": "bicyclic"}


def bicyclic_opposite_isomorphism(e: Element) -> Element:
    """The map exchanging p and q, sending q^a p^b to q^b p^a.

    It is an anti-automorphism of the bicyclic monoid, i.e. an isomorphism from
    the opposite monoid onto the monoid itself.
    """
    a, b = e.normal_form
    return e.handle.element((b, a))


class FiniteMonoidHandle(MonoidHandle):
    kind = "finite"

    def __init__(self, monoid: FiniteMonoid, generators: dict[str, int] | Sequence[int] | None = None):
        if generators is None:
            generators = [i for i in range(monoid.size) if i != monoid.identity]
        if not isinstance(generators, dict):
            generators = {monoid.names[i]: i for i in generators}
        for label, idx in generators.items():
            if not 0 <= idx < monoid.size:
                raise ValidationError(f"generator {label!r} index {idx} out of range")
        super().__init__(list(generators))
        self.monoid = monoid
        self.gen_index = tuple(generators.values())
        self.left_cancellative = YES if is_left_cancellative(monoid) else NO
        self._by_name = {n: i for i, n in enumerate(monoid.names)}

    def _key(self):
        return (self.monoid, self.generators, self.gen_index)

    def _normalize_word(self, word):
        acc = self.monoid.identity
        for i in word:
            acc = self.monoid.mul(acc, self.gen_index[i])
        return self.element((acc,))

    def _mul(self, x, y):
        return self.element((self.monoid.mul(x.normal_form[0], y.normal_form[0]),))

    def at(self, index: int) -> Element:
        return self.element((index,))

    def index(self, e: Element) -> int:
        return e.normal_form[0]

    def all_elements(self) -> list[Element]:
        return [self.at(i) for i in range(self.monoid.size)]

    def label(self, e):
        return self.monoid.names[e.normal_form[0]]

    def sort_key(self, e):
        # identity first (empty word), then table order
        i = e.normal_form[0]
        return (i != self.monoid.identity, i)

    def parse(self, text):
        if text in self._by_name:
            return self.at(self._by_name[text])
        return super().parse(text)

    def opposite(self):
        return FiniteMonoidHandle(self.monoid.opposite(), dict(zip(self.generators, self.gen_index)))

    def to_json(self):
        return {
            "kind": "finite",
            "table": [list(r) for r in self.monoid.table],
            "identity": self.monoid.identity,
            "names": list(self.monoid.names),
            "generators": dict(zip(self.generators, self.gen_index)),
        }


class RewritingMonoid(MonoidHandle):
    kind = "rewriting"

    def __init__(self, system: RewriteSystem, left_cancellative: str = UNKNOWN):
        super().__init__(system.alphabet)
        self.system = system
        self.left_cancellative = left_cancellative

    @classmethod
    def from_strings(cls, alphabet, rules, **kw):
        return cls(RewriteSystem.from_strings(alphabet, rules), **kw)

    def _key(self):
        return (self.system.alphabet, self.system.rules)

    def _normalize_word(self, word):
        return self.element(self.system.normalize(word))

    def _mul(self, x, y):
        return self.element(self.system.normalize(x.normal_form + y.normal_form))

    def label(self, e):
        return format_word(e.normal_form, self.generators)

    def sort_key(self, e):
        return (len(e.normal_form), e.normal_form)

    def opposite(self):
        return RewritingMonoid(self.system.reversed())

    def to_json(self):
        return {
            "kind": "rewriting",
            "alphabet": list(self.generators),
            "rules": [[self.system.show(l) if l else "", self.system.show(r) if r else ""]
                      for l, r in self.system.rules],
        }


class OppositeMonoid(MonoidHandle):
    """Same elements, reversed multiplication."""

    kind = "opposite"

    def __init__(self, base: MonoidHandle):
        super().__init__(base.generators)
        self.base = base

    def _key(self):
        return (type(self.base).__name__, self.base._key())

    def _lift(self, e: Element) -> Element:
        return self.element(e.normal_form)

    def _down(self, e: Element) -> Element:
        return self.base.element(e.normal_form)

    def _normalize_word(self, word):
        return self._lift(self.base.normalize(tuple(reversed(word))))

    def _mul(self, x, y):
        return self._lift(self.base.multiply(self._down(y), self._down(x)))

    def label(self, e):
        return self.base.label(self._down(e))

    def sort_key(self, e):
        return self.base.sort_key(self._down(e))

    def parse(self, text):
        return self._lift(self.base.parse(text))

    def opposite(self):
        return self.base

    def to_json(self):
        return {"kind": "opposite", "base": self.base.to_json()}


class ProductMonoid(MonoidHandle):
    """Direct product M1 x M2, generated by (s, 1) and (1, t)."""

    kind = "product"

    def __init__(self, first: MonoidHandle, second: MonoidHandle):
        self.first, self.second = first, second
        one1, one2 = first.identity(), second.identity()
        self._gens = [(g, one2) for g in first.generator_elements()] + \
                     [(one1, g) for g in second.generator_elements()]
        super().__init__([f"({a.label},{b.label})" for a, b in self._gens])
        flags = {first.left_cancellative, second.left_cancellative}
        self.left_cancellative = NO if NO in flags else (YES if flags == {YES} else UNKNOWN)

    def _key(self):
        return (self.first, self.second)

    def pair(self, a: Element, b: Element) -> Element:
        if a.handle != self.first or b.handle != self.second:
            raise DomainError("components belong to the wrong factors")
        return self.element((a, b))

    def _normalize_word(self, word):
        a, b = self.first.identity(), self.second.identity()
        for i in word:
            ga, gb = self._gens[i]
            a, b = self.first.multiply(a, ga), self.second.multiply(b, gb)
        return self.element((a, b))

    def _mul(self, x, y):
        (a1, b1), (a2, b2) = x.normal_form, y.normal_form
        return self.element((self.first.multiply(a1, a2), self.second.multiply(b1, b2)))

    def label(self, e):
        a, b = e.normal_form
        return f"({a.label},{b.label})"

    def sort_key(self, e):
        a, b = e.normal_form
        return (self.first.sort_key(a), self.second.sort_key(b))

    def parse(self, text):
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            inner = text[1:-1]
            depth = 0
            for i, ch in enumerate(inner):
                depth += ch == "("
                depth -= ch == ")"
                if ch == "," and depth == 0:
                    return self.pair(self.first.parse(inner[:i]), self.second.parse(inner[i + 1:]))
        raise ValidationError(f"product elements are written (x,y), got {text!r}")

    def to_json(self):
        return {"kind": "product", "factors": [self.first.to_json(), self.second.to_json()]}


# ---------------------------------------------------------------------------
# named constructions used throughout the examples


def idempotent_monoid() -> FiniteMonoidHandle:
    """{1, a} with a^2 = a, generated by a."""
    m = adjoin_identity(FiniteSemigroup([[0]], ["a"]))
    return FiniteMonoidHandle(m, {"a": 0})


def map2_monoid() -> FiniteMonoidHandle:
    """Map({0,1}) = {1, a, c0, c1} with diagrammatic products, generated by a and c0.

    a swaps 0 and 1, c_y is constant y.  With diagrammatic composition the
    Cayley edges are (c_x, a, c_{1-x}) and (m, c0, c0).
    """
    base = full_map_monoid(2, "diagrammatic")
    rename = {"01": "1", "10": "a", "00": "c0", "11": "c1"}
    m = FiniteMonoid(base.table, base.identity, [rename[n] for n in base.names])
    return FiniteMonoidHandle(m, {"a": m.names.index("a"), "c0": m.names.index("c0")})


def cyclic_group_handle(k: int) -> FiniteMonoidHandle:
    return FiniteMonoidHandle(cyclic_group(k), {"1": 1 % k})


def klein_four_handle() -> FiniteMonoidHandle:
    z2 = cyclic_group(2)
    m = direct_product(z2, z2)
    return FiniteMonoidHandle(m, {"(1,0)": m.names.index("(1,0)"), "(0,1)": m.names.index("(0,1)")})


def bicyclic_rewriting() -> RewritingMonoid:
    """The bicyclic monoid via the single rule pq -> 1."""
    return RewritingMonoid.from_strings(["p", "q"], [("pq", "")], left_cancellative=NO)


def handle_from_spec(spec) -> MonoidHandle:
    """Build a handle from its JSON description or from a builtin name."""
    if isinstance(spec, str):
        return builtin_handle(spec)
    kind = spec.get("kind")
    if kind == "naturals":
        return Naturals()
    if kind == "bicyclic":
        return Bicyclic()
    if kind == "free":
        return FreeMonoid(spec["alphabet"])
    if kind == "free_commutative":
        return FreeCommutativeMonoid(spec.get("alphabet", spec.get("k")))
    if kind == "finite":
        m = FiniteMonoid(spec["table"], spec.get("identity", 0), spec.get("names"))
        gens = spec.get("generators")
        if gens is None:
            raise ValidationError("finite monoids need an explicit generator list")
        return FiniteMonoidHandle(m, gens)
    if kind == "full_map":
        m = full_map_monoid(spec["n"], spec.get("convention", STANDARD))
        gens = spec.get("generators")
        if gens is None:
            raise ValidationError("full_map monoids need an explicit generator list")
        if isinstance(gens, list):
            gens = {g: m.names.index(g) for g in gens}
        return FiniteMonoidHandle(m, gens)
    if kind == "rewriting":
        flag = spec.get("left_cancellative", UNKNOWN)
        return RewritingMonoid.from_strings(spec["alphabet"], spec["rules"], left_cancellative=flag)
    if kind == "opposite":
        return handle_from_spec(spec["base"]).opposite()
    if kind == "product":
        a, b = spec["factors"]
        return ProductMonoid(handle_from_spec(a), handle_from_spec(b))
    raise ValidationError(f"unknown monoid kind {kind!r}")


BUILTINS = ("naturals", "bicyclic", "idempotent", "map2", "klein", "z<k>", "free:<letters>")


def builtin_handle(name: str) -> MonoidHandle:
    if name == "naturals":
        return Naturals()
    if name == "bicyclic":
        return Bicyclic()
    if name == "idempotent":
        return idempotent_monoid()
    if name == "map2":
        return map2_monoid()
    if name == "klein":
        return klein_four_handle()
    if name.startswith("z") and name[1:].isdigit() and int(name[1:]) >= 1:
        return cyclic_group_handle(int(name[1:]))
    if name.startswith("free:") and len(name) > 5:
        return FreeMonoid(list(name[5:]))
    raise ValidationError(f"unknown builtin monoid {name!r}; known: {', '.join(BUILTINS)}")
