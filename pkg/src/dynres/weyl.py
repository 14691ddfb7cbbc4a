"""Weyl group combinatorics driven by orbits of weights.

A group element is identified by its image of rho, which is regular, so the
orbit of rho is in bijection with W. Parabolic quotients W^{P_t} are the orbit
of omega_t. Nothing here stores the full group unless asked to enumerate it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import EnumerationBudgetExceeded, NonDynkinFormat, NonFiniteType, UnsupportedF0
from .lie_core import Format, TShape, format_to_shape, is_dynkin_format, root_system

Vec = tuple[int, ...]


def reflect_weight(cartan, c: Vec, i: int) -> Vec:
    ci = c[i]
    if ci == 0:
        return c
    row = cartan[i]
    return tuple(x - ci * a for x, a in zip(c, row))


def reflect(shape: TShape, v, i: int, coords: str = "weight"):
    """s_i(v) = v - <alpha_i^vee, v> alpha_i, in fundamental ("weight") or simple-root ("root") coordinates."""
    rs = root_system(shape)
    if coords == "weight":
        return reflect_weight(rs.cartan, tuple(v), i)
    if coords == "root":
        c = rs.pairing(i, v)
        out = list(v)
        out[i] -= c
        return tuple(out)
    raise ValueError(coords)


def apply_word(cartan, word, c: Vec) -> Vec:
    """Apply s_{w1} s_{w2} ... s_{wk} to c (rightmost letter acts first)."""
    for i in reversed(word):
        c = reflect_weight(cartan, c, i)
    return c


def descent_word(cartan, c: Vec) -> tuple[int, ...]:
    """Lexicographically smallest reduced word of the minimal element sending the dominant weight of c's orbit to c."""
    word = []
    while True:
        i = next((k for k, x in enumerate(c) if x < 0), None)
        if i is None:
            return tuple(word)
        word.append(i)
        c = reflect_weight(cartan, c, i)


class WeylElement:
    """Element of W stored as its image of rho."""

    __slots__ = ("shape", "key", "_word", "_perm")

    def __init__(self, shape: TShape, key: Vec):
        self.shape = shape
        self.key = key
        self._word = None
        self._perm = None

    @classmethod
    def from_word(cls, shape: TShape, word) -> "WeylElement":
        rs = root_system(shape)
        return cls(shape, apply_word(rs.cartan, tuple(word), rs.rho))

    @classmethod
    def identity(cls, shape: TShape) -> "WeylElement":
        return cls(shape, root_system(shape).rho)

    @property
    def word(self) -> tuple[int, ...]:
        if self._word is None:
            self._word = descent_word(root_system(self.shape).cartan, self.key)
        return self._word

    @property
    def labels(self) -> tuple[str, ...]:
        nodes = self.shape.nodes
        return tuple(nodes[i] for i in self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    def act_weight(self, c) -> Vec:
        return apply_word(root_system(self.shape).cartan, self.word, tuple(c))

    def act_root(self, root) -> Vec:
        rs = root_system(self.shape)
        out = tuple(root)
        for i in reversed(self.word):
            out = reflect(self.shape, out, i, "root")
        return out

    @property
    def root_permutation(self) -> dict:
        if self._perm is None:
            self._perm = {a: self.act_root(a) for a in root_system(self.shape).roots}
        return self._perm

    def inversions(self) -> int:
        return sum(1 for a in root_system(self.shape).positive if min(self.act_root(a)) < 0)

    def is_left_descent(self, i: int) -> bool:
        return self.key[i] < 0

    def left_mul(self, i: int) -> "WeylElement":
        return WeylElement(self.shape, reflect_weight(root_system(self.shape).cartan, self.key, i))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(self.shape, self.act_weight(other.key))

    def inverse(self) -> "WeylElement":
        return WeylElement.from_word(self.shape, tuple(reversed(self.word)))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.shape == other.shape and self.key == other.key

    def __hash__(self):
        return hash((self.shape, self.key))

    def __repr__(self):
        return f"WeylElement({','.join(self.labels) or 'e'})"


def parse_word(shape: TShape, text: str) -> tuple[int, ...]:
    text = text.strip()
    if text.startswith("s:"):
        text = text[2:]
    if text in ("", "e"):
        return ()
    return tuple(shape.index(s.strip()) for s in text.split(","))


def longest_element(shape: TShape) -> WeylElement:
    rs = root_system(shape)
    c = rs.rho
    while True:
        i = next((k for k, x in enumerate(c) if x > 0), None)
        if i is None:
            return WeylElement(shape, c)
        c = reflect_weight(rs.cartan, c, i)


def enumerate_group(shape: TShape, limit: int = 200_000) -> list[WeylElement]:
    rs = root_system(shape)
    seen = {rs.rho}
    order = [rs.rho]
    frontier = [rs.rho]
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(rs.n):
                if c[i] > 0:
                    d = reflect_weight(rs.cartan, c, i)
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
                        if len(seen) > limit:
                            raise EnumerationBudgetExceeded(f"|W| exceeds {limit}")
        order.extend(nxt)
        frontier = nxt
    return [WeylElement(shape, c) for c in order]


def bruhat_leq(u: WeylElement, w: WeylElement) -> bool:
    """Bruhat order, decided by the lifting property.

    If s is a left descent of w then u <= w iff su <= sw (when s is also a
    descent of u) or u <= sw (otherwise). This is equivalent to the subword
    criterion; the test suite checks the two against each other.
    """
    if u.shape != w.shape:
        raise ValueError("elements of different groups")
    return _bruhat(u.shape, u.key, w.key)


@lru_cache(maxsize=1 << 20)
def _bruhat(shape: TShape, u: Vec, w: Vec) -> bool:
    cartan = root_system(shape).cartan
    while True:
        s = next((k for k, x in enumerate(w) if x < 0), None)
        if s is None:
            return all(x > 0 for x in u)
        if sum(1 for x in u if x < 0) == 0:
            return True
        if u[s] < 0:
            u = reflect_weight(cartan, u, s)
        w = reflect_weight(cartan, w, s)


@dataclass(frozen=True)
class ParabolicQuotient:
    shape: TShape
    t: int
    weights: tuple[Vec, ...]
    words: tuple[tuple[int, ...], ...]
    index: dict = field(compare=False, repr=False)

    def __len__(self):
        return len(self.weights)

    def element(self, k: int) -> WeylElement:
        return WeylElement.from_word(self.shape, self.words[k])

    def length(self, k: int) -> int:
        return len(self.words[k])


def _orbit(cartan, start: Vec, limit: int) -> list[Vec]:
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            for i, x in enumerate(c):
                if x > 0:
                    d = reflect_weight(cartan, c, i)
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
        if len(seen) > limit:
            raise EnumerationBudgetExceeded(f"orbit exceeds {limit} points")
        order.extend(nxt)
        frontier = nxt
    return order


@lru_cache(maxsize=64)
def parabolic_quotient(shape: TShape, t: int, limit: int = 2_000_000) -> ParabolicQuotient:
    rs = root_system(shape)
    orbit = _orbit(rs.cartan, rs.fundamental_weight(t), limit)
    # orbit is produced level by level, so each weight's descent target is already known
    words: dict[Vec, tuple[int, ...]] = {}
    for c in orbit:
        i = next((k for k, x in enumerate(c) if x < 0), None)
        words[c] = () if i is None else (i,) + words[reflect_weight(rs.cartan, c, i)]
    ordered = sorted(orbit, key=lambda c: (len(words[c]), words[c]))
    return ParabolicQuotient(
        shape, t, tuple(ordered), tuple(words[c] for c in ordered),
        {c: k for k, c in enumerate(ordered)},
    )


@dataclass(frozen=True)
class DoubleCoset:
    rep: int  # index into the quotient; the minimal element of the class
    members: tuple[int, ...]


@dataclass(frozen=True)
class DoubleCosetTable:
    shape: TShape
    j: int
    t: int
    quotient: ParabolicQuotient
    cosets: tuple[DoubleCoset, ...]

    def __len__(self):
        return len(self.cosets)

    def rep_word(self, k: int) -> tuple[int, ...]:
        return self.quotient.words[self.cosets[k].rep]

    def rep_labels(self, k: int) -> tuple[str, ...]:
        return tuple(self.shape.nodes[i] for i in self.rep_word(k))

    def rep_weight(self, k: int) -> Vec:
        return self.quotient.weights[self.cosets[k].rep]


@lru_cache(maxsize=64)
def double_cosets(shape: TShape, j: int, t: int) -> DoubleCosetTable:
    rs = root_system(shape)
    quo = parabolic_quotient(shape, t)
    gens = [i for i in range(rs.n) if i != j]
    label = [-1] * len(quo)
    classes = []
    for start in range(len(quo)):
        if label[start] >= 0:
            continue
        cid = len(classes)
        label[start] = cid
        stack, members = [start], [start]
        while stack:
            k = stack.pop()
            c = quo.weights[k]
            for i in gens:
                if c[i] == 0:
                    continue
                m = quo.index[reflect_weight(rs.cartan, c, i)]
                if label[m] < 0:
                    label[m] = cid
                    stack.append(m)
                    members.append(m)
        # start is the first unlabelled index in length-lex order, hence minimal
        classes.append(DoubleCoset(start, tuple(sorted(members))))
    return DoubleCosetTable(shape, j, t, quo, tuple(classes))


def table_shape(d: int, t: int) -> TShape:
    return TShape(2, d + 1, t + 1)


def count_table(d: int, t: int) -> int:
    """Number of double cosets W_{P_z1} \\ W / W_{P_x1} for T_{2,d+1,t+1}."""
    if d < 0 or t < 1:
        raise NonFiniteType(f"(d,t)=({d},{t}) is outside the table")
    shape = table_shape(d, t)
    from .lie_core import classify_type
    if not classify_type(shape).finite:
        raise NonFiniteType(f"{shape.name()} is not of finite type")
    return len(double_cosets(shape, shape.index("z1"), shape.index("x1")))


def _count_extended(d: int, t: int) -> int:
    # Outside the table there are no Betti numbers to realize, so only [e] remains.
    if d < 0 or t < 1:
        return 1
    return count_table(d, t)


def family_count(f: Format) -> int:
    """Families with Betti numbers exactly (1, 3+d, 2+d+t, t), by inclusion-exclusion on #(d,t)."""
    if f.f0 != 1:
        raise UnsupportedF0("family counts are defined for f0 = 1")
    if not is_dynkin_format(f):
        raise NonDynkinFormat(f"{f} is not a Dynkin format")
    d, t = f.f1 - 3, f.f3
    return (_count_extended(d, t) - _count_extended(d - 1, t)
            - _count_extended(d, t - 1) + _count_extended(d - 1, t - 1))


TABLE_ROWS = {0: 5, 1: 5, 2: 4, 3: 2, 4: 2, 5: 1}


def table2() -> dict[int, list[int]]:
    """The grid of #(d,t) for the finite-type range, rows d = 0..5."""
    return {d: [count_table(d, t) for t in range(1, n + 1)] for d, n in TABLE_ROWS.items()}


def format_coset_table(f: Format) -> DoubleCosetTable:
    shape = format_to_shape(f)
    if not is_dynkin_format(f):
        raise NonDynkinFormat(f"{f} is not a Dynkin format")
    return double_cosets(shape, shape.index("z1"), shape.index("x1"))
