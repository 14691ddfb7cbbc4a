"""Three-armed diagrams T_{p,q,r}, their root systems, and resolution formats.

Node order is fixed everywhere as x_{p-1}..x_1, u, y_1..y_{q-1}, z_1..z_{r-1}.
Vectors are plain tuples: roots in simple-root coordinates, weights in
fundamental-weight coordinates unless a function says otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import MalformedFormat, NonFiniteType, SingularCartan


@dataclass(frozen=True)
class TShape:
    p: int
    q: int
    r: int

    def __post_init__(self):
        if min(self.p, self.q, self.r) < 1:
            raise MalformedFormat(f"arm lengths must be >= 1, got {self}")

    @property
    def nodes(self) -> tuple[str, ...]:
        xs = [f"x{i}" for i in range(self.p - 1, 0, -1)]
        ys = [f"y{i}" for i in range(1, self.q)]
        zs = [f"z{i}" for i in range(1, self.r)]
        return tuple(xs + ["u"] + ys + zs)

    @property
    def rank(self) -> int:
        return self.p + self.q + self.r - 2

    def index(self, label: str) -> int:
        try:
            return self.nodes.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a node of {self.name()}") from None

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for arm, length in (("x", self.p), ("y", self.q), ("z", self.r)):
            prev = "u"
            for k in range(1, length):
                cur = f"{arm}{k}"
                out.append((self.index(prev), self.index(cur)))
                prev = cur
        return out

    def name(self) -> str:
        return f"T_{{{self.p},{self.q},{self.r}}}"

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "r": self.r}


@dataclass(frozen=True)
class Format:
    f0: int
    f1: int
    f2: int
    f3: int

    def __post_init__(self):
        if self.f1 - self.f0 != self.f2 - self.f3:
            raise MalformedFormat(f"f1-f0 != f2-f3 in {self.as_tuple()}")
        if self.r1 < 1 or self.r2 < 2 or self.r3 < 1:
            raise MalformedFormat(f"need r1>=1, r2>=2, r3>=1; got {self.as_tuple()}")

    @property
    def r1(self) -> int:
        return self.f0

    @property
    def r2(self) -> int:
        return self.f1 - self.f0

    @property
    def r3(self) -> int:
        return self.f3

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.f0, self.f1, self.f2, self.f3)

    def to_json(self) -> dict:
        return {"f": list(self.as_tuple())}

    @classmethod
    def parse(cls, text: str) -> "Format":
        try:
            parts = [int(s) for s in text.strip("()[] ").replace(" ", "").split(",") if s]
        except ValueError:
            raise MalformedFormat(f"cannot read a format from {text!r}") from None
        if len(parts) != 4:
            raise MalformedFormat(f"a format has four entries, got {text!r}")
        return cls(*parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.as_tuple())) + ")"


@dataclass(frozen=True)
class DynkinType:
    kind: str  # "finite", "affine" or "indefinite"
    name: str

    @property
    def finite(self) -> bool:
        return self.kind == "finite"


def format_to_shape(f: Format) -> TShape:
    return TShape(f.r1 + 1, f.r2 - 1, f.r3 + 1)


def shape_to_format(shape: TShape) -> Format:
    """Inverse of format_to_shape; the x-arm carries r1 and the z-arm r3."""
    r1, r2, r3 = shape.p - 1, shape.q + 1, shape.r - 1
    return Format(r1, r1 + r2, r2 + r3, r3)


def classify_type(shape: TShape) -> DynkinType:
    a, b, c = sorted((shape.p, shape.q, shape.r))
    total = Fraction(1, a) + Fraction(1, b) + Fraction(1, c)
    n = shape.rank
    if total > 1:
        if a == 1:
            return DynkinType("finite", f"A{n}")
        if b == 2:
            return DynkinType("finite", f"D{n}")
        return DynkinType("finite", f"E{n}")
    if total == 1:
        tilde = {(3, 3, 3): "~E6", (2, 4, 4): "~E7", (2, 3, 6): "~E8"}
        return DynkinType("affine", tilde[(a, b, c)])
    return DynkinType("indefinite", shape.name())


def is_dynkin_format(f: Format) -> bool:
    return classify_type(format_to_shape(f)).finite


def cartan_matrix(shape: TShape) -> tuple[tuple[int, ...], ...]:
    n = shape.rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i, j in shape.edges():
        a[i][j] = a[j][i] = -1
    return tuple(tuple(row) for row in a)


def _require_finite(shape: TShape) -> None:
    if not classify_type(shape).finite:
        raise NonFiniteType(f"{shape.name()} is of {classify_type(shape).kind} type")


def invert_rational(a) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise SingularCartan("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                fac = m[r][col]
                m[r] = [x - fac * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


class RootSystem:
    """Root data for a finite-type T_{p,q,r}. Use root_system() for the cached instance."""

    def __init__(self, shape: TShape):
        _require_finite(shape)
        self.shape = shape
        self.type = classify_type(shape)
        self.n = shape.rank
        self.cartan = cartan_matrix(shape)
        self.positive = self._closure()
        self.inv_cartan = tuple(tuple(r) for r in invert_rational(self.cartan))
        self.det = self._det()
        self.highest_root = max(self.positive, key=sum)

    def _det(self) -> int:
        # det A makes det*A^{-1} integral, handy for exact offsets
        m = [[Fraction(x) for x in row] for row in self.cartan]
        n, det = self.n, Fraction(1)
        for c in range(n):
            piv = next(r for r in range(c, n) if m[r][c] != 0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            for r in range(c + 1, n):
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
        return int(det)

    def _closure(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for root in frontier:
                for i in range(n):
                    img = reflect_root(self.cartan, root, i)
                    if all(c >= 0 for c in img) and img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return tuple(sorted(seen, key=lambda v: (sum(v), v)))

    @property
    def roots(self) -> tuple[tuple[int, ...], ...]:
        return self.positive + tuple(tuple(-c for c in v) for v in self.positive)

    def pairing(self, i: int, root) -> int:
        """<alpha_i^vee, root> for a root in simple-root coordinates."""
        return sum(self.cartan[i][j] * root[j] for j in range(self.n))

    def root_to_weight(self, root) -> tuple[int, ...]:
        # simply laced: fundamental coords of a root are A * root
        return tuple(sum(self.cartan[i][j] * root[j] for j in range(self.n)) for i in range(self.n))

    def weight_to_root(self, weight) -> tuple[Fraction, ...]:
        return tuple(sum(self.inv_cartan[i][j] * weight[j] for j in range(self.n)) for i in range(self.n))

    def form(self, a, b) -> Fraction:
        """Invariant form on weights (fundamental coordinates), normalized so roots have length 2."""
        n = self.n
        return sum(a[i] * self.inv_cartan[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j])

    def fundamental_weight(self, t: int) -> tuple[int, ...]:
        return tuple(int(i == t) for i in range(self.n))

    @property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.n


@lru_cache(maxsize=None)
def root_system(shape: TShape) -> RootSystem:
    return RootSystem(shape)


def reflect_root(cartan, root, i: int) -> tuple[int, ...]:
    c = sum(cartan[i][j] * root[j] for j in range(len(root)))
    if c == 0:
        return tuple(root)
    out = list(root)
    out[i] -= c
    return tuple(out)


def positive_roots(shape: TShape) -> tuple[tuple[int, ...], ...]:
    return root_system(shape).positive


def fundamental_weights(shape: TShape) -> list[tuple[Fraction, ...]]:
    """Fundamental weights in simple-root coordinates (columns of A^{-1})."""
    a = cartan_matrix(shape)
    inv = invert_rational(a)
    n = len(a)
    return [tuple(inv[i][j] for i in range(n)) for j in range(n)]


def grading_degree(v, t: int):
    """Coefficient of alpha_t in a vector written in simple-root coordinates."""
    return v[t]
