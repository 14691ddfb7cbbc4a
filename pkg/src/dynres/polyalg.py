"""Sparse polynomials over Q, polynomial matrices, graded linear solving and Groebner bases.

Coefficients are Python ints where possible and Fractions otherwise. Monomials
are exponent tuples. The term order is graded-lex: total degree first, then
lexicographic on exponents, so x0 > x1 > ... within a degree.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import DegreeBudgetExceeded, NoSolution, ResourceBudgetExceeded, VariableMismatch

Mono = tuple[int, ...]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def parse_coeff(text: str):
    return _norm(Fraction(text))


def grlex_key(m: Mono):
    return (sum(m), m)


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {} if terms is None else {m: _norm(c) for m, c in terms.items() if c}

    # construction
    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: c}) if c else cls(n)

    @classmethod
    def one(cls, n):
        return cls.const(n, 1)

    @classmethod
    def var(cls, n, i):
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def _raw(cls, n, terms):
        p = cls.__new__(cls)
        p.nvars = n
        p.terms = terms
        return p

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def degree(self, weights=None) -> int:
        if not self.terms:
            return -1
        if weights is None:
            return max(sum(m) for m in self.terms)
        return max(sum(w * e for w, e in zip(weights, m)) for m in self.terms)

    def homogeneous_degree(self, weights=None):
        """The common degree of all terms, None if inhomogeneous, -1 for zero."""
        if not self.terms:
            return -1
        degs = {sum(m) if weights is None else sum(w * e for w, e in zip(weights, m)) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def lead(self):
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # arithmetic
    def _check(self, other):
        if other.nvars != self.nvars:
            raise VariableMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        if not c:
            return Poly(self.nvars)
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return Poly._raw(self.nvars, {m: _norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return Poly(self.nvars)
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple([a + b for a, b in zip(m1, m2)])
                out[m] = get(m, 0) + c1 * c2
        return Poly._raw(self.nvars, {m: _norm(c) for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_monomial(self, mono: Mono, c=1):
        return Poly._raw(self.nvars, {tuple([a + b for a, b in zip(m, mono)]): _norm(v * c)
                                      for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if other == 0:
            return not self.terms
        return self == Poly.const(self.nvars, other)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def substitute(self, images, nvars: int | None = None) -> "Poly":
        """Ring map sending variable i to images[i] (a Poly, number, or None to keep it)."""
        if len(images) != self.nvars:
            raise VariableMismatch("substitution needs one image per variable")
        target = nvars
        if target is None:
            target = next((im.nvars for im in images if isinstance(im, Poly)), self.nvars)
        imgs = []
        for i, im in enumerate(images):
            if im is None:
                if target != self.nvars:
                    raise VariableMismatch("cannot keep a variable while changing rings")
                im = Poly.var(target, i)
            elif not isinstance(im, Poly):
                im = Poly.const(target, im)
            elif im.nvars != target:
                raise VariableMismatch("images live in different rings")
            imgs.append(im)
        powers: dict = {}
        out = Poly(target)
        for m, c in self.terms.items():
            term = Poly.const(target, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = imgs[i] ** e
                    term = term * powers[key]
            out = out + term
        return out

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, c = self.lead()
        return self.scale(Fraction(1) / c) if c != 1 else self

    # text
    def to_str(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for m in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_str()})"

    def to_json(self) -> dict:
        order = sorted(self.terms, key=grlex_key)
        return {"nvars": self.nvars,
                "terms": [{"e": list(m), "c": str(Fraction(self.terms[m]))} for m in order]}

    @classmethod
    def from_json(cls, obj) -> "Poly":
        n = obj["nvars"]
        terms = {}
        for t in obj["terms"]:
            e = tuple(t["e"])
            if len(e) != n:
                raise VariableMismatch("exponent length does not match nvars")
            terms[e] = terms.get(e, 0) + parse_coeff(t["c"])
        return cls(n, terms)


def monomials_of_degree(nvars: int, degree: int, weights=None) -> list[Mono]:
    """All exponent vectors of the given (weighted) degree."""
    w = weights or (1,) * nvars
    if degree < 0:
        return []
    out = []

    def rec(i, left, acc):
        if i == nvars - 1:
            if left % w[i] == 0:
                out.append(tuple(acc + [left // w[i]]))
            return
        for e in range(left // w[i], -1, -1):
            rec(i + 1, left - e * w[i], acc + [e])

    if nvars == 0:
        return [()] if degree == 0 else []
    rec(0, degree, [])
    return out


# ------------------------------------------------------------------ matrices

@dataclass
class PolyMatrix:
    """Map between graded free modules: rows index target generators, columns source generators."""

    nvars: int
    entries: list
    row_twists: list = field(default_factory=list)
    col_twists: list = field(default_factory=list)

    def __post_init__(self):
        if not self.row_twists:
            self.row_twists = [0] * self.rows
        if not self.col_twists:
            self.col_twists = [0] * self.cols

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else len(self.col_twists)

    @classmethod
    def zeros(cls, nvars, rows, cols, row_twists=None, col_twists=None):
        return cls(nvars, [[Poly(nvars) for _ in range(cols)] for _ in range(rows)],
                   list(row_twists or [0] * rows), list(col_twists or [0] * cols))

    @classmethod
    def from_constants(cls, nvars, rows_of_numbers, row_twists=None, col_twists=None):
        ent = [[Poly.const(nvars, c) for c in row] for row in rows_of_numbers]
        r = len(ent)
        c = len(ent[0]) if ent else len(col_twists or [])
        return cls(nvars, ent, list(row_twists or [0] * r), list(col_twists or [0] * c))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Poly(self.nvars)
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.terms:
                        b = other.entries[k][j]
                        if b.terms:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.nvars, out, list(self.row_twists), list(other.col_twists))

    def __add__(self, other):
        ent = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        return PolyMatrix(self.nvars, ent, list(self.row_twists), list(self.col_twists))

    def __sub__(self, other):
        ent = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        return PolyMatrix(self.nvars, ent, list(self.row_twists), list(self.col_twists))

    def scale(self, c):
        return PolyMatrix(self.nvars, [[a.scale(c) for a in r] for r in self.entries],
                          list(self.row_twists), list(self.col_twists))

    def transpose(self) -> "PolyMatrix":
        """Dual map; twists are negated and swapped."""
        ent = [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        return PolyMatrix(self.nvars, ent, [-t for t in self.col_twists], [-t for t in self.row_twists])

    def is_zero(self) -> bool:
        return all(not e.terms for r in self.entries for e in r)

    def homogeneity_defects(self, weights=None) -> list[tuple[int, int]]:
        bad = []
        for i, r in enumerate(self.entries):
            for j, e in enumerate(r):
                if e.terms and e.homogeneous_degree(weights) != self.col_twists[j] - self.row_twists[i]:
                    bad.append((i, j))
        return bad

    def is_homogeneous(self, weights=None) -> bool:
        return not self.homogeneity_defects(weights)

    def constant_part(self) -> list[list[Fraction]]:
        return [[Fraction(e.constant_term()) for e in r] for r in self.entries]

    def evaluate(self, point) -> list[list[Fraction]]:
        return [[evaluate(e, point) for e in r] for r in self.entries]

    def submatrix(self, rows, cols) -> "PolyMatrix":
        return PolyMatrix(self.nvars, [[self.entries[i][j] for j in cols] for i in rows],
                          [self.row_twists[i] for i in rows], [self.col_twists[j] for j in cols])

    def substitute(self, images, nvars=None) -> "PolyMatrix":
        ent = [[e.substitute(images, nvars) for e in r] for r in self.entries]
        n = ent[0][0].nvars if ent and ent[0] else (nvars or self.nvars)
        return PolyMatrix(n, ent, list(self.row_twists), list(self.col_twists))

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.rows == other.rows and self.cols == other.cols
                and all(a == b for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2)))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "nvars": self.nvars,
                "row_twists": list(self.row_twists), "col_twists": list(self.col_twists),
                "entries": [[e.to_json() for e in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> "PolyMatrix":
        n = obj["nvars"]
        ent = [[Poly.from_json(e) for e in r] for r in obj["entries"]]
        if len(ent) != obj["rows"] or any(len(r) != obj["cols"] for r in ent):
            raise ValueError("matrix dimensions do not match entries")
        if any(e.nvars != n for r in ent for e in r):
            raise VariableMismatch("entry in a different ring")
        return cls(n, ent, list(obj["row_twists"]), list(obj["col_twists"]))


def exact_divide(p: Poly, q: Poly) -> Poly:
    """The quotient p / q, raising NoSolution unless q divides p."""
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    qm, qc = q.lead()
    rem = dict(p.terms)
    quot: dict = {}
    q_items = list(q.terms.items())
    while rem:
        m = max(rem, key=grlex_key)
        if not all(a >= b for a, b in zip(m, qm)):
            raise NoSolution("divisor does not divide")
        shift = tuple(a - b for a, b in zip(m, qm))
        c = Fraction(rem[m]) / qc
        quot[shift] = c
        for tm, tc in q_items:
            key = tuple(a + b for a, b in zip(tm, shift))
            v = rem.get(key, 0) - c * tc
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return Poly(p.nvars, quot)


def evaluate(p: Poly, point):
    total = Fraction(0)
    for m, c in p.terms.items():
        v = Fraction(c)
        for x, e in zip(point, m):
            if e:
                v *= Fraction(x) ** e
        total += v
    return total


def det(m: PolyMatrix) -> Poly:
    """Determinant by Laplace expansion, memoized on the remaining column set."""
    n = m.rows
    if n != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Poly.one(m.nvars)
    memo: dict = {}
    ent = m.entries

    def rec(row, cols):
        if row == n:
            return Poly.one(m.nvars)
        key = cols
        if key in memo:
            return memo[key]
        acc = Poly(m.nvars)
        for pos, c in enumerate(cols):
            e = ent[row][c]
            if e.terms:
                sub = rec(row + 1, cols[:pos] + cols[pos + 1:])
                if sub.terms:
                    term = e * sub
                    acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    return rec(0, tuple(range(n)))


def minors(m: PolyMatrix, r: int):
    """Yield (row_subset, col_subset, minor) for all r x r minors in lexicographic order."""
    for rows in combinations(range(m.rows), r):
        for cols in combinations(range(m.cols), r):
            yield rows, cols, det(m.submatrix(rows, cols))


# ------------------------------------------------------------------ rational linear algebra

def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank_q(rows) -> int:
    return len(rref(rows)[1]) if rows and rows[0] else 0


def nullspace_q(rows, ncols: int | None = None) -> list[list[Fraction]]:
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    a, piv = rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -a[r][f]
        basis.append(v)
    return basis


def det_q(rows) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n, d = len(a), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


class SparseSystem:
    """Incremental sparse elimination over Q; free variables default to zero."""

    def __init__(self, nunknowns: int):
        self.n = nunknowns
        self.pivots: dict[int, tuple[dict, object]] = {}
        self.inconsistent = False

    def add(self, row: dict, rhs) -> None:
        row = {k: v for k, v in row.items() if v}
        rhs = Fraction(rhs)
        heap = [k for k in row if k in self.pivots]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = row.get(k)
            if not c:
                continue
            prow, prhs = self.pivots[k]
            for j, v in prow.items():
                nv = row.get(j, 0) - c * v
                if nv:
                    if j not in row and j in self.pivots:
                        heapq.heappush(heap, j)
                    row[j] = nv
                else:
                    row.pop(j, None)
            rhs -= c * prhs
        if not row:
            if rhs:
                self.inconsistent = True
            return
        p = min(row)
        inv = 1 / Fraction(row[p])
        self.pivots[p] = ({j: v * inv for j, v in row.items()}, rhs * inv)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solution(self) -> list[Fraction]:
        if self.inconsistent:
            raise NoSolution("inconsistent linear system")
        x = [Fraction(0)] * self.n
        for p in sorted(self.pivots, reverse=True):
            prow, prhs = self.pivots[p]
            x[p] = prhs - sum(v * x[j] for j, v in prow.items() if j != p)
        return x


@dataclass
class SolveReport:
    solution: PolyMatrix
    nullity: list[int]  # kernel dimension of the graded slice for each column


def graded_solve(a: PolyMatrix, b: PolyMatrix, degree_bound: int = 40, weights=None,
                 max_unknowns: int = 200_000) -> SolveReport:
    """Solve a @ x = b degree by degree.

    Entry (k, c) of x is forced to have degree b.col_twists[c] - a.col_twists[k].
    Each column of b gives one finite linear system over Q.
    """
    if a.rows != b.rows:
        raise ValueError("a and b must have the same number of rows")
    n = a.nvars
    out = PolyMatrix.zeros(n, a.cols, b.cols, a.col_twists, b.col_twists)
    nullity = []
    col_terms = [[list(a.entries[i][k].terms.items()) for i in range(a.rows)] for k in range(a.cols)]
    for c in range(b.cols):
        if all(not b.entries[i][c].terms for i in range(a.rows)):
            nullity.append(0)
            continue
        unknowns = []
        for k in range(a.cols):
            deg = b.col_twists[c] - a.col_twists[k]
            if deg < 0 or all(not t for t in col_terms[k]):
                continue
            if deg > degree_bound:
                raise DegreeBudgetExceeded(f"unknown of degree {deg} exceeds bound {degree_bound}")
            for m in monomials_of_degree(n, deg, weights):
                unknowns.append((k, m))
                if len(unknowns) > max_unknowns:
                    raise ResourceBudgetExceeded("graded slice too large")
        eqs: dict = {}
        for idx, (k, m) in enumerate(unknowns):
            for i, terms in enumerate(col_terms[k]):
                for tm, tc in terms:
                    key = (i, tuple([x + y for x, y in zip(tm, m)]))
                    row = eqs.get(key)
                    if row is None:
                        row = eqs[key] = {}
                    row[idx] = row.get(idx, 0) + tc
        sysm = SparseSystem(len(unknowns))
        rhs_keys = {(i, m): v for i in range(a.rows) for m, v in b.entries[i][c].terms.items()}
        for key in rhs_keys:
            if key not in eqs:
                raise NoSolution(f"b has a term no product can reach at row {key[0]}")
        for key, row in eqs.items():
            sysm.add(row, rhs_keys.get(key, 0))
            if sysm.inconsistent:
                raise NoSolution(f"column {c} is not in the image")
        x = sysm.solution()
        nullity.append(len(unknowns) - sysm.rank)
        for idx, (k, m) in enumerate(unknowns):
            if x[idx]:
                out.entries[k][c].terms[m] = _norm(x[idx])
    return SolveReport(out, nullity)


# ------------------------------------------------------------------ Groebner bases

def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Mono, b: Mono) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _GPoly:
    """Monic polynomial with cached leading monomial, for the Groebner loop."""

    __slots__ = ("terms", "lm", "deg")

    def __init__(self, terms: dict):
        lm = max(terms, key=grlex_key)
        c = terms[lm]
        if c != 1:
            inv = Fraction(1) / Fraction(c)
            terms = {m: _norm(v * inv) for m, v in terms.items()}
        self.terms = terms
        self.lm = lm
        self.deg = sum(lm)


def _reduce(terms: dict, basis: list) -> dict:
    """Normal form of terms modulo the monic polynomials in basis."""
    f = dict(terms)
    heap = [(-sum(m), tuple(-x for x in m), m) for m in f]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, _, m = heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        g = next((g for g in basis if _divides(g.lm, m)), None)
        if g is None:
            rem[m] = c
            continue
        q = tuple(x - y for x, y in zip(m, g.lm))
        for gm, gc in g.terms.items():
            if gm == g.lm:
                continue
            t = tuple(x + y for x, y in zip(gm, q))
            old = f.get(t, 0)
            if not old:
                heapq.heappush(heap, (-sum(t), tuple(-x for x in t), t))
            nv = old - c * gc
            if nv:
                f[t] = _norm(nv)
            else:
                f.pop(t, None)
    return rem


def _spoly(f: _GPoly, g: _GPoly) -> dict:
    l = _lcm(f.lm, g.lm)
    qf = tuple(x - y for x, y in zip(l, f.lm))
    qg = tuple(x - y for x, y in zip(l, g.lm))
    out: dict = {}
    for m, c in f.terms.items():
        t = tuple(x + y for x, y in zip(m, qf))
        out[t] = out.get(t, 0) + c
    for m, c in g.terms.items():
        t = tuple(x + y for x, y in zip(m, qg))
        out[t] = out.get(t, 0) - c
    return {m: _norm(c) for m, c in out.items() if c}


def buchberger(gens: list[Poly], max_pairs: int = 20_000) -> list[Poly]:
    """Reduced Groebner basis under graded-lex, with the Gebauer-Moeller criteria."""
    if not gens:
        return []
    n = gens[0].nvars
    polys: list[_GPoly] = []
    active: list[int] = []
    pairs: list[tuple[int, int]] = []

    def update(h: int):
        nonlocal active, pairs
        lh = polys[h].lm
        cand = [(g, _lcm(lh, polys[g].lm)) for g in active]
        keep = []
        for idx, (g, l) in enumerate(cand):
            if _coprime(lh, polys[g].lm):
                keep.append((g, l))
                continue
            others = cand[idx + 1:] + keep
            if not any(_divides(l2, l) for g2, l2 in others if g2 != g):
                keep.append((g, l))
        new_pairs = [(g, h) for g, l in keep if not _coprime(lh, polys[g].lm)]
        kept = []
        for (a, b) in pairs:
            l = _lcm(polys[a].lm, polys[b].lm)
            if (_divides(lh, l) and _lcm(polys[a].lm, lh) != l and _lcm(lh, polys[b].lm) != l):
                continue
            kept.append((a, b))
        pairs = kept + new_pairs
        active = [g for g in active if not _divides(lh, polys[g].lm)] + [h]

    start = []
    for p in gens:
        if p.nvars != n:
            raise VariableMismatch("generators in different rings")
        if p.terms:
            start.append(_GPoly(dict(p.terms)))
    start.sort(key=lambda g: grlex_key(g.lm))
    for g in start:
        red = _reduce(g.terms, [polys[i] for i in active])
        if red:
            polys.append(_GPoly(red))
            update(len(polys) - 1)
    steps = 0
    while pairs:
        pairs.sort(key=lambda ab: (grlex_key(_lcm(polys[ab[0]].lm, polys[ab[1]].lm)), ab))
        a, b = pairs.pop(0)
        steps += 1
        if steps > max_pairs:
            raise ResourceBudgetExceeded(f"Groebner computation exceeded {max_pairs} S-pairs")
        s = _spoly(polys[a], polys[b])
        if not s:
            continue
        red = _reduce(s, [polys[i] for i in active])
        if red:
            polys.append(_GPoly(red))
            update(len(polys) - 1)
    basis = [polys[i] for i in active]
    # minimal then reduced
    basis.sort(key=lambda g: grlex_key(g.lm))
    minimal = []
    for g in basis:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = {m: c for m, c in g.terms.items() if m != g.lm}
        rest = _reduce(tail, others) if tail else {}
        rest[g.lm] = 1
        reduced.append(Poly(n, rest))
    return sorted(reduced, key=lambda p: grlex_key(p.lead()[0]))


@dataclass
class IdealHandle:
    nvars: int
    gens: list
    max_pairs: int = 20_000
    _gb: list | None = field(default=None, repr=False)

    @property
    def groebner(self) -> list[Poly]:
        if self._gb is None:
            self._gb = buchberger([g for g in self.gens if g.terms], self.max_pairs) if any(g.terms for g in self.gens) else []
        return self._gb

    def reduce(self, p: Poly) -> Poly:
        gb = [_GPoly(dict(g.terms)) for g in self.groebner]
        return Poly(self.nvars, _reduce(p.terms, gb)) if p.terms else p

    def contains(self, p: Poly) -> bool:
        return self.reduce(p).is_zero()

    def is_unit(self) -> bool:
        return any(sum(g.lead()[0]) == 0 for g in self.groebner)


def _min_hitting_set(supports: list[frozenset]) -> int:
    best = [len(set().union(*supports)) if supports else 0]

    def rec(chosen: frozenset, remaining: list):
        if len(chosen) >= best[0]:
            return
        unhit = [s for s in remaining if not (s & chosen)]
        if not unhit:
            best[0] = len(chosen)
            return
        s = min(unhit, key=len)
        for v in sorted(s):
            rec(chosen | {v}, unhit)

    rec(frozenset(), supports)
    return best[0]


def ideal_dimension(ideal: IdealHandle) -> int:
    """Krull dimension of R/I from the leading-term staircase; -1 for the unit ideal."""
    gb = ideal.groebner
    if not gb:
        return ideal.nvars
    if ideal.is_unit():
        return -1
    supports = list({frozenset(i for i, e in enumerate(g.lead()[0]) if e) for g in gb})
    return ideal.nvars - _min_hitting_set(supports)


def ideal_codim(ideal: IdealHandle):
    d = ideal_dimension(ideal)
    return math.inf if d < 0 else ideal.nvars - d


def grade_at_least(ideal: IdealHandle, k: int) -> bool:
    """For ideals of a polynomial ring, grade equals codimension."""
    return ideal_codim(ideal) >= k


def ideal_equal(i1: IdealHandle, i2: IdealHandle) -> bool:
    if i1.nvars != i2.nvars:
        raise VariableMismatch("ideals in different rings")
    return all(i1.contains(g) for g in i2.gens) and all(i2.contains(g) for g in i1.gens)
