"""Length-three graded complexes, their multipliers, and first higher structure maps.

Conventions: a complex is 0 -> F3 -d3-> F2 -d2-> F1 -d1-> F0, each d_i a
PolyMatrix whose rows index the target basis. Exterior powers use lexicographic
bases of index subsets, and e_J ^ e_K is compared with e_{J u K} by the sign of
the sorting permutation.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import (NonDynkinFormat, NonMinimalComplex, NoSolution, NotAComplex, NotPerfect, UnsupportedF0)
from .lie_core import Format, classify_type
from .polyalg import IdealHandle, Poly, PolyMatrix, det, exact_divide, graded_solve, ideal_codim, rank_q


# ------------------------------------------------------------------ complexes

@dataclass
class GradedComplex:
    fmt: Format
    nvars: int
    s: list  # generator degrees [s0, s1, s2, s3]
    d1: PolyMatrix
    d2: PolyMatrix
    d3: PolyMatrix
    weights: list | None = None  # variable degrees, all 1 when None
    names: list | None = None

    def __post_init__(self):
        s0, s1, s2, s3 = self.s
        for d, rows, cols in ((self.d1, s0, s1), (self.d2, s1, s2), (self.d3, s2, s3)):
            d.row_twists = list(rows)
            d.col_twists = list(cols)

    @property
    def diffs(self):
        return (self.d1, self.d2, self.d3)

    @property
    def var_weights(self):
        return self.weights or [1] * self.nvars

    def degree_of_m(self) -> int:
        """Degree of M = top(F3) (x) top(F2)* (x) top(F1)."""
        return sum(self.s[3]) - sum(self.s[2]) + sum(self.s[1])

    def is_minimal(self) -> bool:
        return all(not e.constant_term() for d in self.diffs for r in d.entries for e in r)

    def dual(self) -> "GradedComplex":
        f = self.fmt
        s = [[-x for x in self.s[3]], [-x for x in self.s[2]], [-x for x in self.s[1]], [-x for x in self.s[0]]]
        return GradedComplex(Format(f.f3, f.f2, f.f1, f.f0), self.nvars, s, self.d3.transpose(), self.d2.transpose(), self.d1.transpose(),
                             self.weights, self.names)

    def to_json(self) -> dict:
        out = {"format": list(self.fmt.as_tuple()), "nvars": self.nvars,
               "twists": {f"s{i}": list(self.s[i]) for i in range(4)},
               "d1": self.d1.to_json(), "d2": self.d2.to_json(), "d3": self.d3.to_json()}
        if self.weights is not None:
            out["weights"] = list(self.weights)
        if self.names is not None:
            out["vars"] = list(self.names)
        return out

    @classmethod
    def from_json(cls, obj) -> "GradedComplex":
        tw = obj["twists"]
        return cls(Format(*obj["format"]), obj["nvars"], [list(tw[f"s{i}"]) for i in range(4)],
                   PolyMatrix.from_json(obj["d1"]), PolyMatrix.from_json(obj["d2"]),
                   PolyMatrix.from_json(obj["d3"]), obj.get("weights"), obj.get("vars"))


def _vars(n):
    return [Poly.var(n, i) for i in range(n)]


def koszul_complex(n: int = 3) -> GradedComplex:
    """Koszul complex on the variables of Q[x_0..x_{n-1}], n = 3 for the usual format (1,3,3,1)."""
    if n != 3:
        raise ValueError("only the length-three Koszul complex fits the format")
    x = _vars(3)
    z = Poly(3)
    d1 = PolyMatrix(3, [[x[0], x[1], x[2]]])
    # columns e01, e02, e12 with d(e_i ^ e_j) = x_i e_j - x_j e_i
    d2 = PolyMatrix(3, [[-x[1], -x[2], z], [x[0], z, -x[2]], [z, x[0], x[1]]])
    d3 = PolyMatrix(3, [[x[2]], [-x[1]], [x[0]]])
    return GradedComplex(Format(1, 3, 3, 1), 3, [[0], [1, 1, 1], [2, 2, 2], [3]], d1, d2, d3, names=["x", "y", "z"])


def pfaffian(m) -> Poly:
    """Pfaffian of a skew matrix given as a list of lists of Poly."""
    n = len(m)
    if n == 0:
        return Poly.one(m[0][0].nvars) if m else None
    if n % 2:
        return Poly.zero(m[0][0].nvars)
    if n == 2:
        return m[0][1]
    out = Poly.zero(m[0][0].nvars)
    for j in range(1, n):
        if m[0][j].terms:
            rest = [k for k in range(1, n) if k != j]
            sub = [[m[a][b] for b in rest] for a in rest]
            term = m[0][j] * pfaffian(sub)
            out = out + term if j % 2 == 1 else out - term
    return out


def generic_skew(nvars_start: int, size: int, nvars: int):
    """Generic skew matrix whose strictly upper entries are variables nvars_start, nvars_start+1, ..."""
    x = _vars(nvars)
    m = [[Poly(nvars) for _ in range(size)] for _ in range(size)]
    k = nvars_start
    for i in range(size):
        for j in range(i + 1, size):
            m[i][j] = x[k]
            m[j][i] = -x[k]
            k += 1
    return m


def submaximal_pfaffians(m) -> list[Poly]:
    """Signed Pfaffians of the principal submatrices deleting one index: the kernel vector of m."""
    n = len(m)
    out = []
    for i in range(n):
        rest = [k for k in range(n) if k != i]
        p = pfaffian([[m[a][b] for b in rest] for a in rest])
        out.append(p if i % 2 == 0 else -p)
    return out


def pfaffian_complex(skew=None) -> GradedComplex:
    """Buchsbaum-Eisenbud Gorenstein complex of a 5x5 skew matrix (generic linear by default)."""
    if skew is None:
        skew = generic_skew(0, 5, 10)
    n = skew[0][0].nvars
    pf = submaximal_pfaffians(skew)
    d1 = PolyMatrix(n, [pf])
    d2 = PolyMatrix(n, [list(r) for r in skew])
    d3 = PolyMatrix(n, [[p] for p in pf])
    deg = max(p.degree() for p in pf)
    ldeg = max(e.degree() for r in skew for e in r)
    s1 = [deg] * 5
    s2 = [deg + ldeg] * 5
    s3 = [2 * deg + ldeg]
    return GradedComplex(Format(1, 5, 5, 1), n, [[0], s1, s2, s3], d1, d2, d3)


def nonperfect_complex() -> GradedComplex:
    """Resolution of (t1t2, t2t3, t3t4, t4t1) in Q[t1..t4]: acyclic of grade 2, so its dual is not."""
    t = _vars(4)
    z = Poly(4)
    d1 = PolyMatrix(4, [[t[0] * t[1], t[1] * t[2], t[2] * t[3], t[3] * t[0]]])
    d2 = PolyMatrix(4, [[t[2], z, z, -t[3]], [-t[0], t[3], z, z], [z, -t[1], t[0], z], [z, z, -t[2], t[1]]])
    d3 = PolyMatrix(4, [[t[3]], [t[0]], [t[1]], [t[2]]])
    return GradedComplex(Format(1, 4, 4, 1), 4, [[0], [2] * 4, [3] * 4, [4]], d1, d2, d3,
                         names=["t1", "t2", "t3", "t4"])


def homogeneous_kernel(d: PolyMatrix, degree: int, weights=None) -> PolyMatrix:
    """Basis of the kernel of d in source degree `degree`, as the columns of a matrix."""
    from .polyalg import monomials_of_degree, nullspace_q
    n = d.nvars
    unknowns = [(k, m) for k in range(d.cols) for m in monomials_of_degree(n, degree - d.col_twists[k], weights)
                if degree - d.col_twists[k] >= 0]
    eqs: dict = {}
    for u, (k, m) in enumerate(unknowns):
        for i in range(d.rows):
            for tm, tc in d.entries[i][k].terms.items():
                key = (i, tuple(a + b for a, b in zip(tm, m)))
                eqs.setdefault(key, {})[u] = eqs.get(key, {}).get(u, 0) + tc
    rows = [[Fraction(r.get(u, 0)) for u in range(len(unknowns))] for r in eqs.values()]
    basis = nullspace_q(rows, len(unknowns))
    ent = [[Poly(n) for _ in basis] for _ in range(d.cols)]
    for j, v in enumerate(basis):
        for u, (k, m) in enumerate(unknowns):
            if v[u]:
                ent[k][j] = ent[k][j] + Poly(n, {m: v[u]})
    return PolyMatrix(n, ent, list(d.col_twists), [degree] * len(basis))


def square_ideal_complex() -> GradedComplex:
    """Minimal resolution of (x,y,z)^2, format (1,6,8,3)."""
    from .polyalg import monomials_of_degree
    quads = [Poly(3, {m: 1}) for m in sorted(monomials_of_degree(3, 2), reverse=True)]
    d1 = PolyMatrix(3, [quads], [0], [2] * 6)
    d2 = homogeneous_kernel(d1, 3)
    d3 = homogeneous_kernel(d2, 4)
    return GradedComplex(Format(1, 6, 8, 3), 3, [[0], [2] * 6, [3] * d2.cols, [4] * d3.cols], d1, d2, d3,
                         names=["x", "y", "z"])


# ------------------------------------------------------------------ validation

@dataclass
class ValidationReport:
    dd_zero: bool
    homogeneous: bool
    ranks: list
    rank_conditions: bool
    grades: list = field(default_factory=list)
    acyclic: bool | None = None
    dual_acyclic: bool | None = None
    issues: list = field(default_factory=list)

    def to_json(self) -> dict:
        g = [("inf" if x == float("inf") else x) for x in self.grades]
        return {"dd_zero": self.dd_zero, "homogeneous": self.homogeneous, "ranks": self.ranks,
                "rank_conditions": self.rank_conditions, "grades": g, "acyclic": self.acyclic,
                "dual_acyclic": self.dual_acyclic, "issues": self.issues}


def _generic_rank(d: PolyMatrix, seed: int = 0, tries: int = 3) -> int:
    rng = random.Random(seed)
    best = 0
    for _ in range(tries):
        pt = [Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for _ in range(d.nvars)]
        best = max(best, rank_q(d.evaluate(pt)) if d.rows and d.cols else 0)
    return best


def minors_ideal(d: PolyMatrix, r: int) -> list[Poly]:
    if r == 0:
        return [Poly.one(d.nvars)]
    out = []
    for rows in combinations(range(d.rows), r):
        for cols in combinations(range(d.cols), r):
            m = det(d.submatrix(rows, cols))
            if m.terms:
                out.append(m)
    return out


def slice_certificate(gens: list[Poly], nvars: int, k: int, seed: int = 0, max_pairs: int = 20_000) -> bool:
    """True certifies codim >= k for an ideal generated by weighted-homogeneous polynomials.

    Every component of the zero set is a cone through the origin, so it meets a
    k-dimensional linear subspace L through the origin in dimension at least
    dim - (nvars - k). A zero-dimensional restriction to L therefore bounds the
    dimension. False means this particular L was inconclusive.
    """
    if k <= 0:
        return True
    if k > nvars:
        return False
    rng = random.Random(seed)
    t = [Poly.var(k, j) for j in range(k)]
    images = []
    for _ in range(nvars):
        img = Poly(k)
        for j in range(k):
            c = rng.randint(-4, 4)
            if c:
                img = img + t[j].scale(c)
        images.append(img)
    restricted = [g.substitute(images, k) for g in gens]
    restricted = [g for g in restricted if g.terms]
    if not restricted:
        return False
    from .polyalg import ideal_dimension
    return ideal_dimension(IdealHandle(k, restricted, max_pairs)) <= 0


def certified_grade(gens: list[Poly], nvars: int, target: int, max_pairs: int = 20_000,
                    weights=None, homogeneous: bool = False):
    """Codimension of the ideal, or a lower bound that already reaches target.

    For weighted-homogeneous generators a linear-slice certificate is tried
    first; otherwise sub-ideals give lower bounds, so small ones are tried first.
    """
    gens = sorted({g for g in gens if g.terms}, key=lambda p: (p.degree(), len(p.terms), p.to_str()))
    if not gens:
        return 0
    if any(sum(g.lead()[0]) == 0 for g in gens):
        return float("inf")  # a nonzero constant generator
    if homogeneous:
        for seed in range(2):
            if slice_certificate(gens, nvars, target, seed, max_pairs):
                return target
    m = min(target, len(gens))
    while True:
        c = ideal_codim(IdealHandle(nvars, gens[:m], max_pairs))
        if c >= target or m >= len(gens):
            return c
        m = min(len(gens), 2 * m + 1)


def validate_complex(c: GradedComplex, check_grades: bool = True, max_pairs: int = 20_000) -> ValidationReport:
    issues = []
    dd = True
    for name, a, b in (("d1*d2", c.d1, c.d2), ("d2*d3", c.d2, c.d3)):
        if not (a @ b).is_zero():
            dd = False
            issues.append(f"{name} != 0")
    hom = True
    for k, d in enumerate(c.diffs, 1):
        bad = d.homogeneity_defects(c.var_weights)
        if bad:
            hom = False
            issues.append(f"d{k} not homogeneous at {bad[:3]}")
    ranks = [_generic_rank(d, seed=k) for k, d in enumerate(c.diffs)]
    f = c.fmt.as_tuple()
    expect = [f[0], f[1] - f[0], f[3]]
    # evaluated ranks are lower bounds; with d*d = 0 the sums force equality
    rank_ok = dd and ranks[0] == expect[0] and ranks[1] == expect[1] and ranks[2] == expect[2]
    if not rank_ok:
        issues.append(f"ranks {ranks} do not match the format ({expect})")
    rep = ValidationReport(dd, hom, ranks, rank_ok, issues=issues)
    if not (check_grades and dd and rank_ok):
        return rep
    grades = []
    for k, d in enumerate(c.diffs, 1):
        gens = minors_ideal(d, expect[k - 1])
        grades.append(certified_grade(gens, c.nvars, max(k, 4 - k), max_pairs, c.weights, hom))
    rep.grades = grades
    rep.acyclic = all(grades[k - 1] >= k for k in (1, 2, 3))
    rep.dual_acyclic = all(grades[k - 1] >= 4 - k for k in (1, 2, 3))
    if not rep.acyclic:
        issues.append("Buchsbaum-Eisenbud grade condition fails for the complex")
    if not rep.dual_acyclic:
        issues.append("Buchsbaum-Eisenbud grade condition fails for the dual")
    return rep


# ------------------------------------------------------------------ exterior algebra helpers

def subsets(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), k))


def merge_sign(a, b) -> int:
    """Sign of the permutation sorting the concatenation a + b (0 if they overlap)."""
    if set(a) & set(b):
        return 0
    inv = sum(1 for x in a for y in b if x > y)
    return -1 if inv % 2 else 1


def exterior_power(d: PolyMatrix, k: int) -> PolyMatrix:
    rows = subsets(d.rows, k)
    cols = subsets(d.cols, k)
    ent = [[det(d.submatrix(r, c)) for c in cols] for r in rows]
    return PolyMatrix(d.nvars, ent, [sum(d.row_twists[i] for i in r) for r in rows],
                      [sum(d.col_twists[j] for j in c) for c in cols])


# ------------------------------------------------------------------ multipliers

@dataclass
class Multipliers:
    a3: PolyMatrix  # column over the r3-subsets of the F2 basis
    a2: PolyMatrix  # column over the r2-subsets of the F1 basis
    a1: PolyMatrix  # 1 x 1 when f0 = 1
    wedge_a3: PolyMatrix  # row: Lambda^{r2} F2 -> top(F2) (x) top(F3)*
    wedge_a2: PolyMatrix  # row: Lambda^{r1} F1 -> M; this is beta
    nullity: list

    @property
    def a1_scalar(self):
        return Fraction(self.a1.entries[0][0].constant_term()) if self.a1.rows == 1 else None


def _factor_rank_one(lam: PolyMatrix, row: PolyMatrix, twist, weights, method: str, degree_bound: int):
    """Solve a @ row = lam for a column a, given a nonzero row vector.

    "divide" reads a off one column by exact division and then checks the whole
    identity; "solve" runs graded_solve on every graded slice. Both are exact.
    """
    n = lam.nvars
    if method == "solve":
        sol = graded_solve(row.transpose(), lam.transpose(), degree_bound, weights)
        return sol.solution.transpose(), sol.nullity
    nz = [j for j in range(row.cols) if row.entries[0][j].terms]
    if not nz:
        raise NoSolution("the multiplier row vanishes identically")
    j = min(nz, key=lambda k: (len(row.entries[0][k].terms), k))
    ent = [[exact_divide(lam.entries[i][j], row.entries[0][j])] for i in range(lam.rows)]
    # R is a domain and the row is nonzero, so the factor is unique
    return PolyMatrix(n, ent, list(lam.row_twists), [twist]), [0] * lam.rows


def be_multipliers(c: GradedComplex, degree_bound: int = 60, method: str = "divide") -> Multipliers:
    if not ((c.d1 @ c.d2).is_zero() and (c.d2 @ c.d3).is_zero()):
        raise NotAComplex("consecutive differentials do not compose to zero")
    f = c.fmt
    n = c.nvars
    s0, s1, s2, s3 = c.s
    r1, r2, r3 = f.r1, f.r2, f.r3
    S1, S2, S3 = sum(s1), sum(s2), sum(s3)
    a3 = exterior_power(c.d3, r3)  # r3 = f3: one column
    k2 = subsets(f.f2, r2)
    k3 = {k: i for i, k in enumerate(subsets(f.f2, r3))}
    full2 = tuple(range(f.f2))
    wa3 = []
    for j in k2:
        rest = tuple(x for x in full2 if x not in j)
        wa3.append(a3.entries[k3[rest]][0].scale(merge_sign(j, rest)))
    wedge_a3 = PolyMatrix(n, [wa3], [S2 - S3], [sum(s2[x] for x in j) for j in k2])
    lam2 = exterior_power(c.d2, r2)
    a2, null2 = _factor_rank_one(lam2, wedge_a3, S2 - S3, c.weights, method, degree_bound)
    if not (a2 @ wedge_a3 == lam2):
        raise NoSolution("a2 does not factor the exterior power of d2")
    k1 = subsets(f.f1, r1)
    k2f1 = {k: i for i, k in enumerate(subsets(f.f1, r2))}
    full1 = tuple(range(f.f1))
    wa2 = []
    for j in k1:
        rest = tuple(x for x in full1 if x not in j)
        wa2.append(a2.entries[k2f1[rest]][0].scale(merge_sign(j, rest)))
    deg_m = S3 - S2 + S1
    wedge_a2 = PolyMatrix(n, [wa2], [deg_m], [sum(s1[x] for x in j) for j in k1])
    lam1 = exterior_power(c.d1, r1)
    a1, null1 = _factor_rank_one(lam1, wedge_a2, deg_m, c.weights, method, degree_bound)
    if not (a1 @ wedge_a2 == lam1):
        raise NoSolution("a1 does not factor the exterior power of d1")
    return Multipliers(a3, a2, a1, wedge_a3, wedge_a2, null2 + null1)


# ------------------------------------------------------------------ structure maps

@dataclass
class StructureMaps:
    w3_1: PolyMatrix  # Lambda^{r1+1} F1 -> F2 (M* twisted)
    w2_1: PolyMatrix  # Lambda^{r1} F1 (x) F2 -> F3 (M* twisted)
    a1: Fraction | None  # unit relating the maps to the DG product when f0 = 1
    beta: PolyMatrix

    def dg_product(self) -> PolyMatrix:
        """F1 x F1 -> F2 multiplication of the resolution (f0 = 1): a1 * w3_1."""
        return self.w3_1.scale(self.a1)

    def dg_product_12(self) -> PolyMatrix:
        return self.w2_1.scale(self.a1)


def comultiplied_beta(c: GradedComplex, beta: PolyMatrix) -> PolyMatrix:
    """Lambda^{r1+1} F1 -> Lambda^{r1} F1 (x) F1 -> F1 through beta on the first factor."""
    f = c.fmt
    n = c.nvars
    src = subsets(f.f1, f.r1 + 1)
    k1 = subsets(f.f1, f.r1)
    deg_m = c.degree_of_m()
    ent = [[Poly(n) for _ in src] for _ in range(f.f1)]
    for col, lset in enumerate(src):
        m = len(lset)
        for p, l in enumerate(lset):
            rest = lset[:p] + lset[p + 1:]
            sign = -1 if (m - 1 - p) % 2 else 1
            ent[l][col] = ent[l][col] + beta.entries[0][k1.index(rest)].scale(sign)
    return PolyMatrix(n, ent, list(c.s[1]), [sum(c.s[1][x] for x in L) - deg_m for L in src])


def wedge_with_d2(c: GradedComplex) -> PolyMatrix:
    """Lambda^{r1} F1 (x) F2 -> Lambda^{r1+1} F1, e_I (x) f  |->  e_I ^ d2(f)."""
    f = c.fmt
    n = c.nvars
    k1 = subsets(f.f1, f.r1)
    tgt = subsets(f.f1, f.r1 + 1)
    tidx = {t: i for i, t in enumerate(tgt)}
    deg_m = c.degree_of_m()
    cols = [(i, l) for i in k1 for l in range(f.f2)]
    ent = [[Poly(n) for _ in cols] for _ in tgt]
    for col, (iset, l) in enumerate(cols):
        for k in range(f.f1):
            e = c.d2.entries[k][l]
            if not e.terms or k in iset:
                continue
            sign = merge_sign(iset, (k,))
            row = tidx[tuple(sorted(iset + (k,)))]
            ent[row][col] = ent[row][col] + e.scale(sign)
    return PolyMatrix(n, ent, [sum(c.s[1][x] for x in t) - deg_m for t in tgt],
                      [sum(c.s[1][x] for x in i) - deg_m + c.s[2][l] for i, l in cols])


def beta_times_identity(c: GradedComplex, beta: PolyMatrix) -> PolyMatrix:
    """Lambda^{r1} F1 (x) F2 -> F2, e_I (x) f |-> beta(e_I) f."""
    f = c.fmt
    n = c.nvars
    k1 = subsets(f.f1, f.r1)
    deg_m = c.degree_of_m()
    cols = [(i, l) for i in range(len(k1)) for l in range(f.f2)]
    ent = [[Poly(n) for _ in cols] for _ in range(f.f2)]
    for col, (i, l) in enumerate(cols):
        ent[l][col] = beta.entries[0][i]
    return PolyMatrix(n, ent, list(c.s[2]),
                      [sum(c.s[1][x] for x in k1[i]) - deg_m + c.s[2][l] for i, l in cols])


def lift_w31(c: GradedComplex, mult: Multipliers, degree_bound: int = 60) -> PolyMatrix:
    comp = comultiplied_beta(c, mult.wedge_a2)
    if not (c.d1 @ comp).is_zero():
        raise NoSolution("the composite through beta does not vanish under d1")
    w = graded_solve(c.d2, comp, degree_bound, c.weights).solution
    if not (c.d2 @ w == comp):
        raise NoSolution("lift of w3_1 failed")
    return w


def w21_target(c: GradedComplex, mult: Multipliers, w31: PolyMatrix) -> PolyMatrix:
    return beta_times_identity(c, mult.wedge_a2) - (w31 @ wedge_with_d2(c))


def lift_w21(c: GradedComplex, mult: Multipliers, w31: PolyMatrix, degree_bound: int = 60) -> PolyMatrix:
    diff = w21_target(c, mult, w31)
    if not (c.d2 @ diff).is_zero():
        raise NoSolution("the difference does not land in ker d2")
    w = graded_solve(c.d3, diff, degree_bound, c.weights).solution
    if not (c.d3 @ w == diff):
        raise NoSolution("lift of w2_1 failed")
    return w


def structure_maps(c: GradedComplex, degree_bound: int = 60) -> tuple[Multipliers, StructureMaps]:
    mult = be_multipliers(c, degree_bound)
    w31 = lift_w31(c, mult, degree_bound)
    w21 = lift_w21(c, mult, w31, degree_bound)
    return mult, StructureMaps(w31, w21, mult.a1_scalar, mult.wedge_a2)


def identities_hold(c: GradedComplex, mult: Multipliers, s: StructureMaps) -> bool:
    ok = exterior_power(c.d3, c.fmt.r3) == mult.a3
    ok = ok and (mult.a2 @ mult.wedge_a3 == exterior_power(c.d2, c.fmt.r2))
    ok = ok and (mult.a1 @ mult.wedge_a2 == exterior_power(c.d1, c.fmt.r1))
    ok = ok and (c.d2 @ s.w3_1 == comultiplied_beta(c, s.beta))
    ok = ok and (c.d3 @ s.w2_1 == w21_target(c, mult, s.w3_1))
    return ok


def split_complex(f: Format) -> GradedComplex:
    """F3 -> F3 + Z -> F0 + Z -> F0 over Q, all twists zero. Basis order: F0 then Z; Z then F3."""
    f0, r2, r3 = f.f0, f.r2, f.r3
    d1 = [[int(i == j) for j in range(f.f1)] for i in range(f0)]
    d2 = [[int(i >= f0 and j < r2 and i - f0 == j) for j in range(f.f2)] for i in range(f.f1)]
    d3 = [[int(i >= r2 and i - r2 == j) for j in range(r3)] for i in range(f.f2)]
    return GradedComplex(f, 0, [[0] * f.f0, [0] * f.f1, [0] * f.f2, [0] * f.f3],
                         PolyMatrix.from_constants(0, d1), PolyMatrix.from_constants(0, d2),
                         PolyMatrix.from_constants(0, d3))


def split_structure_maps(f: Format) -> tuple[GradedComplex, Multipliers, StructureMaps]:
    c = split_complex(f)
    mult, s = structure_maps(c)
    return c, mult, s


def gauge_action(c: GradedComplex, mult: Multipliers, s: StructureMaps, u1: PolyMatrix) -> StructureMaps:
    """w3_1 -> w3_1 + d3 u1, with w2_1 corrected by -u1 (e_I ^ d2(-)) so both lifts stay valid."""
    w31 = s.w3_1 + (c.d3 @ u1)
    w21 = s.w2_1 - (u1 @ wedge_with_d2(c))
    out = StructureMaps(w31, w21, s.a1, s.beta)
    if not identities_hold(c, mult, out):
        raise ArithmeticError("gauge action broke a lifting identity")
    return out


def random_gauge(c: GradedComplex, rng: random.Random, density: float = 0.5, max_degree: int = 2) -> PolyMatrix:
    """A random u1: Lambda^{r1+1} F1 -> F3 with small rational polynomial entries (not necessarily homogeneous)."""
    f = c.fmt
    n = c.nvars
    src = subsets(f.f1, f.r1 + 1)
    ent = []
    for _ in range(f.f3):
        row = []
        for _ in src:
            p = Poly(n)
            if rng.random() < density:
                for _ in range(rng.randint(1, 3)):
                    e = [0] * n
                    for _ in range(rng.randint(0, max_degree)):
                        if n:
                            e[rng.randrange(n)] += 1
                    p = p + Poly(n, {tuple(e): Fraction(rng.randint(-9, 9), rng.randint(1, 5))})
            row.append(p)
        ent.append(row)
    return PolyMatrix(n, ent, list(c.s[3]), [0] * len(src))


def tor_m11(c: GradedComplex, s: StructureMaps) -> list[list[Fraction]]:
    """Tor_1 x Tor_1 -> Tor_2 over the residue field, as a b2 x C(b1,2) matrix."""
    if c.fmt.f0 != 1:
        raise UnsupportedF0("m11 is defined here for cyclic modules")
    if not c.is_minimal():
        raise NonMinimalComplex("some differential has a nonzero constant term")
    return s.dg_product().constant_part()


def m11_json(m) -> str:
    return json.dumps([[str(x) for x in row] for row in m])


def m11_is_zero(m) -> bool:
    return all(x == 0 for row in m for x in row)


# ------------------------------------------------------------------ classification

@dataclass
class FamilyLabel:
    betti: tuple
    diagram: str
    coset: tuple | None  # minimal representative word (node labels) when decided
    m11_zero: bool | None
    candidates: list = field(default_factory=list)
    partial: bool = False
    name: str = ""

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "diagram": self.diagram,
                "coset": None if self.coset is None else ",".join(self.coset) or "e",
                "m11_zero": self.m11_zero, "partial": self.partial,
                "candidates": [",".join(w) for w in self.candidates], "name": self.name}


def classify_family(c: GradedComplex, check_perfect: bool = True, max_pairs: int = 20_000) -> FamilyLabel:
    from .repdecomp import support_betti
    from .weyl import double_cosets, table_shape

    f = c.fmt
    if f.f0 != 1:
        raise UnsupportedF0("classification covers cyclic quotients only")
    if not ((c.d1 @ c.d2).is_zero() and (c.d2 @ c.d3).is_zero()):
        raise NotAComplex("consecutive differentials do not compose to zero")
    if not c.is_minimal():
        raise NonMinimalComplex("classification needs the minimal resolution")
    if check_perfect:
        rep = validate_complex(c, max_pairs=max_pairs)
        if not rep.dual_acyclic or not rep.acyclic:
            raise NotPerfect("; ".join(rep.issues) or "not a perfect resolution")
    d, t = f.f1 - 3, f.f3
    shape = table_shape(d, t)
    kind = classify_type(shape)
    if not kind.finite:
        raise NonDynkinFormat(f"Betti numbers {f} lie on {kind.name}, not a Dynkin diagram")
    tab = double_cosets(shape, shape.index("z1"), shape.index("x1"))
    betti = f.as_tuple()
    cands = [tab.rep_labels(k) for k in range(1, len(tab)) if support_betti(f, tab.rep_word(k)) == betti]
    mult, s = structure_maps(c)
    zero = m11_is_zero(tor_m11(c, s))
    if len(cands) == 1:
        return FamilyLabel(betti, kind.name, cands[0], zero, cands, False, _family_name(betti, zero))
    if betti == (1, 5, 6, 2):
        from .schubert import generic_m11_zero
        match = [w for w in cands if generic_m11_zero(f, w) == zero]
        if len(match) == 1:
            return FamilyLabel(betti, kind.name, match[0], zero, cands, False, _family_name(betti, zero))
        cands = match or cands
    return FamilyLabel(betti, kind.name, None, zero, cands, True, "")


def _family_name(betti, m11_zero) -> str:
    if betti == (1, 3, 3, 1):
        return "complete intersection"
    if betti[1] == betti[2] and betti[3] == 1:
        return "Gorenstein (Pfaffians)"
    if betti == (1, 5, 6, 2):
        return "J(t) family" if m11_zero else "Brown family"
    return ""
