"""Explicit representations, affine charts of G/P_x1, Schubert ideals and their resolutions.

Matrices are sparse dicts {(row, col): Fraction}. Every root vector is a nested
commutator of the Chevalley generators built by one fixed recursion, so the same
Lie algebra element acts in every representation and charts computed in
different representations describe the same group element.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import NotMinuscule, UnsupportedFormat, UnsupportedShape
from .graded_res import GradedComplex, generic_skew, m11_is_zero, structure_maps, submaximal_pfaffians, tor_m11
from .lie_core import Format, TShape, classify_type, format_to_shape, root_system
from .polyalg import IdealHandle, Poly, PolyMatrix, det_q, ideal_equal, nullspace_q
from .repdecomp import weyl_dimension
from .weyl import _orbit, apply_word, longest_element, parse_word

Sparse = dict


# ------------------------------------------------------------------ sparse helpers

def sp_mul(a: Sparse, b: Sparse) -> Sparse:
    rows_b: dict = {}
    for (r, c), v in b.items():
        rows_b.setdefault(r, []).append((c, v))
    out: dict = {}
    for (r, k), v in a.items():
        for c, w in rows_b.get(k, ()):
            key = (r, c)
            s = out.get(key, 0) + v * w
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def sp_add(a: Sparse, b: Sparse, scale=1) -> Sparse:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def sp_comm(a: Sparse, b: Sparse) -> Sparse:
    return sp_add(sp_mul(a, b), sp_mul(b, a), -1)


def sp_scale(a: Sparse, c) -> Sparse:
    return {k: v * c for k, v in a.items()} if c else {}


def sp_identity(n: int) -> Sparse:
    return {(i, i): Fraction(1) for i in range(n)}


def sp_exp(a: Sparse, n: int) -> Sparse:
    """exp of a nilpotent sparse matrix."""
    total = sp_identity(n)
    term = sp_identity(n)
    k = 1
    while True:
        term = sp_scale(sp_mul(term, a), Fraction(1, k))
        if not term:
            return total
        total = sp_add(total, term)
        k += 1
        if k > n + 1:
            raise ArithmeticError("matrix is not nilpotent")


def sp_dense(a: Sparse, rows: int, cols: int) -> list[list[Fraction]]:
    m = [[Fraction(0)] * cols for _ in range(rows)]
    for (r, c), v in a.items():
        m[r][c] = Fraction(v)
    return m


def apply_const(a: Sparse, vec: dict) -> dict:
    out: dict = {}
    for (r, c), v in a.items():
        x = vec.get(c)
        if x is not None and x.terms:
            out[r] = out[r] + x.scale(v) if r in out else x.scale(v)
    return {k: p for k, p in out.items() if p.terms}


def apply_poly(z: dict, vec: dict) -> dict:
    """z: {(row, col): Poly}, vec: {index: Poly}."""
    out: dict = {}
    for (r, c), p in z.items():
        x = vec.get(c)
        if x is not None:
            out[r] = out[r] + p * x if r in out else p * x
    return {k: p for k, p in out.items() if p.terms}


# ------------------------------------------------------------------ representations

@dataclass
class RepMatrices:
    shape: TShape
    label: str  # node of the fundamental representation, or "adjoint"
    highest_weight: tuple
    weights: list  # fundamental coordinates
    depths: list  # highest_weight - weight in simple-root coordinates
    e: list
    f: list
    _ops: dict | None = field(default=None, repr=False, compare=False)
    _lifts: dict = field(default_factory=dict, repr=False, compare=False)
    _basis: list | None = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def h(self, i: int) -> Sparse:
        return {(k, k): Fraction(w[i]) for k, w in enumerate(self.weights) if w[i]}

    def component(self, node: int, level: int = 0) -> list[int]:
        """Basis indices whose depth at `node` equals level (level 0 is the top component)."""
        return [k for k, d in enumerate(self.depths) if d[node] == level]

    def index_of_weight(self, w) -> int:
        return self.weights.index(tuple(w))

    def relation_defects(self) -> list[str]:
        rs = root_system(self.shape)
        n = rs.n
        bad = []
        for i in range(n):
            for j in range(n):
                c = sp_comm(self.e[i], self.f[j])
                want = self.h(i) if i == j else {}
                if sp_add(c, want, -1):
                    bad.append(f"[e{i},f{j}]")
            step = rs.root_to_weight(tuple(int(k == i) for k in range(n)))
            for (r, c) in self.e[i]:
                if tuple(a + b for a, b in zip(self.weights[c], step)) != self.weights[r]:
                    bad.append(f"e{i} weight shift")
                    break
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for g in (self.e, self.f):
                    if rs.cartan[i][j] == 0:
                        if sp_comm(g[i], g[j]):
                            bad.append(f"serre {i},{j}")
                    else:
                        x = sp_comm(g[i], sp_comm(g[i], g[j]))
                        if x:
                            bad.append(f"serre {i},{j}")
        return bad


def _sorted_basis(rs, hw, weights):
    def depth(mu):
        return tuple(int(x) for x in rs.weight_to_root(tuple(a - b for a, b in zip(hw, mu))))
    ws = sorted(weights, key=lambda mu: (sum(depth(mu)), depth(mu)))
    return ws, [depth(mu) for mu in ws]


@lru_cache(maxsize=64)
def minuscule_rep(shape: TShape, node: str) -> RepMatrices:
    rs = root_system(shape)
    t = shape.index(node)
    hw = rs.fundamental_weight(t)
    orbit = _orbit(rs.cartan, hw, 10 ** 6)
    if len(orbit) != weyl_dimension(rs.cartan, hw):
        raise NotMinuscule(f"{node} is not minuscule for {shape.name()}")
    weights, depths = _sorted_basis(rs, hw, orbit)
    idx = {w: k for k, w in enumerate(weights)}
    e, f = [], []
    for i in range(rs.n):
        step = rs.cartan[i]
        # all entries +1: the minuscule weight strings have length two, which makes
        # every defining relation hold with this choice (checked in relation_defects)
        e.append({(idx[tuple(a + b for a, b in zip(w, step))], k): Fraction(1)
                  for k, w in enumerate(weights) if w[i] == -1})
        f.append({(idx[tuple(a - b for a, b in zip(w, step))], k): Fraction(1)
                  for k, w in enumerate(weights) if w[i] == 1})
    return RepMatrices(shape, node, hw, weights, depths, e, f)


def root_operators(rep: RepMatrices) -> dict:
    """Positive root -> (E_beta, F_beta), by E_beta = [e_i, E_{beta - alpha_i}] with i minimal."""
    if rep._ops is not None:
        return rep._ops
    rs = root_system(rep.shape)
    pos = set(rs.positive)
    ops = {}
    for beta in rs.positive:
        if sum(beta) == 1:
            i = beta.index(1)
            ops[beta] = (rep.e[i], rep.f[i])
            continue
        for i in range(rs.n):
            prev = tuple(b - int(k == i) for k, b in enumerate(beta))
            if prev in pos:
                E = sp_comm(rep.e[i], ops[prev][0])
                F = sp_comm(rep.f[i], ops[prev][1])
                if not E or not F:
                    raise ArithmeticError(f"root vector for {beta} vanished")
                ops[beta] = (E, F)
                break
    rep._ops = ops
    return ops


def _solve_combination(target: Sparse, basis: list[Sparse]) -> list[Fraction]:
    keys = sorted(set(target) | {k for b in basis for k in b})
    rows = [[b.get(k, 0) for b in basis] + [target.get(k, 0)] for k in keys]
    from .polyalg import rref
    red, piv = rref([[Fraction(x) for x in r] for r in rows])
    n = len(basis)
    if n in piv:
        raise ArithmeticError("element not in the span")
    x = [Fraction(0)] * n
    for r, p in enumerate(piv):
        x[p] = red[r][n]
    return x


@lru_cache(maxsize=4)
def adjoint_rep(shape: TShape) -> RepMatrices:
    """Adjoint representation of E6, built from root vectors acting on the 27-dimensional module."""
    if shape != TShape(2, 3, 3):
        raise UnsupportedShape("the explicit adjoint representation is built for E6 only")
    rs = root_system(shape)
    n = rs.n
    base = minuscule_rep(shape, "y2")
    ops = root_operators(base)
    theta = rs.highest_root
    hw = rs.root_to_weight(theta)
    items = []  # (root coords, matrix)
    for beta in rs.positive:
        items.append((beta, ops[beta][0]))
        items.append((tuple(-b for b in beta), ops[beta][1]))
    cartan_mats = [sp_comm(base.e[i], base.f[i]) for i in range(n)]
    zero = (0,) * n
    key = [(sum(theta) - sum(r), tuple(t - x for t, x in zip(theta, r)), 0) for r, _ in items]
    key += [(sum(theta), theta, 1 + i) for i in range(n)]
    order = sorted(range(len(items) + n), key=lambda k: key[k])
    basis = [(items[k][0], items[k][1]) if k < len(items) else (zero, cartan_mats[k - len(items)]) for k in order]
    roots = [b[0] for b in basis]
    root_idx = {r: k for k, r in enumerate(roots) if r != zero}
    cart_idx = [k for k, r in enumerate(roots) if r == zero]
    weights = [rs.root_to_weight(r) for r in roots]
    depths = [tuple(t - x for t, x in zip(theta, r)) for r in roots]

    def ad(x: Sparse, i: int, sign: int) -> Sparse:
        out = {}
        for col, (r, y) in enumerate(basis):
            c = sp_comm(x, y)
            if c:
                tgt = tuple(a + sign * int(k == i) for k, a in enumerate(r))
                for k, v in _expand(c, tgt, basis, root_idx, cart_idx, zero).items():
                    out[(k, col)] = v
        return out

    e = [ad(base.e[i], i, 1) for i in range(n)]
    f = [ad(base.f[i], i, -1) for i in range(n)]
    rep = RepMatrices(shape, "adjoint", hw, weights, depths, e, f)
    rep._basis = basis
    return rep


def _expand(c: Sparse, tgt, basis, root_idx, cart_idx, zero) -> dict:
    """Coordinates of a 27x27 matrix c lying in the root space tgt (or the Cartan subalgebra)."""
    if tgt == zero:
        coeffs = _solve_combination(c, [basis[k][1] for k in cart_idx])
        return {k: v for k, v in zip(cart_idx, coeffs) if v}
    if tgt not in root_idx:
        raise ArithmeticError("bracket is not in a root space")
    k = root_idx[tgt]
    b = basis[k][1]
    probe = next(iter(c))
    v = Fraction(c[probe]) / b[probe] if probe in b else None
    if v is None or sp_add(c, b, -v):
        raise ArithmeticError("root space is not one-dimensional")
    return {k: v}


def structure_constants(rep: RepMatrices) -> dict:
    """[X_a, X_b] = sum_c N[a, b][c] X_c for the adjoint basis, computed in the 27-dimensional module."""
    basis = rep._basis
    n = len(rep.e)
    zero = (0,) * n
    roots = [b[0] for b in basis]
    root_idx = {r: k for k, r in enumerate(roots) if r != zero}
    cart_idx = [k for k, r in enumerate(roots) if r == zero]
    out = {}
    for a, (ra, ma) in enumerate(basis):
        for b, (rb, mb) in enumerate(basis):
            c = sp_comm(ma, mb)
            if c:
                tgt = tuple(x + y for x, y in zip(ra, rb))
                out[(a, b)] = _expand(c, tgt, basis, root_idx, cart_idx, zero)
    return out


def jacobi_defects(consts: dict, dim: int) -> int:
    """Number of triples (a, b, c) violating the Jacobi identity."""
    def br(x: dict, b: int) -> dict:
        out: dict = {}
        for a, v in x.items():
            for c, w in consts.get((a, b), {}).items():
                out[c] = out.get(c, 0) + v * w
        return {k: v for k, v in out.items() if v}

    bad = 0
    for a in range(dim):
        for b in range(a + 1, dim):
            ab = consts.get((a, b), {})
            for c in range(b + 1, dim):
                total: dict = {}
                for x in (br(ab, c), br(consts.get((b, c), {}), a), br(consts.get((c, a), {}), b)):
                    for k, v in x.items():
                        total[k] = total.get(k, 0) + v
                if any(total.values()):
                    bad += 1
    return bad


# ------------------------------------------------------------------ exponentials and charts

def nilradical_roots(shape: TShape, node: str) -> list[tuple[int, ...]]:
    """Positive roots with positive coefficient at node, in height-lex order: the variables of a chart."""
    t = shape.index(node)
    return [a for a in root_system(shape).positive if a[t] > 0]


def _generic_element(rep: RepMatrices, roots: list, nvars: int, offset: int = 0) -> dict:
    ops = root_operators(rep)
    z: dict = {}
    for k, a in enumerate(roots):
        x = Poly.var(nvars, offset + k)
        for key, v in ops[a][1].items():
            term = x.scale(v)
            z[key] = z[key] + term if key in z else term
    return {k: p for k, p in z.items() if p.terms}


def exp_apply(z: dict, vec: dict) -> dict:
    total = dict(vec)
    term = dict(vec)
    k = 1
    while True:
        term = {i: p.scale(Fraction(1, k)) for i, p in apply_poly(z, term).items()}
        if not term:
            return total
        for i, p in term.items():
            total[i] = total[i] + p if i in total else p
        k += 1


def generic_exp(rep: RepMatrices, node: str = "x1") -> tuple[PolyMatrix, list]:
    """exp(Z) for Z = sum_alpha xi_alpha F_alpha over the nilradical opposite to P_node."""
    roots = nilradical_roots(rep.shape, node)
    n = len(roots)
    z = _generic_element(rep, roots, n)
    dim = rep.dim
    ent = [[Poly(n) for _ in range(dim)] for _ in range(dim)]
    for c in range(dim):
        col = exp_apply(z, {c: Poly.one(n)})
        for r, p in col.items():
            ent[r][c] = p
    return PolyMatrix(n, ent), roots


def weyl_lift(rep: RepMatrices, i: int) -> Sparse:
    """exp(f_i) exp(-e_i) exp(f_i), a lift of the simple reflection s_i."""
    if i not in rep._lifts:
        n = rep.dim
        ef = sp_exp(rep.f[i], n)
        ee = sp_exp(sp_scale(rep.e[i], -1), n)
        rep._lifts[i] = sp_mul(sp_mul(ef, ee), ef)
    return rep._lifts[i]


def apply_lift(rep: RepMatrices, word, vec: dict) -> dict:
    for i in reversed(word):
        vec = apply_const(weyl_lift(rep, i), vec)
    return vec


def format_nodes(f: Format) -> tuple[str, str, str]:
    """Nodes whose fundamental representations build d1, d2 and d3."""
    d, t = f.f1 - 3, f.f3
    return "x1", (f"y{d}" if d >= 1 else "u"), f"z{t}"


def representation_for(shape: TShape, node: str) -> RepMatrices:
    if shape == TShape(2, 3, 3) and node == "x1":
        return adjoint_rep(shape)
    try:
        return minuscule_rep(shape, node)
    except NotMinuscule:
        raise UnsupportedFormat(f"no explicit representation for {node} on {shape.name()}") from None


def parse_sigma(shape: TShape, text) -> tuple[int, ...]:
    if isinstance(text, (tuple, list)):
        return tuple(shape.index(x) if isinstance(x, str) else x for x in text)
    text = str(text).strip()
    if text == "w0":
        return longest_element(shape).word
    return parse_word(shape, text)


@dataclass
class SchubertChart:
    fmt: Format
    shape: TShape
    sigma: tuple  # word in node indices, rightmost letter acts first
    roots: list  # one variable per root of the nilradical
    plucker: list  # Poly per basis vector of L(omega_x1), normalized at sigma(omega_x1)
    top_z1: list  # basis indices of the top z1-component of L(omega_x1)
    reps: tuple  # representations at the x, y, z nodes

    @property
    def nvars(self) -> int:
        return len(self.roots)

    @property
    def weights(self) -> list[int]:
        return [sum(a) for a in self.roots]

    @property
    def names(self) -> list[str]:
        return [f"xi{k + 1}" for k in range(self.nvars)]

    @property
    def sigma_labels(self) -> tuple[str, ...]:
        return tuple(self.shape.nodes[i] for i in self.sigma)

    def generators(self) -> list[Poly]:
        return [self.plucker[k] for k in self.top_z1]

    def to_json(self) -> dict:
        return {"format": list(self.fmt.as_tuple()), "sigma": ",".join(self.sigma_labels) or "e",
                "vars": self.names, "roots": [list(a) for a in self.roots], "weights": self.weights,
                "generators": [g.to_json() for g in self.generators()]}


def _check_format(f: Format) -> TShape:
    if f.f0 != 1:
        raise UnsupportedFormat("charts are built for cyclic quotients (f0 = 1)")
    shape = format_to_shape(f)
    kind = classify_type(shape)
    if not kind.finite:
        raise UnsupportedFormat(f"{f} is not a Dynkin format")
    if kind.name in ("E7", "E8"):
        raise UnsupportedFormat(f"explicit charts for {kind.name} are out of scope")
    return shape


def patch_parametrization(f: Format, sigma="w0") -> SchubertChart:
    shape = _check_format(f)
    word = parse_sigma(shape, sigma)
    xs, ys, zs = format_nodes(f)
    reps = tuple(representation_for(shape, s) for s in (xs, ys, zs))
    rep = reps[0]
    roots = nilradical_roots(shape, "x1")
    n = len(roots)
    z = _generic_element(rep, roots, n)
    vec = apply_lift(rep, word, exp_apply(z, {0: Poly.one(n)}))
    rs = root_system(shape)
    centre = rep.index_of_weight(apply_word(rs.cartan, word, rep.highest_weight))
    c = vec[centre].constant_term()
    if not c or len(vec[centre].terms) != 1:
        raise ArithmeticError("chart centre coordinate is not a nonzero constant")
    plucker = [vec.get(k, Poly(n)).scale(Fraction(1) / c) for k in range(rep.dim)]
    top = rep.component(shape.index("z1"))
    return SchubertChart(f, shape, word, roots, plucker, top, reps)


def schubert_ideal(chart: SchubertChart, max_pairs: int = 20_000) -> IdealHandle:
    return IdealHandle(chart.nvars, chart.generators(), max_pairs)


def _chart_map(chart: SchubertChart, rep: RepMatrices) -> list[list[Poly]]:
    """Top-z1 projection of sigma exp(Z) applied to the top-x1 component: rows top-z1, cols top-x1."""
    shape = chart.shape
    n = chart.nvars
    z = _generic_element(rep, chart.roots, n)
    rows = rep.component(shape.index("z1"))
    cols = rep.component(shape.index("x1"))
    out = [[Poly(n) for _ in cols] for _ in rows]
    for j, c in enumerate(cols):
        vec = apply_lift(rep, chart.sigma, exp_apply(z, {c: Poly.one(n)}))
        for i, r in enumerate(rows):
            if r in vec:
                out[i][j] = vec[r]
    return out


def levi_pairing(rep_a: RepMatrices, idx_a: list, rep_b: RepMatrices, idx_b: list, excluded: int) -> list[list[Fraction]]:
    """The bilinear form B(a, b) = a^T P b between two components invariant under the Levi of P_excluded."""
    n_a, n_b = len(idx_a), len(idx_b)
    pos_a = {k: p for p, k in enumerate(idx_a)}
    pos_b = {k: p for p, k in enumerate(idx_b)}
    rows = []
    nodes = [i for i in range(len(rep_a.e)) if i != excluded]
    for i in nodes:
        for xa, xb in ((rep_a.e[i], rep_b.e[i]), (rep_a.f[i], rep_b.f[i])):
            eqs: dict = {}
            # (X_a^T P)[p][q] = sum_r X_a[r][p] P[r][q]
            for (r, p), v in xa.items():
                if r in pos_a and p in pos_a:
                    for q in range(n_b):
                        eqs.setdefault((pos_a[p], q), {})
                        key = pos_a[r] * n_b + q
                        eqs[(pos_a[p], q)][key] = eqs[(pos_a[p], q)].get(key, 0) + v
            # (P X_b)[p][q] = sum_s P[p][s] X_b[s][q]
            for (s, q), v in xb.items():
                if s in pos_b and q in pos_b:
                    for p in range(n_a):
                        eqs.setdefault((p, pos_b[q]), {})
                        key = p * n_b + pos_b[s]
                        eqs[(p, pos_b[q])][key] = eqs[(p, pos_b[q])].get(key, 0) + v
            for row in eqs.values():
                dense = [Fraction(0)] * (n_a * n_b)
                for k, v in row.items():
                    dense[k] += v
                if any(dense):
                    rows.append(dense)
    ns = nullspace_q(rows, n_a * n_b)
    if len(ns) != 1:
        raise ArithmeticError(f"expected a unique invariant pairing, found {len(ns)}")
    v = ns[0]
    lead = next(x for x in v if x)
    return [[v[p * n_b + q] / lead for q in range(n_b)] for p in range(n_a)]


def _inverse(m):
    from .lie_core import invert_rational
    return invert_rational(m)


def _ht(vec) -> int:
    s = sum(vec)
    if Fraction(s).denominator != 1:
        raise ArithmeticError("weight difference is not in the root lattice")
    return int(s)


def schubert_resolution(chart: SchubertChart) -> GradedComplex:
    """d1 from L(omega_x), d2 = P_xy M_y, d3 = P_yz^{-T} M_z^T, graded by root height."""
    shape = chart.shape
    rs = root_system(shape)
    n = chart.nvars
    x1, z1 = shape.index("x1"), shape.index("z1")
    rx, ry, rz = chart.reps
    top_zx = chart.top_z1
    d1 = [[chart.plucker[k] for k in top_zx]]
    m2 = _chart_map(chart, ry)
    m3 = _chart_map(chart, rz)
    top_zy = ry.component(z1)
    top_xy = ry.component(x1)
    top_xz = rz.component(x1)
    top_zz = rz.component(z1)
    p_xy = levi_pairing(rx, top_zx, ry, top_zy, z1)
    p_yz = levi_pairing(ry, top_xy, rz, top_xz, x1)
    q = _inverse([list(r) for r in zip(*p_yz)])  # P_yz^{-T}
    f1, f2, f3 = len(top_zx), len(top_xy), len(top_zz)
    fmt = chart.fmt
    if (f1, f2, f3) != (fmt.f1, fmt.f2, fmt.f3):
        raise ArithmeticError(f"component sizes {(f1, f2, f3)} do not match {fmt}")
    d2 = [[sum((m2[k][l].scale(p_xy[i][k]) for k in range(len(top_zy)) if p_xy[i][k]), Poly(n))
           for l in range(f2)] for i in range(f1)]
    d3 = [[sum((m3[m][lp].scale(q[l][lp]) for lp in range(f2) if q[l][lp]), Poly(n))
           for m in range(f3)] for l in range(f2)]
    # twists from weights: coefficient of weight tau in sigma exp(Z) v_mu has height(mu - sigma^{-1} tau)
    inv = tuple(reversed(chart.sigma))

    def back(rep, k):
        return rs.weight_to_root(apply_word(rs.cartan, inv, rep.weights[k]))

    def root_of(rep, k):
        return rs.weight_to_root(rep.weights[k])

    hx = rs.weight_to_root(rx.highest_weight)
    s1 = [_ht(tuple(a - b for a, b in zip(hx, back(rx, k)))) for k in top_zx]
    s2 = []
    for l, a in enumerate(top_xy):
        i, k = next((i, k) for i in range(f1) for k in range(len(top_zy)) if p_xy[i][k])
        s2.append(_ht(tuple(x - y for x, y in zip(root_of(ry, a), back(ry, top_zy[k])))) + s1[i])
    s3 = []
    for m, b in enumerate(top_zz):
        l, lp = next((l, lp) for l in range(f2) for lp in range(f2) if q[l][lp])
        s3.append(_ht(tuple(x - y for x, y in zip(root_of(rz, top_xz[lp]), back(rz, b)))) + s2[l])
    return GradedComplex(fmt, n, [[0], s1, s2, s3], PolyMatrix(n, d1), PolyMatrix(n, d2),
                         PolyMatrix(n, d3), weights=chart.weights, names=chart.names)


@lru_cache(maxsize=32)
def generic_m11_zero(f: Format, word: tuple) -> bool:
    """m11 status of the generic example on the chart centred at the coset of word (node labels)."""
    chart = patch_parametrization(f, tuple(word))
    c = schubert_resolution(chart)
    _, s = structure_maps(c)
    return m11_is_zero(tor_m11(c, s))


# ------------------------------------------------------------------ oracles

def _levi_path(shape: TShape, excluded: int) -> list[int]:
    nodes = [i for i in range(shape.rank) if i != excluded]
    adj = {i: [] for i in nodes}
    for a, b in shape.edges():
        if a in adj and b in adj:
            adj[a].append(b)
            adj[b].append(a)
    ends = [i for i in nodes if len(adj[i]) <= 1]
    if any(len(v) > 2 for v in adj.values()) or not ends:
        raise UnsupportedShape("Levi factor is not of type A")
    path, prev = [min(ends)], None
    while len(path) < len(nodes):
        nxt = next(j for j in adj[path[-1]] if j != prev)
        prev = path[-1]
        path.append(nxt)
    return path


def _wedge2_action(m: list[list[Fraction]], pairs: list) -> list[list[Fraction]]:
    idx = {p: k for k, p in enumerate(pairs)}
    n = len(m)
    out = [[Fraction(0)] * len(pairs) for _ in pairs]
    for col, (a, b) in enumerate(pairs):
        for c in range(n):
            for (u, v), coeff in (((c, b), m[c][a]), ((a, c), m[c][b])):
                if not coeff or u == v:
                    continue
                sign = 1 if u < v else -1
                out[idx[tuple(sorted((u, v)))]][col] += sign * coeff
    return out


def _nilradical_action(rep: RepMatrices, roots: list, x: Sparse) -> list[list[Fraction]]:
    """Matrix of ad(x) on span{F_alpha : alpha in roots}."""
    ops = root_operators(rep)
    idx = {a: k for k, a in enumerate(roots)}
    out = [[Fraction(0)] * len(roots) for _ in roots]
    for col, a in enumerate(roots):
        c = sp_comm(x, ops[a][1])
        if not c:
            continue
        for b in roots:
            fb = ops[b][1]
            probe = next((k for k in c if k in fb), None)
            if probe is None:
                continue
            v = Fraction(c[probe]) / fb[probe]
            if not sp_add(c, fb, -v):
                out[idx[b]][col] = v
                break
        else:
            raise ArithmeticError("bracket left the nilradical")
    return out


def pfaffian_identification(chart: SchubertChart) -> list[Poly]:
    """Levi-equivariant substitution xi = Phi(y) identifying the chart of (1,n,n,1) with skew matrices.

    Returns, for each chart variable, a linear form in the C(n,2) skew entries y_ab
    (a < b, lexicographic), the order used by graded_res.generic_skew.
    """
    shape = chart.shape
    rep = chart.reps[0]
    x1 = shape.index("x1")
    path = _levi_path(shape, x1)
    size = len(path) + 1
    pairs = [(a, b) for a in range(size) for b in range(a + 1, size)]
    if len(pairs) != chart.nvars:
        raise UnsupportedFormat("nilradical is not a space of skew matrices")

    def std(k, raise_):
        m = [[Fraction(0)] * size for _ in range(size)]
        if raise_:
            m[k][k + 1] = Fraction(1)
        else:
            m[k + 1][k] = Fraction(1)
        return m

    for dual in (False, True):
        rows = []
        nv = chart.nvars
        for pos, node in enumerate(path):
            for raise_, x in ((True, rep.e[node]), (False, rep.f[node])):
                m = std(pos, raise_)
                if dual:
                    m = [[-m[j][i] for j in range(size)] for i in range(size)]
                a = _wedge2_action(m, pairs)
                b = _nilradical_action(rep, chart.roots, x)
                # Phi a = b Phi, Phi[alpha][pair]
                for r in range(nv):
                    for c in range(nv):
                        row = [Fraction(0)] * (nv * nv)
                        for k in range(nv):
                            row[r * nv + k] += a[k][c]
                            row[k * nv + c] -= b[r][k]
                        if any(row):
                            rows.append(row)
        ns = nullspace_q(rows, nv * nv)
        if len(ns) == 1:
            v = ns[0]
            y = [Poly.var(nv, k) for k in range(nv)]
            return [sum((y[k].scale(v[r * nv + k]) for k in range(nv) if v[r * nv + k]), Poly(nv))
                    for r in range(nv)]
    raise ArithmeticError("no equivariant identification with skew matrices")


def pfaffian_oracle(chart: SchubertChart) -> tuple[bool, list[Poly], list[Poly]]:
    """Compare I_sigma with the submaximal Pfaffian ideal of a generic skew matrix."""
    subst = pfaffian_identification(chart)
    nv = chart.nvars
    size = len(_levi_path(chart.shape, chart.shape.index("x1"))) + 1
    mine = [g.substitute(subst, nv) for g in chart.generators()]
    pf = submaximal_pfaffians(generic_skew(0, size, nv))
    return ideal_equal(IdealHandle(nv, mine), IdealHandle(nv, pf)), mine, pf


def skew_symmetrizer(d2: PolyMatrix) -> list[list[Fraction]] | None:
    """An invertible constant P with P d2 skew-symmetric, if one exists."""
    n = d2.rows
    if n != d2.cols:
        return None
    monos = sorted({m for r in d2.entries for e in r for m in e.terms})
    rows = []
    for mono in monos:
        c = [[Fraction(d2.entries[i][j].terms.get(mono, 0)) for j in range(n)] for i in range(n)]
        # (P C)[i][j] + (P C)[j][i] = 0, unknown P[i][k] at i*n+k
        for i in range(n):
            for j in range(i, n):
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    row[i * n + k] += c[k][j]
                    row[j * n + k] += c[k][i]
                if any(row):
                    rows.append(row)
    ns = nullspace_q(rows, n * n)
    if not ns:
        return None
    rng = random.Random(0)
    candidates = list(ns) + [[sum(x) for x in zip(*ns)]]
    candidates += [[sum(rng.randint(-5, 5) * v[k] for v in ns) for k in range(n * n)] for _ in range(20)]
    for v in candidates:
        p = [[Fraction(v[i * n + k]) for k in range(n)] for i in range(n)]
        if det_q(p) != 0:
            return p
    return None


def plucker_support(shape: TShape, node: str, word) -> set:
    """Weights whose coordinate is not identically zero on exp(n^-) w v, for the minuscule module at node."""
    rep = minuscule_rep(shape, node)
    roots = list(root_system(shape).positive)
    n = len(roots)
    z = _generic_element(rep, roots, n)
    rs = root_system(shape)
    start = rep.index_of_weight(apply_word(rs.cartan, tuple(word), rep.highest_weight))
    vec = apply_lift(rep, word, {0: Poly.one(n)})
    if start not in vec:
        raise ArithmeticError("Weyl lift does not move the extremal vector as expected")
    out = exp_apply(z, vec)
    return {rep.weights[k] for k, p in out.items() if p.terms}
