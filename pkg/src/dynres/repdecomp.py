"""Weight multiplicities and the z1-graded branching of L(omega_x1)^dual.

The Levi subalgebra for the z1-grading is sl(F1) x sl(F3); its components are
recorded as partition pairs (lam for F3*, mu for F1).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

from .errors import NonDominantWeight, NonDynkinFormat, TooManyRows, UnsupportedF0
from .lie_core import Format, TShape, format_to_shape, invert_rational, is_dynkin_format, reflect_root, root_system
from .weyl import _orbit, format_coset_table, reflect_weight

Vec = tuple[int, ...]


# ---------------------------------------------------------------- Freudenthal

class _CartanData:
    """Positive roots and an integral scaled inverse for an arbitrary finite Cartan matrix."""

    def __init__(self, cartan):
        self.cartan = cartan
        self.n = n = len(cartan)
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        seen, frontier = set(simple), list(simple)
        while frontier:
            nxt = []
            for root in frontier:
                for i in range(n):
                    img = reflect_root(cartan, root, i)
                    if min(img) >= 0 and img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        self.positive = sorted(seen, key=lambda v: (sum(v), v))
        self.pos_weights = [tuple(sum(cartan[i][k] * r[k] for k in range(n)) for i in range(n))
                            for r in self.positive]
        inv = invert_rational(cartan) if n else []
        den = 1
        for row in inv:
            for x in row:
                den = den * x.denominator // _gcd(den, x.denominator)
        self.den = den
        self.scaled_inv = [[int(x * den) for x in row] for row in inv]

    def form(self, a, b) -> int:
        """den * (a, b) for weights in fundamental coordinates."""
        inv = self.scaled_inv
        total = 0
        for i, ai in enumerate(a):
            if ai:
                row = inv[i]
                total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)
        return total

    def offset(self, top: Vec, mu: Vec) -> Vec:
        """Root coordinates k with mu = top - sum k_i alpha_i."""
        diff = [t - m for t, m in zip(top, mu)]
        out = []
        for row in self.scaled_inv:
            s = sum(r * d for r, d in zip(row, diff))
            if s % self.den:
                raise ValueError("weights differ by a non-root-lattice vector")
            out.append(s // self.den)
        return tuple(out)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def _cartan_data(cartan) -> _CartanData:
    return _CartanData(cartan)


def _dominant(cartan, c: Vec) -> Vec:
    while True:
        i = next((k for k, x in enumerate(c) if x < 0), None)
        if i is None:
            return c
        c = reflect_weight(cartan, c, i)


@lru_cache(maxsize=256)
def dominant_multiplicities(cartan, hw: Vec) -> dict:
    """Freudenthal's recursion on dominant weights. Keys are fundamental coordinates."""
    if any(x < 0 for x in hw):
        raise NonDominantWeight(f"{hw} is not dominant")
    data = _cartan_data(cartan)
    n = data.n
    if n == 0:
        return {(): 1}
    # dominant weights below hw are connected to hw by dominant-preserving root steps
    depth = {hw: 0}
    frontier = [hw]
    while frontier:
        nxt = []
        for mu in frontier:
            for aw in data.pos_weights:
                nu = tuple(m - a for m, a in zip(mu, aw))
                if min(nu) >= 0 and nu not in depth and min(data.offset(hw, nu)) >= 0:
                    depth[nu] = None
                    nxt.append(nu)
        frontier = nxt
    for mu in depth:
        depth[mu] = sum(data.offset(hw, mu))
    order = sorted(depth, key=lambda mu: (depth[mu], mu))
    lr = tuple(a + 1 for a in hw)
    top = data.form(lr, lr)
    mult = {hw: 1}
    dom_cache: dict = {}
    for mu in order[1:]:
        mr = tuple(a + 1 for a in mu)
        den = top - data.form(mr, mr)
        num = 0
        for aw in data.pos_weights:
            k = 1
            nu = tuple(m + a for m, a in zip(mu, aw))
            while True:
                off = data.offset(hw, nu)
                if min(off) < 0:
                    break
                d = dom_cache.get(nu)
                if d is None:
                    d = dom_cache[nu] = _dominant(cartan, nu)
                m = mult.get(d, 0)
                if m:
                    num += m * data.form(nu, aw)
                k += 1
                nu = tuple(m_ + a for m_, a in zip(nu, aw))
        val = Fraction(2 * num, den)
        if val.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity at {mu}")
        if val:
            mult[mu] = int(val)
    return mult


def weyl_dimension(cartan, hw: Vec) -> int:
    """Weyl's product formula; an independent check on Freudenthal."""
    data = _cartan_data(cartan)
    num = den = 1
    for root in data.positive:
        # (lambda + rho, alpha) for a positive root, simply laced: sum of coords weighted by root
        num *= sum((hw[i] + 1) * root[i] for i in range(data.n))
        den *= sum(root)
    return num // den


@dataclass(frozen=True)
class WeightMultiplicityMap:
    """Weights of L(hw) keyed by their offset k, where weight = hw - sum k_i alpha_i."""

    cartan: tuple
    highest_weight: Vec
    mults: dict = field(compare=False)

    def weight_of(self, offset) -> Vec:
        n = len(self.highest_weight)
        return tuple(self.highest_weight[i] - sum(self.cartan[i][j] * offset[j] for j in range(n))
                     for i in range(n))

    def weights(self):
        """Iterate (weight in fundamental coordinates, offset, multiplicity)."""
        for off, m in self.mults.items():
            yield self.weight_of(off), off, m

    def multiplicity(self, weight) -> int:
        data = _cartan_data(self.cartan)
        try:
            off = data.offset(self.highest_weight, tuple(weight))
        except ValueError:
            return 0
        return self.mults.get(off, 0)

    @property
    def dimension(self) -> int:
        return sum(self.mults.values())


@lru_cache(maxsize=32)
def _weight_map(cartan, hw: Vec) -> WeightMultiplicityMap:
    data = _cartan_data(cartan)
    dom = dominant_multiplicities(cartan, hw)
    mults = {}
    for mu, m in dom.items():
        for nu in _orbit(cartan, mu, 10_000_000):
            mults[data.offset(hw, nu)] = m
    return WeightMultiplicityMap(cartan, hw, mults)


def weight_multiplicities(shape: TShape, highest_weight) -> WeightMultiplicityMap:
    rs = root_system(shape)
    return _weight_map(rs.cartan, tuple(highest_weight))


# ---------------------------------------------------------------- Schur modules

def _check_rows(lam, n):
    lam = tuple(x for x in lam if x)
    if len(lam) > n:
        raise TooManyRows(f"partition {lam} has more than {n} rows")
    return lam


def schur_dimension(lam, n: int) -> int:
    """Hook-content formula for dim S_lam(C^n)."""
    lam = _check_rows(lam, n)
    conj = conjugate(lam)
    num = den = 1
    for i, row in enumerate(lam):
        for j in range(row):
            num *= n + j - i
            den *= (row - j - 1) + (conj[j] - i - 1) + 1
    return num // den


def conjugate(lam) -> tuple[int, ...]:
    lam = [x for x in lam if x]
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0] if lam else 0))


def schur_degrees(lam, gen_degrees) -> list[int]:
    """Sorted multiset of content sums over SSYT of shape lam, entry k weighted by gen_degrees[k]."""
    gens = tuple(gen_degrees)
    lam = _check_rows(lam, len(gens))
    counts = _schur_series(lam, gens)
    out = []
    for deg in sorted(counts):
        out.extend([deg] * counts[deg])
    return out


@lru_cache(maxsize=100_000)
def _schur_series(lam: tuple, gens: tuple) -> dict:
    # branching on the largest entry: remove a horizontal strip filled with len(gens)
    if not lam:
        return {0: 1}
    n = len(gens)
    if len(lam) > n:
        return {}
    if n == 1:
        return {lam[0] * gens[0]: 1}
    out: dict = {}
    size = sum(lam)
    for nu in _interlacing(lam, n - 1):
        strip = size - sum(nu)
        for deg, c in _schur_series(nu, gens[:-1]).items():
            key = deg + strip * gens[-1]
            out[key] = out.get(key, 0) + c
    return out


def _interlacing(lam, max_rows):
    """Partitions nu with lam_1 >= nu_1 >= lam_2 >= nu_2 >= ... and at most max_rows parts."""
    lam = list(lam)
    k = len(lam)

    def rec(i, acc):
        if i == k:
            nu = tuple(x for x in acc if x)
            if len(nu) <= max_rows:
                yield nu
            return
        lo = lam[i + 1] if i + 1 < k else 0
        for v in range(lam[i], lo - 1, -1):
            yield from rec(i + 1, acc + [v])

    yield from rec(0, [])


def module_name(lam, space: str) -> str:
    """S_{2,1}F3*, Λ^3F1 style names; empty for the trivial module."""
    lam = tuple(x for x in lam if x)
    if not lam:
        return ""
    if lam == (1,):
        return space
    if all(x == 1 for x in lam):
        return f"Λ^{len(lam)}{space}"
    if len(lam) == 1:
        return f"S_{lam[0]}{space}"
    return "S_{" + ",".join(map(str, lam)) + "}" + space


# ---------------------------------------------------------------- Levi branching

@dataclass(frozen=True)
class LeviComponent:
    j: int
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    multiplicity: int
    extremal: bool
    highest_weight: Vec  # in L(omega_x1)^dual, fundamental coordinates
    lowest_weight: Vec

    def dims(self, f: Format) -> tuple[int, int]:
        return schur_dimension(self.lam, f.f3), schur_dimension(self.mu, f.f1)

    def name(self) -> str:
        left = module_name(self.lam, "F3*")
        right = module_name(self.mu, "F1")
        return f"{left}⊗{right}" if left else right

    def to_json(self) -> dict:
        return {"j": self.j, "lambda": list(self.lam), "mu": list(self.mu),
                "multiplicity": self.multiplicity, "extremal": self.extremal, "name": self.name()}


@dataclass(frozen=True)
class LeviDecomposition:
    format: Format
    components: tuple[LeviComponent, ...]

    @property
    def dimension(self) -> int:
        total = 0
        for c in self.components:
            a, b = c.dims(self.format)
            total += c.multiplicity * a * b
        return total

    def layer(self, j: int) -> list[LeviComponent]:
        return [c for c in self.components if c.j == j]

    @property
    def extremal_count(self) -> int:
        return sum(1 for c in self.components if c.extremal)

    def to_json(self) -> dict:
        return {"format": list(self.format.as_tuple()),
                "dimension": self.dimension,
                "components": [c.to_json() for c in self.components]}

    def render(self) -> str:
        lines = [f"L(ω_x1)^∨ for format {self.format}: dimension {self.dimension}"]
        for j in sorted({c.j for c in self.components}):
            parts = []
            for c in self.layer(j):
                mark = "" if c.extremal else " [non-extremal]"
                mult = f"{c.multiplicity}·" if c.multiplicity > 1 else ""
                parts.append(f"{mult}{c.name()}{mark}")
            lines.append(f"  j={j}: " + "  ⊕  ".join(parts))
        return "\n".join(lines)


@dataclass(frozen=True)
class _LeviFrame:
    shape: TShape
    f1_chain: tuple[int, ...]  # y_{q-1} .. y1, u, x1
    f3_chain: tuple[int, ...]  # z2 .. z_{r-1}
    levi: tuple[int, ...]
    z1: int
    x1: int


def _frame(f: Format) -> _LeviFrame:
    if f.f0 != 1:
        raise UnsupportedF0("the z1 decomposition is implemented for f0 = 1")
    if not is_dynkin_format(f):
        raise NonDynkinFormat(f"{f} is not a Dynkin format")
    shape = format_to_shape(f)
    ix = shape.index
    f1_chain = tuple(ix(f"y{k}") for k in range(shape.q - 1, 0, -1)) + (ix("u"), ix("x1"))
    f3_chain = tuple(ix(f"z{k}") for k in range(2, shape.r))
    z1 = ix("z1")
    levi = tuple(i for i in range(shape.rank) if i != z1)
    return _LeviFrame(shape, f1_chain, f3_chain, levi, z1, ix("x1"))


def _sub_cartan(cartan, nodes):
    return tuple(tuple(cartan[a][b] for b in nodes) for a in nodes)


def _levi_lowest(cartan, levi, c: Vec) -> Vec:
    while True:
        i = next((k for k in levi if c[k] > 0), None)
        if i is None:
            return c
        c = reflect_weight(cartan, c, i)


def _chain_partition(labels, size: int, rows: int) -> tuple[int, ...]:
    """Partition with given sl Dynkin labels, padded with full columns to reach `size` boxes."""
    base = [sum(labels[k:]) for k in range(len(labels))] + [0]
    base = base[:rows]
    extra, rem = divmod(size - sum(base), rows)
    if rem or extra < 0:
        raise ArithmeticError(f"labels {labels} admit no partition of size {size} in {rows} rows")
    return tuple(x + extra for x in base if x + extra)


@lru_cache(maxsize=64)
def z1_decomposition(f: Format) -> LeviDecomposition:
    fr = _frame(f)
    rs = root_system(fr.shape)
    cartan = rs.cartan
    hw = rs.fundamental_weight(fr.x1)
    wmap = weight_multiplicities(fr.shape, hw)
    # weights of the dual are negatives; the offset k is shared and k[z1] is the degree
    layers: dict[int, dict[Vec, int]] = {}
    for mu, off, m in wmap.weights():
        nu = tuple(-x for x in mu)
        if all(nu[i] >= 0 for i in fr.levi):
            layers.setdefault(off[fr.z1], {})[nu] = m
    levi_cartan = _sub_cartan(cartan, fr.levi)
    levi_data = _cartan_data(levi_cartan)
    extremal_dom = _dominant(cartan, tuple(-x for x in hw))
    comps = []
    for j in sorted(layers):
        layer = dict(layers[j])
        found = []
        while layer:
            # a weight of maximal height in the layer is a Levi highest weight
            top = max(layer, key=lambda nu: (sum(data_offset(rs, hw, nu)), nu))
            mult = layer[top]
            local = tuple(top[i] for i in fr.levi)
            for lw, lm in dominant_multiplicities(levi_cartan, local).items():
                off = levi_data.offset(local, lw)
                full = list(top)
                for a, k in zip(fr.levi, off):
                    if k:
                        for i in range(rs.n):
                            full[i] -= k * cartan[a][i]
                full = tuple(full)
                left = layer.get(full, 0) - mult * lm
                if left < 0:
                    raise ArithmeticError("character subtraction went negative")
                if left:
                    layer[full] = left
                else:
                    layer.pop(full, None)
            lam = _chain_partition([top[i] for i in reversed(fr.f3_chain)], j, f.f3)
            mu = _chain_partition([top[i] for i in fr.f1_chain], 2 * j + 1, f.f1)
            extremal = _dominant(cartan, top) == extremal_dom
            found.append(LeviComponent(j, lam, mu, mult, extremal, top,
                                       _levi_lowest(cartan, fr.levi, top)))
        found.sort(key=lambda c: (tuple(-x for x in c.lam), tuple(-x for x in c.mu)))
        comps.extend(found)
    return LeviDecomposition(f, tuple(comps))


def data_offset(rs, hw, nu) -> Vec:
    """Offset of a dual weight nu above the dual lowest weight -hw."""
    data = _cartan_data(rs.cartan)
    return tuple(-x for x in data.offset(tuple(-x for x in hw), nu))


def mark_extremal(decomp: LeviDecomposition) -> LeviDecomposition:
    """Recompute the extremal flags: highest weight in the W-orbit of the dual lowest weight."""
    shape = format_to_shape(decomp.format)
    rs = root_system(shape)
    x1 = shape.index("x1")
    target = _dominant(rs.cartan, tuple(-x for x in rs.fundamental_weight(x1)))
    comps = tuple(replace(c, extremal=_dominant(rs.cartan, c.highest_weight) == target)
                  for c in decomp.components)
    return LeviDecomposition(decomp.format, comps)


@dataclass(frozen=True)
class CosetMatch:
    coset_word: tuple[str, ...]
    component: LeviComponent


def coset_component_match(f: Format) -> list[CosetMatch]:
    """Pair each double coset [sigma] with the extremal component whose Levi-lowest weight is -sigma(omega_x1)."""
    tab = format_coset_table(f)
    decomp = z1_decomposition(f)
    by_lowest = {c.lowest_weight: c for c in decomp.components if c.extremal}
    out = []
    for k in range(len(tab)):
        low = tuple(-x for x in tab.rep_weight(k))
        comp = by_lowest.get(low)
        if comp is None:
            raise ArithmeticError(f"no extremal component with lowest weight {low}")
        out.append(CosetMatch(tab.rep_labels(k), comp))
    if len(out) != decomp.extremal_count:
        raise ArithmeticError("coset and extremal component counts differ")
    return out


def support_betti(f: Format, word) -> tuple[int, int, int, int]:
    """Betti numbers read from the support of a minimal double-coset representative.

    If the representative only uses y_1..y_d' and z_1..z_t', the family already
    lives on the smaller diagram T_{2,d'+1,t'+1}, whose top format is
    (1, 3+d', 2+d'+t', t'). This reproduces the worked D_n and E6 lists.
    """
    shape = format_to_shape(f)
    labels = [shape.nodes[i] for i in word]
    d = max((int(s[1:]) for s in labels if s[0] == "y"), default=0)
    t = max((int(s[1:]) for s in labels if s[0] == "z"), default=0)
    return (1, 3 + d, 2 + d + t, t)


def betti_options(f: Format) -> list[tuple[int, int, int, int]]:
    """Minimal Betti numbers of the family attached to each nontrivial double coset, in coset order."""
    _frame(f)
    tab = format_coset_table(f)
    return [support_betti(f, tab.rep_word(k)) for k in range(1, len(tab))]
