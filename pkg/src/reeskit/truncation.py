"""Presentations of blowup algebras of truncated complete intersections.

Given a homogeneous regular sequence f_1, ..., f_r of degrees d_1 >= ... >=
d_r and a truncation degree d >= d_1, the ideal generated by the degree->=d
part of (f_1, ..., f_r) is spanned by the products of f_l with the degree
a_l = d - d_l monomials.  Its Rees algebra is presented over the matrix
machinery of :mod:`reeskit.reescomb` by the 2x2 minors of the Rees matrix
together with a family of extra relations h_1, ..., h_t obtained by
rewriting the Koszul syzygies -f_j e_i + f_i e_j over the monomial
generators of each block.

Two regimes are implemented.  For d >= d_1 + d_2 every h_k is linear in the
T-variables (bidegree (0, 1)) and the presentation is minors plus the h
family, for any r.  For r = 2 and d_1 <= d < d_1 + d_2 there is a single h
of bidegree (delta, 1) with delta = d_1 + d_2 - d, and the presentation
ideal is recovered by a delta-fold colon by x_1 from the product of (h)
with the weight-truncation ideal of the Rees matrix ring.  Any other
combination is outside the proven range and raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .groebner import (
    AlgebraMap,
    Guard,
    Ideal,
    algebra_map,
    ideal_colon,
    kernel_of_map,
    transport,
)
from .polyring import (
    FieldSpec,
    PolyError,
    Polynomial,
    RingSpec,
    VariableMeta,
    bidegree,
    build_ring,
    parse_poly,
    weighted_degree,
)
from .reescomb import (
    Instance,
    base_ring,
    build_B,
    build_C,
    exponents_to_index,
    fiber_ring,
    minors2,
    multi_index_set,
    rees_ring,
    t_name,
    x_meta,
    x_monomial,
)


class TruncationRangeError(PolyError):
    """The (r, d) combination is outside the proven presentation range."""


@dataclass(frozen=True)
class TruncationInstance:
    """A truncation problem: the sequence f, its degrees, and the cut d."""

    n: int
    field: FieldSpec
    f: tuple  # homogeneous polynomials in the base ring, degrees descending
    degrees: tuple
    d: int

    def __post_init__(self):
        r = len(self.f)
        if not 1 <= r <= self.n:
            raise PolyError("need 1 <= r <= n polynomials")
        if any(self.degrees[i] < self.degrees[i + 1] for i in range(r - 1)):
            raise PolyError("degrees must be sorted descending")
        if self.d < self.degrees[0]:
            raise PolyError("truncation degree d must be at least the top degree")

    @property
    def r(self) -> int:
        return len(self.f)

    @property
    def a(self) -> tuple:
        return tuple(self.d - di for di in self.degrees)

    @property
    def delta(self) -> Optional[int]:
        """d_1 + d_2 - d for r = 2 (the bidegree shift of the single h)."""
        if self.r < 2:
            return None
        return max(self.degrees[0] + self.degrees[1] - self.d, 0)

    def sigma(self, i: int, j: int) -> int:
        """d - d_i - d_j for a 1-based pair i < j."""
        return self.d - self.degrees[i - 1] - self.degrees[j - 1]

    @property
    def regime(self) -> str:
        if self.r == 1 or self.d >= self.degrees[0] + self.degrees[1]:
            return "wide"
        if self.r == 2:
            return "narrow"
        raise TruncationRangeError(
            "no proven presentation for r >= 3 with d below d_1 + d_2"
        )

    def instance(self) -> Instance:
        # zero powers stay: every block keeps its T-variables here
        return Instance(self.n, self.a, self.field)

    def to_dict(self) -> dict:
        return {
            "mode": "truncation",
            "n": self.n,
            "field": str(self.field),
            "f": [str(p) for p in self.f],
            "degrees": list(self.degrees),
            "d": self.d,
            "a": list(self.a),
            "delta": self.delta,
        }


def truncation_instance(
    n: int, field: FieldSpec, polys: Sequence[Union[str, Polynomial]], d: int
) -> TruncationInstance:
    """Build and validate a truncation instance; string entries are parsed
    in the base ring k[x_1..x_n].  Degrees are computed, not trusted."""
    R = base_ring(n, field)
    fs = []
    for p in polys:
        q = parse_poly(R, p) if isinstance(p, str) else transport(p, R)
        if not q:
            raise PolyError("zero entry in the sequence")
        if weighted_degree(q, "std-x") is None:
            raise PolyError(f"inhomogeneous entry {q}")
        fs.append(q)
    degs = [p.total_degree for p in fs]
    order = sorted(range(len(fs)), key=lambda i: degs[i], reverse=True)
    fs = tuple(fs[i] for i in order)
    return TruncationInstance(n, field, fs, tuple(p.total_degree for p in fs), d)


# ---------------------------------------------------------------------------
# regular sequences


def check_regular_sequence(fs: Sequence[Polynomial], guard: Optional[Guard] = None) -> bool:
    """True when each f_i is a nonzerodivisor modulo its predecessors,
    decided by the colon test (f_1..f_{i-1}) : f_i = (f_1..f_{i-1})."""
    if not fs:
        return True
    ring = fs[0].ring
    for p in fs:
        if not p:
            return False
        if weighted_degree(p, "std-x") is None:
            raise PolyError("regular-sequence test expects homogeneous inputs")
    for i in range(len(fs)):
        head = Ideal(ring, tuple(fs[:i]))
        quo = ideal_colon(head, Ideal(ring, (fs[i],)), guard)
        if not quo.equals(head, guard):
            return False
    return True


# ---------------------------------------------------------------------------
# truncation generators


def truncation_generators(ti: TruncationInstance) -> list:
    """The products of f_l with the degree-a_l monomials, listed in the same
    order as the T-variable roster (descending block/index)."""
    R = ti.f[0].ring
    out = []
    pairs = []
    for l, al in enumerate(ti.a, start=1):
        for j in multi_index_set(al, ti.n):
            pairs.append((l, j))
    pairs.sort(reverse=True)
    for l, j in pairs:
        out.append(x_monomial(R, ti.a[l - 1], j, ti.n) * ti.f[l - 1])
    return out


# ---------------------------------------------------------------------------
# the h family


@dataclass(frozen=True)
class HEntry:
    i: int
    j: int
    w_exps: tuple  # exponent vector of the basis monomial w (in the x part)
    poly: Polynomial


@dataclass(frozen=True)
class HFamily:
    """The extra presentation relations, one per pair (i, j) and basis
    monomial of degree sigma_{i,j} (a single entry in the narrow regime)."""

    entries: tuple

    @property
    def polys(self) -> tuple:
        return tuple(e.poly for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def _expand_on_block(S: RingSpec, p: Polynomial, l: int, al: int, n: int) -> Polynomial:
    """Rewrite a homogeneous polynomial of degree al as a constant combination
    of the block-l generators: each monomial maps straight to its T-variable."""
    acc = S.zero()
    for e, c in p.terms:
        xexps = _x_part(p.ring, e, n)
        if sum(xexps) != al:
            raise PolyError("block expansion degree mismatch")
        acc = acc + S.var(t_name(l, exponents_to_index(xexps))) * c
    return acc


def _expand_with_cofactors(S: RingSpec, p: Polynomial, l: int, al: int, n: int) -> Polynomial:
    """Rewrite a homogeneous polynomial of degree al + delta over the block-l
    generators with monomial cofactors: split each monomial as (largest
    degree-al divisor) * cofactor, unique under the greedy first-variable
    rule so the output is deterministic."""
    acc = S.zero()
    for e, c in p.terms:
        xexps = list(_x_part(p.ring, e, n))
        need = al
        basis = [0] * n
        for s in range(n):
            take = min(xexps[s], need)
            basis[s] = take
            xexps[s] -= take
            need -= take
        if need:
            raise PolyError("cofactor expansion degree mismatch")
        co = [0] * S.nvars
        for s in range(n):
            if xexps[s]:
                co[S.position(f"x{s + 1}")] = xexps[s]
        mono = S.monomial(tuple(co), c)
        acc = acc + mono * S.var(t_name(l, exponents_to_index(tuple(basis))))
    return acc


def _x_part(ring: RingSpec, exps: tuple, n: int) -> tuple:
    out = [0] * n
    for i, x in enumerate(exps):
        if x:
            meta = ring.variables[i]
            if meta.block != 0:
                raise PolyError("expected a polynomial in the x-variables only")
            out[meta.display_row - 1] = x
    return tuple(out)


def h_polynomials(ti: TruncationInstance, redundant: bool = False) -> HFamily:
    """The rewriting of the truncated Koszul syzygies over the block bases.

    Wide regime (d >= d_1 + d_2, any r): for every pair i < j and every
    monomial w of degree sigma_{i,j}, the syzygy w * (-f_j e_i + f_i e_j)
    expands with constant coefficients; the family has
    sum of binom(sigma_{i,j} + n - 1, n - 1) members, each of bidegree (0,1).
    With ``redundant=True`` the larger row-shifted spanning family of
    monomials is used instead (same ideal, structural cross-checks only).

    Narrow regime (r = 2, d < d_1 + d_2): the single column (-f_2, f_1)
    expands with monomial cofactors of degree delta; one h of bidegree
    (delta, 1).
    """
    regime = ti.regime
    inst = ti.instance()
    S = rees_ring(inst)
    R = ti.f[0].ring
    n = ti.n
    entries = []
    if regime == "wide":
        for i in range(1, ti.r + 1):
            for j in range(i + 1, ti.r + 1):
                sigma = ti.sigma(i, j)
                ws = []
                if not redundant:
                    ws = [x_monomial(R, sigma, k, n) for k in multi_index_set(sigma, n)]
                else:
                    if sigma == 0:
                        ws = [R.one()]
                    else:
                        seen = set()
                        for k in multi_index_set(sigma, n, strict=True):
                            base = x_monomial(R, sigma, k, n)
                            for s in range(1, n + 1):
                                w = (base * R.var(f"x{s}")).__mul__(1)
                                w = _exact_x1_quotient(w, R)
                                if w.terms not in seen:
                                    seen.add(w.terms)
                                    ws.append(w)
                for w in ws:
                    h = (
                        -_expand_on_block(S, w * ti.f[j - 1], i, ti.a[i - 1], n)
                        + _expand_on_block(S, w * ti.f[i - 1], j, ti.a[j - 1], n)
                    )
                    entries.append(HEntry(i, j, w.terms[0][0], h))
    else:
        h = -_expand_with_cofactors(S, ti.f[1], 1, ti.a[0], n) + _expand_with_cofactors(
            S, ti.f[0], 2, ti.a[1], n
        )
        entries.append(HEntry(1, 2, (0,) * R.nvars, h))
    return HFamily(tuple(entries))


def _exact_x1_quotient(p: Polynomial, R: RingSpec) -> Polynomial:
    """Divide a monomial by x_1 (the row-shifted spanning monomials carry a
    positive x_1 exponent by construction)."""
    (e, c), = p.terms
    pos = R.position("x1")
    if e[pos] < 1:
        raise PolyError("spanning monomial lost its x_1 factor")
    ne = list(e)
    ne[pos] -= 1
    return R.monomial(tuple(ne), c)


# ---------------------------------------------------------------------------
# presentation ideals and oracle maps


def truncation_value_ring(ti: TruncationInstance) -> RingSpec:
    metas = [x_meta(s, ti.n) for s in range(1, ti.n + 1)]
    metas.append(VariableMeta("t", 1))
    return build_ring(ti.field, metas)


def chi_map(ti: TruncationInstance) -> AlgebraMap:
    """The composite presentation map onto the Rees algebra of the truncation:
    x_i to x_i and T_{l,j} to (monomial of j) * f_l * t."""
    inst = ti.instance()
    S = rees_ring(inst)
    tgt = truncation_value_ring(ti)
    t = tgt.var("t")
    images = {f"x{s}": tgt.var(f"x{s}") for s in range(1, ti.n + 1)}
    for l, al in enumerate(ti.a, start=1):
        fl = transport(ti.f[l - 1], tgt)
        for j in multi_index_set(al, ti.n):
            images[t_name(l, j)] = x_monomial(tgt, al, j, ti.n) * fl * t
    return algebra_map(S, tgt, images)


def fiber_chi_map(ti: TruncationInstance) -> AlgebraMap:
    """The fiber-side presentation map (T-variables only)."""
    inst = ti.instance()
    T = fiber_ring(inst)
    tgt = truncation_value_ring(ti)
    t = tgt.var("t")
    images = {}
    for l, al in enumerate(ti.a, start=1):
        fl = transport(ti.f[l - 1], tgt)
        for j in multi_index_set(al, ti.n):
            images[t_name(l, j)] = x_monomial(tgt, al, j, ti.n) * fl * t
    return algebra_map(T, tgt, images)


def rees_presentation(ti: TruncationInstance, guard: Optional[Guard] = None) -> Ideal:
    """The defining ideal of the Rees algebra of the truncation.

    Wide regime: minors of the Rees matrix plus the h family.  Narrow
    regime (r = 2): the delta-fold colon by x_1 of (h_1) times the
    weight-truncation ideal, taken together with the minors.  Every
    generator is re-checked to map to zero under the presentation map.
    """
    from .reescomb import a_geq_generators

    regime = ti.regime
    inst = ti.instance()
    S = rees_ring(inst)
    C = build_C(inst)
    mins = tuple(minors2(C))
    fam = h_polynomials(ti)
    if regime == "wide":
        out = Ideal(S, mins + fam.polys)
    else:
        delta = ti.delta
        lgens = a_geq_generators(S, delta)
        h1 = fam.polys[0]
        J = Ideal(S, mins + tuple(h1 * m for m in lgens))
        x1 = Ideal(S, (S.var("x1"),))
        for _ in range(delta):
            J = ideal_colon(J, x1, guard)
        out = J
    chi = chi_map(ti)
    for g in out.generators:
        if chi.apply(g):
            raise PolyError("presentation generator does not map to zero")
    return out


def fiber_presentation(ti: TruncationInstance, guard: Optional[Guard] = None) -> Ideal:
    """The defining ideal of the special fiber ring of the truncation.

    Wide regime: minors of the fiber matrix plus the (pure-T) h family.
    Narrow regime: the oracle kernel of the fiber map; the callers report
    the weight-truncation module identification alongside.
    """
    regime = ti.regime
    inst = ti.instance()
    T = fiber_ring(inst)
    if regime == "wide":
        B = build_B(inst)
        fam = h_polynomials(ti)
        gens = tuple(minors2(B)) + tuple(transport(h, T) for h in fam.polys)
        return Ideal(T, gens)
    return kernel_of_map(fiber_chi_map(ti), guard)
