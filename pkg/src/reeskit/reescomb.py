"""Index combinatorics and matrix builders for blowups of sums of powers
of the maximal ideal.

For a sequence a_1 <= ... <= a_r of powers over R = k[x_1..x_n], the Rees
algebra of m^{a_1} + ... + m^{a_r} (direct sum) is presented by the 2x2
minors of an n-row matrix C whose first column is x_1..x_n and whose
remaining columns, one per strict multi-index, are filled with T-variables
under a row-shift renaming; dropping the x-column gives the matrix B
presenting the special fiber ring.  This module builds the rings, the
matrices, their minors, the predicted leading-monomial pattern of those
minors, the distinguished variable ideals K, L, P, the weight-truncation
generators used for symbolic powers, and the independent-set witness for
the dimension count.

The x-column is treated as the block-0 column of the same construction
(columns of the sequence 1, a_1, ..., a_r), which lets every routine here
work uniformly on B, C, and arbitrary column submatrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Optional, Sequence

from .groebner import Ideal
from .polyring import (
    FieldSpec,
    PolyError,
    Polynomial,
    RingSpec,
    VariableMeta,
    build_ring,
    mono_mul,
)


# ---------------------------------------------------------------------------
# multi-indices


def multi_index_set(a: int, n: int, strict: bool = False) -> list:
    """All multi-indices (j_{n-1}, ..., j_1) with 0 <= j_1 <= ... <= j_{n-1} <= a,
    entries weakly decreasing as written; ``strict`` raises the lower bound
    to 1.  Sorted ascending in the blockwise-lex comparison."""
    if a < 0 or n < 1:
        raise PolyError("multi_index_set needs a >= 0 and n >= 1")
    lo = 1 if strict else 0
    if a < lo:
        return []
    out = [tuple(reversed(c)) for c in combinations_with_replacement(range(lo, a + 1), n - 1)]
    out.sort()
    return out


def index_is_valid(a: int, j: tuple, strict: bool = False) -> bool:
    lo = 1 if strict else 0
    asc = tuple(reversed(j))
    return all(lo <= v <= a for v in asc) and all(
        asc[i] <= asc[i + 1] for i in range(len(asc) - 1)
    )


def x_exponents(a: int, j: tuple, n: int) -> tuple:
    """Exponent vector of the monomial attached to j: consecutive differences
    of 0, j_1, ..., j_{n-1}, a.  Total degree is a."""
    if len(j) != n - 1 or not index_is_valid(a, j):
        raise PolyError(f"{j} is not a valid multi-index for a={a}, n={n}")
    asc = [0] + list(reversed(j)) + [a]
    return tuple(asc[i + 1] - asc[i] for i in range(n))


def exponents_to_index(e: Sequence[int]) -> tuple:
    """Inverse of :func:`x_exponents`: partial sums, written largest first."""
    partial = []
    s = 0
    for v in e[:-1]:
        s += v
        partial.append(s)
    return tuple(reversed(partial))


def shifted_index(j: tuple, s: int) -> tuple:
    """Row-s renaming: decrement the s - 1 lowest entries of j."""
    k = s - 1
    if k == 0:
        return j
    cut = len(j) - k
    return j[:cut] + tuple(v - 1 for v in j[cut:])


def t_name(l: int, j: tuple) -> str:
    return f"T{l}" + "".join(f"_{v}" for v in j)


def entry_variable(l: int, j: tuple, s: int) -> str:
    """Name of the matrix entry for block l, strict index j, row s (1-based,
    top row unshifted).  The image under the Rees map is x_s/x_1 times the
    monomial of j times t_l."""
    n = len(j) + 1
    if not 1 <= s <= n:
        raise PolyError(f"row {s} out of range 1..{n}")
    if not index_is_valid(a=max(j) if j else 0, j=j, strict=True):
        raise PolyError(f"{j} is not a strict multi-index")
    return t_name(l, shifted_index(j, s))


# ---------------------------------------------------------------------------
# instances and rings


@dataclass(frozen=True)
class Instance:
    """One problem instance: n variables, power sequence a, coefficient field."""

    n: int
    a: tuple
    field: FieldSpec
    stripped: int = 0  # zero powers removed at construction (powers mode)

    def __post_init__(self):
        if self.n < 1:
            raise PolyError("instance needs n >= 1")
        if any(v < 0 for v in self.a):
            raise PolyError("powers must be non-negative")
        if any(self.a[i] > self.a[i + 1] for i in range(len(self.a) - 1)):
            raise PolyError("powers must be weakly increasing")

    @classmethod
    def powers(cls, n: int, a: Sequence[int], field: FieldSpec) -> "Instance":
        """Powers-mode constructor: zero powers contribute a free polynomial
        factor to the Rees algebra and are stripped, with the count recorded."""
        a = tuple(a)
        if any(a[i] > a[i + 1] for i in range(len(a) - 1)):
            raise PolyError("powers must be listed weakly increasing")
        kept = tuple(v for v in a if v > 0)
        return cls(n, kept, field, stripped=len(a) - len(kept))

    @property
    def r(self) -> int:
        return len(self.a)

    def to_dict(self) -> dict:
        return {
            "mode": "powers",
            "n": self.n,
            "a": list(self.a),
            "field": str(self.field),
            "strippedZeroPowers": self.stripped,
        }


def x_meta(s: int, n: int) -> VariableMeta:
    """The x-variable of display row s: block 0, index (1,..,1,0,..,0) with
    s - 1 trailing zeros."""
    return VariableMeta(f"x{s}", 0, (1,) * (n - s) + (0,) * (s - 1), display_row=s)


def t_metas(inst: Instance) -> list:
    out = []
    for l, al in enumerate(inst.a, start=1):
        for j in multi_index_set(al, inst.n):
            out.append(VariableMeta(t_name(l, j), l, j))
    return out


def fiber_ring(inst: Instance) -> RingSpec:
    """The T-variable polynomial ring presenting the special fiber."""
    return build_ring(inst.field, t_metas(inst))


def rees_ring(inst: Instance) -> RingSpec:
    """The x-and-T polynomial ring presenting the Rees algebra."""
    return build_ring(inst.field, [x_meta(s, inst.n) for s in range(1, inst.n + 1)] + t_metas(inst))


def base_ring(inst_or_n, field: Optional[FieldSpec] = None) -> RingSpec:
    """The coordinate ring k[x_1..x_n]."""
    if isinstance(inst_or_n, Instance):
        n, field = inst_or_n.n, inst_or_n.field
    else:
        n = inst_or_n
    return build_ring(field, [x_meta(s, n) for s in range(1, n + 1)])


def value_ring(inst: Instance) -> RingSpec:
    """The target ring k[x_1..x_n, t_1..t_r] of the Rees and fiber maps."""
    metas = [x_meta(s, inst.n) for s in range(1, inst.n + 1)]
    metas += [VariableMeta(f"t{l}", l) for l in range(1, inst.r + 1)]
    return build_ring(inst.field, metas)


def x_monomial(ring: RingSpec, a: int, j: tuple, n: Optional[int] = None) -> Polynomial:
    """The degree-a monomial in the x-variables attached to j, as an element
    of ``ring``."""
    n = n or len(j) + 1
    exps = x_exponents(a, j, n)
    e = [0] * ring.nvars
    for s, v in enumerate(exps, start=1):
        if v:
            e[ring.position(f"x{s}")] = v
    return ring.monomial(tuple(e))


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class VarMatrix:
    """An n-row matrix of ring variables with one column per (block, strict
    index) label; the x-column, when present, is the block-0 column.

    Column labels increase strictly left to right; the entry in row s of
    column (l, j) is the row-s renaming of (l, j)."""

    ring: RingSpec
    rows: int
    columns: tuple  # tuple[(block, strict index)]

    def __post_init__(self):
        labels = list(self.columns)
        if any(labels[i] >= labels[i + 1] for i in range(len(labels) - 1)):
            raise PolyError("matrix columns must increase strictly")

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def entry_meta(self, s: int, col: tuple) -> VariableMeta:
        l, j = col
        return self.ring.by_block_index(l, shifted_index(j, s))

    def entry_name(self, s: int, col: tuple) -> str:
        return self.entry_meta(s, col).name

    def entry(self, s: int, col: tuple) -> Polynomial:
        return self.ring.var(self.entry_name(s, col))

    def grid_labels(self) -> list:
        return [
            [self.entry_meta(s, col).label for col in self.columns]
            for s in range(1, self.rows + 1)
        ]

    def render(self) -> str:
        """Aligned text grid of subscripted entry labels."""
        grid = self.grid_labels()
        widths = [max(len(row[c]) for row in grid) for c in range(self.ncols)]
        return "\n".join(
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
            for row in grid
        )


def strict_columns(inst: Instance) -> list:
    cols = []
    for l, al in enumerate(inst.a, start=1):
        for j in multi_index_set(al, inst.n, strict=True):
            cols.append((l, j))
    cols.sort()
    return cols


def build_B(inst: Instance) -> VarMatrix:
    """The T-variable matrix presenting the special fiber ring."""
    return VarMatrix(fiber_ring(inst), inst.n, tuple(strict_columns(inst)))


def build_C(inst: Instance) -> VarMatrix:
    """The Rees matrix: the x-column (block 0) followed by the columns of B."""
    xcol = (0, (1,) * (inst.n - 1))
    return VarMatrix(rees_ring(inst), inst.n, (xcol,) + tuple(strict_columns(inst)))


def column_submatrix(matrix: VarMatrix, picks: Sequence[int]) -> VarMatrix:
    """Submatrix on a subset of column positions (all rows kept)."""
    cols = tuple(matrix.columns[i] for i in sorted(set(picks)))
    return VarMatrix(matrix.ring, matrix.rows, cols)


# ---------------------------------------------------------------------------
# minors and the predicted initial ideal


@dataclass(frozen=True)
class Minor:
    """A labelled 2x2 minor: columns c1 < c2, rows s < t, polynomial
    entry(c1,s)*entry(c2,t) - entry(c2,s)*entry(c1,t)."""

    c1: tuple
    c2: tuple
    s: int
    t: int
    poly: Polynomial

    def describe(self) -> str:
        return f"minor(cols {self.c1},{self.c2}; rows {self.s},{self.t})"


def minor_grid(matrix: VarMatrix) -> list:
    """All labelled 2x2 minors of the matrix; zero minors are kept out."""
    out = []
    for (i1, c1), (i2, c2) in combinations(enumerate(matrix.columns), 2):
        for s, t in combinations(range(1, matrix.rows + 1), 2):
            p = matrix.entry(s, c1) * matrix.entry(t, c2) - matrix.entry(s, c2) * matrix.entry(t, c1)
            if p:
                out.append(Minor(c1, c2, s, t, p))
    return out


def minors2(matrix: VarMatrix) -> list:
    """The 2x2 minors as polynomials (binomial quadrics)."""
    return [m.poly for m in minor_grid(matrix)]


def predicted_initial_gens(matrix: VarMatrix) -> list:
    """The predicted generators of the initial ideal of the 2x2 minors:
    products entry(c1,s)*entry(c2,t) over column pairs c1 < c2 and row pairs
    s < t, deduplicated."""
    ring = matrix.ring
    seen = set()
    out = []
    for c1, c2 in combinations(matrix.columns, 2):
        for s, t in combinations(range(1, matrix.rows + 1), 2):
            e1 = ring.var(matrix.entry_name(s, c1)).terms[0][0]
            e2 = ring.var(matrix.entry_name(t, c2)).terms[0][0]
            e = mono_mul(e1, e2)
            if e not in seen:
                seen.add(e)
                out.append(ring.monomial(e))
    key = ring.sort_key()
    out.sort(key=lambda p: key(p.terms[0][0]), reverse=True)
    return out


# ---------------------------------------------------------------------------
# algebra maps


def rees_maps(inst: Instance):
    """The presentation epimorphisms onto the Rees algebra and the fiber ring:
    T_{l,j} goes to the monomial of j times t_l, and x_i stays put."""
    from .groebner import algebra_map

    tgt = value_ring(inst)
    images_phi = {f"x{s}": tgt.var(f"x{s}") for s in range(1, inst.n + 1)}
    images_psi = {}
    for l, al in enumerate(inst.a, start=1):
        tl = tgt.var(f"t{l}")
        for j in multi_index_set(al, inst.n):
            img = x_monomial(tgt, al, j, inst.n) * tl
            images_phi[t_name(l, j)] = img
            images_psi[t_name(l, j)] = img
    phi = algebra_map(rees_ring(inst), tgt, images_phi)
    psi = algebra_map(fiber_ring(inst), tgt, images_psi)
    return phi, psi


# ---------------------------------------------------------------------------
# distinguished ideals and witnesses


def special_ideals(inst: Instance):
    """The variable ideals (K, L, P) in their ambient polynomial rings:
    K = first-row T-variables of B (strict indices) in the fiber ring,
    L = K + (x_1) in the Rees ring, P = all block-r variables in the fiber
    ring.  Quotients by the minor ideals are taken by the callers."""
    TR = fiber_ring(inst)
    SR = rees_ring(inst)
    k_names = [t_name(l, j) for l, al in enumerate(inst.a, start=1)
               for j in multi_index_set(al, inst.n, strict=True)]
    K = Ideal(TR, tuple(TR.var(nm) for nm in k_names))
    L = Ideal(SR, (SR.var("x1"),) + tuple(SR.var(nm) for nm in k_names))
    r = inst.r
    P = Ideal(
        TR,
        tuple(TR.var(t_name(r, j)) for j in multi_index_set(inst.a[-1], inst.n)),
    ) if r else Ideal(TR, ())
    return K, L, P


def a_geq_generators(ring: RingSpec, delta: int) -> list:
    """Minimal monomial generators of the ideal of monomials of weight >= delta
    under the ring's ``Deg`` grading.

    A minimal generator is a product of at most delta positive-weight
    variables whose weight reaches delta while dropping any single variable
    falls below it."""
    if delta < 1:
        raise PolyError("a_geq_generators needs delta >= 1")
    weights = ring.grading("Deg")
    pos = [(i, w) for i, w in enumerate(weights) if w > 0]
    out = []
    seen = set()
    for k in range(1, delta + 1):
        for combo in combinations_with_replacement(pos, k):
            total = sum(w for _, w in combo)
            if total < delta:
                continue
            if any(total - w >= delta for _, w in combo):
                continue
            e = [0] * ring.nvars
            for i, _ in combo:
                e[i] += 1
            e = tuple(e)
            if e not in seen:
                seen.add(e)
                out.append(ring.monomial(e))
    key = ring.sort_key()
    out.sort(key=lambda p: key(p.terms[0][0]), reverse=True)
    return out


def dim_witness(inst: Instance) -> tuple:
    """The r + n - 1 variables whose complement is a minimal prime of the
    initial ideal of the minors of B: the all-zero index of every block plus
    the block-r indices (a_r, .., a_r, 0, .., 0).

    De-duplicates the raw listing and insists on the expected size; also
    checks independence against the predicted initial generators."""
    n, r = inst.n, inst.r
    if r == 0:
        raise PolyError("dimension witness needs at least one positive power")
    names = [t_name(l, (0,) * (n - 1)) for l in range(1, r + 1)]
    ar = inst.a[-1]
    for m in range(n - 1, 0, -1):
        names.append(t_name(r, (ar,) * m + (0,) * (n - 1 - m)))
    unique = tuple(dict.fromkeys(names))
    if len(unique) != r + n - 1:
        raise PolyError(
            f"witness listing collides: {len(unique)} distinct of expected {r + n - 1}"
        )
    B = build_B(inst)
    allowed = set(unique)
    for g in predicted_initial_gens(B):
        if set(g.support()) <= allowed:
            raise PolyError(f"witness set is not independent: {g} is supported inside it")
    return unique
