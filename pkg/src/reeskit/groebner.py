"""Division, Buchberger's algorithm, elimination, and the ideal toolbox.

This module is the oracle layer of the package: membership, kernels of
algebra maps, colon ideals, saturations, intersections, initial ideals and
monomial-ideal dimension are all reduced to Groebner basis computations
carried out by a plain Buchberger loop with the product and chain criteria
and normal (minimal lcm degree first) pair selection.

Every computation is deterministic: divisors are tried in descending
leading-monomial order with the first divisor winning, reduced bases are the
canonical representation of an ideal, and ideal equalities are decided by
comparing reduced bases under one order.  Resource guards bound the number
of S-pairs and the degree of intermediate elements; a breach raises
``ResourceGuardError`` carrying the partial statistics instead of silently
truncating the answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, Optional, Sequence

from .polyring import (
    MonomialOrder,
    PolyError,
    Polynomial,
    RingSpec,
    VariableMeta,
    build_ring,
    mono_degree,
    mono_divides,
    mono_is_one,
    mono_lcm,
    mono_mul,
    mono_quot,
)


@dataclass
class Guard:
    """Caps on Buchberger work; breaching either aborts the computation."""

    pair_cap: int = 200_000
    deg_cap: int = 80


DEFAULT_GUARD = Guard()


@dataclass
class GBReport:
    """Statistics for one Groebner basis run."""

    basis_size: int = 0
    max_degree: int = 0
    pairs_generated: int = 0
    pairs_skipped: int = 0
    pairs_reduced: int = 0
    elapsed_ms: float = 0.0
    status: str = "ok"  # "ok" | "aborted"

    def to_json(self) -> dict:
        return {
            "basisSize": self.basis_size,
            "maxDegree": self.max_degree,
            "pairsGenerated": self.pairs_generated,
            "pairsSkipped": self.pairs_skipped,
            "pairsReduced": self.pairs_reduced,
            "elapsedMs": round(self.elapsed_ms, 3),
            "status": self.status,
        }


class ResourceGuardError(Exception):
    """A guard cap was exceeded; carries the partial GBReport."""

    def __init__(self, message: str, report: GBReport):
        super().__init__(message)
        self.report = report


class EngineError(Exception):
    """An internal consistency post-check failed (engine bug trap)."""


# ---------------------------------------------------------------------------
# ideals and algebra maps


@dataclass(eq=False)
class Ideal:
    """A finite generator list with a cache of reduced bases per order.

    Zero generators are dropped at construction.  Two Ideal objects compare
    mathematically through :meth:`equals`, never through ``==``.
    """

    ring: RingSpec
    generators: tuple

    def __post_init__(self):
        gens = tuple(g for g in self.generators if g)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_cache", {})

    def gb(self, order: Optional[MonomialOrder] = None, guard: Optional[Guard] = None):
        """The cached reduced Groebner basis under ``order``."""
        order = order or self.ring.order
        hit = self._cache.get(order)
        if hit is None:
            hit, _ = buchberger(self, order, guard)
        return hit

    def set_gb(self, order: MonomialOrder, basis: tuple):
        self._cache[order] = tuple(basis)

    def contains(self, p: Polynomial, guard: Optional[Guard] = None) -> bool:
        return membership(p, self, guard)

    def equals(self, other: "Ideal", guard: Optional[Guard] = None) -> bool:
        if self.ring != other.ring:
            raise PolyError("ideals live in different rings")
        order = self.ring.order
        return self.gb(order, guard) == other.gb(order, guard)

    def __repr__(self):
        return f"<ideal with {len(self.generators)} generators>"


def ideal(ring: RingSpec, gens: Iterable[Polynomial]) -> Ideal:
    return Ideal(ring, tuple(gens))


def ideal_sum(*ideals: Ideal) -> Ideal:
    ring = ideals[0].ring
    gens = []
    for I in ideals:
        if I.ring != ring:
            raise PolyError("ideal sum across different rings")
        gens.extend(I.generators)
    return Ideal(ring, tuple(gens))


@dataclass(frozen=True)
class AlgebraMap:
    """A ring homomorphism given by one target image per source variable."""

    source: RingSpec
    target: RingSpec
    images: tuple  # tuple[(source name, target Polynomial)]

    def __post_init__(self):
        img = dict(self.images)
        missing = [n for n in self.source.names if n not in img]
        if missing:
            raise PolyError(f"algebra map is missing images for {missing}")
        for name, p in img.items():
            if p.ring != self.target:
                raise PolyError(f"image of {name} lives in the wrong ring")
        object.__setattr__(self, "_img", img)

    def image(self, name: str) -> Polynomial:
        return self._img[name]

    def apply(self, p: Polynomial) -> Polynomial:
        """Evaluate the homomorphism on a source polynomial."""
        if p.ring != self.source:
            raise PolyError("polynomial does not live in the source ring")
        out = self.target.zero()
        names = self.source.names
        for e, c in p.terms:
            term = self.target.const(c)
            for i, x in enumerate(e):
                if x:
                    term = term * (self._img[names[i]] ** x)
            out = out + term
        return out


def algebra_map(source: RingSpec, target: RingSpec, images: dict) -> AlgebraMap:
    return AlgebraMap(source, target, tuple(sorted(images.items())))


# ---------------------------------------------------------------------------
# division


def _prepare_divisors(G: Sequence[Polynomial], order: MonomialOrder, nvars: int):
    key = order.key_function(nvars)
    divs = []
    for g in G:
        if not g:
            raise PolyError("zero divisor polynomial")
        c, e = g.lt(order)
        divs.append((key(e), e, c, g.terms))
    # descending leading monomials, first divisor wins
    divs.sort(key=lambda d: d[0], reverse=True)
    return [(e, c, terms) for _, e, c, terms in divs]


def normal_form(
    p: Polynomial,
    G: Sequence[Polynomial],
    order: Optional[MonomialOrder] = None,
) -> Polynomial:
    """Remainder of p under multivariate division by G.

    No term of the remainder is divisible by any leading term of G.
    Deterministic: divisors are tried in descending leading-monomial order
    and the first divisor wins.
    """
    ring = p.ring
    order = order or ring.order
    for g in G:
        if g.ring != ring:
            raise PolyError("divisor in a different ring")
    divisors = _prepare_divisors(G, order, ring.nvars)
    fld = ring.field
    key = order.key_function(ring.nvars)
    work = dict(p.terms)
    rem: dict = {}
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        for lte, ltc, terms in divisors:
            if mono_divides(lte, e):
                q = fld.div(c, ltc)
                shift = mono_quot(e, lte)
                for ge, gc in terms:
                    if ge == lte:
                        continue
                    ne = mono_mul(ge, shift)
                    s = fld.sub(work.get(ne, fld.zero), fld.mul(q, gc))
                    if s:
                        work[ne] = s
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[e] = c
    return ring.from_dict(rem)


def normal_form_with_quotients(p, G, order=None):
    """Division with tracked quotients; returns (remainder, quotients, divisors)."""
    ring = p.ring
    order = order or ring.order
    divisors = _prepare_divisors(G, order, ring.nvars)
    div_polys = [Polynomial(ring, tuple(terms)) for _, _, terms in divisors]
    fld = ring.field
    key = order.key_function(ring.nvars)
    work = dict(p.terms)
    rem: dict = {}
    quotients = [dict() for _ in divisors]
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        for di, (lte, ltc, terms) in enumerate(divisors):
            if mono_divides(lte, e):
                q = fld.div(c, ltc)
                shift = mono_quot(e, lte)
                quotients[di][shift] = fld.add(quotients[di].get(shift, fld.zero), q)
                for ge, gc in terms:
                    if ge == lte:
                        continue
                    ne = mono_mul(ge, shift)
                    s = fld.sub(work.get(ne, fld.zero), fld.mul(q, gc))
                    if s:
                        work[ne] = s
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[e] = c
    return ring.from_dict(rem), [ring.from_dict(q) for q in quotients], div_polys


def s_polynomial(
    f: Polynomial, g: Polynomial, order: Optional[MonomialOrder] = None
) -> Polynomial:
    """The S-polynomial lcm/lt(f)*f - lcm/lt(g)*g of the monic normalisations."""
    if not f or not g:
        raise PolyError("S-polynomial of a zero polynomial")
    order = order or f.ring.order
    f = f.monic(order)
    g = g.monic(order)
    lf, lg = f.lm(order), g.lm(order)
    l = mono_lcm(lf, lg)
    one = f.ring.field.one
    return f.mul_term(mono_quot(l, lf), one) - g.mul_term(mono_quot(l, lg), one)


# ---------------------------------------------------------------------------
# Buchberger


def _autoreduce(polys: Sequence[Polynomial], order: MonomialOrder):
    """Reduce each element against the others until stable; monic, no zeros."""
    basis = [p.monic(order) for p in polys if p]
    changed = True
    while changed:
        changed = False
        out = []
        for i, p in enumerate(basis):
            others = out + basis[i + 1 :]
            r = normal_form(p, others, order) if others else p
            if not r:
                changed = True
                continue
            r = r.monic(order)
            if r != p:
                changed = True
            out.append(r)
        basis = out
    return basis


def _reduce_basis(basis: Sequence[Polynomial], order: MonomialOrder):
    """Minimalize and tail-reduce a Groebner basis into the canonical form."""
    if not basis:
        return ()
    ring = basis[0].ring
    key = order.key_function(ring.nvars)
    by_lm = sorted(basis, key=lambda g: key(g.lm(order)))
    minimal = []
    for g in by_lm:
        lm = g.lm(order)
        if not any(mono_divides(h.lm(order), lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, others, order) if others else g
        reduced.append(r.monic(order))
    reduced.sort(key=lambda g: key(g.lm(order)), reverse=True)
    return tuple(reduced)


def buchberger(
    I, order: Optional[MonomialOrder] = None, guard: Optional[Guard] = None
):
    """Reduced Groebner basis of an Ideal (or plain generator sequence).

    Returns ``(basis, report)``.  Applies the product and chain criteria with
    normal selection.  The two-way equality with the input is re-checked by
    reducing every input generator against the final basis.
    """
    gens = I.generators if isinstance(I, Ideal) else tuple(I)
    ring = gens[0].ring if gens else (I.ring if isinstance(I, Ideal) else None)
    if ring is None:
        raise PolyError("cannot infer the ring of an empty generator sequence")
    order = order or ring.order
    guard = guard or DEFAULT_GUARD
    t0 = time.perf_counter()
    report = GBReport()

    G = _autoreduce(gens, order)
    if not G:
        report.elapsed_ms = (time.perf_counter() - t0) * 1000
        if isinstance(I, Ideal):
            I.set_gb(order, ())
        return (), report

    key = order.key_function(ring.nvars)
    lm = [g.lm(order) for g in G]
    # divisor schedule: indices sorted by descending leading monomial
    div_sched = sorted(range(len(G)), key=lambda i: key(lm[i]), reverse=True)

    pairs: list = []
    done = set()

    def push_pairs(j):
        for i in range(j):
            l = mono_lcm(lm[i], lm[j])
            heappush(pairs, (mono_degree(l), key(l), i, j))
            report.pairs_generated += 1
        if report.pairs_generated > guard.pair_cap:
            report.status = "aborted"
            report.elapsed_ms = (time.perf_counter() - t0) * 1000
            raise ResourceGuardError(
                f"S-pair cap {guard.pair_cap} exceeded", report
            )

    for j in range(len(G)):
        push_pairs(j)

    def nf(p):
        divisors = [(lm[i], G[i].lc(order), G[i].terms) for i in div_sched]
        fld = ring.field
        work = dict(p.terms)
        rem: dict = {}
        while work:
            e = max(work, key=key)
            c = work.pop(e)
            for lte, ltc, terms in divisors:
                if mono_divides(lte, e):
                    q = fld.div(c, ltc)
                    shift = mono_quot(e, lte)
                    for ge, gc in terms:
                        if ge == lte:
                            continue
                        ne = mono_mul(ge, shift)
                        s = fld.sub(work.get(ne, fld.zero), fld.mul(q, gc))
                        if s:
                            work[ne] = s
                        else:
                            work.pop(ne, None)
                    break
            else:
                rem[e] = c
        return ring.from_dict(rem)

    while pairs:
        _, _, i, j = heappop(pairs)
        done.add((i, j))
        l = mono_lcm(lm[i], lm[j])
        if mono_mul(lm[i], lm[j]) == l:  # product criterion: coprime LTs
            report.pairs_skipped += 1
            continue
        chain = False
        for k in range(len(G)):  # chain criterion
            if k == i or k == j:
                continue
            if mono_divides(lm[k], l):
                p1 = (i, k) if i < k else (k, i)
                p2 = (j, k) if j < k else (k, j)
                if p1 in done and p2 in done:
                    chain = True
                    break
        if chain:
            report.pairs_skipped += 1
            continue
        s = s_polynomial(G[i], G[j], order)
        h = nf(s)
        if not h:
            report.pairs_reduced += 1
            continue
        if h.total_degree > guard.deg_cap:
            report.status = "aborted"
            report.elapsed_ms = (time.perf_counter() - t0) * 1000
            raise ResourceGuardError(
                f"degree cap {guard.deg_cap} exceeded by element of degree {h.total_degree}",
                report,
            )
        h = h.monic(order)
        G.append(h)
        lm.append(h.lm(order))
        m = len(G) - 1
        # keep the divisor schedule sorted by descending leading monomial
        lo, hi = 0, len(div_sched)
        km = key(lm[m])
        while lo < hi:
            mid = (lo + hi) // 2
            if key(lm[div_sched[mid]]) > km:
                lo = mid + 1
            else:
                hi = mid
        div_sched.insert(lo, m)
        push_pairs(m)

    basis = _reduce_basis(G, order)
    report.basis_size = len(basis)
    report.max_degree = max((g.total_degree for g in basis), default=0)
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    # two-way sanity: every input generator must reduce to zero
    for g in gens:
        if normal_form(g, basis, order):
            raise EngineError("input generator does not reduce to zero against its basis")
    if isinstance(I, Ideal):
        I.set_gb(order, basis)
    return basis, report


def is_groebner(G: Sequence[Polynomial], order: Optional[MonomialOrder] = None):
    """Check Buchberger's criterion directly: every S-pair reduces to zero.

    Returns ``(ok, offenders)`` where offenders lists ``(i, j, remainder)``.
    """
    G = [g for g in G]
    if not G:
        return True, []
    order = order or G[0].ring.order
    offenders = []
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            s = s_polynomial(G[i], G[j], order)
            if not s:
                continue
            r = normal_form(s, G, order)
            if r:
                offenders.append((i, j, r))
    return not offenders, offenders


# ---------------------------------------------------------------------------
# elimination and kernels


def eliminate(I: Ideal, keep: Iterable[str], guard: Optional[Guard] = None) -> Ideal:
    """Generators of the intersection of I with the subring on ``keep``.

    Computed with a block elimination order whose front block holds the
    variables being removed; the returned Ideal lives in the same ring and
    its reduced basis under the ring order is cached.
    """
    ring = I.ring
    keep = set(keep)
    unknown = keep - set(ring.names)
    if unknown:
        raise PolyError(f"cannot keep unknown variables {sorted(unknown)}")
    drop = [n for n in ring.names if n not in keep]
    if not drop:
        return I
    elim = ring.elimination_order(drop)
    basis, _ = buchberger(Ideal(ring, I.generators), elim, guard)
    kept = [g for g in basis if all(name in keep for name in g.support())]
    out = Ideal(ring, tuple(kept))
    out.set_gb(ring.order, _reduce_basis(kept, ring.order))
    return out


def transport(p: Polynomial, ring: RingSpec, rename: Optional[dict] = None) -> Polynomial:
    """Re-express a polynomial in another ring by matching variable names."""
    rename = rename or {}
    names = p.ring.names
    positions: dict = {}
    acc = {}
    fld = ring.field
    for e, c in p.terms:
        ne = [0] * ring.nvars
        for i, x in enumerate(e):
            if x:
                pos = positions.get(i)
                if pos is None:
                    pos = ring.position(rename.get(names[i], names[i]))
                    positions[i] = pos
                ne[pos] += x
        acc[tuple(ne)] = fld.coerce(c)
    return ring.from_dict(acc)


def kernel_of_map(m: AlgebraMap, guard: Optional[Guard] = None) -> Ideal:
    """Kernel of an algebra map via its graph ideal and elimination.

    Source variables whose image is the like-named target variable are
    shared between the two rings instead of duplicated, so only the honest
    target variables are eliminated.  Every returned generator is re-checked
    to map to zero.  When the target is a domain the kernel is prime; that
    fact is recorded by callers, not certified here.
    """
    src, tgt = m.source, m.target
    if src.field != tgt.field:
        raise PolyError("kernel across different coefficient fields")
    src_names = set(src.names)

    passthrough = set()
    rename: dict = {}
    for v in src.variables:
        if v.name in tgt.names and m.image(v.name) == tgt.var(v.name):
            passthrough.add(v.name)
    shared_bad = [n for n in tgt.names if n in src_names and n not in passthrough]
    if shared_bad:
        # fall back to fully disjoint copies of the target roster
        passthrough = set()
        for v in tgt.variables:
            fresh = v.name
            while fresh in src_names or fresh in rename.values():
                fresh += "_img"
            rename[v.name] = fresh

    extra = []
    for v in tgt.variables:
        if v.name in passthrough:
            continue
        name = rename.get(v.name, v.name)
        # lift the copies above every source block so rosters stay disjoint
        extra.append(VariableMeta(name, v.block + 1 + max(x.block for x in src.variables), v.index))
    joined = build_ring(src.field, tuple(src.variables) + tuple(extra), src.order)
    front = [v.name for v in extra]
    elim = joined.elimination_order(front)

    graph = []
    for v in src.variables:
        if v.name in passthrough:
            continue
        img = transport(m.image(v.name), joined, rename)
        graph.append(joined.var(v.name) - img)

    basis, _ = buchberger(graph, elim, guard)
    kept = [g for g in basis if all(n in src_names for n in g.support())]
    gens = tuple(transport(g, src) for g in kept)
    gens = _reduce_basis(gens, src.order)
    for g in gens:
        if m.apply(g):
            raise EngineError("kernel generator does not map to zero")
    out = Ideal(src, gens)
    out.set_gb(src.order, gens)
    return out


# ---------------------------------------------------------------------------
# membership, colon, saturation, intersection


def membership(p: Polynomial, I: Ideal, guard: Optional[Guard] = None) -> bool:
    """True when p reduces to zero against the reduced basis of I."""
    if p.ring != I.ring:
        raise PolyError("membership across different rings")
    if not p:
        return True
    basis = I.gb(I.ring.order, guard)
    if not basis:
        return False
    return not normal_form(p, basis, I.ring.order)


def exact_divide(p: Polynomial, g: Polynomial) -> Polynomial:
    """The quotient p/g for p in the principal ideal (g)."""
    if not g:
        raise PolyError("division by zero polynomial")
    ring = p.ring
    order = ring.order
    fld = ring.field
    ltc, lte = g.lt(order)
    q: dict = {}
    rest = p
    while rest:
        c, e = rest.lt(order)
        if not mono_divides(lte, e):
            raise PolyError("polynomial is not divisible: leading term obstruction")
        shift = mono_quot(e, lte)
        coeff = fld.div(c, ltc)
        q[shift] = fld.add(q.get(shift, fld.zero), coeff)
        rest = rest - g.mul_term(shift, coeff)
    return ring.from_dict(q)


def _fresh_name(ring: RingSpec, base: str) -> str:
    name = base
    while name in ring.names:
        name += "0"
    return name


def ideal_intersection(I: Ideal, J: Ideal, guard: Optional[Guard] = None) -> Ideal:
    """I intersect J via the one-tag-variable construction t*I + (1-t)*J."""
    ring = I.ring
    if J.ring != ring:
        raise PolyError("intersection across different rings")
    tag = _fresh_name(ring, "w")
    top = max(v.block for v in ring.variables) + 1 if ring.variables else 1
    ext = build_ring(
        ring.field, tuple(ring.variables) + (VariableMeta(tag, top),), ring.order
    )
    t = ext.var(tag)
    gens = [t * transport(g, ext) for g in I.generators]
    gens += [(ext.one() - t) * transport(g, ext) for g in J.generators]
    elim = eliminate(Ideal(ext, tuple(gens)), set(ring.names), guard)
    out = Ideal(ring, tuple(transport(g, ring) for g in elim.generators))
    out.set_gb(ring.order, _reduce_basis(out.generators, ring.order))
    return out


def ideal_colon(I: Ideal, J: Ideal, guard: Optional[Guard] = None) -> Ideal:
    """The colon ideal I : J = {p : p*J inside I}.

    Reduced to principal colons through intersections: I : g is computed as
    (I meet (g)) / g, and I : J is the intersection of the I : g over the
    generators g of J.  The containment J*(I:J) inside I is re-checked.
    """
    ring = I.ring
    if J.ring != ring:
        raise PolyError("colon across different rings")
    if not J.generators:
        raise PolyError("colon by the zero ideal")
    result: Optional[Ideal] = None
    for g in J.generators:
        meet = ideal_intersection(I, Ideal(ring, (g,)), guard)
        part = Ideal(ring, tuple(exact_divide(h, g) for h in meet.generators))
        result = part if result is None else ideal_intersection(result, part, guard)
    assert result is not None
    for p in result.generators:  # cheap post-check: J * (I : J) inside I
        for g in J.generators:
            if not membership(p * g, I, guard):
                raise EngineError("colon post-check failed")
    result.set_gb(ring.order, _reduce_basis(result.generators, ring.order))
    return result


def ideal_saturation(I: Ideal, f: Polynomial, guard: Optional[Guard] = None) -> Ideal:
    """The stabilised iterated colon I : f^infinity."""
    if not f:
        raise PolyError("saturation by zero")
    ring = I.ring
    current = I
    current_gb = current.gb(ring.order, guard)
    while True:
        nxt = ideal_colon(current, Ideal(ring, (f,)), guard)
        nxt_gb = nxt.gb(ring.order, guard)
        if nxt_gb == current_gb:
            return current
        current, current_gb = nxt, nxt_gb


# ---------------------------------------------------------------------------
# initial ideals and monomial dimension


def initial_ideal(I: Ideal, order: Optional[MonomialOrder] = None, guard=None) -> Ideal:
    """The monomial ideal of leading terms of the reduced basis of I."""
    order = order or I.ring.order
    basis = I.gb(order, guard)
    ring = I.ring
    gens = tuple(ring.monomial(g.lm(order)) for g in basis)
    out = Ideal(ring, gens)
    out.set_gb(ring.order, _reduce_basis(gens, ring.order))
    return out


def monomial_dim(I: Ideal) -> int:
    """Krull dimension of ring/I for a monomial ideal I.

    Equals the size of the largest variable subset containing no generator's
    support, found as nvars minus a minimum hitting set of the supports.
    """
    for g in I.generators:
        if not g.is_monomial():
            raise PolyError("monomial_dim requires monomial generators")
    supports = []
    for g in I.generators:
        s = frozenset(g.support())
        if not s:
            return -1  # unit ideal: the zero ring
        supports.append(s)
    # discard non-minimal supports: hitting a subset hits every superset
    supports = [
        s for s in supports if not any(t < s for t in supports)
    ]
    supports = list(set(supports))
    memo: dict = {}

    def min_hitting(sups: frozenset) -> int:
        if not sups:
            return 0
        if sups in memo:
            return memo[sups]
        pick = min(sups, key=len)
        best = None
        for v in sorted(pick):
            rest = frozenset(t for t in sups if v not in t)
            c = 1 + min_hitting(rest)
            if best is None or c < best:
                best = c
        memo[sups] = best
        return best

    return I.ring.nvars - min_hitting(frozenset(supports))


def minimalize_generators(
    I: Ideal, modulo: Optional[Ideal] = None, guard: Optional[Guard] = None
):
    """An irredundant homogeneous generating subset of I (optionally modulo
    a background ideal): drop any generator lying in the ideal of the rest."""
    ring = I.ring
    base = tuple(modulo.generators) if modulo is not None else ()
    gens = sorted(I.generators, key=lambda g: g.total_degree)
    kept = list(gens)
    i = 0
    while i < len(kept):
        candidate = kept[i]
        rest = kept[:i] + kept[i + 1 :]
        if membership(candidate, Ideal(ring, tuple(rest) + base), guard):
            kept.pop(i)
        else:
            i += 1
    return tuple(kept)
