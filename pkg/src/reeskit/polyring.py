"""Exact sparse multivariate polynomials over Q and prime fields.

Rings carry three pieces of structure beyond the coefficient field: a roster
of named variables sorted strictly descending under the block/multi-index
comparison (lexicographic on ``(block, index)``, larger first), a monomial
order (lex, graded reverse-lex, or a two-block elimination order), and named
integer gradings.  Polynomials are immutable canonical term lists; every
operation is a pure function, so all values can be shared freely across
concurrent tasks.

There is no floating point anywhere: rational coefficients are reduced
``fractions.Fraction`` values, prime-field coefficients are canonical
representatives in ``[0, p)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union


class PolyError(Exception):
    """Illegal polynomial-level operation (ring mismatch, zero leading term...)."""


class ParseError(PolyError):
    """Malformed polynomial text."""


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# coefficient fields


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: the rationals or Z/p for a prime p."""

    kind: str  # "rationals" | "prime-field"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            if not _is_prime(self.characteristic):
                raise ValueError(
                    f"prime-field characteristic must be prime, got {self.characteristic}"
                )
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # -- constructors ------------------------------------------------------
    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("rationals")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("prime-field", p)

    @staticmethod
    def parse(text: str) -> "FieldSpec":
        """Parse the textual field syntax "Q" or "Fp:<p>"."""
        text = text.strip()
        if text == "Q":
            return FieldSpec.rationals()
        if text.startswith("Fp:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise ParseError(f"bad prime in field spec {text!r}") from None
            return FieldSpec.prime(p)
        raise ParseError(f"unknown field {text!r} (expected Q or Fp:<p>)")

    def __str__(self) -> str:
        return "Q" if self.kind == "rationals" else f"Fp:{self.characteristic}"

    # -- arithmetic on canonical coefficient values -------------------------
    @property
    def zero(self):
        return Fraction(0) if self.kind == "rationals" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rationals" else 1

    def coerce(self, value):
        """Canonicalise an int / Fraction / numeric string into the field."""
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, (int, Fraction)):
            if self.kind == "rationals":
                return Fraction(value)
            p = self.characteristic
            num = value if isinstance(value, int) else value.numerator
            den = 1 if isinstance(value, int) else value.denominator
            if den % p == 0:
                raise PolyError(f"coefficient {value} has no image in F_{p}")
            return (num * pow(den, -1, p)) % p
        raise PolyError(f"cannot coerce {value!r} into {self}")

    def add(self, a, b):
        return a + b if self.kind == "rationals" else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.kind == "rationals" else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.kind == "rationals" else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.kind == "rationals" else (-a) % self.characteristic

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "rationals":
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_negative(self, a) -> bool:
        """True when the canonical value prints with a leading minus."""
        return self.kind == "rationals" and a < 0


# ---------------------------------------------------------------------------
# monomials (exponent tuples)


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_gcd(a: tuple, b: tuple) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_divides(a: tuple, b: tuple) -> bool:
    """True when the monomial a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_quot(a: tuple, b: tuple) -> tuple:
    """The exponent vector a - b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_degree(a: tuple) -> int:
    return sum(a)


def mono_is_one(a: tuple) -> bool:
    return not any(a)


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A total, multiplicative, well-founded order on exponent vectors.

    ``lex`` compares exponents variable by variable (roster order).
    ``revlex`` is the graded reverse-lexicographic order: higher total degree
    wins, ties go to the monomial with the smaller exponent on the
    roster-smallest variable where they differ.  ``block`` compares the
    ``front`` sub-vector first and is the elimination order used by the
    kernel and intersection routines.
    """

    kind: str  # "lex" | "revlex" | "block"
    front: tuple = ()  # variable positions of the eliminated block
    front_kind: str = "revlex"
    back_kind: str = "revlex"

    def __post_init__(self):
        if self.kind not in ("lex", "revlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block":
            if self.front_kind not in ("lex", "revlex") or self.back_kind not in (
                "lex",
                "revlex",
            ):
                raise ValueError("block order components must be lex or revlex")

    def key_function(self, nvars: int):
        """Return a sort key: bigger key = bigger monomial."""
        if self.kind == "lex":
            return _lex_key
        if self.kind == "revlex":
            return _revlex_key
        front = self.front
        backset = set(front)
        back = tuple(i for i in range(nvars) if i not in backset)
        fk = _lex_key if self.front_kind == "lex" else _revlex_key
        bk = _lex_key if self.back_kind == "lex" else _revlex_key

        def key(e, front=front, back=back, fk=fk, bk=bk):
            return (fk(tuple(e[i] for i in front)), bk(tuple(e[i] for i in back)))

        return key

    def compare(self, a: tuple, b: tuple) -> int:
        """-1, 0, 1 as a <, =, > b."""
        if a == b:
            return 0
        k = self.key_function(len(a))
        return 1 if k(a) > k(b) else -1


def _lex_key(e: tuple):
    return e


def _revlex_key(e: tuple):
    return (sum(e), tuple(-x for x in reversed(e)))


def lex_order() -> MonomialOrder:
    return MonomialOrder("lex")


def revlex_order() -> MonomialOrder:
    return MonomialOrder("revlex")


def block_order(front: Sequence[int], front_kind="revlex", back_kind="revlex") -> MonomialOrder:
    return MonomialOrder("block", tuple(front), front_kind, back_kind)


# ---------------------------------------------------------------------------
# variables and rings


@dataclass(frozen=True)
class VariableMeta:
    """A named ring variable with its block label and multi-index.

    Block 0 is reserved for the x-variables; an x-variable in display row s
    carries the multi-index (1, ..., 1, 0, ..., 0) with s - 1 trailing zeros.
    """

    name: str
    block: int
    index: tuple = ()
    display_row: Optional[int] = None

    def __post_init__(self):
        if not _NAME_RE.fullmatch(self.name):
            raise ValueError(f"bad variable name {self.name!r}")
        if self.block < 0:
            raise ValueError("variable block must be >= 0")
        if any(e < 0 for e in self.index):
            raise ValueError(f"negative entry in multi-index of {self.name}")

    @property
    def label(self) -> str:
        """Subscripted display form, e.g. T_{2,2,1} or x_1."""
        if self.block == 0 and self.display_row is not None:
            return f"x_{self.display_row}"
        if self.index:
            return "T_{%s}" % ",".join(str(v) for v in (self.block,) + self.index)
        return self.name


def _sort_key_desc(meta: VariableMeta):
    return (meta.block, meta.index)


@dataclass(frozen=True)
class RingSpec:
    """An immutable polynomial ring description.

    ``variables`` is strictly descending under (block, index); ``gradings``
    maps names to integer weight vectors aligned with the roster.
    """

    field: FieldSpec
    variables: tuple
    order: MonomialOrder
    gradings: tuple = ()  # tuple[(name, weights)]

    def __post_init__(self):
        keys = [_sort_key_desc(v) for v in self.variables]
        if any(keys[i] <= keys[i + 1] for i in range(len(keys) - 1)):
            raise ValueError("ring variables must be strictly descending under (block, index)")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable name")
        object.__setattr__(self, "_pos", {v.name: i for i, v in enumerate(self.variables)})
        object.__setattr__(self, "_gr", dict(self.gradings))
        object.__setattr__(self, "_key", self.order.key_function(len(self.variables)))

    # -- roster helpers ------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def names(self) -> tuple:
        return tuple(v.name for v in self.variables)

    def position(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}") from None

    def meta(self, name: str) -> VariableMeta:
        return self.variables[self.position(name)]

    def by_block_index(self, block: int, index: tuple) -> VariableMeta:
        for v in self.variables:
            if v.block == block and v.index == index:
                return v
        raise PolyError(f"no variable with block {block} and index {index}")

    def grading(self, name: str) -> tuple:
        try:
            return self._gr[name]
        except KeyError:
            raise PolyError(f"unknown grading {name!r}") from None

    def sort_key(self):
        return self._key

    def elimination_order(self, front_names: Iterable[str]) -> MonomialOrder:
        """Block order that puts ``front_names`` in the eliminated block."""
        front = tuple(sorted(self.position(n) for n in front_names))
        back_kind = self.order.kind if self.order.kind in ("lex", "revlex") else "revlex"
        return block_order(front, "revlex", back_kind)

    # -- element constructors -------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.const(self.field.one)

    def const(self, c) -> "Polynomial":
        c = self.field.coerce(c)
        if not c:
            return self.zero()
        return Polynomial(self, (((0,) * self.nvars, c),))

    def var(self, name: str, power: int = 1) -> "Polynomial":
        e = [0] * self.nvars
        e[self.position(name)] = power
        return Polynomial(self, ((tuple(e), self.field.one),))

    def monomial(self, exps: tuple, coeff=1) -> "Polynomial":
        c = self.field.coerce(coeff)
        if not c:
            return self.zero()
        if len(exps) != self.nvars:
            raise PolyError("exponent vector has wrong arity")
        return Polynomial(self, ((tuple(exps), c),))

    def from_dict(self, d: Mapping[tuple, object]) -> "Polynomial":
        return _canonical(self, d)


def build_ring(
    field: FieldSpec,
    variables: Sequence[VariableMeta],
    order: Optional[MonomialOrder] = None,
    extra_gradings: Sequence = (),
) -> RingSpec:
    """Assemble a ring, sorting the roster descending and deriving gradings.

    The standard gradings are always present: ``std-x`` (weight 1 on block-0
    variables), ``std-T`` (weight 1 on all other variables), and ``Deg``
    (the last multi-index entry, so an x-variable in display row 1 has
    weight 1 and the other x-variables weight 0).
    """
    metas = sorted(variables, key=_sort_key_desc, reverse=True)
    seen = set()
    for m in metas:
        bi = (m.block, m.index)
        if bi in seen:
            raise ValueError(f"duplicate variable (block, index) {bi}")
        seen.add(bi)
    wx = tuple(1 if m.block == 0 else 0 for m in metas)
    wt = tuple(0 if m.block == 0 else 1 for m in metas)
    wdeg = tuple(m.index[-1] if m.index else 0 for m in metas)
    gradings = [("std-x", wx), ("std-T", wt), ("Deg", wdeg)]
    for name, weights in extra_gradings:
        gradings.append((name, tuple(weights)))
    return RingSpec(field, tuple(metas), order or revlex_order(), tuple(gradings))


def generic_ring(
    field: FieldSpec, names: Sequence[str], order: Optional[MonomialOrder] = None
) -> RingSpec:
    """A ring over plain named variables, largest first as listed."""
    n = len(names)
    metas = [VariableMeta(name, block=n - i) for i, name in enumerate(names)]
    return build_ring(field, metas, order)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """A canonical sparse polynomial: terms sorted descending by ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: tuple):
        # Internal: terms must already be canonical (nonzero coefficients,
        # distinct exponents, descending under ring.order).
        self.ring = ring
        self.terms = terms

    # -- basics ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms and (
            self.ring is other.ring or self.ring == other.ring
        )

    def __hash__(self):
        return hash(self.terms)

    def _check_ring(self, other: "Polynomial"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise PolyError("operands live in different rings")

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        self._check_ring(other)
        fld = self.ring.field
        acc = dict(self.terms)
        for e, c in other.terms:
            s = fld.add(acc.get(e, fld.zero), c)
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return _canonical(self.ring, acc, clean=True)

    __radd__ = __add__

    def __neg__(self):
        fld = self.ring.field
        return Polynomial(self.ring, tuple((e, fld.neg(c)) for e, c in self.terms))

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field.coerce(other)
            if not c:
                return self.ring.zero()
            fld = self.ring.field
            return Polynomial(
                self.ring, tuple((e, fld.mul(k, c)) for e, k in self.terms)
            )
        self._check_ring(other)
        fld = self.ring.field
        acc: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = mono_mul(e1, e2)
                s = fld.add(acc.get(e, fld.zero), fld.mul(c1, c2))
                if s:
                    acc[e] = s
                else:
                    acc.pop(e, None)
        return _canonical(self.ring, acc, clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolyError("polynomial powers must be non-negative integers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def mul_term(self, exps: tuple, coeff) -> "Polynomial":
        """Multiply by a single term; preserves term ordering (fast path)."""
        fld = self.ring.field
        if not coeff:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            tuple((mono_mul(e, exps), fld.mul(c, coeff)) for e, c in self.terms),
        )

    # -- leading data ------------------------------------------------------------
    def lt(self, order: Optional[MonomialOrder] = None):
        """Leading (coefficient, exponent vector); errors on zero."""
        if not self.terms:
            raise PolyError("the zero polynomial has no leading term")
        if order is None or order == self.ring.order:
            e, c = self.terms[0]
            return c, e
        key = order.key_function(self.ring.nvars)
        e, c = max(self.terms, key=lambda t: key(t[0]))
        return c, e

    def lm(self, order: Optional[MonomialOrder] = None) -> tuple:
        return self.lt(order)[1]

    def lc(self, order: Optional[MonomialOrder] = None):
        return self.lt(order)[0]

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lc(order)
        if c == self.ring.field.one:
            return self
        inv = self.ring.field.inv(c)
        fld = self.ring.field
        return Polynomial(self.ring, tuple((e, fld.mul(k, inv)) for e, k in self.terms))

    @property
    def total_degree(self) -> int:
        """Max total degree of the terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(e) for e, _ in self.terms)

    def support(self) -> tuple:
        """Names of the variables that occur."""
        used = [False] * self.ring.nvars
        for e, _ in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(n for n, u in zip(self.ring.names, used) if u)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- printing ------------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        fld = self.ring.field
        names = self.ring.names
        chunks = []
        for k, (e, c) in enumerate(self.terms):
            neg = fld.is_negative(c)
            mag = -c if neg else c
            factors = [
                (f"{names[i]}^{x}" if x > 1 else names[i]) for i, x in enumerate(e) if x
            ]
            if not factors:
                body = str(mag)
            elif mag == fld.one:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if k == 0:
                chunks.append(("-" if neg else "") + body)
            else:
                chunks.append(("- " if neg else "+ ") + body)
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"<poly {self}>"


def _canonical(ring: RingSpec, mapping: Mapping[tuple, object], clean: bool = False):
    """Sort a exponent->coefficient mapping into a canonical Polynomial."""
    fld = ring.field
    if clean:
        items = mapping.items()
    else:
        items = []
        for e, c in mapping.items():
            c = fld.coerce(c)
            if c:
                items.append((tuple(e), c))
    key = ring.sort_key()
    terms = tuple(sorted(items, key=lambda t: key(t[0]), reverse=True))
    return Polynomial(ring, terms)


# ---------------------------------------------------------------------------
# spec-level operation wrappers


def poly_arith(op: str, p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact ring arithmetic: op is one of add | sub | mul."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise PolyError(f"unknown arithmetic op {op!r}")


def leading_term(p: Polynomial, order: Optional[MonomialOrder] = None):
    """The maximal (coefficient, exponent vector) of p under ``order``."""
    return p.lt(order)


def weighted_degree(p: Polynomial, grading: str) -> Optional[int]:
    """Common weight of all terms under a named grading, or None if mixed."""
    if p.is_zero():
        raise PolyError("the zero polynomial has no weighted degree")
    weights = p.ring.grading(grading)
    degs = {sum(w * x for w, x in zip(weights, e)) for e, _ in p.terms}
    if len(degs) == 1:
        return degs.pop()
    return None


def bidegree(p: Polynomial) -> Optional[tuple]:
    """The (x-degree, T-degree) bidegree, or None when not bihomogeneous."""
    dx = weighted_degree(p, "std-x")
    dt = weighted_degree(p, "std-T")
    if dx is None or dt is None:
        return None
    return (dx, dt)


# ---------------------------------------------------------------------------
# parsing


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[\^\*\+\-]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r} at column {pos + 1}")
            break
        if m.group("num"):
            out.append(("num", m.group("num"), pos))
        elif m.group("name"):
            out.append(("name", m.group("name"), pos))
        else:
            out.append(("op", m.group("op"), pos))
        pos = m.end()
    return out


def parse_poly(ring: RingSpec, text: str) -> Polynomial:
    """Parse a +/- separated sum of coefficient-monomial words.

    ``^`` marks powers and ``*`` is optional between factors; variable names
    must belong to the ring.  Round-trips with ``str(poly)``.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    fld = ring.field
    acc: dict = {}
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1
        saw_sign = False
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            saw_sign = True
            i += 1
        if i >= n:
            raise ParseError("dangling sign at end of input")
        coeff = fld.one
        exps = [0] * ring.nvars
        saw_factor = False
        expect_factor = True
        while i < n:
            kind, val, col = tokens[i]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                if expect_factor:
                    raise ParseError(f"misplaced '*' at column {col + 1}")
                expect_factor = True
                i += 1
                continue
            if kind == "op" and val == "^":
                raise ParseError(f"misplaced '^' at column {col + 1}")
            if kind == "num":
                coeff = fld.mul(coeff, fld.coerce(val))
                saw_factor = True
                expect_factor = False
                i += 1
                continue
            # variable factor
            try:
                vpos = ring.position(val)
            except PolyError:
                raise ParseError(f"unknown variable {val!r} at column {col + 1}") from None
            power = 1
            i += 1
            if i < n and tokens[i][0] == "op" and tokens[i][1] == "^":
                i += 1
                if i >= n or tokens[i][0] != "num" or "/" in tokens[i][1]:
                    raise ParseError(f"exponent of {val} must be a non-negative integer")
                power = int(tokens[i][1])
                i += 1
            exps[vpos] += power
            saw_factor = True
            expect_factor = False
        if not saw_factor:
            raise ParseError("empty term")
        if expect_factor:
            raise ParseError("dangling '*'")
        c = fld.mul(coeff, fld.coerce(sign))
        e = tuple(exps)
        s = fld.add(acc.get(e, fld.zero), c)
        if s:
            acc[e] = s
        else:
            acc.pop(e, None)
    return _canonical(ring, acc, clean=True)
