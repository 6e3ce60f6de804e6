"""Exact sparse multivariate polynomial arithmetic over the rationals.

Variables are grid vertices, i.e. pairs (i, j) of positive integers.
Auxiliary variables (used by elimination) carry a negative first
coordinate so that plain tuple comparison stays well defined; the
single one in use, AUX_T, prints as "t".

Monomial orders are built from an explicit ascending variable list plus
a scheme name.  The comparison contract, spelled out so golden files
are reproducible:

  grevlex:  higher total degree wins; on ties scan variables in
            INCREASING order and at the first differing exponent the
            monomial with the SMALLER exponent is the GREATER one.
  lex:      scan variables in DECREASING order; at the first differing
            exponent the larger exponent wins.
  grlex:    total degree first, then lex.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import InputError, SizeGuardError

Variable = tuple  # (i, j); auxiliary variables use a negative first entry

AUX_T: Variable = (-1, 0)

Scalar = Union[int, Fraction]


def variable_text(v: Variable) -> str:
    if v == AUX_T:
        return "t"
    if v[0] < 0:
        return f"t{v[1]}"
    return f"x[{v[0]},{v[1]}]"


class Monomial:
    """A power product, stored as a sorted tuple of (variable, exponent)."""

    __slots__ = ("items", "degree", "_hash")

    def __init__(self, items: Iterable[tuple[Variable, int]] = ()):
        pairs = sorted((v, int(e)) for v, e in items if e != 0)
        for _, e in pairs:
            if e < 0:
                raise ValueError("negative exponent in monomial")
        self.items = tuple(pairs)
        self.degree = sum(e for _, e in pairs)
        self._hash = hash(self.items)

    @staticmethod
    def one() -> "Monomial":
        return _ONE_MONOMIAL

    @staticmethod
    def variable(v: Variable, power: int = 1) -> "Monomial":
        return Monomial(((v, power),))

    @staticmethod
    def of_variables(vs: Iterable[Variable]) -> "Monomial":
        """Product of the given variables, multiplicities respected."""
        counts: dict[Variable, int] = {}
        for v in vs:
            counts[v] = counts.get(v, 0) + 1
        return Monomial(counts.items())

    def variables(self) -> tuple[Variable, ...]:
        return tuple(v for v, _ in self.items)

    def exponent(self, v: Variable) -> int:
        for w, e in self.items:
            if w == v:
                return e
        return 0

    def is_one(self) -> bool:
        return not self.items

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.items)

    def __mul__(self, other: "Monomial") -> "Monomial":
        merged: dict[Variable, int] = dict(self.items)
        for v, e in other.items:
            merged[v] = merged.get(v, 0) + e
        return Monomial(merged.items())

    def divides(self, other: "Monomial") -> bool:
        their = dict(other.items)
        return all(their.get(v, 0) >= e for v, e in self.items)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        counts = dict(self.items)
        for v, e in other.items:
            have = counts.get(v, 0) - e
            if have < 0:
                raise ValueError("monomial division is not exact")
            counts[v] = have
        return Monomial(counts.items())

    def lcm(self, other: "Monomial") -> "Monomial":
        counts = dict(self.items)
        for v, e in other.items:
            counts[v] = max(counts.get(v, 0), e)
        return Monomial(counts.items())

    def gcd(self, other: "Monomial") -> "Monomial":
        their = dict(other.items)
        return Monomial((v, min(e, their[v])) for v, e in self.items if v in their)

    def is_coprime(self, other: "Monomial") -> bool:
        theirs = set(other.variables())
        return not any(v in theirs for v in self.variables())

    def exponents_on(self, vars_asc: Sequence[Variable]) -> tuple[int, ...]:
        pos = {v: k for k, v in enumerate(vars_asc)}
        dense = [0] * len(vars_asc)
        for v, e in self.items:
            try:
                dense[pos[v]] = e
            except KeyError:
                raise KeyError(f"variable {variable_text(v)} outside the order")
        return tuple(dense)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self.items:
            return "1"
        parts = []
        for v, e in self.items:
            parts.append(variable_text(v) + (f"^{e}" if e > 1 else ""))
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"


_ONE_MONOMIAL = Monomial()


class MonomialOrder:
    """A monomial order from an ascending variable list and a scheme."""

    SCHEMES = ("lex", "grlex", "grevlex")

    __slots__ = ("vars_asc", "scheme", "_pos")

    def __init__(self, vars_asc: Sequence[Variable], scheme: str = "grevlex"):
        if scheme not in self.SCHEMES:
            raise ValueError(f"unknown order scheme {scheme!r}")
        self.vars_asc = tuple(vars_asc)
        if len(set(self.vars_asc)) != len(self.vars_asc):
            raise ValueError("duplicate variable in order")
        self.scheme = scheme
        self._pos = {v: k for k, v in enumerate(self.vars_asc)}

    def key(self, m: Monomial):
        """Sort key: bigger key means greater monomial."""
        dense = [0] * len(self.vars_asc)
        for v, e in m.items:
            try:
                dense[self._pos[v]] = e
            except KeyError:
                raise KeyError(f"variable {variable_text(v)} outside the order")
        if self.scheme == "lex":
            return tuple(reversed(dense))
        if self.scheme == "grlex":
            return (m.degree, tuple(reversed(dense)))
        # grevlex: at the first difference along increasing variables the
        # smaller exponent wins, so negate
        return (m.degree, tuple(-e for e in dense))

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def covers(self, vs) -> bool:
        """True when every variable of a monomial, polynomial, or plain
        iterable of variables is known to this order."""
        if isinstance(vs, Monomial):
            vs = (v for v, _ in vs.items)
        elif isinstance(vs, Polynomial):
            vs = vs.variables()
        return all(v in self._pos for v in vs)

    def extend(self, extra: Sequence[Variable]) -> "MonomialOrder":
        return MonomialOrder(self.vars_asc + tuple(extra), self.scheme)

    def descriptor(self) -> dict:
        return {"scheme": self.scheme, "variables": [list(v) for v in self.vars_asc]}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MonomialOrder)
            and self.scheme == other.scheme
            and self.vars_asc == other.vars_asc
        )

    def __hash__(self) -> int:
        return hash((self.scheme, self.vars_asc))

    def __repr__(self) -> str:
        return f"MonomialOrder({self.scheme}, {len(self.vars_asc)} vars)"


class EliminationOrder:
    """Block order: the auxiliary variable first, then an inner order.

    Any monomial containing the auxiliary variable beats any monomial
    without it, which is exactly what elimination of that variable
    needs.
    """

    __slots__ = ("aux", "inner")

    def __init__(self, aux: Variable, inner: MonomialOrder):
        self.aux = aux
        self.inner = inner

    @property
    def vars_asc(self) -> tuple[Variable, ...]:
        return self.inner.vars_asc + (self.aux,)

    def key(self, m: Monomial):
        t = m.exponent(self.aux)
        rest = Monomial((v, e) for v, e in m.items if v != self.aux) if t else m
        return (t, self.inner.key(rest))

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def covers(self, vs) -> bool:
        if isinstance(vs, Monomial):
            vs = (v for v, _ in vs.items)
        elif isinstance(vs, Polynomial):
            vs = vs.variables()
        return all(v == self.aux or v in self.inner._pos for v in vs)

    def descriptor(self) -> dict:
        return {
            "scheme": "elimination",
            "auxiliary": list(self.aux),
            "inner": self.inner.descriptor(),
        }

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, EliminationOrder)
            and self.aux == other.aux
            and self.inner == other.inner
        )

    def __hash__(self) -> int:
        return hash((self.aux, self.inner))


OrderLike = Union[MonomialOrder, EliminationOrder]


class Polynomial:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[dict[Monomial, Scalar]] = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def constant(c: Scalar) -> "Polynomial":
        return Polynomial({Monomial.one(): Fraction(c)})

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial.constant(1)

    @staticmethod
    def variable(v: Variable) -> "Polynomial":
        return Polynomial({Monomial.variable(v): Fraction(1)})

    @staticmethod
    def from_monomial(m: Monomial, c: Scalar = 1) -> "Polynomial":
        return Polynomial({m: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(m.degree for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    def variables(self) -> set[Variable]:
        out: set[Variable] = set()
        for m in self.terms:
            out.update(m.variables())
        return out

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not other.terms:
            return self
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = acc.get(m)
            if s is None:
                acc[m] = c
            else:
                s = s + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]
        out = Polynomial.__new__(Polynomial)
        out.terms = acc
        out._hash = None
        return out

    def __neg__(self) -> "Polynomial":
        out = Polynomial.__new__(Polynomial)
        out.terms = {m: -c for m, c in self.terms.items()}
        out._hash = None
        return out

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero()
        out = Polynomial.__new__(Polynomial)
        out.terms = {m: q * c for m, q in self.terms.items()}
        out._hash = None
        return out

    def mul_term(self, m: Monomial, c: Scalar = 1) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero()
        out = Polynomial.__new__(Polynomial)
        out.terms = {mm * m: q * c for mm, q in self.terms.items()}
        out._hash = None
        return out

    def __mul__(self, other: Union["Polynomial", Monomial, int, Fraction]) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.mul_term(other)
        if len(self.terms) > len(other.terms):
            self, other = other, self
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = acc.get(m)
                if s is None:
                    acc[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        acc[m] = s
                    else:
                        del acc[m]
        out = Polynomial.__new__(Polynomial)
        out.terms = acc
        out._hash = None
        return out

    __rmul__ = __mul__

    def initial_term(self, order: OrderLike) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("the zero polynomial has no initial term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def initial_monomial(self, order: OrderLike) -> Monomial:
        return self.initial_term(order)[0]

    def monic(self, order: OrderLike) -> "Polynomial":
        _, c = self.initial_term(order)
        if c == 1:
            return self
        return self.scale(Fraction(1) / c)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def sorted_terms(self, order: OrderLike) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def canonical_str(self, order: Optional[OrderLike] = None) -> str:
        """Terms joined by " + " / " − ", descending in the order."""
        if not self.terms:
            return "0"
        if order is None:
            order = MonomialOrder(sorted(self.variables()), "grevlex")
        pieces: list[str] = []
        for k, (m, c) in enumerate(self.sorted_terms(order)):
            mag = abs(c)
            if m.is_one():
                body = str(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = f"{mag}*{m}"
            if k == 0:
                pieces.append(("−" if c < 0 else "") + body)
            else:
                pieces.append((" − " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self) -> str:
        return self.canonical_str()

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def polynomial_sum(ps: Iterable[Polynomial]) -> Polynomial:
    acc = Polynomial.zero()
    for p in ps:
        acc = acc + p
    return acc


def polynomial_product(ps: Iterable[Polynomial]) -> Polynomial:
    acc = Polynomial.one()
    for p in ps:
        acc = acc * p
    return acc


# ---------------------------------------------------------------------------
# symbolic determinants

DETERMINANT_GUARD = 10


def determinant(rows: Sequence[Sequence[Optional[Polynomial]]]) -> Polynomial:
    """Exact determinant by cofactor expansion, memoized on column subsets.

    Entries may be None for structural zeros.  Guarded at 10x10: the
    memo visits O(2^n) column subsets.
    """
    n = len(rows)
    if n == 0:
        return Polynomial.one()
    if n > DETERMINANT_GUARD:
        raise SizeGuardError(f"determinant size {n} exceeds guard {DETERMINANT_GUARD}")
    for row in rows:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")

    full = (1 << n) - 1
    memo: dict[int, Polynomial] = {}

    def minor(mask: int) -> Polynomial:
        # determinant of rows r..n-1 on the columns in mask, where r is
        # determined by how many columns were consumed
        cached = memo.get(mask)
        if cached is not None:
            return cached
        r = n - bin(mask).count("1")
        if r == n:
            return Polynomial.one()
        acc = Polynomial.zero()
        idx = 0
        for col in range(n):
            bit = 1 << col
            if not (mask & bit):
                continue
            entry = rows[r][col]
            if entry is not None and entry:
                sub = minor(mask & ~bit)
                contrib = entry * sub
                acc = acc + (contrib if idx % 2 == 0 else -contrib)
            idx += 1
        memo[mask] = acc
        return acc

    return minor(full)


# ---------------------------------------------------------------------------
# canonical text form parser

_TERM_SPLIT = re.compile(r"[+-]|[^+-]+")
_VAR_RE = re.compile(r"^x\[(\d+),(\d+)\](?:\^(\d+))?$")
_AUX_RE = re.compile(r"^t(\d*)(?:\^(\d+))?$")
_NUM_RE = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the canonical text form (and plain ASCII '-' variants)."""
    s = text.replace("−", "-").strip()
    if not s:
        raise InputError("empty polynomial text")
    tokens = [tok for tok in _TERM_SPLIT.findall(s.replace(" ", "")) if tok]
    terms: dict[Monomial, Fraction] = {}
    sign = Fraction(1)
    pending_sign = False
    for tok in tokens:
        if tok == "+":
            if pending_sign:
                raise InputError("dangling sign in polynomial text")
            sign = Fraction(1)
            pending_sign = True
            continue
        if tok == "-":
            if pending_sign:
                sign = -sign
            else:
                sign = Fraction(-1)
            pending_sign = True
            continue
        coeff = sign
        counts: dict[Variable, int] = {}
        for factor in tok.split("*"):
            if not factor:
                raise InputError(f"empty factor in term {tok!r}")
            mnum = _NUM_RE.match(factor)
            if mnum:
                p, q = mnum.group(1), mnum.group(2)
                coeff *= Fraction(int(p), int(q) if q else 1)
                continue
            mvar = _VAR_RE.match(factor)
            if mvar:
                v: Variable = (int(mvar.group(1)), int(mvar.group(2)))
                e = int(mvar.group(3) or 1)
            else:
                maux = _AUX_RE.match(factor)
                if not maux:
                    raise InputError(f"cannot parse factor {factor!r}")
                idx = int(maux.group(1) or 0)
                v = (-1, idx)
                e = int(maux.group(2) or 1)
            counts[v] = counts.get(v, 0) + e
        m = Monomial(counts.items())
        prev = terms.get(m, Fraction(0)) + coeff
        if prev:
            terms[m] = prev
        else:
            terms.pop(m, None)
        sign = Fraction(1)
        pending_sign = False
    if pending_sign:
        raise InputError("polynomial text ends with a sign")
    return Polynomial(terms)
