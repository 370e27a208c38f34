"""Graded multivariate polynomials over Q.

Every variable carries a positive degree, and monomials are compared by
weighted degree first. Two term orders are used:

* ``grevlex_key``: weighted degree, then reverse lexicographic in table
  order. This is the monomial order for leading terms, division and
  Groebner bases.
* ``display_key``: weighted degree, then lexicographic. Only used to print
  polynomials, so that ``a1*zeta - a2 - a2p*z`` reads in table order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd, lcm
from typing import Callable, Iterable, Mapping, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class VariableTable:
    """Ordered variable names with degrees. The order induces the term order."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if any(d <= 0 for d in self.degrees):
            raise ValueError("variable degrees must be positive")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @classmethod
    def of(cls, *entries: tuple[str, int]) -> VariableTable:
        return cls(tuple(n for n, _ in entries), tuple(d for _, d in entries))

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}; table has {self.names}") from None

    def var(self, name: str) -> Poly:
        e = [0] * len(self.names)
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> tuple[Poly, ...]:
        return tuple(self.var(n) for n in self.names)

    def const(self, c: Scalar) -> Poly:
        if type(c) is not Fraction:
            c = Fraction(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    @property
    def zero_exp(self) -> Exponent:
        return (0,) * len(self.names)

    def weighted_degree(self, e: Exponent) -> int:
        return sum(a * w for a, w in zip(e, self.degrees))

    def grevlex_key(self, e: Exponent) -> tuple:
        return (self.weighted_degree(e), tuple(-a for a in reversed(e)))

    def display_key(self, e: Exponent) -> tuple:
        return (self.weighted_degree(e), e)


class Poly:
    """Immutable polynomial: a map from exponent vectors to nonzero rationals."""

    __slots__ = ("table", "terms", "_hash")

    def __init__(self, table: VariableTable, terms: Mapping[Exponent, Scalar] | None = None):
        self.table = table
        clean: dict[Exponent, Fraction] = {}
        if terms:
            n = len(table)
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match table of size {n}")
                if c:
                    clean[tuple(e)] = c if type(c) is Fraction else Fraction(c)
        self.terms = clean
        self._hash = None

    # -- construction helpers -------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.table != self.table:
                raise ValueError(
                    f"polynomials live in different tables: {self.table.names} vs {other.table.names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.table.const(other)
        return NotImplemented

    @classmethod
    def _raw(cls, table: VariableTable, terms: dict[Exponent, Fraction]) -> Poly:
        p = cls.__new__(cls)
        p.table = table
        p.terms = terms
        p._hash = None
        return p

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.table, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.table, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw(self.table, {})
            return Poly._raw(self.table, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._raw(self.table, out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> Poly:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.table.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.table.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.table.names, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- inspection -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(self.table.zero_exp, Fraction(0))

    def degrees(self) -> set[int]:
        return {self.table.weighted_degree(e) for e in self.terms}

    def degree(self) -> int:
        """Highest weighted degree; -1 for the zero polynomial."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def variables(self) -> set[str]:
        names = self.table.names
        return {names[i] for e in self.terms for i, a in enumerate(e) if a}

    def coefficient(self, monomial: Exponent | Mapping[str, int]) -> Fraction:
        if isinstance(monomial, Mapping):
            e = [0] * len(self.table)
            for n, a in monomial.items():
                e[self.table.index(n)] = a
            monomial = tuple(e)
        return self.terms.get(tuple(monomial), Fraction(0))

    def leading_exponent(self) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.table.grevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_exponent()]

    def sorted_terms(self, key: Callable | None = None) -> list[tuple[Exponent, Fraction]]:
        key = key or self.table.display_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- transformations --------------------------------------------------

    def monic(self) -> Poly:
        return self / self.leading_coefficient()

    def primitive(self) -> tuple[Poly, Fraction]:
        """Return ``(q, s)`` with ``q = s * self`` having integer content 1 and
        positive grevlex-leading coefficient."""
        if not self.terms:
            return self, Fraction(1)
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, (c * den).numerator)
        s = Fraction(den, num)
        if self.leading_coefficient() < 0:
            s = -s
        return self * s, s

    def mul_monomial(self, e: Exponent, c: Fraction = Fraction(1)) -> Poly:
        return Poly._raw(
            self.table,
            {tuple(a + b for a, b in zip(k, e)): v * c for k, v in self.terms.items()},
        )

    def substitute(
        self,
        mapping: Mapping[str, Union[Poly, Scalar]],
        target: VariableTable | None = None,
    ) -> Poly:
        """Ring-homomorphism evaluation into ``target``.

        Each variable is sent to ``mapping[name]`` when present, otherwise to
        the same-named variable of ``target`` (default: this table).
        """
        target = target or self.table
        if not self.terms:
            return target.const(0)
        images: list[Poly] = []
        used = [any(e[i] for e in self.terms) for i in range(len(self.table))]
        for i, name in enumerate(self.table.names):
            if name in mapping:
                img = mapping[name]
                if isinstance(img, Poly):
                    if img.table != target:
                        raise ValueError(f"image of {name} is not in the target table")
                else:
                    img = target.const(img)
            elif name in target:
                img = target.var(name)
            elif used[i]:
                raise KeyError(f"variable {name!r} has no image in {target.names}")
            else:
                img = target.const(0)
            images.append(img)
        cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, a: int) -> Poly:
            key = (i, a)
            if key not in cache:
                cache[key] = images[i] if a == 1 else power(i, a - 1) * images[i]
            return cache[key]

        out = target.const(0)
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Value at a rational point; every occurring variable must be assigned."""
        total = Fraction(0)
        names = self.table.names
        for e, c in self.terms.items():
            v = c
            for i, a in enumerate(e):
                if a:
                    try:
                        v *= Fraction(point[names[i]]) ** a
                    except KeyError:
                        raise KeyError(f"no value for variable {names[i]!r}") from None
            total += v
        return total

    # -- rendering --------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Poly({render(self)!r})"


def _render_monomial(names: tuple[str, ...], e: Exponent) -> str:
    parts = []
    for n, a in zip(names, e):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return "*".join(parts)


def render(p: Poly) -> str:
    """Canonical string, e.g. ``a1*zeta - a2 - 1/4*a2p*z``."""
    if not p.terms:
        return "0"
    out = []
    for k, (e, c) in enumerate(p.sorted_terms()):
        mono = _render_monomial(p.table.names, e)
        neg = c < 0
        mag = -c if neg else c
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- division and Groebner bases ----------------------------------------------


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce(p: Poly, basis: list[Poly], leads: list[Exponent]) -> Poly:
    """Full multivariate division remainder of ``p`` by monic ``basis``."""
    table = p.table
    key = table.grevlex_key
    work = dict(p.terms)
    rem: dict[Exponent, Fraction] = {}
    while work:
        e = max(work, key=key)
        c = work[e]
        for g, lg in zip(basis, leads):
            if _divides(lg, e):
                shift = tuple(x - y for x, y in zip(e, lg))
                for ge, gc in g.terms.items():
                    t = tuple(x + y for x, y in zip(ge, shift))
                    s = work.get(t, 0) - c * gc
                    if s:
                        work[t] = s
                    else:
                        work.pop(t, None)
                break
        else:
            rem[e] = c
            del work[e]
    return Poly._raw(table, rem)


def _spoly(f: Poly, g: Poly, lf: Exponent, lg: Exponent) -> Poly:
    m = _lcm_exp(lf, lg)
    return f.mul_monomial(tuple(x - y for x, y in zip(m, lf))) - g.mul_monomial(
        tuple(x - y for x, y in zip(m, lg))
    )


def buchberger(generators: Iterable[Poly]) -> list[Poly]:
    """Reduced Groebner basis under weighted grevlex (Buchberger, chain criterion)."""
    basis = [g.monic() for g in generators if g]
    if not basis:
        return []
    leads = [g.leading_exponent() for g in basis]
    pairs = set(combinations(range(len(basis)), 2))
    done: set[tuple[int, int]] = set()

    def processed(i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in done

    while pairs:
        # normal selection: smallest lcm first
        i, j = min(pairs, key=lambda ij: basis[0].table.grevlex_key(_lcm_exp(leads[ij[0]], leads[ij[1]])) + ij)
        pairs.remove((i, j))
        m = _lcm_exp(leads[i], leads[j])
        chain = any(
            k not in (i, j) and _divides(leads[k], m) and processed(i, k) and processed(j, k)
            for k in range(len(basis))
        )
        done.add((i, j))
        if chain:
            continue
        r = _reduce(_spoly(basis[i], basis[j], leads[i], leads[j]), basis, leads)
        if r:
            r = r.monic()
            n = len(basis)
            basis.append(r)
            leads.append(r.leading_exponent())
            pairs.update((k, n) for k in range(n))
    return _interreduce(basis)


def _interreduce(basis: list[Poly]) -> list[Poly]:
    leads = [g.leading_exponent() for g in basis]
    keep = []
    for i, (g, lg) in enumerate(zip(basis, leads)):
        redundant = any(
            j != i and _divides(leads[j], lg) and (leads[j] != lg or j < i) for j in range(len(basis))
        )
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = _reduce(g, others, [o.leading_exponent() for o in others]).monic()
        out.append(r)
    table = out[0].table if out else None
    return sorted(out, key=lambda p: table.grevlex_key(p.leading_exponent()), reverse=True)


class Ideal:
    """Ideal of a polynomial ring; the reduced Groebner basis is computed once, on demand."""

    def __init__(self, table: VariableTable, generators: Iterable[Poly]):
        gens = []
        for g in generators:
            if not isinstance(g, Poly):
                g = table.const(g)
            if g.table != table:
                raise ValueError("generator lives in a different table")
            if g:
                gens.append(g)
        self.table = table
        self.generators = tuple(gens)

    @cached_property
    def basis(self) -> tuple[Poly, ...]:
        return tuple(buchberger(self.generators))

    @cached_property
    def _leads(self) -> list[Exponent]:
        return [g.leading_exponent() for g in self.basis]

    def groebner(self) -> Ideal:
        out = Ideal(self.table, self.basis)
        out.__dict__["basis"] = self.basis
        return out

    def normal_form(self, p: Poly) -> Poly:
        if p.table != self.table:
            raise ValueError("polynomial lives in a different table")
        return _reduce(p, list(self.basis), self._leads)

    def contains(self, p: Poly) -> bool:
        return self.normal_form(p).is_zero

    __contains__ = contains

    def contains_ideal(self, other: Ideal) -> bool:
        return all(self.contains(g) for g in other.generators)

    def __repr__(self) -> str:
        return f"Ideal<{', '.join(map(str, self.generators))}>"


def groebner(ideal: Ideal) -> Ideal:
    return ideal.groebner()


def normal_form(p: Poly, ideal: Ideal) -> Poly:
    return ideal.normal_form(p)


def ideal_equal(i: Ideal, j: Ideal) -> bool:
    if i.table != j.table:
        raise ValueError("ideals live in different tables")
    return i.contains_ideal(j) and j.contains_ideal(i)


def substitute(p: Poly, mapping: Mapping[str, Union[Poly, Scalar]], target: VariableTable | None = None) -> Poly:
    return p.substitute(mapping, target)


def exact_quotient(p: Poly, f: Poly) -> Poly | None:
    """``p / f`` when ``f`` divides ``p`` exactly, else ``None``."""
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    table = p.table
    key = table.grevlex_key
    lf = f.leading_exponent()
    cf = f.terms[lf]
    work = dict(p.terms)
    quot: dict[Exponent, Fraction] = {}
    while work:
        e = max(work, key=key)
        if not _divides(lf, e):
            return None
        shift = tuple(x - y for x, y in zip(e, lf))
        q = work[e] / cf
        quot[shift] = quot.get(shift, 0) + q
        for fe, fc in f.terms.items():
            t = tuple(x + y for x, y in zip(fe, shift))
            s = work.get(t, 0) - q * fc
            if s:
                work[t] = s
            else:
                work.pop(t, None)
    return Poly(table, quot)
