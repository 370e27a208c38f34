"""The three-layer Chow model: base ring, the P^1-bundle layer (``z``) and the
projectivization layer (``zeta``).

Every element is kept in the normal form ``p0 + p1*z + p2*zeta + p3*z*zeta``
with ``p_i`` in the base ring, using ``z^2 = -c2`` and the projective bundle
relation ``zeta^2 = (a1 + a1'*z)*zeta - (a2 + a2'*z)`` with ``a1' = d - g - 1``.

The class symbols ``a1, a2, a2p, b1, c2`` are looked up through
:meth:`TowerRing.sym`, so the same formulas run in every flavor:

* ``full``: base ``Q[a1, a2, a2p, b1, c2]``.
* ``reduced``: base ``Q[a1, a2p]`` with ``b1 = c2 = 0`` and ``a2 = a1^2/4``.
* ``splitting``: base ``Q[n1, n2, b1, c2]`` on the stratum of splitting type
  ``(i, j)``, classes pulled back along ``a1 -> n1 + n2``,
  ``a2 -> n1*n2 - i*j*c2``, ``a2p -> i*n2 + j*n1``.
* point towers (:meth:`TowerRing.at_point`): an empty base with every class
  replaced by a rational number. These feed the evaluation oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .poly import Poly, Scalar, VariableTable

CLASS_SYMBOLS = ("a1", "a2", "a2p", "b1", "c2")

FULL_BASE = VariableTable.of(("a1", 1), ("a2", 2), ("a2p", 1), ("b1", 1), ("c2", 2))
REDUCED_BASE = VariableTable.of(("a1", 1), ("a2p", 1))
SPLITTING_BASE = VariableTable.of(("n1", 1), ("n2", 1), ("b1", 1), ("c2", 2))
POINT_BASE = VariableTable((), ())

_LAYER = (("z", 1), ("zeta", 1))


def _with_layers(base: VariableTable) -> VariableTable:
    return VariableTable(base.names + tuple(n for n, _ in _LAYER), base.degrees + tuple(d for _, d in _LAYER))


def restrict_to_splitting(x: Poly, i: int, j: int) -> Poly:
    """Pull a base class back to the splitting locus of type ``(i, j)``.

    ``x`` may live in any table whose variables are among ``a1, a2, a2p, b1, c2``.
    """
    t = SPLITTING_BASE
    n1, n2, b1, c2 = t.gens()
    images = {
        "a1": n1 + n2,
        "a2": n1 * n2 - i * j * c2,
        "a2p": i * n2 + j * n1,
        "b1": b1,
        "c2": c2,
    }
    extra = set(x.variables()) - set(images)
    if extra:
        raise KeyError(f"cannot restrict variables {sorted(extra)} to a splitting locus")
    return x.substitute(images, t)


def reduce_base(x: Poly) -> Poly:
    """Impose ``b1 = c2 = 0`` and ``a2 = a1^2/4`` on a base class."""
    a1 = REDUCED_BASE.var("a1")
    return x.substitute({"b1": 0, "c2": 0, "a2": a1 * a1 / 4}, REDUCED_BASE)


@dataclass(frozen=True)
class SplittingType:
    """Splitting type ``O(e1) + O(e2)`` of a rank 2 bundle on P^1, ``e1 <= e2``."""

    e1: int
    e2: int

    def __post_init__(self) -> None:
        if self.e1 > self.e2:
            raise ValueError(f"splitting type needs e1 <= e2, got ({self.e1}, {self.e2})")

    @classmethod
    def for_curve(cls, e1: int, g: int, d: int) -> SplittingType:
        return cls(e1, d - g - 1 - e1)

    @property
    def degree(self) -> int:
        return self.e1 + self.e2

    @property
    def codimension(self) -> int:
        return max(self.e2 - self.e1 - 1, 0)

    def matches(self, g: int, d: int) -> bool:
        return self.degree == d - g - 1

    def is_allowed(self, g: int, d: int) -> bool:
        """Whether line bundles of degree ``d`` on genus ``g`` curves can have this type."""
        return self.matches(g, d) and 2 * self.e1 >= d - 2 * (g + 1)


class TowerRing:
    """Chow ring of the universal Hirzebruch surface over a chosen base."""

    def __init__(
        self,
        g: int,
        d: int,
        flavor: str,
        base: VariableTable,
        syms: Mapping[str, Poly],
        rel_degree: int,
        split: tuple[int, int] | None = None,
    ):
        self.g = g
        self.d = d
        self.flavor = flavor
        self.split = split
        self.base = base
        self.table = _with_layers(base)
        self._syms = dict(syms)
        # relative degree of E on the P^1 fibers: a1' in c1(E) = a1 + a1'*z
        self.a1p = rel_degree
        self.b1p = g + 1
        self.z_square = -self._syms["c2"]
        self.zeta_rule = (
            -self._syms["a2"],
            -self._syms["a2p"],
            self._syms["a1"],
            base.const(rel_degree),
        )
        self._z_pow: dict[int, TowerElement] = {}
        self._zeta_pow: dict[int, TowerElement] = {}
        self._numeric: tuple[Fraction, ...] | None = None

    def __repr__(self) -> str:
        extra = f", split={self.split}" if self.split else ""
        return f"TowerRing(g={self.g}, d={self.d}, flavor={self.flavor!r}{extra})"

    # -- class symbols ----------------------------------------------------

    def sym(self, name: str) -> Poly:
        """The base class named ``name`` (one of a1, a2, a2p, b1, c2) in this flavor."""
        try:
            return self._syms[name]
        except KeyError:
            raise KeyError(f"unknown class symbol {name!r}") from None

    def lift(self, p: Union[Poly, Scalar]) -> TowerElement:
        """Base class as a tower element."""
        if isinstance(p, (int, Fraction)):
            p = self.base.const(p)
        if p.table != self.base:
            raise ValueError("lift expects a polynomial in the base table")
        zero = self.base.const(0)
        return TowerElement(self, p, zero, zero, zero)

    def element(self, p0=0, p1=0, p2=0, p3=0) -> TowerElement:
        parts = [self.base.const(p) if isinstance(p, (int, Fraction)) else p for p in (p0, p1, p2, p3)]
        return TowerElement(self, *parts)

    @property
    def one(self) -> TowerElement:
        return self.lift(1)

    @property
    def z(self) -> TowerElement:
        return self.element(0, 1, 0, 0)

    @property
    def zeta(self) -> TowerElement:
        return self.element(0, 0, 1, 0)

    def symbol(self, name: str) -> TowerElement:
        """Tower element for a table variable or a class symbol."""
        if name == "z":
            return self.z
        if name == "zeta":
            return self.zeta
        if name in self.base:
            return self.lift(self.base.var(name))
        return self.lift(self.sym(name))

    def z_power(self, n: int) -> TowerElement:
        if n not in self._z_pow:
            self._z_pow[n] = self.one if n == 0 else self.z_power(n - 1) * self.z
        return self._z_pow[n]

    def zeta_power(self, n: int) -> TowerElement:
        if n not in self._zeta_pow:
            self._zeta_pow[n] = self.one if n == 0 else self.zeta_power(n - 1) * self.zeta
        return self._zeta_pow[n]

    # -- reduction --------------------------------------------------------

    def reduce(self, x: Poly) -> TowerElement:
        """Normal form of a raw polynomial in ``base + z + zeta``."""
        if x.table != self.table:
            raise ValueError(f"expected a polynomial in {self.table.names}")
        nb = len(self.base)
        groups: dict[tuple[int, int], dict] = {}
        for e, c in x.terms.items():
            groups.setdefault((e[nb], e[nb + 1]), {})[e[:nb]] = c
        out = self.element()
        for (a, b), terms in sorted(groups.items()):
            coeff = Poly(self.base, terms)
            out = out + (self.z_power(a) * self.zeta_power(b)).scale(coeff)
        return out

    # -- derived towers ---------------------------------------------------

    def at_point(self, point: Mapping[str, Scalar]) -> TowerRing:
        """Same tower with every base variable evaluated at ``point``."""
        syms = {n: POINT_BASE.const(p.evaluate(point)) for n, p in self._syms.items()}
        return TowerRing(self.g, self.d, self.flavor + "@point", POINT_BASE, syms, self.a1p, self.split)

    def numeric_rule(self) -> tuple[Fraction, ...]:
        """``zeta_rule`` and ``z_square`` as numbers; point towers only."""
        if self._numeric is None:
            self._numeric = tuple(p.constant_value() for p in (*self.zeta_rule, self.z_square))
        return self._numeric

    def evaluate(self, x: TowerElement, point: Mapping[str, Scalar], target: TowerRing) -> TowerElement:
        """Image of ``x`` in the point tower ``target``."""
        parts = [POINT_BASE.const(p.evaluate(point)) for p in x.parts]
        return TowerElement(target, *parts)


def make_tower(g: int, d: int, flavor: str | tuple = "full") -> TowerRing:
    """Build the tower for genus ``g`` and degree ``d``.

    ``flavor`` is ``"full"``, ``"reduced"``, ``"splitting:I,J"`` or
    ``("splitting", I, J)``.
    """
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    e = d - g - 1
    if isinstance(flavor, tuple):
        kind, i, j = flavor
        flavor = f"{kind}:{i},{j}"
    if flavor == "full":
        syms = {n: FULL_BASE.var(n) for n in CLASS_SYMBOLS}
        return TowerRing(g, d, "full", FULL_BASE, syms, e)
    if flavor == "reduced":
        a1, a2p = REDUCED_BASE.gens()
        zero = REDUCED_BASE.const(0)
        syms = {"a1": a1, "a2": a1 * a1 / 4, "a2p": a2p, "b1": zero, "c2": zero}
        return TowerRing(g, d, "reduced", REDUCED_BASE, syms, e)
    if flavor.startswith("splitting:"):
        try:
            i, j = (int(s) for s in flavor.split(":", 1)[1].split(","))
        except ValueError:
            raise ValueError(f"malformed splitting flavor {flavor!r}; use splitting:I,J") from None
        if i > j:
            raise ValueError(f"splitting type needs i <= j, got ({i}, {j})")
        syms = {n: restrict_to_splitting(FULL_BASE.var(n), i, j) for n in CLASS_SYMBOLS}
        return TowerRing(g, d, f"splitting:{i},{j}", SPLITTING_BASE, syms, i + j, split=(i, j))
    raise ValueError(f"unknown flavor {flavor!r}")


class TowerElement:
    """``p0 + p1*z + p2*zeta + p3*z*zeta`` with ``p_i`` in the base ring."""

    __slots__ = ("ring", "parts")

    def __init__(self, ring: TowerRing, p0: Poly, p1: Poly, p2: Poly, p3: Poly):
        self.ring = ring
        self.parts = (p0, p1, p2, p3)

    @property
    def value(self) -> Poly:
        """The normal form as a polynomial in the tower table."""
        t = self.ring.table
        nb = len(self.ring.base)
        terms = {}
        for (a, b), p in zip(((0, 0), (1, 0), (0, 1), (1, 1)), self.parts):
            for e, c in p.terms.items():
                terms[e + (a, b)] = c
        return Poly(t, terms)

    def coefficient(self, which: str) -> Poly:
        """Base coefficient of ``1``, ``z``, ``zeta`` or ``z*zeta``."""
        idx = {"1": 0, "z": 1, "zeta": 2, "zzeta": 3, "z*zeta": 3}[which]
        return self.parts[idx]

    def has_zeta(self) -> bool:
        return bool(self.parts[2]) or bool(self.parts[3])

    def _check(self, other) -> TowerElement:
        if isinstance(other, TowerElement):
            if other.ring is not self.ring:
                raise ValueError("elements of different towers")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.lift(other)
        if isinstance(other, Poly):
            return self.ring.lift(other)
        return NotImplemented

    def __add__(self, other) -> TowerElement:
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TowerElement(self.ring, *(a + b for a, b in zip(self.parts, other.parts)))

    __radd__ = __add__

    def __neg__(self) -> TowerElement:
        return TowerElement(self.ring, *(-p for p in self.parts))

    def __sub__(self, other) -> TowerElement:
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> TowerElement:
        return (-self) + other

    def scale(self, c: Union[Poly, Scalar]) -> TowerElement:
        return TowerElement(self.ring, *(p * c for p in self.parts))

    def __mul__(self, other) -> TowerElement:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Poly):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not len(self.ring.base):
            return self._mul_point(other)
        x0, x1, x2, x3 = self.parts
        y0, y1, y2, y3 = other.parts
        zero = self.ring.base.const(0)
        # c[a][b] is the coefficient of z^a zeta^b before reduction
        c = [[zero] * 3 for _ in range(4)]
        xs = {(0, 0): x0, (1, 0): x1, (0, 1): x2, (1, 1): x3}
        ys = {(0, 0): y0, (1, 0): y1, (0, 1): y2, (1, 1): y3}
        for (a1, b1), xp in xs.items():
            if not xp:
                continue
            for (a2, b2), yp in ys.items():
                if yp:
                    c[a1 + a2][b1 + b2] = c[a1 + a2][b1 + b2] + xp * yp
        # zeta^2 = A + B z + C zeta + D z zeta
        A, B, C, D = self.ring.zeta_rule
        for a in range(3):
            t = c[a][2]
            if t:
                c[a][0] = c[a][0] + t * A
                c[a + 1][0] = c[a + 1][0] + t * B
                c[a][1] = c[a][1] + t * C
                c[a + 1][1] = c[a + 1][1] + t * D
                c[a][2] = zero
        s = self.ring.z_square
        out = [zero, zero, zero, zero]
        for a in range(4):
            for b in range(2):
                t = c[a][b]
                if not t:
                    continue
                if a >= 2:
                    t = t * s ** (a // 2)
                k = (a % 2) + 2 * b
                out[k] = out[k] + t
        return TowerElement(self.ring, *out)

    __rmul__ = __mul__

    def _mul_point(self, other: TowerElement) -> TowerElement:
        # same reduction as __mul__, on plain numbers; point towers do most oracle work
        x = [p.terms.get((), 0) for p in self.parts]
        y = [p.terms.get((), 0) for p in other.parts]
        A, B, C, D, s = self.ring.numeric_rule()
        # z^a zeta^b with a <= 2, b <= 2; index (a, b) -> 3*a + b
        c = [0] * 9
        for k, (a, b) in enumerate(((0, 0), (1, 0), (0, 1), (1, 1))):
            if x[k]:
                for m, (a2, b2) in enumerate(((0, 0), (1, 0), (0, 1), (1, 1))):
                    if y[m]:
                        c[3 * (a + a2) + b + b2] += x[k] * y[m]
        out = [0] * 4
        for a in range(3):
            t = c[3 * a + 2]
            if t:
                # zeta^2 = A + B z + C zeta + D z zeta
                terms = ((a, 0, A), (a + 1, 0, B), (a, 1, C), (a + 1, 1, D))
                for aa, bb, coef in terms:
                    if coef:
                        v = t * coef
                        if aa >= 2:
                            v *= s ** (aa // 2)
                        out[(aa % 2) + 2 * bb] += v
        for a in range(3):
            for b in range(2):
                t = c[3 * a + b]
                if t:
                    if a >= 2:
                        t *= s
                    out[(a % 2) + 2 * b] += t
        const = self.ring.base.const
        return TowerElement(self.ring, *(const(v) for v in out))

    def __pow__(self, n: int) -> TowerElement:
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = self.ring.lift(other)
        if not isinstance(other, TowerElement):
            return NotImplemented
        return other.ring is self.ring and self.parts == other.parts

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.parts)

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"TowerElement({self.value!s})"


def push_gamma(x: TowerElement) -> TowerElement:
    """Pushforward along the projectivization: the ``zeta`` coefficient."""
    _, _, p2, p3 = x.parts
    zero = x.ring.base.const(0)
    return TowerElement(x.ring, p2, p3, zero, zero)


def push_pi(y: TowerElement) -> Poly:
    """Pushforward along the P^1-bundle: the ``z`` coefficient of a zeta-free element."""
    if y.has_zeta():
        raise ValueError(f"push_pi needs a zeta-free element, got {y}")
    return y.parts[1]


def push_down(x: TowerElement) -> Poly:
    """``push_pi(push_gamma(x))``."""
    return push_pi(push_gamma(x))
