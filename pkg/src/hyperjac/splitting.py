"""Classes of universal splitting loci for rank 2 bundles on P^1.

All classes live in the full base ring ``Q[a1, a2, a2p, b1, c2]`` and are
only determined up to a nonzero scalar. We store the representative with
integer content 1 and positive grevlex-leading coefficient, together with the
scalar that turns the raw product into it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import rational_nullspace
from .poly import Poly, VariableTable
from .tower import FULL_BASE, REDUCED_BASE, SPLITTING_BASE, reduce_base, restrict_to_splitting

_A1, _A2, _A2P, _B1, _C2 = FULL_BASE.gens()


def alpha(i: int, j: int) -> Poly:
    """``alpha_{i-1,j+1}``: the kernel generator in degree two on the ``(i, j)`` stratum."""
    return (_A1 * i - _A2P) * (_A1 * j - _A2P) + (_A2 + _C2 * (i * j)) * (i - j) ** 2


def step_factor(e: int, k: int) -> Poly:
    """Factor contributed by ``k`` to the product formula; equals ``alpha(k, e - k)``."""
    return alpha(k, e - k)


def prefactor(e: int) -> Poly:
    return _A1 * e - _A2P * 2


@dataclass(frozen=True)
class SplittingClass:
    e: int
    i: int
    j: int
    value: Poly
    scale: Fraction

    @property
    def codimension(self) -> int:
        return max(self.j - self.i - 1, 0)

    def __str__(self) -> str:
        return str(self.value)


def raw_splitting_product(e: int, i: int, j: int) -> Poly:
    """The product formula before normalization."""
    if i + j != e:
        raise ValueError(f"splitting type ({i}, {j}) does not have degree {e}")
    if i > j:
        raise ValueError(f"splitting type needs i <= j, got ({i}, {j})")
    if j - i - 1 <= 0:
        return FULL_BASE.const(1)
    out = prefactor(e) if e % 2 == 0 else FULL_BASE.const(1)
    k = i + 1
    while 2 * k < e:
        out = out * step_factor(e, k)
        k += 1
    return out


def splitting_class(e: int, i: int, j: int) -> SplittingClass:
    raw = raw_splitting_product(e, i, j)
    value, scale = raw.primitive()
    return SplittingClass(e, i, j, value, scale)


def S_class(g: int, d: int) -> SplittingClass:
    """Class of the closure of the most unbalanced allowed stratum beyond the boundary."""
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    lo = (d + 1) // 2
    hi = -((-(d + 1)) // 2)
    return splitting_class(d - g - 1, lo - g - 2, hi)


# -- kernel checks -----------------------------------------------------------

_DEG2 = (
    {"a1": 2},
    {"a1": 1, "a2p": 1},
    {"a2p": 2},
    {"a2": 1},
    {"c2": 1},
)
_DEG1 = ({"a1": 1}, {"a2p": 1})


def _monomial(m: dict) -> Poly:
    out = FULL_BASE.const(1)
    for n, a in m.items():
        out = out * FULL_BASE.var(n) ** a
    return out


def _restriction_matrix(monomials, i: int, j: int) -> tuple[list[list[Fraction]], list]:
    images = [restrict_to_splitting(_monomial(m), i, j) for m in monomials]
    support = sorted({e for p in images for e in p.terms})
    # columns are source monomials, rows are target monomials
    rows = [[p.coefficient(s) for p in images] for s in support]
    return rows, images


def restriction_kernel(monomials, i: int, j: int) -> list[Poly]:
    """Basis of the kernel of restriction to ``(i, j)`` on the span of ``monomials``."""
    rows, _ = _restriction_matrix(monomials, i, j)
    basis = rational_nullspace(rows, len(monomials))
    return [sum((_monomial(m) * c for m, c in zip(monomials, v) if c), FULL_BASE.const(0)) for v in basis]


def _spans_line(kernel: list[Poly], p: Poly) -> bool:
    if len(kernel) != 1 or not p:
        return False
    k = kernel[0]
    ratio = p.leading_coefficient() / k.leading_coefficient()
    return p == k * ratio


def verify_kernel(e: int, i: int, j: int) -> bool:
    """The generators used by the product formula vanish on their own strata.

    Checks that ``alpha_{i-1,j+1}`` restricts to zero on ``(i, j)`` and spans
    the degree two kernel there, that each step factor dies on its stratum,
    and for even ``e`` that ``e/2*a1 - a2p`` spans the degree one kernel at
    ``(e/2, e/2)``.
    """
    if i + j != e:
        raise ValueError(f"splitting type ({i}, {j}) does not have degree {e}")
    if i >= j:
        raise ValueError(f"verify_kernel needs i < j, got ({i}, {j})")
    a = alpha(i, j)
    if restrict_to_splitting(a, i, j):
        return False
    if not _spans_line(restriction_kernel(_DEG2, i, j), a):
        return False
    k = i + 1
    while 2 * k < e:
        if restrict_to_splitting(step_factor(e, k), k, e - k):
            return False
        k += 1
    if e % 2 == 0:
        h = e // 2
        half = _A1 * h - _A2P
        if restrict_to_splitting(half, h, h):
            return False
        if not _spans_line(restriction_kernel(_DEG1, h, h), half):
            return False
    return True


def power_ratio(p: Poly, base: Poly, n: int) -> Fraction | None:
    """``c`` with ``p == c * base^n`` and ``c != 0``, else ``None``."""
    target = base ** n
    if not p or not target:
        return None
    c = p.leading_coefficient() / target.leading_coefficient()
    return c if p == target * c else None


def specialize_check(e: int, i: int, j: int) -> tuple[bool, Fraction]:
    """After ``c2 = 0`` and ``a2 = a1^2/4`` the class is a power of ``e*a1 - 2*a2p``.

    Returns ``(is_power, scalar)`` for the normalized class; ``scalar`` is 0
    when the check fails.
    """
    if i >= j:
        raise ValueError(f"specialize_check needs i < j, got ({i}, {j})")
    cls = splitting_class(e, i, j)
    red = reduce_base(cls.value)
    a1, a2p = REDUCED_BASE.gens()
    c = power_ratio(red, a1 * e - a2p * 2, cls.codimension)
    return (c is not None, c if c is not None else Fraction(0))


def induction_check(e: int, i: int, j: int) -> bool:
    """``[Sigma_{i-1,j+1}]`` is a nonzero multiple of ``alpha_{i-1,j+1} * [Sigma_{i,j}]``."""
    if i >= j:
        raise ValueError(f"induction_check needs i < j, got ({i}, {j})")
    big = splitting_class(e, i - 1, j + 1).value
    prod, _ = (alpha(i, j) * splitting_class(e, i, j).value).primitive()
    return big == prod


def sweep_cases(e_lo: int = -6, e_hi: int = 6, max_gap: int = 8) -> list[tuple[int, int, int]]:
    """All ``(e, i, j)`` with ``i + j = e`` and ``0 < j - i <= max_gap``."""
    out = []
    for e in range(e_lo, e_hi + 1):
        for gap in range(1, max_gap + 1):
            if (e - gap) % 2 == 0:
                i = (e - gap) // 2
                out.append((e, i, i + gap))
    return out
