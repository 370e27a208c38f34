"""Integral Picard groups, the generator table, and the Brauer class order.

Coordinates are always with respect to the ambient basis ``(a1, a2p, b1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import (
    AbelianGroup,
    IntegerMatrix,
    cokernel,
    determinant,
    smith_normal_form,
    solve_integer_row,
    subgroup_index_in_Z,
)

AMBIENT = ("a1", "a2p", "b1")


def discriminant_vector(g: int) -> tuple[int, int, int]:
    return (0, 0, 8 * g + 4)


def _check_genus(g: int) -> None:
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")


@dataclass(frozen=True)
class PicLattice:
    """A full rank sublattice of ``Z a1 + Z a2p + Z b1`` with relations inside it."""

    basis: IntegerMatrix
    labels: tuple[str, ...]
    relations: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.basis.rows != 3 or self.basis.cols != 3:
            raise ValueError("sublattice basis must be 3x3")
        if determinant(self.basis) == 0:
            raise ValueError("sublattice basis is singular")
        for r in self.relations:
            if solve_integer_row(self.basis, r) is None:
                raise ValueError(f"relation {r} is not in the sublattice")

    def coordinates(self, v) -> tuple[int, ...] | None:
        return solve_integer_row(self.basis, v)

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    @property
    def index(self) -> int:
        return abs(determinant(self.basis))

    def group(self) -> AbelianGroup:
        rows = [self.coordinates(r) for r in self.relations]
        return cokernel(3, IntegerMatrix.from_rows(rows, cols=3))


def sublattice(g: int, d: int) -> tuple[IntegerMatrix, tuple[str, ...]]:
    """Image of the Picard group of the stacky base, by parity of ``g`` and ``d``."""
    if g % 2 and not d % 2:
        rows, labels = [(1, 0, 0), (0, 1, 0), (0, 0, 1)], ("a1", "a2p", "b1")
    elif g % 2:
        rows, labels = [(2, 0, 0), (0, 1, 0), (0, 0, 1)], ("2a1", "a2p", "b1")
    elif d % 2:
        rows, labels = [(1, 0, 0), (0, 1, 0), (0, 0, 2)], ("a1", "a2p", "2b1")
    else:
        rows, labels = [(1, 0, -1), (2, 0, 0), (0, 1, 0)], ("a1-b1", "2a1", "a2p")
    return IntegerMatrix.from_rows(rows), labels


def pic_sl2_lattice(g: int) -> PicLattice:
    return PicLattice(IntegerMatrix.identity(3), AMBIENT, (discriminant_vector(g),))


def pic_pgl2_lattice(g: int, d: int) -> PicLattice:
    basis, labels = sublattice(g, d)
    return PicLattice(basis, labels, (discriminant_vector(g),))


def pic_sl2(g: int, d: int) -> AbelianGroup:
    _check_genus(g)
    return pic_sl2_lattice(g).group()


def pic_pgl2(g: int, d: int) -> AbelianGroup:
    _check_genus(g)
    return pic_pgl2_lattice(g, d).group()


@dataclass(frozen=True)
class GeneratorRow:
    name: str
    c1: tuple[int, int, int]
    res: int


@dataclass(frozen=True)
class GeneratorTable:
    g: int
    d: int
    rows: tuple[GeneratorRow, ...]
    in_sublattice: bool
    spans_sublattice: bool

    def by_name(self, name: str) -> GeneratorRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)


def span_index(vectors, ncols: int = 3) -> int:
    """Index in ``Z^ncols`` of the span of ``vectors``; 0 when the span is not full rank."""
    _, dmat, _ = smith_normal_form(IntegerMatrix.from_rows(vectors, cols=ncols))
    diag = dmat.diagonal()
    if len(diag) < ncols or any(x == 0 for x in diag):
        return 0
    out = 1
    for x in diag:
        out *= x
    return out


def generator_table(g: int, d: int) -> GeneratorTable:
    _check_genus(g)
    odd = lambda n: n % 2 != 0  # noqa: E731
    rows = (
        GeneratorRow("A", (2, 0, 0) if odd(d - g - 1) else (1, 0, 0), 4 if odd(d - g - 1) else 2),
        GeneratorRow("B", (0, 0, -2) if not odd(g) else (0, 0, -1), 0),
        GeneratorRow("N", (1, 0, -1) if not odd(d) else (2, 0, -2), 2 if not odd(d) else 4),
        GeneratorRow("Lambda", (d - g, -1, 0), d - g + 1),
    )
    basis, _ = sublattice(g, d)
    lat = PicLattice(basis, AMBIENT, ())
    inside = all(lat.contains(r.c1) for r in rows)
    spans = inside and span_index([r.c1 for r in rows]) == lat.index
    return GeneratorTable(g, d, rows, inside, spans)


def brauer_order(g: int, d: int) -> int:
    """Index of the image of ``res``, which is the order of the Brauer class."""
    return subgroup_index_in_Z(r.res for r in generator_table(g, d).rows)
