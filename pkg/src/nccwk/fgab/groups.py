"""Finitely generated abelian groups as presentations, and their homs.

A group is Z^g modulo the column span of a relation matrix.  Elements are
integer vectors on the generators; equality, divisibility, exactness and
splitting all reduce to integer linear solvability, which the Smith form
decides exactly.

>>> G = FgGroup.from_cyclic([2, 0])
>>> str(G)
'Z (+) Z/2'
>>> G.is_isomorphic_to(FgGroup.direct_sum(FgGroup.free(1), FgGroup.from_cyclic([2])))
True
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Optional, Sequence

from .intmat import (
    IntMatrix,
    in_column_span,
    kernel,
    lattice_preimage,
    smith_normal_form,
    solve,
)


@dataclass(frozen=True)
class FgGroup:
    """Z^generators / columnspan(relations)."""

    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ValueError("relation matrix must have one row per generator")

    @staticmethod
    def free(rank: int) -> "FgGroup":
        return FgGroup(rank, IntMatrix.zero(rank, 0))

    @staticmethod
    def from_cyclic(orders: Sequence[int]) -> "FgGroup":
        """Direct sum of cyclic groups Z/d (d = 0 meaning Z)."""
        g = len(orders)
        cols = [tuple(orders[i] if i == j else 0 for i in range(g)) for j in range(g) if orders[j] != 0]
        return FgGroup(g, IntMatrix.from_columns(cols, rows=g))

    @staticmethod
    def trivial() -> "FgGroup":
        return FgGroup(0, IntMatrix.zero(0, 0))

    @staticmethod
    def direct_sum(*parts: "FgGroup") -> "FgGroup":
        g = sum(p.generators for p in parts)
        cols = []
        offset = 0
        for p in parts:
            for j in range(p.relations.cols):
                col = [0] * g
                for i in range(p.generators):
                    col[offset + i] = p.relations[i, j]
                cols.append(tuple(col))
            offset += p.generators
        return FgGroup(g, IntMatrix.from_columns(cols, rows=g))

    @cached_property
    def _snf(self):
        return smith_normal_form(self.relations)

    @property
    def presentation_smith(self):
        """Smith data of the relation matrix (U diagonalizes the generators)."""
        return self._snf

    @cached_property
    def diagonal_orders(self) -> tuple:
        """One order per generator of the diagonalized presentation (0 = Z).

        Entries follow the invariant-factor chain, padded with 0 for
        generators not hit by any relation.
        """
        d = self._snf.invariant_factors
        out = [d[i] if i < len(d) else 0 for i in range(self.generators)]
        return tuple(out)

    @property
    def invariant_factors(self) -> tuple:
        return self.diagonal_orders

    @cached_property
    def free_rank(self) -> int:
        return sum(1 for d in self.diagonal_orders if d == 0)

    @cached_property
    def torsion_orders(self) -> tuple:
        return tuple(d for d in self.diagonal_orders if d > 1)

    def iso_class(self) -> tuple:
        return (self.free_rank, self.torsion_orders)

    def is_isomorphic_to(self, other: "FgGroup") -> bool:
        return self.iso_class() == other.iso_class()

    def is_trivial_group(self) -> bool:
        return self.free_rank == 0 and not self.torsion_orders

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank > 0:
            return None
        n = 1
        for d in self.torsion_orders:
            n *= d
        return n

    def exponent(self) -> Optional[int]:
        """Least n > 0 killing the torsion part; None only makes no sense here."""
        n = 1
        for d in self.torsion_orders:
            n = n * d // gcd(n, d)
        return n

    # -- elements ---------------------------------------------------------

    def check_element(self, v: Sequence[int]) -> tuple:
        v = tuple(int(x) for x in v)
        if len(v) != self.generators:
            raise ValueError(f"element length {len(v)} != {self.generators} generators")
        return v

    def canonical_form(self, v: Sequence[int]) -> tuple:
        """Coordinates in the diagonalized presentation; a complete equality
        invariant for classes of elements."""
        v = self.check_element(v)
        y = self._snf.U.apply(v)
        out = []
        for yi, d in zip(y, self.diagonal_orders):
            out.append(yi % d if d > 0 else yi)
        return tuple(out)

    def elements_equal(self, v, w) -> bool:
        return self.canonical_form(v) == self.canonical_form(w)

    def is_zero_element(self, v) -> bool:
        return all(c == 0 for c in self.canonical_form(v))

    def cyclic_generators(self) -> list:
        """(order, generator vector) per nontrivial cyclic summand,
        free summands last with order 0."""
        cols = self._snf.Uinv
        out = []
        for i, d in enumerate(self.diagonal_orders):
            if d != 1:
                out.append((d, cols.col(i)))
        out.sort(key=lambda t: (t[0] == 0, t[0]))
        return out

    def element_order_divides(self, v, n: int) -> bool:
        return self.is_zero_element(tuple(n * x for x in self.check_element(v)))

    def divide_element(self, v, n: int) -> Optional[tuple]:
        """x with n*x = v in the group, or None; n >= 1 required."""
        if n <= 0:
            raise ValueError("divisor must be a positive integer")
        v = self.check_element(v)
        A = IntMatrix.identity(self.generators).scale(n).hstack(self.relations)
        sol = solve(A, v)
        if sol is None:
            return None
        return tuple(sol[: self.generators])

    def enumerate_elements(self, free_box: int = 0):
        """All canonical forms; free coordinates range over [-box, box]."""
        from itertools import product

        ranges = []
        for d in self.diagonal_orders:
            ranges.append(range(d) if d > 0 else range(-free_box, free_box + 1))
        Uinv = self._snf.Uinv
        for combo in product(*ranges):
            yield Uinv.apply(combo)

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion_orders]
        return " (+) ".join(parts) if parts else "0"


def cokernel(A: IntMatrix) -> FgGroup:
    """Z^rows / columnspan(A)."""
    return FgGroup(A.rows, A)


@dataclass(frozen=True)
class GroupHom:
    """Hom given by a matrix on generator lifts; must map relations into
    relations to be well defined."""

    source: FgGroup
    target: FgGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.generators or self.matrix.cols != self.source.generators:
            raise ValueError(
                f"hom matrix must be {self.target.generators}x{self.source.generators}, "
                f"got {self.matrix.rows}x{self.matrix.cols}")
        if not self.is_well_defined():
            raise ValueError("hom does not map relations into relations")

    @staticmethod
    def identity(G: FgGroup) -> "GroupHom":
        return GroupHom(G, G, IntMatrix.identity(G.generators))

    @staticmethod
    def zero(source: FgGroup, target: FgGroup) -> "GroupHom":
        return GroupHom(source, target, IntMatrix.zero(target.generators, source.generators))

    @staticmethod
    def multiplication(G: FgGroup, n: int) -> "GroupHom":
        return GroupHom(G, G, IntMatrix.identity(G.generators).scale(n))

    def is_well_defined(self) -> bool:
        img = self.matrix @ self.source.relations
        return all(in_column_span(self.target.relations, img.col(j)) for j in range(img.cols))

    def apply(self, v) -> tuple:
        return self.matrix.apply(self.source.check_element(v))

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first."""
        if first.target.generators != self.source.generators:
            raise ValueError("composition shape mismatch")
        return GroupHom(first.source, self.target, self.matrix @ first.matrix)

    def equals(self, other: "GroupHom") -> bool:
        if self.source.generators != other.source.generators:
            return False
        if self.target.relations != other.target.relations or self.target.generators != other.target.generators:
            return False
        diff = self.matrix - other.matrix
        return all(in_column_span(self.target.relations, diff.col(j)) for j in range(diff.cols))

    def is_zero_hom(self) -> bool:
        return all(in_column_span(self.target.relations, self.matrix.col(j))
                   for j in range(self.matrix.cols))

    def kernel_generators(self) -> IntMatrix:
        """Columns generating {x : self(x) = 0 in target} inside Z^source."""
        return lattice_preimage(self.matrix, self.target.relations)

    def is_injective(self) -> bool:
        K = self.kernel_generators()
        return all(in_column_span(self.source.relations, K.col(j)) for j in range(K.cols))

    def is_surjective(self) -> bool:
        ext = self.matrix.hstack(self.target.relations)
        n = self.target.generators
        return all(solve(ext, tuple(1 if i == j else 0 for i in range(n))) is not None
                   for j in range(n))

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()


def hom_is_well_defined(source: FgGroup, target: FgGroup, matrix: IntMatrix) -> bool:
    """Does the matrix define a hom of presented groups?"""
    if matrix.rows != target.generators or matrix.cols != source.generators:
        raise ValueError("dimension mismatch")
    img = matrix @ source.relations
    return all(in_column_span(target.relations, img.col(j)) for j in range(img.cols))


def exact_at(first: GroupHom, second: GroupHom) -> bool:
    """Exactness of A -> B -> C at B: image(first) = kernel(second)."""
    if first.target.generators != second.source.generators:
        raise ValueError("homs not composable")
    if not second.compose(first).is_zero_hom():
        return False
    L = second.kernel_generators()
    ext = first.matrix.hstack(first.target.relations)
    return all(solve(ext, L.col(j)) is not None for j in range(L.cols))


@dataclass(frozen=True)
class ShortExactSeq:
    """0 -> left -> mid -> right -> 0 candidate; exactness is a check, not
    an invariant of construction."""

    inj: GroupHom
    surj: GroupHom

    def __post_init__(self):
        if self.inj.target.generators != self.surj.source.generators:
            raise ValueError("inj target and surj source do not match")

    @property
    def left(self) -> FgGroup:
        return self.inj.source

    @property
    def mid(self) -> FgGroup:
        return self.inj.target

    @property
    def right(self) -> FgGroup:
        return self.surj.target

    def __str__(self):
        return f"0 -> {self.left} -> {self.mid} -> {self.right} -> 0"


def is_exact(s: ShortExactSeq) -> bool:
    return s.inj.is_injective() and s.surj.is_surjective() and exact_at(s.inj, s.surj)


def is_pure(s: ShortExactSeq) -> bool:
    """Purity of an exact sequence of f.g. groups, decided as splitness.

    With finitely generated quotient, a pure subgroup is a direct summand
    (the quotient is pure-projective), so purity is one integer linear
    solvability question: a section matrix S with surj*S = id on the
    quotient presentation and S mapping quotient relations into mid
    relations.
    """
    if not is_exact(s):
        raise ValueError("purity is only defined for exact sequences")
    Mpi = s.surj.matrix
    R_G = s.mid.relations
    R_H = s.right.relations
    gG, gH, rG, rH = s.mid.generators, s.right.generators, R_G.cols, R_H.cols
    # unknowns: S (gG x gH), Y (rH x gH), W (rG x rH)
    nS, nY, nW = gG * gH, rH * gH, rG * rH
    ncols = nS + nY + nW
    rows = []
    rhs = []
    # Mpi S + R_H Y = I
    for i in range(gH):
        for b in range(gH):
            row = [0] * ncols
            for a in range(gG):
                row[a * gH + b] = Mpi[i, a]
            for c in range(rH):
                row[nS + c * gH + b] = R_H[i, c]
            rows.append(tuple(row))
            rhs.append(1 if i == b else 0)
    # S R_H - R_G W = 0
    for i in range(gG):
        for f in range(rH):
            row = [0] * ncols
            for b in range(gH):
                row[i * gH + b] = R_H[b, f]
            for e in range(rG):
                row[nS + nY + e * rH + f] = -R_G[i, e]
            rows.append(tuple(row))
            rhs.append(0)
    A = IntMatrix.from_rows(rows, cols=ncols)
    return solve(A, rhs) is not None


def check_ladder(top: ShortExactSeq, bottom: ShortExactSeq,
                 v_left: GroupHom, v_mid: GroupHom, v_right: GroupHom) -> bool:
    """Commutativity of the two squares between two short sequences."""
    shapes_ok = (
        v_left.source.generators == top.left.generators
        and v_left.target.generators == bottom.left.generators
        and v_mid.source.generators == top.mid.generators
        and v_mid.target.generators == bottom.mid.generators
        and v_right.source.generators == top.right.generators
        and v_right.target.generators == bottom.right.generators
    )
    if not shapes_ok:
        raise ValueError("ladder shape mismatch")
    left_square = v_mid.compose(top.inj).equals(bottom.inj.compose(v_left))
    right_square = v_right.compose(top.surj).equals(bottom.surj.compose(v_mid))
    return left_square and right_square


def tensor_zn(G: FgGroup, n: int) -> FgGroup:
    """G (x) Z_n as a presentation (n = 0 gives G back, n = 1 kills all)."""
    if n < 0:
        raise ValueError("modulus must be nonnegative")
    if n == 0:
        return G
    return FgGroup(G.generators, G.relations.hstack(IntMatrix.identity(G.generators).scale(n)))


def tor_zn(G: FgGroup, n: int) -> FgGroup:
    """Tor(G, Z_n) = (+) Z_gcd(d, n) over the nonzero invariant factors
    (unit factors contribute the zero group and are skipped, keeping one
    generator per nontrivial torsion summand of G, aligned with
    tor_zn_embedding and the coefficient-change blocks)."""
    if n < 0:
        raise ValueError("modulus must be nonnegative")
    if n == 0:
        return FgGroup.trivial()
    return FgGroup.from_cyclic([gcd(d, n) for d in G.torsion_orders])


def tor_zn_embedding(G: FgGroup, n: int) -> GroupHom:
    """Tor(G, Z_n) -> G identifying Tor with the n-torsion subgroup.

    The summand from a cyclic factor of order d is generated by
    (d / gcd(d, n)) times that factor's generator.
    """
    if n <= 0:
        raise ValueError("modulus must be positive")
    orders = []
    cols = []
    for d, gen in G.cyclic_generators():
        if d <= 1:
            continue
        t = gcd(d, n)
        orders.append(t)
        cols.append(tuple((d // t) * x for x in gen))
    T = FgGroup.from_cyclic(orders)
    M = IntMatrix.from_columns(cols, rows=G.generators)
    return GroupHom(T, G, M)
