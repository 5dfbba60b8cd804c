"""1-dimensional NCCW complexes as multiplicity data, and their K-theory.

A complex is the tuple (p, l, k, h, alpha, beta): p matrix-algebra points
with sizes k, l interval blocks with sizes h, and two nonnegative l x p
multiplicity matrices recording the endpoint conditions.  K_0 is the
kernel of alpha - beta and K_1 its cokernel; the positivity cone on K_0
is the set of kernel vectors with nonnegative point coordinates.

Compact ideals (those generated by projections) are parameterized by the
set S of points they contain; the adjacent interval blocks are forced.
Everything here is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence

from .fgab.intmat import (
    IntMatrix,
    kernel,
    nonnegative_kernel_witness,
    solve_matrix,
)
from .fgab.groups import (
    FgGroup,
    GroupHom,
    ShortExactSeq,
    cokernel,
    is_exact,
    is_pure,
)


@dataclass(frozen=True)
class NccwComplex:
    """Multiplicity data of a 1-NCCW complex; indices are 0-based internally."""

    k: tuple  # point block sizes, length p
    h: tuple  # interval block sizes, length l
    alpha: IntMatrix  # l x p
    beta: IntMatrix  # l x p
    unital: bool = True

    def __post_init__(self):
        p, l = len(self.k), len(self.h)
        if self.alpha.rows != l or self.alpha.cols != p or self.beta.rows != l or self.beta.cols != p:
            raise ValueError(f"alpha and beta must be {l}x{p}")
        if any(s <= 0 for s in self.k) or any(s <= 0 for s in self.h):
            raise ValueError("block sizes must be positive")
        for M in (self.alpha, self.beta):
            if any(M[i, j] < 0 for i in range(l) for j in range(p)):
                raise ValueError("multiplicities must be nonnegative")
        for i in range(l):
            for M in (self.alpha, self.beta):
                s = sum(M[i, j] * self.k[j] for j in range(p))
                if s > self.h[i]:
                    raise ValueError(f"size accounting fails in interval block {i + 1}: {s} > {self.h[i]}")
                if self.unital and s != self.h[i]:
                    raise ValueError(f"unital complex needs equality in block {i + 1}: {s} != {self.h[i]}")

    @property
    def p(self) -> int:
        return len(self.k)

    @property
    def l(self) -> int:
        return len(self.h)

    @cached_property
    def delta(self) -> IntMatrix:
        return self.alpha - self.beta

    @staticmethod
    def direct_sum(*parts: "NccwComplex") -> "NccwComplex":
        k = tuple(x for c in parts for x in c.k)
        h = tuple(x for c in parts for x in c.h)
        l, p = len(h), len(k)
        roff = 0
        coff = 0
        alpha_rows = [[0] * p for _ in range(l)]
        beta_rows = [[0] * p for _ in range(l)]
        for c in parts:
            for i in range(c.l):
                for j in range(c.p):
                    alpha_rows[roff + i][coff + j] = c.alpha[i, j]
                    beta_rows[roff + i][coff + j] = c.beta[i, j]
            roff += c.l
            coff += c.p
        return NccwComplex(k, h, IntMatrix.from_rows(alpha_rows, cols=p),
                           IntMatrix.from_rows(beta_rows, cols=p),
                           unital=all(c.unital for c in parts))

    def __str__(self):
        return f"NCCW(p={self.p}, l={self.l}, k={list(self.k)}, h={list(self.h)})"


def dimension_drop(p: int, scale: int = 1) -> NccwComplex:
    """The prototype interval algebra with scalar fibers of multiplicity p
    at both endpoints; p = 2 is the building block of the torsion examples."""
    return NccwComplex((scale, scale), (p * scale,),
                       IntMatrix.from_rows([[p, 0]]),
                       IntMatrix.from_rows([[0, p]]))


@dataclass(frozen=True)
class KData:
    """K-groups of a complex with the kernel basis made explicit."""

    k0: FgGroup       # free group on the kernel basis columns
    k0_basis: IntMatrix  # p x rank, columns a Z-basis of ker(alpha - beta)
    k1: FgGroup       # presented on Z^l by the columns of alpha - beta

    @property
    def rank(self) -> int:
        return self.k0_basis.cols

    def ambient(self, v: Sequence[int]) -> tuple:
        """Kernel coordinates -> point coordinates in Z^p."""
        return self.k0_basis.apply(v)

    def cone_contains(self, v: Sequence[int]) -> bool:
        """Membership of a K_0 class (kernel coordinates) in the cone."""
        return all(x >= 0 for x in self.ambient(v))

    def coordinates(self, ambient_vec: Sequence[int]) -> Optional[tuple]:
        """Kernel coordinates of an ambient vector, or None if outside."""
        sol = solve_matrix(self.k0_basis, IntMatrix.column(ambient_vec))
        if sol is None:
            return None
        return sol.col(0)


def k_theory(A: NccwComplex, basis: Optional[IntMatrix] = None) -> KData:
    """K-data of a complex; an explicit kernel basis may be supplied and is
    verified to span the kernel lattice."""
    computed = kernel(A.delta)
    if basis is None:
        basis = computed
    else:
        if basis.rows != A.p:
            raise ValueError("basis has wrong ambient dimension")
        if not (A.delta @ basis).is_zero():
            raise ValueError("supplied basis does not lie in the kernel")
        if solve_matrix(basis, computed) is None or solve_matrix(computed, basis) is None:
            raise ValueError("supplied columns do not span the kernel lattice")
    return KData(FgGroup.free(basis.cols), basis, cokernel(A.delta))


@dataclass(frozen=True)
class CompactIdealSpec:
    """Support of a projection-generated ideal: the points S it contains
    plus the forced adjacent interval blocks T."""

    S: tuple  # sorted 0-based point indices
    T: tuple  # sorted 0-based interval indices, always adj(S)
    witness: tuple  # nonnegative kernel vector positive on all of S


def adjacent_blocks(A: NccwComplex, S: Sequence[int]) -> tuple:
    return tuple(i for i in range(A.l)
                 if any(A.alpha[i, j] != 0 or A.beta[i, j] != 0 for j in S))


def make_ideal_spec(A: NccwComplex, S: Sequence[int]) -> CompactIdealSpec:
    """Validated ideal support; raises if no projection has exactly this
    point support (no nonnegative kernel vector positive across S)."""
    S = tuple(sorted(set(S)))
    if any(j < 0 or j >= A.p for j in S):
        raise ValueError("S must be a subset of the point indices")
    T = adjacent_blocks(A, S)
    restricted = A.delta.submatrix(T, S)
    witness = nonnegative_kernel_witness(restricted, range(len(S)))
    if witness is None:
        raise ValueError(
            f"no projection-generated ideal has point support {[j + 1 for j in S]}")
    return CompactIdealSpec(S, T, witness)


def all_ideal_specs(A: NccwComplex) -> list:
    """Every valid compact-ideal support, by size then lexicographically."""
    out = []
    for size in range(A.p + 1):
        for S in combinations(range(A.p), size):
            try:
                out.append(make_ideal_spec(A, S))
            except ValueError:
                continue
    return out


def ideal_complex(A: NccwComplex, spec: CompactIdealSpec) -> NccwComplex:
    k = tuple(A.k[j] for j in spec.S)
    h = tuple(A.h[i] for i in spec.T)
    alpha = A.alpha.submatrix(spec.T, spec.S)
    beta = A.beta.submatrix(spec.T, spec.S)
    unital = all(sum(M[i, j] * k[j] for j in range(len(k))) == h[i]
                 for i in range(len(h)) for M in (alpha, beta))
    return NccwComplex(k, h, alpha, beta, unital=unital)


def quotient_complex(A: NccwComplex, spec: CompactIdealSpec) -> NccwComplex:
    Sc = tuple(j for j in range(A.p) if j not in spec.S)
    Tc = tuple(i for i in range(A.l) if i not in spec.T)
    k = tuple(A.k[j] for j in Sc)
    h = tuple(A.h[i] for i in Tc)
    alpha = A.alpha.submatrix(Tc, Sc)
    beta = A.beta.submatrix(Tc, Sc)
    unital = all(sum(M[i, j] * k[j] for j in range(len(k))) == h[i]
                 for i in range(len(h)) for M in (alpha, beta))
    return NccwComplex(k, h, alpha, beta, unital=unital)


def _pad_columns(cols_idx: Sequence[int], total: int) -> IntMatrix:
    """total x len(cols_idx) zero-padding matrix hitting the given rows."""
    return IntMatrix.from_columns(
        [tuple(1 if i == j else 0 for i in range(total)) for j in cols_idx], rows=total)


def inclusion_k_maps(A: NccwComplex, spec: CompactIdealSpec,
                     kd: Optional[KData] = None,
                     kd_ideal: Optional[KData] = None):
    """(K_0, K_1) of the embedding of the compact ideal into A.

    K_0 zero-pads ideal kernel coordinates into Z^p and re-expresses them in
    A's kernel basis; K_1 zero-pads Z^T into Z^l and descends to cokernels.
    """
    kd = kd or k_theory(A)
    I = ideal_complex(A, spec)
    kd_ideal = kd_ideal or k_theory(I)
    padS = _pad_columns(spec.S, A.p)
    padded = padS @ kd_ideal.k0_basis
    coords = solve_matrix(kd.k0_basis, padded)
    if coords is None:
        raise ValueError("padded ideal kernel escapes the kernel of the complex")
    k0 = GroupHom(kd_ideal.k0, kd.k0, coords)
    padT = _pad_columns(spec.T, A.l)
    k1 = GroupHom(kd_ideal.k1, kd.k1, padT)
    return k0, k1


def quotient_k_maps(A: NccwComplex, spec: CompactIdealSpec,
                    kd: Optional[KData] = None,
                    kd_quot: Optional[KData] = None):
    """(K_0, K_1) of the quotient map onto the complement blocks."""
    kd = kd or k_theory(A)
    Q = quotient_complex(A, spec)
    kd_quot = kd_quot or k_theory(Q)
    Sc = tuple(j for j in range(A.p) if j not in spec.S)
    Tc = tuple(i for i in range(A.l) if i not in spec.T)
    restricted = kd.k0_basis.submatrix(Sc, range(kd.rank))
    coords = solve_matrix(kd_quot.k0_basis, restricted)
    if coords is None:
        raise ValueError("restricted kernel escapes the quotient kernel")
    k0 = GroupHom(kd.k0, kd_quot.k0, coords)
    restrict = IntMatrix.from_rows(
        [tuple(1 if j == i else 0 for j in range(A.l)) for i in Tc], cols=A.l)
    k1 = GroupHom(kd.k1, kd_quot.k1, restrict)
    return k0, k1


def k_sequences(A: NccwComplex, spec: CompactIdealSpec):
    """The candidate rows 0 -> K_j(I) -> K_j(A) -> K_j(A/I) -> 0, j = 0, 1."""
    kd = k_theory(A)
    kd_i = k_theory(ideal_complex(A, spec))
    kd_q = k_theory(quotient_complex(A, spec))
    i0, i1 = inclusion_k_maps(A, spec, kd, kd_i)
    q0, q1 = quotient_k_maps(A, spec, kd, kd_q)
    return ShortExactSeq(i0, q0), ShortExactSeq(i1, q1)


def boundary_trivial(A: NccwComplex, spec: CompactIdealSpec) -> bool:
    """Vanishing of both six-term boundary maps, decided as exactness of
    the two assembled K_j rows."""
    s0, s1 = k_sequences(A, spec)
    return is_exact(s0) and is_exact(s1)


def extension_k_pure(A: NccwComplex, spec: CompactIdealSpec) -> bool:
    """Purity of both K_j rows; requires trivial boundary maps."""
    s0, s1 = k_sequences(A, spec)
    if not (is_exact(s0) and is_exact(s1)):
        raise ValueError("extension does not have trivial boundary maps; rows are not exact")
    return is_pure(s0) and is_pure(s1)


class BlockClass(Enum):
    NICE = "nice"
    ODD = "odd"


@dataclass(frozen=True)
class Classification:
    verdict: BlockClass
    odd_witness: Optional[CompactIdealSpec]
    nonexact_witnesses: tuple  # specs whose rows fail exactness (boundary maps nonzero)
    nonpure_witnesses: tuple   # exact but non-pure specs
    specs_checked: int

    def __str__(self):
        extra = ""
        if self.nonexact_witnesses:
            bad = [[j + 1 for j in s.S] for s in self.nonexact_witnesses]
            extra = f"; supports with nontrivial boundary maps: {bad}"
        if self.verdict is BlockClass.ODD:
            return f"odd (witness S = {[j + 1 for j in self.odd_witness.S]}{extra})"
        return f"nice ({self.specs_checked} ideal supports checked{extra})"


def classify_block(A: NccwComplex) -> Classification:
    """Odd or nice, by exhausting the 2^p candidate ideal supports.

    Odd means: some compact ideal has trivial boundary maps (both K rows
    exact) but a non-pure row.  Nice means no such witness exists; purity
    is only meaningful for exact rows, so supports with nontrivial
    boundary maps do not disqualify a complex, they are reported
    separately as diagnostics.
    """
    odd_witness = None
    nonexact = []
    nonpure = []
    specs = all_ideal_specs(A)
    for spec in specs:
        s0, s1 = k_sequences(A, spec)
        if not (is_exact(s0) and is_exact(s1)):
            nonexact.append(spec)
            continue
        if not (is_pure(s0) and is_pure(s1)):
            nonpure.append(spec)
            if odd_witness is None:
                odd_witness = spec
    verdict = BlockClass.ODD if odd_witness is not None else BlockClass.NICE
    return Classification(verdict, odd_witness, tuple(nonexact), tuple(nonpure), len(specs))
