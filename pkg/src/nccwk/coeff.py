"""Mod-n coefficient groups and Bockstein-piece maps on f.g. K-data.

For finitely generated K-groups the coefficient group splits (after a
choice) as K_i(;Z_n) = K_i (x) Z_n  (+)  Tor(K_{i+1}, Z_n), and the three
natural transformations have closed forms on the summands:

  rho   : K_i -> K_i(;Z_n)            reduction onto the tensor summand,
  beta  : K_i(;Z_n) -> K_{i+1}        inclusion of Tor as the n-torsion,
  kappa : coefficient changes Z_m -> Z_mn and Z_mn ->> Z_n.

The splitting is chosen, not natural, so induced maps on coefficient
groups are only ever computed from summand-respecting data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .fgab.intmat import IntMatrix
from .fgab.groups import (
    FgGroup,
    GroupHom,
    exact_at,
    tensor_zn,
    tor_zn,
    tor_zn_embedding,
)


@dataclass(frozen=True)
class ModNKData:
    """K_*(;Z_n) with the chosen summand decomposition retained."""

    n: int
    k0: FgGroup
    k1: FgGroup
    k0_tensor: FgGroup  # K_0 (x) Z_n, presented on K_0's generators
    k0_tor: FgGroup     # Tor(K_1, Z_n)
    k1_tensor: FgGroup
    k1_tor: FgGroup

    @property
    def k0n(self) -> FgGroup:
        return FgGroup.direct_sum(self.k0_tensor, self.k0_tor)

    @property
    def k1n(self) -> FgGroup:
        return FgGroup.direct_sum(self.k1_tensor, self.k1_tor)

    def coefficient_group(self, degree: int) -> FgGroup:
        return self.k0n if degree % 2 == 0 else self.k1n


def mod_n(k0: FgGroup, k1: FgGroup, n: int) -> ModNKData:
    """Coefficient K-data; n = 0 reproduces the input, n = 1 kills it."""
    if n < 0:
        raise ValueError("modulus must be nonnegative")
    return ModNKData(
        n, k0, k1,
        k0_tensor=tensor_zn(k0, n), k0_tor=tor_zn(k1, n),
        k1_tensor=tensor_zn(k1, n), k1_tor=tor_zn(k0, n))


def _tensor_embedding_block(data: ModNKData, degree: int, into_tensor: IntMatrix,
                            into_tor: IntMatrix, source: FgGroup) -> GroupHom:
    """Hom into the direct sum K_i(;Z_n) from blocks on the two summands."""
    target = data.coefficient_group(degree)
    rows = []
    for i in range(into_tensor.rows):
        rows.append(tuple(into_tensor[i, j] for j in range(into_tensor.cols)))
    for i in range(into_tor.rows):
        rows.append(tuple(into_tor[i, j] for j in range(into_tor.cols)))
    return GroupHom(source, target, IntMatrix.from_rows(rows, cols=source.generators))


def rho_map(data: ModNKData, degree: int) -> GroupHom:
    """K_i -> K_i(;Z_n): identity onto the tensor summand, zero into Tor."""
    if data.n < 1:
        raise ValueError("rho needs a positive modulus")
    src = data.k0 if degree % 2 == 0 else data.k1
    tor = data.k0_tor if degree % 2 == 0 else data.k1_tor
    return _tensor_embedding_block(
        data, degree,
        IntMatrix.identity(src.generators),
        IntMatrix.zero(tor.generators, src.generators),
        src)


def beta_map(data: ModNKData, degree: int) -> GroupHom:
    """K_i(;Z_n) -> K_{i+1}: zero on the tensor summand, and on Tor the
    inclusion of Tor(K_{i+1}, Z_n) as the n-torsion subgroup of K_{i+1}."""
    if data.n < 1:
        raise ValueError("beta needs a positive modulus")
    src = data.coefficient_group(degree)
    nxt = data.k1 if degree % 2 == 0 else data.k0
    tensor = data.k0_tensor if degree % 2 == 0 else data.k1_tensor
    emb = tor_zn_embedding(nxt, data.n)
    cols = []
    for _ in range(tensor.generators):
        cols.append(tuple(0 for _ in range(nxt.generators)))
    for j in range(emb.matrix.cols):
        cols.append(emb.matrix.col(j))
    return GroupHom(src, nxt, IntMatrix.from_columns(cols, rows=nxt.generators))


def bockstein_segment(k0: FgGroup, k1: FgGroup, n: int, degree: int):
    """The five-term sequence
    K_i --n--> K_i --rho--> K_i(;Z_n) --beta--> K_{i+1} --n--> K_{i+1}."""
    data = mod_n(k0, k1, n)
    ki = k0 if degree % 2 == 0 else k1
    knext = k1 if degree % 2 == 0 else k0
    return (GroupHom.multiplication(ki, n),
            rho_map(data, degree),
            beta_map(data, degree),
            GroupHom.multiplication(knext, n))


def bockstein_segment_exact(k0: FgGroup, k1: FgGroup, n: int, degree: int) -> bool:
    mul_i, rho, beta, mul_next = bockstein_segment(k0, k1, n, degree)
    return (exact_at(mul_i, rho)
            and exact_at(rho, beta)
            and exact_at(beta, mul_next))


@dataclass(frozen=True)
class KappaMaps:
    """kappa_{mn,m}: K_i(;Z_m) -> K_i(;Z_mn) and kappa_{n,mn}: K_i(;Z_mn) -> K_i(;Z_n),
    one pair per degree."""

    to_mn: tuple    # (degree 0 hom, degree 1 hom)
    from_mn: tuple


def _kappa_up_block(G: FgGroup, m: int, n: int) -> IntMatrix:
    """Tor(G, Z_m) -> Tor(G, Z_mn) induced by Z_m >--n--> Z_mn: the
    subgroup inclusion G[m] <= G[mn], diagonal with entries gcd(d,mn)/gcd(d,m)."""
    orders = [d for d, _ in G.cyclic_generators() if d > 1]
    diag = [gcd(d, m * n) // gcd(d, m) for d in orders]
    return IntMatrix.from_rows(
        [tuple(diag[i] if i == j else 0 for j in range(len(orders))) for i in range(len(orders))],
        cols=len(orders))


def _kappa_down_block(G: FgGroup, m: int, n: int) -> IntMatrix:
    """Tor(G, Z_mn) -> Tor(G, Z_n) induced by Z_mn ->> Z_n: multiplication
    by m on the torsion subgroups, diagonal entries m*gcd(d,n)/gcd(d,mn)."""
    orders = [d for d, _ in G.cyclic_generators() if d > 1]
    diag = [m * gcd(d, n) // gcd(d, m * n) for d in orders]
    return IntMatrix.from_rows(
        [tuple(diag[i] if i == j else 0 for j in range(len(orders))) for i in range(len(orders))],
        cols=len(orders))


def _block_diag_hom(src: FgGroup, tgt: FgGroup, a: IntMatrix, b: IntMatrix) -> GroupHom:
    rows = []
    for i in range(a.rows):
        rows.append(tuple(a[i, j] for j in range(a.cols)) + tuple(0 for _ in range(b.cols)))
    for i in range(b.rows):
        rows.append(tuple(0 for _ in range(a.cols)) + tuple(b[i, j] for j in range(b.cols)))
    return GroupHom(src, tgt, IntMatrix.from_rows(rows, cols=src.generators))


def kappa_maps(k0: FgGroup, k1: FgGroup, m: int, n: int) -> KappaMaps:
    """The two coefficient transformations for the pair (m, n), per degree."""
    if m < 1 or n < 1:
        raise ValueError("moduli must be positive")
    data_m = mod_n(k0, k1, m)
    data_mn = mod_n(k0, k1, m * n)
    data_n = mod_n(k0, k1, n)
    to_mn = []
    from_mn = []
    for degree in (0, 1):
        ki = k0 if degree == 0 else k1
        knext = k1 if degree == 0 else k0
        src_m = data_m.coefficient_group(degree)
        src_mn = data_mn.coefficient_group(degree)
        tgt_n = data_n.coefficient_group(degree)
        # tensor part of kappa_{mn,m} is multiplication by n on generators
        up_tensor = IntMatrix.identity(ki.generators).scale(n)
        up = _block_diag_hom(src_m, src_mn, up_tensor, _kappa_up_block(knext, m, n))
        to_mn.append(up)
        # tensor part of kappa_{n,mn} is the identity on generators
        down_tensor = IntMatrix.identity(ki.generators)
        down = _block_diag_hom(src_mn, tgt_n, down_tensor, _kappa_down_block(knext, m, n))
        from_mn.append(down)
    return KappaMaps(tuple(to_mn), tuple(from_mn))
