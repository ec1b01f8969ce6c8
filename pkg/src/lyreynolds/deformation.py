"""Truncated formal deformations of a Reynolds Lie-Yamaguti algebra.

A deformation to order N is a triple of coefficient lists (F_0..F_N,
G_0..G_N, T_0..T_N) whose base terms are the undeformed brackets and
operator.  Every axiom of the deformed structure is a power-series identity,
so it splits into one polynomial identity per order; order n only involves
coefficients up to n, which is why finite truncation loses nothing.

Deformation cochains live in the mapping-cone complex of the adjoint
representation: the infinitesimal of a valid order-1 deformation is a
2-cocycle there, equivalent deformations have cohomologous infinitesimals,
and a bounding infinitesimal can be removed by a first-order equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import (
    LyAlgebra,
    _freeze2,
    _freeze3,
    apply_binary,
    apply_ternary,
    zero_binary,
    zero_ternary,
)
from .cohomology import (
    RlyCochain,
    coboundary_preimage,
    cochain2_from_tensors,
    cochain_from_matrix,
    matrix_from_cochain,
)
from .errors import (
    DimMismatch,
    InternalInconsistency,
    InvalidInput,
    InvalidStructure,
    NotCoboundary,
    OrderMismatch,
    OrderTooLow,
    ShapeMismatch,
)
from .linalg import Matrix, is_zero_vector, vec_add, vec_scale, vec_sub, zero_vector
from .reporting import AxiomReport, Check, OrderReport
from .representation import adjoint_rep
from .reynolds import ReynoldsOperator


def _check_antisym(f_tensor, g_tensor, dim: int, where: str):
    for i, j in product(range(dim), repeat=2):
        if any(a != -b for a, b in zip(f_tensor[i][j], f_tensor[j][i])):
            raise InvalidStructure(
                f"{where}: binary coefficient not antisymmetric at ({i},{j})")
    for i, j, k in product(range(dim), repeat=3):
        if any(a != -b for a, b in zip(g_tensor[i][j][k], g_tensor[j][i][k])):
            raise InvalidStructure(
                f"{where}: ternary coefficient not antisymmetric at ({i},{j},{k})")


@dataclass(frozen=True)
class TruncatedDeformation:
    """Coefficients F_0..F_N, G_0..G_N, T_0..T_N of a deformation cut at N."""

    order: int
    F: tuple  # binary tensors
    G: tuple  # ternary tensors
    Tt: tuple[Matrix, ...]

    def __post_init__(self):
        if self.order < 1:
            raise OrderTooLow("truncation order must be at least 1")
        if not (len(self.F) == len(self.G) == len(self.Tt) == self.order + 1):
            raise ShapeMismatch("need exactly order+1 coefficients per series")
        dim = len(self.F[0])
        object.__setattr__(self, "F", tuple(_freeze2(f, dim) for f in self.F))
        object.__setattr__(self, "G", tuple(_freeze3(g, dim) for g in self.G))
        for n, (f, g) in enumerate(zip(self.F, self.G)):
            _check_antisym(f, g, dim, f"order {n}")
        for t in self.Tt:
            if (t.rows, t.cols) != (dim, dim):
                raise ShapeMismatch("operator coefficients must be dim x dim")

    @property
    def dim(self) -> int:
        return len(self.F[0])

    @classmethod
    def constant(cls, algebra: LyAlgebra, op: ReynoldsOperator,
                 order: int = 1) -> "TruncatedDeformation":
        """The undeformed structure padded with zero higher coefficients."""
        n = algebra.dim
        zf, zg, zt = zero_binary(n), zero_ternary(n), Matrix.zero(n, n)
        return cls(order,
                   (algebra.binary,) + (zf,) * order,
                   (algebra.ternary,) + (zg,) * order,
                   (op.matrix,) + (zt,) * order)

    @classmethod
    def first_order(cls, algebra: LyAlgebra, op: ReynoldsOperator,
                    f1, g1, t1: Matrix, order: int = 1) -> "TruncatedDeformation":
        """Base structure plus prescribed order-1 coefficients (higher zero)."""
        n = algebra.dim
        zf, zg, zt = zero_binary(n), zero_ternary(n), Matrix.zero(n, n)
        return cls(order,
                   (algebra.binary, f1) + (zf,) * (order - 1),
                   (algebra.ternary, g1) + (zg,) * (order - 1),
                   (op.matrix, t1) + (zt,) * (order - 1))


@dataclass(frozen=True)
class FormalIsomorphism:
    """Truncated power series of linear maps with base coefficient Id."""

    order: int
    phi: tuple[Matrix, ...]

    def __post_init__(self):
        if self.order < 1:
            raise OrderTooLow("isomorphism order must be at least 1")
        if len(self.phi) != self.order + 1:
            raise ShapeMismatch("need exactly order+1 coefficient maps")
        dim = self.phi[0].rows
        for p in self.phi:
            if (p.rows, p.cols) != (dim, dim):
                raise ShapeMismatch("coefficient maps must be square of one size")
        if self.phi[0] != Matrix.identity(dim):
            raise InvalidInput("the base coefficient must be the identity")

    @property
    def dim(self) -> int:
        return self.phi[0].rows

    @classmethod
    def identity(cls, dim: int, order: int = 1) -> "FormalIsomorphism":
        return cls(order, (Matrix.identity(dim),) + (Matrix.zero(dim, dim),) * order)

    @classmethod
    def first_order(cls, phi1: Matrix, order: int = 1) -> "FormalIsomorphism":
        dim = phi1.rows
        return cls(order, (Matrix.identity(dim), phi1)
                   + (Matrix.zero(dim, dim),) * (order - 1))

    def inverse(self) -> "FormalIsomorphism":
        """Truncated series inverse (Neumann recursion on the tail)."""
        psi = [Matrix.identity(self.dim)]
        for s in range(1, self.order + 1):
            acc = Matrix.zero(self.dim, self.dim)
            for i in range(1, s + 1):
                acc = acc + self.phi[i] @ psi[s - i]
            psi.append(acc.scale(-1))
        return FormalIsomorphism(self.order, tuple(psi))


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def verify_deformation(algebra: LyAlgebra, op: ReynoldsOperator,
                       deformation: TruncatedDeformation) -> OrderReport:
    """Check every axiom of the deformed structure order by order.

    At each order n the report covers: antisymmetry of the coefficients, the
    four bracket compatibility identities summed over the coefficient
    splittings i + j = n, and the two weighted operator identities summed
    over three-part (plus one weighted four-part) and four-part (plus one
    five-part) splittings.  Order 0 reproduces the undeformed verifiers.
    """
    n_dim = algebra.dim
    if deformation.dim != n_dim:
        raise ShapeMismatch("deformation tensors do not match the algebra dimension")
    if op.dim != n_dim:
        raise DimMismatch("operator does not match the algebra dimension")
    if deformation.F[0] != algebra.binary or deformation.G[0] != algebra.ternary \
            or deformation.Tt[0] != op.matrix:
        raise InvalidInput("base coefficients must equal the undeformed structure")

    F, G, Tt = deformation.F, deformation.G, deformation.Tt
    w = op.weight
    N = deformation.order
    unit = algebra.basis
    t_img = [[Tt[i].apply(unit(x)) for x in range(n_dim)] for i in range(N + 1)]

    def cyc(triple):
        x, y, z = triple
        return ((x, y, z), (z, x, y), (y, z, x))

    order_reports = []
    for n in range(N + 1):
        checks = []

        def first_failure(name, tuples, residual_fn):
            for tup in tuples:
                r = residual_fn(*tup)
                if not is_zero_vector(r):
                    checks.append(Check(name, False, tup, r))
                    return
            checks.append(Check(name, True))

        first_failure(
            "antisymmetry-binary", product(range(n_dim), repeat=2),
            lambda i, j, n=n: vec_add(F[n][i][j], F[n][j][i]))
        first_failure(
            "antisymmetry-ternary", product(range(n_dim), repeat=3),
            lambda i, j, k, n=n: vec_add(G[n][i][j][k], G[n][j][i][k]))

        def cyclic_binary(x, y, z, n=n):
            acc = zero_vector(n_dim)
            for (a, b, c) in cyc((x, y, z)):
                for i in range(n + 1):
                    acc = vec_add(acc, apply_binary(F[i], F[n - i][a][b], unit(c)))
                acc = vec_add(acc, G[n][a][b][c])
            return acc

        first_failure("cyclic-binary", product(range(n_dim), repeat=3), cyclic_binary)

        def cyclic_mixed(x, y, z, a, n=n):
            acc = zero_vector(n_dim)
            for (p, q, r) in cyc((x, y, z)):
                for i in range(n + 1):
                    acc = vec_add(acc, apply_ternary(
                        G[i], F[n - i][p][q], unit(r), unit(a)))
            return acc

        first_failure("cyclic-mixed", product(range(n_dim), repeat=4), cyclic_mixed)

        def binary_ternary(a, b, x, y, n=n):
            acc = zero_vector(n_dim)
            for i in range(n + 1):
                acc = vec_add(acc, apply_ternary(G[i], unit(a), unit(b), F[n - i][x][y]))
                acc = vec_sub(acc, apply_binary(F[i], G[n - i][a][b][x], unit(y)))
                acc = vec_sub(acc, apply_binary(F[i], unit(x), G[n - i][a][b][y]))
            return acc

        first_failure("derivation-binary", product(range(n_dim), repeat=4), binary_ternary)

        def ternary_ternary(a, b, x, y, z, n=n):
            acc = zero_vector(n_dim)
            for i in range(n + 1):
                acc = vec_add(acc, apply_ternary(G[i], unit(a), unit(b), G[n - i][x][y][z]))
                acc = vec_sub(acc, apply_ternary(G[i], G[n - i][a][b][x], unit(y), unit(z)))
                acc = vec_sub(acc, apply_ternary(G[i], unit(x), G[n - i][a][b][y], unit(z)))
                acc = vec_sub(acc, apply_ternary(G[i], unit(x), unit(y), G[n - i][a][b][z]))
            return acc

        first_failure("derivation-ternary", product(range(n_dim), repeat=5), ternary_ternary)

        def operator_binary(x, y, n=n):
            acc = zero_vector(n_dim)
            for (i, j, k) in _compositions(n, 3):
                acc = vec_add(acc, apply_binary(F[i], t_img[j][x], t_img[k][y]))
                inner = vec_add(apply_binary(F[j], t_img[k][x], unit(y)),
                                apply_binary(F[j], unit(x), t_img[k][y]))
                acc = vec_sub(acc, Tt[i].apply(inner))
            for (i, j, k, l) in _compositions(n, 4):
                acc = vec_sub(acc, vec_scale(w, Tt[i].apply(
                    apply_binary(F[j], t_img[k][x], t_img[l][y]))))
            return acc

        first_failure("operator-binary", product(range(n_dim), repeat=2), operator_binary)

        def operator_ternary(x, y, z, n=n):
            acc = zero_vector(n_dim)
            for (i, j, k, l) in _compositions(n, 4):
                acc = vec_add(acc, apply_ternary(G[i], t_img[j][x], t_img[k][y], t_img[l][z]))
                inner = apply_ternary(G[j], unit(x), t_img[k][y], t_img[l][z])
                inner = vec_add(inner, apply_ternary(G[j], t_img[k][x], unit(y), t_img[l][z]))
                inner = vec_add(inner, apply_ternary(G[j], t_img[k][x], t_img[l][y], unit(z)))
                acc = vec_sub(acc, Tt[i].apply(inner))
            for (i, j, k, l, m) in _compositions(n, 5):
                acc = vec_sub(acc, vec_scale(2 * w, Tt[i].apply(
                    apply_ternary(G[j], t_img[k][x], t_img[l][y], t_img[m][z]))))
            return acc

        first_failure("operator-ternary", product(range(n_dim), repeat=3), operator_ternary)

        order_reports.append(AxiomReport(tuple(checks)))
    return OrderReport(tuple(order_reports))


def infinitesimal(deformation: TruncatedDeformation) -> RlyCochain:
    """The degree-2 cone cochain ((F_1, G_1), T_1) with adjoint coefficients."""
    if deformation.order < 1:
        raise OrderTooLow("need at least an order-1 deformation")
    n = deformation.dim
    top = cochain2_from_tensors(n, n, deformation.F[1], deformation.G[1])
    tail = cochain_from_matrix(deformation.Tt[1])
    return RlyCochain(top, tail)


def apply_equivalence(deformation: TruncatedDeformation,
                      iso: FormalIsomorphism) -> TruncatedDeformation:
    """Transport a deformation along a formal isomorphism phi:

        F' = phi o F o (phi^{-1} (x) phi^{-1}),  likewise for G,
        T' = phi o T o phi^{-1},

    expanded order by order with the truncated inverse of phi.  The identity
    isomorphism is the identity transport, and transports by phi and by
    phi.inverse() cancel up to the truncation order.
    """
    if iso.order != deformation.order:
        raise OrderMismatch("isomorphism and deformation orders differ")
    if iso.dim != deformation.dim:
        raise DimMismatch("isomorphism acts on a different space")
    n_dim = deformation.dim
    N = deformation.order
    phi_c = iso.phi
    psi_c = iso.inverse().phi
    F, G, Tt = deformation.F, deformation.G, deformation.Tt
    unit_vecs = [tuple(Fraction(1 if t == x else 0) for t in range(n_dim))
                 for x in range(n_dim)]
    psi_img = [[psi_c[c].apply(unit_vecs[x]) for x in range(n_dim)]
               for c in range(N + 1)]

    new_f = []
    new_g = []
    new_t = []
    for s in range(N + 1):
        f_s = [[zero_vector(n_dim) for _ in range(n_dim)] for _ in range(n_dim)]
        for (a, b, c, d) in _compositions(s, 4):
            for x, y in product(range(n_dim), repeat=2):
                val = apply_binary(F[b], psi_img[c][x], psi_img[d][y])
                f_s[x][y] = vec_add(f_s[x][y], phi_c[a].apply(val))
        new_f.append(tuple(tuple(row) for row in f_s))

        g_s = [[[zero_vector(n_dim) for _ in range(n_dim)] for _ in range(n_dim)]
               for _ in range(n_dim)]
        for (a, b, c, d, e) in _compositions(s, 5):
            for x, y, z in product(range(n_dim), repeat=3):
                val = apply_ternary(G[b], psi_img[c][x], psi_img[d][y], psi_img[e][z])
                g_s[x][y][z] = vec_add(g_s[x][y][z], phi_c[a].apply(val))
        new_g.append(tuple(tuple(tuple(row) for row in plane) for plane in g_s))

        t_s = Matrix.zero(n_dim, n_dim)
        for (a, b, c) in _compositions(s, 3):
            t_s = t_s + phi_c[a] @ Tt[b] @ psi_c[c]
        new_t.append(t_s)

    return TruncatedDeformation(N, tuple(new_f), tuple(new_g), tuple(new_t))


def trivialize_first_order(algebra: LyAlgebra, op: ReynoldsOperator,
                           deformation: TruncatedDeformation
                           ) -> tuple[FormalIsomorphism, TruncatedDeformation]:
    """Remove the order-1 terms of a deformation whose infinitesimal bounds.

    Solves d(phi_1) = infinitesimal in the cone complex of the adjoint
    representation (NotCoboundary when there is no solution), then
    transports along the series with coefficients (Id, +phi_1): that is the
    truncated inverse of the returned isomorphism Id - phi_1 t, which maps
    the transported deformation back to the input.  The transported order-1
    coefficients are verified to vanish.
    """
    rep = adjoint_rep(algebra, op)
    target = infinitesimal(deformation)
    pre = coboundary_preimage(algebra, op, rep, "rly", target)
    if pre is None:
        raise NotCoboundary(
            "the infinitesimal is not a coboundary; first-order trivialization "
            "is obstructed")
    phi1 = matrix_from_cochain(pre.top)
    iso_back = FormalIsomorphism.first_order(phi1.scale(-1), deformation.order)
    transported = apply_equivalence(deformation, iso_back.inverse())
    zt = Matrix.zero(algebra.dim, algebra.dim)
    if transported.F[1] != zero_binary(algebra.dim) \
            or transported.G[1] != zero_ternary(algebra.dim) \
            or transported.Tt[1] != zt:
        raise InternalInconsistency(
            "transport by the bounding cochain failed to clear the order-1 terms")
    return iso_back, transported
