"""Finite-dimensional Lie-Yamaguti algebras from structure constants.

An algebra is a pair of tensors over a basis e_0..e_{n-1}:

    binary[i][j][k]     with  [e_i, e_j]      = sum_k binary[i][j][k] e_k
    ternary[i][j][k][l] with  {e_i, e_j, e_k} = sum_l ternary[i][j][k][l] e_l

Construction enforces the two antisymmetries (binary in both slots, ternary
in its first two); the four compatibility axioms are checked on demand by
:func:`verify_ly_axioms`.  Checking on basis tuples is complete because every
axiom is multilinear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    DimMismatch,
    InvalidStructure,
    NotLeibniz,
    NotLieAlgebra,
    NotReductive,
)
from .linalg import Vector, is_zero_vector, vec_add, vec_scale, vec_sub, zero_vector
from .reporting import AxiomReport, Check

BinaryTensor = tuple  # t[i][j] is a Vector of length dim
TernaryTensor = tuple  # t[i][j][k] is a Vector of length dim


def _freeze2(data, dim: int) -> BinaryTensor:
    out = tuple(
        tuple(tuple(Fraction(x) for x in data[i][j]) for j in range(dim))
        for i in range(dim)
    )
    for i, j in product(range(dim), repeat=2):
        if len(out[i][j]) != dim:
            raise DimMismatch("binary tensor entry of wrong length")
    return out


def _freeze3(data, dim: int) -> TernaryTensor:
    out = tuple(
        tuple(
            tuple(tuple(Fraction(x) for x in data[i][j][k]) for k in range(dim))
            for j in range(dim)
        )
        for i in range(dim)
    )
    for i, j, k in product(range(dim), repeat=3):
        if len(out[i][j][k]) != dim:
            raise DimMismatch("ternary tensor entry of wrong length")
    return out


def zero_binary(dim: int) -> BinaryTensor:
    z = zero_vector(dim)
    return tuple(tuple(z for _ in range(dim)) for _ in range(dim))


def zero_ternary(dim: int) -> TernaryTensor:
    z = zero_vector(dim)
    return tuple(tuple(tuple(z for _ in range(dim)) for _ in range(dim)) for _ in range(dim))


def binary_from_sparse(dim: int, entries) -> BinaryTensor:
    """Build b[i][j][k] from {(i, j, k): coefficient}.

    Unspecified entries are zero.  The antisymmetric image of every entry is
    filled in automatically; supplying both (i,j,k) and (j,i,k) with values
    that are not negatives of each other is rejected.
    """
    cells: dict[tuple[int, int, int], Fraction] = {}
    for (i, j, k), c in dict(entries).items():
        c = Fraction(c)
        for idx in ((i, j, k), (j, i, k)):
            if not all(0 <= t < dim for t in idx):
                raise DimMismatch(f"index {idx} out of range for dim {dim}")
        for idx, val in (((i, j, k), c), ((j, i, k), -c)):
            if idx in cells and cells[idx] != val:
                raise InvalidStructure(
                    f"inconsistent antisymmetric pair at {idx}: "
                    f"{cells[idx]} vs {val}")
            cells[idx] = val
    return tuple(
        tuple(
            tuple(cells.get((i, j, k), Fraction(0)) for k in range(dim))
            for j in range(dim))
        for i in range(dim))


def ternary_from_sparse(dim: int, entries) -> TernaryTensor:
    """Build t[i][j][k][l] from {(i, j, k, l): coefficient}; antisymmetric in
    the first two indices, same consistency rule as :func:`binary_from_sparse`."""
    cells: dict[tuple[int, int, int, int], Fraction] = {}
    for (i, j, k, l), c in dict(entries).items():
        c = Fraction(c)
        for idx in ((i, j, k, l), (j, i, k, l)):
            if not all(0 <= t < dim for t in idx):
                raise DimMismatch(f"index {idx} out of range for dim {dim}")
        for idx, val in (((i, j, k, l), c), ((j, i, k, l), -c)):
            if idx in cells and cells[idx] != val:
                raise InvalidStructure(
                    f"inconsistent antisymmetric pair at {idx}: "
                    f"{cells[idx]} vs {val}")
            cells[idx] = val
    return tuple(
        tuple(
            tuple(
                tuple(cells.get((i, j, k, l), Fraction(0)) for l in range(dim))
                for k in range(dim))
            for j in range(dim))
        for i in range(dim))


def apply_binary(tensor: BinaryTensor, x, y) -> Vector:
    """Bilinear extension of a binary structure tensor."""
    dim = len(tensor)
    out = list(zero_vector(dim))
    for i, xi in enumerate(x):
        if not xi:
            continue
        ti = tensor[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, v in enumerate(ti[j]):
                if v:
                    out[k] += c * v
    return tuple(out)


def apply_ternary(tensor: TernaryTensor, x, y, z) -> Vector:
    """Trilinear extension of a ternary structure tensor."""
    dim = len(tensor)
    out = list(zero_vector(dim))
    for i, xi in enumerate(x):
        if not xi:
            continue
        ti = tensor[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            tij = ti[j]
            cij = xi * yj
            for k, zk in enumerate(z):
                if not zk:
                    continue
                c = cij * zk
                for l, v in enumerate(tij[k]):
                    if v:
                        out[l] += c * v
    return tuple(out)


@dataclass(frozen=True)
class LyAlgebra:
    """Structure constants of a Lie-Yamaguti algebra plus optional labels."""

    dim: int
    binary: BinaryTensor
    ternary: TernaryTensor
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        n = self.dim
        object.__setattr__(self, "binary", _freeze2(self.binary, n))
        object.__setattr__(self, "ternary", _freeze3(self.ternary, n))
        if self.labels is not None and len(self.labels) != n:
            raise DimMismatch("label count != dim")
        for i, j in product(range(n), repeat=2):
            if any(a != -b for a, b in zip(self.binary[i][j], self.binary[j][i])):
                raise InvalidStructure(f"binary constants not antisymmetric at ({i},{j})")
        for i, j, k in product(range(n), repeat=3):
            if any(a != -b for a, b in zip(self.ternary[i][j][k], self.ternary[j][i][k])):
                raise InvalidStructure(
                    f"ternary constants not antisymmetric in first two slots at ({i},{j},{k})")

    def basis(self, i: int) -> Vector:
        return tuple(Fraction(1 if t == i else 0) for t in range(self.dim))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"e{i + 1}"


def bracket2(algebra: LyAlgebra, x, y) -> Vector:
    """[x, y] by bilinear extension of the structure constants."""
    if len(x) != algebra.dim or len(y) != algebra.dim:
        raise DimMismatch("element coordinates do not match algebra dim")
    return apply_binary(algebra.binary, x, y)


def bracket3(algebra: LyAlgebra, x, y, z) -> Vector:
    """{x, y, z} by trilinear extension of the structure constants."""
    if any(len(v) != algebra.dim for v in (x, y, z)):
        raise DimMismatch("element coordinates do not match algebra dim")
    return apply_ternary(algebra.ternary, x, y, z)


def _cyclic(triple):
    x, y, z = triple
    return ((x, y, z), (z, x, y), (y, z, x))


def verify_ly_axioms(algebra: LyAlgebra) -> AxiomReport:
    """Evaluate the six defining axioms on all basis tuples.

    The first two are antisymmetries (re-checked here even though
    construction enforces them); the remaining four are the compatibility
    identities between the two brackets.  Each check reports at most one
    witness: the lexicographically first failing tuple.
    """
    n = algebra.dim
    b, t = algebra.binary, algebra.ternary
    checks = []

    def first_failure(name, tuples, residual_fn):
        for tup in tuples:
            r = residual_fn(*tup)
            if not is_zero_vector(r):
                checks.append(Check(name, False, tup, r))
                return
        checks.append(Check(name, True))

    first_failure(
        "LY1", product(range(n), repeat=2),
        lambda i, j: vec_add(b[i][j], b[j][i]))
    first_failure(
        "LY2", product(range(n), repeat=3),
        lambda i, j, k: vec_add(t[i][j][k], t[j][i][k]))

    def ly3(i, j, k):
        acc = zero_vector(n)
        for (x, y, z) in _cyclic((i, j, k)):
            acc = vec_add(acc, apply_binary(b, b[x][y], algebra.basis(z)))
            acc = vec_add(acc, t[x][y][z])
        return acc

    first_failure("LY3", product(range(n), repeat=3), ly3)

    def ly4(i, j, k, a):
        acc = zero_vector(n)
        for (x, y, z) in _cyclic((i, j, k)):
            acc = vec_add(acc, apply_ternary(
                t, b[x][y], algebra.basis(z), algebra.basis(a)))
        return acc

    first_failure("LY4", product(range(n), repeat=4), ly4)

    def ly5(a, c, i, j):
        lhs = apply_ternary(t, algebra.basis(a), algebra.basis(c), b[i][j])
        rhs = vec_add(apply_binary(b, t[a][c][i], algebra.basis(j)),
                      apply_binary(b, algebra.basis(i), t[a][c][j]))
        return vec_add(lhs, vec_scale(-1, rhs))

    first_failure("LY5", product(range(n), repeat=4), ly5)

    def ly6(a, c, i, j, k):
        lhs = apply_ternary(t, algebra.basis(a), algebra.basis(c), t[i][j][k])
        rhs = apply_ternary(t, t[a][c][i], algebra.basis(j), algebra.basis(k))
        rhs = vec_add(rhs, apply_ternary(t, algebra.basis(i), t[a][c][j], algebra.basis(k)))
        rhs = vec_add(rhs, apply_ternary(t, algebra.basis(i), algebra.basis(j), t[a][c][k]))
        return vec_add(lhs, vec_scale(-1, rhs))

    first_failure("LY6", product(range(n), repeat=5), ly6)

    return AxiomReport(tuple(checks))


def _check_jacobi(binary: BinaryTensor, dim: int):
    for i, j in product(range(dim), repeat=2):
        if any(a != -b for a, b in zip(binary[i][j], binary[j][i])):
            raise NotLieAlgebra(f"bracket not antisymmetric at ({i},{j})")
    unit = lambda i: tuple(Fraction(1 if t == i else 0) for t in range(dim))
    for i, j, k in product(range(dim), repeat=3):
        acc = zero_vector(dim)
        for (x, y, z) in _cyclic((i, j, k)):
            acc = vec_add(acc, apply_binary(binary, binary[x][y], unit(z)))
        if not is_zero_vector(acc):
            raise NotLieAlgebra(f"Jacobi fails at basis triple ({i},{j},{k}): {acc}")


def from_lie_algebra(binary, labels=None) -> LyAlgebra:
    """Lie algebra as a Lie-Yamaguti algebra: {x,y,z} = [[x,y],z].

    The binary constants must satisfy antisymmetry and Jacobi (verified on
    basis triples); otherwise NotLieAlgebra is raised with the witness.
    """
    dim = len(binary)
    binary = _freeze2(binary, dim)
    _check_jacobi(binary, dim)
    unit = lambda i: tuple(Fraction(1 if t == i else 0) for t in range(dim))
    ternary = tuple(
        tuple(
            tuple(apply_binary(binary, binary[i][j], unit(k)) for k in range(dim))
            for j in range(dim))
        for i in range(dim))
    return LyAlgebra(dim, binary, ternary, labels)


def from_leibniz(star, labels=None) -> LyAlgebra:
    """Left Leibniz algebra as a Lie-Yamaguti algebra.

    Brackets: [x,y] = x*y - y*x and {x,y,z} = -(x*y)*z.  The left Leibniz
    identity x*(y*z) = (x*y)*z + y*(x*z) is verified on basis triples first;
    it is what makes the ternary bracket antisymmetric in its first slots.
    """
    dim = len(star)
    star = _freeze2(star, dim)
    unit = lambda i: tuple(Fraction(1 if t == i else 0) for t in range(dim))
    for i, j, k in product(range(dim), repeat=3):
        lhs = apply_binary(star, unit(i), star[j][k])
        rhs = vec_add(apply_binary(star, star[i][j], unit(k)),
                      apply_binary(star, unit(j), star[i][k]))
        if lhs != rhs:
            raise NotLeibniz(
                f"left Leibniz identity fails at basis triple ({i},{j},{k})")
    binary = tuple(
        tuple(vec_sub(star[i][j], star[j][i]) for j in range(dim))
        for i in range(dim))
    ternary = tuple(
        tuple(
            tuple(vec_scale(-1, apply_binary(star, star[i][j], unit(k)))
                  for k in range(dim))
            for j in range(dim))
        for i in range(dim))
    return LyAlgebra(dim, binary, ternary, labels)


def from_reductive_pair(lie_binary, n_indices, m_indices, labels=None) -> LyAlgebra:
    """Lie-Yamaguti algebra on the complement M of a reductive splitting.

    Requires lie_binary to be a Lie algebra split as L = N (+) M with
    [N,N] in N and [N,M] in M (both verified on basis pairs).  Brackets on M:
    [x,y]_M = pi_M([x,y]) and {x,y,z}_M = [pi_N([x,y]), z].
    """
    dim = len(lie_binary)
    lie_binary = _freeze2(lie_binary, dim)
    _check_jacobi(lie_binary, dim)
    n_indices = list(n_indices)
    m_indices = list(m_indices)
    if sorted(n_indices + m_indices) != list(range(dim)):
        raise DimMismatch("N and M indices must partition the basis")
    n_set = set(n_indices)
    for i in n_indices:
        for j in n_indices:
            if any(lie_binary[i][j][k] != 0 for k in range(dim) if k not in n_set):
                raise NotReductive(f"[N,N] not in N at basis pair ({i},{j})")
        for j in m_indices:
            if any(lie_binary[i][j][k] != 0 for k in range(dim) if k in n_set):
                raise NotReductive(f"[N,M] not in M at basis pair ({i},{j})")

    m = len(m_indices)
    unit = lambda i: tuple(Fraction(1 if t == i else 0) for t in range(dim))

    def pi_m(v):
        return tuple(v[i] for i in m_indices)

    def pi_n_full(v):
        return tuple(v[i] if i in n_set else Fraction(0) for i in range(dim))

    binary = tuple(
        tuple(pi_m(lie_binary[m_indices[a]][m_indices[b]]) for b in range(m))
        for a in range(m))
    ternary = tuple(
        tuple(
            tuple(pi_m(apply_binary(
                lie_binary,
                pi_n_full(lie_binary[m_indices[a]][m_indices[b]]),
                unit(m_indices[c])))
                for c in range(m))
            for b in range(m))
        for a in range(m))
    if labels is None and m:
        labels = tuple(f"e{i + 1}" for i in m_indices)
    return LyAlgebra(m, binary, ternary, labels)


def abelian(dim: int, labels=None) -> LyAlgebra:
    """Both brackets identically zero."""
    return LyAlgebra(dim, zero_binary(dim), zero_ternary(dim), labels)


def two_dim_example(labels=("e1", "e2")) -> LyAlgebra:
    """The 2-dimensional algebra with [e1,e2] = e1 and {e1,e2,e2} = e1.

    The smallest Lie-Yamaguti algebra with both brackets nonzero; used as
    the canonical fixture throughout the tests and sample files.
    """
    binary = binary_from_sparse(2, {(0, 1, 0): 1})
    ternary = ternary_from_sparse(2, {(0, 1, 1, 0): 1})
    return LyAlgebra(2, binary, ternary, tuple(labels))
