"""Shared fixtures: canonical small algebras, valid operator families, and a
seeded sampler of verified (algebra, operator, representation) triples."""

from fractions import Fraction

import pytest

from lyreynolds import (
    LyAlgebra,
    Matrix,
    ReynoldsOperator,
    abelian,
    adjoint_rep,
    from_leibniz,
    from_lie_algebra,
    two_dim_example,
    zero_rep,
)
from lyreynolds.algebra import binary_from_sparse


@pytest.fixture(scope="session")
def ly2() -> LyAlgebra:
    return two_dim_example()


@pytest.fixture(scope="session")
def tri_t() -> ReynoldsOperator:
    # upper-triangular family member (k1, k2, k) = (2, 3, 5), weight -1/k
    return ReynoldsOperator(Matrix.from_rows([[2, 3], [0, 5]]), Fraction(-1, 5))


@pytest.fixture(scope="session")
def sl2() -> LyAlgebra:
    # basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
    binary = binary_from_sparse(3, {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1})
    return from_lie_algebra(binary, labels=("h", "e", "f"))


@pytest.fixture(scope="session")
def leibniz3() -> LyAlgebra:
    # left Leibniz star product e3 * e1 = e1: nonabelian binary, zero ternary
    return _leibniz3()


def identity_op(dim: int) -> ReynoldsOperator:
    return ReynoldsOperator(Matrix.identity(dim), Fraction(-1))


def rand_fraction(rng, span: int = 4, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-span, span), rng.randint(1, span))
        if value or not nonzero:
            return value


def rand_matrix(rng, rows: int, cols: int, span: int = 3) -> Matrix:
    return Matrix.from_rows(
        [[rand_fraction(rng, span) for _ in range(cols)] for _ in range(rows)], cols)


def random_valid_triples(rng, count: int):
    """Verified (algebra, operator, representation-with-module-op) triples of
    dimension at most 3, drawn from parametrized families that are valid by
    construction (each family's validity is itself covered by the tests)."""
    triples = []
    while len(triples) < count:
        family = rng.randrange(5)
        if family == 0:
            # canonical 2-dim algebra with a random member of the
            # upper-triangular operator family, weight -1/k
            algebra = two_dim_example()
            k1 = rand_fraction(rng, nonzero=True)
            k2 = rand_fraction(rng)
            k = rand_fraction(rng, nonzero=True)
            op = ReynoldsOperator(Matrix.from_rows([[k1, k2], [0, k]]), -1 / k)
        elif family == 1:
            # scalar operators c Id of weight -1/c on any algebra
            algebra = rng.choice([two_dim_example(), _sl2(), _leibniz3()])
            c = rand_fraction(rng, nonzero=True)
            op = ReynoldsOperator(Matrix.identity(algebra.dim).scale(c), -1 / c)
        elif family == 2:
            # abelian algebras admit any operator at any weight
            algebra = abelian(rng.randint(1, 3))
            op = ReynoldsOperator(rand_matrix(rng, algebra.dim, algebra.dim),
                                  rand_fraction(rng))
        elif family == 3:
            # random 2-dim Lie algebra [e1,e2] = a e1 + b e2 (Jacobi is free)
            a, b = rand_fraction(rng), rand_fraction(rng)
            algebra = from_lie_algebra(
                binary_from_sparse(2, {(0, 1, 0): a, (0, 1, 1): b}))
            op = identity_op(2)
        else:
            # the zero operator is Reynolds of any weight on any algebra
            algebra = rng.choice([two_dim_example(), _sl2()])
            op = ReynoldsOperator(Matrix.zero(algebra.dim, algebra.dim),
                                  rand_fraction(rng))
        rep = adjoint_rep(algebra, op)
        triples.append((algebra, op, rep))
    return triples


def _sl2() -> LyAlgebra:
    binary = binary_from_sparse(3, {(0, 1, 1): 2, (0, 2, 2): -2, (1, 2, 0): 1})
    return from_lie_algebra(binary, labels=("h", "e", "f"))


def _leibniz3() -> LyAlgebra:
    data = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    data[2][0][0] = Fraction(1)
    return from_leibniz(data)


def zero_rep_with_op(algebra_dim: int, module_dim: int, rng) -> "object":
    return zero_rep(algebra_dim, module_dim, rand_matrix(rng, module_dim, module_dim))
