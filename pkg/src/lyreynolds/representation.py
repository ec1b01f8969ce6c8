"""Representations (V; rho, theta) of Lie-Yamaguti algebras and their
Reynolds-compatible module operators.

rho maps algebra elements to operators on V, theta maps pairs to operators,
and the derived pair map is never stored: it is always recomputed as

    D(x,y) = theta(y,x) - theta(x,y) - rho([x,y]) + rho(x)rho(y) - rho(y)rho(x)

so there is no consistency obligation between a stored D and the rest.
The module operator carries no weight of its own; verifiers take the weight
from the algebra operator they are handed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import product

from .algebra import LyAlgebra
from .errors import (
    DimMismatch,
    IndexOutOfRange,
    InternalInconsistency,
    InvalidInput,
    MissingModuleOp,
    MixedAlgebras,
)
from .linalg import Matrix
from .reporting import AxiomReport, Check
from .reynolds import ReynoldsOperator, descendant_algebra


@dataclass(frozen=True)
class Representation:
    """rho[i] is the matrix of rho(e_i); theta[i][j] of theta(e_i, e_j)."""

    algebra_dim: int
    module_dim: int
    rho: tuple[Matrix, ...]
    theta: tuple[tuple[Matrix, ...], ...]
    module_op: Matrix | None = None

    def __post_init__(self):
        n, m = self.algebra_dim, self.module_dim
        if len(self.rho) != n or len(self.theta) != n:
            raise DimMismatch("need one rho matrix and one theta row per basis vector")
        for mat in self.rho:
            if (mat.rows, mat.cols) != (m, m):
                raise DimMismatch("rho matrices must be module_dim x module_dim")
        for row in self.theta:
            if len(row) != n:
                raise DimMismatch("theta must be an n x n table of matrices")
            for mat in row:
                if (mat.rows, mat.cols) != (m, m):
                    raise DimMismatch("theta matrices must be module_dim x module_dim")
        if self.module_op is not None and \
                (self.module_op.rows, self.module_op.cols) != (m, m):
            raise DimMismatch("module operator must be module_dim x module_dim")

    def rho_at(self, x) -> Matrix:
        """rho of a general element, by linearity."""
        acc = Matrix.zero(self.module_dim, self.module_dim)
        for i, c in enumerate(x):
            if c:
                acc = acc + self.rho[i].scale(c)
        return acc

    def theta_at(self, x, y) -> Matrix:
        """theta of a general pair, by bilinearity."""
        acc = Matrix.zero(self.module_dim, self.module_dim)
        for i, ci in enumerate(x):
            if not ci:
                continue
            for j, cj in enumerate(y):
                if cj:
                    acc = acc + self.theta[i][j].scale(ci * cj)
        return acc


def zero_rep(algebra_dim: int, module_dim: int, module_op: Matrix | None = None) -> Representation:
    z = Matrix.zero(module_dim, module_dim)
    return Representation(
        algebra_dim, module_dim,
        (z,) * algebra_dim,
        tuple((z,) * algebra_dim for _ in range(algebra_dim)),
        module_op)


def d_map(algebra: LyAlgebra, rep: Representation, i: int, j: int) -> Matrix:
    """Matrix of the derived pair map D(e_i, e_j)."""
    n = algebra.dim
    if not (0 <= i < n and 0 <= j < n):
        raise IndexOutOfRange(f"basis indices ({i},{j}) out of range for dim {n}")
    if rep.algebra_dim != n:
        raise DimMismatch("representation is over a different algebra dimension")
    rho_bracket = Matrix.zero(rep.module_dim, rep.module_dim)
    for k, c in enumerate(algebra.binary[i][j]):
        if c:
            rho_bracket = rho_bracket + rep.rho[k].scale(c)
    return (rep.theta[j][i] - rep.theta[i][j] - rho_bracket
            + rep.rho[i] @ rep.rho[j] - rep.rho[j] @ rep.rho[i])


@cache
def d_table(algebra: LyAlgebra, rep: Representation):
    """All D(e_i, e_j) matrices, computed once per (algebra, rep)."""
    n = algebra.dim
    return tuple(tuple(d_map(algebra, rep, i, j) for j in range(n)) for i in range(n))


def _d_at(algebra: LyAlgebra, rep: Representation, x, y) -> Matrix:
    table = d_table(algebra, rep)
    acc = Matrix.zero(rep.module_dim, rep.module_dim)
    for i, ci in enumerate(x):
        if not ci:
            continue
        for j, cj in enumerate(y):
            if cj:
                acc = acc + table[i][j].scale(ci * cj)
    return acc


def verify_rep(algebra: LyAlgebra, rep: Representation) -> AxiomReport:
    """Check the five representation identities on basis tuples.

    Module arguments need no loop of their own: each identity is an equality
    of operators on V, so comparing matrices covers every module element.
    When all five pass, the two derived identities (the cyclic D identity
    and the D-D compatibility) are checked as well; those must follow, so a
    failure raises InternalInconsistency instead of being reported as data.
    """
    n = algebra.dim
    if rep.algebra_dim != n:
        raise DimMismatch("representation is over a different algebra dimension")
    rho, theta = rep.rho, rep.theta
    t = algebra.ternary
    dd = d_table(algebra, rep)
    zero = Matrix.zero(rep.module_dim, rep.module_dim)

    def theta_lin(vec, a):
        acc = zero
        for k, c in enumerate(vec):
            if c:
                acc = acc + theta[k][a].scale(c)
        return acc

    def theta_lin2(x, vec):
        acc = zero
        for k, c in enumerate(vec):
            if c:
                acc = acc + theta[x][k].scale(c)
        return acc

    def rho_lin(vec):
        acc = zero
        for k, c in enumerate(vec):
            if c:
                acc = acc + rho[k].scale(c)
        return acc

    def theta_pair_lin(vec, y):
        acc = zero
        for k, c in enumerate(vec):
            if c:
                acc = acc + theta[k][y].scale(c)
        return acc

    def d_lin(vec, y):
        acc = zero
        for k, c in enumerate(vec):
            if c:
                acc = acc + dd[k][y].scale(c)
        return acc

    checks = []

    def first_failure(name, tuples, residual_fn):
        for tup in tuples:
            r = residual_fn(*tup)
            if not r.is_zero():
                checks.append(Check(name, False, tup, r))
                return False
        checks.append(Check(name, True))
        return True

    ok = True
    ok &= first_failure(
        "theta-of-bracket", product(range(n), repeat=3),
        lambda x, y, a: theta_lin(algebra.binary[x][y], a)
        - (theta[x][a] @ rho[y] - theta[y][a] @ rho[x]))
    ok &= first_failure(
        "d-rho-compat", product(range(n), repeat=3),
        lambda a, b, x: dd[a][b] @ rho[x]
        - (rho[x] @ dd[a][b] + rho_lin(t[a][b][x])))
    ok &= first_failure(
        "rho-of-bracket", product(range(n), repeat=3),
        lambda x, a, b: theta_lin2(x, algebra.binary[a][b])
        - (rho[a] @ theta[x][b] - rho[b] @ theta[x][a]))
    ok &= first_failure(
        "d-theta-compat", product(range(n), repeat=4),
        lambda a, b, x, y: dd[a][b] @ theta[x][y]
        - (theta[x][y] @ dd[a][b] + theta_pair_lin(t[a][b][x], y)
           + theta_lin2(x, t[a][b][y])))
    ok &= first_failure(
        "theta-of-ternary", product(range(n), repeat=4),
        lambda a, x, y, z: theta_lin2(a, t[x][y][z])
        - (theta[y][z] @ theta[a][x] - theta[x][z] @ theta[a][y]
           + dd[x][y] @ theta[a][z]))

    if ok:
        for x, y, z in product(range(n), repeat=3):
            r = (d_lin(algebra.binary[x][y], z) + d_lin(algebra.binary[y][z], x)
                 + d_lin(algebra.binary[z][x], y))
            if not r.is_zero():
                raise InternalInconsistency(
                    f"derived cyclic D identity fails at ({x},{y},{z}) although "
                    "the representation identities hold")
        for a, b, x, y in product(range(n), repeat=4):
            r = (dd[a][b] @ dd[x][y]
                 - (dd[x][y] @ dd[a][b] + d_lin(t[a][b][x], y)
                    + _d_at(algebra, rep, algebra.basis(x), t[a][b][y])))
            if not r.is_zero():
                raise InternalInconsistency(
                    f"derived D-D compatibility fails at ({a},{b},{x},{y}) although "
                    "the representation identities hold")
        checks.append(Check("d-cyclic (derived)", True))
        checks.append(Check("d-d-compat (derived)", True))

    return AxiomReport(tuple(checks))


def verify_reynolds_rep(algebra: LyAlgebra, op: ReynoldsOperator,
                        rep: Representation) -> AxiomReport:
    """Check the module-operator identities against the algebra operator.

    Both sides are matrices acting on V, checked on basis pairs/triples of
    the algebra; the weight is taken from ``op``.  The derived identity for
    the pair map D must follow whenever the two primary ones hold; if it
    does not, InternalInconsistency is raised.
    """
    if rep.module_op is None:
        raise MissingModuleOp("representation has no module operator")
    if op.dim != algebra.dim or rep.algebra_dim != algebra.dim:
        raise DimMismatch("dimensions do not line up")
    n = algebra.dim
    w = op.weight
    tv = rep.module_op
    t_img = [op.matrix.apply(algebra.basis(i)) for i in range(n)]

    checks = []
    witness = residual = None
    for x in range(n):
        rho_tx = rep.rho_at(t_img[x])
        r = rho_tx @ tv - tv @ (rho_tx + rep.rho[x] @ tv + (rho_tx @ tv).scale(w))
        if not r.is_zero():
            witness, residual = (x,), r
            break
    checks.append(Check("rho-module-op", witness is None, witness, residual))
    ok = witness is None

    witness = residual = None
    for x, y in product(range(n), repeat=2):
        th_txty = rep.theta_at(t_img[x], t_img[y])
        th_tx_y = rep.theta_at(t_img[x], algebra.basis(y))
        th_x_ty = rep.theta_at(algebra.basis(x), t_img[y])
        r = th_txty @ tv - tv @ (th_txty + th_tx_y @ tv + th_x_ty @ tv
                                 + (th_txty @ tv).scale(2 * w))
        if not r.is_zero():
            witness, residual = (x, y), r
            break
    checks.append(Check("theta-module-op", witness is None, witness, residual))
    ok = ok and witness is None

    if ok:
        for x, y in product(range(n), repeat=2):
            d_txty = _d_at(algebra, rep, t_img[x], t_img[y])
            d_tx_y = _d_at(algebra, rep, t_img[x], algebra.basis(y))
            d_x_ty = _d_at(algebra, rep, algebra.basis(x), t_img[y])
            r = d_txty @ tv - tv @ (d_txty + d_tx_y @ tv + d_x_ty @ tv
                                    + (d_txty @ tv).scale(2 * w))
            if not r.is_zero():
                raise InternalInconsistency(
                    f"derived D module-op identity fails at ({x},{y}) although the "
                    "rho and theta module-op identities hold")
        checks.append(Check("d-module-op (derived)", True))

    return AxiomReport(tuple(checks))


@cache
def _require_valid_rep(algebra: LyAlgebra, rep: Representation) -> None:
    report = verify_rep(algebra, rep)
    if not report.ok:
        raise InvalidInput("representation fails verification:\n" + report.describe())


@cache
def _require_reynolds_rep(algebra: LyAlgebra, op: ReynoldsOperator,
                          rep: Representation) -> None:
    _require_valid_rep(algebra, rep)
    report = verify_reynolds_rep(algebra, op, rep)
    if not report.ok:
        raise InvalidInput(
            "module operator fails verification:\n" + report.describe())


def adjoint_rep(algebra: LyAlgebra, op: ReynoldsOperator | None = None) -> Representation:
    """The algebra acting on itself: rho(x) z = [x,z], theta(x,y) z = {z,x,y}.

    With these choices the derived pair map satisfies D(x,y) z = {x,y,z}.
    When an operator is supplied its matrix becomes the module operator.
    """
    n = algebra.dim
    rho = tuple(
        Matrix.from_rows(
            [[algebra.binary[i][j][k] for j in range(n)] for k in range(n)], n)
        for i in range(n))
    theta = tuple(
        tuple(
            Matrix.from_rows(
                [[algebra.ternary[k][i][j][l] for k in range(n)] for l in range(n)], n)
            for j in range(n))
        for i in range(n))
    module_op = op.matrix if op is not None else None
    return Representation(n, n, rho, theta, module_op)


@cache
def induced_rep(algebra: LyAlgebra, op: ReynoldsOperator,
                rep: Representation) -> Representation:
    """The representation of the descendant algebra carried by the same V:

        rho_T(x)    = rho(Tx)     - T_V (w rho(Tx) + rho(x))
        theta_T(x,y)= theta(Tx,Ty)- T_V (2w theta(Tx,Ty) + theta(Tx,y) + theta(x,Ty))

    The output keeps the module operator and is re-validated against the
    descendant algebra; a failure there is a bug, not data.
    """
    _require_reynolds_rep(algebra, op, rep)
    n = algebra.dim
    w = op.weight
    tv = rep.module_op
    t_img = [op.matrix.apply(algebra.basis(i)) for i in range(n)]

    rho_t = []
    for x in range(n):
        rho_tx = rep.rho_at(t_img[x])
        rho_t.append(rho_tx - tv @ (rho_tx.scale(w) + rep.rho[x]))
    theta_t = []
    for x in range(n):
        row = []
        for y in range(n):
            th_txty = rep.theta_at(t_img[x], t_img[y])
            th_tx_y = rep.theta_at(t_img[x], algebra.basis(y))
            th_x_ty = rep.theta_at(algebra.basis(x), t_img[y])
            row.append(th_txty - tv @ (th_txty.scale(2 * w) + th_tx_y + th_x_ty))
        theta_t.append(tuple(row))

    out = Representation(n, rep.module_dim, tuple(rho_t), tuple(theta_t), tv)
    descendant = descendant_algebra(algebra, op)
    base = verify_rep(descendant, out)
    if not base.ok:
        raise InternalInconsistency(
            "induced maps fail the representation identities over the "
            "descendant algebra:\n" + base.describe())
    again = verify_reynolds_rep(descendant, op, out)
    if not again.ok:
        raise InternalInconsistency(
            "induced representation loses module-operator compatibility:\n"
            + again.describe())
    return out


def semidirect_product(algebra: LyAlgebra, op: ReynoldsOperator,
                       rep: Representation) -> tuple[LyAlgebra, ReynoldsOperator]:
    """Algebra structure on L (+) V with V an abelian ideal:

        [x+u, y+v]        = [x,y] + rho(x)v - rho(y)u
        {x+u, y+v, z+w}   = {x,y,z} + D(x,y)w - theta(x,z)v + theta(y,z)u

    and block-diagonal operator T (+) T_V of the same weight.  The output is
    re-validated (axioms and Reynolds identities) before being returned.
    """
    _require_reynolds_rep(algebra, op, rep)
    n, m = algebra.dim, rep.module_dim
    total = n + m
    dd = d_table(algebra, rep)
    zl = (Fraction(0),) * n
    zv = (Fraction(0),) * m

    def pad_l(vec):
        return tuple(vec) + zv

    def pad_v(vec):
        return zl + tuple(vec)

    binary = [[None] * total for _ in range(total)]
    for i in range(total):
        for j in range(total):
            if i < n and j < n:
                binary[i][j] = pad_l(algebra.binary[i][j])
            elif i < n and j >= n:
                binary[i][j] = pad_v(rep.rho[i].column(j - n))
            elif i >= n and j < n:
                binary[i][j] = pad_v(tuple(-c for c in rep.rho[j].column(i - n)))
            else:
                binary[i][j] = zl + zv

    ternary = [[[None] * total for _ in range(total)] for _ in range(total)]
    for i in range(total):
        for j in range(total):
            for k in range(total):
                li, lj, lk = i < n, j < n, k < n
                if li and lj and lk:
                    ternary[i][j][k] = pad_l(algebra.ternary[i][j][k])
                elif li and lj and not lk:
                    ternary[i][j][k] = pad_v(dd[i][j].column(k - n))
                elif li and not lj and lk:
                    ternary[i][j][k] = pad_v(tuple(-c for c in rep.theta[i][k].column(j - n)))
                elif not li and lj and lk:
                    ternary[i][j][k] = pad_v(rep.theta[j][k].column(i - n))
                else:
                    ternary[i][j][k] = zl + zv

    labels = None
    if algebra.labels:
        labels = tuple(algebra.labels) + tuple(f"v{a + 1}" for a in range(m))
    total_algebra = LyAlgebra(total, tuple(map(tuple, binary)),
                              tuple(tuple(map(tuple, row)) for row in ternary), labels)

    block = [[Fraction(0)] * total for _ in range(total)]
    for i in range(n):
        for j in range(n):
            block[i][j] = op.matrix[i, j]
    for a in range(m):
        for b in range(m):
            block[n + a][n + b] = rep.module_op[a, b]
    total_op = ReynoldsOperator(Matrix.from_rows(block, total), op.weight)

    from .algebra import verify_ly_axioms
    from .reynolds import verify_reynolds

    axioms = verify_ly_axioms(total_algebra)
    if not axioms.ok:
        raise InternalInconsistency(
            "semidirect product fails the Lie-Yamaguti axioms:\n" + axioms.describe())
    again = verify_reynolds(total_algebra, total_op)
    if not again.ok:
        raise InternalInconsistency(
            "semidirect operator fails the Reynolds identities:\n" + again.describe())
    return total_algebra, total_op


def direct_sum_rep(reps) -> Representation:
    """Block-diagonal sum of representations over one algebra and operator."""
    reps = list(reps)
    if not reps:
        raise InvalidInput("need at least one representation")
    n = reps[0].algebra_dim
    if any(r.algebra_dim != n for r in reps):
        raise MixedAlgebras("representations over different algebra dimensions")
    has_op = [r.module_op is not None for r in reps]
    if any(has_op) and not all(has_op):
        raise MixedAlgebras("cannot mix representations with and without module operators")
    m = sum(r.module_dim for r in reps)

    def block_diag(mats):
        rows = []
        offset = 0
        for mat in mats:
            for i in range(mat.rows):
                row = [0] * m
                for j in range(mat.cols):
                    row[offset + j] = mat[i, j]
                rows.append(row)
            offset += mat.cols
        return Matrix.from_rows(rows, m)

    rho = tuple(block_diag([r.rho[i] for r in reps]) for i in range(n))
    theta = tuple(
        tuple(block_diag([r.theta[i][j] for r in reps]) for j in range(n))
        for i in range(n))
    module_op = block_diag([r.module_op for r in reps]) if all(has_op) else None
    return Representation(n, m, rho, theta, module_op)
