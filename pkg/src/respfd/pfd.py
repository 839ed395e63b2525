"""Partial-fraction decomposition of the resolvent (sI - A)^{-1}.

Two independent algorithms compute the same family of matrix coefficients
B_ij with

    (sI - A)^{-1} = sum_i sum_{j=1..r_i} B_ij / (s - lambda_i)^j

and are cross-checked against each other in the test suite:

  pfd_residue       -- local Taylor expansion of adj(sI-A)/q_i(s) around each
                       eigenvalue (Taylor shift + truncated series division),
  pfd_undetermined  -- undetermined matrix coefficients: evaluate the
                       polynomial identity at n rational sample points and
                       solve the resulting exact linear system.

Real mode keeps everything rational: each irreducible quadratic factor
(s+a)^2 + d contributes a term ((s+a) P + Q) / ((s+a)^2 + d), where Q folds
the sqrt(d) scale so that P and Q are rational matrices.

verify_pfd recomputes the structural identities of the decomposition
(projectors, chain recurrences, annihilation, reconstruction) from scratch
and reports them individually.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EvalAtPole
from .linalg import Matrix, PolyMatrix, rank, solve_many
from .polynomials import FactoredCharPoly, Poly, series_div
from .scalars import GaussianRational, Scalar, scalar_key


@dataclass(frozen=True)
class EigenvalueTerm:
    """All coefficients attached to one eigenvalue: B_1 .. B_r."""

    eigenvalue: Scalar
    multiplicity: int
    coefficients: tuple  # Matrix, index j-1

    def coefficient(self, j: int) -> Matrix:
        """B_j for 1 <= j <= multiplicity."""
        return self.coefficients[j - 1]


@dataclass(frozen=True)
class QuadraticTerm:
    """Term ((s+a) P + Q) / ((s+a)^2 + d) for one irreducible quadratic."""

    a: Fraction
    d: Fraction
    p_matrix: Matrix
    q_matrix: Matrix


@dataclass(frozen=True)
class ResolventPFD:
    """Complete complex-mode decomposition, eigenvalues sorted by (re, im)."""

    matrix: Matrix
    terms: tuple  # EigenvalueTerm, ...

    @property
    def size(self) -> int:
        return self.matrix.nrows

    def term_for(self, eigenvalue: Scalar) -> EigenvalueTerm:
        for term in self.terms:
            if term.eigenvalue == eigenvalue:
                return term
        raise KeyError(f"no term for eigenvalue {eigenvalue}")


@dataclass(frozen=True)
class RealResolventPFD:
    """Real-mode decomposition: rational linear terms plus (P, Q) pairs."""

    matrix: Matrix
    linear: tuple  # EigenvalueTerm with rational eigenvalues
    quadratic: tuple  # QuadraticTerm, ...

    @property
    def size(self) -> int:
        return self.matrix.nrows


def _matrix_from_entries(n: int, entries) -> Matrix:
    return Matrix(tuple(tuple(entries[i][j] for j in range(n)) for i in range(n)))


def pfd_residue(factored: FactoredCharPoly, adjugate: PolyMatrix, matrix: Matrix) -> ResolventPFD:
    """Decomposition via local series expansion around each eigenvalue.

    For eigenvalue lambda of multiplicity r, the resolvent near lambda is
    g(s) / (s-lambda)^r with g = adj(sI-A) / (charpoly/(s-lambda)^r); the
    Taylor coefficients a_0..a_{r-1} of g around lambda give B_j = a_{r-j}.
    """
    if factored.mode != "complex":
        raise ValueError("pfd_residue requires a complex-mode factorization")
    n = adjugate.size
    charpoly = factored.expand()
    terms = []
    for eigenvalue, mult in factored.linear:
        denom = charpoly
        for _ in range(mult):
            denom, rem = divmod(denom, Poly.linear(eigenvalue))
            if not rem.is_zero:
                raise AssertionError("eigenvalue does not divide the characteristic polynomial")
        denom_shifted = denom.shift(eigenvalue)
        coeff_entries = [
            [[None] * n for _ in range(n)] for _ in range(mult)
        ]  # [m][i][j] = m-th Taylor coefficient of entry (i, j)
        for i in range(n):
            for j in range(n):
                num_shifted = adjugate.entry_poly(i, j).shift(eigenvalue)
                series = series_div(num_shifted, denom_shifted, mult)
                for m in range(mult):
                    coeff_entries[m][i][j] = series.coeff(m)
        coefficients = tuple(
            _matrix_from_entries(n, coeff_entries[mult - j]).demoted()
            for j in range(1, mult + 1)
        )
        terms.append(EigenvalueTerm(_demote_scalar(eigenvalue), mult, coefficients))
    terms.sort(key=lambda t: scalar_key(t.eigenvalue))
    return ResolventPFD(matrix, tuple(terms))


def _demote_scalar(x):
    if isinstance(x, GaussianRational) and x.im == 0:
        return x.re
    return x


def sample_points(count: int, factored: FactoredCharPoly, n: int):
    """Deterministic rational sample points s = n+1, n+2, ... skipping eigenvalues."""
    taken = []
    forbidden = {scalar_key(root) for root, _ in factored.linear}
    value = Fraction(n + 1)
    while len(taken) < count:
        if (value, Fraction(0)) not in forbidden:
            taken.append(value)
        value += 1
    return taken


def pfd_undetermined(
    factored: FactoredCharPoly, adjugate: PolyMatrix, matrix: Matrix
) -> ResolventPFD:
    """Decomposition by undetermined matrix coefficients.

    Multiplying the decomposition by the characteristic polynomial gives the
    polynomial identity  adj(sI-A) = sum_ij B_ij * charpoly(s)/(s-lambda_i)^j.
    Evaluating at n distinct non-eigenvalue rational points yields one exact
    linear system shared by every matrix entry.
    """
    if factored.mode != "complex":
        raise ValueError("pfd_undetermined requires a complex-mode factorization")
    n = adjugate.size
    charpoly = factored.expand()
    unknowns = []  # (eigenvalue index, j)
    basis_polys = []
    for idx, (eigenvalue, mult) in enumerate(factored.linear):
        partial = charpoly
        for j in range(1, mult + 1):
            partial, rem = divmod(partial, Poly.linear(eigenvalue))
            if not rem.is_zero:
                raise AssertionError("eigenvalue does not divide the characteristic polynomial")
            unknowns.append((idx, j))
            basis_polys.append(partial)
    points = sample_points(len(unknowns), factored, n)
    v_rows = [[poly.eval(s0) for poly in basis_polys] for s0 in points]
    rhs_columns = []
    rhs_index = {}
    for i in range(n):
        for j in range(n):
            rhs_index[(i, j)] = len(rhs_columns)
            rhs_columns.append([adjugate.entry_poly(i, j).eval(s0) for s0 in points])
    solution = solve_many(Matrix.from_rows(v_rows), rhs_columns)
    by_eigenvalue: dict[int, list[Matrix]] = {}
    for unknown_idx, (idx, j) in enumerate(unknowns):
        entries = [
            [solution[unknown_idx][rhs_index[(i, jj)]] for jj in range(n)] for i in range(n)
        ]
        by_eigenvalue.setdefault(idx, []).append(_matrix_from_entries(n, entries).demoted())
    terms = []
    for idx, (eigenvalue, mult) in enumerate(factored.linear):
        terms.append(
            EigenvalueTerm(_demote_scalar(eigenvalue), mult, tuple(by_eigenvalue[idx]))
        )
    terms.sort(key=lambda t: scalar_key(t.eigenvalue))
    return ResolventPFD(matrix, tuple(terms))


def pfd_real(factored: FactoredCharPoly, adjugate: PolyMatrix, matrix: Matrix) -> RealResolventPFD:
    """Real-mode decomposition with undetermined matrix coefficients.

    Linear factors contribute B_ij exactly as in complex mode; each quadratic
    factor (s+a)^2 + d contributes the pair (P, Q) of the term
    ((s+a) P + Q)/((s+a)^2 + d).  All stored matrices are rational.
    """
    if factored.mode != "real":
        raise ValueError("pfd_real requires a real-mode factorization")
    n = adjugate.size
    charpoly = factored.expand()
    basis_polys = []
    layout = []  # ("linear", idx, j) or ("quad", idx, "P" | "Q")
    for idx, (eigenvalue, mult) in enumerate(factored.linear):
        partial = charpoly
        for j in range(1, mult + 1):
            partial, rem = divmod(partial, Poly.linear(eigenvalue))
            if not rem.is_zero:
                raise AssertionError("eigenvalue does not divide the characteristic polynomial")
            layout.append(("linear", idx, j))
            basis_polys.append(partial)
    for idx, (a, d) in enumerate(factored.quadratic):
        quad = Poly((a * a + d, 2 * a, Fraction(1)))
        cofactor, rem = divmod(charpoly, quad)
        if not rem.is_zero:
            raise AssertionError("quadratic factor does not divide the characteristic polynomial")
        shifted = Poly((a, Fraction(1)))  # s + a
        layout.append(("quad", idx, "P"))
        basis_polys.append(cofactor * shifted)
        layout.append(("quad", idx, "Q"))
        basis_polys.append(cofactor)
    points = sample_points(len(basis_polys), factored, n)
    v_rows = [[poly.eval(s0) for poly in basis_polys] for s0 in points]
    rhs_columns = []
    rhs_index = {}
    for i in range(n):
        for j in range(n):
            rhs_index[(i, j)] = len(rhs_columns)
            rhs_columns.append([adjugate.entry_poly(i, j).eval(s0) for s0 in points])
    solution = solve_many(Matrix.from_rows(v_rows), rhs_columns)

    def matrix_for(unknown_idx: int) -> Matrix:
        entries = [
            [solution[unknown_idx][rhs_index[(i, jj)]] for jj in range(n)] for i in range(n)
        ]
        return _matrix_from_entries(n, entries)

    linear_by_idx: dict[int, list[Matrix]] = {}
    quad_parts: dict[int, dict[str, Matrix]] = {}
    for unknown_idx, slot in enumerate(layout):
        kind, idx, tag = slot
        if kind == "linear":
            linear_by_idx.setdefault(idx, []).append(matrix_for(unknown_idx))
        else:
            quad_parts.setdefault(idx, {})[tag] = matrix_for(unknown_idx)
    linear_terms = tuple(
        EigenvalueTerm(eigenvalue, mult, tuple(linear_by_idx[idx]))
        for idx, (eigenvalue, mult) in enumerate(factored.linear)
    )
    quadratic_terms = tuple(
        QuadraticTerm(a, d, quad_parts[idx]["P"], quad_parts[idx]["Q"])
        for idx, (a, d) in enumerate(factored.quadratic)
    )
    return RealResolventPFD(matrix, linear_terms, quadratic_terms)


def reconstruct_resolvent(pfd, s0: Scalar) -> Matrix:
    """Evaluate the decomposition at the point s0; equals (s0 I - A)^{-1}.

    Raises EvalAtPole when s0 is an eigenvalue (or, real mode, a root of a
    quadratic factor, which cannot happen for real rational s0).
    """
    n = pfd.size
    acc = Matrix.zeros(n, n)
    if isinstance(pfd, ResolventPFD):
        linear = pfd.terms
        quadratic = ()
    else:
        linear = pfd.linear
        quadratic = pfd.quadratic
    for term in linear:
        delta = s0 - term.eigenvalue
        if not delta:
            raise EvalAtPole(f"{s0} is an eigenvalue of the matrix")
        inv = 1 / delta
        power = inv
        for j in range(1, term.multiplicity + 1):
            acc = acc + term.coefficient(j) * power
            power = power * inv
    for quad in quadratic:
        shifted = s0 + quad.a
        denom = shifted * shifted + quad.d
        if not denom:
            raise EvalAtPole(f"{s0} is a root of a quadratic factor")
        acc = acc + (quad.p_matrix * shifted + quad.q_matrix) * (1 / denom)
    return acc


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def verify_pfd(a: Matrix, pfd: ResolventPFD) -> list[CheckResult]:
    """Structural identity report for a complex-mode decomposition.

    Covers: sum of the B_i1 is the identity; each B_i1 is idempotent and
    commutes with (A - lambda_i I); cross products B_i1 B_p1 vanish; the chain
    recurrence (A - lambda_i I) B_ij = B_{i,j+1} with annihilation at j = r_i;
    the power identity B_ij = B_i2^{j-1}; rank B_i1 = r_i; and exact resolvent
    reconstruction at three sample points.
    """
    n = a.nrows
    eye = Matrix.identity(n)
    results: list[CheckResult] = []

    total = Matrix.zeros(n, n)
    for term in pfd.terms:
        total = total + term.coefficient(1)
    results.append(CheckResult("projector_sum", total == eye, "sum of B_i1 equals I"))

    for term in pfd.terms:
        b1 = term.coefficient(1)
        shifted = a - eye * term.eigenvalue
        label = f"lambda={term.eigenvalue}"
        results.append(
            CheckResult(f"idempotent[{label}]", (b1 @ b1) == b1, "B_1^2 = B_1")
        )
        results.append(
            CheckResult(
                f"commutes[{label}]",
                (shifted @ b1) == (b1 @ shifted),
                "(A-lambda I) B_1 = B_1 (A-lambda I)",
            )
        )
        recurrence_ok = True
        for j in range(1, term.multiplicity):
            if (shifted @ term.coefficient(j)) != term.coefficient(j + 1):
                recurrence_ok = False
        results.append(
            CheckResult(
                f"recurrence[{label}]", recurrence_ok, "(A-lambda I) B_j = B_{j+1}"
            )
        )
        annihilated = (shifted @ term.coefficient(term.multiplicity)).is_zero
        results.append(
            CheckResult(f"annihilation[{label}]", annihilated, "(A-lambda I) B_r = 0")
        )
        power_ok = True
        if term.multiplicity >= 2:
            b2 = term.coefficient(2)
            acc = b2
            for j in range(2, term.multiplicity + 1):
                if acc != term.coefficient(j):
                    power_ok = False
                acc = acc @ b2
        results.append(
            CheckResult(f"power_identity[{label}]", power_ok, "B_j = B_2^{j-1}")
        )
        results.append(
            CheckResult(
                f"projector_rank[{label}]",
                rank(b1) == term.multiplicity,
                f"rank B_1 = algebraic multiplicity {term.multiplicity}",
            )
        )

    for i, term_i in enumerate(pfd.terms):
        for p, term_p in enumerate(pfd.terms):
            if i < p:
                product = term_i.coefficient(1) @ term_p.coefficient(1)
                results.append(
                    CheckResult(
                        f"orthogonal[{term_i.eigenvalue};{term_p.eigenvalue}]",
                        product.is_zero,
                        "B_i1 B_p1 = 0 for i != p",
                    )
                )

    results.extend(_reconstruction_checks(a, pfd))
    return results


def verify_real_pfd(a: Matrix, pfd: RealResolventPFD) -> list[CheckResult]:
    """Structural identity report for a real-mode decomposition.

    The quadratic pairs satisfy exact rational identities inherited from the
    underlying conjugate eigenvalue pair: (A + aI) P = Q, (A + aI) Q = -d P,
    and P idempotent for a simple factor.
    """
    n = a.nrows
    eye = Matrix.identity(n)
    results: list[CheckResult] = []
    total = Matrix.zeros(n, n)
    for term in pfd.linear:
        total = total + term.coefficient(1)
    for quad in pfd.quadratic:
        total = total + quad.p_matrix
    results.append(
        CheckResult("projector_sum", total == eye, "sum of B_i1 and P equals I")
    )
    for term in pfd.linear:
        shifted = a - eye * term.eigenvalue
        label = f"lambda={term.eigenvalue}"
        recurrence_ok = True
        for j in range(1, term.multiplicity):
            if (shifted @ term.coefficient(j)) != term.coefficient(j + 1):
                recurrence_ok = False
        results.append(
            CheckResult(f"recurrence[{label}]", recurrence_ok, "(A-lambda I) B_j = B_{j+1}")
        )
        annihilated = (shifted @ term.coefficient(term.multiplicity)).is_zero
        results.append(
            CheckResult(f"annihilation[{label}]", annihilated, "(A-lambda I) B_r = 0")
        )
    for quad in pfd.quadratic:
        label = f"(s+{quad.a})^2+{quad.d}"
        shifted = a + eye * quad.a
        results.append(
            CheckResult(
                f"quad_pair_P[{label}]",
                (shifted @ quad.p_matrix) == quad.q_matrix,
                "(A+aI) P = Q",
            )
        )
        results.append(
            CheckResult(
                f"quad_pair_Q[{label}]",
                (shifted @ quad.q_matrix) == quad.p_matrix * (-quad.d),
                "(A+aI) Q = -d P",
            )
        )
        results.append(
            CheckResult(
                f"quad_idempotent[{label}]",
                (quad.p_matrix @ quad.p_matrix) == quad.p_matrix,
                "P^2 = P",
            )
        )
    results.extend(_reconstruction_checks(a, pfd))
    return results


def _reconstruction_checks(a: Matrix, pfd) -> list[CheckResult]:
    n = a.nrows
    eye = Matrix.identity(n)
    if isinstance(pfd, ResolventPFD):
        linear = pfd.terms
    else:
        linear = pfd.linear
    forbidden = {scalar_key(term.eigenvalue) for term in linear}
    results = []
    s0 = Fraction(n + 1)
    found = 0
    while found < 3:
        if scalar_key(s0) in forbidden:
            s0 += 1
            continue
        lhs = reconstruct_resolvent(pfd, s0) @ (eye * s0 - a)
        results.append(
            CheckResult(
                f"reconstruction[s={s0}]",
                lhs.demoted() == eye,
                "pfd(s0) (s0 I - A) = I",
            )
        )
        found += 1
        s0 += 1
    return results


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)
