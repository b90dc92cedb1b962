"""Sum-of-squares certification over the affine Gram-matrix family.

A polynomial F is SOS over a monomial basis Psi exactly when some matrix in
the affine family A(lam) = A0 + sum_i lam_i S_i is positive semidefinite,
where A0 is any particular Gram matrix of F and the S_i span the kernel
space (Psi S Psi^T = 0). Floating point only proposes points; acceptance is
always an exact rational LDL^T with complete diagonal pivoting.

Before any numerics, monomials whose squared product class pins the
corresponding diagonal entry to zero are eliminated iteratively (a zero
diagonal in a PSD matrix forces its whole row to vanish). This keeps the
search family small and removes the worst rank degeneracies; when a diagonal
is pinned to a negative value the elimination already yields an exact dual
witness of infeasibility. When the numeric search still lands on a singular
face, candidate kernel vectors of the numeric optimum are rationalized and
imposed as exact linear constraints, and the search repeats on the reduced
face until rounding succeeds or the refinement stalls.

Infeasibility is reported as numeric dual evidence (a witness W >= 0 with
trace 1, orthogonal to the kernel directions, making <W, A0> negative),
never as a proof.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    CapacityError,
    InternalConsistencyError,
    NotRepresentableError,
    PreconditionError,
    StructuralError,
)
from .exactlinalg import SymMatrix, psd_factor, rref, solve_affine
from .gramkernel import kernel_basis, pairs_for_beta
from .polarize import quadratic_form_polynomial
from .polycore import MonomialBasis, Polynomial, basis_key, build_basis

GRAM_CAPACITY = 120
ARTIN_MAX_POWER = 3

_INFEAS_TOL = 1e-7
_ROUND_BOUNDS = (10, 100, 10**4, 10**6)
_VECTOR_BOUNDS = (10, 100, 10**4)
_FACIAL_ROUNDS = 3


@dataclass(frozen=True)
class GramForm:
    """The affine family of all Gram matrices of one polynomial."""

    basis: MonomialBasis
    A0: SymMatrix
    kernel: tuple


@dataclass(frozen=True)
class SosCertificate:
    """Exact SOS witness: PSD Gram matrix with its pivoted LDL^T.

    gram[perm[i]][perm[j]] == (L diag(D) L^T)[i][j] with D >= 0, and
    F == sum of weight * square**2 over ``squares`` exactly.
    """

    basis: MonomialBasis
    gram: SymMatrix
    perm: tuple
    L: tuple
    D: tuple
    squares: tuple


@dataclass(frozen=True)
class InfeasibilityEvidence:
    """Numeric dual witness that the Gram family misses the PSD cone.

    W (dual_matrix) satisfies W >= 0, tr W = 1, <W, S_i> ~ 0 and
    <W, A0> = -margin; residuals quantify how well W meets those
    constraints. Not a proof, except when produced by the exact diagonal
    elimination (reason says so and the residuals are exactly zero).
    """

    dual_matrix: tuple | None
    margin: float | None
    residuals: dict | None
    reason: str | None = None


def initial_gram(F, basis):
    """Canonical particular Gram matrix of F over the basis.

    Coefficient c of a monomial goes entirely to a squared pair when one
    exists, otherwise it is split equally over all off-diagonal pairs.
    """
    if not isinstance(F, Polynomial) or F.nvars != basis.nvars:
        raise StructuralError("polynomial and basis arities differ")
    A0 = SymMatrix(len(basis))
    for beta, coeff in F.terms():
        group = pairs_for_beta(beta, basis)
        if not group.pairs:
            raise NotRepresentableError(
                f"monomial with exponents {beta} is not a product of two basis "
                "monomials"
            )
        squared = [pair for pair in group.pairs if pair[0] == pair[1]]
        if squared:
            i, _ = squared[0]
            A0.add(i, i, coeff)
        else:
            share = coeff / (2 * len(group.pairs))
            for i, j in group.pairs:
                A0.add(i, j, share)
    if quadratic_form_polynomial(A0, basis) != F:
        raise InternalConsistencyError("initial Gram matrix does not represent F")
    return GramForm(basis, A0, tuple(kernel_basis(basis)))


def _diagonal_reduction(F, basis):
    """Delete monomials whose squared class pins the diagonal entry.

    If the only surviving pair with product 2*alpha is (alpha, alpha), the
    diagonal entry equals the coefficient of z^(2 alpha) in every Gram
    matrix: zero forces the whole row of a PSD matrix to vanish (monomial
    deleted), negative is an exact infeasibility. Returns (alive_indices,
    forced) with forced = (index, negative_coefficient) or None.
    """
    monos = basis.monomials
    index = {m: i for i, m in enumerate(monos)}
    coeff = {beta: c for beta, c in F.terms()}
    alive = set(range(len(monos)))
    changed = True
    while changed:
        changed = False
        for i in sorted(alive):
            double = tuple(2 * e for e in monos[i])
            partnered = False
            for j in alive:
                rest = tuple(a - b for a, b in zip(double, monos[j]))
                if any(e < 0 for e in rest):
                    continue
                k = index.get(rest)
                if k is None or k not in alive:
                    continue
                if (min(j, k), max(j, k)) != (i, i):
                    partnered = True
                    break
            if partnered:
                continue
            pinned = coeff.get(double, Fraction(0))
            if pinned == 0:
                alive.remove(i)
                changed = True
            elif pinned < 0:
                return sorted(alive), (i, pinned)
    return sorted(alive), None


def _pair_classes(monos):
    classes = {}
    for i in range(len(monos)):
        for j in range(i, len(monos)):
            prod = tuple(a + b for a, b in zip(monos[i], monos[j]))
            classes.setdefault(prod, []).append((i, j))
    return classes


def _gram_over(F, monos, classes):
    """Particular Gram matrix over an arbitrary monomial list.

    Returns (A0, missing) where missing lists coefficients of F with no
    available pair.
    """
    A0 = SymMatrix(len(monos))
    missing = []
    for beta, coeff in F.terms():
        pairs = classes.get(beta)
        if not pairs:
            missing.append(beta)
            continue
        squared = [pair for pair in pairs if pair[0] == pair[1]]
        if squared:
            i, _ = squared[0]
            A0.add(i, i, coeff)
        else:
            share = coeff / (2 * len(pairs))
            for i, j in pairs:
                A0.add(i, j, share)
    return A0, missing


def _star_kernel(classes, size):
    """Sparse basis of the kernel space over an arbitrary monomial list.

    Each product class contributes one balance equation, so its solution
    space is spanned by two-pair elements anchoring every pair to the
    class's first one (diagonal pairs weigh 1, off-diagonal 2).
    """
    mats = []
    for prod in sorted(classes, key=basis_key):
        pairs = sorted(classes[prod])
        if len(pairs) < 2:
            continue
        anchor = pairs[0]
        anchor_weight = 1 if anchor[0] == anchor[1] else 2
        for pair in pairs[1:]:
            weight = 1 if pair[0] == pair[1] else 2
            g = math.gcd(anchor_weight, weight)
            S = SymMatrix(size)
            S.set(anchor[0], anchor[1], Fraction(weight, g))
            S.set(pair[0], pair[1], Fraction(-anchor_weight, g))
            mats.append(S)
    return mats


def _reconstruction(monos, gram, nvars):
    out = Polynomial.zero(nvars)
    for (i, j), value in gram.entries():
        scale = value if i == j else 2 * value
        exps = tuple(a + b for a, b in zip(monos[i], monos[j]))
        out = out + Polynomial.monomial(exps, scale)
    return out


def _exact_psd(gram):
    return psd_factor(gram.to_dense()) is not None


def _certificate_from_gram(F, basis, gram):
    """Exact LDL^T acceptance; None when gram is not PSD."""
    represented = quadratic_form_polynomial(gram, basis)
    if represented != F:
        raise InternalConsistencyError("candidate Gram matrix does not represent F")
    factored = psd_factor(gram.to_dense())
    if factored is None:
        return None
    perm, L, D = factored
    monos = basis.monomials
    squares = []
    for i, weight in enumerate(D):
        if not weight:
            continue
        poly = Polynomial.zero(basis.nvars)
        for r in range(len(monos)):
            if L[r][i]:
                poly = poly + Polynomial.monomial(monos[perm[r]], L[r][i])
        squares.append((weight, poly))
    recon = Polynomial.zero(basis.nvars)
    for weight, poly in squares:
        recon = recon + poly * poly * weight
    if recon != F:
        raise InternalConsistencyError("weighted squares do not reconstruct F")
    return SosCertificate(
        basis=basis,
        gram=gram,
        perm=tuple(perm),
        L=tuple(tuple(row) for row in L),
        D=tuple(D),
        squares=tuple(squares),
    )


def _to_array(sym, size):
    out = np.zeros((size, size))
    for (i, j), value in sym.entries():
        out[i, j] = out[j, i] = float(value)
    return out


def _affine_point(A0, kernel_mats, lam):
    A = A0.copy()
    for value, S in zip(lam, kernel_mats):
        if value:
            for (i, j), entry in S.entries():
                A.add(i, j, value * entry)
    return A


def _dual_residuals(W, S_arrays):
    eigs = np.linalg.eigvalsh(W) if W.size else np.zeros(1)
    ortho = max((abs(float(np.tensordot(W, S))) for S in S_arrays), default=0.0)
    return {
        "kernel_orthogonality_max": ortho,
        "dual_psd_violation": max(0.0, -float(eigs[0])),
        "trace_gap": abs(float(np.trace(W)) - 1.0),
    }


def _cvxopt_maxmineig(A0n, S_arrays):
    """max t s.t. A0 + sum lam_i S_i - t I >= 0 via interior point."""
    try:
        from cvxopt import matrix, solvers
    except Exception:
        return None
    N = A0n.shape[0]
    cols = [(-S).reshape(N * N, order="F") for S in S_arrays]
    cols.append(np.eye(N).reshape(N * N, order="F"))
    G = matrix(np.column_stack(cols))
    c = matrix([0.0] * len(S_arrays) + [-1.0])
    saved = dict(solvers.options)
    solvers.options.clear()
    solvers.options.update(
        {"show_progress": False, "maxiters": 200, "abstol": 1e-9, "reltol": 1e-9}
    )
    try:
        sol = solvers.sdp(c, Gs=[G], hs=[matrix(A0n)])
    except Exception:
        return None
    finally:
        solvers.options.clear()
        solvers.options.update(saved)
    if sol.get("x") is None or sol.get("status") not in ("optimal", "unknown"):
        return None
    x = list(sol["x"])
    lam, t = x[: len(S_arrays)], x[len(S_arrays)]
    W = None
    if sol.get("zs"):
        W = np.array(sol["zs"][0]).reshape(N, N)
        W = 0.5 * (W + W.T)
        trace = float(np.trace(W))
        if trace > 1e-12:
            W = W / trace
    return lam, t, W


def _subgradient_maxmineig(A0n, S_arrays, iters=400):
    """Projected-subgradient ascent on lam -> min eig(A0 + sum lam S)."""
    K = len(S_arrays)
    lam = np.zeros(K)
    best_lam = lam.copy()
    best_t = float(np.linalg.eigvalsh(A0n)[0])
    for it in range(1, iters + 1):
        A = A0n.copy()
        for coeff, S in zip(lam, S_arrays):
            A += coeff * S
        eigvals, eigvecs = np.linalg.eigh(A)
        t = float(eigvals[0])
        if t > best_t:
            best_t, best_lam = t, lam.copy()
        if not K:
            break
        v = eigvecs[:, 0]
        grad = np.array([float(v @ S @ v) for S in S_arrays])
        norm = float(np.linalg.norm(grad))
        if norm < 1e-14:
            break
        lam = lam + (0.5 / math.sqrt(it)) * grad / norm
    A = A0n.copy()
    for coeff, S in zip(best_lam, S_arrays):
        A += coeff * S
    eigvals, eigvecs = np.linalg.eigh(A)
    v = eigvecs[:, 0]
    return list(best_lam), float(eigvals[0]), np.outer(v, v)


def _numeric_stage(A0n, S_arrays):
    result = _cvxopt_maxmineig(A0n, S_arrays)
    if result is None:
        result = _subgradient_maxmineig(A0n, S_arrays)
    lam, t, W = result
    residuals = _dual_residuals(W, S_arrays) if W is not None else None
    return lam, t, W, residuals


def _round_to_psd(A0, kernel_mats, lam_floats):
    for bound in _ROUND_BOUNDS:
        lam = [Fraction(x).limit_denominator(bound) for x in lam_floats]
        gram = _affine_point(A0, kernel_mats, lam)
        if _exact_psd(gram):
            return gram
    return None


def _vertex_hunt(A0, kernel_mats, size):
    """Round minimizers of weighted-trace objectives over the PSD slice.

    When the max-min-eig optimum sits on a face whose common kernel is
    irrational, linear objectives still pick out extreme points, and those
    are often exactly the rational low-rank Gram matrices we are after.
    Returns the rounded lam vector or None.
    """
    if not kernel_mats:
        return None
    try:
        from cvxopt import matrix, solvers
    except Exception:
        return None
    A0n = _to_array(A0, size)
    S_arrays = [_to_array(S, size) for S in kernel_mats]
    G = matrix(
        np.column_stack([(-S).reshape(size * size, order="F") for S in S_arrays])
    )
    h = matrix(A0n)
    weightings = [
        np.ones(size),
        1.0 + np.arange(size),
        1.0 + np.arange(size)[::-1],
    ]
    saved = dict(solvers.options)
    solvers.options.clear()
    solvers.options.update(
        {"show_progress": False, "maxiters": 200, "abstol": 1e-9, "reltol": 1e-9}
    )
    try:
        for w in weightings:
            c = matrix([float(np.diag(S) @ w) for S in S_arrays])
            try:
                sol = solvers.sdp(c, Gs=[G], hs=[h])
            except Exception:
                continue
            if sol.get("x") is None or sol.get("status") not in (
                "optimal",
                "unknown",
            ):
                continue
            lam_floats = list(sol["x"])
            for bound in _ROUND_BOUNDS:
                lam = [Fraction(x).limit_denominator(bound) for x in lam_floats]
                if _exact_psd(_affine_point(A0, kernel_mats, lam)):
                    return lam
    finally:
        solvers.options.clear()
        solvers.options.update(saved)
    return None


def _float_rref(rows, tol=1e-7):
    """Reduced echelon form with complete pivoting and unit pivots.

    Picking the globally largest remaining entry keeps the reduced rows
    O(1) in magnitude, which is what makes them rationalizable.
    """
    M = np.array(rows, dtype=float)
    if M.size == 0:
        return M
    nrows, ncols = M.shape
    r = 0
    done_cols = set()
    while r < nrows:
        sub = np.abs(M[r:])
        for c in done_cols:
            sub[:, c] = 0.0
        flat = int(np.argmax(sub))
        pr, pc = divmod(flat, ncols)
        if sub[pr, pc] < tol:
            break
        pr += r
        M[[r, pr]] = M[[pr, r]]
        M[r] = M[r] / M[r, pc]
        for other in range(nrows):
            if other != r and abs(M[other, pc]) > 0:
                M[other] = M[other] - M[other, pc] * M[r]
        done_cols.add(pc)
        r += 1
    M = M[:r]
    M[np.abs(M) < tol] = 0.0
    return M


def _matvec(sym, vec):
    out = [Fraction(0)] * sym.size
    for (i, j), value in sym.entries():
        out[i] += value * vec[j]
        if i != j:
            out[j] += value * vec[i]
    return out


def _restrict(sym, keep):
    pos = {full: small for small, full in enumerate(keep)}
    out = SymMatrix(len(keep))
    for (i, j), value in sym.entries():
        if i in pos and j in pos:
            a, b = pos[i], pos[j]
            out.set(min(a, b), max(a, b), value)
    return out


def _combine(kernel_mats, coeffs, size):
    out = SymMatrix(size)
    for coeff, S in zip(coeffs, kernel_mats):
        if coeff:
            for (i, j), value in S.entries():
                out.add(i, j, coeff * value)
    return out


def _constrained_attempt(A0, kernel_mats, size, vectors):
    """Impose A(lam) v = 0 exactly for rational vectors v, then retry.

    Returns ("gram", matrix), ("lam", floats) to continue refining, or None
    when the constraints are inconsistent or unusable.
    """
    K = len(kernel_mats)
    rows, rhs = [], []
    for vec in vectors:
        A0v = _matvec(A0, vec)
        Sv = [_matvec(S, vec) for S in kernel_mats]
        for r in range(size):
            row = [Sv[i][r] for i in range(K)]
            if any(row) or A0v[r]:
                rows.append(row)
                rhs.append(-A0v[r])
    if not rows:
        return None
    solution = solve_affine(rows, rhs)
    if solution is None:
        return None
    lam_p, H = solution
    anchored = _affine_point(A0, kernel_mats, lam_p)
    if not H:
        return ("gram", anchored) if _exact_psd(anchored) else None
    # quotient coordinates: complement of the constraint pivots
    _, pivots = rref(vectors)
    keep = [j for j in range(size) if j not in set(pivots)]
    if not keep:
        return ("gram", anchored) if _exact_psd(anchored) else None
    free_mats = [_combine(kernel_mats, h, size) for h in H]
    anchored_r = _restrict(anchored, keep)
    free_r = [_restrict(S, keep) for S in free_mats]
    A0r = _to_array(anchored_r, len(keep))
    Sr = [_to_array(S, len(keep)) for S in free_r]
    mu, t, _W, _res = _numeric_stage(A0r, Sr)
    if t < -_INFEAS_TOL:
        return None

    def lift(mu_exact):
        return [
            lam_p[i] + sum(m * h[i] for m, h in zip(mu_exact, H))
            for i in range(K)
        ]

    for bound in _ROUND_BOUNDS:
        mu_exact = [Fraction(x).limit_denominator(bound) for x in mu]
        gram = _affine_point(A0, kernel_mats, lift(mu_exact))
        if _exact_psd(gram):
            return ("gram", gram)
    mu_vertex = _vertex_hunt(anchored_r, free_r, len(keep))
    if mu_vertex is not None:
        gram = _affine_point(A0, kernel_mats, lift(mu_vertex))
        if _exact_psd(gram):
            return ("gram", gram)
    lam_float = [
        float(lam_p[i]) + sum(m * float(h[i]) for m, h in zip(mu, H))
        for i in range(K)
    ]
    return ("lam", lam_float)


def _facial_search(A0, kernel_mats, size, lam_floats):
    """Refine a near-singular numeric optimum into an exact PSD point."""
    A0n = _to_array(A0, size)
    S_arrays = [_to_array(S, size) for S in kernel_mats]
    lam = list(lam_floats)
    for _ in range(_FACIAL_ROUNDS):
        A = A0n.copy()
        for coeff, S in zip(lam, S_arrays):
            A += coeff * S
        eigvals, eigvecs = np.linalg.eigh(A)
        scale = max(1.0, float(np.abs(eigvals).max()))
        near = [eigvecs[:, i] for i in range(size) if eigvals[i] < 1e-5 * scale]
        if not near:
            return None
        reduced = _float_rref([list(v) for v in near])
        if reduced.size == 0:
            return None
        progressed = False
        for bound in _VECTOR_BOUNDS:
            vectors = [
                [Fraction(x).limit_denominator(bound) for x in row]
                for row in reduced
            ]
            outcome = _constrained_attempt(A0, kernel_mats, size, vectors)
            if outcome is None:
                continue
            tag, payload = outcome
            if tag == "gram":
                return payload
            lam = payload
            progressed = True
            break
        if not progressed:
            return None
    return None


def _embed(gram_small, alive, size):
    out = SymMatrix(size)
    for (i, j), value in gram_small.entries():
        out.set(alive[i], alive[j], value)
    return out


def _evidence_from_numeric(t, W, residuals, A0n, reason=None):
    margin = -t
    if W is not None:
        margin = -float(np.tensordot(W, A0n))
    return InfeasibilityEvidence(
        dual_matrix=tuple(tuple(float(x) for x in row) for row in W)
        if W is not None
        else None,
        margin=margin,
        residuals=residuals,
        reason=reason,
    )


def _full_family_evidence(F, basis, reason):
    """Dual evidence computed against the unreduced Gram family."""
    form = initial_gram(F, basis)
    A0n = _to_array(form.A0, len(basis))
    S_arrays = [_to_array(el.matrix, len(basis)) for el in form.kernel]
    _lam, t, W, residuals = _numeric_stage(A0n, S_arrays)
    return _evidence_from_numeric(t, W, residuals, A0n, reason=reason)


def sos_certify(F, basis=None):
    """Decide SOS membership of F over the (given or default) basis.

    Returns an exact SosCertificate or numeric InfeasibilityEvidence. The
    default basis caps are half of F's total and per-variable degrees.
    """
    if not isinstance(F, Polynomial):
        raise StructuralError("sos_certify expects a Polynomial")
    if F.nvars == 0:  # constants live in a one-variable ring for basis purposes
        F = Polynomial(1, {(0,): v for _, v in F.terms()})
    d = F.nvars
    if F.is_zero():
        if basis is None:
            basis = build_basis(0, (0,) * d)
        cert = _certificate_from_gram(F, basis, SymMatrix(len(basis)))
        if cert is None:
            raise InternalConsistencyError("zero Gram matrix rejected as PSD")
        return cert
    degree = int(F.degree())
    if degree % 2:
        return InfeasibilityEvidence(
            dual_matrix=None,
            margin=None,
            residuals=None,
            reason="odd total degree",
        )
    if basis is None:
        caps = tuple(-(-int(max(F.degree_in(k + 1), 0)) // 2) for k in range(d))
        basis = build_basis(degree // 2, caps)
    N = len(basis)
    if N > GRAM_CAPACITY:
        raise CapacityError(
            f"Gram basis has {N} monomials, capacity {GRAM_CAPACITY}"
        )

    alive, forced = _diagonal_reduction(F, basis)
    if forced is not None:
        return _full_family_evidence(
            F,
            basis,
            reason="exact preprocessing pinned a diagonal Gram entry to a "
            "negative value",
        )
    monos = [basis.monomials[i] for i in alive]
    classes = _pair_classes(monos)
    A0, missing = _gram_over(F, monos, classes)
    if missing:
        beta = missing[0]
        if not pairs_for_beta(beta, basis).pairs:
            raise NotRepresentableError(
                f"monomial with exponents {beta} is not a product of two basis "
                "monomials"
            )
        return _full_family_evidence(
            F,
            basis,
            reason="a coefficient of F is reachable only through Gram rows "
            "that exact preprocessing pinned to zero",
        )
    if _reconstruction(monos, A0, d) != F:
        raise InternalConsistencyError("initial Gram matrix does not represent F")
    kernel_mats = _star_kernel(classes, len(monos))

    gram = A0 if _exact_psd(A0) else None
    if gram is None:
        A0n = _to_array(A0, len(monos))
        S_arrays = [_to_array(S, len(monos)) for S in kernel_mats]
        lam, t, W, residuals = _numeric_stage(A0n, S_arrays)
        if t < -_INFEAS_TOL:
            if len(alive) == N:
                return _evidence_from_numeric(t, W, residuals, A0n)
            # report evidence against the full requested family
            form = initial_gram(F, basis)
            full_mats = [el.matrix for el in form.kernel]
            A0f = _to_array(form.A0, N)
            Sf = [_to_array(S, N) for S in full_mats]
            lam_f, t_f, W_f, res_f = _numeric_stage(A0f, Sf)
            return _evidence_from_numeric(t_f, W_f, res_f, A0f)
        gram = _round_to_psd(A0, kernel_mats, lam)
        if gram is None:
            lam_vertex = _vertex_hunt(A0, kernel_mats, len(monos))
            if lam_vertex is not None:
                gram = _affine_point(A0, kernel_mats, lam_vertex)
        if gram is None:
            gram = _facial_search(A0, kernel_mats, len(monos), lam)
        if gram is None:
            return _evidence_from_numeric(
                t,
                W,
                residuals,
                A0n,
                reason="numeric search found a near-feasible point but no "
                "exact rounding succeeded",
            )

    full = _embed(gram, alive, N)
    cert = _certificate_from_gram(F, basis, full)
    if cert is None:
        raise InternalConsistencyError("embedded Gram matrix lost semidefiniteness")
    return cert


def default_artin_candidates(nvars, max_power=ARTIN_MAX_POWER):
    """Powers 1..max_power of the coordinate sum of squares."""
    if nvars == 0:
        return [Polynomial.one(0)]
    base = Polynomial.zero(nvars)
    for k in range(1, nvars + 1):
        v = Polynomial.variable(k, nvars)
        base = base + v * v
    return [base**m for m in range(1, max_power + 1)]


def artin_certify(F, candidates=None):
    """First denominator s (list order) with s^2 F certifiably SOS, or None."""
    if not isinstance(F, Polynomial):
        raise StructuralError("artin_certify expects a Polynomial")
    if candidates is None:
        candidates = default_artin_candidates(F.nvars)
    for s in candidates:
        if not isinstance(s, Polynomial) or s.nvars != F.nvars:
            raise StructuralError("candidate denominator has mismatched arity")
        if s.is_zero():
            raise StructuralError("candidate denominator is zero")
    for s in candidates:
        outcome = sos_certify(s * s * F)
        if isinstance(outcome, SosCertificate):
            return s, outcome
    return None


def artin_minimize(F, s_factored):
    """Greedy removal of redundant denominator factors, one occurrence at a
    time in list order; a removal is kept iff certification still succeeds.

    Returns (reduced factor list, certificate for the reduced denominator).
    """
    factors = []
    for factor, mult in s_factored:
        if not isinstance(factor, Polynomial) or factor.is_zero():
            raise StructuralError("denominator factors must be nonzero polynomials")
        if not isinstance(mult, int) or mult < 0:
            raise StructuralError("factor multiplicities must be nonnegative ints")
        factors.append([factor, mult])

    def attempt(fs):
        s = Polynomial.one(F.nvars)
        for factor, mult in fs:
            s = s * factor**mult
        return sos_certify(s * s * F)

    outcome = attempt(factors)
    if not isinstance(outcome, SosCertificate):
        raise PreconditionError(
            "the supplied factored denominator does not certify F"
        )
    for idx in range(len(factors)):
        while factors[idx][1] > 0:
            trial = [list(f) for f in factors]
            trial[idx][1] -= 1
            candidate = attempt(trial)
            if isinstance(candidate, SosCertificate):
                factors = trial
                outcome = candidate
            else:
                break
    reduced = [(factor, mult) for factor, mult in factors if mult > 0]
    return reduced, outcome


def psd_sample_check(F, grid_spec):
    """Exact evaluation of F on a rational grid.

    grid_spec lists the sample values per variable. Returns
    (nonnegative_everywhere, worst_point, worst_value).
    """
    if not isinstance(F, Polynomial):
        raise StructuralError("psd_sample_check expects a Polynomial")
    grids = [tuple(Fraction(x) for x in axis) for axis in grid_spec]
    if len(grids) != F.nvars:
        raise StructuralError("grid spec arity does not match the polynomial")
    if any(not axis for axis in grids):
        raise StructuralError("grid spec has an empty axis")
    worst_value = None
    worst_point = None
    for point in itertools.product(*grids):
        value = F.eval_rational(point)
        if worst_value is None or value < worst_value:
            worst_value, worst_point = value, point
    return worst_value >= 0, worst_point, worst_value
