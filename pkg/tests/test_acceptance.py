"""Acceptance suite: one test per release criterion, each timed against its
budget and reported as a single [PASS]/[FAIL] line on the terminal."""

import contextlib
import itertools
import random
import time
from fractions import Fraction

from _helpers import random_nonzero_polynomial, random_polynomial
from sospencil.exactlinalg import SymMatrix, is_psd, sparse_rank
from sospencil.gramkernel import (
    defect_completion,
    kernel_basis,
    kernel_dimension_oracle,
)
from sospencil.herglotz import crosscheck_slice_criterion, slice_scan
from sospencil.parsing import parse_polynomial
from sospencil.polarize import (
    chain_pencil,
    pencil_row_action,
    product_polarization,
    quadratic_form_polynomial,
    verify_pencil,
)
from sospencil.polycore import (
    Polynomial,
    RationalFunction,
    build_basis,
    wronskian,
)
from sospencil.realize import verify_realization, wronskian_realization
from sospencil.soscert import (
    InfeasibilityEvidence,
    SosCertificate,
    artin_certify,
    sos_certify,
)

MOTZKIN = "z1^4*z2^2 + z1^2*z2^4 - 3*z1^2*z2^2 + 1"


def poly(text, nvars=None):
    return parse_polynomial(text, nvars=nvars)


@contextlib.contextmanager
def criterion(capsys, number, budget, description):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(
                f"[FAIL] criterion {number}: {description} "
                f"({elapsed:.2f}s, budget {budget:g}s)"
            )
        raise
    elapsed = time.perf_counter() - start
    status = "PASS" if elapsed < budget else "FAIL"
    with capsys.disabled():
        print(
            f"[{status}] criterion {number}: {description} "
            f"({elapsed:.2f}s, budget {budget:g}s)"
        )
    assert elapsed < budget, (
        f"criterion {number} exceeded its {budget}s budget: {elapsed:.2f}s"
    )


def chain_action(pencil):
    """Rows of C(s) * (s^mu_1, ..., s^mu_m)^T as slot-variable polynomials."""
    size = pencil.size
    columns = [Polynomial.monomial(mu) for mu in pencil.mu]
    rows = []
    for i in range(size):
        total = Polynomial.zero(size)
        for j in range(size):
            for m, mat in enumerate(pencil.matrices):
                coeff = mat.get(i, j)
                if coeff:
                    exps = tuple(1 if v == m else 0 for v in range(size))
                    total = total + Polynomial.monomial(exps, coeff) * columns[j]
        rows.append(total)
    return rows


def test_criterion_1_chain_pencil(capsys):
    with criterion(capsys, 1, 5, "chain-pencil identity exact for sizes 0..5"):
        for k in range(6):
            cp = chain_pencil(k)
            rows = chain_action(cp)
            assert rows[0] == Polynomial.monomial(cp.nu)
            assert all(r.is_zero() for r in rows[1:])

        cp = chain_pencil(1)
        c1 = SymMatrix(3)
        c1.set(0, 1, Fraction(1, 2))
        c2 = SymMatrix(3)
        c2.set(1, 2, Fraction(-1, 2))
        c3 = SymMatrix(3)
        c3.set(0, 2, Fraction(1, 2))
        assert cp.matrices == (c1, c2, c3)
        assert cp.mu == ((0, 1, 0), (0, 0, 1), (1, 0, 0))
        assert cp.nu == (1, 0, 1)


def test_criterion_2_product_polarization(capsys):
    with criterion(
        capsys, 2, 60, "product polarization verified on 100 random pairs"
    ):
        rng = random.Random(20240817)
        for _ in range(100):
            d = rng.randint(1, 3)
            q = random_nonzero_polynomial(
                rng, d, rng.randint(0, 4), rng.randint(1, 4)
            )
            p = random_polynomial(rng, d, rng.randint(0, 4), rng.randint(1, 4))
            pencil = product_polarization(q, p)
            ok, issues = verify_pencil(pencil, q, p)
            assert ok, issues
            assert issues == []


def test_criterion_3_kernel_completeness(capsys):
    with criterion(
        capsys, 3, 30, "kernel bases complete on all 140 small bases"
    ):
        checked = 0
        for d in range(1, 4):
            for n in range(4):
                for caps in itertools.product(range(n + 1), repeat=d):
                    basis = build_basis(n, caps)
                    elements = kernel_basis(basis)
                    assert len(elements) == kernel_dimension_oracle(basis)
                    vectors = []
                    for el in elements:
                        assert quadratic_form_polynomial(
                            el.matrix, basis
                        ).is_zero()
                        vectors.append(
                            {
                                i * el.matrix.size + j: v
                                for (i, j), v in el.matrix.entries()
                            }
                        )
                    assert sparse_rank(vectors) == len(elements)
                    checked += 1
        assert checked == 140


def test_criterion_4_defect_completion(capsys):
    with criterion(
        capsys,
        4,
        30,
        "defect completion exact on both reference blocks and 50 random combos",
    ):
        # 5x5 block: kernel triple on (z1^2, z1*z2, z2^2), completion axis 3
        basis = build_basis(2, (2, 2, 1))
        mon = {m: i for i, m in enumerate(basis.monomials)}
        S = SymMatrix(len(basis.monomials))
        S.set(mon[(2, 0, 0)], mon[(0, 2, 0)], Fraction(-1))
        S.set(mon[(1, 1, 0)], mon[(1, 1, 0)], Fraction(2))
        pen = defect_completion(S, basis, 3)

        def pair(a, b):
            i, j = mon[a], mon[b]
            return (min(i, j), max(i, j))

        assert not list(pen.matrices[0].entries())
        assert dict(pen.matrices[1].entries()) == {
            pair((1, 0, 1), (0, 2, 0)): Fraction(1),
            pair((0, 1, 1), (1, 1, 0)): Fraction(-1),
        }
        assert dict(pen.matrices[2].entries()) == {
            pair((1, 0, 1), (1, 1, 0)): Fraction(-1),
            pair((0, 1, 1), (2, 0, 0)): Fraction(1),
        }
        assert pen.matrices[3] == S
        assert all(r.is_zero() for r in pencil_row_action(pen.matrices, basis))

        # 6x6 block: kernel quad pairing (z1, z1*z2^2) with (z2, z1^2*z2)
        basis = build_basis(3, (2, 2, 1))
        mon = {m: i for i, m in enumerate(basis.monomials)}
        S = SymMatrix(len(basis.monomials))
        S.set(mon[(1, 0, 0)], mon[(1, 2, 0)], Fraction(1))
        S.set(mon[(0, 1, 0)], mon[(2, 1, 0)], Fraction(-1))
        pen = defect_completion(S, basis, 3)
        assert not list(pen.matrices[0].entries())
        assert dict(pen.matrices[1].entries()) == {
            pair((1, 1, 1), (0, 1, 0)): Fraction(1),
            pair((0, 0, 1), (1, 2, 0)): Fraction(-1),
        }
        assert dict(pen.matrices[2].entries()) == {
            pair((1, 1, 1), (1, 0, 0)): Fraction(-1),
            pair((0, 0, 1), (2, 1, 0)): Fraction(1),
        }
        assert pen.matrices[3] == S
        assert all(r.is_zero() for r in pencil_row_action(pen.matrices, basis))

        # 50 random hypothesis-satisfying combinations across several bases
        rng = random.Random(5150)
        configs = [
            (build_basis(3, (2, 2, 2)), 3),
            (build_basis(3, (2, 2, 2)), 1),
            (build_basis(2, (2, 2, 1)), 3),
            (build_basis(3, (2, 2, 1)), 3),
            (build_basis(2, (1, 2, 2)), 1),
        ]
        done = 0
        while done < 50:
            basis, axis = configs[done % len(configs)]
            cap = max(m[axis - 1] for m in basis.monomials)
            top = {
                i for i, m in enumerate(basis.monomials) if m[axis - 1] == cap
            }
            usable = [
                el
                for el in kernel_basis(basis)
                if not (set(el.support) & top) and axis not in el.move
            ]
            assert usable
            S = SymMatrix(len(basis.monomials))
            for el in rng.sample(usable, rng.randint(1, min(4, len(usable)))):
                weight = Fraction(rng.randint(-3, 3), rng.choice((1, 2)))
                S = S + el.matrix.scale(weight)
            pen = defect_completion(S, basis, axis)
            assert pen.matrices[axis] == S
            assert all(
                r.is_zero() for r in pencil_row_action(pen.matrices, basis)
            )
            done += 1


def test_criterion_5_certifier_soundness(capsys):
    with criterion(
        capsys,
        5,
        120,
        "50 random square sums certify with exact reconstruction",
    ):
        rng = random.Random(424242)
        for _ in range(50):
            d = rng.randint(1, 3)
            F = Polynomial.zero(d)
            for _ in range(rng.randint(1, 3)):
                ell = random_polynomial(
                    rng, d, rng.randint(0, 2), rng.randint(1, 3)
                )
                F = F + ell * ell
            cert = sos_certify(F)
            assert isinstance(cert, SosCertificate)
            total = Polynomial.zero(F.nvars)
            for weight, ell in cert.squares:
                total = total + ell * ell * Polynomial.constant(weight, F.nvars)
            assert total == F
            assert is_psd(cert.gram)


def test_criterion_6_motzkin_pipeline(capsys):
    with criterion(
        capsys,
        6,
        120,
        "Motzkin form refuted with dual margin, then certified with the "
        "degree-2 denominator",
    ):
        F = poly(MOTZKIN)
        outcome = sos_certify(F)
        assert isinstance(outcome, InfeasibilityEvidence)
        assert outcome.margin is not None and outcome.margin > 1e-6

        s = poly("z1^2 + z2^2")
        found = artin_certify(F, [s])
        assert found is not None
        s_found, cert = found
        assert s_found == s
        total = Polynomial.zero(2)
        for weight, ell in cert.squares:
            total = total + ell * ell * Polynomial.constant(weight, 2)
        assert total == s * s * F
        assert is_psd(cert.gram)


def test_criterion_7_realization(capsys):
    with criterion(
        capsys, 7, 30, "pencil realizations verified for both fixtures"
    ):
        fixtures = [
            (poly("-1", 1), poly("z1"), poly("1", 1)),
            (poly("-(z1 + z2)"), poly("z1*z2"), poly("1", 2)),
        ]
        for p, q, s in fixtures:
            r = wronskian_realization(p, q, s)
            ok, report = verify_realization(r)
            assert ok, report
            assert all(report.values())
            assert is_psd(r.pencil.matrices[1])


def test_criterion_8_crosscheck_agreement(capsys):
    with criterion(
        capsys, 8, 30, "crosscheck verdicts agree on the four-pair family"
    ):
        family = [
            (poly("-1", 1), poly("z1"), "AGREE_SOS_HERGLOTZ"),
            (poly("-(z1 + z2)"), poly("z1*z2"), "AGREE_SOS_HERGLOTZ"),
            (poly("1", 1), poly("z1"), "AGREE_NONSOS_NONHERGLOTZ"),
            (poly("z1*z2"), poly("1", 2), "AGREE_NONSOS_NONHERGLOTZ"),
        ]
        for p, q, expected in family:
            report = crosscheck_slice_criterion(p, q)
            assert report.verdict == expected
            if expected == "AGREE_SOS_HERGLOTZ":
                assert report.scan.min_im >= -1e-9
            else:
                assert report.scan.min_im < -1e-9


def test_criterion_9_herglotz_direction(capsys):
    with criterion(
        capsys,
        9,
        30,
        "certified-SOS Wronskians scan nonnegative on default grids",
    ):
        corpus = [
            (poly("-1", 1), poly("z1")),
            (poly("-(z1 + z2)"), poly("z1*z2")),
            (poly("-z2", 2), poly("z1*z2")),
            (poly("3*z1 + 1"), poly("z1 + 5")),
        ]
        for p, q in corpus:
            W = wronskian(q, p, 1)
            cert = sos_certify(W)
            assert isinstance(cert, SosCertificate)
            report = slice_scan(RationalFunction(p, q))
            assert report.min_im >= -1e-9
            assert report.verdict == "pass"
