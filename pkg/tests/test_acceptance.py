"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL ...`` line, visible in
a plain ``pytest -v`` run.  ``python tests/test_acceptance.py`` runs the
same checks without pytest and prints the same lines.
"""

import time

import pytest

from rcforge import verify as V


def _line(n, title, ok, detail):
    return f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"


def _emit(capsys, text):
    if capsys is None:
        print(text)
        return
    with capsys.disabled():
        print("\n" + text)


def criterion_1():
    rep = V.verify_reconstruction(grid=(4, 4, 5), tol=1e-9, seed=7, n_polys=3, n_points=5, bidegree=6)
    return rep.passed, f"{len(rep.rows)} integrals, max scaled residual {rep.max_abs_residual:.2e} (tol 1e-9)"


def criterion_2():
    rep = V.verify_closed_form_operator(grid=(3, 3, 6), tol=1e-7, vanish_tol=1e-8, seed=7, n_polys=2, n_points=3)
    match = [r["residual"] for r in rep.rows if r["check"] == "match"]
    vanish = [r["residual"] for r in rep.rows if r["check"] == "vanish"]
    return rep.passed, (f"{len(match)} coefficients, max rel {max(match):.2e} (tol 1e-7); "
                        f"{len(vanish)} above degree, max {max(vanish):.2e} (tol 1e-8)")


def criterion_3():
    rep = V.verify_series_operator(grid=(3, 3, 5), tol=1e-7, seed=7, convention="both")
    corrected = [r for r in rep.rows if r["convention"] == "corrected"]
    printed = [r for r in rep.rows if r["convention"] == "printed" and r["residual"] is not None]
    seqs = sorted({r["sequence"] for r in corrected})
    ok = rep.passed and len(seqs) == 3 and len(printed) > 0
    worst = max(r["residual"] for r in corrected)
    worst_sign = max(r["residual"] for r in printed)
    return ok, (f"sign-corrected h: {len(corrected)} coefficients over {seqs}, max rel {worst:.2e} (tol 1e-7); "
                f"printed h: {len(printed)} ratios equal (-1)^(l1+l-1) within {worst_sign:.2e}")


def criterion_4():
    rep = V.verify_kernel_expansion(n_configs=20, seed=7)
    ratios = [r["measured_ratio"] / r["predicted_ratio"] for r in rep.rows]
    return rep.passed, f"20 configurations, measured/predicted ratio in [{min(ratios):.3f}, {max(ratios):.3f}] (need [0.5, 2])"


def criterion_5():
    inf = V.verify_covariance("infinitesimal", grid=(4, 4, 4), max_total=6)
    grp = V.verify_covariance("group", grid=(4, 4, 4), seed=7, n_group=20, max_total=6)
    ok = inf.passed and grp.passed
    return ok, (f"infinitesimal {len(inf.rows)} cells x 28 monomials, group {len(grp.rows)} cells x 28 monomials; "
                f"all residuals exact-zero: {ok}")


def criterion_6():
    transform_rep = V.verify_covariance("transform", grid=(3, 3, 3), tol=1e-8, seed=7, n_configs=10)
    series_rep = V.verify_covariance("kernel_series", grid=(3, 3, 3), tol=1e-10, seed=7, n_configs=50)
    ok = transform_rep.passed and series_rep.passed and len(transform_rep.rows) == 9 * 4 * 10 and len(series_rep.rows) == 50
    return ok, (f"transform covariance {len(transform_rep.rows)} configs max {transform_rep.max_abs_residual:.2e} (tol 1e-8); "
                f"kernel series covariance {len(series_rep.rows)} configs max {series_rep.max_abs_residual:.2e} (tol 1e-10)")


def criterion_7():
    rep = V.verify_covariance("kernel", tol=1e-12, seed=7, n_configs=100, convention="both")
    configs = rep.rows[:-1]
    unequal = sum(1 for r in configs if r["l1"] != r["l2"])
    summary = rep.rows[-1]
    ok = rep.passed and len(configs) == 100 and unequal > 0
    return ok, (f"corrected exponents: 100 configs ({unequal} with l1 != l2), max {rep.max_abs_residual:.1e} "
                f"(tol 1e-12); printed exponents: max residual {summary['max_printed_residual']:.3e} (> 1e-3)")


def criterion_8():
    rep = V.verify_jacobi(grid=(5, 5, 8), tol=1e-10, L=40)
    gen = [r for r in rep.rows if "genfun_max_err" in r]
    legendre = [r for r in gen if "legendre_err" in r]
    ok = rep.passed and len(gen) == 9 and len(legendre) > 0
    return ok, (f"{len(rep.rows) - len(gen)} (weights, l) cells with ratio (-1)^l and zero ODE residual; "
                f"{len(gen)} generating-function points, max err {max(r['genfun_max_err'] for r in gen):.2e} (tol 1e-10)")


def criterion_9():
    rep = V.verify_constants(lmax=20, eps=1e-5, limit_tol=1e-3, limit_lmax=5, asym_tol=0.02)
    lim = max(r["residual"] for r in rep.rows if r["check"] == "limit_11")
    asym = max(r["residual"] for r in rep.rows if r["check"] == "asymptotic")
    return rep.passed, (f"a^2 c r = 1 on 400 rows; limit rel err {lim:.2e} (tol 1e-3); "
                        f"|ratio(2000) - 1| <= {asym:.4f} (tol 0.02); unit sequence radius ~ 0")


def criterion_10():
    rep = V.verify_injectivity(dmax=4, grid=(4, 4))
    return rep.passed, f"rank (d+1)^2 for d <= 4 on {len(rep.rows) // 5} weight pairs, exact rationals"


CRITERIA = [
    (1, "bracket reconstruction by double contour integral", criterion_1),
    (2, "closed-form generating operator", criterion_2),
    (3, "generating operator from a kernel series", criterion_3),
    (4, "geometric decay of the kernel expansion", criterion_4),
    (5, "covariance, exact tier", criterion_5),
    (6, "covariance, quadrature tier", criterion_6),
    (7, "kernel transformation exponents", criterion_7),
    (8, "Jacobi correspondence", criterion_8),
    (9, "normalising constants", criterion_9),
    (10, "injectivity at truncation", criterion_10),
]


@pytest.mark.parametrize("n, title, check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_acceptance(n, title, check, capsys):
    start = time.perf_counter()
    ok, detail = check()
    _emit(capsys, _line(n, title, ok, f"{detail} [{time.perf_counter() - start:.1f}s]"))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, title, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        _emit(None, _line(n, title, ok, detail))
    raise SystemExit(1 if failed else 0)
