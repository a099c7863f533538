from fractions import Fraction

import pytest

from quadcong.arith import kronecker, primes_up_to
from quadcong.congruence import (
    CONJECTURE_OBSERVED_LIMIT,
    CongruenceRow,
    decomposition_sum,
    default_jobs,
    parallel_map,
    primes_3mod4,
    psi_pair,
    redei_4rank,
    row,
    row_failures,
    square_decomposition,
    structure_report,
    sweep,
    table_rows,
    thm11_pair,
    thm11_pairs,
    verify_thm11,
)
from quadcong.orders import class_number_imag, fundamental_unit


@pytest.mark.parametrize("p,pair", [(3, (7, 1)), (163, (63, 9)), (967, (192, 60)), (7, (12, 0))])
def test_psi_pair(p, pair):
    assert psi_pair(p) == pair


@pytest.mark.parametrize("bad", [5, 9, 13, 15, 2])
def test_psi_pair_rejects(bad):
    with pytest.raises(ValueError):
        psi_pair(bad)


def test_row_p3():
    r = row(3)
    assert (r.H1, r.H2) == (0, Fraction(8, 3))
    assert (r.H1_fact, r.H2_fact) == ("0", "2^3·3^-1")
    assert r.thm12_ok and r.thm13_ok and r.conj_ok and r.thm_redei_ok
    assert r.h32p == 2


def test_row_p491():
    r = row(491)
    assert (r.H1, r.H2) == (160, 360)
    assert (r.H1_fact, r.H2_fact) == ("2^5·5", "2^3·3^2·5")


def test_row_p823():
    r = row(823)
    assert (r.H1, r.H2) == (64, 292)
    assert r.H2_fact == "2^2·73"
    assert r.thm13_ok


def test_row_definitions_recomputed():
    for p in (7, 11, 71, 127, 163):
        r = row(p)
        assert r.H1 == Fraction(r.h8p * (r.psi1 - r.psi2), 3) - r.hneg8p
        assert r.H2 == Fraction(2 * r.h8p * r.psi1, 3) - r.hneg8p
        assert r.H1.denominator == r.H2.denominator == 1
        d = r.to_dict()
        assert d["H1"] == str(r.H1) and d["p"] == p
    assert isinstance(row(7), CongruenceRow)


@pytest.mark.parametrize("p,rank,matrix,h", [(3, 0, ((1, 1), (1, 1)), 2), (7, 1, ((0, 0), (0, 0)), 4),
                                              (71, 1, ((0, 0), (0, 0)), 4)])
def test_redei_examples(p, rank, matrix, h):
    assert redei_4rank(p) == (rank, matrix)
    assert class_number_imag(-8 * p) == h


def test_redei_matrix_entries_from_kronecker():
    for p in primes_3mod4(3, 2000):
        rank, m = redei_4rank(p)
        assert m[0][0] == (1 - kronecker(2, p)) // 2
        assert m[1][0] == (1 - kronecker(-p, 2)) // 2
        # rank over F2 of a 2x2 matrix
        det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % 2
        rk = 2 if det else (1 if any(any(x % 2 for x in r) for r in m) else 0)
        assert rank == 1 - rk
        assert (rank == 0) == (class_number_imag(-8 * p) % 4 == 2) == (p % 8 == 3)


@pytest.mark.parametrize("case,p_pair", [("i", (-4, -7)), ("i", (-4, -3)), ("iii", (-3, -7))])
def test_thm11_examples(case, p_pair):
    res = thm11_pair(p_pair)
    assert res.ok
    if p_pair == (-4, -7):
        assert res.lhs == 3
    if p_pair == (-4, -3):
        assert res.lhs == 1 and res.rhs == 1
    if p_pair == (-3, -7):
        assert res.lhs == 2
    assert p_pair in thm11_pairs(case, 7)


def test_thm11_pairs_cases():
    assert thm11_pairs("i", 11) == [(-4, -3), (-4, -7), (-4, -11)]
    assert thm11_pairs("ii", 13) == [(-4, -20), (-4, -52)]
    assert thm11_pairs("iii", 11) == [(-3, -7), (-3, -11), (-7, -11)]
    assert thm11_pairs("iii", 11, max_delta=25) == [(-3, -7)]
    with pytest.raises(ValueError):
        thm11_pairs("iv", 10)


def test_verify_thm11_small():
    for case in ("i", "ii", "iii"):
        results = verify_thm11(case, 200, jobs=1)
        assert results and all(r.ok for r in results)


def test_sweep_examples():
    rows = sweep(3, 23)
    assert [r.p for r in rows] == [3, 7, 11, 19, 23]
    assert [r.p for r in sweep(3, 3)] == [3]
    with pytest.raises(ValueError):
        sweep(10, 3)
    with pytest.raises(ValueError):
        sweep(3, 10, "bogus")


def test_sweep_conjecture_range():
    rows = sweep(3, 1000, "conj", jobs=1)
    assert len(rows) == 87
    assert not any(row_failures(r, "conj") for r in rows)


def test_row_failures_ignores_conjecture_beyond_range():
    r = row(3)
    fake = CongruenceRow(p=CONJECTURE_OBSERVED_LIMIT + 19, p_mod8=3, psi1=0, psi2=0, h8p=1, hneg8p=16,
                         h32p=2, H1=Fraction(16), H2=Fraction(0), thm12_ok=True, thm13_ok=True,
                         conj_ok=False, thm_redei_ok=True)
    assert row_failures(fake, "all") == []
    early = CongruenceRow(**{**{k: getattr(r, k) for k in ("p", "p_mod8", "psi1", "psi2", "h8p", "hneg8p",
                                                               "h32p", "H1", "H2", "thm12_ok", "thm13_ok",
                                                               "thm_redei_ok")}, "conj_ok": False})
    assert row_failures(early, "conj") == ["conj_ok"]


def test_parallel_map_order_and_env(monkeypatch):
    items = list(range(20))
    assert parallel_map(abs, items, jobs=2) == items
    monkeypatch.setenv("QUADCONG_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.delenv("QUADCONG_JOBS")
    assert default_jobs() >= 1


def test_sweep_parallel_matches_serial():
    assert sweep(3, 300, jobs=2) == sweep(3, 300, jobs=1)


def test_decomposition_identity():
    for p in primes_3mod4(3, 500):
        assert decomposition_sum(p) == class_number_imag(-8 * p)


def test_square_decomposition():
    for p in (3, 7, 11, 163, 967):
        X, Y = square_decomposition(p)
        q, r, _ = fundamental_unit(32 * p)
        # 2 (q + r sqrt(8p)) = (X + Y sqrt(2p))^2  <=>  2q = X^2 + 2p Y^2 and 2r = X Y
        assert 2 * q == X * X + 2 * p * Y * Y
        assert 2 * r == X * Y


def test_structure_reports():
    for p in primes_3mod4(3, 600):
        rep = structure_report(p)
        assert rep.ok, rep


def test_table_row_sets():
    assert [r.p for r in table_rows("A1")] == [3, 7, 11, 19, 23]
    assert [r.p for r in table_rows("A2")] == [163, 467, 491, 563, 739, 827, 883]
    assert [r.p for r in table_rows("A3")] == [71, 127, 647, 743, 823, 967]
    with pytest.raises(ValueError):
        table_rows("A4")


def test_primes_3mod4():
    assert primes_3mod4(3, 23) == [3, 7, 11, 19, 23]
    assert len(primes_3mod4(3, 1000)) == sum(1 for p in primes_up_to(1000) if p % 4 == 3) == 87
