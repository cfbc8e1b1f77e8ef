import pytest

from logkn.degen import good_reduction, tate_ngon
from logkn.intlin import AbelianGroup, IntegerMatrix
from logkn.etalecmp import (
    CohomologyTable,
    compare_log_point,
    compare_tables,
    group_cohomology_Zr_mod_n,
    koszul_complex,
    mapping_torus_mod_n_report,
    torus_cohomology_mod_n,
    universal_coefficients,
)
from math import comb


@pytest.mark.parametrize("r", range(5))
def test_torus_ranks_are_binomial(r):
    assert torus_cohomology_mod_n(r, 3).ranks == [comb(r, i) for i in range(r + 1)]


def test_group_side_differs_when_ranks_differ():
    assert not compare_tables(torus_cohomology_mod_n(2, 2), group_cohomology_Zr_mod_n(3, 2))
    assert compare_log_point(3, 6)


def test_koszul_with_action():
    # Z acting on Z/4 by -1: invariants and coinvariants are both Z/2
    minus = IntegerMatrix.from_rows([[-1]])
    assert group_cohomology_Zr_mod_n(1, 4, [minus]).orders == ((2,), (2,))
    assert group_cohomology_Zr_mod_n(1, 3, [minus]).orders == ((), ())
    # the boundary really is (A - 1) transposed
    C = koszul_complex(1, [minus])
    assert C.boundaries[0].to_rows() == [[-2]]


def test_koszul_rejects_bad_actions():
    A = IntegerMatrix.from_rows([[1, 1], [0, 1]])
    B = IntegerMatrix.from_rows([[1, 0], [1, 1]])
    with pytest.raises(ValueError):
        koszul_complex(2, [A, B])
    with pytest.raises(ValueError):
        koszul_complex(2, [A])


def test_universal_coefficients_with_torsion():
    rp2 = [AbelianGroup(1), AbelianGroup(0, (2,))]
    assert universal_coefficients(rp2, 2).orders == ((2,), (2,), (2,))
    assert universal_coefficients(rp2, 3).orders == ((3,), (), ())


def test_table_validation():
    with pytest.raises(ValueError):
        CohomologyTable(1, ((1,),))
    t = CohomologyTable(4, ((4,), (4, 2), ()))
    assert t.ranks == [1, 1, 0] and not t.is_free() and t.size(1) == 8
    assert t.trimmed().orders == ((4,), (4, 2))


@pytest.mark.parametrize("g,n", [(tate_ngon(1), 2), (tate_ngon(4), 2), (tate_ngon(4), 4), (good_reduction(1), 3)])
def test_mapping_torus_examples(g, n):
    rep = mapping_torus_mod_n_report(g, n)
    assert rep.passed
    assert rep.torsor_count == rep.expected_torsor_count


def test_tate_torsion_shows_up_mod_n():
    # H_1 of the mapping torus for the 4-gon is Z^2 + Z/4
    rep = mapping_torus_mod_n_report(tate_ngon(4), 2)
    assert rep.direct.orders[1] == (2, 2, 2)
    assert rep.torsor_count == 8
