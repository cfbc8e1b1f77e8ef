from functools import reduce
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_is_saturated
from logkn.errors import EmptyMultiplicity, NotAHomomorphism, RankTooLarge
from logkn.intlin import IntegerMatrix
from logkn.monoid import (
    FsMonoid,
    MonoidHom,
    cokernel_of_gp,
    exactness_witness,
    good_model_chart,
    groupification,
    is_exact,
    is_kummer,
    is_saturated,
    kn_local_model,
    saturation_candidates,
)

nonneg_gens = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any), min_size=1, max_size=4
)


def test_parse_and_membership():
    P = FsMonoid.parse("2;3")
    assert P.rank == 1 and P.generators == ((2,), (3,))
    assert (5,) in P and (7,) in P and (1,) not in P
    assert FsMonoid.parse("1,0;0,0;1,0").generators == ((1, 0),)
    with pytest.raises(ValueError):
        FsMonoid.parse("1,0;1")


def test_numerical_semigroup_not_saturated():
    P = FsMonoid.parse("2;3")
    assert not is_saturated(P)
    model = kn_local_model(P)
    assert model.warnings and model.cone_dim == 1 and model.torus_rank == 1


def test_cone_examples():
    assert is_saturated(FsMonoid.free(3))
    # the A_1 cone: generators (1,0), (1,1), (1,2) are saturated
    assert is_saturated(FsMonoid.parse("1,0;1,1;1,2"))
    # (1,1) is not in the group, so this one is saturated too
    assert is_saturated(FsMonoid.parse("1,0;1,2"))
    # here the group is Z^2 and (1,2) is a hole
    P = FsMonoid.parse("1,0;1,1;1,3")
    assert not is_saturated(P)
    assert (1, 2) in saturation_candidates(P) and (1, 2) not in P


@settings(max_examples=80, deadline=None)
@given(nonneg_gens)
def test_saturation_matches_brute_force(gens):
    P = FsMonoid(2, tuple(gens))
    # parallelepiped points have entries below the sum of two generators
    box = 2 * max(max(g) for g in gens)
    assert is_saturated(P) == brute_is_saturated(P.generators, box, 18)


def test_groupification():
    assert groupification(FsMonoid.free(2)).rank == 2
    assert groupification(FsMonoid.parse("2,0;4,0")).rank == 1
    assert groupification(FsMonoid(2)).rank == 0


def test_rank_cap():
    with pytest.raises(RankTooLarge):
        is_saturated(FsMonoid.free(5))


@pytest.mark.parametrize("a", [[1], [2], [1, 1], [1, 2, 3], [2, 2]])
def test_good_model_charts_are_exact(a):
    f = good_model_chart(a)
    assert is_exact(f)
    assert is_kummer(f) == (len(a) == 1)
    coker = cokernel_of_gp(f)
    g = reduce(gcd, a)
    assert coker.rank == len(a) - 1
    assert coker.torsion == ((g,) if g > 1 else ())


def test_non_exact_map_has_witness():
    P = FsMonoid.free(2)
    f = MonoidHom(P, P, IntegerMatrix.from_rows([[1, 0], [1, 1]]))
    assert not is_exact(f)
    x = exactness_witness(f)
    assert f.target.contains(f(x)) and not P.contains(x)


def test_bad_charts():
    with pytest.raises(EmptyMultiplicity):
        good_model_chart([])
    with pytest.raises(EmptyMultiplicity):
        good_model_chart([1, 0])
    with pytest.raises(NotAHomomorphism):
        MonoidHom(FsMonoid.free(1), FsMonoid.free(1), IntegerMatrix.from_rows([[-1]]))
    with pytest.raises(NotAHomomorphism):
        MonoidHom(FsMonoid.free(1), FsMonoid.free(2), IntegerMatrix.from_rows([[1]]))


def test_kn_local_model_descriptions():
    assert kn_local_model(FsMonoid(1)).describe() == "point"
    assert kn_local_model(FsMonoid.free(1)).describe() == "cone of dim 1 x S^1"
    m = kn_local_model(FsMonoid.free(2))
    assert (m.cone_dim, m.torus_rank, m.components, m.warnings) == (2, 2, 1, ())
