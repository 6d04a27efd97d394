import pytest

from verlinde.rootdata import LieType, LieTypeError, build_root_datum, level_weights, weyl_dimension, weyl_group_elements

# (type, |R+|, dual Coxeter, |Z|, dim g)
KNOWN = [
    ("A1", 1, 2, 2, 3),
    ("A2", 3, 3, 3, 8),
    ("A3", 6, 4, 4, 15),
    ("B2", 4, 3, 2, 10),
    ("B3", 9, 5, 2, 21),
    ("C3", 9, 4, 2, 21),
    ("D4", 12, 6, 4, 28),
    ("G2", 6, 4, 1, 14),
    ("F4", 24, 9, 1, 52),
    ("E6", 36, 12, 3, 78),
    ("E7", 63, 18, 2, 133),
    ("E8", 120, 30, 1, 248),
]


@pytest.mark.parametrize("name,npos,hv,zorder,dim", KNOWN)
def test_classical_invariants(name, npos, hv, zorder, dim):
    d = build_root_datum(name)
    assert d.num_positive_roots == npos
    assert d.dual_coxeter == hv
    assert d.center_order == zorder
    assert d.dimension == dim


@pytest.mark.parametrize("name", ["A2", "B2", "C3", "G2", "D4"])
def test_highest_root_is_long_with_norm_two(name):
    d = build_root_datum(name)
    assert d.norm2(d.highest_root) == 2
    assert all(m >= 1 for m in d.marks) and all(m >= 1 for m in d.comarks)
    assert sum(d.comarks) + 1 == d.dual_coxeter


def test_parse_and_reject():
    assert str(LieType.parse("e7")) == "E7"
    for bad in ("B1", "C1", "D2", "E9", "G3", "X2", ""):
        with pytest.raises(LieTypeError):
            LieType.parse(bad)


@pytest.mark.parametrize("name,k,count", [("A1", 5, 6), ("A2", 3, 10), ("B2", 2, 6), ("G2", 1, 2), ("E8", 1, 1)])
def test_level_weight_counts(name, k, count):
    assert len(level_weights(build_root_datum(name), k)) == count


def test_weyl_dimension():
    a2 = build_root_datum("A2")
    assert weyl_dimension(a2, (1, 1)) == 8
    assert weyl_dimension(a2, (3, 0)) == 10
    g2 = build_root_datum("G2")
    assert sorted(weyl_dimension(g2, w) for w in [(1, 0), (0, 1)]) == [7, 14]


@pytest.mark.parametrize("name", ["A3", "B2", "G2"])
def test_weyl_group_order_and_longest(name):
    d = build_root_datum(name)
    els = list(weyl_group_elements(d))
    assert len(els) == d.lie_type.weyl_order
    w0 = d.longest_element
    assert w0.length == d.num_positive_roots
    assert len(set(els)) == len(els)
    assert (w0 * w0).is_identity()


def test_dual_weight_is_involution():
    for name in ("A3", "D5", "E6", "B3"):
        d = build_root_datum(name)
        for mu in level_weights(d, 2):
            assert d.dual_weight(d.dual_weight(mu)) == mu
    e6 = build_root_datum("E6")
    assert e6.dual_weight((1, 0, 0, 0, 0, 0)) != (1, 0, 0, 0, 0, 0)
