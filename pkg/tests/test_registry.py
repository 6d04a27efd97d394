import pytest

from verlinde.registry import GroupSpecError, describe, levels_for, parse_group, parse_markings, parse_phi


@pytest.mark.parametrize(
    "name,types,order",
    [
        ("SU(3)", ["A2"], 1),
        ("PSU(3)", ["A2"], 3),
        ("SO(3)", ["A1"], 2),
        ("SO(5)", ["B2"], 2),
        ("Spin(7)", ["B3"], 1),
        ("SO(7)", ["B3"], 2),
        ("Spin(8)", ["D4"], 1),
        ("SO(8)", ["D4"], 2),
        ("SO(10)", ["D5"], 2),
        ("Sp(3)", ["C3"], 1),
        ("PSp(2)", ["C2"], 2),
        ("E6'", ["E6"], 3),
        ("E7′", ["E7"], 2),
        ("D4'", ["D4"], 4),
        ("G2", ["G2"], 1),
        ("SU(2)xSO(3)", ["A1", "A1"], 2),
        ("A1 × A2'", ["A1", "A2"], 3),
    ],
)
def test_named_groups(name, types, order):
    spec = parse_group(name)
    assert [str(d.lie_type) for d in spec.factors] == types
    assert spec.gamma.order == order
    assert spec.name in describe(spec)


def test_so_even_quotient_is_vector_kernel():
    spec = parse_group("SO(8)")
    (elem,) = [g for g in spec.gamma.elements if g != spec.gamma.identity]
    from verlinde.center import pairing_exponent

    assert pairing_exponent(spec.factors[0], elem[0], (1, 0, 0, 0)) == 0


def test_explicit_center():
    spec = parse_group("A1xA1", center="1,1")
    assert spec.gamma.order == 2
    assert (1, 1) in spec.gamma.elements


@pytest.mark.parametrize("bad", ["SU(1)", "SO(4)", "Q7", "", "SU(3", "A1xQ2"])
def test_bad_names(bad):
    with pytest.raises(GroupSpecError):
        parse_group(bad)


def test_markings_chunked_by_rank():
    spec = parse_group("A1xA2")
    assert parse_markings("1,0,1, 2,1,0", spec) == [((1,), (0, 1)), ((2,), (1, 0))]
    with pytest.raises(GroupSpecError):
        parse_markings("1,0", spec)


def test_phi_and_levels():
    assert parse_phi("1/0/2/0") == [[1], [0], [2], [0]]
    spec = parse_group("A1xA2")
    assert levels_for(spec, [3]) == (3, 3)
    with pytest.raises(GroupSpecError):
        levels_for(spec, [1, 2, 3])
