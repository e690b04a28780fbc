import pytest

from src.algebra_core import FLAT_CLASSES, FlatClass, direct_product, is_skew_lattice, make_flat, trivial_algebra
from src.errors import ContractViolation, UnknownVarietyError
from src.structure import canonical_product
from src.varieties import (
    DEFINING_IDENTITIES,
    VARIETY_ATOMS,
    VARIETY_SYMBOLS,
    Variety,
    all_varieties,
    contains,
    membership,
    parse_variety,
    satisfies_defining_identities,
    subvarieties,
    variety_complement,
    variety_hasse_diagram,
    variety_join,
    variety_meet,
    variety_name,
)

LL, LR, RL, RR = FLAT_CLASSES


def test_naming_map_is_a_bijection():
    assert len(VARIETY_SYMBOLS) == 16
    assert len(set(VARIETY_ATOMS.values())) == 16
    assert {V.symbol for V in all_varieties()} == set(VARIETY_SYMBOLS)
    assert set(DEFINING_IDENTITIES) == set(VARIETY_SYMBOLS)


@pytest.mark.parametrize(
    "atoms, symbol",
    [
        ({LR, RL}, "s"),
        ({LL, RR}, "s*"),
        ({LL, LR, RL, RR}, "RA"),
        (set(), "1"),
        ({LL, LR}, "L*"),
        ({RL, RR}, "R*"),
        ({LL, RL}, "*L"),
        ({LR, RR}, "*R"),
        ({LL, RL, RR}, "LR^C"),
        ({RR}, "RR"),
    ],
)
def test_variety_names(atoms, symbol):
    assert variety_name(Variety(frozenset(atoms))) == symbol


def test_parse_variety():
    assert parse_variety(" s ") == Variety.from_atoms(["LR", "RL"])
    V = parse_variety("RR^C")
    assert parse_variety(V) is V
    assert V.name.startswith("complement of RR")
    assert str(V) == "RR^C"


def test_unknown_variety_lists_valid_symbols():
    with pytest.raises(UnknownVarietyError) as excinfo:
        parse_variety("S")
    assert excinfo.value.symbol == "S"
    assert "RR^C" in str(excinfo.value)
    assert isinstance(excinfo.value, ValueError)


@pytest.mark.parametrize(
    "A, symbol",
    [
        (make_flat(3, "RL"), "RL"),
        (canonical_product((2, 2, 2, 1)), "RR^C"),
        (trivial_algebra(), "1"),
        (canonical_product((2, 3, 1, 1)), "L*"),
        (canonical_product((2, 2, 2, 2)), "RA"),
    ],
)
def test_membership_examples(A, symbol):
    assert membership(A).symbol == symbol


def test_membership_needs_regular_input(witness4):
    with pytest.raises(ContractViolation):
        membership(witness4)


def test_contains_examples():
    skew = direct_product(make_flat(2, "LR"), make_flat(3, "RL"))
    assert contains("RA", skew)
    assert contains("s", skew)
    assert not contains("LL", make_flat(2, "RR"))
    assert contains("LL", trivial_algebra())


def test_defining_identity_examples(flats2):
    assert satisfies_defining_identities("s", flats2["LR"])
    assert satisfies_defining_identities("RR^C", canonical_product((2, 2, 2, 1)))
    assert not satisfies_defining_identities("RR^C", flats2["RR"])
    assert satisfies_defining_identities("1", trivial_algebra())
    assert not satisfies_defining_identities("1", flats2["LL"])


def test_defining_identities_match_membership(regular_by_order):
    for algebras in regular_by_order.values():
        for A in algebras:
            for V in all_varieties():
                assert satisfies_defining_identities(V, A) == contains(V, A), (V.symbol, A)


def test_membership_of_products_is_the_union(regular_by_order, rng):
    pool = [A for n in (1, 2, 3, 4, 6) for A in regular_by_order[n]]
    for _ in range(150):
        A = pool[int(rng.integers(len(pool)))]
        B = pool[int(rng.integers(len(pool)))]
        if A.n * B.n > 36:
            continue
        assert membership(direct_product(A, B)) == variety_join(membership(A), membership(B))


def test_skew_variety_members_are_skew_lattices(regular_by_order):
    for algebras in regular_by_order.values():
        for A in algebras:
            assert contains("s", A) == is_skew_lattice(A)


def test_lattice_operations():
    ll, lr, rr = (Variety.from_atoms([c]) for c in ("LL", "LR", "RR"))
    assert variety_join(ll, lr).symbol == "L*"
    assert variety_join(ll, rr).symbol == "s*"
    assert variety_complement(rr).symbol == "RR^C"
    assert variety_meet(parse_variety("L*"), parse_variety("s*")) == ll
    assert variety_complement(parse_variety("RA")).symbol == "1"


def test_lattice_laws_hold_for_all_pairs():
    varieties = all_varieties()
    for V in varieties:
        assert variety_complement(variety_complement(V)) == V
        assert variety_join(V, variety_complement(V)).symbol == "RA"
        for W in varieties:
            assert variety_meet(V, variety_join(V, W)) == V
            assert variety_join(V, W) == variety_join(W, V)


def test_subvarieties():
    subs = subvarieties(parse_variety("s"))
    assert [V.symbol for V in subs] == ["1", "LR", "RL", "s"]
    assert len(subvarieties(parse_variety("RA"))) == 16


def test_hasse_diagram_is_the_boolean_lattice():
    graph = variety_hasse_diagram()
    assert graph.number_of_nodes() == 16
    assert graph.number_of_edges() == 32
    assert graph.has_edge("LL", "L*")
    assert graph.edges["RR", "R*"]["atom"] == FlatClass.RL.value
    assert graph.nodes["s"]["atoms"] == ["LR", "RL"]
    assert graph.nodes["RA"]["rank"] == 4
    assert graph.in_degree("RA") == 4
    assert graph.out_degree("1") == 4
