import json
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import naive_bicyclic_ball, rewrite_pq
from soficmon.errors import BudgetError, DomainError, ValidationError
from soficmon.monoids import (
    Bicyclic,
    FiniteMonoid,
    FiniteMonoidHandle,
    FiniteSemigroup,
    FreeCommutativeMonoid,
    FreeMonoid,
    Naturals,
    ProductMonoid,
    adjoin_identity,
    associativity_witness,
    bicyclic_opposite_isomorphism,
    bicyclic_rewriting,
    builtin_handle,
    cyclic_group,
    elements_ball,
    folner_interior,
    full_map_monoid,
    handle_from_spec,
    idempotent_monoid,
    is_left_cancellative,
    is_right_cancellative,
    klein_four_handle,
    left_regular_embedding,
    left_zero_semigroup,
    map2_monoid,
    multiply,
    right_regular_embedding,
    right_zero_semigroup,
    word_length,
)
from soficmon.transform import DIAGRAMMATIC, STANDARD, compose

B = Bicyclic()
words = st.text(alphabet="pq", max_size=20)


def test_associativity_witness():
    assert associativity_witness([[0, 0], [0, 0]]) is None
    # x*y = y+1 mod 2 is not associative
    bad = [[1, 0], [1, 0]]
    w = associativity_witness(bad)
    x, y, z = w
    assert bad[bad[x][y]][z] != bad[x][bad[y][z]]
    with pytest.raises(ValidationError) as info:
        FiniteSemigroup(bad)
    assert info.value.witness == w


def test_table_validation():
    with pytest.raises(ValidationError):
        FiniteSemigroup([[0, 1]])
    with pytest.raises(ValidationError):
        FiniteSemigroup([[2]])
    with pytest.raises(ValidationError):
        FiniteMonoid([[0, 0], [0, 0]], 0)
    with pytest.raises(ValidationError):
        FiniteMonoid([[0]], 0, ["a", "b"])


@pytest.mark.parametrize("n,size", [(1, 1), (2, 4), (3, 27)])
def test_full_map_sizes(n, size):
    for conv in (STANDARD, DIAGRAMMATIC):
        assert full_map_monoid(n, conv).size == size


def test_full_map_budget():
    with pytest.raises(BudgetError):
        full_map_monoid(5)


def test_cancellativity():
    assert is_left_cancellative(cyclic_group(4)) and is_right_cancellative(cyclic_group(4))
    lz = left_zero_semigroup(2)
    assert not is_left_cancellative(lz) and is_right_cancellative(lz)
    rz = right_zero_semigroup(2)
    assert is_left_cancellative(rz) and not is_right_cancellative(rz)
    assert not is_left_cancellative(full_map_monoid(2))
    assert idempotent_monoid().left_cancellative == "no"
    assert Naturals().left_cancellative == "yes"
    assert B.left_cancellative == "no"


@pytest.mark.parametrize("m", [cyclic_group(3), full_map_monoid(2), adjoin_identity(left_zero_semigroup(3))])
def test_regular_embeddings_are_morphisms(m):
    left, right = left_regular_embedding(m), right_regular_embedding(m)
    for x, y in product(range(m.size), repeat=2):
        assert left[m.mul(x, y)] == compose(left[x], left[y], STANDARD)
        assert right[m.mul(x, y)] == compose(right[x], right[y], DIAGRAMMATIC)
    assert left[m.identity].is_identity() and right[m.identity].is_identity()
    assert len(set(left.values())) == m.size


def test_adjoin_identity():
    m = adjoin_identity(left_zero_semigroup(2))
    assert m.size == 3 and m.identity == 2 and m.names[2] == "1"
    assert m.mul(0, 1) == 0 and m.mul(2, 1) == 1


def test_bicyclic_normal_forms():
    assert B.normalize("pq") == B.identity()
    assert B.normalize("qp").normal_form == (1, 1)
    assert B.normalize("ppqqq").label == "q"
    assert B.pair(2, 1).label == "qqp"
    with pytest.raises(DomainError):
        B.pair(-1, 0)


@given(words, words)
def test_bicyclic_closed_form_matches_rewriting(u, v):
    prod = multiply(B.normalize(u), B.normalize(v))
    assert prod.label == (rewrite_pq(u + v) or "1")
    r = bicyclic_rewriting()
    assert r.multiply(r.normalize(u), r.normalize(v)).label == prod.label


@pytest.mark.parametrize("r", range(9))
def test_bicyclic_ball_sizes(r):
    ball = elements_ball(B, r)
    assert len(ball) == (r + 1) * (r + 2) // 2
    assert {e.label for e in ball} == {w or "1" for w in naive_bicyclic_ball(r)}


def test_bicyclic_ball_order():
    assert [e.label for e in elements_ball(B, 2)] == ["1", "p", "q", "pp", "qp", "qq"]
    assert word_length(B, B.pair(2, 3)) == 5


@given(words, words)
def test_bicyclic_anti_automorphism(u, v):
    x, y = B.normalize(u), B.normalize(v)
    phi = bicyclic_opposite_isomorphism
    assert phi(x * y) == phi(y) * phi(x)


@given(words, words)
def test_opposite_multiplication(u, v):
    op = B.opposite()
    x, y = op.normalize(u), op.normalize(v)
    # a word read in the opposite monoid is its reversal read in the base
    assert (x * y).label == (B.normalize(v[::-1]) * B.normalize(u[::-1])).label
    assert op.opposite() == B


@given(words, words)
def test_rewriting_opposite_matches_generic(u, v):
    r = bicyclic_rewriting()
    rop, gop = r.opposite(), B.opposite()
    # the reversed system writes each element as the reversal of its base label
    via_rules = (rop.normalize(u) * rop.normalize(v)).label
    assert via_rules[::-1] == (gop.normalize(u) * gop.normalize(v)).label


def test_finite_opposite():
    h = map2_monoid()
    op = h.opposite()
    for x, y in product(h.all_elements(), repeat=2):
        assert op.multiply(op.at(h.index(x)), op.at(h.index(y))).label == (y * x).label


def test_foreign_elements_rejected():
    with pytest.raises(DomainError):
        multiply(B.identity(), Naturals().identity())
    with pytest.raises(DomainError):
        B.normalize((5,))


def test_handles_equal_across_rebuilds():
    assert idempotent_monoid() == idempotent_monoid()
    assert hash(map2_monoid()) == hash(map2_monoid())
    assert Naturals() != B
    h = map2_monoid()
    assert handle_from_spec(json.loads(json.dumps(h.to_json()))) == h


@pytest.mark.parametrize("name", ["naturals", "bicyclic", "idempotent", "map2", "klein", "z5", "free:ab"])
def test_builtin_roundtrip(name):
    h = builtin_handle(name)
    assert handle_from_spec(json.loads(json.dumps(h.to_json()))) == h


def test_spec_errors():
    with pytest.raises(ValidationError):
        builtin_handle("nope")
    with pytest.raises(ValidationError):
        handle_from_spec({"kind": "finite", "table": [[0]]})
    with pytest.raises(ValidationError):
        handle_from_spec({"kind": "mystery"})


def test_map2_cayley_edges():
    h = map2_monoid()
    a, c0, c1 = h.parse("a"), h.parse("c0"), h.parse("c1")
    assert c0 * a == c1 and c1 * a == c0
    assert a * c0 == c0 and c1 * c0 == c0
    assert len(elements_ball(h, 2)) == 4


def test_free_and_commutative():
    f = FreeMonoid(["a", "b"])
    assert len(elements_ball(f, 3)) == 15
    fc = FreeCommutativeMonoid(2)
    assert fc.normalize("x1x2") == fc.normalize("x2x1")
    assert len(elements_ball(fc, 3)) == 10


def test_product_monoid():
    p = ProductMonoid(Naturals(), idempotent_monoid())
    assert p.generators == ("(1,1)", "(0,a)")
    e = p.parse("(2,a)")
    assert e.label == "(2,a)"
    assert len(elements_ball(p, 2)) == 5
    assert p.left_cancellative == "no"
    with pytest.raises(ValidationError):
        p.parse("2,a")


def test_klein():
    k = klein_four_handle()
    assert len(elements_ball(k, 2)) == 4
    assert all((x * x) == k.identity() for x in k.all_elements())


def test_finite_parse_by_name_or_word():
    h = map2_monoid()
    assert h.parse("c0a") == h.parse("c1")
    assert h.parse("1") == h.identity()
    assert [e.label for e in h.sorted(h.all_elements())][0] == "1"


def test_folner_naturals():
    n = Naturals()
    omega = [n.value(i) for i in range(10)]
    k = [n.value(i) for i in range(3)]
    assert [e.label for e in folner_interior(n, omega, k)] == [str(i) for i in range(8)]


def test_folner_finite_group_is_everything():
    h = FiniteMonoidHandle(cyclic_group(5), {"1": 1})
    everything = h.all_elements()
    assert folner_interior(h, everything, everything) == h.sorted(everything)
