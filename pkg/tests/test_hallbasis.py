from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from liedense.errors import ParseError, ResourceError, ValidationError
from liedense.hallbasis import (
    AlgebraElement,
    Bracket,
    Closure,
    Gen,
    GradedEchelon,
    Mode,
    PPower,
    Sum,
    closure,
    enumerate_basic_commutators,
    format_expr,
    free_lie_basis,
    gradedify,
    index_word,
    p_power_expr,
    parse_expr,
    to_associative,
    word_index,
)
from liedense.witt import restricted_dims, witt_dim, witt_dims

# --------------------------------------------------------------------------
# expressions


def test_parse_examples():
    e = parse_expr("x1 + [x1,x2]")
    assert isinstance(e, Sum) and {a for _, a in e.terms} == {Gen(1), Bracket(Gen(1), Gen(2))}
    assert parse_expr("P([x2,x1])") == PPower(Bracket(Gen(2), Gen(1)))
    assert parse_expr("2*[x2,[x2,x1]]", p=2) == Sum(())
    assert format_expr(parse_expr("2*[x2,[x2,x1]]", p=2)) == "0"


def test_left_normed_shorthand():
    assert parse_expr("[x2,x1,x1]") == Bracket(Bracket(Gen(2), Gen(1)), Gen(1))


@pytest.mark.parametrize("text,offset", [("[x1,x2", 6), ("x1 + ", 5), ("y1", 0), ("x1 x2", 3)])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.offset == offset


def test_generator_range_checked():
    with pytest.raises(ParseError):
        parse_expr("x3", d=2)


atoms = st.recursive(
    st.integers(1, 3).map(Gen),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: Bracket(*t)),
        inner.map(PPower),
    ),
    max_leaves=5,
)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.integers(-4, 4), atoms), max_size=4), st.sampled_from([2, 3, 5]))
def test_format_parse_roundtrip(terms, p):
    text = " + ".join(f"{c % p}*{format_expr(a)}" for c, a in terms) or "0"
    e = parse_expr(text, p=p)
    assert parse_expr(format_expr(e), p=p) == e


# --------------------------------------------------------------------------
# associative model


def test_word_index_roundtrip():
    for n in range(1, 5):
        for idx in range(3**n):
            assert word_index(index_word(idx, n, 3), 3) == idx


def test_to_associative_examples():
    assert to_associative(parse_expr("[x2,x1]"), 2, 3, 3).terms() == {(2, 1): 1, (1, 2): 2}
    assert to_associative(parse_expr("P(x1)"), 2, 2, 3).terms() == {(1, 1): 1}
    assert to_associative(parse_expr("x1 + [x1,x2]"), 2, 3, 3).terms() == {(1,): 1, (1, 2): 1, (2, 1): 2}


def test_truncation_drops_high_degrees():
    e = to_associative(parse_expr("[x1,[x1,x2]]"), 2, 2, 2)
    assert e.is_zero()


def _random_element(rng, d, p, N):
    blocks = {n: rng.integers(0, p, d**n) for n in range(1, N + 1) if rng.random() < 0.7}
    return AlgebraElement(d, p, N, blocks)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_antisymmetry_and_jacobi(p):
    rng = np.random.default_rng(7)
    for _ in range(10):
        a, b, c = (_random_element(rng, 2, p, 5) for _ in range(3))
        assert a.bracket(a).is_zero()
        assert (a.bracket(b) + b.bracket(a)).is_zero()
        jac = a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
        assert jac.is_zero()


@pytest.mark.parametrize("p", [2, 3])
def test_pmap_is_restricted(p):
    # ad(u^p) = ad(u)^p in characteristic p
    rng = np.random.default_rng(11)
    N = 7
    for _ in range(5):
        u = _random_element(rng, 2, p, 2)
        u = AlgebraElement(2, p, N, u.blocks)
        v = _random_element(rng, 2, p, 1)
        v = AlgebraElement(2, p, N, v.blocks)
        lhs = u.pmap().bracket(v)
        rhs = v
        for _ in range(p):
            rhs = u.bracket(rhs)
        assert lhs == rhs


# --------------------------------------------------------------------------
# basic commutators


def test_basic_commutator_examples():
    layers = enumerate_basic_commutators(2, 3)
    assert [str(c) for c in layers[0]] == ["x1", "x2"]
    assert [str(c) for c in layers[1]] == ["[x2,x1]"]
    assert [c.left_normed() for c in layers[2]] == ["[x2,x1,x1]", "[x2,x1,x2]"]
    assert [len(l) for l in enumerate_basic_commutators(1, 4)] == [1, 0, 0, 0]
    assert [str(c) for c in enumerate_basic_commutators(3, 2)[1]] == ["[x2,x1]", "[x3,x1]", "[x3,x2]"]


@pytest.mark.parametrize("d,wmax", [(2, 10), (3, 7), (4, 5)])
def test_basic_commutator_counts(d, wmax):
    layers = enumerate_basic_commutators(d, wmax)
    assert [len(l) for l in layers] == [witt_dim(d, n) for n in range(1, wmax + 1)]


def test_basic_commutators_are_basic():
    for layer in enumerate_basic_commutators(3, 6)[1:]:
        for c in layer:
            assert c.left.weight + c.right.weight == c.weight
            assert c.left.hall_index > c.right.hall_index
            if c.left.generator is None:
                assert c.right.hall_index >= c.left.right.hall_index


def test_enumeration_guard():
    with pytest.raises(ResourceError):
        enumerate_basic_commutators(5, 14)


@pytest.mark.parametrize("d,N", [(2, 10), (3, 6)])
def test_basic_commutator_images_form_basis(d, N):
    for n, layer in enumerate(enumerate_basic_commutators(d, N), start=1):
        ech = GradedEchelon(d, 2, N)
        for c in layer:
            assert ech.add(to_associative(c.to_expr(), d, 2, N)) is not None
        assert ech.leading_dims()[n - 1] == witt_dim(d, n)


@pytest.mark.parametrize("p", [2, 3])
def test_restricted_basis_independent(p):
    d, N = 2, 8
    layers = enumerate_basic_commutators(d, N)
    for n in range(1, N + 1):
        ech = GradedEchelon(d, p, N)
        i = 0
        while n % p**i == 0:
            for c in layers[n // p**i - 1]:
                assert ech.add(to_associative(p_power_expr(c, i), d, p, N)) is not None
            i += 1
        assert len(ech) == restricted_dims(d, p, N)[n]


# --------------------------------------------------------------------------
# closures


@pytest.mark.parametrize("d,p,N", [(2, 2, 10), (2, 3, 8), (3, 2, 6), (3, 3, 5)])
def test_free_closure_matches_witt(d, p, N):
    assert free_lie_basis(d, p, N).dims == witt_dims(d, N)
    assert free_lie_basis(d, p, N, restricted=True).dims == restricted_dims(d, p, N)


def test_closure_examples():
    assert closure(["x2"], 2, 2, 6, Mode.LIE_IDEAL).dims.as_list() == [1, 1, 2, 3, 6, 9]
    r = "[x1,x2] + [x3,x4]"
    assert closure([r], 4, 2, 3, Mode.RESTRICTED_IDEAL).dims.as_list() == [0, 1, 4]
    assert closure(["[x2,x1]"], 2, 2, 4).dims.as_list() == [0, 1, 0, 0]
    assert closure([], 2, 2, 4).dims.as_list() == [0, 0, 0, 0]
    gens = ["[x2,x1]", "[x2,x1,x1]", "[x2,x1,x2]"]
    assert closure(gens, 2, 2, 6).dims.as_list() == [0, 1, 2, 0, 2, 1]


def test_closure_rejects_inhomogeneous():
    with pytest.raises(ValidationError):
        closure(["x1 + [x1,x2]"], 2, 2, 4)


def test_resource_guard_names_degree():
    with pytest.raises(ResourceError, match="degree 11"):
        closure(["x1"], 4, 2, 11)


def test_incremental_closure_matches_batch():
    c = Closure(2, 2, 7)
    c.add_generators(["[x2,x1]"])
    c.add_generators(["x1"])
    assert c.dims() == closure(["[x2,x1]", "x1"], 2, 2, 7).dims


gen_pool = ["x1", "x2", "[x2,x1]", "[x2,x1,x1]", "[x2,x1,x2]", "P(x1)", "P([x2,x1])", "x1 + x2", "[x2,x1,x1] + [x2,x1,x2]"]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(gen_pool), max_size=3), st.sampled_from(gen_pool),
       st.sampled_from(["lie", "restricted", "lieIdeal", "restrictedIdeal"]))
def test_closure_monotone(gens, extra, mode):
    small = closure(gens, 2, 2, 6, mode).dims
    big = closure(gens + [extra], 2, 2, 6, mode).dims
    assert all(a <= b for a, b in zip(small, big))
    # every generator is a restricted Lie element
    assert all(b <= a for a, b in zip(restricted_dims(2, 2, 6), big))


def test_gradedify_homogeneous_matches_closure():
    gens = ["[x2,x1]", "x1"]
    rep = gradedify(gens, 2, 2, 7)
    assert rep.dims == closure(gens, 2, 2, 7).dims and rep.trust_horizon == 7


def test_gradedify_inhomogeneous_generator_gives_full_algebra():
    rep = gradedify(["x1 + [x1,x2]", "x2"], 2, 2, 8)
    assert rep.trust_horizon == 7
    assert [rep.dims[n] for n in range(1, 8)] == [witt_dim(2, n) for n in range(1, 8)]
    assert not rep.certified(8)


def test_gradedify_restricted_lie_part():
    N = 8
    rep = gradedify(["x1", "P(x2)"], 2, 2, N, "restricted")
    gens, e = ["x1"], "x1"
    for i in range(1, N):
        e = f"[{e},x2]"
        if i % 2 == 0:
            gens.append(e)
    assert rep.lie_dims == closure(gens, 2, 2, N).dims
    assert all(rep.lie_dims[n] >= 1 for n in range(1, N + 1, 2))
