"""Both translation directions, checked against the dense oracle."""
import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from zhdd.algebra import canonical_from_vector
from zhdd.config import Settings
from zhdd.duality import to_state_form
from zhdd.errors import ResourceLimitError, ShapeError
from zhdd.generate import random_dag, random_term, random_vector
from zhdd.network import flatten_to_network
from zhdd.oracle import (
    interpret_sqmdd,
    interpret_zh,
    interpret_zh_state,
    max_deviation,
)
from zhdd.reduction import is_irreducible, reduce_diagram
from zhdd.sqmdd import iso_equal, validate
from zhdd.terms import Gen, HBox, NotXSpider, ZSpider, par, seq, wires
from zhdd.translate import (
    generator_state_sqmdd,
    ket0_propagate,
    sqmdd_read_back,
    sqmdd_to_zh,
    zh_to_sqmdd,
)

WIDE = Settings(max_qubits=24)


# --- diagram -> term ----------------------------------------------------------


@given(seed=st.integers(0, 2**32 - 1), mode=st.sampled_from(["monoid", "x"]))
def test_emitted_term_denotes_the_diagram(seed, mode):
    rng = np.random.default_rng(seed)
    d = random_dag(rng, 1 + seed % 6, settings=WIDE)
    t = sqmdd_to_zh(d, WIDE, fan_in=mode)
    assert t.n_in == 0 and t.n_out == d.height
    got = interpret_zh(t, WIDE).reshape(-1)
    assert max_deviation(got, interpret_sqmdd(d, WIDE)) <= 1e-9


def test_emitter_rejects_unknown_fan_in():
    d = canonical_from_vector(np.arange(1, 5, dtype=complex))
    with pytest.raises(ShapeError):
        sqmdd_to_zh(d, fan_in="xspider")


@given(seed=st.integers(0, 2**32 - 1))
def test_read_back_inverts_emission(seed):
    """to-zh output is structured enough to parse right back."""
    rng = np.random.default_rng(seed)
    d = reduce_diagram(random_dag(rng, 1 + seed % 5, settings=WIDE), WIDE)[0]
    t = sqmdd_to_zh(d, WIDE)
    back = sqmdd_read_back(t, WIDE)
    assert iso_equal(back, d)


# --- term -> diagram ----------------------------------------------------------


@given(seed=st.integers(0, 2**32 - 1))
def test_contraction_is_exact_and_irreducible(seed):
    rng = np.random.default_rng(seed)
    t = random_term(rng, max_generators=8, max_boundary=6)
    d = zh_to_sqmdd(t, WIDE)
    assert validate(d) == []
    assert is_irreducible(d, WIDE)
    s = to_state_form(t) if t.n_in else t
    assert d.height == s.n_out
    assert max_deviation(interpret_sqmdd(d, WIDE), interpret_zh_state(s, WIDE)) <= 1e-9


@given(seed=st.integers(0, 2**32 - 1))
def test_stage_asserted_contraction(seed):
    """With assert_stages every intermediate state is mirrored densely;
    only feasible when the desugared network is small."""
    rng = np.random.default_rng(seed)
    t = random_term(rng, max_generators=4, max_boundary=4)
    net = flatten_to_network(t, WIDE)
    assume(sum(i.arity for i in net.instances) <= 16)
    d = zh_to_sqmdd(t, WIDE, assert_stages=True)
    s = to_state_form(t) if t.n_in else t
    assert max_deviation(interpret_sqmdd(d, WIDE), interpret_zh_state(s, WIDE)) <= 1e-9


def test_stage_assertions_refuse_oversized_networks():
    t = Gen(ZSpider(0, 8))
    with pytest.raises(ResourceLimitError):
        zh_to_sqmdd(t, Settings(max_qubits=4), assert_stages=True)


@given(seed=st.integers(0, 2**32 - 1))
def test_round_trip_from_canonical(seed):
    rng = np.random.default_rng(seed)
    d = canonical_from_vector(random_vector(rng, 1 + seed % 3), WIDE)
    t = sqmdd_to_zh(d, WIDE)
    back = zh_to_sqmdd(t, WIDE)
    assert iso_equal(back, d)


# --- normal-form building blocks ----------------------------------------------


@pytest.mark.parametrize("k", [1, 2, 3])
def test_z_state_block(k):
    d = generator_state_sqmdd("z", k)
    v = np.zeros(2**k, dtype=complex)
    v[0] = v[-1] = 1
    assert max_deviation(interpret_sqmdd(d), v) == 0.0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_h_state_block(k):
    d = generator_state_sqmdd("h", k, label=2j)
    v = np.ones(2**k, dtype=complex)
    v[-1] = 2j
    assert max_deviation(interpret_sqmdd(d), v) == 0.0


def test_state_block_rejects_unknown_kind():
    with pytest.raises(ShapeError):
        generator_state_sqmdd("w", 2)


@given(seed=st.integers(0, 2**32 - 1), side=st.integers(0, 1))
def test_ket0_propagate_peels_an_effect(seed, side):
    """Plugging <0| (side 0) or <1| (side 1) into the top wire of an
    emitted state equals the dense row restriction."""
    rng = np.random.default_rng(seed)
    h = 2 + seed % 3
    d = reduce_diagram(random_dag(rng, h, settings=WIDE), WIDE)[0]
    t = sqmdd_to_zh(d, WIDE)
    eff = Gen(HBox(1, 0, 0)) if side == 0 else Gen(NotXSpider(1, 0))
    plugged = seq(t, par(eff, wires(h - 1)))
    out = ket0_propagate(plugged, WIDE)
    got = interpret_zh(out, WIDE).reshape(-1)
    want = interpret_sqmdd(d, WIDE).reshape(2, -1)[side]
    assert max_deviation(got, want) <= 1e-9
