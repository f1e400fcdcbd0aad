import numpy as np
import pytest
from hypothesis import given, strategies as st

from zhdd.generate import random_dag, tree_from_vector
from zhdd.oracle import interpret_sqmdd, max_deviation
from zhdd.sqmdd import (
    TERMINAL,
    Builder,
    Node,
    Sqmdd,
    is_one_weight,
    is_zero_weight,
    iso_equal,
    left_cofactor,
    measure,
    node_key,
    renumber,
    require_valid,
    right_cofactor,
    split_edge,
    sqmdd_from_json,
    sqmdd_to_dot,
    sqmdd_to_json,
    structurally_same,
    terminal_only,
    validate,
    weight_key,
    zero_form,
)

from conftest import small_vectors


# --- invariants and the weight grid ----------------------------------------


def test_terminal_only_denotes_scalar():
    d = terminal_only(2 - 1j, 0)
    assert validate(d) == []
    assert np.allclose(interpret_sqmdd(d), [2 - 1j])


def test_zero_form():
    d = zero_form(3)
    assert validate(d) == []
    assert not d.nodes
    assert np.count_nonzero(interpret_sqmdd(d)) == 0


def test_weight_grid_snapping():
    eps = 1e-9
    assert weight_key(1 + 0j) == weight_key(1 + 0.4e-9 + 0j)
    assert weight_key(1 + 0j) != weight_key(1 + 2e-9 + 0j)
    assert is_zero_weight(0.4e-9 + 0.4e-9j)
    assert not is_zero_weight(2e-9 + 0j)
    assert is_one_weight(1 + 0.3e-9j)


def test_validate_catches_problems():
    bad = Sqmdd(1 + 0j, 2, 1, {1: Node(1, 1 + 0j, 7, 0j, TERMINAL)})
    assert any("dangling" in p for p in validate(bad))

    bad = Sqmdd(1 + 0j, 1, 1, {
        1: Node(1, 1 + 0j, 2, 0j, TERMINAL),
        2: Node(1, 1 + 0j, TERMINAL, 1 + 0j, TERMINAL),
    })
    assert any("decrease" in p for p in validate(bad))

    bad = Sqmdd(1 + 0j, 1, 5, {})
    assert any("root" in p for p in validate(bad))

    orphan = Sqmdd(1 + 0j, 1, 1, {
        1: Node(1, 1 + 0j, TERMINAL, 1j, TERMINAL),
        2: Node(1, 1 + 0j, TERMINAL, 0j, TERMINAL),
    })
    assert any("parent" in p for p in validate(orphan))

    with pytest.raises(ValueError):
        require_valid(bad)


@given(seed=st.integers(0, 2**32 - 1))
def test_random_dags_are_valid(seed):
    d = random_dag(np.random.default_rng(seed), 1 + seed % 5)
    assert validate(d) == []


# --- semantics --------------------------------------------------------------


def test_interpretation_of_hand_built_diagram():
    # root -1-> n1 on level2 / -2i-> n2; n1 = (1,T | 3,T), n2 = (0,T | 1,T)
    d = Sqmdd(0.5 + 0j, 2, 3, {
        1: Node(1, 1 + 0j, TERMINAL, 3 + 0j, TERMINAL),
        2: Node(1, 0j, TERMINAL, 1 + 0j, TERMINAL),
        3: Node(2, 1 + 0j, 1, -2j, 2),
    })
    require_valid(d)
    v = interpret_sqmdd(d)
    assert np.allclose(v, 0.5 * np.array([1, 3, 0, -2j]))


@given(vec=small_vectors(max_height=4))
def test_tree_from_vector_is_exact(vec):
    d = tree_from_vector(vec)
    assert validate(d) == []
    assert max_deviation(interpret_sqmdd(d), vec) == 0.0


@given(vec=small_vectors(max_height=3))
def test_cofactors_split_the_vector(vec):
    d = tree_from_vector(vec)
    half = len(vec) // 2
    lo = interpret_sqmdd(left_cofactor(d))
    hi = interpret_sqmdd(right_cofactor(d))
    assert max_deviation(lo, vec[:half]) == 0.0
    assert max_deviation(hi, vec[half:]) == 0.0


def test_split_edge_spans_skipped_levels():
    d = Sqmdd(1 + 0j, 2, 1, {1: Node(1, 1 + 0j, TERMINAL, 5 + 0j, TERMINAL)})
    # root edge spans level 2 entirely: both cofactors are the edge itself
    e = (1 + 0j, 1)
    assert split_edge(d, e, 2, 0) == e
    assert split_edge(d, e, 2, 1) == e
    assert split_edge(d, e, 1, 1) == (5 + 0j, TERMINAL)


# --- measure ----------------------------------------------------------------


def test_measure_terminal_only():
    assert measure(terminal_only(1 + 0j, 0)) == (1, 2)
    assert measure(zero_form(2)) == (1, 2, 0, 0)


def test_measure_counts_non_normalized_nodes():
    d = Sqmdd(1 + 0j, 2, 2, {
        1: Node(1, 2 + 0j, TERMINAL, 1 + 0j, TERMINAL),  # not (1,w): counts
        2: Node(2, 1 + 0j, 1, 0j, TERMINAL),             # normalized
    })
    # |V| = 3, terminal degree = 3, per-height = [1, 0]
    assert measure(d) == (3, 3, 1, 0)


def test_measure_is_lexicographic_tuple():
    small = measure(terminal_only(1 + 0j, 1))
    big = measure(tree_from_vector(np.arange(1, 5, dtype=complex)))
    assert small < big


# --- structural comparison and serialization --------------------------------


@given(seed=st.integers(0, 2**32 - 1))
def test_renumber_preserves_everything(seed):
    d = random_dag(np.random.default_rng(seed), 1 + seed % 5)
    r = renumber(d)
    assert validate(r) == []
    assert structurally_same(d, r)
    assert max_deviation(interpret_sqmdd(d), interpret_sqmdd(r)) == 0.0
    # renumbering is stable: a second pass changes nothing
    assert sqmdd_to_json(renumber(r)) == sqmdd_to_json(r)


def test_iso_equal_ignores_ids_only():
    a = Sqmdd(1 + 0j, 1, 4, {4: Node(1, 1 + 0j, TERMINAL, 2 + 0j, TERMINAL)})
    b = Sqmdd(1 + 0j, 1, 9, {9: Node(1, 1 + 0j, TERMINAL, 2 + 0j, TERMINAL)})
    c = Sqmdd(1 + 0j, 1, 9, {9: Node(1, 1 + 0j, TERMINAL, 3 + 0j, TERMINAL)})
    assert iso_equal(a, b)
    assert not iso_equal(a, c)
    assert not iso_equal(a, terminal_only(1 + 0j, 1))


def test_structurally_same_respects_grid():
    a = Sqmdd(1 + 0j, 1, 1, {1: Node(1, 1 + 0j, TERMINAL, 2 + 0j, TERMINAL)})
    b = Sqmdd(1 + 0j, 1, 1, {1: Node(1, 1 + 0j, TERMINAL, 2 + 0.4e-9, TERMINAL)})
    assert structurally_same(a, b)


@given(seed=st.integers(0, 2**32 - 1))
def test_json_round_trip(seed):
    d = random_dag(np.random.default_rng(seed), 1 + seed % 6)
    obj = sqmdd_to_json(d)
    back = sqmdd_from_json(obj)
    assert structurally_same(d, back)
    assert sqmdd_to_json(back) == obj


def test_json_rejects_malformed():
    with pytest.raises(ValueError):
        sqmdd_from_json({"scalar": [1, 0], "height": 1, "root": 1, "nodes": []})
    with pytest.raises(ValueError):
        sqmdd_from_json([1, 2, 3])
    with pytest.raises(ValueError):
        sqmdd_from_json({"scalar": [1, 0], "height": -2, "root": "t", "nodes": []})


def test_dot_output_mentions_every_node():
    d = tree_from_vector(np.array([1, 2, 3, 4], dtype=complex))
    dot = sqmdd_to_dot(d)
    assert dot.startswith("digraph")
    for i in d.nodes:
        assert f"n{i}" in dot
    assert "t [" in dot or '"t"' in dot.lower() or "terminal" in dot.lower()


# --- the canonicalizing builder ----------------------------------------------


def test_builder_normalizes_weight_pairs():
    b = Builder()
    w, c = b.edge(1, (3 + 0j, TERMINAL), (6 + 0j, TERMINAL))
    assert w == 3 + 0j
    n = b.nodes[c]
    assert (n.w0, n.w1) == (1 + 0j, 2 + 0j)


def test_builder_zero_first_weight_normalizes_second():
    b = Builder()
    w, c = b.edge(1, (0j, TERMINAL), (5 + 0j, TERMINAL))
    assert w == 5 + 0j
    assert b.nodes[c].edge(1) == (1 + 0j, TERMINAL)
    assert b.nodes[c].edge(0) == (0j, TERMINAL)


def test_builder_skips_equal_cofactors():
    b = Builder()
    e = b.edge(1, (2 + 0j, TERMINAL), (2 + 0j, TERMINAL))
    assert e == (2 + 0j, TERMINAL)  # no node created
    assert not b.nodes


def test_builder_hash_conses():
    b = Builder()
    e1 = b.edge(1, (1 + 0j, TERMINAL), (2 + 0j, TERMINAL))
    e2 = b.edge(1, (2 + 0j, TERMINAL), (4 + 0j, TERMINAL))
    assert e1[1] == e2[1]  # same node, different lambda
    assert len(b.nodes) == 1


def test_builder_snaps_grid_zero_weights():
    b = Builder()
    w, c = b.edge(1, (0.3e-9 + 0j, TERMINAL), (1 + 0j, TERMINAL))
    n = b.nodes[c]
    assert n.edge(0) == (0j, TERMINAL)


def test_builder_finish_collapses_grid_zero_scalar():
    b = Builder()
    e = b.edge(1, (1 + 0j, TERMINAL), (2 + 0j, TERMINAL))
    d = b.finish((1e-12 + 0j, e[1]), 1)
    assert iso_equal(d, zero_form(1))


def test_builder_finish_prunes_garbage():
    b = Builder()
    dead = b.edge(1, (1 + 0j, TERMINAL), (7 + 0j, TERMINAL))
    live = b.edge(1, (1 + 0j, TERMINAL), (2 + 0j, TERMINAL))
    d = b.finish(live, 1)
    assert set(d.nodes) == {live[1]}


def test_node_key_folds_grid():
    a = Node(1, 1 + 0j, TERMINAL, 2 + 0j, TERMINAL)
    b = Node(1, 1 + 0.2e-9j, TERMINAL, 2 + 0j, TERMINAL)
    assert node_key(a) == node_key(b)
