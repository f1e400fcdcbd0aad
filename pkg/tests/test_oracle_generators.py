"""Frozen dense matrices for every generator.

These arrays were written out by hand from the matrix definitions before
the interpreter existed; everything else in the test suite leans on them.
Shape convention: a generator with n inputs and m outputs is a
(2**m, 2**n) matrix, first wire = most significant bit.
"""
import numpy as np
import pytest
from hypothesis import given, strategies as st

from zhdd.config import Settings
from zhdd.errors import ResourceLimitError
from zhdd.oracle import generator_matrix, interpret_zh, max_deviation
from zhdd.terms import (
    BraPlus,
    Cap,
    Cup,
    Gadget,
    Gen,
    HBox,
    Identity,
    KetOne,
    KetPlus,
    KetZero,
    MonoidN,
    NotXSpider,
    Swap,
    WeightBox,
    XSpider,
    ZSpider,
    par,
    seq,
)

from conftest import weights


def M(rows):
    return np.array(rows, dtype=complex)


FROZEN = {
    ZSpider(0, 0): M([[2]]),
    ZSpider(1, 1): M([[1, 0], [0, 1]]),
    ZSpider(0, 1): M([[1], [1]]),
    ZSpider(1, 0): M([[1, 1]]),
    ZSpider(1, 2): M([[1, 0], [0, 0], [0, 0], [0, 1]]),
    ZSpider(2, 1): M([[1, 0, 0, 0], [0, 0, 0, 1]]),
    ZSpider(0, 3): M([[1], [0], [0], [0], [0], [0], [0], [1]]),
    HBox(0, 0, -1): M([[-1]]),
    HBox(1, 1, -1): M([[1, 1], [1, -1]]),
    HBox(1, 0, -1): M([[1, -1]]),
    HBox(0, 1, -1): M([[1], [-1]]),
    HBox(2, 1, -1): M([[1, 1, 1, 1], [1, 1, 1, -1]]),
    HBox(1, 2, -1): M([[1, 1], [1, 1], [1, 1], [1, -1]]),
    HBox(0, 1, 0): M([[1], [0]]),  # |0> as a labelled box
    XSpider(1, 1): M([[1, 0], [0, 1]]),
    XSpider(0, 1): M([[1], [0]]),
    XSpider(1, 0): M([[1, 0]]),
    XSpider(2, 1): M([[1, 0, 0, 1], [0, 1, 1, 0]]),  # parity of the inputs
    NotXSpider(1, 1): M([[0, 1], [1, 0]]),
    NotXSpider(0, 1): M([[0], [1]]),
    NotXSpider(1, 0): M([[0, 1]]),
    NotXSpider(0, 0): M([[0]]),
    MonoidN(1): M([[1, 0], [0, 1]]),
    MonoidN(2): M([[1, 0, 0, 0], [0, 1, 1, 0]]),
    MonoidN(3): M([[1, 0, 0, 0, 0, 0, 0, 0], [0, 1, 1, 0, 1, 0, 0, 0]]),
    Gadget(): M([[1, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 0, 0]]),
    WeightBox(2.5 + 1j): M([[1, 0], [0, 2.5 + 1j]]),
    Identity(): M([[1, 0], [0, 1]]),
    Swap(): M([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
    Cap(): M([[1], [0], [0], [1]]),
    Cup(): M([[1, 0, 0, 1]]),
    KetZero(): M([[1], [0]]),
    KetOne(): M([[0], [1]]),
    KetPlus(): M([[1], [1]]),
    BraPlus(): M([[1, 1]]),
}


@pytest.mark.parametrize("kind", list(FROZEN), ids=lambda k: repr(k))
def test_generator_matrix_frozen(kind):
    got = generator_matrix(kind)
    want = FROZEN[kind]
    assert got.shape == want.shape
    assert np.array_equal(got, want), f"{kind!r}:\n{got}\nexpected\n{want}"


def test_x_spider_two_two():
    got = generator_matrix(XSpider(2, 2))
    want = M([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]])
    assert np.allclose(got, want)


@given(n=st.integers(0, 3), m=st.integers(0, 3))
def test_x_spider_matches_hadamard_conjugation(n, m):
    """The closed form equals H-conjugation of the Z spider (one global
    half absorbs the unnormalized Hadamards)."""
    had = M([[1, 1], [1, -1]])

    def kron_pow(k):
        out = np.eye(1, dtype=complex)
        for _ in range(k):
            out = np.kron(out, had)
        return out

    z = generator_matrix(ZSpider(n, m))
    want = kron_pow(m) @ z @ kron_pow(n) * 0.5
    assert np.allclose(generator_matrix(XSpider(n, m)), want, atol=1e-12)


@given(n=st.integers(0, 3), m=st.integers(0, 3))
def test_notx_is_x_with_not_on_one_leg(n, m):
    """NotX differs from X by a NOT on any *single* leg (with no legs at
    all the two are unrelated: X(0,0) = 1 but NotX(0,0) = 0)."""
    x = generator_matrix(XSpider(n, m))
    nx = generator_matrix(NotXSpider(n, m))
    flip = M([[0, 1], [1, 0]])
    if n >= 1:
        want = x @ np.kron(flip, np.eye(2 ** (n - 1)))
    elif m >= 1:
        want = np.kron(flip, np.eye(2 ** (m - 1))) @ x
    else:
        want = M([[0]])
    assert np.allclose(nx, want, atol=1e-12)


@given(n=st.integers(0, 4), m=st.integers(0, 4))
def test_z_spider_two_nonzeros(n, m):
    z = generator_matrix(ZSpider(n, m))
    assert z.shape == (2**m, 2**n)
    flat = z.reshape(-1)
    nz = np.flatnonzero(flat)
    if n == m == 0:
        assert flat[0] == 2  # both corners collapse onto one entry
    else:
        assert list(nz) == [0, flat.size - 1]
        assert flat[0] == 1 and flat[-1] == 1


@given(n=st.integers(0, 3), m=st.integers(0, 3), r=weights())
def test_hbox_all_ones_but_corner(n, m, r):
    h = generator_matrix(HBox(n, m, r))
    assert h.shape == (2**m, 2**n)
    expect = np.ones((2**m, 2**n), dtype=complex)
    expect[-1, -1] = r
    assert np.array_equal(h, expect)


@given(k=st.integers(1, 4))
def test_monoid_counts_single_bits(k):
    mat = generator_matrix(MonoidN(k))
    assert mat.shape == (2, 2**k)
    for x in range(2**k):
        pc = bin(x).count("1")
        col = mat[:, x]
        if pc <= 1:
            assert col[pc] == 1 and col.sum() == 1
        else:
            assert not col.any()


# --- composition plumbing ---------------------------------------------------


def test_par_is_kron_first_wire_msb():
    t = par(Gen(KetZero()), Gen(KetOne()))
    v = interpret_zh(t).reshape(-1)
    assert np.array_equal(v, M([[0], [1], [0], [0]]).reshape(-1))  # |01>


def test_seq_applies_left_first():
    t = seq(Gen(KetZero()), Gen(NotXSpider(1, 1)))
    assert np.array_equal(interpret_zh(t).reshape(-1), np.array([0, 1]))


def test_scalar_times_scalar():
    t = par(Gen(HBox(0, 0, 3j)), Gen(HBox(0, 0, 2)))
    assert np.allclose(interpret_zh(t), M([[6j]]))


@given(seed=st.integers(0, 2**32 - 1))
def test_interpreter_methods_agree(seed):
    """State-evolution and matrix-product evaluation give the same answer."""
    from zhdd.generate import random_term

    rng = np.random.default_rng(seed)
    t = random_term(rng, max_generators=6, max_boundary=5)
    a = interpret_zh(t, method="matrix")
    b = interpret_zh(t, method="auto")
    assert max_deviation(a, b) <= 1e-9


def test_qubit_cap_enforced():
    with pytest.raises(ResourceLimitError):
        interpret_zh(Gen(ZSpider(0, 5)), Settings(max_qubits=4))
