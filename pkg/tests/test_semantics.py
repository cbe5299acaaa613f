import math

import numpy as np
import pytest
from hypothesis import given, settings

from zxq.circuits import Gate
from zxq.diagram import (
    Diagram,
    VertexKind,
    cap_diagram,
    empty_diagram,
    hadamard_diagram,
    spider_diagram,
)
from zxq.phase import Phase
from zxq.semantics import (
    HADAMARD,
    ResourceLimitError,
    equal_up_to_scalar,
    evaluate,
    gate_matrix,
    matrix_to_text,
)

from .conftest import phases, small_diagrams


def test_z_spider_interpretation():
    d = spider_diagram(VertexKind.Z, Phase.exact(1, 4), 1, 1)
    assert np.allclose(evaluate(d), np.diag([1.0, np.exp(1j * math.pi / 4)]), atol=1e-12)


def test_hbox_interpretation():
    assert np.allclose(evaluate(hadamard_diagram()), np.array([[1, 1], [1, -1]]) / math.sqrt(2))


def test_empty_diagram_is_one():
    assert np.allclose(evaluate(empty_diagram()), [[1.0]])


def test_cap_interpretation():
    assert np.allclose(evaluate(cap_diagram()), np.array([[1.0], [0.0], [0.0], [1.0]]))


@given(phases())
@settings(max_examples=30, deadline=None)
def test_x_spider_closed_form(p):
    # 1-leg-in, 1-leg-out X-spider equals [[1+a, 1-a], [1-a, 1+a]] / 2, a = e^{i phase}
    a = np.exp(1j * p.radians)
    want = 0.5 * np.array([[1 + a, 1 - a], [1 - a, 1 + a]])
    d = spider_diagram(VertexKind.X, p, 1, 1)
    assert np.allclose(evaluate(d), want, atol=1e-12)


@given(phases())
@settings(max_examples=20, deadline=None)
def test_spider_leg_permutation_invariance(p):
    base = evaluate(spider_diagram(VertexKind.Z, p, 2, 1))
    d = Diagram()
    v = d.add_vertex(VertexKind.Z, p)
    o = d.add_output()
    i0, i1 = d.add_input(), d.add_input()
    d.add_edge(v, o)
    d.add_edge(i1, v)
    d.add_edge(i0, v)
    assert np.allclose(evaluate(d), base, atol=1e-12)


def test_msb_convention():
    # a Z(pi) on wire 0 of two wires acts on the most significant bit
    d = spider_diagram(VertexKind.Z, Phase.pi(), 1, 1).tensor(
        spider_diagram(VertexKind.Z, Phase.zero(), 1, 1)
    )
    assert np.allclose(evaluate(d), np.diag([1, 1, -1, -1]), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(small_diagrams(max_spiders=3, max_ports=2), small_diagrams(max_spiders=3, max_ports=2))
def test_tensor_functorial(d1, d2):
    got = evaluate(d1.tensor(d2))
    want = np.kron(evaluate(d1), evaluate(d2))
    assert equal_up_to_scalar(got, want, 1e-9).equal


@settings(max_examples=30, deadline=None)
@given(small_diagrams(max_spiders=3, max_ports=2), small_diagrams(max_spiders=3, max_ports=2))
def test_compose_functorial(d1, d2):
    # wire d1's outputs into a fresh diagram with matching inputs
    need = d1.n_outputs
    d2b = d2
    while d2b.n_inputs < need:
        extra = Diagram()
        extra.add_edge(extra.add_input(), extra.add_output())
        d2b = d2b.tensor(extra)
    for _ in range(d2b.n_inputs - need):
        extra = Diagram()
        extra.add_edge(extra.add_input(), extra.add_output())
        d1 = d1.tensor(extra)
    got = evaluate(d1.compose(d2b))
    want = evaluate(d2b) @ evaluate(d1)
    assert equal_up_to_scalar(got, want, 1e-9).equal


def test_equal_up_to_scalar_finds_k():
    a = np.array([[1.0, 2.0], [3.0, 4.0j]])
    k = 2.5 * np.exp(1j * math.pi / 3)
    v = equal_up_to_scalar(a, k * a)
    assert v.equal
    assert v.scalar == pytest.approx(k)
    assert v.residual < 1e-12


def test_equal_up_to_scalar_rejects():
    assert not equal_up_to_scalar(np.eye(2), np.diag([1.0, -1.0])).equal


def test_equal_up_to_scalar_zero_matrices():
    z = np.zeros((2, 2))
    v = equal_up_to_scalar(z, z)
    assert v.equal and v.scalar is None
    assert not equal_up_to_scalar(z, np.eye(2)).equal


def test_equal_up_to_scalar_noise_is_zero_and_symmetric():
    # a numerically-zero matrix (contraction noise) must compare unequal to
    # a genuine matrix in both directions, never "equal with k ~ 0"
    noise = 1e-16 * np.array([[1.0, 2.0], [3.0, 4.0]])
    assert not equal_up_to_scalar(np.eye(2), noise).equal
    assert not equal_up_to_scalar(noise, np.eye(2)).equal
    assert equal_up_to_scalar(noise, 2 * noise).equal
    # tiny but genuine proportionality above the floor still registers
    v = equal_up_to_scalar(np.eye(2), 1e-10 * np.eye(2))
    assert v.equal and v.scalar == pytest.approx(1e-10)


def test_equal_up_to_scalar_shape_mismatch():
    with pytest.raises(ValueError):
        equal_up_to_scalar(np.eye(2), np.eye(4))


def test_hadamard_euler_scalar():
    # Z(pi/2) X(pi/2) Z(pi/2) = (1+i)/sqrt(2) * H
    chain = (
        spider_diagram(VertexKind.Z, Phase.exact(1, 2), 1, 1)
        .compose(spider_diagram(VertexKind.X, Phase.exact(1, 2), 1, 1))
        .compose(spider_diagram(VertexKind.Z, Phase.exact(1, 2), 1, 1))
    )
    v = equal_up_to_scalar(evaluate(hadamard_diagram()), evaluate(chain))
    assert v.equal
    assert v.scalar == pytest.approx((1 + 1j) / math.sqrt(2))


@settings(max_examples=30, deadline=None)
@given(small_diagrams(max_spiders=3, max_ports=2), small_diagrams(max_spiders=3, max_ports=2))
def test_scalar_verdict_symmetric(a, b):
    ma, mb = evaluate(a), evaluate(b)
    if ma.shape != mb.shape:
        return
    vab = equal_up_to_scalar(ma, mb)
    vba = equal_up_to_scalar(mb, ma)
    assert vab.equal == vba.equal
    if vab.equal and vab.scalar is not None and vba.scalar is not None:
        if abs(vab.scalar) > 1e-6:
            assert vab.scalar * vba.scalar == pytest.approx(1.0, abs=1e-6)


def test_gate_matrix_t():
    assert np.allclose(gate_matrix(Gate("t", (0,)), 1), np.diag([1, np.exp(1j * math.pi / 4)]))


def test_gate_matrix_cnot_permutation():
    want = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    assert np.allclose(gate_matrix(Gate("cnot", (0, 1)), 2), want)
    flipped = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex)
    assert np.allclose(gate_matrix(Gate("cnot", (1, 0)), 2), flipped)


def test_gate_matrix_cz_diag():
    assert np.allclose(gate_matrix(Gate("cz", (0, 1)), 2), np.diag([1, 1, 1, -1]))


def test_gate_matrix_embedding_msb():
    assert np.allclose(gate_matrix(Gate("h", (1,)), 2), np.kron(np.eye(2), HADAMARD))


def test_gate_matrix_swap():
    want = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    assert np.allclose(gate_matrix(Gate("swap", (0, 1)), 2), want)


def test_resource_cap():
    d = spider_diagram(VertexKind.Z, Phase.zero(), 0, 12)
    with pytest.raises(ResourceLimitError):
        evaluate(d, max_entries=2**8)


def test_matrix_dump_format():
    text = matrix_to_text(np.array([[1.0, 0.5j], [-1.0, 1 + 1j]]))
    assert text == "1+0i\t0+0.5i\n-1+0i\t1+1i\n"
