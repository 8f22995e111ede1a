import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelab import gallery
from framelab.errors import (
    DimensionMismatchError,
    FrameFormatError,
    NotSpanningError,
    ZeroFrameError,
)
from framelab.frames import (
    Frame,
    analysis,
    canonical_dual,
    canonical_parseval,
    classify,
    dump_frame,
    frame_bounds,
    frame_operator,
    load_frame,
    reconstruct,
    strip_and_normalize,
    synthesis,
)

from conftest import unit_points


# ---------------------------------------------------------------- loading


def test_load_real_onb():
    frame = load_frame('{"field":"real","dimension":2,"vectors":[[1,0],[0,1]]}')
    assert (frame.dimension, frame.size) == (2, 2)
    assert np.array_equal(frame.vectors, np.eye(2))
    assert classify(frame).orthogonal


def test_load_complex_unit_vector():
    frame = load_frame(b'{"field":"complex","dimension":1,"vectors":[[[0,1]]]}')
    assert frame.field == "complex"
    assert frame[0][0] == 1j
    assert frame.norms[0] == 1.0


def test_load_rejects_length_mismatch():
    with pytest.raises(DimensionMismatchError):
        load_frame('{"field":"real","dimension":2,"vectors":[[1,0,0]]}')


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        '{"field":"quaternion","dimension":1,"vectors":[[1]]}',
        '{"field":"real","dimension":0,"vectors":[[1]]}',
        '{"field":"real","dimension":1,"vectors":[]}',
        '{"field":"real","dimension":1,"vectors":[["a"]]}',
        '{"field":"complex","dimension":1,"vectors":[[[1,2,3]]]}',
        '[1, 2]',
    ],
)
def test_load_rejects_malformed(doc):
    with pytest.raises(FrameFormatError):
        load_frame(doc)


def test_loading_does_not_normalize():
    frame = load_frame('{"field":"real","dimension":2,"vectors":[[2,0],[0,0]]}')
    assert np.array_equal(frame.norms, [2.0, 0.0])


@pytest.mark.parametrize("frame", [gallery.phi4(6, 0.3, 10), gallery.dft_subset_parseval(8, range(3))])
def test_dump_round_trip_is_exact(frame):
    again = load_frame(dump_frame(frame))
    assert again.field == frame.field
    assert np.array_equal(again.vectors, frame.vectors)


def test_vectors_are_read_only():
    frame = gallery.onb(2)
    with pytest.raises(ValueError):
        frame.vectors[0, 0] = 5.0


# ---------------------------------------------------------------- operators


def test_analysis_examples():
    assert np.array_equal(analysis(gallery.onb(2), [1.0, 0.0]), [1.0, 0.0])
    assert np.array_equal(analysis(gallery.phi1(2), [0.0, 1.0]), [0, 0, 1, 1])
    coeffs = analysis(gallery.phi4(6, 0.3, 10), np.eye(10)[1])
    expected = np.zeros(10)
    expected[1] = 0.3
    assert np.allclose(coeffs, expected, atol=1e-15)


def test_analysis_conjugates_frame_vectors():
    frame = Frame(np.array([[1j]]), "complex")
    assert analysis(frame, np.array([1.0 + 0j]))[0] == -1j


def test_synthesis_examples():
    assert np.array_equal(synthesis(gallery.onb(2), [1.0, 1.0]), [1.0, 1.0])
    assert np.array_equal(synthesis(gallery.phi2(3), np.zeros(6)), np.zeros(3))
    assert np.array_equal(synthesis(gallery.phi1(2), [1.0, -1.0, 0.0, 0.0]), np.zeros(2))


def test_operators_reject_wrong_shapes():
    frame = gallery.phi1(2)
    with pytest.raises(DimensionMismatchError):
        analysis(frame, np.zeros(3))
    with pytest.raises(DimensionMismatchError):
        synthesis(frame, np.zeros(3))


def test_frame_operator_examples():
    assert np.array_equal(frame_operator(gallery.phi1(2)).matrix, 2 * np.eye(2))
    assert np.array_equal(frame_operator(gallery.phi2(4)).matrix, np.diag([5.0, 1, 1, 1]))
    S = frame_operator(gallery.notes_counterexample(4)).matrix
    assert np.max(np.abs(S - np.eye(4))) <= 1e-12


def test_frame_bounds_examples():
    assert frame_bounds(gallery.onb(3)) == (1.0, 1.0)
    lo, hi = frame_bounds(gallery.phi2(4))
    assert lo == pytest.approx(1.0, abs=1e-12) and hi == pytest.approx(5.0, abs=1e-12)
    lo, hi = frame_bounds(gallery.phi2(2))
    assert (lo, hi) == pytest.approx((1.0, 3.0), abs=1e-12)


def test_range_restricted_bounds_of_ambient_dft():
    frame = gallery.dft_subset_parseval(8, range(4), ambient=True)
    assert frame_bounds(frame).lower == pytest.approx(0.0, abs=1e-12)
    lo, hi = frame_bounds(frame, range_restricted=True)
    assert lo == pytest.approx(1.0, abs=1e-12) and hi == pytest.approx(1.0, abs=1e-12)


def test_canonical_dual_examples():
    dual = canonical_dual(gallery.phi1(2))
    assert np.allclose(dual.vectors, gallery.phi1(2).vectors / 2, atol=1e-15)
    dual = canonical_dual(gallery.phi2(4))
    expected = gallery.phi2(4).vectors.copy()
    expected[0, :5] = 0.2
    assert np.allclose(dual.vectors, expected, atol=1e-14)
    parseval = gallery.union_of_onbs(3, 2, seed=4)
    assert np.allclose(canonical_dual(parseval).vectors, parseval.vectors, atol=1e-12)


def test_dual_requires_spanning():
    with pytest.raises(NotSpanningError):
        canonical_dual(gallery.dft_subset_parseval(8, range(4), ambient=True))


def test_reconstruct_examples():
    frame = gallery.phi1(2)
    assert np.array_equal(reconstruct(frame, np.zeros(2)), np.zeros(2))
    assert np.allclose(reconstruct(frame, [3.0, -4.0]), [3.0, -4.0], atol=1e-14)
    e1 = np.eye(10)[0]
    assert np.linalg.norm(reconstruct(gallery.phi4(6, 0.3, 10), e1) - e1) <= 1e-8


def test_canonical_parseval_examples():
    assert np.allclose(canonical_parseval(gallery.phi1(2)).vectors, gallery.phi1(2).vectors / np.sqrt(2))
    P = canonical_parseval(gallery.phi2(4)).vectors
    assert np.allclose(P[0, :5], 1 / np.sqrt(5), atol=1e-14)
    assert np.allclose(P[:, 5:], np.eye(4)[:, 1:], atol=1e-14)
    notes = gallery.notes_counterexample(5)
    assert np.max(np.abs(canonical_parseval(notes).vectors - notes.vectors)) <= 1e-10


def test_strip_and_normalize_examples():
    normalized, dropped = strip_and_normalize(gallery.phi3(4))
    assert dropped == (1, 3, 5, 7)
    assert np.array_equal(normalized.vectors, np.eye(4))

    onb = gallery.onb(3)
    normalized, dropped = strip_and_normalize(onb)
    assert dropped == () and np.array_equal(normalized.vectors, onb.vectors)

    frame = Frame.from_vectors([[2.0, 0.0], [0.0, 0.0], [0.0, 3.0]], "real")
    normalized, dropped = strip_and_normalize(frame)
    assert dropped == (1,)
    assert np.array_equal(normalized.vectors, np.eye(2))


def test_strip_uses_relative_zero_threshold():
    frame = Frame.from_vectors([[1e6, 0.0], [0.0, 1e-7]], "real")
    _, dropped = strip_and_normalize(frame)
    assert dropped == (1,)
    with pytest.raises(ZeroFrameError):
        strip_and_normalize(Frame(np.zeros((2, 3)), "real"))


def test_classify_examples():
    flags = classify(gallery.dft_subset_parseval(8, range(4), ambient=True), range_restricted=True)
    assert flags.spanning and flags.tight and flags.parseval and flags.equal_norm
    assert not flags.unit_norm
    flags = classify(gallery.phi2(4))
    assert flags.spanning and not flags.tight and flags.unit_norm and not flags.orthogonal
    flags = classify(gallery.onb(4))
    assert all(flags.as_dict().values())
    flags = classify(gallery.phi1(2))
    assert flags.tight and not flags.orthogonal


# ---------------------------------------------------------------- invariants


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 6), st.integers(0, 2**31 - 1), st.booleans())
def test_frame_inequality_and_reconstruction(d, extra, seed, complex_field):
    field = "complex" if complex_field else "real"
    frame = gallery.random_frame(d, d + extra, seed, reject=False, field=field)
    A, B = frame_bounds(frame)
    S = frame_operator(frame).matrix
    assert np.max(np.abs(S - S.conj().T)) <= 1e-12 * np.max(np.abs(S))
    rng = np.random.default_rng(seed)
    for x in unit_points(rng, d, 10, complex_field):
        energy = np.sum(np.abs(analysis(frame, x)) ** 2)
        assert A - 1e-10 * B <= energy <= B * (1 + 1e-10)
        assert np.allclose(synthesis(frame, analysis(frame, x)), S @ x, atol=1e-12 * B)
        back = reconstruct(frame, x)
        assert np.linalg.norm(back - x) <= 1e-8 * np.linalg.norm(x)
    P = canonical_parseval(frame)
    assert np.max(np.abs(frame_operator(P).matrix - np.eye(d))) <= 1e-10
    assert classify(P).parseval


def test_dump_is_json_with_pairs_for_complex():
    doc = json.loads(dump_frame(load_frame('{"field":"complex","dimension":1,"vectors":[[[0.5,-2]]]}')))
    assert doc["vectors"] == [[[0.5, -2.0]]]


def test_canonical_parseval_of_ill_conditioned_frame():
    T = np.diag([1.0, 1e-3, 1e-4])
    frame = gallery.random_frame(3, 5, seed=8).transformed(T)
    P = canonical_parseval(frame)
    assert np.max(np.abs(frame_operator(P).matrix - np.eye(3))) <= 1e-12
    # columns are S^{-1/2} phi_i up to a unitary, so the Gram matrix is the projection onto the row space
    G = P.vectors.T @ P.vectors
    U, _, Vt = np.linalg.svd(frame.vectors, full_matrices=False)
    assert np.allclose(G, Vt.T @ Vt, atol=1e-9)
