import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelab import gallery
from framelab.desiderata import random_unitary
from framelab.errors import NotSpanningError
from framelab.frames import Frame, classify, strip_and_normalize
from framelab.redundancy import (
    Invertible,
    Permutation,
    Scaling,
    Unitary,
    additivity_check,
    alt_redundancy_at,
    alt_redundancy_bounds,
    check_invariance,
    is_uniform,
    redundancy_at,
    redundancy_bounds,
    redundancy_operator,
    redundancy_quadratic_form,
)

from conftest import unit_points

# alternative redundancy of notes_counterexample(N) at e1, from the direct
# numpy summation in _alt_value_oracle (frozen before the library existed)
ALT_AT_E1 = {4: 4.0, 5: 5.0, 6: 6.0, 7: 7.0, 8: 8.0}


def _alt_value_oracle(vectors, x):
    S = vectors @ vectors.conj().T
    w, V = np.linalg.eigh(S)
    P = (V / np.sqrt(w)) @ V.conj().T @ vectors
    U = P / np.linalg.norm(P, axis=0)
    return float(np.sum(np.abs(U.conj().T @ x) ** 2))


def test_phi4_values():
    frame = gallery.phi4(6, 0.3, 10)
    e = np.eye(10)
    assert redundancy_at(frame, e[0]) == pytest.approx(1 + 5 * 0.91, abs=1e-9)
    assert redundancy_at(frame, e[0]) == pytest.approx(5.55, abs=1e-9)
    assert redundancy_at(frame, e[1]) == pytest.approx(0.09, abs=1e-9)


@pytest.mark.parametrize("M", [6, 8, 12])
def test_phi4_values_do_not_depend_on_truncation(M):
    frame = gallery.phi4(6, 0.3, M)
    e = np.eye(M)
    assert redundancy_at(frame, e[0]) == pytest.approx(5.55, abs=1e-9)
    assert redundancy_at(frame, e[1]) == pytest.approx(0.09, abs=1e-9)


def test_onb_redundancy_is_one(rng):
    frame = gallery.onb(5)
    for x in unit_points(rng, 5, 20):
        assert redundancy_at(frame, x) == pytest.approx(1.0, abs=1e-12)


def test_redundancy_rescales_off_sphere_points():
    frame = gallery.phi2(3)
    assert redundancy_at(frame, [2.0, 0.0, 0.0]) == pytest.approx(4.0, abs=1e-12)


def test_bounds_examples():
    rep = redundancy_bounds(gallery.phi1(4))
    assert rep.lower == pytest.approx(2.0, abs=1e-12) and rep.upper == pytest.approx(2.0, abs=1e-12)
    assert rep.uniform
    rep = redundancy_bounds(gallery.phi2(4))
    assert (rep.lower, rep.upper) == pytest.approx((1.0, 5.0), abs=1e-12)
    assert np.allclose(np.abs(rep.argmax_vector), np.eye(4)[0], atol=1e-12)
    rep = redundancy_bounds(gallery.phi3(4))
    assert rep.dropped == (1, 3, 5, 7) and rep.uniform
    assert rep.upper == pytest.approx(1.0, abs=1e-12)


def test_report_samples_and_dict():
    doc = redundancy_bounds(gallery.phi2(2)).as_dict()
    assert doc["samples"]["e1"] == pytest.approx(3.0, abs=1e-12)
    assert doc["mode"] == "ambient" and doc["definition"] == "standard"


def test_is_uniform_examples():
    assert is_uniform(gallery.phi1(3))
    assert not is_uniform(gallery.phi2(4))
    frame = gallery.union_of_onbs(4, 3, seed=1)
    assert is_uniform(frame)
    assert redundancy_bounds(frame).upper == pytest.approx(3.0, abs=1e-12)


def test_range_mode_on_ambient_dft():
    frame = gallery.dft_subset_parseval(8, range(4), ambient=True)
    rep = redundancy_bounds(frame, range_restricted=True)
    assert rep.mode == "range"
    assert rep.uniform and rep.upper == pytest.approx(2.0, abs=1e-12)
    assert redundancy_bounds(frame).lower == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------- alternative


def test_alt_matches_standard_on_parseval_frames(rng):
    frame = gallery.union_of_onbs(3, 2, seed=5)
    a, b = redundancy_bounds(frame), alt_redundancy_bounds(frame)
    assert (a.lower, a.upper) == pytest.approx((b.lower, b.upper), abs=1e-12)
    assert b.as_dict()["definition"] == "alternative"


def test_alt_on_phi1():
    rep = alt_redundancy_bounds(gallery.phi1(3))
    assert (rep.lower, rep.upper) == pytest.approx((2.0, 2.0), abs=1e-12)


@pytest.mark.parametrize("N", sorted(ALT_AT_E1))
def test_alt_value_on_notes_counterexample(N):
    frame = gallery.notes_counterexample(N)
    e1 = np.eye(N)[0]
    assert _alt_value_oracle(frame.vectors, e1) == pytest.approx(ALT_AT_E1[N], abs=1e-12)
    assert alt_redundancy_at(frame, e1) == pytest.approx(ALT_AT_E1[N], abs=1e-10)
    # the plus/minus family alone accounts for N - 1 of it
    pm = strip_and_normalize(gallery.notes_plus_minus_family(N))[0]
    assert np.sum(np.abs(pm.vectors[0]) ** 2) == pytest.approx(N - 1, abs=1e-12)


def test_alt_requires_spanning_in_ambient_mode():
    frame = gallery.dft_subset_parseval(8, range(4), ambient=True)
    with pytest.raises(NotSpanningError):
        alt_redundancy_bounds(frame)
    rep = alt_redundancy_bounds(frame, range_restricted=True)
    assert rep.upper == pytest.approx(2.0, abs=1e-10)


# ---------------------------------------------------------------- invariance


def test_invariance_examples():
    phi2 = gallery.phi2(4)
    rep = check_invariance(phi2, Permutation(tuple(reversed(range(phi2.size)))))
    assert rep.deviation == 0.0 and rep.holds
    phi4 = gallery.phi4(6, 0.3, 10)
    U = random_unitary(10, np.random.default_rng(0))
    assert check_invariance(phi4, Unitary(U)).deviation <= 1e-9
    phi1 = gallery.phi1(3)
    scalars = np.array([3.0] + [1.0] * (phi1.size - 1))
    assert check_invariance(phi1, Scaling(scalars)).deviation <= 1e-9


def test_standard_redundancy_is_not_invariant_under_invertible_maps():
    frame = gallery.phi1(2)
    T = np.array([[1.0, 0.0], [0.0, 0.1]])
    image = frame.transformed(T)
    assert redundancy_bounds(image).upper == pytest.approx(redundancy_bounds(frame).upper)
    other = Frame.from_vectors([[1.0, 0.0], [1.0, 1.0], [1.0, 2.0]], "real")
    before = redundancy_bounds(other)
    after = redundancy_bounds(other.transformed(T))
    assert abs(before.upper - after.upper) > 1e-3
    assert check_invariance(other, Invertible(T)).holds


def test_invalid_transforms_are_rejected():
    frame = gallery.phi1(2)
    with pytest.raises(ValueError):
        check_invariance(frame, Unitary(np.array([[1.0, 1.0], [0.0, 1.0]])))
    with pytest.raises(ValueError):
        check_invariance(frame, Scaling(np.array([1.0, 0.0, 1.0, 1.0])))
    with pytest.raises(ValueError):
        check_invariance(frame, Permutation((0, 0, 1, 2)))
    with pytest.raises(ValueError):
        check_invariance(frame, Invertible(np.zeros((2, 2))))


# ---------------------------------------------------------------- additivity


def test_additivity_examples():
    rep = additivity_check(gallery.phi2(4), gallery.onb(4))
    assert rep.union == pytest.approx((2.0, 6.0), abs=1e-12)
    assert rep.holds
    names = {c.name: c for c in rep.checks}
    assert names["onb_plus_one"].applicable

    rep = additivity_check(gallery.phi1(3), gallery.phi1(3))
    assert rep.union == pytest.approx((4.0, 4.0), abs=1e-12)
    assert {c.name: c for c in rep.checks}["uniform_additive"].applicable
    assert rep.holds


# ---------------------------------------------------------------- properties


@pytest.mark.parametrize(
    "frame",
    [gallery.phi1(3), gallery.phi2(4), gallery.phi3(3), gallery.phi4(6, 0.3, 10), gallery.notes_counterexample(5),
     gallery.union_of_onbs(4, 3), gallery.dft_subset_parseval(12, [0, 3, 5])],
    ids=["phi1", "phi2", "phi3", "phi4", "notes", "onbs", "dft"],
)
def test_two_paths_and_extremality(frame, rng):
    complex_field = frame.field == "complex"
    rep = redundancy_bounds(frame)
    for x in unit_points(rng, frame.dimension, 100, complex_field):
        direct = redundancy_at(frame, x)
        assert abs(direct - redundancy_quadratic_form(frame, x)) <= 1e-10
        assert rep.lower - 1e-10 <= direct <= rep.upper + 1e-10
    assert redundancy_at(frame, rep.argmax_vector) == pytest.approx(rep.upper, abs=1e-10)
    assert redundancy_at(frame, rep.argmin_vector) == pytest.approx(rep.lower, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 5), st.integers(0, 2**31 - 1))
def test_uniform_iff_normalized_tight(d, extra, seed):
    frame = gallery.random_structured_frame(d, d + extra, seed)
    normalized, _ = strip_and_normalize(frame)
    assert is_uniform(frame) == classify(normalized).tight
    rep = redundancy_bounds(frame)
    assert 0 < rep.lower <= rep.upper * (1 + 1e-12)
    # trace of the normalized frame operator is N
    assert np.trace(redundancy_operator(frame).matrix) == pytest.approx(frame.size, rel=1e-12)
    assert rep.lower <= frame.size / d + 1e-10 <= rep.upper + 2e-10


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.integers(0, 2**31 - 1))
def test_equal_norm_parseval_is_uniform(d, k, seed):
    frame = gallery.union_of_onbs(d, k, seed)
    rep = redundancy_bounds(frame)
    assert rep.uniform
    assert rep.upper == pytest.approx(k, abs=1e-10)
