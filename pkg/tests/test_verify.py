"""Orthonormality/completeness checks, the sphere optimizer, the
unextendibility search, and overlap reports."""

import numpy as np
import pytest

from umeb.constructions import (
    DecomposedVector,
    LabeledBasis,
    meb8,
    umeb_2x3_type1,
    umeb_2x3x3_first,
)
from umeb.entanglement import CutRestricted, GhzType, Strict, coords_to_ket
from umeb.hilbert import (
    Bipartition,
    Ket,
    SystemShape,
    basis_ket,
    orthonormal_complement,
    stack_amps,
)
from umeb.verify import (
    CAVEATS,
    SearchConfig,
    check_completeness,
    check_orthonormal,
    full_report,
    minimize_on_sphere,
    mub_overlap,
    set_match_distance,
    unextendibility_search,
)


def small_cfg(restarts=4, seed=0):
    return SearchConfig(restarts=restarts, seed=seed)


def test_check_orthonormal_accepts_and_rejects():
    assert check_orthonormal(meb8()).ok
    s = SystemShape((2, 2))
    tilted = LabeledBasis(
        "tilted",
        s,
        ("a", "b"),
        (
            DecomposedVector(basis_ket(s, (0, 0))),
            DecomposedVector(Ket(s, np.array([1, 1, 0, 0]) / np.sqrt(2))),
        ),
    )
    chk = check_orthonormal(tilted)
    assert not chk.ok
    assert chk.residual == pytest.approx(2**-0.5, abs=1e-12)


def test_check_completeness():
    assert check_completeness(meb8()) == (8, True)
    fam = umeb_2x3x3_first()
    assert check_completeness(fam) == (12, False)


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(shrink=1.0)
    with pytest.raises(ValueError):
        SearchConfig(step=0.0)
    with pytest.raises(ValueError):
        SearchConfig(grad_tol=-1.0)


def test_minimize_on_sphere_finds_smallest_eigenvalue():
    # the minimum of w.Aw on the unit sphere is the smallest eigenvalue
    a = np.diag([3.0, 2.0, 0.5, 1.0])
    value = lambda w: float(w @ a @ w)
    grad = lambda w: 2.0 * (a @ w)
    rng = np.random.default_rng(67)
    cfg = SearchConfig()
    for _ in range(5):
        w0 = rng.standard_normal(4)
        w, f, history = minimize_on_sphere(value, grad, w0, cfg)
        assert f == pytest.approx(0.5, abs=1e-9)
        assert abs(w[2]) == pytest.approx(1.0, abs=1e-4)
        assert all(b <= a_ for a_, b in zip(history, history[1:]))


def test_minimize_on_sphere_rejects_zero_start():
    cfg = SearchConfig()
    with pytest.raises(ValueError):
        minimize_on_sphere(lambda w: 0.0, lambda w: w, np.zeros(4), cfg)


def test_search_on_complete_basis_reports_complete():
    res = unextendibility_search(meb8(), Strict(), small_cfg())
    assert res.verdict == "complete"
    assert res.complement_dim == 0
    assert res.min_defect is None
    assert res.argmin is None
    assert res.witness is None
    assert res.per_restart_minima == ()


def test_search_is_deterministic():
    fam = umeb_2x3_type1()
    r1 = unextendibility_search(fam, GhzType(2), small_cfg())
    r2 = unextendibility_search(fam, GhzType(2), small_cfg())
    assert r1.per_restart_minima == r2.per_restart_minima
    assert np.array_equal(r1.argmin.amps, r2.argmin.amps)


def test_search_result_invariants():
    fam = umeb_2x3x3_first()
    cfg = small_cfg(restarts=3)
    res = unextendibility_search(fam, GhzType(2), cfg)
    assert res.complement_dim == 6
    assert len(res.per_restart_minima) == 3
    assert res.min_defect == res.per_restart_minima[0]
    assert list(res.per_restart_minima) == sorted(res.per_restart_minima)
    assert res.argmin.is_unit(1e-10)
    cross = stack_amps(fam.kets).conj() @ res.argmin.amps
    assert np.max(np.abs(cross)) < 1e-10


def test_search_certifies_bipartite_family():
    fam = umeb_2x3_type1()
    res = unextendibility_search(fam, GhzType(2), small_cfg())
    assert res.verdict == "unextendible"
    assert res.min_defect == pytest.approx(0.25, abs=1e-9)
    res = unextendibility_search(fam, Strict(), small_cfg())
    assert res.min_defect == pytest.approx(0.5, abs=1e-9)


def test_search_tie_break_takes_lowest_restart_index():
    # the 2x3 complement landscape is constant, so every restart ties and
    # the argmin must be restart 0's (immediately converged) start point
    fam = umeb_2x3_type1()
    frame = orthonormal_complement(fam.kets)
    res = unextendibility_search(fam, GhzType(2), small_cfg(restarts=5, seed=9))
    rng = np.random.default_rng((9, 0))
    w0 = rng.standard_normal(2 * len(frame))
    expect = coords_to_ket(w0 / np.linalg.norm(w0), frame)
    assert np.allclose(res.argmin.amps, expect.amps, atol=1e-14)


def test_search_finds_witness_under_cut_predicate():
    fam = umeb_2x3x3_first()
    pred = CutRestricted(Bipartition(fam.shape, (0,)), 2)
    res = unextendibility_search(fam, pred, small_cfg())
    assert res.verdict == "me_state_found"
    assert res.min_defect < 1e-8
    assert res.witness is not None
    cross = stack_amps(fam.kets).conj() @ res.witness.amps
    assert np.max(np.abs(cross)) < 1e-10


def test_mub_overlap_of_unbiased_pair():
    s = SystemShape((2, 2))
    comp = LabeledBasis(
        "comp",
        s,
        tuple(f"c{i}" for i in range(4)),
        tuple(DecomposedVector(basis_ket(s, divmod(i, 2))) for i in range(4)),
    )
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    hh = np.kron(h, h)
    had = LabeledBasis(
        "had",
        s,
        tuple(f"h{i}" for i in range(4)),
        tuple(DecomposedVector(Ket(s, hh[:, i])) for i in range(4)),
    )
    rep = mub_overlap(comp, had)
    assert rep.unbiased
    assert rep.first_violation is None
    assert rep.max_deviation < 1e-12
    assert rep.target == pytest.approx(0.5)
    assert rep.note == ""


def test_mub_overlap_flags_biased_pair():
    m8 = meb8()
    rep = mub_overlap(m8, m8)
    assert not rep.unbiased
    assert rep.first_violation == (0, 0)
    assert rep.magnitudes[0, 0] == pytest.approx(1.0)
    fam = umeb_2x3x3_first()
    rep = mub_overlap(fam, fam)
    assert "listed vectors only" in rep.note
    with pytest.raises(ValueError):
        mub_overlap(m8, fam)


def test_set_match_distance():
    fam = umeb_2x3x3_first()
    assert set_match_distance(fam, fam) == 0.0
    reversed_fam = LabeledBasis(
        "rev",
        fam.shape,
        tuple(reversed(fam.labels)),
        tuple(reversed(fam.vectors)),
    )
    assert set_match_distance(fam, reversed_fam) < 1e-15
    with pytest.raises(ValueError):
        set_match_distance(fam, meb8())


def test_full_report_on_complete_basis():
    rep = full_report(meb8(), [Strict(), GhzType(2)], small_cfg())
    assert rep.orthonormal.ok
    assert rep.complete and rep.rank == 8
    assert [p.label for p in rep.predicates] == ["strict", "ghz2"]
    for p in rep.predicates:
        assert p.all_ok
        assert p.search.verdict == "complete"
    assert rep.caveats == CAVEATS
    assert len(rep.caveats) == 3


def test_full_report_flags_predicate_failures():
    rep = full_report(umeb_2x3x3_first(), [Strict()], small_cfg(restarts=2))
    p = rep.predicates[0]
    assert not p.all_ok
    assert p.search is not None
    assert p.search.verdict == "unextendible"
    assert not rep.complete


def test_full_report_skips_search_for_dependent_sets():
    s = SystemShape((2, 2))
    v = basis_ket(s, (0, 0))
    dup = LabeledBasis(
        "dup", s, ("a", "b"), (DecomposedVector(v), DecomposedVector(v))
    )
    rep = full_report(dup, [Strict()], small_cfg())
    assert not rep.orthonormal.ok
    assert rep.rank == 1
    assert rep.predicates[0].search is None
