import math
import random
from fractions import Fraction

import pytest

from blockdesigns.catalog import catalog_entry
from blockdesigns.construct import (
    DimensionMismatch,
    IndexingParams,
    NonIntegral,
    SimplicityVerdict,
    ThreeDesignCase,
    classify_three_design,
    inherited_resolution,
    predict_bibd_lambda,
    predict_ibd_params,
    predicted_mu,
    predicted_mu_affine,
    predicted_mu_w4,
    shrikhande_raghavarao,
    simplicity_verdict,
    triple_coverage_by_alpha,
)
from blockdesigns.core import (
    DesignError,
    DesignParams,
    is_simple,
    make_design,
    t_coverage_spectrum,
    verify_ibd,
)
from blockdesigns.generators import cyclic_develop, trivial_design
from blockdesigns.resolution import (
    ParallelClass,
    Resolution,
    find_resolutions,
    verify_resolution,
)

from oracles import naive_coverage

MASTER_24_6_5 = DesignParams(t=2, v=24, b=92, r=23, k=6, lam=5)
MASTER_30_5_4 = DesignParams(t=2, v=30, b=174, r=29, k=5, lam=4)
MASTER_24_4_3 = DesignParams(t=2, v=24, b=138, r=23, k=4, lam=3)
IDX_4_2 = IndexingParams(
    w=4, b_prime=6, r_prime=3, k_prime=2, lambda_prime=0, lambda2_prime=1
)
IDX_6_3 = IndexingParams(
    w=6, b_prime=20, r_prime=10, k_prime=3, lambda_prime=1, lambda2_prime=4
)


def single_class_master():
    design = make_design(4, [(0, 1), (2, 3)])
    return design, Resolution(design, (ParallelClass((0, 1)),))


# --- the construction ---------------------------------------------------------

def test_first_class_blocks_are_base_unions(repro):
    built = repro["3-(24,12,15)"].constructed
    base = catalog_entry("3-(24,12,15)").base.base_class
    expected = [
        tuple(sorted(base[i] + base[j]))
        for i, j in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    ]
    assert list(built.design.blocks[:6]) == expected
    assert built.provenance[:6] == tuple((0, ci) for ci in range(6))


def test_single_class_single_block():
    # one class of three blocks; a single indexing block unions two of them
    master = make_design(6, [(0, 1), (2, 3), (4, 5)])
    res = Resolution(master, (ParallelClass((0, 1, 2)),))
    indexing = make_design(3, [(0, 1)])
    built = shrikhande_raghavarao(res, indexing)
    assert built.design.blocks == ((0, 1, 2, 3),)
    assert built.provenance == ((0, 0),)


def test_affine_construction_counts(ag28):
    _, res = ag28
    built = shrikhande_raghavarao(res, trivial_design(8, 4))
    assert len(built.design.blocks) == 9 * 70
    assert built.design.k == 32
    assert verify_ibd(built.design).as_tuple() == (64, 630, 315, 32)


def test_dimension_mismatch(ag23):
    _, res = ag23  # w = 3
    with pytest.raises(DimensionMismatch):
        shrikhande_raghavarao(res, trivial_design(4, 2))


def test_invalid_master_resolution_rejected():
    design = make_design(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
    broken = Resolution(design, (ParallelClass((0, 1)),))
    with pytest.raises(DesignError):
        shrikhande_raghavarao(broken, make_design(2, [(0, 1)]))


# --- parameter prediction -------------------------------------------------------

def test_predict_ibd_params_24():
    assert predict_ibd_params(MASTER_24_6_5, IDX_4_2).as_tuple() == (24, 138, 69, 12)


def test_predict_ibd_params_single_block_indexing():
    # k' = w is rejected: indexing blocks must be proper subsets
    with pytest.raises(DesignError):
        IndexingParams(
            w=4, b_prime=1, r_prime=1, k_prime=4, lambda_prime=1, lambda2_prime=1
        )
    idx = IndexingParams(
        w=4, b_prime=2, r_prime=1, k_prime=2, lambda_prime=0, lambda2_prime=0
    )
    params = predict_ibd_params(MASTER_24_6_5, idx)
    assert params.b == MASTER_24_6_5.r * 2


def test_predict_ibd_params_affine():
    master = DesignParams(t=2, v=64, b=72, r=9, k=8, lam=1)
    idx = IndexingParams(
        w=8, b_prime=70, r_prime=35, k_prime=4, lambda_prime=5, lambda2_prime=15
    )
    assert predict_ibd_params(master, idx).as_tuple() == (64, 630, 315, 32)


def test_predict_ibd_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        predict_ibd_params(MASTER_24_6_5, IDX_6_3)


def test_predict_bibd_lambda_values():
    assert predict_bibd_lambda(MASTER_24_6_5, IDX_4_2) == 33
    assert predict_bibd_lambda(MASTER_30_5_4, IDX_6_3) == 140
    # cross-check: derived pair coverage of the constructed 3-designs
    assert 15 * 22 // 10 == 33
    assert 65 * 28 // 13 == 140


def test_predict_bibd_lambda_observed(repro):
    built = repro["3-(24,12,15)"].constructed.design
    assert t_coverage_spectrum(built, 2) == {33: math.comb(24, 2)}


# --- triple coverage ---------------------------------------------------------

def test_triple_coverage_alpha_independent_when_balanced():
    assert triple_coverage_by_alpha(MASTER_24_4_3, IDX_6_3, 0) == 50
    assert triple_coverage_by_alpha(MASTER_24_4_3, IDX_6_3, 1) == 50


def test_triple_coverage_pair_indexing_constant():
    for alpha in range(6):
        assert triple_coverage_by_alpha(MASTER_24_6_5, IDX_4_2, alpha) == 15
    assert 15 == predicted_mu_w4(MASTER_24_6_5)


def test_triple_coverage_alpha_equals_lambda():
    # with alpha = lambda the middle term vanishes
    value = triple_coverage_by_alpha(MASTER_30_5_4, IDX_6_3, 4)
    r_prime, lam3 = IDX_6_3.r_prime, IDX_6_3.lambda_prime
    assert value == 4 * r_prime + (MASTER_30_5_4.r - 4) * lam3


def test_triple_coverage_alpha_range():
    with pytest.raises(DesignError):
        triple_coverage_by_alpha(MASTER_24_6_5, IDX_4_2, 6)


def test_triple_coverage_matches_counts_on_sample(repro):
    report = repro["3-(30,15,65)"]
    master_blocks = [set(b) for b in report.master.blocks]
    built = report.constructed.design
    rng = random.Random(5)
    for _ in range(60):
        triple = tuple(rng.sample(range(30), 3))
        alpha = sum(1 for block in master_blocks if set(triple) <= block)
        expected = triple_coverage_by_alpha(MASTER_30_5_4, IDX_6_3, alpha)
        assert naive_coverage(built.blocks, triple) == expected


# --- classification -----------------------------------------------------------

def test_classify_w4_pair_indexing():
    analysis = classify_three_design(MASTER_24_6_5, 2)
    assert analysis.case is ThreeDesignCase.K_PRIME_HALF_W
    assert analysis.c2 == 0
    assert analysis.c1 == 15


def test_classify_half_w():
    analysis = classify_three_design(MASTER_30_5_4, 3)
    assert analysis.case is ThreeDesignCase.K_PRIME_HALF_W
    assert analysis.c2 == 0


def test_classify_not_three_design():
    analysis = classify_three_design(MASTER_30_5_4, 4)
    assert analysis.case is ThreeDesignCase.NOT_3_DESIGN
    assert analysis.c2 != 0


def test_classify_master_three_design():
    # parameters of a 3-(16,4,1) design (w = 4 admits k' = 3)
    master = DesignParams(t=3, v=16, b=140, r=35, k=4, lam=1)
    analysis = classify_three_design(master, 3)
    assert analysis.case is ThreeDesignCase.MASTER_IS_3_DESIGN


def test_classify_master_pairs_with_note():
    master = DesignParams(t=2, v=8, b=28, r=7, k=2, lam=1)
    analysis = classify_three_design(master, 2)
    assert analysis.case is ThreeDesignCase.MASTER_BLOCK_SIZE_2
    assert analysis.note is not None
    analysis3 = classify_three_design(master, 3)
    assert analysis3.case is ThreeDesignCase.MASTER_BLOCK_SIZE_2
    assert analysis3.note is None


def test_c2_vanishes_exactly_at_half_or_full_w():
    for w in range(6, 13, 2):
        master = DesignParams(
            t=2, v=2 * w, b=w * (2 * w - 1), r=2 * w - 1, k=2, lam=1
        )
        for k_prime in range(3, w):
            analysis = classify_three_design(master, k_prime)
            assert (analysis.c2 == 0) == ((w - k_prime) * (w - 2 * k_prime) == 0)


# --- mu formulas ----------------------------------------------------------------

def test_predicted_mu_values():
    assert predicted_mu(MASTER_30_5_4, 1) == 65
    master_24_3_2 = DesignParams(t=2, v=24, b=184, r=23, k=3, lam=2)
    assert predicted_mu(master_24_3_2, 5) == 175
    master_30_3_2 = DesignParams(t=2, v=30, b=290, r=29, k=3, lam=2)
    assert predicted_mu(master_30_3_2, 21) == 819


def test_predicted_mu_requires_even_w_above_4():
    with pytest.raises(DesignError):
        predicted_mu(MASTER_24_6_5, 1)  # w = 4


def test_predicted_mu_non_integral():
    # w = 12, lam = 1: 3*lam*w/(w-4) = 36/8 is not an integer
    master = DesignParams(t=2, v=24, b=276, r=23, k=2, lam=1)
    with pytest.raises(NonIntegral):
        predicted_mu(master, 1)


def test_predicted_mu_w4_values():
    assert predicted_mu_w4(MASTER_24_6_5) == 15
    assert predicted_mu_w4(DesignParams(t=2, v=32, b=124, r=31, k=8, lam=7)) == 21
    assert predicted_mu_w4(DesignParams(t=2, v=36, b=140, r=35, k=9, lam=8)) == 24
    with pytest.raises(DesignError):
        predicted_mu_w4(MASTER_30_5_4)


def test_predicted_mu_affine_values():
    assert predicted_mu_affine(8, 2, 1) == 15
    assert predicted_mu_affine(8, 2, 5) == 75
    assert predicted_mu_affine(16, 2, 1) == 21


def test_predicted_mu_affine_errors():
    with pytest.raises(DesignError):
        predicted_mu_affine(9, 2, 1)  # not a power of two
    with pytest.raises(DesignError):
        predicted_mu_affine(4, 2, 1)  # not above 4
    with pytest.raises(NonIntegral):
        predicted_mu_affine(32, 2, 1)  # 1020/28


# --- inherited resolutions -------------------------------------------------------

def test_inherited_resolution_small():
    # K_4 pair indexing: the trivial (4,2) design resolved into one-factors
    from blockdesigns.generators import round_robin_one_factorization

    idx_design, idx_res = round_robin_one_factorization(4)
    master = make_design(8, [(0, 1), (2, 3), (4, 5), (6, 7)])
    master_res = Resolution(master, (ParallelClass((0, 1, 2, 3)),))
    built = shrikhande_raghavarao(master_res, idx_design)
    inherited = inherited_resolution(built, idx_res)
    assert len(inherited.classes) == 3
    assert all(len(cls.block_refs) == 2 for cls in inherited.classes)
    assert verify_resolution(built.design, inherited)


def test_inherited_resolution_catalog(repro):
    built = repro["3-(24,12,15)"].constructed
    idx_res = find_resolutions(built.indexing, limit=1)[0]
    inherited = inherited_resolution(built, idx_res)
    assert len(inherited.classes) == 69
    assert all(len(cls.block_refs) == 2 for cls in inherited.classes)
    assert verify_resolution(built.design, inherited)


def test_inherited_resolution_rejects_non_resolution(repro):
    built = repro["3-(24,12,15)"].constructed
    broken = Resolution(built.indexing, (ParallelClass((0, 1)),))
    with pytest.raises(DesignError):
        inherited_resolution(built, broken)


# --- simplicity verdict -----------------------------------------------------------

def test_verdict_ag28_guaranteed(ag28):
    _, res = ag28
    assert (
        simplicity_verdict(res, 4, indexing_is_trivial=True)
        is SimplicityVerdict.SIMPLE_GUARANTEED
    )


def test_verdict_k8_not_simple(k8_subfac):
    _, res = k8_subfac
    assert (
        simplicity_verdict(res, 2, indexing_is_trivial=True)
        is SimplicityVerdict.NOT_SIMPLE
    )
    built = shrikhande_raghavarao(res, trivial_design(4, 2))
    assert not is_simple(built.design)


def test_verdict_unknown_for_nontrivial_indexing(k8_subfac):
    _, res = k8_subfac
    assert (
        simplicity_verdict(res, 2, indexing_is_trivial=False)
        is SimplicityVerdict.UNKNOWN
    )


def test_verdict_forward_direction_nontrivial_indexing(ag23):
    _, res = ag23
    assert (
        simplicity_verdict(res, 2, indexing_is_trivial=False)
        is SimplicityVerdict.SIMPLE_GUARANTEED
    )


# --- indexing params ---------------------------------------------------------------

def test_indexing_params_from_design():
    params = IndexingParams.from_design(trivial_design(6, 3))
    assert params == IDX_6_3
    pair = IndexingParams.from_design(trivial_design(4, 2))
    assert pair == IDX_4_2


def test_indexing_params_rejects_unbalanced():
    # constant replication but pair coverage 2 for {0,1},{2,3} and 0 elsewhere
    unbalanced = make_design(4, [(0, 1), (2, 3), (0, 1), (2, 3)])
    with pytest.raises(DesignError):
        IndexingParams.from_design(unbalanced)


def test_indexing_params_validation():
    with pytest.raises(DesignError):
        IndexingParams(
            w=4, b_prime=5, r_prime=3, k_prime=2, lambda_prime=0, lambda2_prime=1
        )
