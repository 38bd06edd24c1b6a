import random
from fractions import Fraction

import pytest

from trisect.surface import Surface
from trisect.curves import CurveSystem, through_edges, torus_curve
from trisect.arrangement import isotopic
from trisect.homology import homology_class
from trisect.heegaard import (HeegaardError, HeegaardPair, bounds_in_handlebody,
                              cyclic_reduce, handleslide, heegaard_homology,
                              is_standard_pair, standardize,
                              validate_cut_system, word_in_handlebody)


def standard_alpha(g):
    s = Surface.closed_genus(g)
    return validate_cut_system(s, CurveSystem(
        s, [through_edges(s, [(0, 4 * k + 3)]) for k in range(g)]))


def standard_beta(g):
    s = Surface.closed_genus(g)
    return validate_cut_system(s, CurveSystem(
        s, [through_edges(s, [(0, 4 * k)]) for k in range(g)]))


def test_torus_cut_system():
    t = Surface.torus()
    h = validate_cut_system(t, torus_curve(t, 1, 0))
    assert h.pieces[0].is_annulus


def test_wrong_count_rejected():
    g2 = Surface.closed_genus(2)
    with pytest.raises(HeegaardError, match="need 2"):
        validate_cut_system(g2, CurveSystem(g2, [through_edges(g2, [(0, 3)])]))


def test_parallel_copies_rejected():
    g2 = Surface.closed_genus(2)
    sys = CurveSystem(g2, [
        through_edges(g2, [(0, 3)], positions=[Fraction(1, 3)]),
        through_edges(g2, [(0, 3)], positions=[Fraction(2, 3)])])
    with pytest.raises(HeegaardError):
        validate_cut_system(g2, sys)


def test_open_surface_rejected():
    sq = Surface([4], [])
    with pytest.raises(HeegaardError, match="closed"):
        validate_cut_system(sq, CurveSystem(sq, []))


def test_words():
    t = Surface.torus()
    h = validate_cut_system(t, torus_curve(t, 0, 1))
    for p in (1, 2, 3, -2):
        w = word_in_handlebody(torus_curve(t, p, 1), h)
        assert len(w) == abs(p)
        assert len(set(w)) == 1
    assert word_in_handlebody(torus_curve(t, 0, 1), h) == ()


def test_cut_curves_bound():
    for g in (2, 3):
        h = standard_alpha(g)
        for i in range(g):
            assert bounds_in_handlebody(h.curve(i), h)


def test_non_bounding():
    t = Surface.torus()
    h = validate_cut_system(t, torus_curve(t, 0, 1))
    assert not bounds_in_handlebody(torus_curve(t, 1, 0), h)


def test_cyclic_reduce():
    assert cyclic_reduce((1, -1)) == ()
    assert cyclic_reduce((1, 2, -2, -1)) == ()
    assert cyclic_reduce((2, 1, -2)) == (1,)
    assert cyclic_reduce((1, 2)) == (1, 2)


def test_handleslide_homology():
    alpha = standard_alpha(2)
    slid = handleslide(alpha, 0, 1, (0, 0, ()))
    v0 = homology_class(alpha.system, 0)
    v1 = homology_class(alpha.system, 1)
    got = homology_class(slid.system, 0)
    assert got in (tuple(a + b for a, b in zip(v0, v1)),
                   tuple(a - b for a, b in zip(v0, v1)))
    assert homology_class(slid.system, 1) == v1


def test_handleslide_reversible():
    alpha = standard_alpha(2)
    slid = handleslide(alpha, 0, 1, (0, 0, ()))
    back = handleslide(slid, 0, 1, (0, 0, ()))
    for i in range(2):
        assert isotopic(back.system, alpha.system, i, i)


def test_handleslide_self_rejected():
    alpha = standard_alpha(2)
    with pytest.raises(HeegaardError):
        handleslide(alpha, 1, 1, (0, 0, ()))


def test_random_slide_chain():
    rng = random.Random(5)
    h = standard_alpha(2)
    for _ in range(6):
        i = rng.randrange(2)
        j = 1 - i
        ki = rng.randrange(len(h.system.components[i].transits))
        kj = rng.randrange(len(h.system.components[j].transits))
        before = [homology_class(h.system, m) for m in range(2)]
        try:
            h = handleslide(h, i, j, (ki, kj, ()))
        except HeegaardError:
            continue  # chords in different polygons, no empty band
        after = homology_class(h.system, i)
        assert after in (
            tuple(a + b for a, b in zip(before[i], before[j])),
            tuple(a - b for a, b in zip(before[i], before[j])))


def test_pairs_and_homology():
    alpha, beta = standard_alpha(2), standard_beta(2)
    p = HeegaardPair(alpha, beta)
    assert p.geometric == ((1, 0), (0, 1))
    assert is_standard_pair(p) == 0
    assert heegaard_homology(p) == (0, ())  # S^3

    paa = HeegaardPair(alpha, alpha)
    assert is_standard_pair(paa) == 2
    assert heegaard_homology(paa) == (2, ())  # #^2 S^1 x S^2


def test_standard_k_matches_free_rank():
    for g, builder in ((1, None), (2, None)):
        alpha = standard_alpha(2)
        beta = standard_beta(2)
        mixed = HeegaardPair(alpha, validate_cut_system(
            alpha.surface, CurveSystem(alpha.surface, [
                through_edges(alpha.surface, [(0, 0)]),
                through_edges(alpha.surface, [(0, 7)])])))
        k = is_standard_pair(mixed)
        assert k == 1
        rank, torsion = heegaard_homology(mixed)
        assert rank == k and not torsion


def test_lens_space_homology():
    t = Surface.torus()
    alpha = validate_cut_system(t, torus_curve(t, 1, 0))
    beta = validate_cut_system(t, torus_curve(t, 1, 3))
    assert heegaard_homology(HeegaardPair(alpha, beta)) == (0, (3,))


def test_standardize():
    alpha, beta = standard_alpha(2), standard_beta(2)
    p = HeegaardPair(alpha, beta)
    assert standardize(p, budget=1) == (0, ())

    slid = handleslide(alpha, 0, 1, (0, 0, ()))
    q = HeegaardPair(slid, beta)
    assert is_standard_pair(q) is None
    assert standardize(q, budget=0) is None
    res = standardize(q, budget=1)
    assert res is not None
    k, moves = res
    assert k == 0 and len(moves) == 1
    # replay the witness
    a, b = slid, beta
    for side, i, j, arc in moves:
        if side == "alpha":
            a = handleslide(a, i, j, arc)
        else:
            b = handleslide(b, i, j, arc)
    assert is_standard_pair(HeegaardPair(a, b)) == 0


def test_recognize_statuses():
    alpha, beta = standard_alpha(2), standard_beta(2)
    p = HeegaardPair(alpha, beta)
    assert p.recognize() == 0
    assert p.recognition == "literal-standard"

    slid = handleslide(alpha, 0, 1, (0, 0, ()))
    q = HeegaardPair(slid, beta)
    assert q.recognize(budget=1) == 0
    assert q.recognition == "standardized-by-slides"

    r = HeegaardPair(slid, beta)
    assert r.recognize(budget=0) == 0
    assert r.recognition == "homology-only"
