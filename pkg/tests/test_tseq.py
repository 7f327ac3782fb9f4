from __future__ import annotations

import dataclasses
import itertools
import random

import pytest

import gen
from idealtop.convergence import Affine, Fact, Interleave, Poly, Pow, Vec
from idealtop.errors import ChainNotAscending, WindowOverflow
from idealtop.groups import FiniteAb
from idealtop.ideals import ALL, EMPTY, Finite, inter, parse_descriptor, union
from idealtop.tseq import (RefutationCertificate, cover_index, nbhd_stage, sumset, t_refute, truncated_u_I,
                           verify_refutation)

INTERLEAVED = Interleave(Fact(), Affine(Fact(), 1, 1))


def brute_sumset(u, k, m, H, W, exclude=None):
    B = [u.at(n) for n in range(m, H + 1) if exclude is None or not exclude.contains(n)]
    choices = [0] + B + [-b for b in B]
    return {sum(c) for c in itertools.product(choices, repeat=k) if abs(sum(c)) <= W}


def brute_cover(g, u, I, max_m, H):
    B = [u.at(n) for n in range(H + 1) if I is None or not I.contains(n)]
    signed = B + [-b for b in B]
    for m in range(1, max_m + 1):
        if any(sum(c) == g for c in itertools.product(signed, repeat=m)):
            return m
    return None


def random_chain(rng, N, H):
    """Ascending chain of descriptors, each link a superset of the last."""
    links = [Finite.of(rng.sample(range(H + 1), rng.randint(0, 3)))]
    for _ in range(N - 1):
        links.append(union(links[-1], Finite.of(rng.sample(range(H + 1), rng.randint(0, 3)))))
    return links


def test_truncated_u_I_examples():
    assert truncated_u_I(Pow(2), parse_descriptor("finite:{0,1}"), 4) == {0, 4, -4, 8, -8, 16, -16}
    assert truncated_u_I(Fact(), parse_descriptor("squares"), 4) == {0, 2, -2, 6, -6}
    assert truncated_u_I(Pow(2), ALL, 10) == {0}


def test_sumset_examples():
    one = sumset(Pow(2), 1, m=2, H=10, W=20)
    assert one.elements == {0, 4, -4, 8, -8, 16, -16}
    assert one.complete
    two = sumset(Pow(2), 2, m=2, H=10, W=20)
    assert {12, -12, 4, -4} <= two.elements
    # shortest witness, then lexicographic with -1 before +1: 12 = -4 + 16
    assert two.witnesses[12] == ((2, -1), (4, 1))
    for m in range(11):
        assert 1 in sumset(INTERLEAVED, 2, m=m, H=40, W=100)
    assert not sumset(INTERLEAVED, 2, m=0, H=40, W=100).complete
    assert sumset(Pow(2), 0, m=3).elements == {0}
    with pytest.raises(ValueError):
        sumset(Pow(2), -1)


def test_sumset_against_brute_force():
    rng = random.Random(31)
    for _ in range(40):
        u = gen.sequence(rng)
        k, m, H, W = rng.randint(1, 3), rng.randint(0, 4), rng.randint(4, 9), rng.choice([10, 50, 300])
        exclude = gen.descriptor(rng, 1) if rng.random() < 0.3 else None
        res = sumset(u, k, m, H, W, exclude)
        assert res.elements == brute_sumset(u, k, m, H, W, exclude), (u, k, m, H, W, exclude)
        for g, w in res.witnesses.items():
            assert len(w) <= k and all(n >= m for n, _ in w)
            assert sum(s * u.at(n) for n, s in w) == g


def test_sumset_monotone_in_tail_and_folds():
    rng = random.Random(32)
    for _ in range(50):
        u = gen.sequence(rng)
        k, m, H, W = rng.randint(1, 3), rng.randint(0, 5), 10, rng.choice([30, 200])
        base = sumset(u, k, m, H, W).elements
        assert sumset(u, k, m + 1, H, W).elements <= base
        assert base <= sumset(u, k + 1, m, H, W).elements


def test_symmetry_and_zero():
    rng = random.Random(33)
    for _ in range(30):
        u = gen.sequence(rng)
        res = sumset(u, rng.randint(0, 3), rng.randint(0, 3), 8, 100).elements
        assert 0 in res and all(-g in res for g in res)
        stage = nbhd_stage(u, random_chain(rng, rng.randint(1, 3), 8), H=8, W=100)
        assert 0 in stage and all(-g in stage for g in stage)


def test_finite_group_sumset():
    u = Vec((Pow(2), Poly((1,))))
    res = sumset(u, 2, 0, 6)
    assert FiniteAb((3, 2), (1, 1)) not in res  # integer vectors, not residues
    assert all(len(w) <= 2 for w in res.witnesses.values())


def test_t_refute_examples():
    cert = t_refute(INTERLEAVED, 2, 30)
    assert cert is not None and (cert.g, cert.k) == (1, 2)
    assert verify_refutation(cert, INTERLEAVED)
    for m, terms in cert.witnesses:
        if len(terms) == 1:  # u(0) = u(2) = 1 themselves
            assert m <= 2 and INTERLEAVED.at(terms[0][0]) == 1
            continue
        assert len(terms) == 2 and min(n for n, _ in terms) >= m
        assert sum(s * INTERLEAVED.at(n) for n, s in terms) == 1
    assert t_refute(Pow(2), 3, 20) is None
    const = t_refute(Poly((1,)), 1, 10)
    assert (const.g, const.k) == (1, 1) and verify_refutation(const, Poly((1,)))


def _mutations(cert):
    yield dataclasses.replace(cert, g=cert.g + 1)
    yield dataclasses.replace(cert, witnesses=cert.witnesses[1:])
    last_m, terms = cert.witnesses[-1]
    if last_m >= 1 and terms:
        bad = ((last_m - 1, terms[0][1]),) + terms[1:]
        yield dataclasses.replace(cert, witnesses=cert.witnesses[:-1] + ((last_m, bad),))
    flipped = ((terms[0][0], -terms[0][1]),) + terms[1:]
    yield dataclasses.replace(cert, witnesses=cert.witnesses[:-1] + ((last_m, flipped),))
    if len(terms) == cert.k and cert.k > 1:
        yield dataclasses.replace(cert, k=cert.k - 1)


def test_refuter_soundness():
    rng = random.Random(34)
    found = 0
    for _ in range(1000):
        u = gen.sequence(rng)
        exclude = gen.descriptor(rng, 1) if rng.random() < 0.2 else None
        M = rng.randint(0, 4)
        cert = t_refute(u, rng.randint(1, 2), M, H=2 * M + 3, W=60, exclude=exclude)
        if cert is None:
            continue
        found += 1
        assert verify_refutation(cert, u, exclude)
        back = RefutationCertificate.from_json(cert.to_json())
        assert back == cert and verify_refutation(back, u)
        for bad in _mutations(cert):
            assert not verify_refutation(bad, u, exclude), bad
    assert found > 100


def test_verify_rejects_malformed_certificates():
    cert = t_refute(INTERLEAVED, 2, 5)
    assert not verify_refutation(dataclasses.replace(cert, g=0), INTERLEAVED)
    assert not verify_refutation(dataclasses.replace(cert, k=0), INTERLEAVED)
    assert not verify_refutation(RefutationCertificate(1, 2, 1, ((0, ((0, 2),)), (1, ()))), INTERLEAVED)


def test_nbhd_stage_examples():
    stage = nbhd_stage(Pow(2), [parse_descriptor("finite:{0}"), parse_descriptor("finite:{0,1}")], H=6, W=100)
    assert {6, 4} <= stage and 1 not in stage
    assert nbhd_stage(Fact(), [ALL] * 3, H=6) == {0}
    assert nbhd_stage(Pow(2), [EMPTY], H=3, W=20) == {0, 1, -1, 2, -2, 4, -4, 8, -8}
    with pytest.raises(ChainNotAscending):
        nbhd_stage(Pow(2), [parse_descriptor("finite:{1}"), parse_descriptor("finite:{2}")], H=4)


def test_stage_doubling_containment():
    rng = random.Random(35)
    for _ in range(50):
        u = gen.base_sequence(rng)
        N, H, W = rng.randint(1, 2), 6, rng.choice([40, 150])
        chain = random_chain(rng, 2 * N, H)
        half = nbhd_stage(u, chain[1::2], H=H, W=W)
        full = nbhd_stage(u, chain, H=H, W=2 * W)
        assert {a + b for a in half for b in half} <= full, (u, chain)


def test_folded_last_link_inside_stage():
    rng = random.Random(36)
    for N in range(1, 5):
        for _ in range(12):
            u = gen.base_sequence(rng)
            chain = random_chain(rng, N, 6)
            folded = sumset(u, N, 0, 6, 200, exclude=chain[-1]).elements
            assert folded <= nbhd_stage(u, chain, H=6, W=200), (u, chain)


def test_p_ideal_chains_are_finer():
    rng = random.Random(37)
    for _ in range(20):
        u = gen.base_sequence(rng)
        I = gen.descriptor(rng, 1)
        D = gen.descriptor(rng, 1)
        grown = [union(I, F) for F in random_chain(rng, rng.randint(1, 3), 6)]
        dominated = [inter(G, D) for G in grown]
        assert nbhd_stage(u, grown, H=6, W=200) <= nbhd_stage(u, dominated, H=6, W=200)


def test_cover_index_examples():
    assert cover_index(6, Pow(2)) == 2
    assert cover_index(0, Pow(2)) == 0
    assert cover_index(1, Pow(2)) == 1
    assert cover_index(7, Pow(2), I=parse_descriptor("finite:{0}"), max_m=6) is None
    assert cover_index(3, Pow(2), I=parse_descriptor("finite:{0}"), max_m=4, H=4, W=40) is None


def test_cover_index_against_brute_force():
    rng = random.Random(38)
    for _ in range(40):
        u = gen.base_sequence(rng)
        H = rng.randint(2, 5)
        I = gen.descriptor(rng, 1) if rng.random() < 0.4 else None
        g = rng.randint(-30, 30)
        top = max((abs(u.at(n)) for n in range(H + 1)), default=0)
        if g == 0:
            continue
        assert cover_index(g, u, I, max_m=3, H=H, W=abs(g) + top) == brute_cover(g, u, I, 3, H), (g, u, I, H)


def test_budget_overflow():
    with pytest.raises(WindowOverflow):
        sumset(Pow(3), 3, 0, 30, 10 ** 9, budget=500)
    with pytest.raises(WindowOverflow):
        cover_index(10 ** 6 + 1, Pow(3), max_m=8, H=12, W=10 ** 9, budget=1000)
