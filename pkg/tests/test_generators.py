import itertools
import math
from collections import Counter

import pytest

from sbtlab.errors import CapacityError, DomainError
from sbtlab.generators import (
    CorpusSpec,
    enumerate_3_permutations,
    enumerate_cycles,
    generate,
    make_diametral_mod3,
    make_palisade,
    random_cycle,
)
from sbtlab.search import rank
from sbtlab.structure import SINGLE_ORIENTED, analyze, is_palisade

PAL3 = (5, 4, 3, 2, 1, 6, 11, 10, 9, 8, 7, 12, 17, 16, 15, 14, 13)
DIAM14 = (8, 13, 12, 11, 10, 9, 14, 7, 6, 5, 1, 3, 2, 4)


class TestPalisade:
    def test_phi1(self):
        assert make_palisade(1).one_line == (5, 4, 3, 2, 1)

    def test_phi2(self):
        assert make_palisade(2).one_line == (5, 4, 3, 2, 1, 6, 11, 10, 9, 8, 7)

    def test_phi3(self):
        assert make_palisade(3).one_line == PAL3

    @pytest.mark.parametrize("phi", range(1, 8))
    def test_predicate(self, phi):
        assert is_palisade(make_palisade(phi)) == (True, phi)

    def test_domain(self):
        with pytest.raises(DomainError):
            make_palisade(0)


class TestDiametral:
    def test_n8(self):
        assert make_diametral_mod3(8).one_line == (8, 7, 6, 5, 1, 3, 2, 4)

    def test_n14(self):
        assert make_diametral_mod3(14).one_line == DIAM14

    @pytest.mark.parametrize("n", [8, 14, 20, 26, 32])
    def test_structure(self, n):
        rep = analyze(make_diametral_mod3(n))
        assert rep.is_3perm
        assert rep.uip_count() == (n - 2) // 6
        singles = [c for c, k in zip(rep.components, rep.component_kind) if k == SINGLE_ORIENTED]
        assert len(singles) == 1
        assert len(rep.cycles.cycles[singles[0][0]]) == 3

    @pytest.mark.parametrize("n", [2, 5, 7, 11, 13])
    def test_domain(self, n):
        with pytest.raises(DomainError):
            make_diametral_mod3(n)


class TestEnumeration:
    @pytest.mark.parametrize("n, count", [(3, 6), (5, 120), (8, 40320)])
    def test_counts(self, n, count):
        assert sum(1 for _ in enumerate_cycles(n)) == count == math.factorial(n)

    def test_rank_order(self):
        ranks = [rank(p.one_line) for p in enumerate_cycles(5)]
        assert ranks == list(range(120))

    def test_3perms_n2(self):
        got = list(enumerate_3_permutations(2))
        # the identity qualifies: all cycles of sigma pi^-1 are fixed points
        assert [p.cycle_text() for p in got] == ["(0 1 2)", "(0 2 1)"]

    def test_3perms_n5_count(self):
        # oracle: filter all cycles by "sigma pi^-1 has only 1- and 3-cycles"
        from sbtlab.perm_core import cycle_decomposition, from_one_line, sigma_pi_inv

        brute = [
            seq for seq in itertools.permutations(range(1, 6))
            if set(cycle_decomposition(sigma_pi_inv(from_one_line(seq))).lengths()) <= {1, 3}
        ]
        assert [p.one_line for p in enumerate_3_permutations(5)] == brute
        assert len(brute) == 33

    def test_3perm_domain(self):
        with pytest.raises(DomainError):
            next(enumerate_3_permutations(4))

    def test_capacity(self):
        with pytest.raises(CapacityError):
            next(enumerate_cycles(12))


class TestRandom:
    def test_deterministic(self):
        assert random_cycle(20, 5) == random_cycle(20, 5)
        assert random_cycle(20, 5) != random_cycle(20, 6)

    def test_uniform_chi_squared(self):
        # 720 cells, 10^5 draws; df = 719, so the 0.999 quantile is about 849
        draws = list(generate(CorpusSpec("random_cycles", n=6, seed=123, count=100_000)))
        counts = Counter(rank(p.one_line) for p in draws)
        expected = len(draws) / 720
        chi2 = sum((counts.get(r, 0) - expected) ** 2 / expected for r in range(720))
        assert len(counts) == 720
        assert chi2 < 849


class TestCorpusSpec:
    def test_generate_families(self):
        assert next(generate(CorpusSpec("palisade", phi=2))) == make_palisade(2)
        assert next(generate(CorpusSpec("diametral_mod3", n=14))).one_line == DIAM14
        assert sum(1 for _ in generate(CorpusSpec("all_cycles", n=4))) == 24
        assert sum(1 for _ in generate(CorpusSpec("all_3perms", n=5))) == 33

    @pytest.mark.parametrize("kw", [
        {"family": "nope", "n": 3},
        {"family": "palisade"},
        {"family": "all_cycles"},
        {"family": "random_cycles", "n": 4},
        {"family": "diametral_mod3", "n": 9},
    ])
    def test_invalid(self, kw):
        with pytest.raises(DomainError):
            CorpusSpec(**kw)


class TestFixtureForms:
    @pytest.mark.parametrize("one_line, cycle", [
        (PAL3, "(0 5 4 3 2 1 6 11 10 9 8 7 12 17 16 15 14 13)"),
        ((11, 16, 15, 14, 13, 12, 17, 10, 9, 8, 1, 6, 5, 4, 3, 2, 7),
         "(0 11 16 15 14 13 12 17 10 9 8 1 6 5 4 3 2 7)"),
        ((23, 22, 21, 1, 6, 5, 11, 20, 10, 9, 8, 13, 4, 3, 7, 12, 18, 2, 17, 16, 15, 14, 19),
         "(0 23 22 21 1 6 5 11 20 10 9 8 13 4 3 7 12 18 2 17 16 15 14 19)"),
    ])
    def test_caption_matches_body(self, one_line, cycle):
        from sbtlab.perm_core import from_one_line, parse_cycles

        p = from_one_line(one_line)
        assert p.cycle_text() == cycle
        assert parse_cycles(cycle, p.size) == p.perm
