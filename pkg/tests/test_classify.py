import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import exponents, zx_params
from hyperlab import classify as cl
from hyperlab.kernel import HyperRingError, Hyperideal, build_template_zx_mod, enumerate_hyperideals
from oracles import NaiveRing


def z8ex():
    return build_template_zx_mod(8, range(1, 8))


def proper_ideals(H):
    return [I for I in enumerate_hyperideals(H) if I.is_proper]


class TestZ8Example:
    def test_weakly_but_not_prime(self):
        Q = Hyperideal(z8ex(), [0, 4])
        assert cl.is_weakly_ab_prime(Q, 3, 1)
        assert not cl.is_ab_prime(Q, 3, 1)

    def test_zero_witnesses(self):
        Q = Hyperideal(z8ex(), [0, 4])
        zs = cl.find_ab_zeros(Q, 3, 1)
        assert zs
        H = Q.ring
        for z in zs:
            assert H.prod(H.power_mask(z.x, 3), 1 << z.y) & 1
            assert z.y not in Q

    def test_improper_rejected(self):
        H = z8ex()
        with pytest.raises(HyperRingError):
            cl.is_ab_prime(Hyperideal(H, range(8)), 1, 1)
        with pytest.raises(HyperRingError):
            cl.is_weakly_ab_prime(Hyperideal(H, range(8)), 1, 1)

    def test_radicals(self):
        Q = Hyperideal(z8ex(), [0, 4])
        assert list(cl.radical_via_primes(Q)) == [0, 2, 4, 6]
        assert list(cl.radical_via_powers(Q)) == [0, 2, 4, 6]


class TestAgainstOracle:
    @given(zx_params(moduli=(2, 3, 4, 5, 6, 8)), exponents, exponents)
    def test_ab_predicates(self, p, a, b):
        n, X = p
        H = build_template_zx_mod(n, X)
        R = NaiveRing.zx(n, X)
        for P in proper_ideals(H):
            fp = frozenset(P)
            assert cl.is_ab_prime(P, a, b) == R.ab_prime(fp, a, b)
            assert cl.is_weakly_ab_prime(P, a, b) == R.ab_prime(fp, a, b, weakly=True)
            assert cl.is_ab_closed(P, a, b) == R.ab_closed(fp, a, b)

    @given(zx_params(moduli=(2, 3, 4, 6, 8, 9)))
    def test_classical_predicates(self, p):
        n, X = p
        H = build_template_zx_mod(n, X)
        R = NaiveRing.zx(n, X)
        for P in proper_ideals(H):
            fp = frozenset(P)
            assert cl.is_prime(P) == R.prime(fp)
            assert cl.is_maximal(P) == R.maximal(fp)
            assert frozenset(cl.radical_via_primes(P)) == R.rad_primes(fp)
            assert frozenset(cl.radical_via_powers(P)) == R.rad_powers(fp)

    @given(zx_params(moduli=(2, 3, 4, 5, 6)))
    def test_c_and_strong_c(self, p):
        n, X = p
        H = build_template_zx_mod(n, X)
        R = NaiveRing.zx(n, X)
        for P in proper_ideals(H):
            fp = frozenset(P)
            assert cl.is_C_hyperideal(P) == R.is_C(fp)
            assert cl.is_strong_C_hyperideal(P) == R.is_strong_C(fp)

    @given(zx_params(moduli=(4, 6, 8)))
    def test_nilpotents_idempotents(self, p):
        n, X = p
        H = build_template_zx_mod(n, X)
        R = NaiveRing.zx(n, X)
        nil = {x for x in range(n) if any(R.zero in R.power(x, k) for k in range(1, n + 2))}
        assert set(cl.nilpotents(H)) == nil
        assert set(cl.idempotents(H)) == {e for e in range(n) if e in R.mul(e, e)}


class TestFamilies:
    @given(zx_params(moduli=(4, 6, 8, 9, 12)))
    def test_strong_c_dual_route(self, p):
        """The coset-of-omega shortcut and the explicit sums family agree."""
        n, X = p
        H = build_template_zx_mod(n, X)
        fam = cl.product_family(H, explicit_sums=True)
        for P in enumerate_hyperideals(H):
            explicit = all(not S & P.mask or not S & ~P.mask for S in fam.sums)
            assert explicit == cl.strong_c_via_omega(P)

    @given(zx_params(moduli=(4, 6, 8, 9)))
    def test_length_conventions_agree(self, p):
        n, X = p
        H = build_template_zx_mod(n, X)
        for P in enumerate_hyperideals(H):
            assert cl.is_C_hyperideal(P, 1) == cl.is_C_hyperideal(P, 2)

    @given(zx_params(moduli=(4, 6, 8)))
    def test_strong_c_implies_c(self, p):
        n, X = p
        H = build_template_zx_mod(n, X)
        for P in enumerate_hyperideals(H):
            if cl.is_strong_C_hyperideal(P):
                assert cl.is_C_hyperideal(P)

    def test_classical_rings_all_strong_c(self):
        H = build_template_zx_mod(12, [1])
        assert all(cl.is_strong_C_hyperideal(P) for P in enumerate_hyperideals(H))


class TestInvariants:
    @given(zx_params(moduli=(4, 6, 8, 9)))
    def test_regions_monotone(self, p):
        n, X = p
        for P in proper_ideals(build_template_zx_mod(n, X)):
            for kind in cl.REGION_KINDS:
                if kind == "weakly":
                    continue
                assert cl.compute_region(P, kind).monotone()

    @given(zx_params(moduli=(4, 6, 8, 9)))
    def test_prime_region_inside_closed_region(self, p):
        n, X = p
        for P in proper_ideals(build_template_zx_mod(n, X)):
            lp = cl.compute_region(P, "prime")
            cp = cl.compute_region(P, "closed")
            wp = cl.compute_region(P, "weakly")
            assert lp.pairs <= cp.pairs and lp.pairs <= wp.pairs

    @given(zx_params(moduli=(4, 6, 8, 9)))
    def test_closed_below_diagonal(self, p):
        n, X = p
        for P in proper_ideals(build_template_zx_mod(n, X)):
            cp = cl.compute_region(P, "closed")
            assert all((a, b) in cp for a in range(1, 5) for b in range(a, 5))

    @given(zx_params(moduli=(4, 6, 8, 9)), exponents, exponents)
    def test_residual_and_ideal_characterizations(self, p, a, b):
        n, X = p
        for P in proper_ideals(build_template_zx_mod(n, X)):
            ref = cl.is_ab_prime(P, a, b)
            assert cl.residual_characterization(P, a, b) == ref
            assert cl.ideal_characterization(P, a, b) == ref

    @given(zx_params(moduli=(4, 6, 8, 9)), exponents, exponents)
    def test_zeros_empty_iff_weakly_equals_prime_on_c(self, p, a, b):
        n, X = p
        for P in proper_ideals(build_template_zx_mod(n, X)):
            if not cl.is_C_hyperideal(P) or not cl.is_weakly_ab_prime(P, a, b):
                continue
            assert (not cl.find_ab_zeros(P, a, b)) == cl.is_ab_prime(P, a, b)

    @given(zx_params(moduli=(4, 6, 8, 9)), exponents, exponents)
    def test_prime_has_no_zeros_outside(self, p, a, b):
        n, X = p
        for P in proper_ideals(build_template_zx_mod(n, X)):
            if cl.is_ab_prime(P, a, b):
                # every zero would have x^a o y inside P, contradicting primeness on C-ideals
                if cl.is_C_hyperideal(P):
                    assert cl.find_ab_zeros(P, a, b) == []


class TestChainsAndMisc:
    def test_q_of(self):
        Q = Hyperideal(z8ex(), [0, 4])
        assert list(cl.q_of(Q, 2)) == [0, 2, 4, 6]
        assert list(cl.q_of(Q, 1)) == [0, 4]

    def test_residual_chain_ascends(self):
        P = Hyperideal(build_template_zx_mod(8, [1]), [0])
        for x in range(8):
            chain = cl.residual_chain(P, x)
            assert all(a & ~b == 0 for a, b in zip(chain, chain[1:]))
            assert chain[-1] == chain[-2]
        assert cl.max_length(P) == 3

    def test_irreducible(self):
        H = build_template_zx_mod(6, [1])
        assert not cl.is_irreducible(Hyperideal(H, [0]))
        assert cl.is_irreducible(Hyperideal(H, [0, 3]))

    def test_principal_ring(self):
        assert cl.is_principal_ring(build_template_zx_mod(12, [1]))
        got = cl.principal_characterizations(Hyperideal(build_template_zx_mod(12, [1]), [0, 6]), 1, 1)
        assert set(got) == {"ideals", "residual", "element"}

    def test_classify_report(self):
        rep = cl.classify(Hyperideal(z8ex(), [0, 4]))
        assert [3, 1] in rep.regions["weakly"] and [3, 1] not in rep.regions["prime"]
        assert "3,1" in rep.zeros

    @given(st.sampled_from([(6, [1]), (8, [1]), (9, [1]), (12, [1])]))
    def test_classical_prime_region(self, p):
        n, X = p
        H = build_template_zx_mod(n, X)
        for P in proper_ideals(H):
            if cl.is_prime(P):
                assert (1, 1) in cl.compute_region(P, "prime")
