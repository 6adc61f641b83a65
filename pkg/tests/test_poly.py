import itertools
import random

import pytest

from triarea.exactnum import GaussianRational, Rational, rational
from triarea.poly import (
    HomogPoly,
    algebraic_subdivide,
    canonicalize_class,
    detect_subdivision,
    evaluate,
    format_poly,
    mod2_reduce,
    monomial_exponents,
    parse_poly,
    permute_variables,
    poly_json_dumps,
    poly_json_loads,
    sigma,
    specialize,
)

# the two displayed relations for the one- and two-interior-vertex diagonals
P_T1 = parse_poly("A-B+C-D")
P_T2 = parse_poly("A^2-2*A*C+2*A*E+C^2+2*C*E+E^2-B^2-2*B*D-2*B*F-D^2+2*D*F-F^2")

# same quadratic, entered term by term as printed (independent of the parser)
P_T2_TERMS = [
    ("A^2", 1), ("A*C", -2), ("A*E", 2), ("C^2", 1), ("C*E", 2), ("E^2", 1),
    ("B^2", -1), ("B*D", -2), ("B*F", -2), ("D^2", -1), ("D*F", 2), ("F^2", -1),
]


def random_poly(rng, nvars=None, degree=None, maxterms=6, all_vars=False):
    nvars = nvars or rng.randint(2, 4)
    degree = degree or rng.randint(1, 3)
    exps = monomial_exponents(nvars, degree)
    while True:
        terms = {}
        for _ in range(rng.randint(1, maxterms)):
            terms[rng.choice(exps)] = rng.randint(-9, 9)
        p = HomogPoly(nvars, terms)
        if p.is_zero():
            continue
        if all_vars and not all(
            any(e[v] for e in p.terms) for v in range(nvars)
        ):
            continue
        return p


class TestBasics:
    def test_homogeneity_enforced(self):
        with pytest.raises(ValueError):
            HomogPoly(2, {(1, 0): 1, (2, 0): 1})

    def test_zero_terms_dropped(self):
        p = HomogPoly(2, {(1, 0): 1, (0, 1): 0})
        assert p.terms == {(1, 0): 1}

    def test_degree_of_zero(self):
        assert HomogPoly(3, {}).degree is None
        assert HomogPoly(3, {}).is_zero()

    def test_normalize(self):
        p = HomogPoly(2, {(2, 0): -4, (0, 2): 6})
        n = p.normalize()
        assert n.terms == {(2, 0): 2, (0, 2): -3}  # leading (A^2) made positive
        assert n.normalize() == n

    def test_mul_pow(self):
        a_plus_b = parse_poly("A+B")
        assert a_plus_b * a_plus_b == parse_poly("A^2+2*A*B+B^2")
        assert a_plus_b**3 == parse_poly("A^3+3*A^2*B+3*A*B^2+B^3")


class TestEvaluate:
    def test_t1_at_ones(self):
        assert evaluate(P_T1, [1, 1, 1, 1]) == 0

    def test_sigma_at_ones(self):
        for n in (2, 5, 9):
            assert evaluate(sigma(n), [1] * n) == n

    def test_t2_at_ones_vs_term_sum(self):
        # oracle: direct expansion of the printed polynomial at the all-ones
        # point is just the sum of its printed coefficients
        expected = sum(c for _, c in P_T2_TERMS)
        assert expected == 0
        assert evaluate(P_T2, [1] * 6) == expected

    def test_exact_rational_and_gaussian(self):
        p = parse_poly("A^2-B^2")
        assert evaluate(p, [rational(1, 2), rational(1, 3)]) == rational(5, 36)
        i = GaussianRational(0, 1)
        assert evaluate(p, [i, GaussianRational(1)]) == GaussianRational(-2)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(P_T1, [1, 2, 3])


class TestSpecialize:
    def test_t2_ab(self):
        assert specialize(P_T2, (0, 1)) == parse_poly("A^2-B^2")

    def test_t2_ac(self):
        assert specialize(P_T2, (0, 2)) == parse_poly("A^2-2*A*B+B^2")

    def test_identity(self):
        assert specialize(P_T2, tuple(range(6))) == P_T2

    def test_zero_marker(self):
        p = parse_poly("A*B")
        z = specialize(p, (0,))
        assert z.is_zero() and z.nvars == 1

    def test_empty_keep_rejected(self):
        with pytest.raises(ValueError):
            specialize(P_T1, ())

    @pytest.mark.parametrize("seed", range(20))
    def test_composition(self, seed):
        rng = random.Random(seed)
        p = random_poly(rng, nvars=4)
        outer = tuple(sorted(rng.sample(range(4), 3)))
        inner = tuple(sorted(rng.sample(range(3), 2)))
        lhs = specialize(specialize(p, outer), inner)
        rhs = specialize(p, tuple(outer[i] for i in inner))
        assert lhs == rhs


class TestMod2:
    def test_t1(self):
        assert mod2_reduce(P_T1) == parse_poly("A+B+C+D")

    def test_t2_is_sigma_squared(self):
        sq = mod2_reduce(sigma(6) * sigma(6))
        assert mod2_reduce(P_T2) == sq
        assert sq == parse_poly("A^2+B^2+C^2+D^2+E^2+F^2")

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            mod2_reduce(HomogPoly(1, {(2,): 2}))

    @pytest.mark.parametrize("seed", range(15))
    def test_ring_homomorphism(self, seed):
        rng = random.Random(seed)
        p = random_poly(rng, nvars=3).normalize()
        q = random_poly(rng, nvars=3).normalize()
        prod = p * q
        if prod.is_zero() or prod.content() != 1:
            return
        lhs = mod2_reduce(prod)
        rhs = mod2_reduce(mod2_reduce(p) * mod2_reduce(q)) if not (
            mod2_reduce(p) * mod2_reduce(q)).is_zero() else HomogPoly(3, {})
        assert lhs == rhs


class TestCanonicalClass:
    def test_sign_symmetry(self):
        assert canonicalize_class(parse_poly("A-B")) == canonicalize_class(parse_poly("B-A"))

    def test_swap_symmetry(self):
        assert canonicalize_class(parse_poly("A+B-C")) == canonicalize_class(parse_poly("A-B+C"))

    def test_exhaustive_orbit_oracle(self):
        p = parse_poly("A^2+2*A*B+2*A*C+B^2-2*B*C+C^2")
        got = canonicalize_class(p).rep
        # oracle: enumerate all 6 permutations x 2 signs, take the smallest key
        best = None
        for perm in itertools.permutations(range(3)):
            q = permute_variables(p, perm)
            for cand in (q, -q):
                if best is None or cand.key() < best.key():
                    best = cand
        assert got == best

    @pytest.mark.parametrize("seed", range(100))
    def test_orbit_invariance(self, seed):
        rng = random.Random(seed)
        p = random_poly(rng).normalize()
        cls = canonicalize_class(p)
        perm = list(range(p.nvars))
        rng.shuffle(perm)
        q = permute_variables(p, perm)
        if rng.random() < 0.5:
            q = -q
        assert canonicalize_class(q) == cls
        # idempotent
        assert canonicalize_class(cls.rep) == cls


class TestAlgebraicSubdivision:
    def test_linear(self):
        q = algebraic_subdivide(parse_poly("A-B"), 0)
        assert canonicalize_class(q) == canonicalize_class(parse_poly("A+B-C"))

    def test_single_variable(self):
        q = algebraic_subdivide(HomogPoly(1, {(1,): 1}), 0)
        assert q == sigma(2)

    def test_then_zero_is_left_inverse(self):
        p = parse_poly("A^2-2*A*B+B^2")
        q = algebraic_subdivide(p, 1)
        # kill the second half of the split variable
        back = specialize(q, (0, 1))
        assert back == p.normalize()

    def test_detect_pair(self):
        got = detect_subdivision(parse_poly("A+B-C"))
        assert got is not None
        (i, j), merged = got
        assert (i, j) == (0, 1)
        assert canonicalize_class(merged) == canonicalize_class(parse_poly("A-B"))

    def test_detect_none_on_core_quadratic(self):
        assert detect_subdivision(parse_poly("A^2+2*A*B+2*A*C+B^2-2*B*C+C^2")) is None

    def test_detect_sigma(self):
        got = detect_subdivision(sigma(4))
        assert got is not None
        (_, _), merged = got
        assert merged == sigma(3)

    @pytest.mark.parametrize("seed", range(30))
    def test_detect_recovers_subdivision(self, seed):
        # when p is not itself a subdivision, merging any detected pair of a
        # subdivision of p lands back in the class of p
        rng = random.Random(seed)
        while True:
            p = random_poly(rng, nvars=3, all_vars=True).normalize()
            if detect_subdivision(p) is None:
                break
        v = rng.randrange(3)
        q = algebraic_subdivide(p, v)
        got = detect_subdivision(q)
        assert got is not None
        _, merged = got
        assert canonicalize_class(merged) == canonicalize_class(p)


class TestFormats:
    CASES = ["A-B", "A^2-2*A*B+B^2", "3*A*B-2*B^2+A^2", "A", "7*A^3"]

    @pytest.mark.parametrize("text", CASES)
    def test_text_round_trip(self, text):
        p = parse_poly(text)
        assert parse_poly(format_poly(p)) == p

    def test_format_canonical_order(self):
        assert format_poly(parse_poly("B^2-A^2")) == "-A^2+B^2"

    @pytest.mark.parametrize("text", CASES)
    def test_json_round_trip(self, text):
        p = parse_poly(text)
        assert poly_json_loads(poly_json_dumps(p)) == p

    def test_json_coeffs_are_strings(self):
        big = 10**30
        p = HomogPoly(1, {(1,): big})
        assert poly_json_loads(poly_json_dumps(p)) == p

    def test_zero_format(self):
        z = HomogPoly(2, {})
        assert format_poly(z) == "0"
        assert parse_poly("0", nvars=2) == z

    def test_monomial_exponents_count(self):
        import math

        assert len(monomial_exponents(10, 6)) == math.comb(15, 9) == 5005
        assert len(monomial_exponents(3, 2)) == 6
