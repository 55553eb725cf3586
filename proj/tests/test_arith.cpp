#include <doctest.h>

#include <random>

#include "isovec/arith.hpp"
#include "isovec/errors.hpp"

using namespace isovec;

namespace {

// independent helpers
std::vector<std::pair<long, int>> trial_division(long n)
{
    std::vector<std::pair<long, int>> out;
    n = std::labs(n);
    for (long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e)
            out.push_back({p, e});
    }
    if (n > 1)
        out.push_back({n, 1});
    return out;
}

long powmod(long b, long e, long m)
{
    long r = 1;
    b %= m;
    if (b < 0)
        b += m;
    while (e) {
        if (e & 1)
            r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

} // namespace

TEST_CASE("factor examples")
{
    Factorization f = factor(12);
    CHECK(f.unit_sign == 1);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower{2, 2});
    CHECK(f.factors[1] == PrimePower{3, 1});

    Factorization m = factor(-1);
    CHECK(m.unit_sign == -1);
    CHECK(m.factors.empty());

    auto td = trial_division(9991);
    Factorization g = factor(9991);
    REQUIRE(g.factors.size() == td.size());
    for (std::size_t i = 0; i < td.size(); ++i) {
        CHECK(g.factors[i].prime == td[i].first);
        CHECK(g.factors[i].exponent == static_cast<unsigned long>(td[i].second));
    }
    CHECK(g.factors[0].prime == 97);
    CHECK(g.factors[1].prime == 103);

    CHECK_THROWS_AS(factor(0), InvalidArgument);
}

TEST_CASE("factor reassembles and agrees with trial division")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> dist(-2'000'000, 2'000'000);
    for (int i = 0; i < 500; ++i) {
        long n = dist(rng);
        if (n == 0)
            continue;
        Factorization f = factor(n);
        CHECK(f.value() == n);
        auto td = trial_division(n);
        REQUIRE(f.factors.size() == td.size());
        for (std::size_t j = 0; j < td.size(); ++j) {
            CHECK(f.factors[j].prime == td[j].first);
            CHECK(is_prime(f.factors[j].prime));
        }
    }
}

TEST_CASE("factor handles products of large primes")
{
    Integer p("1000000007"), q("998244353"), r("2305843009213693951");
    Factorization f = factor(p * q * q * r);
    CHECK(f.value() == p * q * q * r);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].prime == q);
    CHECK(f.factors[0].exponent == 2);
    CHECK(f.factors[1].prime == p);
    CHECK(f.factors[2].prime == r);
}

TEST_CASE("factor refuses oversized composites")
{
    FactorConfig cfg;
    cfg.max_cofactor_digits = 10;
    Integer p("1000000007"), q("998244353");
    CHECK_THROWS_AS(factor(p * q, cfg), ResourceLimit);
}

TEST_CASE("squarefree_part examples")
{
    auto a = squarefree_part(18);
    CHECK(a.s == 2);
    CHECK(a.t == 3);
    auto b = squarefree_part(Rational(-4, 9));
    CHECK(b.s == -1);
    CHECK(b.t == Rational(2, 3));
    auto c = squarefree_part(Rational(45, 8));
    CHECK(c.s == 10);
    CHECK(c.t == Rational(3, 4));
    CHECK(c.s * c.t * c.t == Rational(45, 8));
    CHECK_THROWS_AS(squarefree_part(0), InvalidArgument);
}

TEST_CASE("squarefree_part reconstructs q")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> dist(-5000, 5000);
    for (int i = 0; i < 500; ++i) {
        long n = dist(rng), d = dist(rng);
        if (n == 0 || d == 0)
            continue;
        Rational q(n, d);
        q.canonicalize();
        auto sq = squarefree_part(q);
        CHECK(sq.s * sq.t * sq.t == q);
        CHECK(sq.t > 0);
        for (auto const & [p, e] : trial_division(sq.s.get_si()))
            CHECK(e == 1);
    }
}

TEST_CASE("sqrt_exact examples")
{
    CHECK(*sqrt_exact(Rational(49, 4)) == Rational(7, 2));
    CHECK_FALSE(sqrt_exact(2).has_value());
    CHECK(*sqrt_exact(0) == 0);
    CHECK_FALSE(sqrt_exact(-4).has_value());
}

TEST_CASE("sqrt_mod examples")
{
    auto r = sqrt_mod(2, 7);
    REQUIRE(r);
    CHECK((*r == 3 || *r == 4));
    CHECK_FALSE(sqrt_mod(2, 3).has_value());
    auto s = sqrt_mod(1, 5, 2);
    REQUIRE(s);
    CHECK(mod_floor(*s * *s - 1, 25) == 0);
    CHECK_THROWS_AS(sqrt_mod(3, 2), InvalidArgument);
}

TEST_CASE("sqrt_mod agrees with exhaustive residues for p <= 100")
{
    for (long p = 3; p <= 100; p += 2) {
        if (trial_division(p).size() != 1 || trial_division(p)[0].second != 1)
            continue;
        std::vector<bool> is_sq(static_cast<std::size_t>(p), false);
        for (long x = 0; x < p; ++x)
            is_sq[static_cast<std::size_t>(x * x % p)] = true;
        for (long a = 1; a < p; ++a) {
            for (unsigned long k : {1ul, 2ul, 3ul}) {
                auto r = sqrt_mod(a, p, k);
                CHECK(r.has_value() == is_sq[static_cast<std::size_t>(a)]);
                if (r) {
                    Integer m;
                    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), k);
                    CHECK(mod_floor(*r * *r - a, m) == 0);
                }
            }
        }
    }
}

TEST_CASE("crt examples")
{
    CHECK(crt({{1, 3}, {2, 5}}) == 7);
    CHECK(crt({{0, 2}}) == 0);
    CHECK(crt({{2, 3}, {3, 5}, {2, 7}}) == 23);
    long scan = -1;
    for (long x = 0; x < 105 && scan < 0; ++x)
        if (x % 3 == 2 && x % 5 == 3 && x % 7 == 2)
            scan = x;
    CHECK(scan == 23);
    CHECK_THROWS_AS(crt({{1, 4}, {1, 6}}), InvalidArgument);
}

TEST_CASE("jacobi examples and Euler criterion")
{
    CHECK(jacobi(2, 7) == 1);
    CHECK(jacobi(2, 3) == -1);
    CHECK(jacobi(0, 5) == 0);
    CHECK_THROWS_AS(jacobi(3, 8), InvalidArgument);
    for (long p : {3, 5, 7, 11, 13, 101, 997})
        for (long a = -30; a <= 30; ++a) {
            if (a % p == 0)
                continue;
            long e = powmod(a, (p - 1) / 2, p);
            CHECK(jacobi(a, p) == (e == 1 ? 1 : -1));
        }
}

TEST_CASE("parse_rational")
{
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("17") == 17);
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
}
