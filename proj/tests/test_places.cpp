#include <doctest.h>

#include <random>

#include "isovec/errors.hpp"
#include "isovec/oracle.hpp"
#include "isovec/places.hpp"

using namespace isovec;

namespace {

Place P(long p)
{
    return Place::prime(p);
}

Place const inf = Place::infinity();

std::vector<Integer> primes_upto(long n)
{
    std::vector<Integer> out;
    for (Integer p = 2; p <= n; p = next_prime(p))
        out.push_back(p);
    return out;
}

} // namespace

TEST_CASE("valuation examples")
{
    CHECK(valuation(Rational(18), 3) == 2);
    CHECK(valuation(Rational(5, 8), 2) == -3);
    CHECK(valuation(Rational(7), 3) == 0);
    CHECK_THROWS_AS(valuation(Rational(0), 3), InvalidArgument);
}

TEST_CASE("local_square examples")
{
    CHECK(local_square(17, P(2)));
    CHECK_FALSE(local_square(2, P(3)));
    CHECK_FALSE(local_square(-4, inf));
    // 17 has square roots modulo every power of 2 checked here
    for (long m = 8; m <= 1024; m *= 2) {
        bool found = false;
        for (long x = 1; x < m && !found; x += 2)
            found = (x * x - 17) % m == 0;
        CHECK(found);
    }
}

TEST_CASE("hilbert_symbol examples")
{
    CHECK(hilbert_symbol(-1, -1, inf) == -1);
    CHECK(hilbert_symbol(-1, -1, P(2)) == -1);
    CHECK(local_solubility_scan(-1, -1, 2, 4) == -1);
    CHECK(hilbert_symbol(2, 3, P(7)) == 1);
    CHECK(local_solubility_scan(2, 3, 7, 2) == 1);
}

TEST_CASE("hasse_invariant examples")
{
    CHECK(hasse_invariant(DiagonalForm{1, 1}, P(5)) == 1);
    CHECK(hasse_invariant(DiagonalForm{-1, -1}, P(2)) == -1);
    CHECK(hasse_invariant(DiagonalForm{-1, -1, -1}, inf) == -1);
    CHECK(hasse_invariant(DiagonalForm{7}, P(7)) == 1);
}

TEST_CASE("local_isotropy examples")
{
    CHECK_FALSE(local_isotropy(DiagonalForm{1, 1, 1, -7}, P(2)));
    CHECK_FALSE(local_isotropy_scan({1, 1, 1, -7}, 2, 5));
    CHECK(local_isotropy(DiagonalForm{1, -2}, P(7)));
    CHECK(local_isotropy(DiagonalForm{1, 1, 1, 1, 1}, P(3)));
    CHECK_FALSE(local_isotropy(DiagonalForm{5}, P(3)));
}

TEST_CASE("support_set examples")
{
    CHECK(support_set(DiagonalForm{1, 1, 1}) == SupportSet{2});
    CHECK(support_set(DiagonalForm{3, 5}) == SupportSet{2, 3, 5});
    CHECK(support_set(DiagonalForm{4, 9}) == SupportSet{2});
    CHECK(support_set(DiagonalForm{Rational(1, 12)}) == SupportSet{2, 3});
}

TEST_CASE("is_globally_isotropic examples")
{
    CHECK_FALSE(is_globally_isotropic(DiagonalForm{1, 1, 1, -7}));
    CHECK(is_globally_isotropic(DiagonalForm{1, 1, 1, 1, -7}));
    CHECK_FALSE(is_globally_isotropic(DiagonalForm{1, 1}));
    CHECK_FALSE(is_globally_isotropic(DiagonalForm{3}));
    CHECK(is_globally_isotropic(DiagonalForm{9, -1}));
}

TEST_CASE("anisotropy_witness names a failing place")
{
    CHECK(anisotropy_witness(DiagonalForm{1, 1, 1, -7})->to_string() == "2");
    CHECK(anisotropy_witness(DiagonalForm{1, 1})->to_string() == "inf");
    for (long a : {3, 17, 21, -5})
        CHECK_FALSE(local_isotropy(DiagonalForm{1, Rational(-a)}, *anisotropy_witness(DiagonalForm{1, Rational(-a)})));
    CHECK_FALSE(anisotropy_witness(DiagonalForm{1, 1, -2}).has_value());
}

TEST_CASE("degenerate forms are rejected")
{
    CHECK_THROWS_AS(DiagonalForm({3, 0}), InvalidArgument);
    CHECK_THROWS_AS(DiagonalForm(std::vector<Rational>{}), InvalidArgument);
}

TEST_CASE("hilbert symbol: bilinearity, symmetry, normalization")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    auto rnd = [&] {
        long n = 0, d = 0;
        while (n == 0)
            n = dist(rng);
        while (d == 0)
            d = dist(rng);
        Rational q(n, d);
        q.canonicalize();
        return q;
    };
    std::vector<Place> places{inf};
    for (auto const & p : primes_upto(30))
        places.push_back(Place::prime(p));
    for (int i = 0; i < 300; ++i) {
        Rational a = rnd(), b = rnd(), c = rnd();
        for (auto const & v : places) {
            CHECK(hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
            CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
            CHECK(hilbert_symbol(a, -a, v) == 1);
        }
    }
}

TEST_CASE("hilbert reciprocity")
{
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> dist(-1000, 1000);
    for (int i = 0; i < 1000; ++i) {
        long a = 0, b = 0;
        while (a == 0)
            a = dist(rng);
        while (b == 0)
            b = dist(rng);
        int prod = hilbert_symbol(a, b, inf);
        for (auto const & p : prime_divisors(Integer(2 * a * b)))
            prod *= hilbert_symbol(a, b, Place::prime(p));
        CHECK(prod == 1);
    }
}

TEST_CASE("hilbert symbol matches the solubility scan on square-class representatives")
{
    for (auto const & p : primes_upto(50)) {
        std::vector<long> reps;
        if (p == 2) {
            reps = {1, 3, 5, 7, 2, 6, 10, 14};
        } else {
            long u = 2;
            while (jacobi(u, p) != -1)
                ++u;
            reps = {1, u, p.get_si(), u * p.get_si()};
        }
        int k = p == 2 ? 5 : 3;
        for (long a : reps)
            for (long b : reps)
                CHECK(hilbert_symbol(a, b, Place::prime(p)) == local_solubility_scan(a, b, p.get_si(), k));
    }
}

TEST_CASE("orthogonal sum rule for hasse invariants")
{
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> dist(-60, 60);
    auto form = [&](std::size_t n) {
        std::vector<Rational> c;
        while (c.size() < n) {
            long a = dist(rng);
            if (a)
                c.emplace_back(a);
        }
        return DiagonalForm(c);
    };
    for (int i = 0; i < 200; ++i) {
        DiagonalForm f = form(1 + i % 3), g = form(1 + (i / 3) % 3);
        DiagonalForm h = orthogonal_sum(f, g);
        std::vector<Place> places{inf};
        for (auto const & p : primes_upto(60))
            places.push_back(Place::prime(p));
        for (auto const & v : places)
            CHECK(hasse_invariant(h, v) ==
                  hasse_invariant(f, v) * hasse_invariant(g, v) * hilbert_symbol(f.determinant(), g.determinant(), v));
    }
}

TEST_CASE("local isotropy matches a primitive-vector scan")
{
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<long> dist(-10, 10);
    for (long p : {2, 3, 5, 7, 11, 13, 17, 19}) {
        for (int i = 0; i < 60; ++i) {
            std::size_t n = 2 + static_cast<std::size_t>(i % 3);
            std::vector<Rational> c;
            std::vector<std::int64_t> ci;
            while (c.size() < n) {
                long a = dist(rng);
                if (a) {
                    c.emplace_back(a);
                    ci.push_back(a);
                }
            }
            int k = p == 2 ? 4 : 2;
            CHECK_MESSAGE(local_isotropy(DiagonalForm(c), Place::prime(p)) == local_isotropy_scan(ci, p, k),
                          DiagonalForm(c).to_string() << " at " << p);
        }
    }
}

TEST_CASE("global isotropy for dims 3 and 4 means local isotropy everywhere relevant")
{
    std::mt19937_64 rng(15);
    std::uniform_int_distribution<long> dist(-30, 30);
    for (int i = 0; i < 200; ++i) {
        std::vector<Rational> c;
        while (c.size() < 3 + static_cast<std::size_t>(i % 2)) {
            long a = dist(rng);
            if (a)
                c.emplace_back(a);
        }
        DiagonalForm f(c);
        bool all = local_isotropy(f, inf);
        for (auto const & p : primes_upto(40))
            all = all && local_isotropy(f, Place::prime(p));
        CHECK(is_globally_isotropic(f) == all);
    }
}
