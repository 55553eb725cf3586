#include <doctest.h>

#include <random>

#include "isovec/classgroup.hpp"
#include "isovec/errors.hpp"
#include "isovec/sqclasses.hpp"

using namespace isovec;

namespace {

PrimeIdeal prime_above(QuadField const & L, long p, std::size_t i = 0)
{
    return factor_prime(L, p).primes.at(i);
}

// independent F2 rank by brute force over row combinations (small matrices)
std::size_t rank_brute(std::vector<F2Vector> const & vs)
{
    std::size_t n = vs.size(), best = 0;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<F2Vector> pick;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                pick.push_back(vs[i]);
        bool independent = true;
        for (unsigned long sub = 1; sub < (1ul << pick.size()) && independent; ++sub) {
            F2Vector s(vs.empty() ? 0 : vs[0].size(), 0);
            for (std::size_t i = 0; i < pick.size(); ++i)
                if (sub >> i & 1)
                    for (std::size_t j = 0; j < s.size(); ++j)
                        s[j] ^= pick[i][j];
            independent = std::any_of(s.begin(), s.end(), [](auto x) { return x != 0; });
        }
        if (independent)
            best = std::max(best, pick.size());
    }
    return best;
}

} // namespace

TEST_CASE("f2_solve examples")
{
    auto x = f2_solve(F2Matrix::identity(2), {1, 0});
    REQUIRE(x);
    CHECK(*x == F2Vector{1, 0});
    auto y = f2_solve(F2Matrix::from_rows({{1, 1}}, 2), {1});
    REQUIRE(y);
    CHECK(*y == F2Vector{1, 0});
    CHECK_FALSE(f2_solve(F2Matrix::from_rows({{0, 0}}, 2), {1}).has_value());
    CHECK_THROWS_AS(f2_solve(F2Matrix::identity(2), {1}), InvalidArgument);
}

TEST_CASE("f2_solve solutions check out and absence matches rank")
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        std::vector<F2Vector> rows(r, F2Vector(c));
        for (auto & row : rows)
            for (auto & b : row)
                b = rng() & 1;
        F2Vector rhs(r);
        for (auto & b : rhs)
            b = rng() & 1;
        F2Matrix A = F2Matrix::from_rows(rows, c);
        auto x = f2_solve(A, rhs);
        std::vector<F2Vector> aug = rows;
        for (std::size_t i = 0; i < r; ++i)
            aug[i].push_back(rhs[i]);
        // columns as vectors for rank comparison
        auto cols = [](std::vector<F2Vector> const & m) {
            std::vector<F2Vector> out(m[0].size(), F2Vector(m.size()));
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = 0; j < m[0].size(); ++j)
                    out[j][i] = m[i][j];
            return out;
        };
        bool solvable = rank_brute(cols(rows)) == rank_brute(cols(aug));
        CHECK(x.has_value() == solvable);
        if (x)
            CHECK(A.apply(*x) == rhs);
        CHECK(A.rank() == rank_brute(rows));
        auto all = f2_solve_all(A, rhs);
        if (all)
            for (auto const & k : all->kernel)
                CHECK(A.apply(k) == F2Vector(r, 0));
    }
}

TEST_CASE("sing_basis_Q examples")
{
    CHECK(sing_basis_Q(std::vector<Integer>{2}).basis == std::vector<Integer>{-1, 2});
    CHECK(sing_basis_Q(std::vector<Integer>{2, 3, 5}).basis == std::vector<Integer>{-1, 2, 3, 5});
    CHECK(sing_basis_Q(std::vector<Integer>{}).basis == std::vector<Integer>{-1});
    CHECK_THROWS_AS(sing_basis_Q(std::vector<Integer>{4}), InvalidArgument);
}

TEST_CASE("coords_Q examples")
{
    SingBasisQ B = sing_basis_Q(std::vector<Integer>{2, 3});
    CHECK(coords_Q(-6, B) == F2Vector{1, 1, 1});
    CHECK(coords_Q(4, B) == F2Vector{0, 0, 0});
    CHECK(coords_Q(Rational(3, 2), B) == F2Vector{0, 1, 1});
    CHECK_THROWS_AS(coords_Q(5, B), InvalidArgument);
}

TEST_CASE("coords_Q is a homomorphism")
{
    SingBasisQ B = sing_basis_Q(std::vector<Integer>{2, 3, 5, 7});
    std::mt19937_64 rng(32);
    auto rnd = [&] {
        Rational q = (rng() & 1) ? -1 : 1;
        for (long p : {2, 3, 5, 7})
            for (int e = static_cast<int>(rng() % 4); e > 0; --e)
                q *= (rng() & 1) ? Rational(p) : Rational(1, p);
        long s = static_cast<long>(1 + rng() % 5);
        return Rational(q * s * s);
    };
    for (int i = 0; i < 200; ++i) {
        Rational a = rnd(), b = rnd();
        F2Vector ca = coords_Q(a, B), cb = coords_Q(b, B), cab = coords_Q(a * b, B);
        for (std::size_t j = 0; j < ca.size(); ++j)
            CHECK(cab[j] == (ca[j] ^ cb[j]));
    }
}

TEST_CASE("extend_to_odd_class_number examples")
{
    QuadField G(-1);
    CHECK(extend_to_odd_class_number(G, {}).empty());

    QuadField M(-5);
    auto T = extend_to_odd_class_number(M, {});
    REQUIRE(T.size() == 1);
    CHECK(T[0] == prime_above(M, 2));

    QuadField R(2);
    auto P7 = prime_above(R, 7);
    auto U = extend_to_odd_class_number(R, {P7});
    REQUIRE(U.size() == 1);
    CHECK(U[0] == P7);
}

TEST_CASE("extended sets have odd class number")
{
    for (long d : {-5, -14, -21, -105, -210, 10, 34, 82, 226}) {
        QuadField L(d);
        ClassGroup const & cl = L.class_group();
        auto T = extend_to_odd_class_number(L, {});
        std::vector<ClassGroup::Vec> xs;
        for (auto const & P : T)
            xs.push_back(cl.dlog(P));
        CHECK(cl.two_rank_of_quotient(xs) == 0);
    }
}

TEST_CASE("sing_basis_quad examples")
{
    QuadField G(-1);
    auto g = sing_basis_quad(G, {prime_above(G, 5)});
    CHECK(g.basis.size() == 2);

    QuadField R(2);
    auto r = sing_basis_quad(R, {});
    REQUIRE(r.basis.size() == 2);
    for (auto const & e : r.basis)
        CHECK(abs(norm(e)) == 1);
    CHECK(r.basis[0] != r.basis[1]);

    QuadField M(-5);
    auto m = sing_basis_quad(M, {prime_above(M, 2)});
    CHECK(m.basis.size() == 2);
}

TEST_CASE("Sing dimension identity and even valuations outside S")
{
    // dim Sing_S = dim Units_S + 2-rank of Cl_S, with Units_S of rank |S| + r + 1
    for (long d : {-1, -5, -14, -21, -23, 2, 10, 79, 82}) {
        QuadField L(d);
        ClassGroup const & cl = L.class_group();
        for (std::vector<long> ps : {std::vector<long>{}, {2}, {3, 5}, {2, 7, 11}}) {
            std::vector<PrimeIdeal> S;
            for (long p : ps)
                for (auto const & P : factor_prime(L, p).primes)
                    S.push_back(P);
            auto B = sing_basis_quad(L, S);
            std::vector<ClassGroup::Vec> xs;
            for (auto const & P : S)
                xs.push_back(cl.dlog(P));
            long units_rank = static_cast<long>(S.size()) + (L.is_real() ? 1 : 0) + 1;
            CHECK(static_cast<long>(B.basis.size()) == units_rank + cl.two_rank_of_quotient(xs));
            for (auto const & e : B.basis)
                for (Integer p = 2; p < 200; p = next_prime(p))
                    for (auto const & P : factor_prime(L, p).primes)
                        if (std::find(S.begin(), S.end(), P) == S.end())
                            CHECK(element_valuation(L, P, e) % 2 == 0);
        }
    }
}
