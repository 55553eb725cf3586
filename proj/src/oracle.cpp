#include "isovec/oracle.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "isovec/errors.hpp"

namespace isovec {

namespace {

using i64 = std::int64_t;

std::optional<i64> exact_sqrt(i64 n)
{
    if (n < 0)
        return std::nullopt;
    auto r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    if (r * r != n)
        return std::nullopt;
    return r;
}

i64 mod(i64 x, i64 m)
{
    x %= m;
    return x < 0 ? x + m : x;
}

} // namespace

std::optional<IsotropicVector> brute_search(DiagonalForm const & f, SearchBudget const & budget)
{
    if (budget.height < 1)
        throw InvalidArgument("brute_search: height must be positive");
    std::size_t n = f.dim();
    mpz_class den = 1;
    for (auto const & a : f.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den().get_mpz_t());
    std::vector<i64> c;
    for (auto const & a : f.coeffs()) {
        mpz_class v = a.get_num() * (den / a.get_den());
        if (!v.fits_slong_p())
            throw InvalidArgument("brute_search: coefficient too large");
        c.push_back(v.get_si());
    }
    i64 H = budget.height;
    std::vector<i64> v(n, 0);
    // odometer over the first n-1 coordinates; the last one is solved for
    for (;;) {
        i64 s = 0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            s += c[i] * v[i] * v[i];
        if (s % c[n - 1] == 0) {
            auto r = exact_sqrt(-s / c[n - 1]);
            if (r && *r <= H) {
                v[n - 1] = *r;
                i64 g = 0;
                for (auto x : v)
                    g = std::gcd(g, x);
                if (g == 1) {
                    IsotropicVector out;
                    for (auto x : v)
                        out.emplace_back(x);
                    return out;
                }
            }
        }
        std::size_t i = n - 1;
        while (i > 0 && v[i - 1] == H)
            v[--i] = 0;
        if (i == 0)
            return std::nullopt;
        ++v[i - 1];
    }
}

int local_solubility_scan(i64 a, i64 b, i64 p, int k)
{
    if (a == 0 || b == 0)
        throw InvalidArgument("local_solubility_scan: zero coefficient");
    if (p < 2 || p > 50)
        throw InvalidArgument("local_solubility_scan: p out of range");
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw InvalidArgument("local_solubility_scan: p is not prime");
    while (a % (p * p) == 0)
        a /= p * p;
    while (b % (p * p) == 0)
        b /= p * p;
    int va = a % p == 0, vb = b % p == 0;
    int need = 1 + (p == 2 ? 2 : 0) + std::max(va, vb);
    if (k < need)
        throw InvalidArgument("local_solubility_scan: precision " + std::to_string(k) + " below " +
                              std::to_string(need));
    i64 m = 1;
    for (int i = 0; i < k; ++i) {
        m *= p;
        if (m > 10'000'000)
            throw InvalidArgument("local_solubility_scan: modulus too large");
    }
    a = mod(a, m);
    b = mod(b, m);
    // value tables: is r of the form c*t^2 mod m
    auto table = [m](i64 c) {
        std::vector<char> t(static_cast<std::size_t>(m), 0);
        for (i64 x = 0; x < m; ++x)
            t[static_cast<std::size_t>(mod(c * (x * x % m), m))] = 1;
        return t;
    };
    auto sq = table(1), bt = table(b);
    for (i64 x = 0; x < m; ++x) {
        i64 x2 = x * x % m;
        if (bt[static_cast<std::size_t>(mod(1 - a * x2, m))]) // z = 1
            return 1;
        if (sq[static_cast<std::size_t>(mod(a + b * x2, m))]) // x = 1, y = x
            return 1;
        if (sq[static_cast<std::size_t>(mod(b + a * x2, m))]) // y = 1, x = x
            return 1;
    }
    return -1;
}

bool local_isotropy_scan(std::vector<i64> c, i64 p, int k)
{
    if (c.empty())
        throw InvalidArgument("local_isotropy_scan: empty form");
    if (p < 2 || p > 50)
        throw InvalidArgument("local_isotropy_scan: p out of range");
    int need = 1 + (p == 2 ? 2 : 0);
    int extra = 0;
    for (auto & a : c) {
        if (a == 0)
            throw InvalidArgument("local_isotropy_scan: zero coefficient");
        while (a % (p * p) == 0)
            a /= p * p;
        if (a % p == 0)
            extra = 1;
    }
    if (k < need + extra)
        throw InvalidArgument("local_isotropy_scan: precision " + std::to_string(k) + " below " +
                              std::to_string(need + extra));
    i64 m = 1;
    for (int i = 0; i < k; ++i) {
        m *= p;
        if (m > 100'000)
            throw InvalidArgument("local_isotropy_scan: modulus too large");
    }
    auto values = [m](i64 a) {
        std::vector<i64> v;
        std::vector<char> seen(static_cast<std::size_t>(m), 0);
        for (i64 x = 0; x < m; ++x) {
            i64 r = mod(a * (x * x % m), m);
            if (!seen[static_cast<std::size_t>(r)]) {
                seen[static_cast<std::size_t>(r)] = 1;
                v.push_back(r);
            }
        }
        return v;
    };
    // a unit coordinate can be scaled to 1
    for (std::size_t j = 0; j < c.size(); ++j) {
        std::vector<char> reach(static_cast<std::size_t>(m), 0);
        reach[0] = 1;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i == j)
                continue;
            std::vector<char> next(static_cast<std::size_t>(m), 0);
            auto vals = values(c[i]);
            for (i64 r = 0; r < m; ++r)
                if (reach[static_cast<std::size_t>(r)])
                    for (auto v : vals)
                        next[static_cast<std::size_t>((r + v) % m)] = 1;
            reach.swap(next);
        }
        if (reach[static_cast<std::size_t>(mod(-c[j], m))])
            return true;
    }
    return false;
}

int bqf_class_group_oracle(i64 D)
{
    if (D >= 0 || D < -10'000)
        throw InvalidArgument("bqf_class_group_oracle: D must lie in [-10000, -1]");
    if (mod(D, 4) == 2 || mod(D, 4) == 3)
        throw InvalidArgument("bqf_class_group_oracle: " + std::to_string(D) + " is not a discriminant");
    int h = 0;
    for (i64 a = 1; 3 * a * a <= -D; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b - D;
            if (num % (4 * a))
                continue;
            i64 c = num / (4 * a);
            if (c < a || (c == a && b < 0))
                continue;
            if (std::gcd(std::gcd(a, b), c) != 1)
                continue;
            ++h;
        }
    return h;
}

} // namespace isovec
