#include "isovec/arith.hpp"

#include <algorithm>
#include <map>

#include "isovec/errors.hpp"

namespace isovec {

namespace {

constexpr unsigned long trial_bound = 10000;

std::vector<unsigned long> const & small_primes()
{
    static std::vector<unsigned long> const primes = [] {
        std::vector<bool> composite(trial_bound + 1, false);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= trial_bound; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= trial_bound; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

Integer powm(Integer const & b, Integer const & e, Integer const & m)
{
    Integer r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

bool strong_probable_prime(Integer const & n, Integer const & d, unsigned long s, unsigned long base)
{
    Integer a = base;
    if (a % n == 0)
        return true;
    Integer x = powm(a, d, n);
    Integer const nm1 = n - 1;
    if (x == 1 || x == nm1)
        return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

// Brent's cycle-finding variant of rho on x -> x^2 + c. Returns a nontrivial
// divisor or 0 when the attempt fails.
Integer brent_rho(Integer const & n, unsigned long c, std::uint64_t budget)
{
    Integer y = 2, x, q = 1, g = 1, ys;
    std::uint64_t r = 1, spent = 0;
    constexpr std::uint64_t batch = 128;
    while (g == 1) {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i)
            y = (y * y + c) % n;
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            std::uint64_t const lim = std::min(batch, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                Integer diff = x - y;
                q = q * abs(diff) % n;
            }
            g = gcd(q, n);
            k += lim;
            spent += lim;
            if (spent > budget)
                return 0;
        }
        r *= 2;
    }
    if (g == n) {
        // Backtrack one step at a time from the last saved point.
        do {
            ys = (ys * ys + c) % n;
            Integer diff = x - ys;
            g = gcd(abs(diff), n);
        } while (g == 1);
    }
    if (g == n)
        return 0;
    return g;
}

void factor_cofactor(Integer const & n, FactorConfig const & cfg, std::map<Integer, unsigned long> & out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    if (auto r = isqrt_exact(n)) {
        std::map<Integer, unsigned long> sub;
        factor_cofactor(*r, cfg, sub);
        for (auto const & [p, e] : sub)
            out[p] += 2 * e;
        return;
    }
    if (mpz_sizeinbase(n.get_mpz_t(), 10) > cfg.max_cofactor_digits)
        throw ResourceLimit("factor: composite cofactor " + to_string(n) + " exceeds the digit bound");
    for (unsigned c = 1; c <= cfg.rho_attempts; ++c) {
        Integer d = brent_rho(n, c, cfg.rho_iterations);
        if (d != 0) {
            factor_cofactor(d, cfg, out);
            factor_cofactor(n / d, cfg, out);
            return;
        }
    }
    throw ResourceLimit("factor: rho failed on " + to_string(n));
}

} // namespace

Rational make_rational(Integer const & num, Integer const & den)
{
    if (den == 0)
        throw InvalidArgument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string const & text)
{
    auto parse_int = [&](std::string const & s) {
        std::size_t i = 0;
        if (!s.empty() && (s[0] == '-' || s[0] == '+'))
            i = 1;
        if (i == s.size() || !std::all_of(s.begin() + i, s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw InvalidArgument("not a rational number: \"" + text + "\"");
        return Integer(s[0] == '+' ? s.substr(1) : s, 10);
    };
    auto slash = text.find('/');
    if (slash == std::string::npos)
        return Rational(parse_int(text));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw InvalidArgument("zero denominator in \"" + text + "\"");
    return make_rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(Integer const & n)
{
    return n.get_str();
}

std::string to_string(Rational const & q)
{
    return q.get_str();
}

Integer Factorization::value() const
{
    Integer v = unit_sign;
    for (auto const & [p, e] : factors) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

bool is_prime(Integer const & n)
{
    if (n < 2)
        return false;
    for (unsigned long p : small_primes()) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
        if (Integer(p) * p > n)
            return true;
    }
    Integer d = n - 1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    // Bases 2..41 are a deterministic test below 3.3e24; above that the
    // same battery plus more bases serves as a strong-pseudoprime test.
    static constexpr unsigned long bases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                              31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
    for (unsigned long b : bases)
        if (!strong_probable_prime(n, d, s, b))
            return false;
    return true;
}

Integer next_prime(Integer const & n)
{
    Integer c = n < 2 ? Integer(2) : Integer(n + 1);
    while (!is_prime(c))
        ++c;
    return c;
}

Factorization factor(Integer const & n, FactorConfig const & cfg)
{
    if (n == 0)
        throw InvalidArgument("factor: zero has no factorization");
    Factorization f;
    f.unit_sign = sign(n);
    Integer m = abs(n);
    std::map<Integer, unsigned long> found;
    for (unsigned long p : small_primes()) {
        if (Integer(p) * p > m)
            break;
        unsigned long e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        if (e)
            found[Integer(p)] = e;
    }
    factor_cofactor(m, cfg, found);
    for (auto const & [p, e] : found)
        f.factors.push_back({p, e});
    return f;
}

std::vector<Integer> prime_divisors(Integer const & n)
{
    std::vector<Integer> out;
    for (auto const & pe : factor(n).factors)
        out.push_back(pe.prime);
    return out;
}

SquarefreeDecomposition squarefree_part(Rational const & q)
{
    if (q == 0)
        throw InvalidArgument("squarefree_part: zero input");
    // q = n/d = n*d / d^2
    Integer nd = q.get_num() * q.get_den();
    Factorization f = factor(nd);
    Integer s = f.unit_sign, r = 1;
    for (auto const & [p, e] : f.factors) {
        if (e % 2)
            s *= p;
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
        r *= pe;
    }
    return {s, make_rational(r, q.get_den())};
}

bool is_squarefree(Integer const & n)
{
    if (n == 0)
        return false;
    for (auto const & pe : factor(n).factors)
        if (pe.exponent > 1)
            return false;
    return true;
}

std::optional<Integer> isqrt_exact(Integer const & n)
{
    if (n < 0)
        return std::nullopt;
    if (!mpz_perfect_square_p(n.get_mpz_t()))
        return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Rational> sqrt_exact(Rational const & q)
{
    auto n = isqrt_exact(q.get_num());
    if (!n)
        return std::nullopt;
    auto d = isqrt_exact(q.get_den());
    if (!d)
        return std::nullopt;
    return make_rational(*n, *d);
}

std::optional<Integer> sqrt_mod(Integer const & a, Integer const & p, unsigned long k)
{
    if (p == 2 || p % 2 == 0)
        throw InvalidArgument("sqrt_mod: modulus prime must be odd");
    if (k == 0)
        throw InvalidArgument("sqrt_mod: exponent must be positive");
    Integer ar = mod_floor(a, p);
    if (ar == 0)
        throw InvalidArgument("sqrt_mod: argument must be coprime to p");
    if (jacobi(ar, p) != 1)
        return std::nullopt;

    // Tonelli-Shanks modulo p.
    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (jacobi(z, p) != -1)
        ++z;
    Integer m = s, c = powm(z, q, p), t = powm(ar, q, p), r = powm(ar, (q + 1) / 2, p);
    while (t != 1) {
        unsigned long i = 0;
        Integer tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m.get_ui(); ++j)
            b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }

    // Hensel lift r -> r - (r^2 - a) / (2r) modulo p^j.
    Integer pk = p;
    for (unsigned long j = 1; j < k; ++j) {
        pk *= p;
        Integer fx = mod_floor(r * r - a, pk);
        Integer inv = inverse_mod(2 * r, pk);
        r = mod_floor(r - fx * inv, pk);
    }
    return r;
}

Integer crt(std::vector<Congruence> const & system)
{
    Integer x = 0, m = 1;
    for (auto const & [r, n] : system) {
        if (n <= 0)
            throw InvalidArgument("crt: moduli must be positive");
        if (gcd(m, n) != 1)
            throw InvalidArgument("crt: moduli are not pairwise coprime");
        // x + m*t = r (mod n)
        Integer t = mod_floor((r - x) * inverse_mod(m, n), n);
        x += m * t;
        m *= n;
    }
    return mod_floor(x, m);
}

int jacobi(Integer const & a, Integer const & n)
{
    if (n <= 0 || mpz_even_p(n.get_mpz_t()))
        throw InvalidArgument("jacobi: modulus must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker_prime(Integer const & D, Integer const & p)
{
    if (p == 2) {
        if (mpz_even_p(D.get_mpz_t()))
            return 0;
        Integer r = mod_floor(D, 8);
        return (r == 1 || r == 7) ? 1 : -1;
    }
    return jacobi(D, p);
}

unsigned long valuation(Integer n, Integer const & p)
{
    if (n == 0)
        throw InvalidArgument("valuation of zero");
    unsigned long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

Integer floor_div(Integer const & a, Integer const & b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_floor(Integer const & a, Integer const & m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (r < 0)
        r += abs(m);
    return r;
}

Integer gcd(Integer const & a, Integer const & b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(Integer const & a, Integer const & b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Integer inverse_mod(Integer const & a, Integer const & m)
{
    Integer r;
    if (m == 1)
        return 0;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw InvalidArgument("inverse_mod: " + to_string(a) + " is not invertible modulo " + to_string(m));
    return r;
}

int sign(Integer const & n)
{
    return sgn(n);
}

int sign(Rational const & q)
{
    return sgn(q);
}

} // namespace isovec
