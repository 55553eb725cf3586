#ifndef ISOVEC_ARITH_HPP
#define ISOVEC_ARITH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace isovec {

using Integer = mpz_class;

/// Exact rational. Every value handed out by this library is canonical
/// (reduced, positive denominator), so equality is structural.
using Rational = mpq_class;

/// Canonical rational from numerator/denominator; throws on zero denominator.
Rational make_rational(Integer const & num, Integer const & den = 1);

/// Parses "p/q" or an integer literal. Throws InvalidArgument.
Rational parse_rational(std::string const & text);

std::string to_string(Integer const & n);
std::string to_string(Rational const & q);

struct PrimePower
{
    Integer prime;
    unsigned long exponent;

    bool operator==(PrimePower const &) const = default;
};

struct Factorization
{
    int unit_sign = 1;
    std::vector<PrimePower> factors; // strictly increasing primes

    /// unit_sign * prod p^e
    Integer value() const;
    bool operator==(Factorization const &) const = default;
};

struct FactorConfig
{
    /// Composite cofactors with more decimal digits than this are refused.
    unsigned max_cofactor_digits = 60;
    /// Iteration budget per rho attempt before switching polynomial.
    std::uint64_t rho_iterations = 4'000'000;
    unsigned rho_attempts = 16;
};

bool is_prime(Integer const & n);

/// Smallest prime strictly greater than n.
Integer next_prime(Integer const & n);

/// Trial division to 1e4, then Brent's rho with x^2 + c, c = 1, 2, ...
/// Deterministic. Throws InvalidArgument on 0, ResourceLimit when a
/// composite cofactor exceeds the configured digit bound or rho gives up.
Factorization factor(Integer const & n, FactorConfig const & cfg = {});

/// Distinct prime divisors of |n| (n != 0).
std::vector<Integer> prime_divisors(Integer const & n);

/// Squarefree decomposition q = s * t^2 with s a squarefree integer and
/// t > 0 rational.
struct SquarefreeDecomposition
{
    Integer s;
    Rational t;
};
SquarefreeDecomposition squarefree_part(Rational const & q);

bool is_squarefree(Integer const & n);

/// Nonnegative square root of q when q is a square in Q.
std::optional<Rational> sqrt_exact(Rational const & q);
std::optional<Integer> isqrt_exact(Integer const & n);

/// x with x^2 = a (mod p^k), p an odd prime, gcd(a, p) = 1.
std::optional<Integer> sqrt_mod(Integer const & a, Integer const & p, unsigned long k = 1);

struct Congruence
{
    Integer residue;
    Integer modulus;
};

/// Least nonnegative solution of a system with pairwise coprime moduli.
Integer crt(std::vector<Congruence> const & system);

/// Jacobi symbol (a/n), n odd and positive.
int jacobi(Integer const & a, Integer const & n);

/// Kronecker symbol (D/p) for a prime p (p = 2 handled by D mod 8).
int kronecker_prime(Integer const & D, Integer const & p);

/// p-adic valuation of a nonzero integer.
unsigned long valuation(Integer n, Integer const & p);

/// Floor division / remainder in [0, m).
Integer floor_div(Integer const & a, Integer const & b);
Integer mod_floor(Integer const & a, Integer const & m);

Integer gcd(Integer const & a, Integer const & b);
Integer lcm(Integer const & a, Integer const & b);

/// Modular inverse, throws InvalidArgument when not invertible.
Integer inverse_mod(Integer const & a, Integer const & m);

int sign(Integer const & n);
int sign(Rational const & q);

} // namespace isovec

#endif
