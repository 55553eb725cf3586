#ifndef ISOVEC_QUADFIELD_HPP
#define ISOVEC_QUADFIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isovec/arith.hpp"

namespace isovec {

class ClassGroup;

/// Element x + y*sqrt(d) of Q(sqrt(d)).
class QFElement
{
    Integer d_;
    Rational x_, y_;

    public:
    QFElement(Integer d, Rational x, Rational y = 0);

    Integer const & d() const { return d_; }
    Rational const & x() const { return x_; }
    Rational const & y() const { return y_; }

    bool is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_rational() const { return y_ == 0; }

    QFElement conj() const { return {d_, x_, -y_}; }
    Rational norm() const { return x_ * x_ - d_ * y_ * y_; }
    Rational trace() const { return 2 * x_; }

    QFElement operator-() const { return {d_, -x_, -y_}; }
    QFElement & operator+=(QFElement const & o);
    QFElement & operator-=(QFElement const & o);
    QFElement & operator*=(QFElement const & o);
    QFElement & operator/=(QFElement const & o);
    QFElement & operator*=(Rational const & r);

    friend QFElement operator+(QFElement a, QFElement const & b) { return a += b; }
    friend QFElement operator-(QFElement a, QFElement const & b) { return a -= b; }
    friend QFElement operator*(QFElement a, QFElement const & b) { return a *= b; }
    friend QFElement operator/(QFElement a, QFElement const & b) { return a /= b; }
    friend QFElement operator*(QFElement a, Rational const & r) { return a *= r; }

    bool operator==(QFElement const & o) const { return d_ == o.d_ && x_ == o.x_ && y_ == o.y_; }

    std::string to_string() const;
};

/// Exact power, negative exponents allowed for nonzero elements.
QFElement pow(QFElement const & e, long k);

/// Same square class, rational content reduced to its squarefree part.
QFElement reduce_rational_square(QFElement const & e);

/// scale * [a, (b + sqrt(D))/2]: a fractional ideal of the maximal order,
/// written as a positive rational times a primitive integral ideal.
/// Normalized: a > 0, b^2 = D (mod 4a), -a < b <= a.
struct QFIdeal
{
    Rational scale = 1;
    Integer a = 1;
    Integer b = 0;

    bool operator==(QFIdeal const &) const = default;
    std::string to_string() const;
};

enum class Splitting
{
    split,
    inert,
    ramified
};

struct PrimeIdeal
{
    Integer p;
    Splitting kind;
    QFIdeal ideal;

    Integer norm() const { return kind == Splitting::inert ? Integer(p * p) : p; }
    bool operator==(PrimeIdeal const & o) const { return p == o.p && ideal == o.ideal; }
    std::string to_string() const;
};

struct PrimeDecomposition
{
    Splitting kind;
    std::vector<PrimeIdeal> primes; // two for split (P, conj P), one otherwise
};

struct QuadFieldOptions
{
    /// class_group refuses |disc| above this bound.
    Integer max_class_group_disc = Integer("10000000000");
    /// continued-fraction steps allowed when computing the fundamental unit
    std::uint64_t period_cap = 1'000'000;
};

/// L = Q(sqrt(d)) with d squarefree, d != 0, 1, and its maximal order.
/// Copies share one lazily computed cache (unit, class group); the cache is
/// filled at most once and is safe to read concurrently afterwards.
class QuadField
{
    struct Cache;
    Integer d_, disc_;
    QuadFieldOptions opts_;
    std::shared_ptr<Cache> cache_;

    public:
    explicit QuadField(Integer d, QuadFieldOptions opts = {});
    /// Q(sqrt(r)) for a rational non-square r.
    static QuadField from_radicand(Rational const & r, QuadFieldOptions opts = {});

    Integer const & d() const { return d_; }
    Integer const & disc() const { return disc_; }
    bool is_real() const { return d_ > 0; }
    QuadFieldOptions const & options() const { return opts_; }

    QFElement element(Rational x, Rational y = 0) const { return {d_, std::move(x), std::move(y)}; }
    /// (1 + sqrt d)/2 when d = 1 (mod 4), sqrt d otherwise
    QFElement omega() const;

    /// Unit u > 1 generating the units modulo +-1. Real fields only.
    QFElement const & fundamental_unit() const;
    /// Roots of unity: {1, -1}, plus {i, -i} for d = -1, plus the primitive
    /// 3rd and 6th roots for d = -3.
    std::vector<QFElement> torsion_units() const;
    /// A root of unity generating mu(L) modulo squares (i for d = -1, -1 otherwise).
    QFElement torsion_generator() const;

    ClassGroup const & class_group() const;

    bool operator==(QuadField const & o) const { return d_ == o.d_; }
};

Rational norm(QFElement const & e);

/// Element coordinates in the integral basis (1, omega).
std::pair<Rational, Rational> omega_coords(QuadField const & L, QFElement const & e);
bool is_integral(QuadField const & L, QFElement const & e);

PrimeDecomposition factor_prime(QuadField const & L, Integer const & p);

QFIdeal unit_ideal(QuadField const & L);
QFIdeal principal_ideal(QuadField const & L, QFElement const & alpha);
QFIdeal ideal_mul(QuadField const & L, QFIdeal const & I, QFIdeal const & J);
QFIdeal ideal_conj(QFIdeal const & I);
QFIdeal ideal_inverse(QFIdeal const & I);
QFIdeal ideal_pow(QuadField const & L, QFIdeal const & I, long k);
Rational ideal_norm(QFIdeal const & I);
bool ideal_contains(QuadField const & L, QFIdeal const & I, QFElement const & alpha);

/// ord_P of a nonzero fractional ideal / element.
long ideal_valuation(QuadField const & L, PrimeIdeal const & P, QFIdeal const & I);
long element_valuation(QuadField const & L, PrimeIdeal const & P, QFElement const & alpha);

/// Generator of I when I is principal, certified: (alpha) == I is checked
/// before returning.
std::optional<QFElement> is_principal(QuadField const & L, QFIdeal const & I);

/// Reduced representative of the primitive part of I. For real fields the
/// smallest (a, b) on the cycle of reduced ideals, which identifies the class.
struct ReducedIdeal
{
    Integer a, b;
    bool operator==(ReducedIdeal const &) const = default;
};
ReducedIdeal reduce_ideal(QuadField const & L, QFIdeal const & I);
/// Every reduced ideal on the cycle of the real-field reduced ideal R (R first).
std::vector<ReducedIdeal> reduced_cycle(QuadField const & L, ReducedIdeal const & R);

/// Multiply e by a power eps^(step*k) of the fundamental unit so that |e|
/// and |conj e| are as close as possible. Identity on imaginary fields.
QFElement balance_by_unit(QuadField const & L, QFElement const & e, long step = 1);

/// Generators of the S-unit group modulo squares: the torsion generator,
/// the fundamental unit (real fields) and one generator per basis vector
/// of the relation lattice of the classes of S. Every element has
/// valuation zero outside S.
std::vector<QFElement> s_unit_generators(QuadField const & L, std::vector<PrimeIdeal> const & S);

} // namespace isovec

#endif
