#ifndef ISOVEC_PLACES_HPP
#define ISOVEC_PLACES_HPP

#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "isovec/arith.hpp"

namespace isovec {

/// A place of Q: the real place or a rational prime. 2 is the only dyadic one.
class Place
{
    Integer p_; // 0 encodes the real place

    explicit Place(Integer p) : p_(std::move(p)) {}

    public:
    static Place infinity() { return Place(Integer(0)); }
    /// Throws InvalidArgument unless p is prime.
    static Place prime(Integer const & p);

    bool is_infinite() const { return p_ == 0; }
    bool is_dyadic() const { return p_ == 2; }
    /// The prime of a finite place.
    Integer const & p() const;

    /// "inf" or the decimal prime.
    std::string to_string() const;

    bool operator==(Place const & o) const { return p_ == o.p_; }
    bool operator<(Place const & o) const { return p_ < o.p_; }
};

/// <a_1, ..., a_n> = a_1 x_1^2 + ... + a_n x_n^2, every a_i nonzero.
class DiagonalForm
{
    std::vector<Rational> c_;

    public:
    /// Throws InvalidArgument on an empty list or a zero coefficient.
    explicit DiagonalForm(std::vector<Rational> coeffs);
    DiagonalForm(std::initializer_list<Rational> coeffs) : DiagonalForm(std::vector<Rational>(coeffs)) {}

    std::size_t dim() const { return c_.size(); }
    Rational const & operator[](std::size_t i) const { return c_[i]; }
    std::vector<Rational> const & coeffs() const { return c_; }

    Rational determinant() const;
    /// Subform on the listed indices, in the listed order.
    DiagonalForm sub(std::vector<std::size_t> const & idx) const;
    /// <x> ⊥ this
    DiagonalForm prepend(Rational const & x) const;
    DiagonalForm scaled(Rational const & lambda) const;
    /// q(v) evaluated exactly; throws InvalidArgument on length mismatch.
    Rational evaluate(std::vector<Rational> const & v) const;

    std::string to_string() const;
    bool operator==(DiagonalForm const &) const = default;
};

/// Orthogonal sum f ⊥ g.
DiagonalForm orthogonal_sum(DiagonalForm const & f, DiagonalForm const & g);

/// 𝔓(f): 2 together with every prime at which some coefficient has odd
/// valuation.
using SupportSet = std::set<Integer>;

/// ord_p(q) for q != 0.
long valuation(Rational const & q, Integer const & p);

bool local_square(Rational const & a, Place const & v);

/// (a, b)_v via the closed-form formulas.
int hilbert_symbol(Rational const & a, Rational const & b, Place const & v);

/// s_v(f) = prod_{i<j} (a_i, a_j)_v
int hasse_invariant(DiagonalForm const & f, Place const & v);

bool local_isotropy(DiagonalForm const & f, Place const & v);

SupportSet support_set(DiagonalForm const & f);

bool is_globally_isotropic(DiagonalForm const & f);

/// A place where f is locally anisotropic, or nullopt when f is isotropic
/// over Q. Unary forms are anisotropic everywhere; they report the real place.
std::optional<Place> anisotropy_witness(DiagonalForm const & f);

/// Negative-control hook for the self-test: when set, every Hilbert symbol
/// at a finite place is negated. Never set outside of the self-test.
void set_hilbert_fault(bool on);
bool hilbert_fault();

} // namespace isovec

#endif
