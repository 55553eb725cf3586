#ifndef ISOVEC_SQCLASSES_HPP
#define ISOVEC_SQCLASSES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "isovec/places.hpp"
#include "isovec/quadfield.hpp"

namespace isovec {

using F2Vector = std::vector<std::uint8_t>;

/// Dense matrix over F_2, row-major.
class F2Matrix
{
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<bool> bits_;

    public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, false) {}
    static F2Matrix identity(std::size_t n);
    static F2Matrix from_rows(std::vector<F2Vector> const & rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, bool v) { bits_[i * cols_ + j] = v; }

    F2Vector row(std::size_t i) const;
    F2Vector apply(F2Vector const & x) const;
    std::size_t rank() const;
    /// Append another matrix below this one (same column count).
    void stack(F2Matrix const & below);
};

/// Leftmost-pivot elimination; free variables are set to zero.
std::optional<F2Vector> f2_solve(F2Matrix const & A, F2Vector const & b);

/// Particular solution plus a kernel basis (empty optional when unsolvable).
struct F2Solutions
{
    F2Vector particular;
    std::vector<F2Vector> kernel;
};
std::optional<F2Solutions> f2_solve_all(F2Matrix const & A, F2Vector const & b);
std::vector<F2Vector> f2_kernel(F2Matrix const & A);

/// Square class of Q*: sign times a squarefree positive integer.
struct SquareClass
{
    int sign = 1;
    Integer core = 1;

    static SquareClass of(Rational const & q);
    Rational value() const { return Rational(sign * core); }
    bool operator==(SquareClass const &) const = default;
};

/// Basis {-1} u {p : p in T} of Sing_T(Q); T lists the finite primes.
struct SingBasisQ
{
    std::vector<Integer> primes;
    std::vector<Integer> basis;
};

SingBasisQ sing_basis_Q(std::vector<Integer> T);
SingBasisQ sing_basis_Q(SupportSet const & T);

/// Exponent vector of the square class of a; throws InvalidArgument unless
/// a is T-singular.
F2Vector coords_Q(Rational const & a, SingBasisQ const & basis);

/// Prime ideals of L above the rational primes ps (both primes when split).
std::vector<PrimeIdeal> primes_above(QuadField const & L, std::vector<Integer> const & ps);

/// S_hat followed by prime ideals above 2, 3, 5, ... whose classes are
/// needed to kill Cl_S / Cl_S^2.
std::vector<PrimeIdeal> extend_to_odd_class_number(QuadField const & L, std::vector<PrimeIdeal> const & S_hat);

struct SingBasisL
{
    QuadField L;
    std::vector<PrimeIdeal> S_hat;
    std::vector<PrimeIdeal> T;
    std::vector<QFElement> units_T;  // basis of Units_T = Sing_T
    std::vector<QFElement> basis;    // basis of Sing_S_hat
};

SingBasisL sing_basis_quad(QuadField const & L, std::vector<PrimeIdeal> const & S_hat);

/// Same square class, smaller height: rational content reduced and the
/// fundamental unit's square powers balanced out.
QFElement shrink_square_class(QuadField const & L, QFElement const & e);

} // namespace isovec

#endif
