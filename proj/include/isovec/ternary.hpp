#ifndef ISOVEC_TERNARY_HPP
#define ISOVEC_TERNARY_HPP

#include <array>
#include <optional>
#include <vector>

#include "isovec/places.hpp"
#include "isovec/quadfield.hpp"

namespace isovec {

using IsotropicVector = std::vector<Rational>;

/// Primitive integer vector with nonnegative entries, proportional up to
/// coordinate signs (which a diagonal form cannot see) to v.
IsotropicVector canonical_vector(IsotropicVector const & v);

/// A x^2 + B y^2 = z^2 for squarefree nonzero A, B, by Lagrange descent.
/// Primitive integer solution, or nullopt when the conic has no rational point.
std::optional<std::array<Integer, 3>> solve_conic(Integer const & A, Integer const & B);

/// Dimension 2. Throws Anisotropic when -a1*a2 is not a square.
IsotropicVector solve_binary(DiagonalForm const & f);

/// a x^2 + b y^2 + c z^2 = 0, coefficients squarefree and pairwise coprime.
/// Primitive integer solution; throws Anisotropic (with the failing place)
/// when there is none.
std::array<Integer, 3> solve_legendre(Integer const & a, Integer const & b, Integer const & c);

struct NormSolution
{
    std::optional<QFElement> xi;
    std::optional<Place> obstruction; // set iff xi is absent
};

/// xi in L with N(xi) = b.
NormSolution solve_norm_equation(QuadField const & L, Rational const & b);

/// Dimension 3. Throws Anisotropic when f has no rational zero.
IsotropicVector solve_dim3(DiagonalForm const & f);

} // namespace isovec

#endif
