#ifndef ISOVEC_SOLVER_HPP
#define ISOVEC_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isovec/places.hpp"
#include "isovec/quadfield.hpp"
#include "isovec/sqclasses.hpp"
#include "isovec/ternary.hpp"

namespace isovec {

struct SolverOptions
{
    /// primes the search loops may append before giving up
    unsigned max_primes = 64;
    /// when set, appended primes are drawn at random from this seed
    std::optional<std::uint64_t> seed;
    QuadFieldOptions field;
};

/// One F_2 system met along the way (rows as bit strings "0110").
struct F2SystemRecord
{
    std::string name;
    std::vector<std::string> rows;
    std::string rhs;
    std::optional<std::string> solution;
};

struct SolveTrace
{
    std::string route;
    std::size_t dimension = 0;
    std::vector<Rational> form;   // the normalized form actually solved
    IsotropicVector vector;       // this node's output, on `form`
    std::vector<Integer> appended_primes;
    std::vector<F2SystemRecord> systems;
    std::optional<Rational> c;
    /// a_1 N(alpha) / (a_3 N(beta)) from the dim-4 assembly step
    std::optional<Rational> norm_ratio;
    std::vector<SolveTrace> children;
};

/// Squarefree integer coefficients plus the per-coordinate factors t_i with
/// original_i = reduced_i * t_i^2.
struct NormalizedForm
{
    DiagonalForm original;
    DiagonalForm reduced;
    std::vector<Rational> t;

    /// v isotropic for `reduced` -> (v_i / t_i) isotropic for `original`
    IsotropicVector pull_back(IsotropicVector const & v) const;
};

NormalizedForm normalize(DiagonalForm const & f);

struct SolveResult
{
    IsotropicVector vector; // primitive, nonnegative integer entries
    SolveTrace trace;
};

/// Route by dimension. Throws Anisotropic with a witness place when f has
/// no isotropic vector, ResourceLimit when a configured cap is hit.
SolveResult dispatch(DiagonalForm const & f, SolverOptions const & opts = {});

IsotropicVector solve_dim4(DiagonalForm const & f, SolverOptions const & opts = {});
IsotropicVector solve_dim5(DiagonalForm const & f, SolverOptions const & opts = {});
IsotropicVector solve_dim6(DiagonalForm const & f, SolverOptions const & opts = {});
IsotropicVector solve_dim7(DiagonalForm const & f, SolverOptions const & opts = {});
IsotropicVector solve_dim_ge8(DiagonalForm const & f, SolverOptions const & opts = {});

/// Nonzero v with f(v) = 0, exactly. Throws InvalidArgument on length mismatch.
bool verify(DiagonalForm const & f, IsotropicVector const & v);

struct CrtCondition
{
    Integer residue;
    Integer p;
    unsigned long exponent;
};

/// Least positive a with a = residue (mod p^exponent) for every condition.
Integer totally_positive_crt(std::vector<CrtCondition> const & conds);

/// b = 1 for sign +1, otherwise the first negative 1 - k*M with
/// M = prod p^e; b = 1 (mod p^e) for every listed prime.
Integer signed_local_square(int sign, std::vector<std::pair<Integer, unsigned long>> const & S);

/// Generators of Q_p* / Q_p*^2: {smallest non-residue, p} for odd p, {-1, 2, 5} for p = 2.
std::vector<Integer> local_square_class_generators(Integer const & p);

} // namespace isovec

#endif
