#ifndef ISOVEC_ORACLE_HPP
#define ISOVEC_ORACLE_HPP

// Brute-force checkers. They work on machine integers and do not call into
// the rest of the library beyond the value types.

#include <cstdint>
#include <optional>
#include <vector>

#include "isovec/places.hpp"
#include "isovec/ternary.hpp"

namespace isovec {

struct SearchBudget
{
    std::int64_t height = 50; // max |v_i|
};

/// First primitive nonnegative integer vector (lexicographic) with f(v) = 0
/// and entries at most `height`. Absent means nothing within the budget.
std::optional<IsotropicVector> brute_search(DiagonalForm const & f, SearchBudget const & budget);

/// +1 iff a x^2 + b y^2 = z^2 has a primitive solution mod p^k. Throws
/// InvalidArgument when k is too small for the answer to be the Hilbert
/// symbol: after removing square factors p^2 from a and b, k must be at
/// least 1 + 2 ord_p(2) + max(v_p(a), v_p(b)).
int local_solubility_scan(std::int64_t a, std::int64_t b, std::int64_t p, int k);

/// Whether sum c_i x_i^2 = 0 has a solution mod p^k with some x_i a unit.
/// Same precision rule as local_solubility_scan, over all coefficients.
bool local_isotropy_scan(std::vector<std::int64_t> c, std::int64_t p, int k);

/// Number of reduced primitive forms (a, b, c) of discriminant D < 0.
int bqf_class_group_oracle(std::int64_t D);

} // namespace isovec

#endif
