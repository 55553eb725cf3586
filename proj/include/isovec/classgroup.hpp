#ifndef ISOVEC_CLASSGROUP_HPP
#define ISOVEC_CLASSGROUP_HPP

#include <map>
#include <optional>
#include <vector>

#include "isovec/quadfield.hpp"

namespace isovec {

/// Ideal class group Cl(L), ordinary (not narrow) in the real case.
///
/// Built from prime ideals below the Minkowski bound as a polycyclic
/// presentation: generator g_i has relative order n_i over <g_1..g_{i-1}>
/// and g_i^{n_i} = prod_{j<i} g_j^{w_ij}. Classes are exponent vectors in
/// normal form (0 <= e_i < n_i).
class ClassGroup
{
    public:
    using Vec = std::vector<long>;

    struct Generator
    {
        PrimeIdeal prime;
        long relative_order;
        Vec relation; // w_i, length i
        long order;   // order of the class in Cl
    };

    explicit ClassGroup(QuadField const & L);

    long order() const { return h_; }
    std::vector<Generator> const & generators() const { return gens_; }
    /// Invariant factors d_1 | d_2 | ... with product h (empty when h = 1).
    std::vector<long> const & elementary_divisors() const { return divisors_; }

    Vec dlog(QFIdeal const & I) const;
    Vec dlog(PrimeIdeal const & P) const { return dlog(P.ideal); }

    Vec normalize(Vec v) const;
    Vec add(Vec const & u, Vec const & v) const;
    Vec scale(Vec const & u, long k) const;
    bool is_identity(Vec const & v) const;
    long element_order(Vec const & v) const;

    /// 2-rank of Cl / <xs>.
    long two_rank_of_quotient(std::vector<Vec> const & xs) const;
    /// Whether the classes xs generate Cl.
    bool generated_by(std::vector<Vec> const & xs) const;

    /// Lower-triangular basis of {z in Z^t : sum z_i xs_i = 0}.
    std::vector<Vec> relation_lattice(std::vector<Vec> const & xs) const;

    private:
    QuadField L_;
    long h_ = 1;
    std::vector<Generator> gens_;
    std::vector<long> divisors_;
    std::vector<Vec> classes_;
    std::map<std::pair<Integer, Integer>, std::size_t> index_; // reduced ideal -> class

    std::optional<std::size_t> find(Integer a, Integer b) const;
    void add_class(Integer a, Integer b, Vec v);
};

/// Invariant factors (Smith normal form diagonal, units dropped, zeros kept
/// as 0) of an integer matrix given by rows.
std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> rows, std::size_t cols);

} // namespace isovec

#endif
