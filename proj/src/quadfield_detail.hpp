#ifndef ISOVEC_QUADFIELD_DETAIL_HPP
#define ISOVEC_QUADFIELD_DETAIL_HPP

#include "isovec/quadfield.hpp"

namespace isovec::detail {

// Reduction of primitive ideals [a, (b + sqrt D)/2].
class Reducer
{
    public:
    explicit Reducer(QuadField const & L);

    void normalize(Integer & a, Integer & b) const;
    bool is_reduced(Integer const & a, Integer const & b) const;
    // (a, b) -> next ideal J with [a, b] = m * J; m is multiplied in when given.
    void rho(Integer & a, Integer & b, QFElement * m) const;
    void reduce(Integer & a, Integer & b, QFElement * m) const;

    bool real() const { return real_; }

    private:
    Integer d_, D_, s_, f_;
    bool real_;
};

} // namespace isovec::detail

#endif
