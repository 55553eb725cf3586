#include "isovec/places.hpp"

#include <atomic>

#include "isovec/errors.hpp"

namespace isovec {

namespace {

std::atomic<bool> fault_flag{false};

// Integer in the same square class as q.
Integer class_rep(Rational const & q)
{
    return q.get_num() * q.get_den();
}

struct LocalSplit
{
    unsigned long v;
    Integer unit;
};

LocalSplit split_at(Integer n, Integer const & p)
{
    unsigned long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return {v, n};
}

// (u - 1)/2 mod 2 and (u^2 - 1)/8 mod 2 for odd u
int eps2(Integer const & u)
{
    return mod_floor(u, 4) == 3 ? 1 : 0;
}

int omega2(Integer const & u)
{
    Integer r = mod_floor(u, 8);
    return (r == 3 || r == 5) ? 1 : 0;
}

bool mixed_signs(DiagonalForm const & f)
{
    bool pos = false, neg = false;
    for (auto const & a : f.coeffs())
        (sgn(a) > 0 ? pos : neg) = true;
    return pos && neg;
}

} // namespace

Place Place::prime(Integer const & p)
{
    if (!is_prime(p))
        throw InvalidArgument("Place::prime: " + isovec::to_string(p) + " is not prime");
    return Place(p);
}

Integer const & Place::p() const
{
    if (is_infinite())
        throw InvalidArgument("the real place has no prime");
    return p_;
}

std::string Place::to_string() const
{
    return is_infinite() ? std::string("inf") : p_.get_str();
}

DiagonalForm::DiagonalForm(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    if (c_.empty())
        throw InvalidArgument("a diagonal form needs at least one coefficient");
    for (auto & a : c_) {
        if (a == 0)
            throw InvalidArgument("degenerate form: zero coefficient");
        a.canonicalize();
    }
}

Rational DiagonalForm::determinant() const
{
    Rational d = 1;
    for (auto const & a : c_)
        d *= a;
    return d;
}

DiagonalForm DiagonalForm::sub(std::vector<std::size_t> const & idx) const
{
    std::vector<Rational> out;
    for (auto i : idx)
        out.push_back(c_.at(i));
    return DiagonalForm(std::move(out));
}

DiagonalForm DiagonalForm::prepend(Rational const & x) const
{
    std::vector<Rational> out{x};
    out.insert(out.end(), c_.begin(), c_.end());
    return DiagonalForm(std::move(out));
}

DiagonalForm DiagonalForm::scaled(Rational const & lambda) const
{
    std::vector<Rational> out;
    for (auto const & a : c_)
        out.push_back(a * lambda);
    return DiagonalForm(std::move(out));
}

Rational DiagonalForm::evaluate(std::vector<Rational> const & v) const
{
    if (v.size() != c_.size())
        throw InvalidArgument("vector length does not match the form dimension");
    Rational s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += c_[i] * v[i] * v[i];
    return s;
}

std::string DiagonalForm::to_string() const
{
    std::string s = "<";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i)
            s += ", ";
        s += c_[i].get_str();
    }
    return s + ">";
}

DiagonalForm orthogonal_sum(DiagonalForm const & f, DiagonalForm const & g)
{
    std::vector<Rational> c = f.coeffs();
    c.insert(c.end(), g.coeffs().begin(), g.coeffs().end());
    return DiagonalForm(std::move(c));
}

long valuation(Rational const & q, Integer const & p)
{
    if (q == 0)
        throw InvalidArgument("valuation of zero");
    return static_cast<long>(valuation(q.get_num(), p)) - static_cast<long>(valuation(q.get_den(), p));
}

bool local_square(Rational const & a, Place const & v)
{
    if (a == 0)
        throw InvalidArgument("local_square: zero input");
    if (v.is_infinite())
        return sgn(a) > 0;
    auto [e, u] = split_at(class_rep(a), v.p());
    if (e % 2)
        return false;
    if (v.is_dyadic())
        return mod_floor(u, 8) == 1;
    return jacobi(u, v.p()) == 1;
}

int hilbert_symbol(Rational const & a, Rational const & b, Place const & v)
{
    if (a == 0 || b == 0)
        throw InvalidArgument("hilbert_symbol: zero argument");
    if (v.is_infinite())
        return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;

    Integer const & p = v.p();
    auto [alpha, u] = split_at(class_rep(a), p);
    auto [beta, w] = split_at(class_rep(b), p);
    int s;
    if (v.is_dyadic()) {
        int e = eps2(u) * eps2(w) + static_cast<int>(alpha % 2) * omega2(w) + static_cast<int>(beta % 2) * omega2(u);
        s = (e % 2) ? -1 : 1;
    } else {
        s = 1;
        if ((alpha % 2) && (beta % 2) && mod_floor(p, 4) == 3)
            s = -s;
        if (beta % 2)
            s *= jacobi(u, p);
        if (alpha % 2)
            s *= jacobi(w, p);
    }
    return fault_flag.load(std::memory_order_relaxed) ? -s : s;
}

int hasse_invariant(DiagonalForm const & f, Place const & v)
{
    int s = 1;
    for (std::size_t i = 0; i < f.dim(); ++i)
        for (std::size_t j = i + 1; j < f.dim(); ++j)
            s *= hilbert_symbol(f[i], f[j], v);
    return s;
}

bool local_isotropy(DiagonalForm const & f, Place const & v)
{
    std::size_t const n = f.dim();
    if (n == 1)
        return false;
    if (v.is_infinite())
        return mixed_signs(f);
    if (n == 2)
        return local_square(-f[0] * f[1], v);
    if (n == 3)
        return hasse_invariant(f, v) * hilbert_symbol(-1, -f.determinant(), v) == 1;
    if (n == 4) {
        Rational d = f.determinant();
        if (!local_square(d, v))
            return true;
        return hasse_invariant(f, v) == hilbert_symbol(-1, -1, v);
    }
    return true;
}

SupportSet support_set(DiagonalForm const & f)
{
    SupportSet s{Integer(2)};
    for (auto const & a : f.coeffs()) {
        for (auto const & pe : factor(class_rep(a)).factors)
            if (pe.exponent % 2)
                s.insert(pe.prime);
    }
    return s;
}

bool is_globally_isotropic(DiagonalForm const & f)
{
    return !anisotropy_witness(f).has_value();
}

std::optional<Place> anisotropy_witness(DiagonalForm const & f)
{
    std::size_t const n = f.dim();
    if (n == 1)
        return Place::infinity();
    if (n == 2) {
        Rational m = -f[0] * f[1];
        if (sqrt_exact(m))
            return std::nullopt;
        if (sgn(m) < 0)
            return Place::infinity();
        // A non-square is a local non-square somewhere; odd valuations and 2
        // are checked first, then unit places in increasing order.
        for (auto const & p : support_set(DiagonalForm{m}))
            if (!local_square(m, Place::prime(p)))
                return Place::prime(p);
        for (Integer p = 3;; p = next_prime(p))
            if (!local_square(m, Place::prime(p)))
                return Place::prime(p);
    }
    if (!mixed_signs(f))
        return Place::infinity();
    if (n >= 5)
        return std::nullopt;
    for (auto const & p : support_set(f)) {
        Place v = Place::prime(p);
        if (!local_isotropy(f, v))
            return v;
    }
    return std::nullopt;
}

void set_hilbert_fault(bool on)
{
    fault_flag.store(on);
}

bool hilbert_fault()
{
    return fault_flag.load();
}

} // namespace isovec
