#include "isovec/sqclasses.hpp"

#include <algorithm>

#include "isovec/classgroup.hpp"
#include "isovec/errors.hpp"

namespace isovec {

namespace {

struct Echelon
{
    std::vector<F2Vector> rows; // augmented, reduced
    std::vector<std::size_t> pivots;
    bool consistent = true;
};

Echelon eliminate(F2Matrix const & A, F2Vector const & b)
{
    std::size_t n = A.cols();
    Echelon e;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        F2Vector r = A.row(i);
        r.push_back(b[i]);
        e.rows.push_back(std::move(r));
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < e.rows.size(); ++c) {
        std::size_t p = r;
        while (p < e.rows.size() && !e.rows[p][c])
            ++p;
        if (p == e.rows.size())
            continue;
        std::swap(e.rows[r], e.rows[p]);
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            if (i != r && e.rows[i][c])
                for (std::size_t j = c; j <= n; ++j)
                    e.rows[i][j] ^= e.rows[r][j];
        e.pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < e.rows.size(); ++i)
        if (e.rows[i][n])
            e.consistent = false;
    return e;
}

} // namespace

F2Matrix F2Matrix::identity(std::size_t n)
{
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(std::vector<F2Vector> const & rows, std::size_t cols)
{
    F2Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw InvalidArgument("F2Matrix: ragged rows");
        for (std::size_t j = 0; j < cols; ++j)
            m.set(i, j, rows[i][j] & 1);
    }
    return m;
}

F2Vector F2Matrix::row(std::size_t i) const
{
    F2Vector r(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        r[j] = get(i, j);
    return r;
}

F2Vector F2Matrix::apply(F2Vector const & x) const
{
    if (x.size() != cols_)
        throw InvalidArgument("F2Matrix::apply: dimension mismatch");
    F2Vector y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            y[i] ^= static_cast<std::uint8_t>(get(i, j) && (x[j] & 1));
    return y;
}

std::size_t F2Matrix::rank() const
{
    return eliminate(*this, F2Vector(rows_, 0)).pivots.size();
}

void F2Matrix::stack(F2Matrix const & below)
{
    if (rows_ && below.rows_ && below.cols_ != cols_)
        throw InvalidArgument("F2Matrix::stack: column mismatch");
    if (!rows_)
        cols_ = below.cols_;
    bits_.insert(bits_.end(), below.bits_.begin(), below.bits_.end());
    rows_ += below.rows_;
}

std::optional<F2Solutions> f2_solve_all(F2Matrix const & A, F2Vector const & b)
{
    if (b.size() != A.rows())
        throw InvalidArgument("f2_solve: right-hand side has the wrong length");
    Echelon e = eliminate(A, b);
    if (!e.consistent)
        return std::nullopt;
    std::size_t n = A.cols();
    F2Solutions s;
    s.particular.assign(n, 0);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        s.particular[e.pivots[i]] = e.rows[i][n];
        is_pivot[e.pivots[i]] = true;
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        F2Vector k(n, 0);
        k[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            k[e.pivots[i]] = e.rows[i][f];
        s.kernel.push_back(std::move(k));
    }
    return s;
}

std::optional<F2Vector> f2_solve(F2Matrix const & A, F2Vector const & b)
{
    auto s = f2_solve_all(A, b);
    if (!s)
        return std::nullopt;
    return s->particular;
}

std::vector<F2Vector> f2_kernel(F2Matrix const & A)
{
    return f2_solve_all(A, F2Vector(A.rows(), 0))->kernel;
}

SquareClass SquareClass::of(Rational const & q)
{
    if (q == 0)
        throw InvalidArgument("zero has no square class");
    Integer s = squarefree_part(q).s;
    return {sgn(s) < 0 ? -1 : 1, abs(s)};
}

SingBasisQ sing_basis_Q(std::vector<Integer> T)
{
    std::sort(T.begin(), T.end());
    T.erase(std::unique(T.begin(), T.end()), T.end());
    SingBasisQ B;
    B.basis.push_back(-1);
    for (auto const & p : T) {
        if (!is_prime(p))
            throw InvalidArgument("sing_basis_Q: " + p.get_str() + " is not prime");
        B.primes.push_back(p);
        B.basis.push_back(p);
    }
    return B;
}

SingBasisQ sing_basis_Q(SupportSet const & T)
{
    return sing_basis_Q(std::vector<Integer>(T.begin(), T.end()));
}

F2Vector coords_Q(Rational const & a, SingBasisQ const & B)
{
    if (a == 0)
        throw InvalidArgument("coords_Q: zero");
    Integer n = a.get_num() * a.get_den();
    F2Vector v;
    v.push_back(n < 0 ? 1 : 0);
    n = abs(n);
    for (auto const & p : B.primes) {
        unsigned long e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
        v.push_back(e & 1);
    }
    if (!mpz_perfect_square_p(n.get_mpz_t()))
        throw InvalidArgument("coords_Q: " + a.get_str() + " is not singular for the given primes");
    return v;
}

std::vector<PrimeIdeal> primes_above(QuadField const & L, std::vector<Integer> const & ps)
{
    std::vector<PrimeIdeal> out;
    for (auto const & p : ps)
        for (auto & P : factor_prime(L, p).primes)
            out.push_back(std::move(P));
    return out;
}

std::vector<PrimeIdeal> extend_to_odd_class_number(QuadField const & L, std::vector<PrimeIdeal> const & S_hat)
{
    ClassGroup const & cl = L.class_group();
    std::vector<PrimeIdeal> T = S_hat;
    std::vector<ClassGroup::Vec> xs;
    for (auto const & P : T)
        xs.push_back(cl.dlog(P));
    long r = cl.two_rank_of_quotient(xs);
    for (Integer p = 2; r > 0; p = next_prime(p)) {
        PrimeDecomposition dec = factor_prime(L, p);
        if (dec.kind == Splitting::inert)
            continue;
        for (auto const & P : dec.primes) {
            if (r == 0 || std::find(T.begin(), T.end(), P) != T.end())
                continue;
            xs.push_back(cl.dlog(P));
            long r2 = cl.two_rank_of_quotient(xs);
            if (r2 < r) {
                T.push_back(P);
                r = r2;
            } else {
                xs.pop_back();
            }
        }
    }
    return T;
}

QFElement shrink_square_class(QuadField const & L, QFElement const & e)
{
    return balance_by_unit(L, reduce_rational_square(e), 2);
}

SingBasisL sing_basis_quad(QuadField const & L, std::vector<PrimeIdeal> const & S_hat)
{
    SingBasisL out{L, S_hat, extend_to_odd_class_number(L, S_hat), {}, {}};
    out.units_T = s_unit_generators(L, out.T);

    std::vector<PrimeIdeal> extra(out.T.begin() + static_cast<long>(S_hat.size()), out.T.end());
    F2Matrix V(extra.size(), out.units_T.size());
    for (std::size_t i = 0; i < extra.size(); ++i)
        for (std::size_t j = 0; j < out.units_T.size(); ++j)
            V.set(i, j, element_valuation(L, extra[i], out.units_T[j]) & 1);
    for (auto const & k : f2_kernel(V)) {
        QFElement x = L.element(1);
        for (std::size_t j = 0; j < k.size(); ++j)
            if (k[j])
                x *= out.units_T[j];
        out.basis.push_back(shrink_square_class(L, x));
    }
    return out;
}

} // namespace isovec
