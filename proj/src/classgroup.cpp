#include "isovec/classgroup.hpp"

#include <cmath>
#include <numbers>

#include "isovec/errors.hpp"
#include "quadfield_detail.hpp"

namespace isovec {

namespace {

Integer minkowski_bound(QuadField const & L)
{
    double D = std::fabs(L.disc().get_d());
    double b = L.is_real() ? std::sqrt(D) / 2 : 2 / std::numbers::pi * std::sqrt(D);
    return Integer(static_cast<unsigned long>(std::floor(b)) + 1);
}

} // namespace

std::optional<std::size_t> ClassGroup::find(Integer a, Integer b) const
{
    detail::Reducer red(L_);
    red.reduce(a, b, nullptr);
    auto it = index_.find({a, b});
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

void ClassGroup::add_class(Integer a, Integer b, Vec v)
{
    detail::Reducer red(L_);
    red.reduce(a, b, nullptr);
    std::size_t idx = classes_.size();
    classes_.push_back(std::move(v));
    for (auto const & J : reduced_cycle(L_, {a, b}))
        index_[{J.a, J.b}] = idx;
}

ClassGroup::ClassGroup(QuadField const & L) : L_(L)
{
    std::vector<std::pair<Integer, Integer>> reps;
    QFIdeal O = unit_ideal(L_);
    add_class(O.a, O.b, {});
    reps.push_back({O.a, O.b});

    Integer bound = minkowski_bound(L_);
    for (Integer p = 2; p <= bound; p = next_prime(p)) {
        PrimeDecomposition dec = factor_prime(L_, p);
        if (dec.kind == Splitting::inert)
            continue;
        PrimeIdeal const & P = dec.primes[0];
        if (find(P.ideal.a, P.ideal.b))
            continue;

        std::size_t t = gens_.size();
        QFIdeal cur = P.ideal;
        long n = 1;
        std::optional<std::size_t> hit;
        while (!(hit = find(cur.a, cur.b))) {
            cur = ideal_mul(L_, QFIdeal{1, cur.a, cur.b}, P.ideal);
            ++n;
        }
        Vec w = classes_[*hit];

        std::size_t old = classes_.size();
        for (auto & v : classes_)
            v.push_back(0);
        for (std::size_t c = 0; c < old; ++c) {
            QFIdeal X{1, reps[c].first, reps[c].second};
            for (long k = 1; k < n; ++k) {
                X = ideal_mul(L_, QFIdeal{1, X.a, X.b}, P.ideal);
                Vec v = classes_[c];
                v[t] = k;
                add_class(X.a, X.b, v);
                reps.push_back({X.a, X.b});
            }
        }
        gens_.push_back(Generator{P, n, w, 0});
    }
    h_ = static_cast<long>(reps.size());

    for (std::size_t i = 0; i < gens_.size(); ++i) {
        Vec e(gens_.size(), 0);
        e[i] = 1;
        gens_[i].order = element_order(e);
    }

    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        std::vector<Integer> r(gens_.size(), 0);
        for (std::size_t j = 0; j < i; ++j)
            r[j] = -gens_[i].relation[j];
        r[i] = gens_[i].relative_order;
        rows.push_back(std::move(r));
    }
    for (auto const & x : smith_invariants(rows, gens_.size()))
        divisors_.push_back(x.get_si());
}

ClassGroup::Vec ClassGroup::dlog(QFIdeal const & I) const
{
    auto idx = find(I.a, I.b);
    if (!idx)
        throw InternalError("ideal " + I.to_string() + " not found in the class table");
    return classes_[*idx];
}

ClassGroup::Vec ClassGroup::normalize(Vec v) const
{
    if (v.size() != gens_.size())
        throw InvalidArgument("class vector has the wrong length");
    for (std::size_t i = gens_.size(); i-- > 0;) {
        long n = gens_[i].relative_order;
        long q = v[i] / n;
        if (v[i] % n < 0)
            --q;
        v[i] -= q * n;
        for (std::size_t j = 0; j < i; ++j)
            v[j] += q * gens_[i].relation[j];
    }
    return v;
}

ClassGroup::Vec ClassGroup::add(Vec const & u, Vec const & v) const
{
    Vec r = u;
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += v.at(i);
    return normalize(std::move(r));
}

ClassGroup::Vec ClassGroup::scale(Vec const & u, long k) const
{
    Vec r = u;
    for (auto & x : r)
        x *= k;
    return normalize(std::move(r));
}

bool ClassGroup::is_identity(Vec const & v) const
{
    for (auto x : normalize(v))
        if (x)
            return false;
    return true;
}

long ClassGroup::element_order(Vec const & v) const
{
    Vec x = normalize(v);
    Vec acc = x;
    long k = 1;
    while (!is_identity(acc)) {
        acc = add(acc, x);
        ++k;
    }
    return k;
}

long ClassGroup::two_rank_of_quotient(std::vector<Vec> const & xs) const
{
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        std::vector<Integer> r(gens_.size(), 0);
        for (std::size_t j = 0; j < i; ++j)
            r[j] = -gens_[i].relation[j];
        r[i] = gens_[i].relative_order;
        rows.push_back(std::move(r));
    }
    for (auto const & x : xs)
        rows.emplace_back(x.begin(), x.end());
    long r = 0;
    for (auto const & d : smith_invariants(rows, gens_.size()))
        if (mpz_even_p(d.get_mpz_t()))
            ++r;
    return r;
}

bool ClassGroup::generated_by(std::vector<Vec> const & xs) const
{
    std::vector<std::vector<Integer>> rows;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        std::vector<Integer> r(gens_.size(), 0);
        for (std::size_t j = 0; j < i; ++j)
            r[j] = -gens_[i].relation[j];
        r[i] = gens_[i].relative_order;
        rows.push_back(std::move(r));
    }
    for (auto const & x : xs)
        rows.emplace_back(x.begin(), x.end());
    return smith_invariants(rows, gens_.size()).empty();
}

std::vector<ClassGroup::Vec> ClassGroup::relation_lattice(std::vector<Vec> const & xs) const
{
    // subgroup element -> coefficients over xs
    std::map<Vec, Vec> sub;
    std::size_t t = xs.size();
    sub[Vec(gens_.size(), 0)] = Vec(t, 0);
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < t; ++i) {
        Vec x = normalize(xs[i]);
        Vec acc = x;
        long n = 1;
        while (!sub.count(acc)) {
            acc = add(acc, x);
            ++n;
        }
        Vec r = sub[acc];
        for (auto & c : r)
            c = -c;
        r[i] = n;
        basis.push_back(r);

        std::vector<std::pair<Vec, Vec>> old(sub.begin(), sub.end());
        Vec step = x;
        for (long k = 1; k < n; ++k) {
            for (auto const & [g, z] : old) {
                Vec z2 = z;
                z2[i] = k;
                sub[add(g, step)] = z2;
            }
            step = add(step, x);
        }
    }
    return basis;
}

std::vector<Integer> smith_invariants(std::vector<std::vector<Integer>> M, std::size_t cols)
{
    std::size_t rows = M.size();
    for (auto & r : M)
        r.resize(cols, 0);
    std::vector<Integer> diag;
    std::size_t k = 0;
    for (; k < rows && k < cols; ++k) {
        for (;;) {
            // smallest nonzero entry of the remaining block
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = k; i < rows; ++i)
                for (std::size_t j = k; j < cols; ++j)
                    if (M[i][j] != 0 && (pi == rows || abs(M[i][j]) < abs(M[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows)
                goto done;
            std::swap(M[k], M[pi]);
            for (auto & r : M)
                std::swap(r[k], r[pj]);
            Integer const p = M[k][k];
            bool clean = true;
            for (std::size_t i = k + 1; i < rows; ++i) {
                Integer q = floor_div(M[i][k], p);
                if (q != 0)
                    for (std::size_t j = k; j < cols; ++j)
                        M[i][j] -= q * M[k][j];
                if (M[i][k] != 0)
                    clean = false;
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                Integer q = floor_div(M[k][j], p);
                if (q != 0)
                    for (std::size_t i = k; i < rows; ++i)
                        M[i][j] -= q * M[i][k];
                if (M[k][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            bool divides = true;
            for (std::size_t i = k + 1; i < rows && divides; ++i)
                for (std::size_t j = k + 1; j < cols; ++j)
                    if (M[i][j] % p != 0) {
                        for (std::size_t c = k; c < cols; ++c)
                            M[k][c] += M[i][c];
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        diag.push_back(abs(M[k][k]));
    }
done:
    for (; diag.size() < cols; )
        diag.push_back(0);
    std::vector<Integer> out;
    for (auto & d : diag)
        if (d != 1)
            out.push_back(d);
    return out;
}

std::vector<QFElement> s_unit_generators(QuadField const & L, std::vector<PrimeIdeal> const & S)
{
    std::vector<QFElement> out{L.torsion_generator()};
    if (L.is_real())
        out.push_back(L.fundamental_unit());
    ClassGroup const & cl = L.class_group();
    std::vector<ClassGroup::Vec> xs;
    for (auto const & P : S)
        xs.push_back(cl.dlog(P));
    for (auto const & z : cl.relation_lattice(xs)) {
        QFIdeal J = unit_ideal(L);
        for (std::size_t i = 0; i < S.size(); ++i)
            if (z[i])
                J = ideal_mul(L, J, ideal_pow(L, S[i].ideal, z[i]));
        auto g = is_principal(L, J);
        if (!g)
            throw InternalError("relation ideal " + J.to_string() + " is not principal");
        out.push_back(*g);
    }
    return out;
}

} // namespace isovec
