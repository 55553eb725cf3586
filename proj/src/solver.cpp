#include "isovec/solver.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "isovec/classgroup.hpp"
#include "isovec/errors.hpp"

namespace isovec {

namespace {

struct Ctx
{
    SolverOptions const & opts;
    std::mt19937_64 rng;

    explicit Ctx(SolverOptions const & o) : opts(o), rng(o.seed.value_or(0)) {}

    // A prime not yet in `used` and accepted by `ok`: the smallest one from
    // 3 upwards, or a random one when a seed was given.
    template <class Pred>
    Integer fresh_prime(std::set<Integer> const & used, Pred ok)
    {
        if (opts.seed) {
            std::uniform_int_distribution<unsigned long> dist(3, 5000);
            for (int tries = 0; tries < 256; ++tries) {
                Integer p = next_prime(Integer(dist(rng)) - 1);
                if (!used.count(p) && ok(p))
                    return p;
            }
        }
        Integer p = 3;
        while (used.count(p) || !ok(p))
            p = next_prime(p);
        return p;
    }
};

std::string bits(F2Vector const & v)
{
    std::string s;
    for (auto b : v)
        s += b ? '1' : '0';
    return s;
}

F2SystemRecord record(std::string name, F2Matrix const & A, F2Vector const & rhs, std::optional<F2Vector> const & x)
{
    F2SystemRecord r{std::move(name), {}, bits(rhs), std::nullopt};
    for (std::size_t i = 0; i < A.rows(); ++i)
        r.rows.push_back(bits(A.row(i)));
    if (x)
        r.solution = bits(*x);
    return r;
}

template <class Pred>
void append_prime(Ctx & ctx, std::set<Integer> & S, SolveTrace & tr, Pred ok)
{
    if (tr.appended_primes.size() >= ctx.opts.max_primes) {
        std::string ps;
        for (auto const & p : tr.appended_primes)
            ps += (ps.empty() ? "" : ",") + p.get_str();
        throw ResourceLimit("prime cap of " + std::to_string(ctx.opts.max_primes) + " reached on " + tr.route +
                            " (appended " + ps + ")");
    }
    Integer q = ctx.fresh_prime(S, ok);
    S.insert(q);
    tr.appended_primes.push_back(q);
}

bool real_anisotropic(DiagonalForm const & f)
{
    return !local_isotropy(f, Place::infinity());
}

int sgn_of(Rational const & q)
{
    return sgn(q) < 0 ? -1 : 1;
}

IsotropicVector solve_rec(DiagonalForm const & f, Ctx & ctx, SolveTrace & tr);

IsotropicVector child(DiagonalForm const & g, Ctx & ctx, SolveTrace & parent)
{
    parent.children.emplace_back();
    return solve_rec(g, ctx, parent.children.back());
}

IsotropicVector pad(IsotropicVector const & w, std::size_t n, std::size_t offset)
{
    IsotropicVector v(n, 0);
    for (std::size_t i = 0; i < w.size(); ++i)
        v[offset + i] = w[i];
    return v;
}

// v_1/v_0, ..., w_1/w_0, ...
IsotropicVector combine(IsotropicVector const & v, IsotropicVector const & w)
{
    if (v[0] == 0 || w[0] == 0)
        throw InternalError("recursive vector has a zero leading coordinate");
    IsotropicVector out;
    for (std::size_t i = 1; i < v.size(); ++i)
        out.push_back(v[i] / v[0]);
    for (std::size_t i = 1; i < w.size(); ++i)
        out.push_back(w[i] / w[0]);
    return out;
}

Integer product(std::vector<Integer> const & xs, F2Vector const & e)
{
    Integer c = 1;
    for (std::size_t j = 0; j < xs.size(); ++j)
        if (e[j])
            c *= xs[j];
    return c;
}

// First product of local generators, in binary counting order, that satisfies ok.
template <class Pred>
std::optional<Integer> first_local_class(Integer const & p, Pred ok)
{
    auto H = local_square_class_generators(p);
    for (unsigned mask = 0; mask < (1u << H.size()); ++mask) {
        Integer c = 1;
        for (std::size_t l = 0; l < H.size(); ++l)
            if (mask >> l & 1)
                c *= H[l];
        if (ok(c))
            return c;
    }
    return std::nullopt;
}

IsotropicVector dim4(DiagonalForm const & f, Ctx & ctx, SolveTrace & tr)
{
    static constexpr std::size_t triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (auto const & t : triples) {
        DiagonalForm sub = f.sub({t[0], t[1], t[2]});
        if (is_globally_isotropic(sub)) {
            tr.route = "dim4:pretest";
            IsotropicVector w = child(sub, ctx, tr);
            IsotropicVector v(4, 0);
            for (std::size_t k = 0; k < 3; ++k)
                v[t[k]] = w[k];
            return v;
        }
    }
    tr.route = "dim4";
    Rational rL = -f[1] / f[0], rM = -f[3] / f[2];
    QuadField L = QuadField::from_radicand(rL, ctx.opts.field);
    QuadField M = QuadField::from_radicand(rM, ctx.opts.field);
    Rational tL = squarefree_part(rL).t, tM = squarefree_part(rM).t;

    std::set<Integer> S = support_set(f);
    for (auto const & g : L.class_group().generators())
        S.insert(g.prime.p);
    for (auto const & g : M.class_group().generators())
        S.insert(g.prime.p);

    std::vector<QFElement> BL, BM;
    F2Vector x;
    for (;;) {
        std::vector<Integer> Sv(S.begin(), S.end());
        SingBasisQ BK = sing_basis_Q(Sv);
        BL = sing_basis_quad(L, primes_above(L, Sv)).basis;
        BM = sing_basis_quad(M, primes_above(M, Sv)).basis;
        F2Matrix A(BK.basis.size(), BL.size() + BM.size());
        for (std::size_t j = 0; j < BL.size(); ++j) {
            F2Vector c = coords_Q(BL[j].norm(), BK);
            for (std::size_t i = 0; i < c.size(); ++i)
                A.set(i, j, c[i]);
        }
        for (std::size_t j = 0; j < BM.size(); ++j) {
            F2Vector c = coords_Q(BM[j].norm(), BK);
            for (std::size_t i = 0; i < c.size(); ++i)
                A.set(i, BL.size() + j, c[i]);
        }
        F2Vector rhs = coords_Q(f[0], BK), e = coords_Q(-f[2], BK);
        for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] ^= e[i];
        auto sol = f2_solve(A, rhs);
        tr.systems.push_back(record("dim4:norms", A, rhs, sol));
        if (sol) {
            x = *sol;
            break;
        }
        append_prime(ctx, S, tr, [](Integer const &) { return true; });
    }

    QFElement alpha = L.element(1), beta = M.element(1);
    for (std::size_t j = 0; j < BL.size(); ++j)
        if (x[j])
            alpha *= BL[j];
    for (std::size_t j = 0; j < BM.size(); ++j)
        if (x[BL.size() + j])
            beta *= BM[j];
    alpha = shrink_square_class(L, alpha);
    beta = shrink_square_class(M, beta);

    Rational ratio = f[0] * alpha.norm() / (f[2] * beta.norm());
    tr.norm_ratio = ratio;
    auto u = sqrt_exact(-ratio);
    if (!u)
        throw InternalError("dim-4 assembly: " + Rational(-ratio).get_str() + " is not a square");
    return {alpha.x(), alpha.y() / tL, *u * beta.x(), *u * beta.y() / tM};
}

IsotropicVector dim5(DiagonalForm const & f, Ctx & ctx, SolveTrace & tr)
{
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < 5; ++j)
            if (j != i)
                idx.push_back(j);
        DiagonalForm sub = f.sub(idx);
        if (is_globally_isotropic(sub)) {
            tr.route = "dim5:quick-exit";
            IsotropicVector w = child(sub, ctx, tr);
            w.insert(w.begin() + static_cast<long>(i), Rational(0));
            return w;
        }
    }
    tr.route = "dim5";
    DiagonalForm q1 = f.sub({0, 1, 2}), q2 = f.sub({3, 4});

    std::optional<std::uint8_t> alpha;
    if (real_anisotropic(q1))
        alpha = f[0] < 0;
    else if (real_anisotropic(q2))
        alpha = f[3] > 0;

    std::set<Integer> T = support_set(f);
    struct Local
    {
        Integer p;
        std::vector<Integer> H;
        Integer c;
    };
    std::map<Integer, Local> S;

    Integer c;
    for (;;) {
        for (auto const & p : T) {
            Place v = Place::prime(p);
            if (S.count(p) || (local_isotropy(q1, v) && local_isotropy(q2, v)))
                continue;
            auto c = first_local_class(p, [&](Integer const & c) {
                return local_isotropy(q1.prepend(-Rational(c)), v) && local_isotropy(q2.prepend(Rational(c)), v);
            });
            if (!c)
                throw InternalError("no local square class fits at " + p.get_str());
            S.emplace(p, Local{p, local_square_class_generators(p), *c});
        }
        F2Vector rhs;
        if (alpha)
            rhs.push_back(*alpha);
        for (auto const & [p, loc] : S)
            for (auto const & h : loc.H)
                rhs.push_back(hilbert_symbol(loc.c, h, Place::prime(p)) < 0);

        SingBasisQ B = sing_basis_Q(std::vector<Integer>(T.begin(), T.end()));
        std::size_t k = B.basis.size();
        std::vector<F2Vector> rows;
        if (alpha) {
            F2Vector r(k);
            for (std::size_t j = 0; j < k; ++j)
                r[j] = B.basis[j] < 0;
            rows.push_back(r);
        }
        for (auto const & [p, loc] : S)
            for (auto const & h : loc.H) {
                F2Vector r(k);
                for (std::size_t j = 0; j < k; ++j)
                    r[j] = hilbert_symbol(h, B.basis[j], Place::prime(p)) < 0;
                rows.push_back(r);
            }
        F2Matrix A = F2Matrix::from_rows(rows, k);
        auto sols = f2_solve_all(A, rhs);
        if (sols) {
            // smallest |c| over the solution space when it is small enough to scan
            F2Vector best = sols->particular;
            std::size_t m = sols->kernel.size();
            if (m <= 14) {
                Integer bestc = abs(product(B.basis, best));
                for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
                    F2Vector x = sols->particular;
                    for (std::size_t i = 0; i < m; ++i)
                        if (mask >> i & 1)
                            for (std::size_t j = 0; j < k; ++j)
                                x[j] ^= sols->kernel[i][j];
                    Integer cc = abs(product(B.basis, x));
                    if (cc < bestc) {
                        bestc = cc;
                        best = x;
                    }
                }
            }
            tr.systems.push_back(record("dim5:classes", A, rhs, best));
            c = product(B.basis, best);
            break;
        }
        tr.systems.push_back(record("dim5:classes", A, rhs, std::nullopt));
        // only primes where both halves stay isotropic, so S never grows
        append_prime(ctx, T, tr, [&](Integer const & q) {
            Place v = Place::prime(q);
            return local_isotropy(q1, v) && local_isotropy(q2, v);
        });
    }
    tr.c = Rational(c);
    IsotropicVector v = child(q1.prepend(-Rational(c)), ctx, tr);
    IsotropicVector w = child(q2.prepend(Rational(c)), ctx, tr);
    return combine(v, w);
}

struct Congruences
{
    std::vector<CrtCondition> conds;
    std::vector<std::pair<Integer, unsigned long>> square_moduli;
};

// c for the dim-6/7 splits: a = c_p (mod p^(v_p(c_p) + 1 + ord_p 4)), b of
// sign eps and a local square on S, c = squarefree part of a*b. Among the
// first 32 admissible a the one giving the smallest |c| is kept.
Integer split_element(Congruences const & cg, int eps)
{
    Integer a0 = totally_positive_crt(cg.conds);
    Integer mod = 1;
    for (auto const & cd : cg.conds) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), cd.p.get_mpz_t(), cd.exponent);
        mod *= pe;
    }
    Integer b = signed_local_square(eps, cg.square_moduli);
    Integer best = 0;
    for (int j = 0; j < 32; ++j) {
        Integer c = squarefree_part(Rational((a0 + j * mod) * b)).s;
        if (best == 0 || abs(c) < abs(best))
            best = c;
    }
    return best;
}

// Smallest squarefree |c| (c before -c) with both halves isotropic after
// adjoining -c, scanning |c| <= bound.
std::optional<Integer> small_split_element(DiagonalForm const & q1, DiagonalForm const & q2, long bound)
{
    for (long n = 1; n <= bound; ++n) {
        if (!is_squarefree(Integer(n)))
            continue;
        for (long c : {n, -n}) {
            Rational r(c);
            if (is_globally_isotropic(q1.prepend(-r)) && is_globally_isotropic(q2.prepend(-r)))
                return Integer(c);
        }
    }
    return std::nullopt;
}

void add_local_condition(Congruences & cg, Integer const & p, Integer const & cp)
{
    unsigned long e = valuation(cp, p) + (p == 2 ? 3 : 1);
    cg.conds.push_back({cp, p, e});
    cg.square_moduli.push_back({p, p == 2 ? 3ul : 1ul});
}

IsotropicVector dim6(DiagonalForm const & f, Ctx & ctx, SolveTrace & tr)
{
    DiagonalForm q1 = f.sub({0, 1, 2});
    DiagonalForm q2 = DiagonalForm{-f[3], -f[4], -f[5]};
    if (is_globally_isotropic(q1)) {
        tr.route = "dim6:q1";
        return pad(child(q1, ctx, tr), 6, 0);
    }
    if (is_globally_isotropic(q2)) {
        tr.route = "dim6:q2";
        return pad(child(q2, ctx, tr), 6, 3);
    }
    tr.route = "dim6";
    Rational d1 = q1.determinant(), d2 = q2.determinant();
    Congruences cg;
    for (auto const & p : support_set(f)) {
        Place v = Place::prime(p);
        if (p != 2 && local_isotropy(q1, v) && local_isotropy(q2, v))
            continue;
        auto cp = first_local_class(p, [&](Integer const & c) {
            return !local_square(-Rational(c) * d1, v) && !local_square(-Rational(c) * d2, v);
        });
        if (!cp)
            throw InternalError("no local class c_p at " + p.get_str());
        add_local_condition(cg, p, *cp);
    }
    int eps = real_anisotropic(q1) ? sgn_of(f[0]) : real_anisotropic(q2) ? -sgn_of(f[3]) : 1;
    auto small = small_split_element(q1, q2, 2000);
    Integer c = small ? *small : split_element(cg, eps);
    tr.c = Rational(c);
    DiagonalForm h1 = q1.prepend(-Rational(c)), h2 = q2.prepend(-Rational(c));
    if (!is_globally_isotropic(h1) || !is_globally_isotropic(h2))
        throw InternalError("dim-6 split element " + c.get_str() + " is not represented by both halves");
    return combine(child(h1, ctx, tr), child(h2, ctx, tr));
}

IsotropicVector dim7(DiagonalForm const & f, Ctx & ctx, SolveTrace & tr)
{
    DiagonalForm q1 = f.sub({0, 1, 2});
    DiagonalForm q2 = DiagonalForm{-f[3], -f[4], -f[5], -f[6]};
    if (is_globally_isotropic(q1)) {
        tr.route = "dim7:q1";
        return pad(child(q1, ctx, tr), 7, 0);
    }
    if (is_globally_isotropic(q2)) {
        tr.route = "dim7:q2";
        return pad(child(q2, ctx, tr), 7, 3);
    }
    tr.route = "dim7";
    Rational d1 = q1.determinant();
    Congruences cg;
    for (auto const & p : support_set(f)) {
        Place v = Place::prime(p);
        if (local_isotropy(q1, v))
            continue;
        auto cp = first_local_class(p, [&](Integer const & c) { return !local_square(-Rational(c) * d1, v); });
        if (!cp)
            throw InternalError("no local class c_p at " + p.get_str());
        add_local_condition(cg, p, *cp);
    }
    int eps = real_anisotropic(q1) ? sgn_of(f[0]) : real_anisotropic(q2) ? -sgn_of(f[3]) : 1;
    auto small = small_split_element(q1, q2, 2000);
    Integer c = small ? *small : split_element(cg, eps);
    tr.c = Rational(c);
    DiagonalForm h1 = q1.prepend(-Rational(c)), h2 = q2.prepend(-Rational(c));
    if (!is_globally_isotropic(h1) || !is_globally_isotropic(h2))
        throw InternalError("dim-7 split element " + c.get_str() + " is not represented by both halves");
    return combine(child(h1, ctx, tr), child(h2, ctx, tr));
}

IsotropicVector dim_ge8(DiagonalForm const & f, Ctx & ctx, SolveTrace & tr)
{
    std::size_t d = f.dim(), k = d / 2;
    std::vector<Rational> c1(f.coeffs().begin(), f.coeffs().begin() + static_cast<long>(k)), c2;
    for (std::size_t i = k; i < d; ++i)
        c2.push_back(-f[i]);
    DiagonalForm q1(c1), q2(c2);
    if (is_globally_isotropic(q1)) {
        tr.route = "dim8+:q1";
        return pad(child(q1, ctx, tr), d, 0);
    }
    if (is_globally_isotropic(q2)) {
        tr.route = "dim8+:q2";
        return pad(child(q2, ctx, tr), d, k);
    }
    tr.route = "dim8+";
    int eps = real_anisotropic(q1) ? sgn_of(f[0]) : real_anisotropic(q2) ? -sgn_of(f[k]) : 1;
    Rational c(eps);
    tr.c = c;
    return combine(child(q1.prepend(-c), ctx, tr), child(q2.prepend(-c), ctx, tr));
}

IsotropicVector solve_rec(DiagonalForm const & f, Ctx & ctx, SolveTrace & tr)
{
    tr.dimension = f.dim();
    if (f.dim() == 1)
        throw Anisotropic("unary", "Unary forms cannot be isotropic");
    if (auto w = anisotropy_witness(f))
        throw Anisotropic(w->to_string(), "form " + f.to_string() + " is anisotropic at " + w->to_string());
    NormalizedForm N = normalize(f);
    DiagonalForm const & g = N.reduced;
    tr.form = g.coeffs();
    IsotropicVector w;
    switch (g.dim()) {
        case 2:
            tr.route = "binary";
            w = solve_binary(g);
            break;
        case 3:
            tr.route = "dim3";
            w = solve_dim3(g);
            break;
        case 4:
            w = dim4(g, ctx, tr);
            break;
        case 5:
            w = dim5(g, ctx, tr);
            break;
        case 6:
            w = dim6(g, ctx, tr);
            break;
        case 7:
            w = dim7(g, ctx, tr);
            break;
        default:
            w = dim_ge8(g, ctx, tr);
    }
    if (!verify(g, w))
        throw InternalError("route " + tr.route + " returned a non-isotropic vector for " + g.to_string());
    tr.vector = canonical_vector(w);
    IsotropicVector v = canonical_vector(N.pull_back(tr.vector));
    if (!verify(f, v))
        throw InternalError("pull-back failed verification for " + f.to_string());
    return v;
}

IsotropicVector solve_fixed_dim(DiagonalForm const & f, SolverOptions const & opts, std::size_t lo, std::size_t hi)
{
    if (f.dim() < lo || f.dim() > hi)
        throw InvalidArgument("form " + f.to_string() + " has the wrong dimension for this solver");
    return dispatch(f, opts).vector;
}

} // namespace

IsotropicVector NormalizedForm::pull_back(IsotropicVector const & v) const
{
    if (v.size() != t.size())
        throw InvalidArgument("pull_back: length mismatch");
    IsotropicVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(v[i] / t[i]);
    return out;
}

NormalizedForm normalize(DiagonalForm const & f)
{
    std::vector<Rational> red, t;
    for (auto const & a : f.coeffs()) {
        auto sq = squarefree_part(a);
        red.emplace_back(sq.s);
        t.push_back(sq.t);
    }
    return {f, DiagonalForm(red), t};
}

SolveResult dispatch(DiagonalForm const & f, SolverOptions const & opts)
{
    Ctx ctx(opts);
    SolveResult r;
    r.vector = solve_rec(f, ctx, r.trace);
    return r;
}

IsotropicVector solve_dim4(DiagonalForm const & f, SolverOptions const & opts)
{
    return solve_fixed_dim(f, opts, 4, 4);
}

IsotropicVector solve_dim5(DiagonalForm const & f, SolverOptions const & opts)
{
    return solve_fixed_dim(f, opts, 5, 5);
}

IsotropicVector solve_dim6(DiagonalForm const & f, SolverOptions const & opts)
{
    return solve_fixed_dim(f, opts, 6, 6);
}

IsotropicVector solve_dim7(DiagonalForm const & f, SolverOptions const & opts)
{
    return solve_fixed_dim(f, opts, 7, 7);
}

IsotropicVector solve_dim_ge8(DiagonalForm const & f, SolverOptions const & opts)
{
    return solve_fixed_dim(f, opts, 8, static_cast<std::size_t>(-1));
}

bool verify(DiagonalForm const & f, IsotropicVector const & v)
{
    if (v.size() != f.dim())
        throw InvalidArgument("verify: vector length " + std::to_string(v.size()) + " does not match dimension " +
                              std::to_string(f.dim()));
    if (std::all_of(v.begin(), v.end(), [](Rational const & x) { return x == 0; }))
        return false;
    return f.evaluate(v) == 0;
}

Integer totally_positive_crt(std::vector<CrtCondition> const & conds)
{
    std::vector<Congruence> sys;
    Integer mod = 1;
    for (auto const & c : conds) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), c.p.get_mpz_t(), c.exponent);
        sys.push_back({mod_floor(c.residue, pe), pe});
        mod *= pe;
    }
    Integer a = sys.empty() ? Integer(0) : crt(sys);
    return a == 0 ? mod : a;
}

Integer signed_local_square(int sign, std::vector<std::pair<Integer, unsigned long>> const & S)
{
    if (sign != 1 && sign != -1)
        throw InvalidArgument("signed_local_square: sign must be +1 or -1");
    if (sign > 0)
        return 1;
    Integer M = 1;
    for (auto const & [p, e] : S) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        M *= pe;
    }
    return M > 1 ? Integer(1 - M) : Integer(-1);
}

std::vector<Integer> local_square_class_generators(Integer const & p)
{
    if (p == 2)
        return {-1, 2, 5};
    Integer u = 2;
    while (jacobi(u, p) != -1)
        ++u;
    return {u, p};
}

} // namespace isovec
