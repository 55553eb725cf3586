#include "isovec/ternary.hpp"

#include "isovec/errors.hpp"

namespace isovec {

namespace {

void make_primitive(std::array<Integer, 3> & v)
{
    Integer g = gcd(gcd(v[0], v[1]), v[2]);
    if (g > 1)
        for (auto & x : v)
            x /= g;
}

std::optional<std::array<Integer, 3>> descend(Integer const & a, Integer const & b, int depth)
{
    if (depth > 4096)
        throw InternalError("conic descent does not terminate");
    if (a == 1)
        return std::array<Integer, 3>{1, 0, 1};
    if (b == 1)
        return std::array<Integer, 3>{0, 1, 1};
    if (a == -b)
        return std::array<Integer, 3>{1, 1, 0};
    if (abs(a) > abs(b)) {
        auto r = descend(b, a, depth + 1);
        if (!r)
            return std::nullopt;
        return std::array<Integer, 3>{(*r)[1], (*r)[0], (*r)[2]};
    }
    // |a| <= |b|, and |b| = 1 leaves only a = b = -1
    Integer m = abs(b);
    if (m == 1)
        return std::nullopt;

    std::vector<Congruence> sys;
    for (auto const & pe : factor(m).factors) {
        Integer const & p = pe.prime;
        if (p == 2) {
            sys.push_back({mod_floor(a, 2), 2});
        } else if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
            sys.push_back({0, p});
        } else {
            auto r = sqrt_mod(mod_floor(a, p), p);
            if (!r)
                return std::nullopt;
            sys.push_back({*r, p});
        }
    }
    Integer t = crt(sys);
    if (2 * t > m)
        t -= m;
    Integer k = (t * t - a) / b;
    SquarefreeDecomposition sk = squarefree_part(Rational(k));
    Integer r = sk.t.get_num();

    auto sub = descend(a, sk.s, depth + 1);
    if (!sub)
        return std::nullopt;
    auto const & [X, Y, Z] = *sub;
    std::array<Integer, 3> out{Z + t * X, sk.s * r * Y, t * Z + a * X};
    make_primitive(out);
    return out;
}

} // namespace

IsotropicVector canonical_vector(IsotropicVector const & v)
{
    Integer den = 1, g = 0;
    for (auto const & x : v)
        den = lcm(den, x.get_den());
    std::vector<Integer> n;
    for (auto const & x : v) {
        Integer y = abs(x.get_num() * (den / x.get_den()));
        g = gcd(g, y);
        n.push_back(y);
    }
    if (g == 0)
        throw InvalidArgument("canonical_vector: zero vector");
    IsotropicVector out;
    for (auto const & y : n)
        out.emplace_back(y / g);
    return out;
}

std::optional<std::array<Integer, 3>> solve_conic(Integer const & A, Integer const & B)
{
    if (A == 0 || B == 0 || !is_squarefree(A) || !is_squarefree(B))
        throw InvalidArgument("solve_conic: coefficients must be squarefree and nonzero");
    auto r = descend(A, B, 0);
    if (r && A * (*r)[0] * (*r)[0] + B * (*r)[1] * (*r)[1] != (*r)[2] * (*r)[2])
        throw InternalError("conic descent produced a non-solution");
    return r;
}

IsotropicVector solve_binary(DiagonalForm const & f)
{
    if (f.dim() != 2)
        throw InvalidArgument("solve_binary needs a binary form");
    auto e = sqrt_exact(-f[0] * f[1]);
    if (!e)
        throw Anisotropic(anisotropy_witness(f)->to_string(), "binary form " + f.to_string() + " is anisotropic");
    IsotropicVector v{f[1], *e};
    if (f.evaluate(v) != 0)
        throw InternalError("binary solution failed verification");
    return canonical_vector(v);
}

std::array<Integer, 3> solve_legendre(Integer const & a, Integer const & b, Integer const & c)
{
    for (auto const * x : {&a, &b, &c})
        if (*x == 0 || !is_squarefree(*x))
            throw InvalidArgument("solve_legendre: coefficients must be squarefree and nonzero");
    if (gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1)
        throw InvalidArgument("solve_legendre: coefficients must be pairwise coprime");
    auto r = descend(-a * c, -b * c, 0);
    if (!r) {
        DiagonalForm f{Rational(a), Rational(b), Rational(c)};
        auto w = anisotropy_witness(f);
        throw Anisotropic(w ? w->to_string() : "?", "Legendre equation " + f.to_string() + " has no solution");
    }
    std::array<Integer, 3> v{c * (*r)[0], c * (*r)[1], (*r)[2]};
    make_primitive(v);
    for (auto & x : v)
        x = abs(x);
    if (a * v[0] * v[0] + b * v[1] * v[1] + c * v[2] * v[2] != 0)
        throw InternalError("Legendre solution failed verification");
    return v;
}

NormSolution solve_norm_equation(QuadField const & L, Rational const & b)
{
    if (b == 0)
        throw InvalidArgument("solve_norm_equation: zero right-hand side");
    DiagonalForm f{Rational(1), Rational(-L.d()), -b};
    if (auto w = anisotropy_witness(f))
        return {std::nullopt, *w};
    Integer n = b.get_num(), m = b.get_den();
    SquarefreeDecomposition sq = squarefree_part(Rational(n * m));
    auto r = solve_conic(L.d(), sq.s);
    if (!r)
        throw InternalError("norm equation passed the local test but the conic has no point");
    auto const & [Y, W, X] = *r;
    Rational Z = Rational(W) / sq.t;
    Rational den = Z * m;
    QFElement xi = L.element(Rational(X) / den, Rational(Y) / den);
    if (xi.norm() != b)
        throw InternalError("norm equation solution failed verification");
    return {xi, std::nullopt};
}

IsotropicVector solve_dim3(DiagonalForm const & f)
{
    if (f.dim() != 3)
        throw InvalidArgument("solve_dim3 needs a ternary form");
    if (auto w = anisotropy_witness(f))
        throw Anisotropic(w->to_string(), "ternary form " + f.to_string() + " is anisotropic");
    IsotropicVector v;
    for (std::size_t i = 0; i < 3 && v.empty(); ++i)
        for (std::size_t j = i + 1; j < 3 && v.empty(); ++j)
            if (auto d = sqrt_exact(-f[i] * f[j])) {
                v.assign(3, 0);
                v[i] = f[j];
                v[j] = *d;
            }
    if (v.empty()) {
        Rational rad = -f[1] / f[0];
        QuadField L = QuadField::from_radicand(rad);
        Rational t = squarefree_part(rad).t;
        NormSolution ns = solve_norm_equation(L, -f[2] / f[0]);
        if (!ns.xi)
            throw InternalError("isotropic ternary form with an unsolvable norm equation");
        v = {ns.xi->x(), ns.xi->y() / t, 1};
    }
    if (f.evaluate(v) != 0)
        throw InternalError("ternary solution failed verification for " + f.to_string());
    return canonical_vector(v);
}

} // namespace isovec
