#include "isovec/quadfield.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "isovec/classgroup.hpp"
#include "isovec/errors.hpp"
#include "quadfield_detail.hpp"

namespace isovec {

namespace {

void require_same(Integer const & a, Integer const & b)
{
    if (a != b)
        throw InvalidArgument("elements of different quadratic fields");
}

double log_abs(Integer const & n)
{
    long e;
    double m = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

double log_abs(Rational const & q)
{
    return log_abs(q.get_num()) - log_abs(q.get_den());
}

double log_add(double a, double b)
{
    if (a < b)
        std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// log|x + y sqrt d| and log|x - y sqrt d| for real d, nonzero element.
std::pair<double, double> embedding_logs(QFElement const & e)
{
    double ln = log_abs(e.norm());
    if (e.y() == 0) {
        double l = log_abs(e.x());
        return {l, l};
    }
    double ly = log_abs(e.y()) + 0.5 * log_abs(e.d());
    double big = e.x() == 0 ? ly : log_add(log_abs(e.x()), ly);
    bool same = e.x() == 0 || sgn(e.x()) == sgn(e.y());
    // the embedding where x and y sqrt d have equal signs is the large one
    return same ? std::pair{big, ln - big} : std::pair{ln - big, big};
}

using Vec2 = std::array<Integer, 2>;

struct Hnf
{
    Integer A, B, C;
};

// Basis (A, 0), (B, C) of the lattice spanned by vs; A, C > 0, 0 <= B < A.
Hnf hnf2(std::vector<Vec2> vs)
{
    Vec2 pivot{0, 0};
    std::vector<Integer> firsts;
    for (auto & w : vs) {
        if (w[1] == 0) {
            firsts.push_back(w[0]);
            continue;
        }
        if (pivot[1] == 0) {
            firsts.push_back(pivot[0]);
            pivot = w;
            continue;
        }
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pivot[1].get_mpz_t(), w[1].get_mpz_t());
        Integer pv = pivot[1] / g, wv = w[1] / g;
        Vec2 np{s * pivot[0] + t * w[0], s * pivot[1] + t * w[1]};
        firsts.push_back(wv * pivot[0] - pv * w[0]);
        pivot = np;
    }
    Integer A = 0;
    for (auto const & x : firsts)
        A = gcd(A, x);
    if (A == 0 || pivot[1] == 0)
        throw InternalError("ideal lattice is not of full rank");
    if (pivot[1] < 0) {
        pivot[0] = -pivot[0];
        pivot[1] = -pivot[1];
    }
    return {A, mod_floor(pivot[0], A), pivot[1]};
}

Vec2 int_coords(QuadField const & L, QFElement const & e)
{
    auto [u, v] = omega_coords(L, e);
    if (u.get_den() != 1 || v.get_den() != 1)
        throw InternalError("expected an integral element");
    return {u.get_num(), v.get_num()};
}

Integer trace_omega(QuadField const & L)
{
    return mod_floor(L.d(), 4) == 1 ? 1 : 0;
}

// Normalized b for (A,0),(B,C) = C * [A/C, B/C + omega].
QFIdeal from_hnf(QuadField const & L, Hnf const & h, Rational const & scale)
{
    if (h.A % h.C != 0 || h.B % h.C != 0)
        throw InternalError("lattice is not an ideal");
    QFIdeal I;
    I.scale = scale * Rational(h.C);
    I.scale.canonicalize();
    I.a = h.A / h.C;
    I.b = 2 * (h.B / h.C) + trace_omega(L);
    Integer m = 2 * I.a;
    I.b = mod_floor(I.b, m);
    if (I.b > I.a)
        I.b -= m;
    return I;
}

QFElement beta(QuadField const & L, QFIdeal const & I)
{
    Integer f = L.disc() == L.d() ? 1 : 2;
    return L.element(Rational(I.b, 2), Rational(f, 2));
}

Rational content(Rational const & u, Rational const & v)
{
    return make_rational(gcd(u.get_num(), v.get_num()), lcm(u.get_den(), v.get_den()));
}

} // namespace

QFElement::QFElement(Integer d, Rational x, Rational y) : d_(std::move(d)), x_(std::move(x)), y_(std::move(y))
{
    x_.canonicalize();
    y_.canonicalize();
}

QFElement & QFElement::operator+=(QFElement const & o)
{
    require_same(d_, o.d_);
    x_ += o.x_;
    y_ += o.y_;
    return *this;
}

QFElement & QFElement::operator-=(QFElement const & o)
{
    require_same(d_, o.d_);
    x_ -= o.x_;
    y_ -= o.y_;
    return *this;
}

QFElement & QFElement::operator*=(QFElement const & o)
{
    require_same(d_, o.d_);
    Rational x = x_ * o.x_ + d_ * y_ * o.y_;
    Rational y = x_ * o.y_ + y_ * o.x_;
    x_ = std::move(x);
    y_ = std::move(y);
    return *this;
}

QFElement & QFElement::operator/=(QFElement const & o)
{
    require_same(d_, o.d_);
    Rational n = o.norm();
    if (n == 0)
        throw InvalidArgument("division by zero in a quadratic field");
    *this *= o.conj();
    x_ /= n;
    y_ /= n;
    return *this;
}

QFElement & QFElement::operator*=(Rational const & r)
{
    x_ *= r;
    y_ *= r;
    return *this;
}

std::string QFElement::to_string() const
{
    if (y_ == 0)
        return x_.get_str();
    std::string s;
    if (x_ != 0)
        s = x_.get_str() + (y_ > 0 ? " + " : " - ");
    else if (y_ < 0)
        s = "-";
    Rational ay = abs(y_);
    if (ay != 1)
        s += ay.get_str() + "*";
    return s + "sqrt(" + d_.get_str() + ")";
}

QFElement pow(QFElement const & e, long k)
{
    if (k < 0) {
        if (e.is_zero())
            throw InvalidArgument("negative power of zero");
        return pow(QFElement(e.d(), 1) / e, -k);
    }
    QFElement r(e.d(), 1), b = e;
    while (k) {
        if (k & 1)
            r *= b;
        k >>= 1;
        if (k)
            b *= b;
    }
    return r;
}

QFElement reduce_rational_square(QFElement const & e)
{
    if (e.is_zero())
        throw InvalidArgument("zero has no square class");
    Rational c = content(e.x(), e.y());
    Rational t = squarefree_part(c).t;
    QFElement r = e;
    r *= Rational(1) / (t * t);
    return r;
}

std::string QFIdeal::to_string() const
{
    std::string s = "[" + a.get_str() + ", " + b.get_str() + "]";
    return scale == 1 ? s : scale.get_str() + "*" + s;
}

std::string PrimeIdeal::to_string() const
{
    char const * k = kind == Splitting::split ? "split" : kind == Splitting::inert ? "inert" : "ramified";
    return "P(" + p.get_str() + ", " + k + ", " + ideal.to_string() + ")";
}

struct QuadField::Cache
{
    std::once_flag unit_once, cg_once;
    std::optional<QFElement> unit;
    std::unique_ptr<ClassGroup> cg;
};

QuadField::QuadField(Integer d, QuadFieldOptions opts)
    : d_(std::move(d)), opts_(std::move(opts)), cache_(std::make_shared<Cache>())
{
    if (d_ == 0 || d_ == 1 || !is_squarefree(d_))
        throw InvalidArgument("Q(sqrt(d)) needs squarefree d != 0, 1; got " + d_.get_str());
    disc_ = mod_floor(d_, 4) == 1 ? d_ : Integer(4 * d_);
}

QuadField QuadField::from_radicand(Rational const & r, QuadFieldOptions opts)
{
    if (r == 0)
        throw InvalidArgument("zero radicand");
    Integer s = squarefree_part(r).s;
    if (s == 1)
        throw InvalidArgument("radicand " + r.get_str() + " is a square");
    return QuadField(s, std::move(opts));
}

QFElement QuadField::omega() const
{
    if (mod_floor(d_, 4) == 1)
        return element(Rational(1, 2), Rational(1, 2));
    return element(0, 1);
}

QFElement const & QuadField::fundamental_unit() const
{
    if (!is_real())
        throw InvalidArgument("imaginary quadratic fields have no fundamental unit");
    std::call_once(cache_->unit_once, [this] {
        detail::Reducer red(*this);
        Integer a = 1, b = mod_floor(disc_, 2);
        red.normalize(a, b);
        QFElement m = element(1);
        std::uint64_t steps = 0;
        do {
            if (++steps > opts_.period_cap)
                throw ResourceLimit("continued-fraction period of d = " + d_.get_str() + " exceeds the cap");
            red.rho(a, b, &m);
        } while (a != 1);
        for (QFElement u : {m, -m, m.conj(), -m.conj()}) {
            if (u.x() > 0 && u.y() > 0) {
                cache_->unit = u;
                break;
            }
        }
        Rational n = cache_->unit ? cache_->unit->norm() : Rational(0);
        if (n != 1 && n != -1)
            throw InternalError("cycle product is not a unit");
    });
    return *cache_->unit;
}

std::vector<QFElement> QuadField::torsion_units() const
{
    std::vector<QFElement> out{element(1), element(-1)};
    if (d_ == -1) {
        out.push_back(element(0, 1));
        out.push_back(element(0, -1));
    } else if (d_ == -3) {
        for (int sx : {1, -1})
            for (int sy : {1, -1})
                out.push_back(element(Rational(sx, 2), Rational(sy, 2)));
    }
    return out;
}

QFElement QuadField::torsion_generator() const
{
    return d_ == -1 ? element(0, 1) : element(-1);
}

ClassGroup const & QuadField::class_group() const
{
    std::call_once(cache_->cg_once, [this] {
        if (abs(disc_) > opts_.max_class_group_disc)
            throw ResourceLimit("discriminant " + disc_.get_str() + " exceeds the class group bound");
        cache_->cg = std::make_unique<ClassGroup>(QuadField(d_, opts_));
    });
    return *cache_->cg;
}

Rational norm(QFElement const & e)
{
    return e.norm();
}

std::pair<Rational, Rational> omega_coords(QuadField const & L, QFElement const & e)
{
    require_same(L.d(), e.d());
    if (mod_floor(L.d(), 4) == 1) {
        Rational u = e.x() - e.y(), v = 2 * e.y();
        u.canonicalize();
        v.canonicalize();
        return {u, v};
    }
    return {e.x(), e.y()};
}

bool is_integral(QuadField const & L, QFElement const & e)
{
    auto [u, v] = omega_coords(L, e);
    return u.get_den() == 1 && v.get_den() == 1;
}

PrimeDecomposition factor_prime(QuadField const & L, Integer const & p)
{
    if (!is_prime(p))
        throw InvalidArgument("factor_prime: " + p.get_str() + " is not prime");
    Integer const & D = L.disc();
    auto make = [&](Splitting k, Integer b) {
        QFIdeal I{1, p, b};
        Integer m = 2 * p;
        I.b = mod_floor(I.b, m);
        if (I.b > I.a)
            I.b -= m;
        return PrimeIdeal{p, k, I};
    };
    int k = kronecker_prime(D, p);
    if (k == 0) {
        Integer b;
        if (p == 2)
            b = 2 * mod_floor(L.d(), 2);
        else
            b = mpz_odd_p(D.get_mpz_t()) ? p : Integer(0);
        return {Splitting::ramified, {make(Splitting::ramified, b)}};
    }
    if (k < 0) {
        PrimeIdeal P{p, Splitting::inert, unit_ideal(L)};
        P.ideal.scale = Rational(p);
        return {Splitting::inert, {P}};
    }
    Integer b;
    if (p == 2) {
        b = 1;
    } else {
        auto r = sqrt_mod(mod_floor(D, p), p);
        if (!r)
            throw InternalError("split prime without a square root of the discriminant");
        b = *r;
        if (mpz_odd_p(b.get_mpz_t()) != mpz_odd_p(D.get_mpz_t()))
            b += p;
    }
    return {Splitting::split, {make(Splitting::split, b), make(Splitting::split, -b)}};
}

QFIdeal unit_ideal(QuadField const & L)
{
    return QFIdeal{1, 1, mod_floor(L.disc(), 2)};
}

QFIdeal principal_ideal(QuadField const & L, QFElement const & alpha)
{
    if (alpha.is_zero())
        throw InvalidArgument("the zero ideal is not a fractional ideal");
    auto [u, v] = omega_coords(L, alpha);
    Rational c = content(u, v);
    QFElement a0 = alpha;
    a0 *= Rational(1) / c;
    std::vector<Vec2> gens{int_coords(L, a0), int_coords(L, a0 * L.omega())};
    return from_hnf(L, hnf2(std::move(gens)), c);
}

QFIdeal ideal_mul(QuadField const & L, QFIdeal const & I, QFIdeal const & J)
{
    QFElement a1 = L.element(Rational(I.a)), a2 = L.element(Rational(J.a));
    QFElement b1 = beta(L, I), b2 = beta(L, J);
    std::vector<Vec2> gens{int_coords(L, a1 * a2), int_coords(L, a1 * b2), int_coords(L, a2 * b1),
                           int_coords(L, b1 * b2)};
    return from_hnf(L, hnf2(std::move(gens)), I.scale * J.scale);
}

QFIdeal ideal_conj(QFIdeal const & I)
{
    QFIdeal r = I;
    r.b = -r.b;
    if (r.b <= -r.a)
        r.b += 2 * r.a;
    return r;
}

QFIdeal ideal_inverse(QFIdeal const & I)
{
    QFIdeal r = ideal_conj(I);
    r.scale = Rational(1) / (I.scale * I.a);
    r.scale.canonicalize();
    return r;
}

QFIdeal ideal_pow(QuadField const & L, QFIdeal const & I, long k)
{
    if (k < 0)
        return ideal_pow(L, ideal_inverse(I), -k);
    QFIdeal r = unit_ideal(L), b = I;
    while (k) {
        if (k & 1)
            r = ideal_mul(L, r, b);
        k >>= 1;
        if (k)
            b = ideal_mul(L, b, b);
    }
    return r;
}

Rational ideal_norm(QFIdeal const & I)
{
    return I.scale * I.scale * I.a;
}

bool ideal_contains(QuadField const & L, QFIdeal const & I, QFElement const & alpha)
{
    QFElement e = alpha;
    e *= Rational(1) / I.scale;
    auto [u, v] = omega_coords(L, e);
    if (u.get_den() != 1 || v.get_den() != 1)
        return false;
    Integer k = (I.b - trace_omega(L)) / 2;
    Integer r = u.get_num() - v.get_num() * k;
    return mpz_divisible_p(r.get_mpz_t(), I.a.get_mpz_t()) != 0;
}

long ideal_valuation(QuadField const & L, PrimeIdeal const & P, QFIdeal const & I)
{
    (void)L;
    long vs = valuation(I.scale.get_num(), P.p) - static_cast<long>(valuation(I.scale.get_den(), P.p));
    long va = static_cast<long>(valuation(I.a, P.p));
    switch (P.kind) {
        case Splitting::inert:
            return vs;
        case Splitting::ramified:
            return 2 * vs + va;
        case Splitting::split:
            break;
    }
    if (va == 0)
        return vs;
    Integer m = 2 * P.p;
    return vs + (mod_floor(I.b - P.ideal.b, m) == 0 ? va : 0);
}

long element_valuation(QuadField const & L, PrimeIdeal const & P, QFElement const & alpha)
{
    return ideal_valuation(L, P, principal_ideal(L, alpha));
}

namespace detail {

Reducer::Reducer(QuadField const & L) : d_(L.d()), D_(L.disc()), f_(L.disc() == L.d() ? 1 : 2), real_(L.is_real())
{
    if (real_)
        mpz_sqrt(s_.get_mpz_t(), D_.get_mpz_t());
}

void Reducer::normalize(Integer & a, Integer & b) const
{
    Integer m = 2 * a;
    if (real_ && a <= s_) {
        // b in [s - 2a + 1, s]
        Integer lo = s_ - m + 1;
        b = lo + mod_floor(b - lo, m);
    } else {
        b = mod_floor(b, m);
        if (b > a)
            b -= m;
    }
}

bool Reducer::is_reduced(Integer const & a, Integer const & b) const
{
    if (real_)
        return b > 0 && b <= s_ && s_ - b + 1 <= 2 * a && 2 * a <= s_ + b;
    Integer c = (b * b - D_) / (4 * a);
    return a < c || (a == c && b >= 0);
}

void Reducer::rho(Integer & a, Integer & b, QFElement * m) const
{
    Integer c = (b * b - D_) / (4 * a);
    if (m)
        *m *= QFElement(d_, make_rational(b, 2 * c), make_rational(f_, 2 * c));
    a = abs(c);
    b = -b;
    normalize(a, b);
}

void Reducer::reduce(Integer & a, Integer & b, QFElement * m) const
{
    normalize(a, b);
    while (!is_reduced(a, b))
        rho(a, b, m);
}

} // namespace detail

ReducedIdeal reduce_ideal(QuadField const & L, QFIdeal const & I)
{
    detail::Reducer red(L);
    Integer a = I.a, b = I.b;
    red.reduce(a, b, nullptr);
    ReducedIdeal R{a, b};
    if (!L.is_real())
        return R;
    for (auto const & J : reduced_cycle(L, R))
        if (J.a < R.a || (J.a == R.a && J.b < R.b))
            R = J;
    return R;
}

std::vector<ReducedIdeal> reduced_cycle(QuadField const & L, ReducedIdeal const & R)
{
    detail::Reducer red(L);
    if (!red.is_reduced(R.a, R.b))
        throw InvalidArgument("reduced_cycle: ideal is not reduced");
    std::vector<ReducedIdeal> out{R};
    if (!L.is_real())
        return out;
    Integer a = R.a, b = R.b;
    for (;;) {
        red.rho(a, b, nullptr);
        if (a == R.a && b == R.b)
            return out;
        if (out.size() > L.options().period_cap)
            throw ResourceLimit("reduced cycle longer than the period cap");
        out.push_back({a, b});
    }
}

std::optional<QFElement> is_principal(QuadField const & L, QFIdeal const & I)
{
    detail::Reducer red(L);
    QFElement m = L.element(I.scale);
    Integer a = I.a, b = I.b;
    red.reduce(a, b, &m);
    if (L.is_real() && a != 1) {
        Integer a0 = a, b0 = b;
        std::uint64_t steps = 0;
        do {
            if (++steps > L.options().period_cap)
                throw ResourceLimit("reduced cycle longer than the period cap");
            red.rho(a, b, &m);
        } while (a != 1 && !(a == a0 && b == b0));
    }
    if (a != 1)
        return std::nullopt;
    QFElement g = balance_by_unit(L, m);
    if (!(principal_ideal(L, g) == I))
        throw InternalError("principal generator failed verification for " + I.to_string());
    return g;
}

QFElement balance_by_unit(QuadField const & L, QFElement const & e, long step)
{
    if (!L.is_real() || e.is_zero())
        return e;
    QFElement const & eps = L.fundamental_unit();
    auto [l1, l2] = embedding_logs(e);
    double R = embedding_logs(eps).first;
    long k = step * std::lround((l1 - l2) / (2 * R * static_cast<double>(step)));
    return k == 0 ? e : e * pow(eps, -k);
}

} // namespace isovec
