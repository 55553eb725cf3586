#include "isovec/cli.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include <json.hpp>

#include "isovec/classgroup.hpp"
#include "isovec/errors.hpp"
#include "isovec/oracle.hpp"

namespace isovec::cli {

namespace {

using json = nlohmann::ordered_json;

struct ParseError : Error
{
    using Error::Error;
};

json parse_json(std::string const & input)
{
    try {
        return json::parse(input);
    } catch (json::exception const & e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

Rational parse_entry(json const & x)
{
    try {
        if (x.is_string())
            return parse_rational(x.get<std::string>());
        if (x.is_number_integer())
            return Rational(x.dump());
    } catch (InvalidArgument const & e) {
        throw ParseError(e.what());
    }
    throw ParseError("expected a rational string, got " + x.dump());
}

std::vector<Rational> parse_list(json const & doc, char const * key)
{
    if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array())
        throw ParseError(std::string("document needs an array \"") + key + "\"");
    std::vector<Rational> out;
    for (auto const & x : doc[key])
        out.push_back(parse_entry(x));
    return out;
}

DiagonalForm parse_form(json const & doc)
{
    auto c = parse_list(doc, "coefficients");
    try {
        return DiagonalForm(c);
    } catch (InvalidArgument const & e) {
        throw ParseError(e.what());
    }
}

json strings(std::vector<Rational> const & v)
{
    json a = json::array();
    for (auto const & x : v)
        a.push_back(x.get_str());
    return a;
}

json trace_summary(SolveTrace const & t)
{
    json j;
    j["route"] = t.route;
    j["dimension"] = t.dimension;
    json ps = json::array();
    for (auto const & p : t.appended_primes)
        ps.push_back(p.get_str());
    j["appended_primes"] = ps;
    if (t.c)
        j["c"] = t.c->get_str();
    if (t.norm_ratio)
        j["norm_ratio"] = t.norm_ratio->get_str();
    if (!t.children.empty()) {
        json ch = json::array();
        for (auto const & c : t.children)
            ch.push_back(trace_summary(c));
        j["children"] = ch;
    }
    return j;
}

std::string render_plain(json const & j)
{
    std::ostringstream os;
    for (auto const & [k, v] : j.items()) {
        os << k << ":";
        if (v.is_array()) {
            for (auto const & x : v)
                os << ' ' << (x.is_string() ? x.get<std::string>() : x.dump());
        } else if (v.is_string()) {
            os << ' ' << v.get<std::string>();
        } else {
            os << ' ' << v.dump();
        }
        os << '\n';
    }
    return os.str();
}

std::string render(json const & j, Options const & opts)
{
    if (opts.json)
        return j.dump(2) + "\n";
    if (j.is_array()) {
        std::string s;
        for (auto const & x : j)
            s += render_plain(x) + "\n";
        return s;
    }
    return render_plain(j);
}

std::pair<int, json> solve_one(json const & doc, Options const & opts)
{
    json out;
    if (doc.is_object() && doc.contains("label"))
        out["label"] = doc["label"];
    DiagonalForm f = parse_form(doc);
    try {
        SolveResult r = dispatch(f, opts.solver);
        bool ok = verify(f, r.vector);
        out["isotropic"] = true;
        out["vector"] = strings(r.vector);
        out["exact_check"] = ok;
        out["trace"] = trace_summary(r.trace);
        return {ok ? ExitCode::ok : ExitCode::failure, out};
    } catch (Anisotropic const & e) {
        out["isotropic"] = false;
        out["witness_place"] = e.place();
        out["exact_check"] = false;
        return {ExitCode::anisotropic, out};
    } catch (ResourceLimit const & e) {
        out["error"] = e.what();
        return {ExitCode::resource_limit, out};
    } catch (Error const & e) {
        out["error"] = e.what();
        return {ExitCode::failure, out};
    }
}

template <class F>
Outcome guarded(Options const & opts, F body)
{
    try {
        return body();
    } catch (ParseError const & e) {
        json j;
        j["error"] = e.what();
        return {ExitCode::parse_error, render(j, opts)};
    }
}

std::string local_class(Rational const & d, Place const & v)
{
    if (v.is_infinite())
        return sgn(d) < 0 ? "-1" : "1";
    Integer const & p = v.p();
    long e = valuation(d, p);
    Rational u = d;
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
    if (e >= 0)
        u /= pe;
    else
        u *= pe;
    Integer n = mod_floor(u.get_num() * u.get_den(), p == 2 ? Integer(8) : p);
    Integer rep;
    if (p == 2) {
        rep = n;
    } else {
        Integer nr = 2;
        while (jacobi(nr, p) != -1)
            ++nr;
        rep = jacobi(n, p) == 1 ? Integer(1) : nr;
    }
    if (e % 2)
        rep *= p;
    return rep.get_str();
}

// --- selftest suites ---

struct Suite
{
    std::string name;
    long checks = 0;
    long failures = 0;
    std::string first_failure;

    void check(bool ok, std::string const & what)
    {
        ++checks;
        if (!ok && failures++ == 0)
            first_failure = what;
    }
};

std::vector<Integer> class_reps(Integer const & p)
{
    if (p == 2)
        return {1, 3, 5, 7, 2, 6, 10, 14};
    Integer u = 2;
    while (jacobi(u, p) != -1)
        ++u;
    return {1, u, p, u * p};
}

Suite hilbert_suite(Scale scale)
{
    Suite s;
    s.name = "hilbert-vs-scan";
    Integer last = scale == Scale::tiny ? 7 : 47;
    for (Integer p = 2; p <= last; p = next_prime(p)) {
        Place v = Place::prime(p);
        int k = p == 2 ? 4 : 2;
        for (auto const & a : class_reps(p))
            for (auto const & b : class_reps(p)) {
                int h = hilbert_symbol(a, b, v);
                int o = local_solubility_scan(a.get_si(), b.get_si(), p.get_si(), k);
                s.check(h == o, "(" + a.get_str() + "," + b.get_str() + ")_" + p.get_str());
            }
    }
    for (int a : {1, -1, 2, -3})
        for (int b : {1, -1, 5, -7}) {
            bool real_solvable = a > 0 || b > 0;
            s.check((hilbert_symbol(a, b, Place::infinity()) == 1) == real_solvable,
                    "(" + std::to_string(a) + "," + std::to_string(b) + ")_inf");
        }
    return s;
}

Suite reciprocity_suite(Scale scale)
{
    Suite s;
    s.name = "reciprocity";
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-2000, 2000);
    int n = scale == Scale::tiny ? 200 : 10000;
    for (int i = 0; i < n; ++i) {
        long a = 0, b = 0;
        while (a == 0)
            a = dist(rng);
        while (b == 0)
            b = dist(rng);
        int prod = hilbert_symbol(a, b, Place::infinity());
        for (auto const & p : support_set(DiagonalForm{Rational(a), Rational(b)}))
            prod *= hilbert_symbol(a, b, Place::prime(p));
        s.check(prod == 1, "product over places for (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    return s;
}

bool is_fundamental(long D)
{
    long m = ((D % 4) + 4) % 4;
    if (m == 1)
        return is_squarefree(Integer(D));
    if (m != 0)
        return false;
    long q = D / 4, r = ((q % 4) + 4) % 4;
    return (r == 2 || r == 3) && is_squarefree(Integer(q));
}

Suite class_number_suite(Scale scale)
{
    Suite s;
    s.name = "class-number-vs-forms";
    long lo = scale == Scale::tiny ? -100 : -500;
    for (long D = -3; D >= lo; --D) {
        if (!is_fundamental(D))
            continue;
        long d = D % 4 == 0 ? D / 4 : D;
        long h = QuadField::from_radicand(Rational(d)).class_group().order();
        s.check(h == bqf_class_group_oracle(D), "h(" + std::to_string(D) + ")");
    }
    return s;
}

Suite completeness_suite(Scale scale, Options const & opts)
{
    Suite s;
    s.name = "dispatch-vs-search";
    std::mt19937_64 rng(20);
    std::uniform_int_distribution<long> coef(-20, 20);
    int n = scale == Scale::tiny ? 40 : 300;
    for (int i = 0; i < n; ++i) {
        std::size_t dim = 2 + static_cast<std::size_t>(i % 4);
        std::vector<Rational> c;
        while (c.size() < dim) {
            long a = coef(rng);
            if (a)
                c.emplace_back(a);
        }
        DiagonalForm f(c);
        bool found = brute_search(f, {opts.height}).has_value();
        bool solved = false;
        try {
            solved = verify(f, dispatch(f, opts.solver).vector);
        } catch (Anisotropic const &) {
        }
        s.check(solved == is_globally_isotropic(f) && (!found || solved), f.to_string());
    }
    return s;
}

Suite soundness_suite(Scale scale, Options const & opts)
{
    Suite s;
    s.name = "random-soundness";
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> coef(-50, 50);
    int n = scale == Scale::tiny ? 40 : 500;
    while (s.checks < n) {
        std::size_t dim = 2 + static_cast<std::size_t>(rng() % 9);
        std::vector<Rational> c;
        while (c.size() < dim) {
            long a = coef(rng);
            if (a && is_squarefree(Integer(a)))
                c.emplace_back(a);
        }
        DiagonalForm f(c);
        if (!is_globally_isotropic(f))
            continue;
        bool ok = false;
        try {
            ok = verify(f, dispatch(f, opts.solver).vector);
        } catch (Error const &) {
        }
        s.check(ok, f.to_string());
    }
    return s;
}

} // namespace

Outcome cmd_solve(std::string const & input, Options const & opts)
{
    return guarded(opts, [&]() -> Outcome {
        json doc = parse_json(input);
        if (!doc.is_array()) {
            auto [code, out] = solve_one(doc, opts);
            return {code, render(out, opts)};
        }
        json all = json::array();
        int worst = ExitCode::ok;
        for (auto const & d : doc) {
            try {
                auto [code, out] = solve_one(d, opts);
                worst = std::max(worst, code);
                all.push_back(out);
            } catch (ParseError const & e) {
                worst = std::max<int>(worst, ExitCode::parse_error);
                all.push_back(json{{"error", e.what()}});
            }
        }
        return {worst, render(all, opts)};
    });
}

Outcome cmd_verify(std::string const & input, Options const & opts)
{
    return guarded(opts, [&]() -> Outcome {
        json doc = parse_json(input);
        DiagonalForm f = parse_form(doc);
        auto v = parse_list(doc, "vector");
        if (v.size() != f.dim())
            throw ParseError("vector has " + std::to_string(v.size()) + " entries, form has dimension " +
                             std::to_string(f.dim()));
        json out;
        out["valid"] = verify(f, v);
        return {ExitCode::ok, render(out, opts)};
    });
}

Outcome cmd_local(std::string const & input, Options const & opts)
{
    return guarded(opts, [&]() -> Outcome {
        DiagonalForm f = parse_form(parse_json(input));
        std::vector<Place> places;
        for (auto const & p : support_set(f))
            places.push_back(Place::prime(p));
        places.push_back(Place::infinity());
        json out;
        for (auto const & v : places) {
            json r;
            r["isotropic"] = local_isotropy(f, v);
            r["hasse"] = hasse_invariant(f, v);
            r["det_class"] = local_class(f.determinant(), v);
            out[v.to_string()] = r;
        }
        return {ExitCode::ok, render(out, opts)};
    });
}

Outcome cmd_selftest(Scale scale, bool inject_fault, Options const & opts)
{
    bool before = hilbert_fault();
    set_hilbert_fault(inject_fault);
    std::vector<Suite> suites;
    auto t0 = std::chrono::steady_clock::now();
    auto run = [&](char const * name, auto suite) {
        try {
            suites.push_back(suite());
        } catch (Error const & e) {
            Suite s;
            s.name = name;
            s.check(false, std::string("aborted: ") + e.what());
            suites.push_back(s);
        }
    };
    run("hilbert-vs-scan", [&] { return hilbert_suite(scale); });
    run("reciprocity", [&] { return reciprocity_suite(scale); });
    run("class-number-vs-forms", [&] { return class_number_suite(scale); });
    run("dispatch-vs-search", [&] { return completeness_suite(scale, opts); });
    run("random-soundness", [&] { return soundness_suite(scale, opts); });
    set_hilbert_fault(before);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool passed = true;
    json out;
    json list = json::array();
    for (auto const & s : suites) {
        json j;
        j["name"] = s.name;
        j["passed"] = s.failures == 0;
        j["checks"] = s.checks;
        j["failures"] = s.failures;
        if (s.failures)
            j["first_failure"] = s.first_failure;
        list.push_back(j);
        passed = passed && s.failures == 0;
    }
    out["passed"] = passed;
    out["seconds"] = secs;
    out["suites"] = list;
    if (!opts.json) {
        std::ostringstream os;
        for (auto const & s : suites) {
            os << (s.failures ? "FAIL " : "PASS ") << s.name << " (" << s.checks - s.failures << "/" << s.checks
               << ")";
            if (s.failures)
                os << " first: " << s.first_failure;
            os << '\n';
        }
        os << (passed ? "selftest passed\n" : "selftest failed\n");
        return {passed ? ExitCode::ok : ExitCode::failure, os.str()};
    }
    return {passed ? ExitCode::ok : ExitCode::failure, out.dump(2) + "\n"};
}

} // namespace isovec::cli
