#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "isovec/cli.hpp"

namespace {

std::string read_input(std::string const & path)
{
    if (path.empty() || path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char ** argv)
{
    using namespace isovec::cli;
    CLI::App app{"Isotropic vectors of diagonal quadratic forms over Q"};
    app.require_subcommand(1);

    Options opts;
    std::uint64_t seed = 0;
    unsigned max_primes = 64;
    bool plain = false;
    auto common = [&](CLI::App * sub) {
        sub->add_option("--seed", seed, "draw appended primes at random from this seed");
        sub->add_option("--max-primes", max_primes, "cap on appended primes")->capture_default_str();
        sub->add_option("--height", opts.height, "brute-force search height")->capture_default_str();
        sub->add_flag("--json", [&](std::int64_t) { plain = false; }, "JSON output (default)");
        sub->add_flag("--plain", plain, "plain text output");
    };

    std::string file;
    auto * solve = app.add_subcommand("solve", "find an isotropic vector");
    auto * verify = app.add_subcommand("verify", "check a vector against a form");
    auto * local = app.add_subcommand("local", "local invariants at each relevant place");
    for (auto * sub : {solve, verify, local}) {
        common(sub);
        sub->add_option("file", file, "input document (default: stdin)");
    }
    auto * selftest = app.add_subcommand("selftest", "cross-check against the brute-force oracles");
    common(selftest);
    std::string scale = "default";
    bool fault = false;
    selftest->add_option("--scale", scale, "tiny or default")
        ->check(CLI::IsMember({"tiny", "default"}))
        ->capture_default_str();
    selftest->add_flag("--inject-hilbert-fault", fault, "negate every Hilbert symbol (negative control)");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : ExitCode::parse_error;
    }

    opts.json = !plain;
    opts.solver.max_primes = max_primes;
    if (app.got_subcommand("solve") || app.got_subcommand("verify") || app.got_subcommand("local") ||
        app.got_subcommand("selftest")) {
        for (auto * sub : app.get_subcommands())
            if (sub->count("--seed"))
                opts.solver.seed = seed;
    }

    Outcome out;
    try {
        if (*selftest) {
            out = cmd_selftest(scale == "tiny" ? Scale::tiny : Scale::standard, fault, opts);
        } else {
            std::string input = read_input(file);
            if (*solve)
                out = cmd_solve(input, opts);
            else if (*verify)
                out = cmd_verify(input, opts);
            else
                out = cmd_local(input, opts);
        }
    } catch (std::exception const & e) {
        std::cerr << "isovec: " << e.what() << '\n';
        return ExitCode::failure;
    }
    std::cout << out.output;
    return out.exit_code;
}
