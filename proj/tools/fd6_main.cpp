// Command-line front end: define a problem from expression strings and
// scalars, run solves and convergence studies, emit reports and grid dumps.
//
// Exit codes: 0 success, 2 configuration error, 3 expression parse or
// evaluation error, 4 solver failure, 5 verification violation. Failures
// also emit a one-line machine-readable JSON record on stderr.

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fd6/verify.hpp"

namespace {

struct ProblemOptions {
    double eps = 1.0;
    double a = 1.0;
    double b = 1.0;
    std::string f_text;
    std::string g_text;
    std::string u_text;
    std::string mesh_text;
    double tol = fd6::default_solve_tol;
    std::string method = "auto";
    std::string out;
    std::string format = "csv";
    std::string force_case;
    bool allow_below = false;
};

struct VerifyOptions {
    int samples = 1000;
    std::uint64_t seed = 7;
    std::string out;
    std::string format = "csv";
};

int fail(int code, const char* type, const std::string& message) {
    nlohmann::json record;
    record["exit"] = code;
    record["type"] = type;
    record["message"] = message;
    std::fprintf(stderr, "%s\n", record.dump().c_str());
    return code;
}

fd6::Method parse_method(const std::string& name) {
    if (name == "auto")
        return fd6::Method::Auto;
    if (name == "direct")
        return fd6::Method::DirectBanded;
    if (name == "iterative")
        return fd6::Method::StationaryIterative;
    throw fd6::DomainError("unknown method '" + name + "'");
}

std::optional<fd6::CaseTag> parse_case(const std::string& name) {
    if (name.empty())
        return std::nullopt;
    if (name == "CaseAgeB")
        return fd6::CaseTag::AgeB;
    if (name == "CaseAleB")
        return fd6::CaseTag::AleB;
    throw fd6::DomainError("unknown case '" + name + "'");
}

int parse_mesh_int(const std::string& text) {
    int value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw fd6::DomainError("invalid N '" + text + "'");
    if (value < 2)
        throw fd6::DomainError("N must be >= 2 (got '" + text + "')");
    return value;
}

/// "N" gives a single grid; "lo..hi" expands by doubling, so hi must equal
/// lo * 2^k. Studies additionally require lo itself to be a power of two.
std::vector<int> parse_mesh_list(const std::string& text,
                                 bool powers_of_two_required) {
    const auto pos = text.find("..");
    if (pos == std::string::npos)
        return {parse_mesh_int(text)};
    const int lo = parse_mesh_int(text.substr(0, pos));
    const int hi = parse_mesh_int(text.substr(pos + 2));
    if (powers_of_two_required && (lo & (lo - 1)) != 0)
        throw fd6::DomainError("study N values must be powers of two; range "
                               "start " +
                               std::to_string(lo) + " is not");
    std::vector<int> list;
    for (int N = lo; N <= hi; N *= 2)
        list.push_back(N);
    if (list.empty() || list.back() != hi)
        throw fd6::DomainError("range end " + std::to_string(hi) +
                               " is not reachable by doubling from " +
                               std::to_string(lo));
    return list;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fputs(content.c_str(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw fd6::DomainError("cannot open output file '" + path + "'");
    out << content;
    out.flush();
    if (!out)
        throw fd6::DomainError("failed writing output file '" + path + "'");
}

fd6::ProblemSpec make_problem(const ProblemOptions& o) {
    return fd6::ProblemSpec{o.eps,
                            o.a,
                            o.b,
                            fd6::DifferentiableField2D(o.f_text),
                            fd6::DifferentiableField2D(o.g_text),
                            parse_case(o.force_case),
                            o.allow_below};
}

int run_solve(const ProblemOptions& o) {
    const auto start = std::chrono::steady_clock::now();
    const auto N_list = parse_mesh_list(o.mesh_text, false);
    if (N_list.size() != 1)
        throw fd6::DomainError("solve expects a single N, not a range");
    const fd6::ProblemSpec problem = make_problem(o);
    const auto system = fd6::assemble(problem, fd6::build_mesh(N_list[0]));
    const auto report = fd6::solve(system, o.tol, parse_method(o.method));

    std::ostringstream grid_text;
    fd6::dump(report.solution, grid_text);
    write_output(o.out, grid_text.str());

    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    std::fprintf(stderr,
                 "residual %.6e, method %s, iterations %d, runtime %.3f s\n",
                 report.relative_residual,
                 fd6::to_string(report.method).c_str(), report.iterations,
                 elapsed.count());
    return 0;
}

std::string render(const fd6::ConvergenceReport& report,
                   const std::string& format) {
    return format == "json" ? fd6::to_json_string(report)
                            : fd6::to_csv(report);
}

int run_study(const ProblemOptions& o) {
    const auto N_list = parse_mesh_list(o.mesh_text, true);
    if (N_list.size() < 2)
        throw fd6::DomainError(
            "study expects an N range like 16..256 with at least two grids");
    const auto report = fd6::richardson_study(make_problem(o), N_list, o.tol,
                                              parse_method(o.method));
    write_output(o.out, render(report, o.format));
    return 0;
}

int run_mms(const ProblemOptions& o) {
    const auto N_list = parse_mesh_list(o.mesh_text, false);
    const auto report =
        fd6::mms_study(fd6::DifferentiableField2D(o.u_text), o.eps, o.a, o.b,
                       N_list, o.tol, parse_method(o.method));
    write_output(o.out, render(report, o.format));
    return 0;
}

int run_verify(const VerifyOptions& v) {
    auto report = fd6::structure_sweep(v.samples, v.seed);
    report.comparison_minimum =
        std::min(report.comparison_minimum,
                 fd6::comparison_sweep(100, v.seed, {1e-3, 1e-1, 1.0, 10.0}));
    const double load_min = fd6::unit_load_minimum(16, 20, v.seed);
    const double excess = fd6::max_principle_excess(16, 20, v.seed);

    write_output(v.out, v.format == "json" ? fd6::to_json_string(report)
                                           : fd6::to_csv(report));
    std::fprintf(stderr,
                 "unit-load minimum %.6e, max-principle excess %.6e\n",
                 load_min, excess);

    std::string why;
    if (report.sign_violations > 0)
        why = "sign violations: " + std::to_string(report.sign_violations);
    else if (report.worst_row_sum > 1e-12)
        why = "row-sum residual above 1e-12";
    else if (report.comparison_minimum < 24.0 - 1e-9)
        why = "comparison-function minimum below 24";
    else if (load_min < -1e-14)
        why = "unit-load solution dipped below -1e-14";
    else if (excess > 1e-12)
        why = "interior maximum exceeded boundary maximum";
    if (!why.empty())
        return fail(5, "verification", why);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sixth-order compact 9-point finite-difference solver for "
                 "-eps*(u_xx + u_yy) + a*u_x + b*u_y = f on the unit square "
                 "with Dirichlet boundary data"};
    app.require_subcommand(1);

    ProblemOptions opt;
    VerifyOptions vopt;

    const auto add_problem_flags = [&](CLI::App* cmd, bool with_sources) {
        cmd->add_option("--eps", opt.eps, "Diffusion coefficient eps > 0")
            ->required();
        cmd->add_option("--a", opt.a, "Convection coefficient a > 0")
            ->required();
        cmd->add_option("--b", opt.b, "Convection coefficient b > 0")
            ->required();
        if (with_sources) {
            cmd->add_option("--f", opt.f_text,
                            "Source term as an expression in x, y")
                ->required();
            cmd->add_option("--g", opt.g_text,
                            "Boundary data as an expression in x, y")
                ->required();
            cmd->add_option("--force-case", opt.force_case,
                            "Override the coefficient-case dispatch")
                ->check(CLI::IsMember({"CaseAgeB", "CaseAleB"}));
            cmd->add_flag("--allow-scaled-below-one", opt.allow_below,
                          "Demote the a/eps >= 1, b/eps >= 1 requirement "
                          "to a warning");
        }
        cmd->add_option("--tol", opt.tol,
                        "Residual tolerance in [1e-15, 1e-6]")
            ->capture_default_str();
        cmd->add_option("--method", opt.method, "Linear solver")
            ->check(CLI::IsMember({"auto", "direct", "iterative"}))
            ->capture_default_str();
        cmd->add_option("--out", opt.out,
                        "Output file (stdout when omitted)");
    };

    CLI::App* solve_cmd = app.add_subcommand(
        "solve", "Solve one problem and dump the grid function");
    add_problem_flags(solve_cmd, true);
    solve_cmd->add_option("--N", opt.mesh_text, "Grid parameter N >= 2")
        ->required();

    CLI::App* study_cmd = app.add_subcommand(
        "study",
        "Nested-grid convergence study over a doubling range of N");
    add_problem_flags(study_cmd, true);
    study_cmd
        ->add_option("--N", opt.mesh_text,
                     "Power-of-two range lo..hi, e.g. 16..256")
        ->required();
    study_cmd->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CLI::App* mms_cmd = app.add_subcommand(
        "mms", "Exact-error convergence study against a manufactured "
               "solution u");
    add_problem_flags(mms_cmd, false);
    mms_cmd->add_option("--u", opt.u_text,
                        "Manufactured solution as an expression in x, y")
        ->required();
    mms_cmd->add_option("--N", opt.mesh_text, "Single N or range lo..hi")
        ->required();
    mms_cmd->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Random structural sweep, comparison-function bound, and "
                  "maximum-principle probes");
    verify_cmd->add_option("--samples", vopt.samples, "Random draws")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify_cmd->add_option("--seed", vopt.seed, "Random seed")
        ->capture_default_str();
    verify_cmd->add_option("--out", vopt.out,
                           "Output file (stdout when omitted)");
    verify_cmd->add_option("--format", vopt.format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "config", e.what());
    }

    if (const char* threads = std::getenv("FD6_THREADS")) {
        const std::string text(threads);
        int n = 0;
        const auto [ptr, ec] =
            std::from_chars(text.data(), text.data() + text.size(), n);
        if (ec != std::errc() || ptr != text.data() + text.size() || n < 1)
            return fail(2, "config",
                        "FD6_THREADS must be a positive integer, got '" +
                            text + "'");
        Eigen::setNbThreads(n);
    }

    try {
        if (solve_cmd->parsed())
            return run_solve(opt);
        if (study_cmd->parsed())
            return run_study(opt);
        if (mms_cmd->parsed())
            return run_mms(opt);
        return run_verify(vopt);
    } catch (const fd6::ParseError& e) {
        return fail(3, "parse", e.what());
    } catch (const fd6::EvalError& e) {
        return fail(3, "parse", e.what());
    } catch (const fd6::SolverError& e) {
        return fail(4, "solver", e.what());
    } catch (const fd6::DomainError& e) {
        return fail(2, "config", e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", e.what());
    }
}
