#include "helmball/cli.hpp"

#include "helmball/io.hpp"
#include "helmball/specfun.hpp"
#include "helmball/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace helmball::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<int> m;
    std::optional<double> lambda;
    std::optional<double> mu;
    std::optional<double> r;
    std::string x0;
    std::string domain;
    std::vector<std::string> solutions;
    std::uint64_t seed = kDefaultSeed;
    std::int64_t samples = 2'000'000;
    int nodes = 64;
    std::optional<double> tol;
    std::string format;
    std::string out_path;

    // specfun / sweep / membrane / kuran / discrepancy
    std::string function;
    std::optional<double> nu;
    std::optional<double> t;
    double t_min = 0.0;
    double t_max = 10.0;
    int points = 101;
    int count = 1;
    double a = 1.0;
    std::vector<double> lambdas{1.0, 0.1, 0.01, 0.001};
    std::string kernel = "a";
    int random_waves = 8;
    std::int64_t budget = kDefaultBudget;
};

std::string read_spec_text(const std::string& arg)
{
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{')
        return arg;
    std::ifstream in(arg);
    if (!in)
        throw UsageError("cannot read \"" + arg + "\" as JSON text or file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

nlohmann::json parse_json(const std::string& arg)
{
    try {
        return nlohmann::json::parse(read_spec_text(arg));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("invalid JSON: ") + e.what());
    }
}

Point parse_point(const std::string& text)
{
    std::string s = text;
    std::replace(s.begin(), s.end(), '[', ' ');
    std::replace(s.begin(), s.end(), ']', ' ');
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream is(s);
    std::vector<double> v;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError("bad coordinate \"" + tok + "\" in --x0");
        }
    }
    if (v.empty())
        throw UsageError("--x0 needs at least one coordinate");
    try {
        return Point(std::move(v));
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

Domain require_domain(const RunConfig& c)
{
    if (c.domain.empty())
        throw UsageError("--domain is required");
    return domain_from_json(parse_json(c.domain));
}

SolutionField require_solution(const RunConfig& c)
{
    if (c.solutions.size() != 1)
        throw UsageError("exactly one --solution is required");
    return solution_from_json(parse_json(c.solutions.front()));
}

Point x0_or_origin(const RunConfig& c, int m)
{
    if (c.x0.empty())
        return Point::origin(m);
    Point p = parse_point(c.x0);
    if (p.dimension() != m)
        throw UsageError("--x0 dimension does not match the problem dimension");
    return p;
}

double require(const std::optional<double>& v, const char* flag)
{
    if (!v)
        throw UsageError(std::string(flag) + " is required");
    return *v;
}

QuadratureOptions quadrature_options(const RunConfig& c)
{
    QuadratureOptions q;
    q.radial_nodes = c.nodes;
    q.angular_resolution = c.nodes;
    q.box_nodes = std::max(2, c.nodes / 2);
    q.samples = c.samples;
    q.seed = c.seed;
    return q;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out)
{
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out_path);
    if (!f)
        throw UsageError("cannot open --out path \"" + c.out_path + "\"");
    f << text;
}

int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::pass: return kExitPass;
    case Verdict::fail: return kExitFail;
    case Verdict::inconclusive: return kExitInconclusive;
    }
    return kExitInconclusive;
}

int emit_report(const RunConfig& c, VerificationReport report, std::ostream& out)
{
    report.diagnostics["cli.seed"] = static_cast<std::int64_t>(c.seed);
    report.diagnostics["cli.samples"] = c.samples;
    report.diagnostics["cli.nodes"] = static_cast<std::int64_t>(c.nodes);
    if (c.format == "csv")
        emit(c, reports_to_csv({report}), out);
    else
        emit(c, report_to_json(report).dump(2) + "\n", out);
    return exit_code(report.verdict);
}

std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows)
{
    std::ostringstream os;
    for (std::size_t k = 0; k < header.size(); ++k)
        os << (k ? "," : "") << header[k];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k)
            os << (k ? "," : "") << format_double(row[k]);
        os << '\n';
    }
    return os.str();
}

std::string table_json(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json o;
        for (std::size_t k = 0; k < header.size(); ++k)
            o[header[k]] = row[k];
        arr.push_back(o);
    }
    return arr.dump(2) + "\n";
}

int emit_table(const RunConfig& c, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows, std::ostream& out)
{
    emit(c, c.format == "json" ? table_json(header, rows) : table_csv(header, rows), out);
    return kExitPass;
}

std::vector<double> t_grid(const RunConfig& c)
{
    if (c.t)
        return {*c.t};
    if (c.points < 1 || !(c.t_max >= c.t_min))
        throw UsageError("grid needs --points >= 1 and --t-max >= --t-min");
    std::vector<double> ts;
    for (int k = 0; k < c.points; ++k)
        ts.push_back(c.points == 1 ? c.t_min : c.t_min + (c.t_max - c.t_min) * k / (c.points - 1));
    return ts;
}

int cmd_specfun(const RunConfig& c, std::ostream& out)
{
    if (c.function == "zeros") {
        const double nu = require(c.nu, "--nu");
        if (c.count < 1)
            throw UsageError("--count must be >= 1");
        std::vector<std::vector<double>> rows;
        for (int n = 1; n <= c.count; ++n)
            rows.push_back({static_cast<double>(n), bessel_zero(BesselOrder(nu), n)});
        return emit_table(c, {"n", "value"}, rows, out);
    }
    std::function<double(double)> fn;
    if (c.function == "a" || c.function == "b") {
        if (!c.m)
            throw UsageError("--m is required");
        const int m = *c.m;
        fn = c.function == "a" ? std::function<double(double)>([m](double t) { return a_norm(m, t); })
                               : std::function<double(double)>([m](double t) { return b_norm(m, t); });
    } else if (c.function == "j" || c.function == "i") {
        const BesselOrder order(require(c.nu, "--nu"));
        fn = c.function == "j" ? std::function<double(double)>([order](double t) { return bessel_j(order, t); })
                               : std::function<double(double)>([order](double t) { return bessel_i(order, t); });
    } else {
        throw UsageError("specfun: function must be one of a, b, j, i, zeros");
    }
    std::vector<std::vector<double>> rows;
    for (double t : t_grid(c))
        rows.push_back({t, fn(t)});
    return emit_table(c, {"t", "value"}, rows, out);
}

int cmd_sweep(const RunConfig& c, std::ostream& out)
{
    const int m = c.m.value_or(2);
    std::vector<std::vector<double>> rows;
    for (double t : t_grid(c))
        rows.push_back({t, a_norm(m, t), b_norm(m, t)});
    return emit_table(c, {"t", "a", "b"}, rows, out);
}

int cmd_mean_value(const RunConfig& c, std::ostream& out)
{
    const SolutionField u = require_solution(c);
    const Point x = x0_or_origin(c, u.dimension());
    const double r = require(c.r, "--r");
    return emit_report(c, check_mean_value_formula(u, x, r, quadrature_options(c), c.tol.value_or(kSpectralTolerance)),
                       out);
}

int cmd_identity(const RunConfig& c, std::ostream& out)
{
    const Domain d = require_domain(c);
    const SolutionField u = require_solution(c);
    const Point x0 = x0_or_origin(c, d.dimension());
    const CharacterizationProblem p = make_problem(d, u.wavenumber(), x0, c.samples, c.seed);
    return emit_report(c, check_identity(u, p, quadrature_options(c), c.tol.value_or(kSpectralTolerance)), out);
}

int cmd_characterize(const RunConfig& c, std::ostream& out)
{
    const Domain d = require_domain(c);
    const int m = d.dimension();
    const Point x0 = x0_or_origin(c, m);
    std::vector<SolutionField> family;
    for (const auto& s : c.solutions)
        family.push_back(solution_from_json(parse_json(s)));
    double lambda;
    if (c.lambda)
        lambda = *c.lambda;
    else if (!family.empty())
        lambda = family.front().wavenumber();
    else
        throw UsageError("--lambda is required when no --solution is given");
    if (family.empty())
        family = default_family(m, lambda, x0, c.random_waves, c.seed);
    const CharacterizationProblem p = make_problem(d, lambda, x0, c.samples, c.seed);
    Characterization ch =
        characterize(p, family, c.tol.value_or(kSpectralTolerance), quadrature_options(c), c.budget);
    if (ch.witness && c.format != "json")
        ch.report.name += " (witness: " + *ch.witness + ")";
    return emit_report(c, std::move(ch.report), out);
}

int cmd_discrepancy(const RunConfig& c, std::ostream& out)
{
    const Domain d = require_domain(c);
    const Point x0 = x0_or_origin(c, d.dimension());
    const double lambda = require(c.lambda, "--lambda");
    if (c.kernel != "a" && c.kernel != "b")
        throw UsageError("--kernel must be a or b");
    const CharacterizationProblem p = make_problem(d, lambda, x0, c.samples, c.seed);
    return emit_report(
        c, proof_discrepancy(p, c.samples, c.seed, c.kernel == "a" ? Kernel::oscillatory : Kernel::monotone), out);
}

int cmd_membrane(const RunConfig& c, std::ostream& out)
{
    return emit_report(c, membrane_counterexample(c.a, quadrature_options(c)), out);
}

int cmd_flux(const RunConfig& c, std::ostream& out)
{
    const SolutionField u = require_solution(c);
    const Point center = x0_or_origin(c, u.dimension());
    const double r = require(c.r, "--r");
    return emit_report(c, flux_identity_check(u, center, r, quadrature_options(c), c.tol.value_or(1e-5)), out);
}

int cmd_kuran(const RunConfig& c, std::ostream& out)
{
    const Domain d = require_domain(c);
    const Point x0 = x0_or_origin(c, d.dimension());
    return emit_report(c, kuran_limit_check(d, x0, c.lambdas, quadrature_options(c)), out);
}

int cmd_theorem1(const RunConfig& c, std::ostream& out)
{
    const int m = c.m.value_or(c.x0.empty() ? 3 : parse_point(c.x0).dimension());
    const Point x0 = x0_or_origin(c, m);
    return emit_report(c,
                       theorem1_identity_check(require(c.mu, "--mu"), x0, require(c.r, "--r"), quadrature_options(c),
                                               c.tol.value_or(kSpectralTolerance)),
                       out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mean-value identities for Helmholtz solutions and ball characterization checks", "helmball"};
    app.require_subcommand(1);
    RunConfig c;

    auto positive = CLI::PositiveNumber;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--m", c.m, "Dimension (or kernel index for specfun)")->check(CLI::Range(0, kMaxDimension));
        sub->add_option("--lambda", c.lambda, "Helmholtz wavenumber")->check(positive);
        sub->add_option("--mu", c.mu, "Modified Helmholtz wavenumber")->check(positive);
        sub->add_option("--r", c.r, "Ball radius")->check(positive);
        sub->add_option("--x0", c.x0, "Point, e.g. 0.5,0.5");
        sub->add_option("--domain", c.domain, "Domain JSON text or file");
        sub->add_option("--solution", c.solutions, "Solution JSON text or file");
        sub->add_option("--seed", c.seed, "Random seed");
        sub->add_option("--samples", c.samples, "Monte Carlo samples")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
        sub->add_option("--nodes", c.nodes, "Quadrature resolution")->check(CLI::Range(2, 4096));
        sub->add_option("--tol", c.tol, "Tolerance")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", c.out_path, "Write output to this path");
    };

    std::vector<std::pair<CLI::App*, std::function<int(const RunConfig&, std::ostream&)>>> commands;

    auto* specfun = app.add_subcommand("specfun", "Tabulate a_m, b_m, J_nu, I_nu or zeros of J_nu");
    specfun->add_option("function", c.function, "a | b | j | i | zeros")->required();
    specfun->add_option("--nu", c.nu, "Bessel order")->check(CLI::NonNegativeNumber);
    specfun->add_option("--t", c.t, "Single argument")->check(CLI::NonNegativeNumber);
    specfun->add_option("--t-min", c.t_min, "Grid start")->check(CLI::NonNegativeNumber);
    specfun->add_option("--t-max", c.t_max, "Grid end")->check(CLI::NonNegativeNumber);
    specfun->add_option("--points", c.points, "Grid points");
    specfun->add_option("--count", c.count, "Number of zeros");
    commands.emplace_back(specfun, cmd_specfun);

    auto* sweep = app.add_subcommand("sweep", "CSV of a_m(t) and b_m(t) over a grid");
    sweep->add_option("--t-min", c.t_min, "Grid start")->check(CLI::NonNegativeNumber);
    sweep->add_option("--t-max", c.t_max, "Grid end")->check(CLI::NonNegativeNumber);
    sweep->add_option("--points", c.points, "Grid points");
    commands.emplace_back(sweep, cmd_sweep);

    commands.emplace_back(app.add_subcommand("mean-value", "Ball mean-value formula"), cmd_mean_value);
    commands.emplace_back(app.add_subcommand("identity", "Mean-value identity over a domain"), cmd_identity);
    auto* charz = app.add_subcommand("characterize", "Ball characterization test");
    charz->add_option("--random-waves", c.random_waves, "Random plane waves in the default family")
        ->check(CLI::Range(0, 1000));
    charz->add_option("--budget", c.budget, "Samples for the enclosing radius")
        ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
    commands.emplace_back(charz, cmd_characterize);
    auto* disc = app.add_subcommand("discrepancy", "Signed integral of U over D minus B_r(x0)");
    disc->add_option("--kernel", c.kernel, "a (Helmholtz) or b (modified)");
    commands.emplace_back(disc, cmd_discrepancy);
    auto* membrane = app.add_subcommand("membrane", "Square membrane counterexample");
    membrane->add_option("--a", c.a, "Side length")->check(positive);
    commands.emplace_back(membrane, cmd_membrane);
    commands.emplace_back(app.add_subcommand("flux", "Volume integral against boundary flux"), cmd_flux);
    auto* kuran = app.add_subcommand("kuran", "lambda -> 0 limit");
    kuran->add_option("--lambdas", c.lambdas, "Decreasing sequence of wavenumbers")->delimiter(',');
    commands.emplace_back(kuran, cmd_kuran);
    commands.emplace_back(app.add_subcommand("theorem1", "Modified Helmholtz ball identity"), cmd_theorem1);

    for (auto& [sub, fn] : commands)
        add_common(sub);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    for (auto& [sub, fn] : commands) {
        if (!sub->parsed())
            continue;
        if (c.format.empty())
            c.format = (sub == specfun || sub == sweep) ? "csv" : "json";
        try {
            return fn(c, out);
        } catch (const UsageError& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const SpecError& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::domain_error& e) {
            err << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitInconclusive;
        }
    }
    return kExitUsage;
}

}  // namespace helmball::cli
