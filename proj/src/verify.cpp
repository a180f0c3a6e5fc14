#include "helmball/verify.hpp"

#include "helmball/specfun.hpp"
#include "sampling.hpp"
#include "summation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

namespace helmball {

namespace {

void add_quadrature_diagnostics(VerificationReport& rep, const MeanValueEstimate& est)
{
    rep.diagnostics["method"] = std::string(to_string(est.method));
    if (est.method == QuadratureMethod::monte_carlo)
        rep.diagnostics["samples"] = est.samples_or_nodes;
    else
        rep.diagnostics["nodes"] = est.samples_or_nodes;
    if (est.seed)
        rep.diagnostics["seed"] = static_cast<std::int64_t>(*est.seed);
    if (!est.note.empty())
        rep.diagnostics["note"] = est.note;
}

void finish(VerificationReport& rep)
{
    rep.residual = rep.lhs - rep.rhs;
    rep.verdict = derive_verdict(rep.residual, rep.tolerance, rep.error_bar);
}

Verdict combine(const std::vector<VerificationReport>& reports)
{
    bool inconclusive = false;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::fail)
            return Verdict::fail;
        inconclusive = inconclusive || r.verdict == Verdict::inconclusive;
    }
    return inconclusive ? Verdict::inconclusive : Verdict::pass;
}

void require_helmholtz(const SolutionField& u, const char* who)
{
    if (u.equation() != Equation::helmholtz)
        throw std::domain_error(std::string(who) + ": field must solve the Helmholtz equation");
}

}  // namespace

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::consistent_with_ball: return "consistent with D = B_r(x0)";
    case Outcome::not_a_ball: return "not a ball";
    case Outcome::outside_theorem_scope: return "outside theorem scope";
    case Outcome::inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict derive_verdict(double residual, double tolerance, double error_bar)
{
    if (!std::isfinite(residual) || std::abs(residual) > tolerance + error_bar)
        return Verdict::fail;
    if (error_bar > tolerance)
        return Verdict::inconclusive;
    return Verdict::pass;
}

CharacterizationProblem make_problem(const Domain& d, double lambda, const Point& x0,
                                     std::int64_t volume_samples, std::uint64_t seed)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::domain_error("make_problem: lambda must be finite and > 0");
    if (x0.dimension() != d.dimension())
        throw std::domain_error("make_problem: x0 dimension mismatch");
    const int m = d.dimension();
    const VolumeEstimate vol = volume(d, volume_samples, seed);
    if (!(vol.value > 0.0))
        throw std::domain_error("make_problem: domain has zero volume");
    const double r = std::pow(vol.value / unit_ball_volume(m), 1.0 / m);
    const double r0 = bessel_zero(BesselOrder::half(m), 1) / lambda;
    return CharacterizationProblem{d, lambda, x0, r, r0, vol};
}

VerificationReport check_mean_value_formula(const SolutionField& u, const Point& x, double r,
                                            const QuadratureOptions& opts, double tolerance)
{
    require_helmholtz(u, "check_mean_value_formula");
    const int m = u.dimension();
    if (x.dimension() != m)
        throw std::domain_error("check_mean_value_formula: point dimension mismatch");
    const MeanValueEstimate est = ball_mean(u, x, r, opts.radial_nodes, opts.angular_resolution, opts);

    VerificationReport rep;
    rep.name = "mean_value_formula";
    rep.lhs = a_norm(m, u.wavenumber() * r) * u(x);
    rep.rhs = est.value;
    rep.tolerance = tolerance;
    rep.error_bar = est.abs_error_estimate;
    finish(rep);
    rep.diagnostics["field"] = u.describe();
    rep.diagnostics["r"] = r;
    rep.diagnostics["lambda_r"] = u.wavenumber() * r;
    add_quadrature_diagnostics(rep, est);
    return rep;
}

VerificationReport check_identity(const SolutionField& u, const CharacterizationProblem& p,
                                  const QuadratureOptions& opts, double tolerance)
{
    require_helmholtz(u, "check_identity");
    const int m = p.domain.dimension();
    if (u.dimension() != m)
        throw std::domain_error("check_identity: field dimension mismatch");
    if (std::abs(u.wavenumber() - p.lambda) > 1e-12 * p.lambda)
        throw std::domain_error("check_identity: field wavenumber differs from problem lambda");
    const MeanValueEstimate est = domain_mean(u, p.domain, opts);

    VerificationReport rep;
    rep.name = "identity";
    rep.lhs = u(p.x0) * a_norm(m, p.lambda * p.r);
    rep.rhs = est.value;
    rep.tolerance = tolerance;
    rep.error_bar = est.abs_error_estimate;
    finish(rep);
    rep.diagnostics["field"] = u.describe();
    rep.diagnostics["r"] = p.r;
    rep.diagnostics["domain"] = std::string(to_string(p.domain.kind()));
    rep.diagnostics["topology"] = std::string("assumed: complement of D connected");
    add_quadrature_diagnostics(rep, est);
    return rep;
}

VerificationReport check_size_condition(const CharacterizationProblem& p, std::int64_t budget, std::uint64_t seed)
{
    const EnclosingRadius enc = enclosing_radius(p.domain, p.x0, budget, seed);
    const int m = p.domain.dimension();

    VerificationReport rep;
    rep.name = "size_condition";
    rep.lhs = p.lambda * enc.value;
    rep.rhs = p.lambda * p.r0;
    rep.residual = rep.lhs - rep.rhs;
    rep.verdict = rep.residual <= 0.0 ? Verdict::pass : Verdict::fail;
    rep.diagnostics["enclosing_radius"] = enc.value;
    rep.diagnostics["enclosing_radius_exact"] = enc.exact;
    rep.diagnostics["r0"] = p.r0;
    rep.diagnostics["bessel_order"] = 0.5 * m;
    if (!enc.exact) {
        rep.diagnostics["budget"] = budget;
        rep.diagnostics["seed"] = static_cast<std::int64_t>(seed);
    }
    return rep;
}

std::vector<SolutionField> default_family(int m, double lambda, const Point& x0, int random_waves, std::uint64_t seed)
{
    std::vector<SolutionField> family;
    auto centred = [&](const Point& dir, double phase) {
        double s = 0.0;
        for (int i = 0; i < m; ++i)
            s += dir[i] * x0[i];
        return plane_wave(m, lambda, dir, phase - lambda * s);
    };
    for (int i = 0; i < m; ++i) {
        std::vector<double> e(m, 0.0);
        e[i] = 1.0;
        family.push_back(centred(Point(e), 0.0));
        family.push_back(centred(Point(e), 0.5 * std::numbers::pi));
    }
    std::mt19937_64 gen(seed);
    auto unit = [&] { return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53; };
    for (int k = 0; k < random_waves; ++k) {
        std::vector<double> dir(m);
        double norm2 = 0.0;
        for (int i = 0; i < m; ++i) {
            // Box-Muller normal deviates give a uniform direction.
            dir[i] = std::sqrt(-2.0 * std::log(unit())) * std::cos(2.0 * std::numbers::pi * unit());
            norm2 += dir[i] * dir[i];
        }
        for (double& c : dir)
            c /= std::sqrt(norm2);
        family.push_back(centred(Point(dir), 2.0 * std::numbers::pi * unit()));
    }
    return family;
}

Characterization characterize(const CharacterizationProblem& p, const std::vector<SolutionField>& family,
                              double tolerance, const QuadratureOptions& opts, std::int64_t budget)
{
    for (const auto& u : family)
        if (std::abs(u.wavenumber() - p.lambda) > 1e-12 * p.lambda)
            throw std::domain_error("characterize: family member has a different wavenumber");

    const int m = p.domain.dimension();
    std::vector<SolutionField> members;
    members.push_back(radial_solution(m, p.lambda, p.x0));
    members.insert(members.end(), family.begin(), family.end());

    VerificationReport rep;
    rep.name = "characterize";
    std::optional<std::string> witness;
    bool any_inconclusive = false;
    double worst = 0.0;
    for (std::size_t k = 0; k < members.size(); ++k) {
        VerificationReport child = check_identity(members[k], p, opts, tolerance);
        char label[32];
        std::snprintf(label, sizeof label, "identity[%02zu]", k);
        child.name = label;
        if (child.verdict == Verdict::fail && !witness)
            witness = members[k].describe();
        any_inconclusive = any_inconclusive || child.verdict == Verdict::inconclusive;
        if (std::abs(child.residual) > std::abs(worst)) {
            worst = child.residual;
            rep.lhs = child.lhs;
            rep.rhs = child.rhs;
            rep.error_bar = child.error_bar;
        }
        rep.children.push_back(std::move(child));
    }
    VerificationReport size = check_size_condition(p, budget, opts.seed);
    const bool size_holds = size.verdict == Verdict::pass;
    rep.children.push_back(std::move(size));

    Outcome outcome;
    if (!size_holds)
        outcome = Outcome::outside_theorem_scope;
    else if (witness)
        outcome = Outcome::not_a_ball;
    else if (any_inconclusive)
        outcome = Outcome::inconclusive;
    else
        outcome = Outcome::consistent_with_ball;

    rep.residual = rep.lhs - rep.rhs;
    rep.tolerance = tolerance;
    switch (outcome) {
    case Outcome::consistent_with_ball: rep.verdict = Verdict::pass; break;
    case Outcome::not_a_ball: rep.verdict = Verdict::fail; break;
    default: rep.verdict = Verdict::inconclusive; break;
    }
    rep.diagnostics["outcome"] = std::string(to_string(outcome));
    rep.diagnostics["family_size"] = static_cast<std::int64_t>(members.size());
    rep.diagnostics["r"] = p.r;
    rep.diagnostics["r0"] = p.r0;
    rep.diagnostics["lambda"] = p.lambda;
    rep.diagnostics["topology"] = std::string("assumed: complement of D connected");
    if (witness)
        rep.diagnostics["witness"] = *witness;
    return Characterization{std::move(rep), outcome, witness};
}

VerificationReport proof_discrepancy(const CharacterizationProblem& p, std::int64_t samples, std::uint64_t seed,
                                     Kernel kernel)
{
    if (samples < 2)
        throw std::domain_error("proof_discrepancy: need at least two samples");
    const int m = p.domain.dimension();
    const Domain b = ball(p.x0, p.r);
    const Domain g_inner = difference(p.domain, b);
    const Domain g_outer = difference(b, p.domain);
    const SolutionField u = kernel == Kernel::oscillatory ? radial_solution(m, p.lambda, p.x0)
                                                          : modified_radial_solution(m, p.lambda, p.x0);

    const Box region = bounding_union(p.domain.bounding_box(), b.bounding_box());
    const double vol = region.volume();
    detail::BoxSampler sampler(region, seed);
    std::array<double, kMaxDimension> y{};
    const std::span<double> ys(y.data(), m);

    // Per-sample signed contributions; one pass gives both integrals and the
    // variance of their difference.
    detail::NeumaierSum s_in, s_out, s_diff, s_diff2, s_vol, s_vol2, n_in, n_out;
    for (std::int64_t k = 0; k < samples; ++k) {
        sampler.next(ys);
        const bool in_d = p.domain.contains(ys);
        const bool in_b = b.contains(ys);
        if (in_d == in_b)
            continue;
        const double v = u(ys);
        if (in_d) {
            s_in.add(v);
            n_in.add(1.0);
            s_diff.add(v);
            s_vol.add(1.0);
        } else {
            s_out.add(v);
            n_out.add(1.0);
            s_diff.add(-v);
            s_vol.add(-1.0);
        }
        s_diff2.add(v * v);
        s_vol2.add(1.0);
    }
    const double n = static_cast<double>(samples);
    auto three_sigma = [&](double sum, double sum_sq) {
        const double mean = sum / n;
        const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1.0));
        return 3.0 * vol * std::sqrt(var / n);
    };

    VerificationReport rep;
    rep.name = kernel == Kernel::oscillatory ? "proof_discrepancy" : "proof_discrepancy_monotone";
    rep.lhs = vol * s_in.value() / n;
    rep.rhs = vol * s_out.value() / n;
    rep.residual = vol * s_diff.value() / n;
    rep.error_bar = three_sigma(s_diff.value(), s_diff2.value());
    rep.tolerance = 0.0;
    const double predicted_sign = kernel == Kernel::oscillatory ? -1.0 : 1.0;
    if (predicted_sign * rep.residual > rep.error_bar)
        rep.verdict = Verdict::pass;
    else if (-predicted_sign * rep.residual > rep.error_bar)
        rep.verdict = Verdict::fail;
    else
        rep.verdict = Verdict::inconclusive;

    const double vol_diff = vol * s_vol.value() / n;
    const double vol_diff_err = three_sigma(s_vol.value(), s_vol2.value());
    rep.diagnostics["kernel"] = std::string(kernel == Kernel::oscillatory ? "a" : "b");
    rep.diagnostics["volume_inner"] = vol * n_in.value() / n;
    rep.diagnostics["volume_outer"] = vol * n_out.value() / n;
    rep.diagnostics["volume_difference"] = vol_diff;
    rep.diagnostics["volume_difference_error_bar"] = vol_diff_err;
    rep.diagnostics["volumes_match"] = std::abs(vol_diff) <= vol_diff_err;
    rep.diagnostics["method"] = std::string("monte_carlo");
    rep.diagnostics["samples"] = samples;
    rep.diagnostics["seed"] = static_cast<std::int64_t>(seed);
    rep.diagnostics["r"] = p.r;
    rep.diagnostics["r0"] = p.r0;
    if (auto far = p.domain.farthest_distance(p.x0))
        rep.diagnostics["size_condition_holds"] = *far <= p.r0;
    return rep;
}

VerificationReport membrane_counterexample(double a, const QuadratureOptions& opts)
{
    const SolutionField u21 = membrane_eigenfunction(2, 1, a);
    const SolutionField u12 = membrane_eigenfunction(1, 2, a);
    const Domain square = box(Point{0.0, 0.0}, Point{a, a});
    const Point centre{0.5 * a, 0.5 * a};
    const CharacterizationProblem p = make_problem(square, u21.wavenumber(), centre);

    VerificationReport rep;
    rep.name = "membrane_counterexample";

    auto exact_zero = [](std::string name, double value, double tol) {
        VerificationReport r;
        r.name = std::move(name);
        r.lhs = value;
        r.tolerance = tol;
        finish(r);
        return r;
    };
    rep.children.push_back(exact_zero("membrane.u21_at_centre", u21(centre), 0.0));
    rep.children.push_back(exact_zero("membrane.u12_at_centre", u12(centre), 0.0));

    for (const auto* u : {&u21, &u12}) {
        const MeanValueEstimate est = box_mean(*u, Point{0.0, 0.0}, Point{a, a}, opts.box_nodes);
        VerificationReport r = exact_zero(u == &u21 ? "membrane.u21_mean" : "membrane.u12_mean", est.value, 1e-12);
        add_quadrature_diagnostics(r, est);
        rep.children.push_back(std::move(r));
    }
    for (const auto* u : {&u21, &u12}) {
        VerificationReport r = check_identity(*u, p, opts, 1e-12);
        r.name = u == &u21 ? "membrane.identity_u21" : "membrane.identity_u12";
        rep.children.push_back(std::move(r));
    }

    VerificationReport size = check_size_condition(p);
    size.name = "membrane.size_condition";
    const double lambda_r0 = size.lhs;
    const double j11 = size.rhs;
    const bool size_fails = size.verdict == Verdict::fail;
    rep.children.push_back(std::move(size));

    // The square is not a ball: the radial solution about the centre exposes it.
    VerificationReport radial = check_identity(radial_solution(2, p.lambda, centre), p, opts);
    radial.name = "membrane.identity_radial";
    const bool radial_fails = radial.verdict == Verdict::fail;
    rep.children.push_back(std::move(radial));

    bool identities_hold = true;
    for (std::size_t k = 0; k < 6; ++k)
        identities_hold = identities_hold && rep.children[k].verdict == Verdict::pass;

    rep.lhs = lambda_r0;
    rep.rhs = j11;
    rep.residual = lambda_r0 - j11;
    rep.verdict = identities_hold && size_fails && radial_fails ? Verdict::pass : Verdict::fail;
    rep.diagnostics["a"] = a;
    rep.diagnostics["lambda_21"] = p.lambda;
    rep.diagnostics["lambda_r0"] = lambda_r0;
    rep.diagnostics["j_1_1"] = j11;
    rep.diagnostics["gap"] = lambda_r0 - j11;
    rep.diagnostics["identities_hold"] = identities_hold;
    rep.diagnostics["size_condition_fails"] = size_fails;
    rep.diagnostics["not_a_ball"] = radial_fails;
    rep.diagnostics["outcome"] = std::string(to_string(Outcome::outside_theorem_scope));
    return rep;
}

VerificationReport kuran_limit_check(const Domain& d, const Point& x0, const std::vector<double>& lambdas,
                                     const QuadratureOptions& opts)
{
    if (lambdas.empty())
        throw std::domain_error("kuran_limit_check: need at least one lambda");
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (!(lambdas[k] > 0.0))
            throw std::domain_error("kuran_limit_check: lambdas must be > 0");
        if (k > 0 && !(lambdas[k] < lambdas[k - 1]))
            throw std::domain_error("kuran_limit_check: lambdas must be strictly decreasing");
    }
    const int m = d.dimension();
    const double r = equivalent_radius(d, opts.samples, opts.seed);
    const double coefficient = 1.0 / (2.0 * (m + 2));

    // Harmonic residuals: h = 1 gives exactly 0; h = x_1 - x0_1 gives -M(h, D).
    auto shifted_x1 = [&](std::span<const double> y) { return y[0] - x0[0]; };
    const MeanValueEstimate h_mean = domain_mean(shifted_x1, d, opts);
    const double harmonic_residual = -h_mean.value;

    VerificationReport rep;
    rep.name = "kuran_limit";
    double ratio = 0.0;
    double cos_residual = 0.0;
    double cos_error = 0.0;
    double sine_scaled = 0.0;
    double sine_error = 0.0;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const double lambda = lambdas[k];
        const double t = lambda * r;
        ratio = (a_norm(m, t) - 1.0) / (-coefficient * t * t);

        auto cos_wave = [&](std::span<const double> y) { return std::cos(lambda * (y[0] - x0[0])); };
        const MeanValueEstimate cm = domain_mean(cos_wave, d, opts);
        cos_residual = a_norm(m, t) - cm.value;
        cos_error = cm.abs_error_estimate;

        auto sine_wave = [&](std::span<const double> y) { return std::sin(lambda * (y[0] - x0[0])); };
        const MeanValueEstimate sm = domain_mean(sine_wave, d, opts);
        sine_scaled = -sm.value / lambda;
        // Error of the combination, evaluated on the same nodes or samples.
        auto gap = [&](std::span<const double> y) {
            const double h = y[0] - x0[0];
            return std::sin(lambda * h) / lambda - h;
        };
        sine_error = domain_mean(gap, d, opts).abs_error_estimate;

        const std::string key = "lambda[" + std::to_string(k) + "]";
        rep.diagnostics[key] = lambda;
        rep.diagnostics[key + ".kernel_ratio"] = ratio;
        rep.diagnostics[key + ".cosine_residual"] = cos_residual;
        rep.diagnostics[key + ".sine_residual_over_lambda"] = sine_scaled;
    }
    const double lambda_min = lambdas.back();

    VerificationReport rate;
    rate.name = "kuran.kernel_rate";
    rate.lhs = ratio;
    rate.rhs = 1.0;
    rate.tolerance = 1e-3;
    finish(rate);
    rate.diagnostics["t"] = lambda_min * r;
    rate.diagnostics["coefficient"] = coefficient;

    VerificationReport cosine;
    cosine.name = "kuran.cosine_limit";
    cosine.lhs = cos_residual;
    cosine.rhs = 0.0;
    cosine.tolerance = 1e-7;
    cosine.error_bar = cos_error;
    finish(cosine);

    VerificationReport sine;
    sine.name = "kuran.sine_limit";
    sine.lhs = sine_scaled;
    sine.rhs = harmonic_residual;
    sine.tolerance = 1e-6;
    sine.error_bar = sine_error;
    finish(sine);
    add_quadrature_diagnostics(sine, h_mean);

    rep.lhs = cosine.lhs;
    rep.rhs = cosine.rhs;
    rep.residual = cosine.residual;
    rep.tolerance = cosine.tolerance;
    rep.error_bar = cosine.error_bar;
    rep.children = {rate, cosine, sine};
    rep.verdict = combine(rep.children);
    rep.diagnostics["r"] = r;
    rep.diagnostics["harmonic_residual_x1"] = harmonic_residual;
    return rep;
}

VerificationReport flux_identity_check(const SolutionField& u, const Point& center, double r,
                                       const QuadratureOptions& opts, double relative_tolerance)
{
    const int m = u.dimension();
    if (m != 2 && m != 3)
        throw std::logic_error("flux_identity_check: only m = 2 and m = 3 are implemented");
    if (!(u.wavenumber() > 0.0))
        throw std::domain_error("flux_identity_check: wavenumber must be > 0");
    const MeanValueEstimate est = ball_mean(u, center, r, opts.radial_nodes, opts.angular_resolution, opts);
    const FluxEstimate flux = surface_flux(u, center, r, opts.angular_resolution);
    const double vol = unit_ball_volume(m) * std::pow(r, m);
    const double k2 = u.wavenumber() * u.wavenumber();
    const double sign = u.equation() == Equation::helmholtz ? -1.0 : 1.0;

    VerificationReport rep;
    rep.name = "flux_identity";
    rep.lhs = vol * est.value;
    rep.rhs = sign * flux.value / k2;
    rep.tolerance = relative_tolerance * std::max(std::abs(rep.lhs), std::abs(rep.rhs));
    rep.error_bar = vol * est.abs_error_estimate + flux.abs_error_estimate / k2;
    finish(rep);
    const double scale = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
    rep.diagnostics["relative_residual"] = scale > 0.0 ? std::abs(rep.residual) / scale : 0.0;
    rep.diagnostics["relative_tolerance"] = relative_tolerance;
    rep.diagnostics["flux"] = flux.value;
    rep.diagnostics["flux_nodes"] = static_cast<std::int64_t>(flux.nodes);
    rep.diagnostics["field"] = u.describe();
    add_quadrature_diagnostics(rep, est);
    return rep;
}

VerificationReport theorem1_identity_check(double mu, const Point& x0, double r, const QuadratureOptions& opts,
                                           double tolerance)
{
    const int m = x0.dimension();
    const SolutionField u = modified_radial_solution(m, mu, x0);
    const MeanValueEstimate est = ball_mean(u, x0, r, opts.radial_nodes, opts.angular_resolution, opts);

    VerificationReport rep;
    rep.name = "theorem1_identity";
    rep.lhs = b_norm(m, mu * r);
    rep.rhs = est.value;
    rep.tolerance = tolerance;
    rep.error_bar = est.abs_error_estimate;
    finish(rep);

    constexpr int kGrid = 10000;
    bool increasing = true;
    double prev = b_norm(m, 0.0);
    for (int k = 1; k <= kGrid && increasing; ++k) {
        const double value = b_norm(m, 10.0 * k / kGrid);
        increasing = value > prev;
        prev = value;
    }
    if (!increasing)
        rep.verdict = Verdict::fail;
    rep.diagnostics["b_norm_increasing"] = increasing;
    rep.diagnostics["grid_points"] = static_cast<std::int64_t>(kGrid + 1);
    rep.diagnostics["mu_r"] = mu * r;
    add_quadrature_diagnostics(rep, est);
    return rep;
}

}  // namespace helmball
