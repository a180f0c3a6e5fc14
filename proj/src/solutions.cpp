#include "helmball/solutions.hpp"

#include "helmball/gauss_legendre.hpp"
#include "helmball/specfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace helmball {

namespace {

void check_field_dimension(int m, const char* who)
{
    if (m < 2 || m > kMaxDimension)
        throw std::domain_error(std::string(who) + ": dimension must be in [2, 16]");
}

void check_positive(double v, const char* who)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(who) + ": wavenumber must be finite and > 0");
}

std::string format_vector(const Point& p)
{
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < p.dimension(); ++i)
        os << (i ? "," : "") << p[i];
    os << ']';
    return os.str();
}

}  // namespace

const char* to_string(Equation eq)
{
    return eq == Equation::helmholtz ? "helmholtz" : "modified_helmholtz";
}

const char* to_string(FieldKind kind)
{
    switch (kind) {
    case FieldKind::plane_wave: return "plane_wave";
    case FieldKind::radial: return "radial";
    case FieldKind::membrane: return "membrane";
    case FieldKind::modified_radial: return "modified_radial";
    case FieldKind::custom: return "custom";
    }
    return "unknown";
}

SolutionField::SolutionField(int dimension, double wavenumber, Equation equation, FieldKind kind,
                             FieldParams params, Evaluator evaluate)
    : dimension_(dimension), wavenumber_(wavenumber), equation_(equation), kind_(kind),
      params_(std::move(params)), evaluate_(std::move(evaluate))
{
}

std::string SolutionField::describe() const
{
    std::ostringstream os;
    os << to_string(kind_) << '(' << (equation_ == Equation::helmholtz ? "lambda=" : "mu=") << wavenumber_;
    if (const auto* pw = std::get_if<PlaneWaveParams>(&params_))
        os << ", direction=" << format_vector(pw->direction) << ", phase=" << pw->phase;
    else if (const auto* rp = std::get_if<RadialParams>(&params_))
        os << ", center=" << format_vector(rp->center);
    else if (const auto* mp = std::get_if<MembraneParams>(&params_))
        os << ", i=" << mp->i << ", j=" << mp->j << ", a=" << mp->a;
    os << ')';
    return os.str();
}

SolutionField plane_wave(int m, double lambda, const Point& direction, double phase)
{
    check_field_dimension(m, "plane_wave");
    check_positive(lambda, "plane_wave");
    if (direction.dimension() != m)
        throw std::domain_error("plane_wave: direction dimension mismatch");
    double norm2 = 0.0;
    for (int i = 0; i < m; ++i)
        norm2 += direction[i] * direction[i];
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw std::domain_error("plane_wave: direction must be a unit vector");
    if (!std::isfinite(phase))
        throw std::domain_error("plane_wave: phase must be finite");
    return SolutionField(m, lambda, Equation::helmholtz, FieldKind::plane_wave,
                         PlaneWaveParams{direction, phase},
                         [m, lambda, direction, phase](std::span<const double> x) {
                             double s = 0.0;
                             for (int i = 0; i < m; ++i)
                                 s += direction[i] * x[i];
                             return std::cos(lambda * s + phase);
                         });
}

SolutionField radial_solution(int m, double lambda, const Point& center)
{
    check_field_dimension(m, "radial_solution");
    check_positive(lambda, "radial_solution");
    if (center.dimension() != m)
        throw std::domain_error("radial_solution: center dimension mismatch");
    return SolutionField(m, lambda, Equation::helmholtz, FieldKind::radial, RadialParams{center},
                         [m, lambda, center](std::span<const double> x) {
                             return a_norm(m - 2, lambda * distance(x, center));
                         });
}

SolutionField membrane_eigenfunction(int i, int j, double a)
{
    if (i < 1 || j < 1)
        throw std::domain_error("membrane_eigenfunction: mode indices must be >= 1");
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::domain_error("membrane_eigenfunction: side must be finite and > 0");
    const double lambda = std::numbers::pi / a * std::sqrt(static_cast<double>(i * i + j * j));
    return SolutionField(2, lambda, Equation::helmholtz, FieldKind::membrane, MembraneParams{i, j, a},
                         [i, j, a](std::span<const double> x) {
                             return sin_pi(i * x[0] / a) * sin_pi(j * x[1] / a);
                         });
}

SolutionField modified_radial_solution(int m, double mu, const Point& center)
{
    check_field_dimension(m, "modified_radial_solution");
    check_positive(mu, "modified_radial_solution");
    if (center.dimension() != m)
        throw std::domain_error("modified_radial_solution: center dimension mismatch");
    return SolutionField(m, mu, Equation::modified_helmholtz, FieldKind::modified_radial,
                         RadialParams{center}, [m, mu, center](std::span<const double> x) {
                             return b_norm(m - 2, mu * distance(x, center));
                         });
}

SolutionField custom_field(int m, double wavenumber, Equation equation, SolutionField::Evaluator evaluate)
{
    check_field_dimension(m, "custom_field");
    if (!(wavenumber >= 0.0) || !std::isfinite(wavenumber))
        throw std::domain_error("custom_field: wavenumber must be finite and >= 0");
    return SolutionField(m, wavenumber, equation, FieldKind::custom, NoParams{}, std::move(evaluate));
}

double poisson_eval(int m, double lambda, double rho)
{
    check_field_dimension(m, "poisson_eval");
    check_positive(lambda, "poisson_eval");
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw std::domain_error("poisson_eval: radius must be finite and >= 0");
    const double prefactor =
        2.0 * gamma_fn(0.5 * m) / (std::sqrt(std::numbers::pi) * gamma_fn(0.5 * (m - 1)));
    const double t = lambda * rho;

    // With s = sin(theta): int_0^{pi/2} cos^{m-2}(theta) cos(t sin(theta)) dtheta.
    auto integrate = [&](int n) {
        const GaussRule rule = gauss_legendre(n, 0.0, 0.5 * std::numbers::pi);
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const double th = rule.nodes[k];
            sum += rule.weights[k] * std::pow(std::cos(th), m - 2) * std::cos(t * std::sin(th));
        }
        return prefactor * sum;
    };

    double coarse = integrate(24);
    for (int n = 48; n <= 1536; n *= 2) {
        const double fine = integrate(n);
        if (std::abs(fine - coarse) <= 1e-13 * std::max(1.0, std::abs(fine)))
            return fine;
        coarse = fine;
    }
    throw std::runtime_error("poisson_eval: quadrature did not converge");
}

double helmholtz_residual(const SolutionField& u, const Point& x, double h)
{
    if (!(h > 0.0))
        throw std::domain_error("helmholtz_residual: step must be > 0");
    if (x.dimension() != u.dimension())
        throw std::domain_error("helmholtz_residual: point dimension mismatch");
    std::vector<double> y = x.coords();
    const double center = u(y);
    double laplacian = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double xi = y[i];
        y[i] = xi + h;
        const double plus = u(y);
        y[i] = xi - h;
        const double minus = u(y);
        y[i] = xi;
        laplacian += (plus - 2.0 * center + minus) / (h * h);
    }
    const double k2 = u.wavenumber() * u.wavenumber();
    return u.equation() == Equation::helmholtz ? laplacian + k2 * center : laplacian - k2 * center;
}

double sin_pi(double x)
{
    double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
    if (r > 0.5)
        r = 1.0 - r;
    else if (r < -0.5)
        r = -1.0 - r;
    return std::sin(std::numbers::pi * r);
}

}  // namespace helmball
