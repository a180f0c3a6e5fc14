#pragma once

// Exact solutions of the Helmholtz equation  lap u + lambda^2 u = 0  and the
// modified Helmholtz equation  lap u - mu^2 u = 0. Fields are entire
// functions on R^m; clipping to a region is the integrator's job.

#include "helmball/geometry.hpp"

#include <functional>
#include <span>
#include <string>
#include <variant>

namespace helmball {

enum class Equation { helmholtz, modified_helmholtz };
enum class FieldKind { plane_wave, radial, membrane, modified_radial, custom };

const char* to_string(Equation eq);
const char* to_string(FieldKind kind);

struct PlaneWaveParams {
    Point direction;
    double phase;
};
struct RadialParams {
    Point center;
};
struct MembraneParams {
    int i;
    int j;
    double a;
};
struct NoParams {};

using FieldParams = std::variant<NoParams, PlaneWaveParams, RadialParams, MembraneParams>;

class SolutionField {
public:
    using Evaluator = std::function<double(std::span<const double>)>;

    SolutionField(int dimension, double wavenumber, Equation equation, FieldKind kind,
                  FieldParams params, Evaluator evaluate);

    int dimension() const { return dimension_; }
    /// lambda for the Helmholtz equation, mu for the modified one.
    double wavenumber() const { return wavenumber_; }
    Equation equation() const { return equation_; }
    FieldKind kind() const { return kind_; }
    const FieldParams& params() const { return params_; }

    double operator()(std::span<const double> x) const { return evaluate_(x); }

    /// Short human-readable description, e.g. "radial(lambda=1, center=[0,0])".
    std::string describe() const;

private:
    int dimension_;
    double wavenumber_;
    Equation equation_;
    FieldKind kind_;
    FieldParams params_;
    Evaluator evaluate_;
};

/// cos(lambda <direction, x> + phase).
SolutionField plane_wave(int m, double lambda, const Point& direction, double phase);

/// U(x) = a_{m-2}(lambda |x - center|). Equal to 1 at the centre and
/// decreasing while lambda |x - center| < j_{m/2,1}.
SolutionField radial_solution(int m, double lambda, const Point& center);

/// sin(i pi x1 / a) sin(j pi x2 / a) on R^2 with lambda = (pi / a) sqrt(i^2 + j^2).
SolutionField membrane_eigenfunction(int i, int j, double a);

/// b_{m-2}(mu |x - center|); positive and increasing in |x - center|.
SolutionField modified_radial_solution(int m, double mu, const Point& center);

/// Arbitrary field tagged with an equation. Not checked to be a solution.
SolutionField custom_field(int m, double wavenumber, Equation equation,
                           SolutionField::Evaluator evaluate);

/// U at radius rho through the Poisson integral
///   2 Gamma(m/2) / (sqrt(pi) Gamma((m-1)/2)) int_0^1 (1 - s^2)^{(m-3)/2} cos(lambda rho s) ds,
/// evaluated after s = sin(theta) so the m = 2 endpoint singularity disappears.
double poisson_eval(int m, double lambda, double rho);

/// Central-difference Laplacian plus (Helmholtz) or minus (modified)
/// wavenumber^2 u(x). O(h^2) for exact solutions.
double helmholtz_residual(const SolutionField& u, const Point& x, double h = 1e-4);

/// sin(pi x), exactly zero at integers.
double sin_pi(double x);

}  // namespace helmball
