#pragma once

// Implicit bounded regions of R^m: balls, boxes, set differences and
// translates, plus volumes, equivalent radii and enclosing radii.
//
// Membership is decided for the open set; points on the boundary may be
// classified either way since every integral here ignores measure-zero sets.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace helmball {

inline constexpr int kMaxDimension = 16;

/// A point of R^m with finite coordinates.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

    static Point origin(int m) { return Point(std::vector<double>(static_cast<std::size_t>(m), 0.0)); }

    int dimension() const { return static_cast<int>(coords_.size()); }
    double operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<double>& coords() const { return coords_; }
    operator std::span<const double>() const { return coords_; }

private:
    std::vector<double> coords_;
};

double distance(std::span<const double> a, std::span<const double> b);

/// Axis-aligned box [low, high].
struct Box {
    std::vector<double> low;
    std::vector<double> high;

    int dimension() const { return static_cast<int>(low.size()); }
    double volume() const;
};

struct BallShape {
    Point center;
    double radius;
};

enum class DomainKind { ball, box, difference, translate, custom };

const char* to_string(DomainKind kind);

using Indicator = std::function<bool(std::span<const double>)>;

/// Immutable implicit region. Cheap to copy; copies share structure.
class Domain {
public:
    int dimension() const;
    DomainKind kind() const;
    bool contains(std::span<const double> y) const;
    const Box& bounding_box() const;
    std::optional<double> analytic_volume() const;

    /// The region as a ball, when it is one (a ball or a translated ball).
    std::optional<BallShape> as_ball() const;
    /// The region as a box, when it is one (a box or a translated box).
    std::optional<Box> as_box() const;

    /// sup |y - x0| over the closure, when it has a closed form.
    std::optional<double> farthest_distance(std::span<const double> x0) const;

    struct Node;

private:
    explicit Domain(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;

    friend Domain ball(const Point&, double);
    friend Domain box(const Point&, const Point&);
    friend Domain difference(const Domain&, const Domain&);
    friend Domain translate(const Domain&, const Point&);
    friend Domain custom_domain(int, Indicator, Box, std::optional<double>);
};

/// Volume of the unit ball in R^m, 2 pi^{m/2} / (m Gamma(m/2)).
double unit_ball_volume(int m);

Domain ball(const Point& center, double r);
Domain box(const Point& low, const Point& high);
/// Points of `a` that are not in `b`.
Domain difference(const Domain& a, const Domain& b);
Domain translate(const Domain& of, const Point& by);
/// Caller guarantees the indicator is false outside `bounds`.
Domain custom_domain(int m, Indicator indicator, Box bounds,
                     std::optional<double> analytic_volume = std::nullopt);

/// Smallest box containing both bounding boxes.
Box bounding_union(const Box& a, const Box& b);

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;  // zero for analytic volumes
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    bool analytic = false;
};

inline constexpr std::int64_t kDefaultVolumeSamples = 2'000'000;
inline constexpr std::uint64_t kDefaultSeed = 20240607;

/// Seeded Monte Carlo volume over the bounding box.
VolumeEstimate estimate_volume(const Domain& d, std::int64_t samples = kDefaultVolumeSamples,
                               std::uint64_t seed = kDefaultSeed);

/// Analytic volume when known, Monte Carlo otherwise.
VolumeEstimate volume(const Domain& d, std::int64_t samples = kDefaultVolumeSamples,
                      std::uint64_t seed = kDefaultSeed);

/// r with |B_r| = |D|.
double equivalent_radius(const Domain& d, std::int64_t samples = kDefaultVolumeSamples,
                         std::uint64_t seed = kDefaultSeed);

/// sup of |y - x0| over sampled inside points: a lower bound on the true
/// enclosing radius that never decreases as the budget grows.
double circumradius_about(const Domain& d, const Point& x0, std::int64_t budget,
                          std::uint64_t seed = kDefaultSeed);

/// Exact enclosing radius for balls and boxes, sampled otherwise.
struct EnclosingRadius {
    double value;
    bool exact;
};
EnclosingRadius enclosing_radius(const Domain& d, const Point& x0, std::int64_t budget,
                                 std::uint64_t seed = kDefaultSeed);

/// D_r: D together with every ball of radius r centred on its boundary.
class DilatedCopy {
public:
    DilatedCopy(Domain base, double r, std::uint64_t seed = kDefaultSeed);

    const Domain& base() const { return base_; }
    double r() const { return r_; }

    /// Exact for balls and boxes; for other regions the distance to the base
    /// is taken against a seeded cloud of inside points.
    bool contains(std::span<const double> y) const;

private:
    Domain base_;
    double r_;
    std::vector<Point> cloud_;
};

}  // namespace helmball
