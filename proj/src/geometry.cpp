#include "helmball/geometry.hpp"

#include "helmball/specfun.hpp"
#include "sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace helmball {

struct Domain::Node {
    DomainKind kind;
    int dim;
    Box bounds;
    std::optional<double> volume;
    // ball
    Point center;
    double radius = 0.0;
    // difference / translate
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
    Point offset;
    // custom
    Indicator indicator;

    bool contains(std::span<const double> y) const
    {
        switch (kind) {
        case DomainKind::ball: {
            double s = 0.0;
            for (int i = 0; i < dim; ++i) {
                const double d = y[i] - center[i];
                s += d * d;
            }
            return s < radius * radius;
        }
        case DomainKind::box:
            for (int i = 0; i < dim; ++i)
                if (!(y[i] > bounds.low[i] && y[i] < bounds.high[i]))
                    return false;
            return true;
        case DomainKind::difference:
            return a->contains(y) && !b->contains(y);
        case DomainKind::translate: {
            std::array<double, kMaxDimension> shifted{};
            for (int i = 0; i < dim; ++i)
                shifted[i] = y[i] - offset[i];
            return a->contains(std::span<const double>(shifted.data(), dim));
        }
        case DomainKind::custom:
            for (int i = 0; i < dim; ++i)
                if (y[i] < bounds.low[i] || y[i] > bounds.high[i])
                    return false;
            return indicator(y);
        }
        return false;
    }
};

namespace {

void check_dimension(int m, const char* who)
{
    if (m < 2 || m > kMaxDimension)
        throw std::domain_error(std::string(who) + ": dimension must be in [2, 16]");
}

std::vector<double> shifted(const std::vector<double>& v, const Point& by)
{
    std::vector<double> out(v);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += by[i];
    return out;
}

std::optional<BallShape> node_as_ball(const Domain::Node& n)
{
    if (n.kind == DomainKind::ball)
        return BallShape{n.center, n.radius};
    if (n.kind == DomainKind::translate) {
        auto inner = node_as_ball(*n.a);
        if (!inner)
            return std::nullopt;
        return BallShape{Point(shifted(inner->center.coords(), n.offset)), inner->radius};
    }
    return std::nullopt;
}

std::optional<Box> node_as_box(const Domain::Node& n)
{
    if (n.kind == DomainKind::box)
        return n.bounds;
    if (n.kind == DomainKind::translate) {
        auto inner = node_as_box(*n.a);
        if (!inner)
            return std::nullopt;
        return Box{shifted(inner->low, n.offset), shifted(inner->high, n.offset)};
    }
    return std::nullopt;
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords))
{
    for (double c : coords_)
        if (!std::isfinite(c))
            throw std::domain_error("Point: coordinates must be finite");
}

double distance(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double Box::volume() const
{
    double v = 1.0;
    for (std::size_t i = 0; i < low.size(); ++i)
        v *= high[i] - low[i];
    return v;
}

const char* to_string(DomainKind kind)
{
    switch (kind) {
    case DomainKind::ball: return "ball";
    case DomainKind::box: return "box";
    case DomainKind::difference: return "difference";
    case DomainKind::translate: return "translate";
    case DomainKind::custom: return "custom";
    }
    return "unknown";
}

int Domain::dimension() const { return node_->dim; }
DomainKind Domain::kind() const { return node_->kind; }
bool Domain::contains(std::span<const double> y) const { return node_->contains(y); }
const Box& Domain::bounding_box() const { return node_->bounds; }
std::optional<double> Domain::analytic_volume() const { return node_->volume; }
std::optional<BallShape> Domain::as_ball() const { return node_as_ball(*node_); }
std::optional<Box> Domain::as_box() const { return node_as_box(*node_); }

std::optional<double> Domain::farthest_distance(std::span<const double> x0) const
{
    if (auto b = as_ball())
        return distance(b->center, x0) + b->radius;
    if (auto bx = as_box()) {
        double s = 0.0;
        for (int i = 0; i < dimension(); ++i) {
            const double d = std::max(std::abs(x0[i] - bx->low[i]), std::abs(bx->high[i] - x0[i]));
            s += d * d;
        }
        return std::sqrt(s);
    }
    return std::nullopt;
}

double unit_ball_volume(int m)
{
    check_dimension(m, "unit_ball_volume");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / (m * gamma_fn(0.5 * m));
}

Domain ball(const Point& center, double r)
{
    check_dimension(center.dimension(), "ball");
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::domain_error("ball: radius must be finite and > 0");
    auto n = std::make_shared<Domain::Node>();
    n->kind = DomainKind::ball;
    n->dim = center.dimension();
    n->center = center;
    n->radius = r;
    n->bounds = Box{shifted(std::vector<double>(n->dim, -r), center),
                    shifted(std::vector<double>(n->dim, r), center)};
    n->volume = unit_ball_volume(n->dim) * std::pow(r, n->dim);
    return Domain(std::move(n));
}

Domain box(const Point& low, const Point& high)
{
    check_dimension(low.dimension(), "box");
    if (low.dimension() != high.dimension())
        throw std::domain_error("box: corner dimensions differ");
    for (int i = 0; i < low.dimension(); ++i)
        if (!(low[i] < high[i]))
            throw std::domain_error("box: degenerate edge");
    auto n = std::make_shared<Domain::Node>();
    n->kind = DomainKind::box;
    n->dim = low.dimension();
    n->bounds = Box{low.coords(), high.coords()};
    n->volume = n->bounds.volume();
    return Domain(std::move(n));
}

Domain difference(const Domain& a, const Domain& b)
{
    if (a.dimension() != b.dimension())
        throw std::domain_error("difference: dimension mismatch");
    auto n = std::make_shared<Domain::Node>();
    n->kind = DomainKind::difference;
    n->dim = a.dimension();
    n->bounds = a.bounding_box();
    n->a = a.node_;
    n->b = b.node_;
    return Domain(std::move(n));
}

Domain translate(const Domain& of, const Point& by)
{
    if (of.dimension() != by.dimension())
        throw std::domain_error("translate: dimension mismatch");
    auto n = std::make_shared<Domain::Node>();
    n->kind = DomainKind::translate;
    n->dim = of.dimension();
    n->bounds = Box{shifted(of.bounding_box().low, by), shifted(of.bounding_box().high, by)};
    n->volume = of.analytic_volume();
    n->a = of.node_;
    n->offset = by;
    return Domain(std::move(n));
}

Domain custom_domain(int m, Indicator indicator, Box bounds, std::optional<double> analytic_volume)
{
    check_dimension(m, "custom_domain");
    if (bounds.dimension() != m || static_cast<int>(bounds.high.size()) != m)
        throw std::domain_error("custom_domain: bounding box dimension mismatch");
    for (int i = 0; i < m; ++i)
        if (!std::isfinite(bounds.low[i]) || !std::isfinite(bounds.high[i]) || !(bounds.low[i] < bounds.high[i]))
            throw std::domain_error("custom_domain: bounding box must be finite and nondegenerate");
    if (analytic_volume && !(*analytic_volume > 0.0))
        throw std::domain_error("custom_domain: volume must be > 0");
    auto n = std::make_shared<Domain::Node>();
    n->kind = DomainKind::custom;
    n->dim = m;
    n->bounds = std::move(bounds);
    n->volume = analytic_volume;
    n->indicator = std::move(indicator);
    return Domain(std::move(n));
}

Box bounding_union(const Box& a, const Box& b)
{
    Box out = a;
    for (std::size_t i = 0; i < out.low.size(); ++i) {
        out.low[i] = std::min(a.low[i], b.low[i]);
        out.high[i] = std::max(a.high[i], b.high[i]);
    }
    return out;
}

VolumeEstimate estimate_volume(const Domain& d, std::int64_t samples, std::uint64_t seed)
{
    if (samples < 2)
        throw std::domain_error("estimate_volume: need at least two samples");
    const Box& bb = d.bounding_box();
    detail::BoxSampler sampler(bb, seed);
    std::array<double, kMaxDimension> y{};
    const std::span<double> ys(y.data(), d.dimension());
    std::int64_t hits = 0;
    for (std::int64_t k = 0; k < samples; ++k) {
        sampler.next(ys);
        if (d.contains(ys))
            ++hits;
    }
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    const double vb = bb.volume();
    return VolumeEstimate{vb * p, vb * std::sqrt(p * (1.0 - p) / (n - 1.0)), samples, seed, false};
}

VolumeEstimate volume(const Domain& d, std::int64_t samples, std::uint64_t seed)
{
    if (auto v = d.analytic_volume())
        return VolumeEstimate{*v, 0.0, 0, 0, true};
    return estimate_volume(d, samples, seed);
}

double equivalent_radius(const Domain& d, std::int64_t samples, std::uint64_t seed)
{
    const double v = volume(d, samples, seed).value;
    if (!(v > 0.0))
        throw std::domain_error("equivalent_radius: domain has zero volume");
    return std::pow(v / unit_ball_volume(d.dimension()), 1.0 / d.dimension());
}

double circumradius_about(const Domain& d, const Point& x0, std::int64_t budget, std::uint64_t seed)
{
    if (x0.dimension() != d.dimension())
        throw std::domain_error("circumradius_about: dimension mismatch");
    detail::BoxSampler sampler(d.bounding_box(), seed);
    std::array<double, kMaxDimension> y{};
    const std::span<double> ys(y.data(), d.dimension());
    double best = -1.0;
    for (std::int64_t k = 0; k < budget; ++k) {
        sampler.next(ys);
        if (d.contains(ys))
            best = std::max(best, distance(ys, x0));
    }
    if (best < 0.0)
        throw std::runtime_error("circumradius_about: no inside point found within budget");
    return best;
}

EnclosingRadius enclosing_radius(const Domain& d, const Point& x0, std::int64_t budget, std::uint64_t seed)
{
    if (auto r = d.farthest_distance(x0))
        return {*r, true};
    return {circumradius_about(d, x0, budget, seed), false};
}

namespace {

double distance_to_box(std::span<const double> y, const Box& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = std::max({b.low[i] - y[i], 0.0, y[i] - b.high[i]});
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

DilatedCopy::DilatedCopy(Domain base, double r, std::uint64_t seed) : base_(std::move(base)), r_(r)
{
    if (!(r > 0.0))
        throw std::domain_error("DilatedCopy: r must be > 0");
    if (base_.as_ball() || base_.as_box())
        return;
    constexpr int kCloud = 20000;
    detail::BoxSampler sampler(base_.bounding_box(), seed);
    std::vector<double> y(base_.dimension());
    for (int k = 0; k < 50 * kCloud && static_cast<int>(cloud_.size()) < kCloud; ++k) {
        sampler.next(y);
        if (base_.contains(y))
            cloud_.emplace_back(y);
    }
}

bool DilatedCopy::contains(std::span<const double> y) const
{
    if (auto b = base_.as_ball())
        return distance(y, b->center) < b->radius + r_;
    if (auto bx = base_.as_box())
        return distance_to_box(y, *bx) < r_;
    if (base_.contains(y))
        return true;
    return std::any_of(cloud_.begin(), cloud_.end(), [&](const Point& p) { return distance(y, p) < r_; });
}

}  // namespace helmball
