#pragma once

#include "helmball/geometry.hpp"

#include <cstdint>
#include <random>
#include <span>

namespace helmball::detail {

// Uniform points in a box from an explicitly seeded mt19937_64. The
// 53-bit conversion is done by hand so streams do not depend on the
// standard library's distribution implementation.
class BoxSampler {
public:
    BoxSampler(const Box& box, std::uint64_t seed) : box_(box), gen_(seed) {}

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    void next(std::span<double> out)
    {
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = box_.low[i] + (box_.high[i] - box_.low[i]) * unit();
    }

private:
    Box box_;
    std::mt19937_64 gen_;
};

}  // namespace helmball::detail
