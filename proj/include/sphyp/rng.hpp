#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "sphyp/sphere.hpp"

namespace sphyp {

/// Seeded generator whose output is identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

    /// Uniform on the sphere; the chance of hitting infinity exactly is nil.
    SpherePoint sphere_point() {
        const double c = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, kTwoPi);
        return SpherePoint::finite(std::polar(std::sqrt((1.0 - c) / (1.0 + c)), phi));
    }

    /// Uniform in the closed disk of the given radius.
    Complex disk_point(double radius) {
        return std::polar(radius * std::sqrt(uniform()), uniform(0.0, kTwoPi));
    }

private:
    std::mt19937_64 engine_;
};

/// FNV-1a of the tag, mixed into the seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace sphyp
