#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace rydopt {

// All stochastic code in the project draws through this wrapper so that
// results are bit-reproducible across platforms: mt19937_64 is fully
// specified by the standard, and the variate transforms below avoid the
// implementation-defined std:: distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53 bits of mantissa.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return v / (UINT64_MAX / n);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller; the spare draw is cached.
    double normal(double mu, double sigma) {
        if (has_spare_) {
            has_spare_ = false;
            return mu + sigma * spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return mu + sigma * r * std::cos(theta);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Named substreams: every component derives its own seed from the root seed
// plus a stable path of tags/indices, so runs are reproducible end to end no
// matter how work is scheduled.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = splitmix64(root);
    for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p));
    return s;
}

namespace stream {
inline constexpr std::uint64_t graph_gen = 0x67726170;
inline constexpr std::uint64_t layout = 0x6c61796f;
inline constexpr std::uint64_t optimizer = 0x6f707469;
inline constexpr std::uint64_t sampler = 0x73616d70;
inline constexpr std::uint64_t noise = 0x6e6f6973;
}  // namespace stream

}  // namespace rydopt
