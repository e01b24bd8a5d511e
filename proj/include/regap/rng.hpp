#pragma once

#include <cmath>
#include <cstdint>

namespace regap {

// Seed for one expensive evaluation. Same (master_seed, stream_id) always
// expands to the same draws.
struct EvalSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
};

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Pure seed mixer used everywhere a derived stream is needed.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master;
    std::uint64_t a = detail::splitmix64_next(s);
    s ^= stream + 0x9e3779b97f4a7c15ULL;
    std::uint64_t b = detail::splitmix64_next(s);
    return a ^ (b + 0x2545f4914f6cdd1dULL);
}

inline std::uint64_t fnv1a64(const char* text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char* p = text; *p != '\0'; ++p) {
        h ^= static_cast<unsigned char>(*p);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Small deterministic generator (splitmix64 core). Self-contained so output
// is identical across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ^ 0x6a09e667f3bcc909ULL) {
        // warm up so nearby seeds decorrelate
        detail::splitmix64_next(state_);
    }
    explicit Rng(EvalSeed seed) : Rng(mix_seed(seed.master_seed, seed.stream_id)) {}

    std::uint64_t next_u64() { return detail::splitmix64_next(state_); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t uniform_int(std::uint64_t n) { return next_u64() % n; }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller; two fresh uniforms per call, no state carried over.
    double normal(double mean, double sd) {
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::uint64_t state_;
};

}  // namespace regap
