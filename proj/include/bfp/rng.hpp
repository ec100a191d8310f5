#pragma once

#include <cstdint>

namespace bfp {

// splitmix64; chosen over std::mt19937 + distributions because the
// double stream must be identical across platforms and standard
// library versions for byte-reproducible reports.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

  private:
    std::uint64_t state_;
};

// Per-batch sub-seed so batched sampling is deterministic regardless of
// how batches are scheduled.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    Rng r(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
    return r.next_u64();
}

}  // namespace bfp
