#pragma once

#include <cstdint>
#include <random>

namespace deltavar {

/// Seeded random stream with portable double generation: doubles are built
/// from the high 53 bits of the engine output, so a seed reproduces the same
/// stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    /// -1 or +1.
    double sign() { return (next_u64() & 1) ? 1.0 : -1.0; }

private:
    std::mt19937_64 eng_;
};

} // namespace deltavar
