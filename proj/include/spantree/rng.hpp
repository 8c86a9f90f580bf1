#pragma once

#include <cstdint>
#include <vector>

namespace spantree {

/**
 * Counter-based splittable random stream.
 *
 * Streams are keyed by (base_seed, stream_index): the initial state is a
 * bijective hash of the pair, so distinct indices can never collide and any
 * sample's stream can be reconstructed in isolation.  Sequential output is
 * the splitmix64 generator.
 */
class Rng {
  public:
    Rng() : state_(0) {}
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng stream(std::uint64_t base_seed, std::uint64_t stream_index);

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1}; n must be positive.
    std::uint32_t next_below(std::uint32_t n) {
        // Lemire's multiply-shift with rejection of the biased range.
        std::uint64_t x = next_u64() >> 32;
        std::uint64_t m = x * n;
        std::uint32_t lo = static_cast<std::uint32_t>(m);
        if (lo < n) {
            std::uint32_t t = (0u - n) % n;
            while (lo < t) {
                x = next_u64() >> 32;
                m = x * n;
                lo = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    double next_exponential(); // mean 1
    std::int64_t next_poisson(double mean);

  private:
    std::uint64_t state_;
};

// Initial state for (base_seed, index); exposed for the frozen test vectors.
std::uint64_t seed_stream_state(std::uint64_t base_seed, std::uint64_t stream_index);

} // namespace spantree
