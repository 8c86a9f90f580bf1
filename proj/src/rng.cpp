#include "spantree/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace spantree {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t seed_stream_state(std::uint64_t base_seed, std::uint64_t stream_index) {
    // mix64 is a bijection and index enters through an odd multiplier, so the
    // map index -> state is injective for a fixed base seed.
    std::uint64_t z = base_seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1);
    return mix64(mix64(z) ^ 0x2545f4914f6cdd1dULL);
}

Rng Rng::stream(std::uint64_t base_seed, std::uint64_t stream_index) {
    return Rng(seed_stream_state(base_seed, stream_index));
}

double Rng::next_exponential() {
    // next_double() < 1, so the argument of log stays positive.
    return -std::log(1.0 - next_double());
}

std::int64_t Rng::next_poisson(double mean) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson mean must be nonnegative");
    // Arrival-time counting: cheap and exact, adequate for the point counts
    // used here (mean up to ~1e5).
    std::int64_t n = 0;
    double acc = next_exponential();
    while (acc <= mean) {
        ++n;
        acc += next_exponential();
    }
    return n;
}

} // namespace spantree
