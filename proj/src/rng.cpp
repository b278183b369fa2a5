#include "sepscan/rng.hpp"

#include <cmath>
#include <numbers>

namespace sepscan {

namespace {
std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x5e95ca9u};
    return std::mt19937_64(seq);
}
}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) : engine_(make_engine(seed, stream)) {}

double StreamRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_positive()));
    const double angle = 2.0 * std::numbers::pi * uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

double StreamRng::exponential() { return -std::log(uniform_positive()); }

double StreamRng::gamma_integer(int k) {
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += exponential();
    return sum;
}

}  // namespace sepscan
