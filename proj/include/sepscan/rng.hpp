#pragma once

#include <cstdint>
#include <random>

namespace sepscan {

/// Random stream keyed by (seed, stream).  The engine is std::mt19937_64
/// seeded through std::seed_seq, both fully specified by the standard; the
/// uniform and normal transforms are written out here instead of using the
/// implementation-defined std:: distributions so sequences do not depend on
/// the standard library vendor.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform on (0, 1].
    double uniform_positive() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
    /// Standard normal (Box-Muller, second variate cached).
    double normal();
    double exponential();
    /// Gamma(k, 1) for a positive integer shape k.
    double gamma_integer(int k);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sepscan
