#pragma once

#include <cstdint>

namespace rvol {

/// Counter-based stream (Philox4x32-10). Streams are keyed by (seed,
/// stream_index); output depends only on the key and the draw counter, so
/// results are reproducible regardless of thread scheduling.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index);

    /// Uniform on (0, 1), 53-bit resolution, never exactly 0 or 1.
    double next_uniform();

    /// Standard normal via the inverse-CDF map (one uniform per draw).
    double next_normal();

private:
    void refill();

    std::uint32_t key_[2];
    std::uint64_t counter_hi_;
    std::uint64_t counter_lo_ = 0;
    std::uint32_t buf_[4];
    int buf_pos_ = 4;
};

/// Inverse of the standard normal CDF (Wichura's AS241, double precision).
double inverse_normal_cdf(double p);

}  // namespace rvol
