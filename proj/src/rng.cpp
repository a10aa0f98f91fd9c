#include "roughvol/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rvol {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    constexpr std::uint64_t M0 = 0xD2511F53ULL;
    constexpr std::uint64_t M1 = 0xCD9E8D57ULL;
    const std::uint64_t p0 = M0 * ctr[0];
    const std::uint64_t p1 = M1 * ctr[2];
    const std::uint32_t out0 = static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
    const std::uint32_t out2 = static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
    ctr[1] = static_cast<std::uint32_t>(p1);
    ctr[3] = static_cast<std::uint32_t>(p0);
    ctr[0] = out0;
    ctr[2] = out2;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t st = seed;
    const std::uint64_t k = splitmix64(st);
    key_[0] = static_cast<std::uint32_t>(k);
    key_[1] = static_cast<std::uint32_t>(k >> 32);
    counter_hi_ = stream_index;
}

void RngStream::refill() {
    std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(counter_lo_),
        static_cast<std::uint32_t>(counter_lo_ >> 32),
        static_cast<std::uint32_t>(counter_hi_),
        static_cast<std::uint32_t>(counter_hi_ >> 32),
    };
    std::uint32_t key[2] = {key_[0], key_[1]};
    constexpr std::uint32_t W0 = 0x9E3779B9U;
    constexpr std::uint32_t W1 = 0xBB67AE85U;
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += W0;
        key[1] += W1;
    }
    buf_[0] = ctr[0];
    buf_[1] = ctr[1];
    buf_[2] = ctr[2];
    buf_[3] = ctr[3];
    buf_pos_ = 0;
    ++counter_lo_;
}

double RngStream::next_uniform() {
    if (buf_pos_ > 2) refill();
    const std::uint64_t hi = buf_[buf_pos_];
    const std::uint64_t lo = buf_[buf_pos_ + 1];
    buf_pos_ += 2;
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;  // 53 bits
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() { return inverse_normal_cdf(next_uniform()); }

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p must be in (0,1)");
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        const double num =
            q * (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                      6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                    1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                  1.3314166789178437745e2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                  3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
              4.2313330701600911252e1) * r + 1.0);
        return num / den;
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        val = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        val = num / den;
    }
    return (q < 0.0) ? -val : val;
}

}  // namespace rvol
