#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gaslab {

/// mt19937_64 with hand-rolled variate transforms: std::normal_distribution is
/// implementation-defined, and reproducibility promises byte-identical output.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    /// Uniform in (0,1): 53-bit mantissa, never exactly 0.
    double uniform01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01(), u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double c = std::cos(6.283185307179586477 * u2);
        double s = std::sin(6.283185307179586477 * u2);
        spare_ = r * s;
        have_spare_ = true;
        return r * c;
    }

    uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace gaslab
