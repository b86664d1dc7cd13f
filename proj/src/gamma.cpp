#include "cyclurn/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cyclurn {

namespace {

// Lanczos coefficients for g = 607/128 (Godfrey's 15-term set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

cd log_gamma_positive(cd z) {
    // Valid for Re(z) >= 0.5.
    const cd zm1 = z - 1.0;
    cd a = kLanczos[0];
    for (int k = 1; k < 15; ++k) {
        a += kLanczos[k] / (zm1 + static_cast<double>(k));
    }
    const cd t = zm1 + (kLanczosG + 0.5);
    return kLogSqrt2Pi + std::log(a) + (zm1 + 0.5) * std::log(t) - t;
}

} // namespace

cd log_gamma(cd z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
        throw std::invalid_argument("log_gamma: pole at non-positive integer");
    }
    if (z.real() >= 0.5) {
        return log_gamma_positive(z);
    }
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    const double pi = 3.14159265358979323846;
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma_positive(1.0 - z);
}

cd gamma_fn(cd z) { return std::exp(log_gamma(z)); }

cd cpow(double x, cd e) {
    if (x == 0.0) {
        if (e.real() > 0.0) return {0.0, 0.0};
        throw std::invalid_argument("cpow: 0 base requires Re(e) > 0");
    }
    if (x < 0.0) {
        throw std::invalid_argument("cpow: negative base");
    }
    return std::exp(e * std::log(x));
}

cd gamma_ratio(cd a, cd b) { return std::exp(log_gamma(a) - log_gamma(b)); }

} // namespace cyclurn
