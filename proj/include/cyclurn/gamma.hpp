#pragma once

#include <complex>

namespace cyclurn {

using cd = std::complex<double>;

// Principal-branch log-gamma on C minus the poles {0, -1, -2, ...}.
// Lanczos approximation (g = 607/128, 15 terms) with reflection for
// Re(z) < 0.5. Relative accuracy is ~1e-14 on the arguments used here;
// the imaginary part may differ from the principal branch by multiples
// of 2*pi, which is irrelevant once exponentiated.
cd log_gamma(cd z);

cd gamma_fn(cd z);

// exp(e * log(x)) for x > 0; x = 0 maps to 0 when Re(e) > 0.
cd cpow(double x, cd e);

// Gamma(a) / Gamma(b) evaluated in log space.
cd gamma_ratio(cd a, cd b);

} // namespace cyclurn
