#pragma once

namespace erw::analytic {

// Martingale normalizer for the full-memory walk:
//   a_n = Gamma(n) * Gamma(2p) / Gamma(n + 2p - 1),
// evaluated in the log-gamma domain so it neither overflows nor loses
// accuracy at large n; a_n ~ Gamma(2p) * n^{1-2p}. Requires 0 < p < 1, n >= 1.
double gamma_scaling(long n, double p);

// log a_n, same domain requirements.
double log_gamma_scaling(long n, double p);

}  // namespace erw::analytic
