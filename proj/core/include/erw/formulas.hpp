#pragma once

#include <string>

#include "erw/memory_spec.hpp"
#include "erw/params.hpp"

namespace erw::analytic {

// A closed-form value from the catalog. `exact` results match the oracle to
// accumulation accuracy at every supported n; asymptotic results carry only
// the printed leading terms (slope, or slope plus offset) and are meant to be
// compared at large n.
struct FormulaResult {
    double value = 0.0;
    bool exact = false;
    std::string law;
};

// E(T_n) for a fixed start prefix, E(S_n) for a random start. Throws
// NoFormulaError when the (model, condition) pair has no catalog entry (the
// caller falls back to the exact oracle) and std::invalid_argument when the
// parameters are outside the catalog's domain (it requires 0 < p < 1).
FormulaResult mean_formula(const MemorySpec& spec, const WalkParams& params, long n);

// Var(T_n) / Var(S_n), same conventions. Random-start variances of the
// drifting models grow like n^2; the returned value is the leading term at n.
FormulaResult variance_formula(const MemorySpec& spec, const WalkParams& params, long n);

// Variance slopes of the centered CLT statistics (exposed because several
// criteria pin them directly).
double sigma2_last2(double p);          // lim Var(T_n)/n for last:2
double sigma2_first1_last1(double p);   // lim Var(T_n)/n for first:1+last:1
double sigma2_first2_last1(double p);   // lim Var(T_n)/n, equal-start first:2+last:1
double sigma2_first2_last1_mixed(double p);  // mixed-start slope (1+p)/(2-p)

}  // namespace erw::analytic
