#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mhdci {

// Free parameters of the iteration.  The frequency ladder is
// lambda_q = a^(b^q) and the amplitude ladder delta_q = lambda_q^(-2 beta).
// Auxiliary scales per step q -> q+1:
//   ell      = lambda_{q+1}^(-eta)   (mollification length),
//   r        = lambda_{q+1}^(-3/4)   (block concentration),
//   r_lambda = r * lambda_{q+1} = lambda_{q+1}^(1/4)  (block periodicity
//              count; must be a positive integer, hence 4 | b).
struct ParamSet {
    double a = 16.0;
    long long b = 4;
    double beta = 0.09;
    double eta = 0.9;
    double c_u = 1.0;  // velocity stress smallness constant
    double c_b = 1.0;  // magnetic stress smallness constant
};

struct ScaleSet {
    int q = 0;
    double log_lambda_q = 0.0;   // natural log of lambda_q
    double log_lambda_q1 = 0.0;  // natural log of lambda_{q+1}
    double lambda_q = 0.0;       // may overflow to inf for large q; logs stay finite
    double lambda_q1 = 0.0;
    bool lambda_q_in_u64 = false;
    bool lambda_q1_in_u64 = false;
    std::uint64_t lambda_q_int = 0;
    std::uint64_t lambda_q1_int = 0;
    double delta_q = 0.0;   // lambda_q^(-2 beta)
    double delta_q1 = 0.0;  // lambda_{q+1}^(-2 beta)
    double delta_q2 = 0.0;  // lambda_{q+2}^(-2 beta)
    double ell = 0.0;
    double r = 0.0;
    double r_lambda = 0.0;
    bool r_lambda_integral = false;  // true when a, b are integers and 4 | b
    std::uint64_t r_lambda_int = 0;  // valid when it also fits in 64 bits
    bool r_lambda_in_u64 = false;
};

ScaleSet derive_scales(const ParamSet& p, int q);

// One admissibility condition with the two sides that were compared.  For
// conditions checked in log space, lhs/rhs carry the exponents.
struct RegimeCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    bool hard = false;  // violation invalidates the construction outright
    std::string note;
};

struct RegimeReport {
    int q = 0;
    std::vector<RegimeCheck> checks;
    bool hard_ok = true;  // all hard checks satisfied
    bool all_ok = true;   // every check satisfied
};

// Admissibility of the step q -> q+1 under parameters p.  Hard checks are
// structural (integrality, representability); soft checks are the
// asymptotic smallness conditions, which genuinely fail at desk scale and
// are reported with margins instead of aborting unless strict mode is on.
RegimeReport validate_regime(const ParamSet& p, int q);

std::string format_regime_report(const RegimeReport& r);

}  // namespace mhdci
