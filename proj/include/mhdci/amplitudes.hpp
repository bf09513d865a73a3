#pragma once

#include <array>

#include "mhdci/fields.hpp"

namespace mhdci {

// Regularized magnitude cutoff.  chi is C^2, nondecreasing, equal to 1 on
// [0, 1] and to z on [2, inf), with a quintic Hermite blend in between.
// The properties the construction needs hold for every z >= 0:
//     chi(z) >= 1,   chi(z) >= z/2,   chi(z) <= 1 + z.
// The middle one makes the rescaled stress argument land inside the
// direction-weight balls automatically.
double chi(double z);
double chi_prime(double z);

// Amplitude fields of one step, built pointwise from the mollified
// stresses.  With rho_b = 2 delta eps_b^-1 c_b chi(|Rb|_F / (c_b delta)):
//     a_{b,k} = rho_b^(1/2) gamma_b_k(-Rb / rho_b),
// and the analogous velocity version with the magnetic flux correction
//     G_b = sum_k a_{b,k}^2 (k1 (x) k1 - k2 (x) k2)
// folded into the argument: a_{u,k} = rho_u^(1/2) gamma_u_k(Id - (Ru + G_b)/rho_u).
//
// Exact pointwise identities (up to round-off, for any admissible input):
//     sum_k a_{b,k}^2 (k1 (x) k2 - k2 (x) k1) == -Rb
//     sum_k a_{u,k}^2 (k1 (x) k1)             == rho_u Id - Ru - G_b
struct AmplitudeBundle {
    int n = 0;
    ScalarField rho_b;
    std::array<ScalarField, 5> a_b;
    TensorField g_b;
    ScalarField rho_u;
    std::array<ScalarField, 6> a_u;
};

AmplitudeBundle build_amplitudes(const TensorField& r_u, const TensorField& r_b,
                                 double delta, double c_u, double c_b);

}  // namespace mhdci
