#pragma once

#include <vector>

#include "mhdci/fields.hpp"
#include "mhdci/params.hpp"

namespace mhdci {

// Time profile of the seed family.  For any smooth g the family
//     u = g(t) U,   B = g(t) V,   p = 0,
//     R_u = g'(t) S_u,   R_b = g'(t) S_b
// solves the relaxed system exactly: the seed fields depend on x3 alone and
// have no third component, so every quadratic transport term vanishes
// identically, and div S_u = U, div S_b = V by construction.
//
// `linear` (g = t) is the reference data with closed-form observables.
// `exponential` (g = exp(t) - 1) is the same family with a nonvanishing
// third time derivative; time-convergence studies need it, because with the
// linear profile the centered-difference residual is pure round-off at every
// step size and there is no order of convergence to measure.
enum class SeedProfile { linear, exponential };

double seed_profile_value(SeedProfile kind, double t);
double seed_profile_slope(SeedProfile kind, double t);
const char* seed_profile_name(SeedProfile kind);

// A time-slab of the relaxed system at one level: equispaced time slices of
// velocity, magnetic field, pressure, and the two stresses.
struct State {
    int q = 0;
    int n = 0;
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<VectorField> u, b;
    std::vector<ScalarField> p;
    std::vector<TensorField> r_u, r_b;

    int slices() const { return static_cast<int>(u.size()); }
    double time_at(int j) const { return t0 + dt * j; }
};

// Samples the seed family on an n^3 grid.  Requires the base frequency
// sqrt(lambda_0) to be an integer (lambda_0 a perfect square) and resolvable
// on the grid, so that spatial derivatives of the seed are spectrally exact.
State initial_state(const ParamSet& params, int n, double t0, double dt,
                    int slices, SeedProfile profile = SeedProfile::linear);

// Closed-form observables of the seed family (any profile).
double seed_energy(const ParamSet& params, double t,
                   SeedProfile profile = SeedProfile::linear);
double seed_cross_helicity(const ParamSet& params, double t,
                           SeedProfile profile = SeedProfile::linear);
double seed_magnetic_helicity(const ParamSet& params, double t,
                              SeedProfile profile = SeedProfile::linear);

}  // namespace mhdci
