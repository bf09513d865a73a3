#pragma once

#include <array>
#include <vector>

#include "mhdci/fields.hpp"
#include "mhdci/spectral.hpp"
#include "mhdci/state.hpp"

namespace mhdci {

// Measured quantities: quadratic functionals, norm tables, weak-form
// residuals of the relaxed system, and the oscillation-vs-modulation
// decorrelation / inverse-gradient gain probes.  Everything here is a pure
// function of immutable State snapshots.

// ---- quadratic functionals (integral quadrature over the box) -----------
double energy(const VectorField& u, const VectorField& b);
double cross_helicity(const VectorField& u, const VectorField& b);

// Zero-mean divergence-free vector potential: a = curl (-Lap)^{-1} b.
// Requires b zero-mean and solenoidal to tolerance (checked).
VectorField vector_potential(const VectorField& b);

// integral of a . b with a the potential above.
double magnetic_helicity(const VectorField& b);

// Recomputes the helicity with the potential shifted by grad(chi) for a
// deterministic pseudo-random band-limited chi, and returns the relative
// discrepancy |H_shifted - H| / (1 + |H|).  Gauge shifts are orthogonal to
// solenoidal fields, so the value is a pure quadrature/round-off audit.
double magnetic_helicity_gauge_deviation(const VectorField& b, unsigned seed);

// ---- per-slice diagnostics ----------------------------------------------
// Norm columns use the volume-averaged L^p flavor, p in {1, 2, 3, inf};
// energy and helicities are plain integrals.  C1 surrogates are grid max of
// |f| plus max of |grad f| (spectral) plus, on interior slices, max of the
// centered time difference.
struct SliceDiagnostics {
    int j = 0;
    double t = 0.0;
    double energy = 0.0;
    double cross_helicity = 0.0;
    double magnetic_helicity = 0.0;
    std::array<double, 4> u_lp{}, b_lp{}, ru_lp{}, rb_lp{};
    double u_c1 = 0.0, b_c1 = 0.0;
    bool interior = false;     // centered first difference available
    double residual_u = 0.0;   // weak-form velocity residual (interior only)
    double residual_b = 0.0;   // weak-form magnetic residual (interior only)
    bool est_valid = false;    //five-point stencil available for the estimate
    double est_u = 0.0, est_b = 0.0;  // time-differencing error estimates
};

struct DiagnosticsReport {
    int q = 0;
    int n = 0;
    double dt = 0.0;
    std::vector<SliceDiagnostics> rows;
    double max_residual_u = 0.0, max_residual_b = 0.0;
    double max_est_u = 0.0, max_est_b = 0.0;
};

DiagnosticsReport diagnose(const State& s, ProductMode mode);

// Weak-form residuals of one interior slice j (1 <= j <= slices-2):
//   velocity: || P ( D2 u + div(u x u - b x b) - div ru ) ||_2,mean
//   magnetic: ||     D2 b + div(u x b - b x u) - div rb   ||_2,mean
// with D2 the centered time difference and P the solenoidal projection
// (which cancels the pressure gradient exactly).
double velocity_weak_residual(const State& s, int j, ProductMode mode);
double magnetic_weak_residual(const State& s, int j, ProductMode mode);

// Size estimate for the part of the residual that is pure time-differencing
// error: || P (D2 - D4) u ||_2,mean plus a small absolute floor, where D4 is
// the five-point fourth-order difference.  Valid for 2 <= j <= slices-3.
double velocity_time_error_estimate(const State& s, int j);
double magnetic_time_error_estimate(const State& s, int j);

// Index of the slice at time t (exact match required).
int slice_index_at(const State& s, double t);

// ---- helicity growth between consecutive levels -------------------------
// Rows are matched by time: for every slice of `next` lying inside the time
// window of `prev`, both helicities are computed together with the
// Cauchy-Schwarz majorant of their difference,
//   |H_next - H_prev| <= ||da||_2 ||b_next||_2 + ||a_prev||_2 ||db||_2,
// where da, db are the potential / field increments (integral flavor).
struct HelicityGrowthRow {
    double t = 0.0;
    double h_prev = 0.0, h_next = 0.0;
    double deviation = 0.0;  // |h_next - h_prev|
    double da_l2 = 0.0, b_next_l2 = 0.0, a_prev_l2 = 0.0, db_l2 = 0.0;
    double bound = 0.0;
    bool within_bound = false;
};

struct HelicityGrowthReport {
    std::vector<HelicityGrowthRow> rows;
};

HelicityGrowthReport helicity_growth_report(const State& prev, const State& next);

// ---- decorrelation of slow modulation against fast combs ----------------
// 1D probe: phi is the concentrated bump comb with `fast` spikes per period
// and concentration r, renormalized on the sample grid to zero mean and
// unit mean square; a(s) = sin(s).  The tabulated ratio is
//   rms(a phi) / (rms(a) rms(phi)),
// which tends to 1 when the comb is fine enough to sample a^2 evenly and
// degrades as `fast` approaches the modulation frequency.
struct DecorrelationRow {
    int fast = 0;
    double ratio = 0.0;
};

struct DecorrelationReport {
    double r = 0.0;
    int samples = 0;
    std::vector<DecorrelationRow> rows;
};

DecorrelationReport decorrelation_sweep(const std::vector<int>& fasts, double r,
                                        int samples);

// Exact special case: a constant modulation factors out of the rms ratio
// bitwise (the constant used is a power of two).
double decorrelation_ratio_constant(int fast, double r, int samples);

// ---- inverse-gradient gain on high-frequency products -------------------
// For f = sin(kappa x1) the field |grad|^{-1}(a f) is measured in the mean
// L2 flavor.  With a == 1 the value is ||f|| / kappa exactly; with the slow
// modulation a = sin(x1) the sweep exhibits the 1/kappa gain as a log-log
// slope near -1.
struct CommutatorGainRow {
    int kappa = 0;
    double gain = 0.0;       // || |grad|^{-1}(a f) ||_2,mean
    double reference = 0.0;  // ||f||_2,mean / kappa
    double ratio = 0.0;      // gain / reference
};

struct CommutatorGainReport {
    bool modulated = false;
    std::vector<CommutatorGainRow> rows;
    double slope = 0.0;  // least-squares slope of log2(gain) against log2(kappa)
};

CommutatorGainReport commutator_gain_sweep(int n, const std::vector<int>& kappas,
                                           bool modulated);

}  // namespace mhdci
