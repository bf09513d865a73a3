#pragma once

#include <string>
#include <vector>

#include "mhdci/blocks.hpp"
#include "mhdci/fields.hpp"
#include "mhdci/params.hpp"
#include "mhdci/spectral.hpp"
#include "mhdci/state.hpp"

namespace mhdci {

// Space-time mollified view of a state, recast so that it again solves the
// relaxed system with compound stresses.  The compound stresses absorb the
// quadratic commutators:
//     r_u_l = moll(r_u) + (u_l (x) u_l - b_l (x) b_l)° - moll(u (x) u - b (x) b)°
//     r_b_l = moll(r_b) + (u_l (x) b_l - b_l (x) u_l) - moll(u (x) b - b (x) u)
//     p_l   = moll(p) - tr(u_l (x) u_l - b_l (x) b_l)/3 + tr moll(u (x) u - b (x) b)/3
// (X° is the traceless part).  With these choices the centered-difference
// residual of the mollified state equals the mollified residual of the input
// state exactly, because every operator involved is a discrete convolution.
//
// Entry i corresponds to input slice offset + i; offset equals the time
// kernel halfwidth.
struct MollifiedState {
    int n = 0;
    double ell = 0.0;
    int halfwidth = 0;
    int offset = 0;
    bool degenerate_time_kernel = false;
    std::vector<VectorField> u, b;
    std::vector<ScalarField> p;
    std::vector<TensorField> r_u, r_b;

    int slices() const { return static_cast<int>(u.size()); }
};

MollifiedState mollify_state(const State& s, double ell,
                             ProductMode mode = ProductMode::pointwise);

// One reported inequality: measured value against its target budget.
// Budgets at desk parameters are wildly infeasible by design; rows are
// reported, not asserted.
struct MarginRow {
    std::string name;
    double value = 0.0;
    double budget = 0.0;
    bool satisfied = false;
};

struct StepConfig {
    ParamSet params;
    ProductMode products = ProductMode::pointwise;
    bool keep_details = false;  // retain per-slice internals (tests only)
};

// Per-slice internals, retained on request for verification.
struct StepDetail {
    double t = 0.0;
    VectorField w, d, w_p, d_p;
    TensorField s_low, a_low;
    ScalarField rho_u, rho_b;
};

struct StepReport {
    int q_from = 0, q_to = 1;
    int n = 0;
    double dt = 0.0, t0_out = 0.0;
    int slices_in = 0, slices_out = 0;

    RegimeReport regime;
    ResolutionCheck resolution;
    double ell = 0.0, r = 0.0;
    long long r_lambda = 0;
    int mollifier_halfwidth = 0;
    bool time_mollifier_degenerate = false;

    // Structural audits, maxima over output slices.
    double max_div_u = 0.0, max_div_b = 0.0;     // sup of spectral divergence
    double max_mean_u = 0.0, max_mean_b = 0.0;   // |grid mean| before removal
    double pre_sym_defect_ru = 0.0;              // asymmetry before projection
    double pre_trace_ru = 0.0;                   // trace before projection
    double pre_skew_defect_rb = 0.0;             // symmetry before projection
    double post_sym_defect_ru = 0.0;             // all-zero after projection
    double post_trace_ru = 0.0;
    double post_skew_defect_rb = 0.0;

    // Zero-mode oscillation audit: grid mean of the direction-weight
    // reconstruction defect (exact cancellation up to round-off).
    double zero_mode_audit_u = 0.0;
    double zero_mode_audit_b = 0.0;

    // max over slices of ||lap p - div div(-u(x)u + b(x)b + r_u)|| / (1+||rhs||).
    double pressure_poisson_residual = 0.0;

    // Cutoff saturation: largest normalized stress magnitude fed to chi.
    double chi_max_arg_u = 0.0, chi_max_arg_b = 0.0;

    // Perturbation sizes (volume-averaged L2 / sup).
    double w_l2 = 0.0, d_l2 = 0.0, w_sup = 0.0, d_sup = 0.0;

    std::vector<MarginRow> margins;
};

struct StepResult {
    State next;
    StepReport report;
    std::vector<StepDetail> details;  // empty unless cfg.keep_details
};

// Performs one convex-integration step q -> q+1.  The input slab must carry
// halfwidth + 2 extra slices on each side: mollification consumes halfwidth
// per side and the fourth-order time stencil of the amplitude ring consumes
// two more.  The output slab keeps the input spacing with t0 shifted by
// (halfwidth + 2) dt.
StepResult perform_step(const State& s, const StepConfig& cfg);

// Extra input slices needed on each side of the target window at level q.
int step_time_padding(const ParamSet& params, int q, double dt);

}  // namespace mhdci
