#pragma once

#include <array>
#include <string>

#include "mhdci/math3.hpp"

namespace mhdci {

// Orthonormal direction frames used by the oscillatory blocks.  Each frame
// is a triple (k, k1, k2): k is the direction of fast oscillation, k1 the
// polarization of the shear, k2 the complementary direction.  All entries
// are rationals with denominators 1, 5 or 13, so direction_scale() * v is
// an integer vector for every frame vector v; that integrality is what
// makes the rescaled blocks periodic on the torus.
struct Frame {
    Vec3 k;
    Vec3 k1;
    Vec3 k2;

    std::array<long, 3> scaled(int N, int which) const;  // integer N*v, which in {0,1,2}
};

// Five frames driving the magnetic (current-sheet) blocks.
const std::array<Frame, 5>& magnetic_frames();
// Six frames driving the velocity (shear) blocks.
const std::array<Frame, 6>& velocity_frames();

// Minimal positive integer N such that N*k, N*k1, N*k2 are integer vectors
// for every frame of both families (the lcm of the denominators 5 and 13).
int direction_scale();  // == 65

// ---- reconstruction weights --------------------------------------------
// Magnetic side: for a skew matrix A in the closed Frobenius ball of radius
// epsilon_b() the squared weights satisfy
//     sum_k gamma_b^2(A)_k * (k1 x k2 wedge) == A          (exactly)
// and stay bounded away from zero.  The map is affine in A.
std::array<double, 5> gamma_b_squared(const Mat3& skew_a);

// Velocity side: for a symmetric matrix S with |S - Id|_F <= epsilon_u()
//     sum_k gamma_u^2(S)_k * k1 (x) k1 == S                (exactly)
// with all weights positive.  Affine in S; the linear part is the inverse
// of the 6x6 dyad Gram matrix, computed once.
std::array<double, 6> gamma_u_squared(const Mat3& sym_s);

// Exact sums of the weighted frame dyads (used to verify reconstruction).
Mat3 reconstruct_skew(const std::array<double, 5>& g2);
Mat3 reconstruct_sym(const std::array<double, 6>& g2);

// Ball radii within which the weight floors below are guaranteed.
double epsilon_b();  // 1.0
double epsilon_u();  // derived from the functional norms of the affine map

// Guaranteed lower bounds for the squared weights on those balls.
double gamma_b_floor();  // 1 - 1/sqrt(2)
double gamma_u_floor();  // 1e-3 by construction of epsilon_u

// Sum over all directions of sup |gamma| + sup |D gamma| on the respective
// balls (the C^1 budget of the weight functions, exact from the affine
// structure).  Used in reports.
double weight_c1_budget();

// Human-readable table of frames, integrality, and weight statistics.
std::string geometry_report();

}  // namespace mhdci
