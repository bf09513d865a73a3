#pragma once

namespace mhdci {

// 1D concentration profile of the oscillatory blocks.
//
// Let psi(x) = exp(-1/(1-x^2)) on (-1,1), extended by zero.  The shear
// profile is phi = -c psi'' with the constant c fixed so that the squared
// profile has full-period average one after concentration:
//     integral of phi^2 over (-1,1) == 2 pi.
// Its second antiderivative (used by the vector potentials of the blocks)
// is Phi = c psi, so phi == -Phi'' identically and both vanish to all
// orders at |x| = 1.
//
// Derivatives of any order are evaluated exactly (up to round-off) through
// the logarithmic-derivative recursion: with u = -1/(1-x^2),
//     psi^(m+1) = sum_j C(m,j) u^(j+1) psi^(m-j),
// and the partial-fraction closed form for u^(j).
class BumpProfile {
  public:
    BumpProfile();

    double normalization() const { return c_; }

    double value(double x) const;                    // phi(x)
    double derivative(int m, double x) const;        // phi^(m)(x)
    double potential(double x) const;                // Phi(x)
    double potential_derivative(int m, double x) const;

  private:
    double c_ = 0.0;
};

const BumpProfile& bump_profile();

// integral over (-1,1) of |phi^(M)|^p (midpoint rule; spectrally accurate
// because the integrand is smooth and flat at the endpoints).
double profile_moment(int M, double p);
double profile_sup(int M);  // sup |phi^(M)|

// ---- closed-form oracles for the rescaled, periodized, concentrated
// profile phi_(k)(x) = r^(-1/2) phi(<lambda r N k, x>/r), with N k an
// integer vector so the expression is well defined on the torus.  These
// reduce 3D norms to 1D moments exactly: the pushforward of the uniform
// measure on the torus under x -> m.x (integer m != 0) is uniform on the
// circle.
double block_norm_oracle(int M, double p, double lambda, double r, int N);
double block_sup_oracle(int M, double lambda, double r, int N);

// Largest |s| <= 1 with |phi(s)| > tol * sup|phi|.
double support_y_star(double tol);
// Volume of {x : |phi_(k)| > tol * sup} on the torus: (2 pi)^2 * 2 r y*.
double support_volume_oracle(double r, double tol);
// Volume of the intersection of two such supports for non-parallel
// directions: 2 pi * 4 r1 r2 y*^2 (the joint direction map is uniform on
// the 2-torus).
double product_support_volume_oracle(double r1, double r2, double tol);

// Bandwidth factor K(tol): the largest xi with |F(xi)| >= tol * max|F|,
// where F is the Fourier transform of phi on (-1,1).  The periodized
// block phi_(k) then carries 3D frequencies up to about K * lambda * N.
double profile_bandwidth_factor(double tol);

}  // namespace mhdci
