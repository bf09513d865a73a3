#pragma once

#include "mhdci/fft.hpp"
#include "mhdci/fields.hpp"

namespace mhdci {

// Fourier-multiplier calculus on the periodic grid.  Conventions:
//  * frequencies are the signed integers k in [-n/2, n/2];
//  * every operator built from an odd power of the frequency (first
//    derivatives and everything assembled from them) zeroes the Nyquist
//    planes |k_i| = n/2, which keeps outputs real and makes identities such
//    as div(curl .) = 0 and div(curl curl .) = 0 hold to round-off even for
//    inputs carrying Nyquist content;
//  * inverse Laplacians act as 0 on the zero mode.

ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);
// curl(curl v), assembled spectrally as |k|^2 v - k (k.v).
VectorField curl_curl(const VectorField& v);
// (div T)_i = d_j T_ij (divergence over the second index).
VectorField tensor_divergence(const TensorField& t);

ScalarField inv_neg_laplacian(const ScalarField& f);
VectorField inv_neg_laplacian(const VectorField& f);
// |grad|^{-1}: multiplier 1/|k|, zero mode -> 0.
ScalarField inv_modulus(const ScalarField& f);
// Keeps only modes with |k| >= kappa.
ScalarField highpass(const ScalarField& f, double kappa);

// Projection onto divergence-free fields (mean preserved).
VectorField leray_project(const VectorField& v);

void remove_mean_inplace(ScalarField& f);
void remove_mean_inplace(VectorField& f);
void remove_mean_inplace(TensorField& f);

// Circular node shift: out(i) = f(i - s), per axis, exact permutation.
ScalarField roll_nodes(const ScalarField& f, int sx, int sy, int sz);

// Spectral resampling onto an m-point grid (zero pad or truncate).  Nyquist
// planes of the source are dropped.
ScalarField resample(const ScalarField& f, int m);

enum class ProductMode { pointwise, dealiased };

// Product of two scalar fields.  In dealiased mode both factors are
// resampled to a 3n/2 grid, multiplied there and truncated back, which
// removes aliasing for factors band-limited to |k_i| < n/2 at the cost of
// exact pointwise distributivity on the nodal values.
ScalarField multiply(const ScalarField& a, const ScalarField& b, ProductMode mode);
TensorField outer_product(const VectorField& a, const VectorField& b, ProductMode mode);

// ---- mollification ------------------------------------------------------
// Spatial mollifier: tensor product of three copies of the 1D compactly
// supported bump s -> exp(-1/(1 - (s/ell)^2)) on (-ell, ell), normalized to
// unit mass by the same quadrature that samples it.  Applied as a separable
// Fourier multiplier; the zero-frequency gain is exactly 1, so means are
// preserved exactly.
struct SpaceMollifier {
    int n = 0;
    double ell = 0.0;
    std::vector<double> gain;  // gain[j] for axis frequency |k| = j, j = 0..n/2
};

SpaceMollifier make_space_mollifier(int n, double ell);
ScalarField apply(const SpaceMollifier& m, const ScalarField& f);
VectorField apply(const SpaceMollifier& m, const VectorField& f);
TensorField apply(const SpaceMollifier& m, const TensorField& f);

// Temporal mollifier: discrete convolution weights over slice offsets
// -halfwidth..halfwidth, sampled from the same bump at spacing dt and
// normalized to unit sum.  When ell < dt the stencil degenerates to the
// single weight {1}; callers report that condition.
struct TimeMollifier {
    double ell = 0.0;
    double dt = 0.0;
    int halfwidth = 0;
    std::vector<double> w;  // size 2*halfwidth + 1, symmetric, sums to 1
};

TimeMollifier make_time_mollifier(double ell, double dt);

}  // namespace mhdci
