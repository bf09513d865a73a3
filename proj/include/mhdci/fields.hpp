#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mhdci/math3.hpp"

namespace mhdci {

// Fields live on the uniform periodic grid of [-pi, pi)^3 with n nodes per
// axis: x_i = -pi + 2*pi*i/n.  Node storage is row-major with the z index
// fastest: flat = (ix*n + iy)*n + iz.  Vector and tensor fields store one
// contiguous array per component (structure-of-arrays), which keeps the
// transform and multiplier code uniform across ranks.

inline std::size_t grid_size(int n) {
    return static_cast<std::size_t>(n) * n * n;
}

inline double grid_coord(int n, int i) {
    return -M_PI + 2.0 * M_PI * static_cast<double>(i) / n;
}

// Cell volume of the uniform grid; the rectangle rule with this weight is
// exact for trigonometric polynomials below the Nyquist band.
inline double cell_volume(int n) {
    const double h = 2.0 * M_PI / n;
    return h * h * h;
}

struct ScalarField {
    int n = 0;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(int n_) : n(n_), v(grid_size(n_), 0.0) {}

    double& at(int ix, int iy, int iz) {
        return v[(static_cast<std::size_t>(ix) * n + iy) * n + iz];
    }
    double at(int ix, int iy, int iz) const {
        return v[(static_cast<std::size_t>(ix) * n + iy) * n + iz];
    }
};

struct VectorField {
    int n = 0;
    std::array<std::vector<double>, 3> c;

    VectorField() = default;
    explicit VectorField(int n_) : n(n_) {
        for (auto& a : c) a.assign(grid_size(n_), 0.0);
    }

    Vec3 at(std::size_t flat) const { return {c[0][flat], c[1][flat], c[2][flat]}; }
    void set(std::size_t flat, const Vec3& val) {
        c[0][flat] = val[0];
        c[1][flat] = val[1];
        c[2][flat] = val[2];
    }
};

struct TensorField {
    int n = 0;
    std::array<std::vector<double>, 9> c;  // row-major components

    TensorField() = default;
    explicit TensorField(int n_) : n(n_) {
        for (auto& a : c) a.assign(grid_size(n_), 0.0);
    }

    Mat3 at(std::size_t flat) const {
        Mat3 m;
        for (int i = 0; i < 9; ++i) m[i] = c[i][flat];
        return m;
    }
    void set(std::size_t flat, const Mat3& val) {
        for (int i = 0; i < 9; ++i) c[i][flat] = val[i];
    }
};

// ---- reductions ---------------------------------------------------------
// Two L^p flavours are used deliberately:
//   integral_lp_norm : (integral over [-pi,pi)^3 of |f|^p)^(1/p),
//   mean_lp_norm     : the volume-averaged version ((1/8pi^3) integral)^(1/p).
// Energy, helicity and block normalization statements use the integral
// flavour; smallness statements about the stress tensors use the averaged
// flavour.  Pointwise magnitudes of vectors/tensors are Euclidean/Frobenius.

double integral_lp_norm(const ScalarField& f, double p);
double integral_lp_norm(const VectorField& f, double p);
double integral_lp_norm(const TensorField& f, double p);
double mean_lp_norm(const ScalarField& f, double p);
double mean_lp_norm(const VectorField& f, double p);
double mean_lp_norm(const TensorField& f, double p);
double linf_norm(const ScalarField& f);
double linf_norm(const VectorField& f);
double linf_norm(const TensorField& f);
double mean(const ScalarField& f);

// integral of a.b over the torus.
double inner_l2(const VectorField& a, const VectorField& b);

// ---- pointwise algebra --------------------------------------------------
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
TensorField operator+(const TensorField& a, const TensorField& b);
TensorField operator-(const TensorField& a, const TensorField& b);
ScalarField scale(double s, const ScalarField& a);
VectorField scale(double s, const VectorField& a);
TensorField scale(double s, const TensorField& a);
void add_scaled(ScalarField& a, double s, const ScalarField& b);
void add_scaled(VectorField& a, double s, const VectorField& b);
void add_scaled(TensorField& a, double s, const TensorField& b);

// Pointwise products (plain nodal multiplication).
ScalarField multiply(const ScalarField& a, const ScalarField& b);
TensorField outer_product(const VectorField& a, const VectorField& b);
ScalarField dot_product(const VectorField& a, const VectorField& b);

// Pointwise structural projections.
TensorField sym_part(const TensorField& t);
TensorField skew_part(const TensorField& t);
TensorField traceless_part(const TensorField& t);
ScalarField trace_field(const TensorField& t);

// Largest pointwise deviation from a structural property (exact zero for
// fields produced by the corresponding projections).
double max_asymmetry(const TensorField& t);     // |T - T^t|/2 max entry
double max_symmetry(const TensorField& t);      // |T + T^t|/2 max entry
double max_trace(const TensorField& t);         // |tr T| max

void require_same_grid(int na, int nb, const char* what);

// Internal invariant failure (never a user error); the CLI maps it to a
// dedicated exit code.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_internal(bool ok, const char* msg) {
    if (!ok) throw internal_error(msg);
}

}  // namespace mhdci
