#include "mhdci/amplitudes.hpp"

#include <cmath>

#include "mhdci/geometry.hpp"
#include "mhdci/math3.hpp"

namespace mhdci {

double chi(double z) {
    if (z <= 1.0) return 1.0;
    if (z >= 2.0) return z;
    const double s = z - 1.0;
    const double s3 = s * s * s;
    return 1.0 + s3 * (6.0 + s * (-8.0 + 3.0 * s));
}

double chi_prime(double z) {
    if (z <= 1.0) return 0.0;
    if (z >= 2.0) return 1.0;
    const double s = z - 1.0;
    const double s2 = s * s;
    return s2 * (18.0 + s * (-32.0 + 15.0 * s));
}

AmplitudeBundle build_amplitudes(const TensorField& r_u, const TensorField& r_b,
                                 double delta, double c_u, double c_b) {
    require_same_grid(r_u.n, r_b.n, "amplitude stress inputs");
    check_internal(delta > 0.0 && c_u > 0.0 && c_b > 0.0,
                   "amplitude scales must be positive");
    const int n = r_u.n;
    const std::size_t total = grid_size(n);

    AmplitudeBundle out;
    out.n = n;
    out.rho_b = ScalarField(n);
    out.rho_u = ScalarField(n);
    out.g_b = TensorField(n);
    for (auto& f : out.a_b) f = ScalarField(n);
    for (auto& f : out.a_u) f = ScalarField(n);

    const auto& mframes = magnetic_frames();
    const double eps_b = epsilon_b();
    const double eps_u = epsilon_u();
    const double floor_b = gamma_b_floor() * gamma_b_floor();
    const double floor_u = gamma_u_floor() * gamma_u_floor();

    for (std::size_t i = 0; i < total; ++i) {
        const Mat3 rb = r_b.at(i);
        const double zb = frobenius(rb) / (c_b * delta);
        const double rho_b = 2.0 * delta * c_b * chi(zb) / eps_b;
        out.rho_b.v[i] = rho_b;

        Mat3 arg;
        for (int c = 0; c < 9; ++c) arg[c] = -rb[c] / rho_b;
        const auto g2b = gamma_b_squared(arg);

        Mat3 gb = mat3_zero();
        for (int k = 0; k < 5; ++k) {
            check_internal(g2b[k] > 0.5 * floor_b,
                           "magnetic direction weight lost positivity");
            const double a2 = rho_b * g2b[k];
            out.a_b[k].v[i] = std::sqrt(a2);
            const Vec3& k1 = mframes[static_cast<std::size_t>(k)].k1;
            const Vec3& k2 = mframes[static_cast<std::size_t>(k)].k2;
            const Mat3 d1 = outer(k1, k1);
            const Mat3 d2 = outer(k2, k2);
            for (int c = 0; c < 9; ++c) gb[c] += a2 * (d1[c] - d2[c]);
        }
        out.g_b.set(i, gb);

        Mat3 ru_eff = r_u.at(i);
        for (int c = 0; c < 9; ++c) ru_eff[c] += gb[c];
        const double zu = frobenius(ru_eff) / (c_u * delta);
        const double rho_u = 2.0 * delta * c_u * chi(zu) / eps_u;
        out.rho_u.v[i] = rho_u;

        Mat3 s = mat3_identity();
        for (int c = 0; c < 9; ++c) s[c] -= ru_eff[c] / rho_u;
        const auto g2u = gamma_u_squared(s);
        for (int k = 0; k < 6; ++k) {
            check_internal(g2u[k] > 0.5 * floor_u,
                           "velocity direction weight lost positivity");
            out.a_u[k].v[i] = std::sqrt(rho_u * g2u[k]);
        }
    }
    return out;
}

}  // namespace mhdci
