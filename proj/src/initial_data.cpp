#include "mhdci/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhdci {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double two_pi_pow(double e) { return std::pow(kTwoPi, e); }

// Base oscillation frequency sqrt(lambda_0), required to be an integer.
long seed_frequency(const ParamSet& params) {
    const double lambda0 = params.a;
    const long f = std::lround(std::sqrt(lambda0));
    if (static_cast<double>(f) * static_cast<double>(f) != lambda0)
        throw std::invalid_argument(
            "seed data needs lambda_0 to be a perfect square so its "
            "oscillation frequency is an integer (got a = " +
            std::to_string(lambda0) + ")");
    return f;
}

}  // namespace

double seed_profile_value(SeedProfile kind, double t) {
    switch (kind) {
        case SeedProfile::linear: return t;
        case SeedProfile::exponential: return std::expm1(t);
    }
    return t;
}

double seed_profile_slope(SeedProfile kind, double t) {
    switch (kind) {
        case SeedProfile::linear: return 1.0;
        case SeedProfile::exponential: return std::exp(t);
    }
    return 1.0;
}

const char* seed_profile_name(SeedProfile kind) {
    return kind == SeedProfile::linear ? "linear" : "exponential";
}

State initial_state(const ParamSet& params, int n, double t0, double dt,
                    int slices, SeedProfile profile) {
    const long f = seed_frequency(params);
    if (f > n / 2 - 1)
        throw std::invalid_argument(
            "grid too coarse for the seed frequency: need n/2-1 >= " +
            std::to_string(f));
    if (slices < 1 || dt <= 0.0)
        throw std::invalid_argument("need at least one slice and dt > 0");

    const double cu = two_pi_pow(-1.5);             // velocity amplitude
    const double cb = two_pi_pow(-3.0);             // magnetic amplitude
    const double inv_f = 1.0 / static_cast<double>(f);  // = lambda_0^(-1/2)

    // 1D tables along x3.
    std::vector<double> sn(static_cast<std::size_t>(n)),
        cs(static_cast<std::size_t>(n));
    for (int iz = 0; iz < n; ++iz) {
        const double x3 = grid_coord(n, iz);
        sn[static_cast<std::size_t>(iz)] = std::sin(f * x3);
        cs[static_cast<std::size_t>(iz)] = std::cos(f * x3);
    }

    State s;
    s.q = 0;
    s.n = n;
    s.t0 = t0;
    s.dt = dt;
    s.u.reserve(static_cast<std::size_t>(slices));
    s.b.reserve(static_cast<std::size_t>(slices));
    s.p.reserve(static_cast<std::size_t>(slices));
    s.r_u.reserve(static_cast<std::size_t>(slices));
    s.r_b.reserve(static_cast<std::size_t>(slices));

    for (int j = 0; j < slices; ++j) {
        const double t = t0 + dt * j;
        const double g = seed_profile_value(profile, t);
        const double gp = seed_profile_slope(profile, t);

        VectorField u(n), b(n);
        ScalarField p(n);
        TensorField ru(n), rb(n);
        const std::size_t total = grid_size(n);
        for (std::size_t idx = 0; idx < total; ++idx) {
            const int iz = static_cast<int>(idx % static_cast<std::size_t>(n));
            const double s1 = sn[static_cast<std::size_t>(iz)];
            const double c1 = cs[static_cast<std::size_t>(iz)];

            u.c[0][idx] = g * cu * s1;
            b.c[0][idx] = g * cb * s1;
            b.c[1][idx] = g * cb * c1;

            // Symmetric traceless velocity stress: only the (0,2)/(2,0) pair
            // is active; writing the same product to both keeps it symmetric
            // to the last bit.
            const double su = gp * inv_f * cu * c1;
            ru.c[2][idx] = -su;
            ru.c[6][idx] = -su;

            // Skew magnetic stress: (0,2) = -cos, (1,2) = +sin, mirrored
            // with exact negation.
            const double sb_c = gp * inv_f * cb * c1;
            const double sb_s = gp * inv_f * cb * s1;
            rb.c[2][idx] = -sb_c;
            rb.c[6][idx] = sb_c;
            rb.c[5][idx] = sb_s;
            rb.c[7][idx] = -sb_s;
        }
        (void)p;  // pressure of the seed is identically zero
        s.u.push_back(std::move(u));
        s.b.push_back(std::move(b));
        s.p.push_back(std::move(p));
        s.r_u.push_back(std::move(ru));
        s.r_b.push_back(std::move(rb));
    }
    return s;
}

double seed_energy(const ParamSet&, double t, SeedProfile profile) {
    const double g = seed_profile_value(profile, t);
    return g * g * (0.25 + 0.5 * two_pi_pow(-3.0));
}

double seed_cross_helicity(const ParamSet&, double t, SeedProfile profile) {
    const double g = seed_profile_value(profile, t);
    return g * g * 0.5 * two_pi_pow(-1.5);
}

double seed_magnetic_helicity(const ParamSet& params, double t,
                              SeedProfile profile) {
    const double g = seed_profile_value(profile, t);
    const double lambda0 = params.a;
    return g * g * two_pi_pow(-3.0) / std::sqrt(lambda0);
}

}  // namespace mhdci
