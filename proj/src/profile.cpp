#include "mhdci/profile.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "mhdci/fields.hpp"

namespace mhdci {

namespace {

// psi and its derivatives via the recursion psi' = u' psi, u = -1/(1-x^2).
// Returns psi^(0..m) at x.  Outside (-1,1) everything vanishes.
std::vector<double> psi_derivatives(int m, double x) {
    std::vector<double> psi(m + 1, 0.0);
    const double guard = 1.0 - 1e-12;
    if (std::abs(x) >= guard) return psi;
    // u^(j) = -(j!/2) [ (1-x)^-(j+1) + (-1)^j (1+x)^-(j+1) ]
    std::vector<double> du(m + 1, 0.0);  // du[j] = u^(j+1)(x), j = 0..m
    {
        double fact = 1.0;  // (j+1)!
        double pm = 1.0 / (1.0 - x);
        double pp = 1.0 / (1.0 + x);
        double pmj = pm, ppj = pp;
        for (int j = 0; j <= m; ++j) {
            fact *= (j + 1);
            pmj *= pm;  // (1-x)^-(j+2)
            ppj *= pp;
            const double sign = (j + 1) % 2 == 0 ? 1.0 : -1.0;
            du[j] = -(fact / 2.0) * (pmj + sign * ppj);
        }
    }
    psi[0] = std::exp(-1.0 / (1.0 - x * x));
    // binomials up to m
    std::vector<std::vector<double>> C(m + 1, std::vector<double>(m + 1, 0.0));
    for (int i = 0; i <= m; ++i) {
        C[i][0] = 1.0;
        for (int j = 1; j <= i; ++j) C[i][j] = C[i - 1][j - 1] + (j <= i - 1 ? C[i - 1][j] : 0.0);
    }
    for (int k = 0; k < m; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) acc += C[k][j] * du[j] * psi[k - j];
        psi[k + 1] = acc;
    }
    return psi;
}

double psi_derivative(int m, double x) { return psi_derivatives(m, x)[m]; }

constexpr int kQuad = 1 << 15;

// midpoint rule over (-1,1)
template <typename F>
double integrate_unit(F f) {
    const double h = 2.0 / kQuad;
    double acc = 0.0;
    for (int i = 0; i < kQuad; ++i) {
        const double x = -1.0 + (i + 0.5) * h;
        acc += f(x);
    }
    return acc * h;
}

}  // namespace

BumpProfile::BumpProfile() {
    const double m2 = integrate_unit([](double x) {
        const double d2 = psi_derivative(2, x);
        return d2 * d2;
    });
    check_internal(m2 > 0.0, "profile normalization integral must be positive");
    c_ = std::sqrt(2.0 * M_PI / m2);
}

double BumpProfile::value(double x) const { return -c_ * psi_derivative(2, x); }

double BumpProfile::derivative(int m, double x) const {
    return -c_ * psi_derivative(m + 2, x);
}

double BumpProfile::potential(double x) const { return c_ * psi_derivative(0, x); }

double BumpProfile::potential_derivative(int m, double x) const {
    return c_ * psi_derivative(m, x);
}

const BumpProfile& bump_profile() {
    static const BumpProfile p;
    return p;
}

namespace {

std::map<std::pair<int, std::int64_t>, double>& moment_cache() {
    static std::map<std::pair<int, std::int64_t>, double> cache;
    return cache;
}

}  // namespace

double profile_moment(int M, double p) {
    const auto key = std::make_pair(M, static_cast<std::int64_t>(std::llround(p * 1e9)));
    auto& cache = moment_cache();
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const BumpProfile& bp = bump_profile();
    const double val = integrate_unit(
        [&bp, M, p](double x) { return std::pow(std::abs(bp.derivative(M, x)), p); });
    cache.emplace(key, val);
    return val;
}

double profile_sup(int M) {
    static std::map<int, double> cache;
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;
    const BumpProfile& bp = bump_profile();
    double best = 0.0;
    const int nodes = 1 << 16;
    for (int i = 0; i <= nodes; ++i) {
        const double x = -1.0 + 2.0 * i / nodes;
        best = std::max(best, std::abs(bp.derivative(M, x)));
    }
    cache.emplace(M, best);
    return best;
}

double block_norm_oracle(int M, double p, double lambda, double r, int N) {
    check_internal(p >= 1.0 && r > 0.0 && lambda > 0.0, "oracle parameters out of range");
    const double fast = lambda * r * N;
    const double body =
        (2.0 * M_PI) * (2.0 * M_PI) * std::pow(r, 1.0 - (0.5 + M) * p) * profile_moment(M, p);
    return std::pow(fast, M) * std::pow(body, 1.0 / p);
}

double block_sup_oracle(int M, double lambda, double r, int N) {
    return std::pow(lambda * N, M) * std::pow(r, -0.5) * profile_sup(M);
}

double support_y_star(double tol) {
    static std::map<std::int64_t, double> cache;
    const auto key = static_cast<std::int64_t>(std::llround(tol * 1e15));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const BumpProfile& bp = bump_profile();
    const double thr = tol * profile_sup(0);
    const int nodes = 1 << 20;
    double out = 0.0;
    for (int i = 0; i <= nodes; ++i) {
        const double s = 1.0 - static_cast<double>(i) / nodes;
        if (std::abs(bp.value(s)) > thr) {
            out = s;
            break;
        }
    }
    cache.emplace(key, out);
    return out;
}

double support_volume_oracle(double r, double tol) {
    return (2.0 * M_PI) * (2.0 * M_PI) * 2.0 * r * support_y_star(tol);
}

double product_support_volume_oracle(double r1, double r2, double tol) {
    const double y = support_y_star(tol);
    return 2.0 * M_PI * 4.0 * r1 * r2 * y * y;
}

double profile_bandwidth_factor(double tol) {
    static std::map<std::int64_t, double> cache;
    const auto key = static_cast<std::int64_t>(std::llround(tol * 1e12));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const BumpProfile& bp = bump_profile();
    const double xi_max = 200.0;
    const int steps = 4000;
    const int quad = 1 << 13;
    std::vector<double> node(quad), val(quad);
    const double h = 2.0 / quad;
    for (int i = 0; i < quad; ++i) {
        node[i] = -1.0 + (i + 0.5) * h;
        val[i] = bp.value(node[i]) * h;
    }
    std::vector<double> mag(steps + 1, 0.0);
    double peak = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double xi = xi_max * i / steps;
        double f = 0.0;
        for (int jq = 0; jq < quad; ++jq) f += val[jq] * std::cos(xi * node[jq]);
        mag[i] = std::abs(f);
        peak = std::max(peak, mag[i]);
    }
    double factor = 0.0;
    for (int i = steps; i >= 0; --i) {
        if (mag[i] >= tol * peak) {
            factor = xi_max * i / steps;
            break;
        }
    }
    cache.emplace(key, factor);
    return factor;
}

}  // namespace mhdci
