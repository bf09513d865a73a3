#include "mhdci/blocks.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "mhdci/profile.hpp"

namespace mhdci {

namespace {

double wrap_pi(double s) {
    // reduce to [-pi, pi)
    s = std::fmod(s + M_PI, 2.0 * M_PI);
    if (s < 0) s += 2.0 * M_PI;
    return s - M_PI;
}

// Subgroup of Z_n reachable by T = <m, idx> mod n: multiples of
// gcd(m1, m2, m3, n).  Every reachable value is hit equally often, so grid
// means of any function of T reduce to plain averages over the subgroup.
long long table_gcd(const std::array<long long, 3>& m, int n) {
    long long g = n;
    for (long long mi : m) {
        long long a = std::llabs(mi) % n;
        g = std::gcd(g, a);
    }
    return g == 0 ? n : g;
}

double subgroup_mean(const std::vector<double>& table, long long g,
                     const std::function<double(double)>& f) {
    const long long n = static_cast<long long>(table.size());
    double acc = 0.0;
    long long count = 0;
    for (long long t = 0; t < n; t += g) {
        acc += f(table[t]);
        ++count;
    }
    return acc / static_cast<double>(count);
}

void fill_from_table(ScalarField& out, const std::vector<double>& table,
                     const std::array<long long, 3>& m) {
    const int n = out.n;
    std::array<std::vector<int>, 3> step;
    for (int axis = 0; axis < 3; ++axis) {
        step[axis].resize(n);
        const long long mm = ((m[axis] % n) + n) % n;
        for (int i = 0; i < n; ++i)
            step[axis][i] = static_cast<int>((mm * i) % n);
    }
    std::size_t flat = 0;
    for (int ix = 0; ix < n; ++ix) {
        const int tx = step[0][ix];
        for (int iy = 0; iy < n; ++iy) {
            int txy = tx + step[1][iy];
            if (txy >= n) txy -= n;
            for (int iz = 0; iz < n; ++iz, ++flat) {
                int t = txy + step[2][iz];
                if (t >= n) t -= n;
                out.v[flat] = table[t];
            }
        }
    }
}

}  // namespace

Block make_block(const Frame& fr, int family, int index, double lambda, double r,
                 std::uint64_t r_lambda_int, int n) {
    check_internal(r > 0.0 && r < M_PI, "block concentration must lie in (0, pi)");
    Block b;
    b.frame = fr;
    b.family = family;
    b.index = index;
    b.lambda = lambda;
    b.r = r;
    b.n = n;
    const int N = direction_scale();
    const auto kint = fr.scaled(N, 0);
    long long sum = 0;
    for (int i = 0; i < 3; ++i) {
        b.wavevector[i] = static_cast<long long>(r_lambda_int) * kint[i];
        sum += b.wavevector[i];
    }
    b.fast = static_cast<double>(r_lambda_int) * N;
    b.parity = static_cast<int>(((sum % 2) + 2) % 2);
    b.subgroup_gcd = table_gcd(b.wavevector, n);

    const BumpProfile& prof = bump_profile();
    b.phi_table.assign(n, 0.0);
    b.pot_table.assign(n, 0.0);
    const double phase = b.parity ? M_PI : 0.0;
    for (int t = 0; t < n; ++t) {
        const double s = wrap_pi(2.0 * M_PI * t / n - phase);
        if (std::abs(s) < b.r) {
            const double y = s / b.r;
            b.phi_table[t] = std::pow(b.r, -0.5) * prof.value(y);
            b.pot_table[t] = std::pow(b.r, 1.5) * prof.potential(y);
        }
    }
    // Grid renormalization: project the mean out of phi and rescale so that
    // the grid mean of phi^2 is exactly 1; the potential is rescaled by the
    // same factor to keep the pair consistent.
    b.raw_mean = subgroup_mean(b.phi_table, b.subgroup_gcd, [](double v) { return v; });
    for (double& v : b.phi_table) v -= b.raw_mean;
    const double msq =
        subgroup_mean(b.phi_table, b.subgroup_gcd, [](double v) { return v * v; });
    check_internal(msq > 0.0, "block collapses to a constant on this grid");
    b.norm_factor = 1.0 / std::sqrt(msq);
    for (double& v : b.phi_table) v *= b.norm_factor;
    for (double& v : b.pot_table) v *= b.norm_factor;

    b.phi = ScalarField(n);
    b.pot = ScalarField(n);
    fill_from_table(b.phi, b.phi_table, b.wavevector);
    fill_from_table(b.pot, b.pot_table, b.wavevector);
    return b;
}

Block make_wave_block(const Frame& fr, int family, int index, long long scale, int mode,
                      int n) {
    Block b;
    b.frame = fr;
    b.family = family;
    b.index = index;
    b.lambda = static_cast<double>(scale);  // nominal
    b.r = 1.0;
    b.n = n;
    b.synthetic = true;
    const int N = direction_scale();
    const auto kint = fr.scaled(N, 0);
    long long sum = 0;
    for (int i = 0; i < 3; ++i) {
        b.wavevector[i] = scale * kint[i];
        sum += b.wavevector[i];
    }
    b.fast = static_cast<double>(scale) * N;
    b.parity = static_cast<int>(((sum % 2) + 2) % 2);
    b.subgroup_gcd = table_gcd(b.wavevector, n);
    b.phi_table.assign(n, 0.0);
    b.pot_table.assign(n, 0.0);
    const double phase = b.parity ? M_PI : 0.0;
    for (int t = 0; t < n; ++t) {
        const double s = 2.0 * M_PI * t / n - phase;
        b.pot_table[t] = std::cos(mode * s);
        b.phi_table[t] = mode * mode * std::cos(mode * s);
    }
    b.phi = ScalarField(n);
    b.pot = ScalarField(n);
    fill_from_table(b.phi, b.phi_table, b.wavevector);
    fill_from_table(b.pot, b.pot_table, b.wavevector);
    return b;
}

BlockSet make_block_set(const ScaleSet& s, int n) {
    check_internal(s.r_lambda_integral && s.r_lambda_in_u64,
                   "block periodicity count must be an integer");
    BlockSet set;
    set.lambda = s.lambda_q1;
    set.r = s.r;
    set.fast = static_cast<double>(s.r_lambda_int) * direction_scale();
    const auto& vf = velocity_frames();
    for (int i = 0; i < 6; ++i)
        set.vel.push_back(make_block(vf[i], 0, i, s.lambda_q1, s.r, s.r_lambda_int, n));
    const auto& mf = magnetic_frames();
    for (int i = 0; i < 5; ++i)
        set.mag.push_back(make_block(mf[i], 1, i, s.lambda_q1, s.r, s.r_lambda_int, n));
    return set;
}

double block_grid_mean(const Block& b, int power) {
    return subgroup_mean(b.phi_table, b.subgroup_gcd, [power](double v) {
        double acc = 1.0;
        for (int i = 0; i < power; ++i) acc *= v;
        return acc;
    });
}

double block_support_fraction(const Block& b, double tol) {
    double peak = 0.0;
    for (double v : b.phi_table) peak = std::max(peak, std::abs(v));
    const double thr = tol * peak;
    const long long n = b.phi_table.size();
    long long hit = 0, total = 0;
    for (long long t = 0; t < n; t += b.subgroup_gcd) {
        ++total;
        if (std::abs(b.phi_table[t]) > thr) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(total);
}

ResolutionCheck check_resolution(double lambda, int n, double tol) {
    ResolutionCheck c;
    c.bandwidth_factor = profile_bandwidth_factor(tol);
    c.max_frequency = c.bandwidth_factor * lambda * direction_scale();
    c.nyquist = n / 2 - 1;
    c.resolved = c.max_frequency <= c.nyquist;
    return c;
}

namespace {

// Direct quadratures over the concentrated support, deliberately using a
// different rule/resolution than the closed-form oracles.
double direct_norm(int M, double p, double lambda, double r, int N) {
    const BumpProfile& prof = bump_profile();
    const int nodes = 300000;
    const double h = 2.0 * r / nodes;
    double acc = 0.0;
    for (int i = 0; i <= nodes; ++i) {
        const double s = -r + i * h;
        const double v = std::pow(r, -0.5 - M) * std::abs(prof.derivative(M, s / r));
        const double w = (i == 0 || i == nodes) ? 0.5 : 1.0;
        acc += w * std::pow(v, p);
    }
    acc *= h;
    const double fast = lambda * r * N;
    return std::pow(fast, M) * std::pow((2.0 * M_PI) * (2.0 * M_PI) * acc, 1.0 / p);
}

double direct_sup(int M, double lambda, double r, int N) {
    const BumpProfile& prof = bump_profile();
    const int nodes = 200000;
    double best = 0.0;
    for (int i = 0; i <= nodes; ++i) {
        const double s = -1.0 + 2.0 * static_cast<double>(i) / nodes;
        best = std::max(best, std::abs(prof.derivative(M, s)));
    }
    const double fast = lambda * r * N;
    return std::pow(fast, M) * std::pow(r, -0.5 - M) * best;
}

double direct_support(double r, double tol) {
    const BumpProfile& prof = bump_profile();
    const int nodes = 400000;
    double peak = 0.0;
    std::vector<double> vals(nodes + 1);
    for (int i = 0; i <= nodes; ++i) {
        const double s = -1.0 + 2.0 * static_cast<double>(i) / nodes;
        vals[i] = std::abs(prof.value(s));
        peak = std::max(peak, vals[i]);
    }
    long long hit = 0;
    for (double v : vals)
        if (v > tol * peak) ++hit;
    const double measure = 2.0 * r * static_cast<double>(hit) / (nodes + 1);
    return (2.0 * M_PI) * (2.0 * M_PI) * measure;
}

}  // namespace

std::vector<BlockScalingRow> block_scaling_sweep(const std::vector<double>& lambdas,
                                                 const std::vector<double>& rs,
                                                 const std::vector<int>& orders,
                                                 const std::vector<double>& ps,
                                                 double support_tol) {
    const int N = direction_scale();
    std::vector<BlockScalingRow> rows;
    for (double lambda : lambdas) {
        for (double r : rs) {
            for (int M : orders) {
                for (double p : ps) {
                    BlockScalingRow row;
                    row.lambda = lambda;
                    row.r = r;
                    row.M = M;
                    row.p = p;
                    row.norm_oracle = block_norm_oracle(M, p, lambda, r, N);
                    row.norm_direct = direct_norm(M, p, lambda, r, N);
                    row.sup_oracle = block_sup_oracle(M, lambda, r, N);
                    row.sup_direct = direct_sup(M, lambda, r, N);
                    row.support_oracle = support_volume_oracle(r, support_tol);
                    row.support_direct = direct_support(r, support_tol);
                    row.psupport_oracle = product_support_volume_oracle(r, r, support_tol);
                    const double single = direct_support(r, support_tol);
                    row.psupport_direct =
                        single * single / ((2.0 * M_PI) * (2.0 * M_PI) * (2.0 * M_PI));
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

}  // namespace mhdci
