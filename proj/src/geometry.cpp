#include "mhdci/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mhdci/fields.hpp"

namespace mhdci {

std::array<long, 3> Frame::scaled(int N, int which) const {
    const Vec3& v = which == 0 ? k : (which == 1 ? k1 : k2);
    std::array<long, 3> out{};
    for (int i = 0; i < 3; ++i) {
        const double x = N * v[i];
        const long r = std::lround(x);
        check_internal(std::abs(x - r) < 1e-9, "frame vector not integral at this scale");
        out[i] = r;
    }
    return out;
}

const std::array<Frame, 5>& magnetic_frames() {
    static const std::array<Frame, 5> frames = {{
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
        {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}},
        {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},
        {{3.0 / 5, 4.0 / 5, 0}, {4.0 / 5, -3.0 / 5, 0}, {0, 0, 1}},
        {{0, -4.0 / 5, -3.0 / 5}, {0, 3.0 / 5, -4.0 / 5}, {1, 0, 0}},
    }};
    return frames;
}

const std::array<Frame, 6>& velocity_frames() {
    static const std::array<Frame, 6> frames = {{
        {{12.0 / 13, 5.0 / 13, 0}, {5.0 / 13, -12.0 / 13, 0}, {0, 0, 1}},
        {{12.0 / 13, -5.0 / 13, 0}, {5.0 / 13, 12.0 / 13, 0}, {0, 0, 1}},
        {{5.0 / 13, 0, 12.0 / 13}, {12.0 / 13, 0, -5.0 / 13}, {0, 1, 0}},
        {{5.0 / 13, 0, -12.0 / 13}, {12.0 / 13, 0, 5.0 / 13}, {0, 1, 0}},
        {{0, 12.0 / 13, 5.0 / 13}, {0, 5.0 / 13, -12.0 / 13}, {1, 0, 0}},
        {{0, 12.0 / 13, -5.0 / 13}, {0, 5.0 / 13, 12.0 / 13}, {1, 0, 0}},
    }};
    return frames;
}

int direction_scale() { return 65; }

// ---- magnetic weights ---------------------------------------------------
// The wedges of the first three frames are the standard basis of skew
// matrices; frames 4 and 5 satisfy
//   W4 = -(4/5) W2 - (3/5) W1    and    W5 = -(3/5) W3 - (4/5) W2,
// which gives the exact null combination
//   (7/4) W1 + (11/3) W2 + W3 + (35/12) W4 + (5/3) W5 = 0.
// Adding the coordinates of A in (W1, W2, W3) to the null coefficients
// yields affine weights that reconstruct A exactly and stay positive on the
// unit Frobenius ball.

std::array<double, 5> gamma_b_squared(const Mat3& a) {
    const double c1 = a[1 * 3 + 2];
    const double c2 = a[2 * 3 + 0];
    const double c3 = a[0 * 3 + 1];
    return {7.0 / 4 + c1, 11.0 / 3 + c2, 1.0 + c3, 35.0 / 12, 5.0 / 3};
}

Mat3 reconstruct_skew(const std::array<double, 5>& g2) {
    Mat3 acc = mat3_zero();
    const auto& frames = magnetic_frames();
    for (int i = 0; i < 5; ++i) acc = acc + g2[i] * wedge(frames[i].k1, frames[i].k2);
    return acc;
}

Mat3 reconstruct_sym(const std::array<double, 6>& g2) {
    Mat3 acc = mat3_zero();
    const auto& frames = velocity_frames();
    for (int i = 0; i < 6; ++i) acc = acc + g2[i] * outer(frames[i].k1, frames[i].k1);
    return acc;
}

// ---- velocity weights ---------------------------------------------------

namespace {

// Orthonormal coordinates of a symmetric matrix (Frobenius-isometric).
std::array<double, 6> svec(const Mat3& s) {
    const double r2 = std::sqrt(2.0);
    return {s[0], s[4], s[8], r2 * s[1], r2 * s[2], r2 * s[5]};
}

struct VelocityWeightData {
    // Inverse of the 6x6 matrix whose columns are svec(k1 (x) k1).
    std::array<std::array<double, 6>, 6> inv;
    std::array<double, 6> row_norm;  // Euclidean norms of the rows of inv
    double eps_u;

    VelocityWeightData() {
        Eigen::Matrix<double, 6, 6> d;
        const auto& frames = velocity_frames();
        for (int c = 0; c < 6; ++c) {
            const auto col = svec(outer(frames[c].k1, frames[c].k1));
            for (int r = 0; r < 6; ++r) d(r, c) = col[r];
        }
        check_internal(std::abs(d.determinant()) > 1e-8,
                       "velocity dyads must span symmetric matrices");
        Eigen::Matrix<double, 6, 6> di = d.inverse();
        double worst = 0.0;
        for (int r = 0; r < 6; ++r) {
            double n2 = 0.0;
            for (int c = 0; c < 6; ++c) {
                inv[r][c] = di(r, c);
                n2 += di(r, c) * di(r, c);
            }
            row_norm[r] = std::sqrt(n2);
            worst = std::max(worst, row_norm[r]);
        }
        // Guarantee gamma^2 >= 1e-3 on the ball: the affine functional for
        // direction r changes by at most eps * |row_r| over |S-Id|_F <= eps.
        eps_u = (0.5 - 1e-3) / worst;
    }
};

const VelocityWeightData& velocity_weight_data() {
    static const VelocityWeightData data;
    return data;
}

}  // namespace

std::array<double, 6> gamma_u_squared(const Mat3& s) {
    const VelocityWeightData& d = velocity_weight_data();
    Mat3 dev = s - mat3_identity();
    const auto rhs = svec(dev);
    std::array<double, 6> g2{};
    for (int r = 0; r < 6; ++r) {
        double acc = 0.5;
        for (int c = 0; c < 6; ++c) acc += d.inv[r][c] * rhs[c];
        g2[r] = acc;
    }
    return g2;
}

double epsilon_b() { return 1.0; }

double epsilon_u() { return velocity_weight_data().eps_u; }

double gamma_b_floor() { return 1.0 - 1.0 / std::sqrt(2.0); }

double gamma_u_floor() { return 1e-3; }

double weight_c1_budget() {
    double total = 0.0;
    // Magnetic: the functional norms of c1, c2, c3 over skew matrices with
    // the Frobenius metric are 1/sqrt(2); directions 4 and 5 are constant.
    {
        const double base[5] = {7.0 / 4, 11.0 / 3, 1.0, 35.0 / 12, 5.0 / 3};
        const double fn[5] = {M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, 0.0, 0.0};
        for (int k = 0; k < 5; ++k) {
            const double hi = base[k] + epsilon_b() * fn[k];
            const double lo = base[k] - epsilon_b() * fn[k];
            const double sup_gamma = std::sqrt(hi);
            const double sup_grad = fn[k] > 0 ? fn[k] / (2.0 * std::sqrt(lo)) : 0.0;
            total += sup_gamma + sup_grad;
        }
    }
    {
        const VelocityWeightData& d = velocity_weight_data();
        for (int k = 0; k < 6; ++k) {
            const double hi = 0.5 + d.eps_u * d.row_norm[k];
            const double lo = 0.5 - d.eps_u * d.row_norm[k];
            const double sup_gamma = std::sqrt(hi);
            const double sup_grad = d.row_norm[k] / (2.0 * std::sqrt(lo));
            total += sup_gamma + sup_grad;
        }
    }
    return total;
}

std::string geometry_report() {
    std::ostringstream os;
    const int N = direction_scale();
    os << "direction frames (scaled by " << N << " to integer vectors)\n";
    auto print_family = [&os, N](const char* label, const Frame* frames, int count) {
        os << label << "\n";
        for (int i = 0; i < count; ++i) {
            char line[256];
            const auto k = frames[i].scaled(N, 0);
            const auto k1 = frames[i].scaled(N, 1);
            const auto k2 = frames[i].scaled(N, 2);
            std::snprintf(line, sizeof(line),
                          "  %d: k=(%ld,%ld,%ld) k1=(%ld,%ld,%ld) k2=(%ld,%ld,%ld)\n", i,
                          k[0], k[1], k[2], k1[0], k1[1], k1[2], k2[0], k2[1], k2[2]);
            os << line;
        }
    };
    print_family("magnetic family:", magnetic_frames().data(), 5);
    print_family("velocity family:", velocity_frames().data(), 6);
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "epsilon_b=%.6g epsilon_u=%.6g gamma_b_floor=%.6g gamma_u_floor=%.6g\n",
                  epsilon_b(), epsilon_u(), gamma_b_floor(), gamma_u_floor());
    os << buf;
    std::snprintf(buf, sizeof(buf), "weight C1 budget (all directions): %.6g\n",
                  weight_c1_budget());
    os << buf;
    return os.str();
}

}  // namespace mhdci
