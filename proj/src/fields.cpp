#include "mhdci/fields.hpp"

#include <cmath>
#include <cstdio>

namespace mhdci {

void require_same_grid(int na, int nb, const char* what) {
    if (na != nb) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "grid mismatch in %s: %d vs %d", what, na, nb);
        throw internal_error(buf);
    }
}

namespace {

// Accumulates sum of |f|^p over nodes, with |.| the pointwise Euclidean /
// Frobenius magnitude across however many components are supplied.
template <std::size_t NC>
double sum_abs_pow(const std::array<const std::vector<double>*, NC>& comps, double p) {
    const std::size_t n = comps[0]->size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m2 = 0.0;
        for (std::size_t c = 0; c < NC; ++c) {
            const double x = (*comps[c])[i];
            m2 += x * x;
        }
        if (p == 1.0) {
            acc += std::sqrt(m2);
        } else if (p == 2.0) {
            acc += m2;
        } else {
            acc += std::pow(m2, 0.5 * p);
        }
    }
    return acc;
}

template <std::size_t NC>
double max_abs(const std::array<const std::vector<double>*, NC>& comps) {
    const std::size_t n = comps[0]->size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m2 = 0.0;
        for (std::size_t c = 0; c < NC; ++c) {
            const double x = (*comps[c])[i];
            m2 += x * x;
        }
        if (m2 > best) best = m2;
    }
    return std::sqrt(best);
}

}  // namespace

double integral_lp_norm(const ScalarField& f, double p) {
    check_internal(p >= 1.0, "lp norm requires p >= 1");
    const double s = sum_abs_pow<1>({&f.v}, p);
    return std::pow(cell_volume(f.n) * s, 1.0 / p);
}

double integral_lp_norm(const VectorField& f, double p) {
    check_internal(p >= 1.0, "lp norm requires p >= 1");
    const double s = sum_abs_pow<3>({&f.c[0], &f.c[1], &f.c[2]}, p);
    return std::pow(cell_volume(f.n) * s, 1.0 / p);
}

double integral_lp_norm(const TensorField& f, double p) {
    check_internal(p >= 1.0, "lp norm requires p >= 1");
    std::array<const std::vector<double>*, 9> comps;
    for (int i = 0; i < 9; ++i) comps[i] = &f.c[i];
    const double s = sum_abs_pow<9>(comps, p);
    return std::pow(cell_volume(f.n) * s, 1.0 / p);
}

namespace {
const double kTorusVolume = 8.0 * M_PI * M_PI * M_PI;
}

double mean_lp_norm(const ScalarField& f, double p) {
    return integral_lp_norm(f, p) * std::pow(kTorusVolume, -1.0 / p);
}
double mean_lp_norm(const VectorField& f, double p) {
    return integral_lp_norm(f, p) * std::pow(kTorusVolume, -1.0 / p);
}
double mean_lp_norm(const TensorField& f, double p) {
    return integral_lp_norm(f, p) * std::pow(kTorusVolume, -1.0 / p);
}

double linf_norm(const ScalarField& f) { return max_abs<1>({&f.v}); }
double linf_norm(const VectorField& f) {
    return max_abs<3>({&f.c[0], &f.c[1], &f.c[2]});
}
double linf_norm(const TensorField& f) {
    std::array<const std::vector<double>*, 9> comps;
    for (int i = 0; i < 9; ++i) comps[i] = &f.c[i];
    return max_abs<9>(comps);
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.v) s += x;
    return s / static_cast<double>(f.v.size());
}

double inner_l2(const VectorField& a, const VectorField& b) {
    require_same_grid(a.n, b.n, "inner_l2");
    double s = 0.0;
    const std::size_t m = a.c[0].size();
    for (std::size_t i = 0; i < m; ++i)
        s += a.c[0][i] * b.c[0][i] + a.c[1][i] * b.c[1][i] + a.c[2][i] * b.c[2][i];
    return s * cell_volume(a.n);
}

namespace {

template <typename F, typename Op>
F zip(const F& a, const F& b, Op op, const char* what) {
    require_same_grid(a.n, b.n, what);
    F out = a;
    if constexpr (std::is_same_v<F, ScalarField>) {
        for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = op(a.v[i], b.v[i]);
    } else {
        for (std::size_t c = 0; c < out.c.size(); ++c)
            for (std::size_t i = 0; i < out.c[c].size(); ++i)
                out.c[c][i] = op(a.c[c][i], b.c[c][i]);
    }
    return out;
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x + y; }, "scalar +");
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x - y; }, "scalar -");
}
VectorField operator+(const VectorField& a, const VectorField& b) {
    return zip(a, b, [](double x, double y) { return x + y; }, "vector +");
}
VectorField operator-(const VectorField& a, const VectorField& b) {
    return zip(a, b, [](double x, double y) { return x - y; }, "vector -");
}
TensorField operator+(const TensorField& a, const TensorField& b) {
    return zip(a, b, [](double x, double y) { return x + y; }, "tensor +");
}
TensorField operator-(const TensorField& a, const TensorField& b) {
    return zip(a, b, [](double x, double y) { return x - y; }, "tensor -");
}

ScalarField scale(double s, const ScalarField& a) {
    ScalarField out = a;
    for (double& x : out.v) x *= s;
    return out;
}
VectorField scale(double s, const VectorField& a) {
    VectorField out = a;
    for (auto& c : out.c)
        for (double& x : c) x *= s;
    return out;
}
TensorField scale(double s, const TensorField& a) {
    TensorField out = a;
    for (auto& c : out.c)
        for (double& x : c) x *= s;
    return out;
}

void add_scaled(ScalarField& a, double s, const ScalarField& b) {
    require_same_grid(a.n, b.n, "add_scaled");
    for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] += s * b.v[i];
}
void add_scaled(VectorField& a, double s, const VectorField& b) {
    require_same_grid(a.n, b.n, "add_scaled");
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < a.c[c].size(); ++i) a.c[c][i] += s * b.c[c][i];
}
void add_scaled(TensorField& a, double s, const TensorField& b) {
    require_same_grid(a.n, b.n, "add_scaled");
    for (int c = 0; c < 9; ++c)
        for (std::size_t i = 0; i < a.c[c].size(); ++i) a.c[c][i] += s * b.c[c][i];
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x * y; }, "multiply");
}

TensorField outer_product(const VectorField& a, const VectorField& b) {
    require_same_grid(a.n, b.n, "outer_product");
    TensorField t(a.n);
    const std::size_t m = a.c[0].size();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto& dst = t.c[3 * i + j];
            const auto& ai = a.c[i];
            const auto& bj = b.c[j];
            for (std::size_t k = 0; k < m; ++k) dst[k] = ai[k] * bj[k];
        }
    return t;
}

ScalarField dot_product(const VectorField& a, const VectorField& b) {
    require_same_grid(a.n, b.n, "dot_product");
    ScalarField s(a.n);
    const std::size_t m = a.c[0].size();
    for (std::size_t k = 0; k < m; ++k)
        s.v[k] = a.c[0][k] * b.c[0][k] + a.c[1][k] * b.c[1][k] + a.c[2][k] * b.c[2][k];
    return s;
}

TensorField sym_part(const TensorField& t) {
    TensorField out(t.n);
    const std::size_t m = t.c[0].size();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto& dst = out.c[3 * i + j];
            const auto& ta = t.c[3 * i + j];
            const auto& tb = t.c[3 * j + i];
            for (std::size_t k = 0; k < m; ++k) dst[k] = 0.5 * (ta[k] + tb[k]);
        }
    return out;
}

TensorField skew_part(const TensorField& t) {
    TensorField out(t.n);
    const std::size_t m = t.c[0].size();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto& dst = out.c[3 * i + j];
            const auto& ta = t.c[3 * i + j];
            const auto& tb = t.c[3 * j + i];
            for (std::size_t k = 0; k < m; ++k) dst[k] = 0.5 * (ta[k] - tb[k]);
        }
    return out;
}

TensorField traceless_part(const TensorField& t) {
    TensorField out = t;
    const std::size_t m = t.c[0].size();
    for (std::size_t k = 0; k < m; ++k) {
        const double tr3 = (t.c[0][k] + t.c[4][k] + t.c[8][k]) / 3.0;
        out.c[0][k] -= tr3;
        out.c[4][k] -= tr3;
        out.c[8][k] -= tr3;
    }
    return out;
}

ScalarField trace_field(const TensorField& t) {
    ScalarField s(t.n);
    const std::size_t m = t.c[0].size();
    for (std::size_t k = 0; k < m; ++k) s.v[k] = t.c[0][k] + t.c[4][k] + t.c[8][k];
    return s;
}

double max_asymmetry(const TensorField& t) {
    double best = 0.0;
    const std::size_t m = t.c[0].size();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (std::size_t k = 0; k < m; ++k)
                best = std::max(best, 0.5 * std::abs(t.c[3 * i + j][k] - t.c[3 * j + i][k]));
    return best;
}

double max_symmetry(const TensorField& t) {
    double best = 0.0;
    const std::size_t m = t.c[0].size();
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            for (std::size_t k = 0; k < m; ++k)
                best = std::max(best, 0.5 * std::abs(t.c[3 * i + j][k] + t.c[3 * j + i][k]));
    return best;
}

double max_trace(const TensorField& t) {
    double best = 0.0;
    const std::size_t m = t.c[0].size();
    for (std::size_t k = 0; k < m; ++k)
        best = std::max(best, std::abs(t.c[0][k] + t.c[4][k] + t.c[8][k]));
    return best;
}

}  // namespace mhdci
