#pragma once

#include <array>
#include <cmath>

namespace mhdci {

// Small dense 3-vector / 3x3-matrix helpers used throughout the pipeline.
// Matrices are row-major: m[3*i + j] is row i, column j.
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<double, 9>;

inline constexpr Mat3 mat3_zero() { return {0, 0, 0, 0, 0, 0, 0, 0, 0}; }
inline constexpr Mat3 mat3_identity() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm2(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Vec3 operator*(double s, const Vec3& a) {
    return {s * a[0], s * a[1], s * a[2]};
}

inline Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (int i = 0; i < 9; ++i) c[i] = a[i] + b[i];
    return c;
}

inline Mat3 operator-(const Mat3& a, const Mat3& b) {
    Mat3 c;
    for (int i = 0; i < 9; ++i) c[i] = a[i] - b[i];
    return c;
}

inline Mat3 operator*(double s, const Mat3& a) {
    Mat3 c;
    for (int i = 0; i < 9; ++i) c[i] = s * a[i];
    return c;
}

// Outer product a b^T.
inline Mat3 outer(const Vec3& a, const Vec3& b) {
    return {a[0] * b[0], a[0] * b[1], a[0] * b[2],
            a[1] * b[0], a[1] * b[1], a[1] * b[2],
            a[2] * b[0], a[2] * b[1], a[2] * b[2]};
}

// Antisymmetrized outer product a b^T - b a^T.
inline Mat3 wedge(const Vec3& a, const Vec3& b) {
    return outer(a, b) - outer(b, a);
}

inline Mat3 transpose(const Mat3& m) {
    return {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
}

inline double trace(const Mat3& m) { return m[0] + m[4] + m[8]; }

inline Mat3 sym_part(const Mat3& m) { return 0.5 * (m + transpose(m)); }

inline Mat3 skew_part(const Mat3& m) { return 0.5 * (m - transpose(m)); }

// Traceless part m - (tr m / 3) Id.
inline Mat3 traceless(const Mat3& m) {
    const double t = trace(m) / 3.0;
    Mat3 c = m;
    c[0] -= t;
    c[4] -= t;
    c[8] -= t;
    return c;
}

inline Vec3 matvec(const Mat3& m, const Vec3& v) {
    return {m[0] * v[0] + m[1] * v[1] + m[2] * v[2],
            m[3] * v[0] + m[4] * v[1] + m[5] * v[2],
            m[6] * v[0] + m[7] * v[1] + m[8] * v[2]};
}

inline double frobenius(const Mat3& m) {
    double s = 0;
    for (double x : m) s += x * x;
    return std::sqrt(s);
}

inline double frobenius_inner(const Mat3& a, const Mat3& b) {
    double s = 0;
    for (int i = 0; i < 9; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace mhdci
