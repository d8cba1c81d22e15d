#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace curvewidth {

// Fixed-capacity vector for ambient coordinates. Supports dimensions up to 7,
// which covers the working range (manifold dimension <= 6).
struct Vec {
    static constexpr int kCapacity = 8;

    std::array<double, kCapacity> a{};
    int n = 0;

    Vec() = default;
    explicit Vec(int size) : n(size) {
        if (size < 0 || size > kCapacity) throw std::invalid_argument("Vec: bad size");
    }
    Vec(std::initializer_list<double> xs) : n(static_cast<int>(xs.size())) {
        if (n > kCapacity) throw std::invalid_argument("Vec: bad size");
        int i = 0;
        for (double x : xs) a[i++] = x;
    }

    int size() const { return n; }
    double& operator[](int i) { return a[i]; }
    double operator[](int i) const { return a[i]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n; ++i) a[i] += o.a[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < n; ++i) a[i] -= o.a[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < n; ++i) a[i] *= s;
        return *this;
    }
};

inline Vec operator+(Vec x, const Vec& y) { return x += y; }
inline Vec operator-(Vec x, const Vec& y) { return x -= y; }
inline Vec operator*(Vec x, double s) { return x *= s; }
inline Vec operator*(double s, Vec x) { return x *= s; }
inline Vec operator-(Vec x) { return x *= -1.0; }

inline double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (int i = 0; i < x.n; ++i) s += x.a[i] * y.a[i];
    return s;
}

inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

inline Vec normalized(const Vec& x) {
    double nrm = norm(x);
    if (nrm == 0.0) throw std::domain_error("normalized: zero vector");
    return x * (1.0 / nrm);
}

// x + s*y without a temporary per component.
inline Vec axpy(double s, const Vec& y, Vec x) {
    for (int i = 0; i < x.n; ++i) x.a[i] += s * y.a[i];
    return x;
}

inline bool approx_equal(const Vec& x, const Vec& y, double tol) {
    if (x.n != y.n) return false;
    for (int i = 0; i < x.n; ++i)
        if (std::abs(x.a[i] - y.a[i]) > tol) return false;
    return true;
}

}  // namespace curvewidth
