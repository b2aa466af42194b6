#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace hexagg {

/// Finite Laurent polynomial sum_{e=Lo..Hi} c_e t^e with exact coefficient
/// arithmetic. Evaluated only for t > 0.
template <int Lo, int Hi>
struct LaurentPoly {
    static_assert(Lo <= 0 && Hi >= 0);
    static constexpr int kMinExp = Lo;
    static constexpr int kMaxExp = Hi;
    static constexpr std::size_t kSize = static_cast<std::size_t>(Hi - Lo + 1);

    std::array<double, kSize> c{};

    double& coeff(int e) { return c[static_cast<std::size_t>(e - Lo)]; }
    double coeff(int e) const { return c[static_cast<std::size_t>(e - Lo)]; }

    double operator()(double t) const {
        double pos = 0.0;
        for (int e = Hi; e >= 1; --e) pos = (pos + coeff(e)) * t;
        double neg = 0.0;
        const double inv = 1.0 / t;
        for (int e = Lo; e <= -1; ++e) neg = (neg + coeff(e)) * inv;
        return pos + coeff(0) + neg;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (std::size_t i = 0; i < kSize; ++i) c[i] += o.c[i];
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (std::size_t i = 0; i < kSize; ++i) c[i] -= o.c[i];
        return *this;
    }
    LaurentPoly& operator*=(double s) {
        for (double& x : c) x *= s;
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, double s) { return a *= s; }
    friend LaurentPoly operator*(double s, LaurentPoly a) { return a *= s; }

    bool is_zero() const {
        for (double x : c)
            if (x != 0.0) return false;
        return true;
    }

    bool operator==(const LaurentPoly&) const = default;
};

/// Per-view integral a t^2 + b t + c + d/t + e/t^2.
using ViewPoly = LaurentPoly<-2, 2>;

/// Per-bucket expected in-box fraction on one index time-interval:
/// a6 t^6 + ... + a1 t + c + d1/t + ... + d6/t^6.
using GeneralFormPoly = LaurentPoly<-6, 6>;

/// Exact product of three view polynomials.
inline GeneralFormPoly multiply(const ViewPoly& x, const ViewPoly& y, const ViewPoly& z) {
    LaurentPoly<-4, 4> xy;
    for (int i = -2; i <= 2; ++i) {
        if (x.coeff(i) == 0.0) continue;
        for (int j = -2; j <= 2; ++j) xy.coeff(i + j) += x.coeff(i) * y.coeff(j);
    }
    GeneralFormPoly out;
    for (int i = -4; i <= 4; ++i) {
        if (xy.coeff(i) == 0.0) continue;
        for (int j = -2; j <= 2; ++j) out.coeff(i + j) += xy.coeff(i) * z.coeff(j);
    }
    return out;
}

/// Coefficients (ascending powers t^0..t^12) of t^7 * d/dt p(t).
/// For t > 0 this numerator has the same sign as p'(t).
inline std::array<double, 13> derivative_numerator(const GeneralFormPoly& p) {
    std::array<double, 13> num{};
    for (int e = -6; e <= 6; ++e) num[static_cast<std::size_t>(e + 6)] = e * p.coeff(e);
    return num;
}

/// Horner evaluation of an ascending-power polynomial.
template <std::size_t N>
double evaluate_ascending(const std::array<double, N>& a, double t) {
    double r = 0.0;
    for (std::size_t i = N; i-- > 0;) r = r * t + a[i];
    return r;
}

}  // namespace hexagg
