#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lef {

using Rat = boost::multiprecision::cpp_rational;

/// Exact complex number with rational real and imaginary parts.
/// Forms a field: all four arithmetic operations stay exact.
struct GaussianRational {
    Rat re;
    Rat im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(Rat r) : re(std::move(r)), im(0) {}
    GaussianRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return {Rat(0), Rat(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    /// |z|^2, a non-negative rational.
    Rat norm() const { return re * re + im * im; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rat n = b.norm();
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::string str() const {
        std::ostringstream os;
        if (im == 0) {
            os << re;
        } else if (re == 0) {
            os << im << "*i";
        } else {
            os << re << (im > 0 ? "+" : "") << im << "*i";
        }
        return os.str();
    }
};

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline std::complex<double> to_complex(const GaussianRational& z) {
    return {to_double(z.re), to_double(z.im)};
}

/// Parse "a/b", "a", "-a/b". Throws std::invalid_argument on malformed input.
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw std::invalid_argument("malformed rational literal: " + s);
    }
    try {
        Rat r(s);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

/// Uniform interface over the two arithmetic modes. Code is templated on the
/// scalar type, so the modes can never mix inside a computation.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<GaussianRational> {
    static constexpr bool exact = true;
    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational from_int(long v) { return GaussianRational(v); }
    static GaussianRational conj(const GaussianRational& z) { return z.conj(); }
    static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
    /// i^k for any integer k.
    static GaussianRational i_power(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {Rat(1), Rat(0)};
            case 1: return {Rat(0), Rat(1)};
            case 2: return {Rat(-1), Rat(0)};
            default: return {Rat(0), Rat(-1)};
        }
    }
    static double abs(const GaussianRational& z) { return std::sqrt(to_double(z.norm())); }
};

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr bool exact = false;
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
    static bool is_zero(const std::complex<double>& z) { return z == std::complex<double>(0.0, 0.0); }
    static std::complex<double> i_power(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    static double abs(const std::complex<double>& z) { return std::abs(z); }
};

using Cplx = std::complex<double>;

}  // namespace lef
