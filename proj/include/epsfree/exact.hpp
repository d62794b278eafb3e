#pragma once

// Exact scalars: GMP rationals and Gaussian rationals (re + i im with
// rational parts), plus a dense exact linear solver.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace epsfree {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// "p/q" with q >= 1, always including the denominator.
std::string to_string(const Rational& value);
/// Accepts "p", "-p", "p/q" (whitespace-free). Throws ValidationError.
Rational parse_rational(std::string_view text);

/// N^e as an exact integer.
mpz_class integer_power(std::int64_t base, int exponent);
/// N^e for any integer e (negative allowed, base != 0).
Rational rational_power(std::int64_t base, int exponent);

class GaussRational {
public:
    GaussRational() = default;
    GaussRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
    GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
    GaussRational(int re) : re_(re) {}  // NOLINT(google-explicit-constructor)

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    GaussRational conj() const { return {re_, -im_}; }
    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussRational& operator+=(const GaussRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussRational& operator-=(const GaussRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussRational& operator*=(const GaussRational& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        im_ = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        return *this;
    }
    GaussRational& operator/=(const Rational& d) {
        re_ /= d;
        im_ /= d;
        return *this;
    }

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const Rational& d) { return a /= d; }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

/// Scalar traits shared by the exact and floating-point code paths.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussRational> {
    static constexpr bool exact = true;
    static GaussRational from_rational(const Rational& r) { return GaussRational(r); }
    static Complex to_complex(const GaussRational& v) { return v.to_complex(); }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static Complex from_rational(const Rational& r) { return {r.get_d(), 0.0}; }
    static Complex to_complex(const Complex& v) { return v; }
};

/// Scalar division by a positive integer, for both scalar kinds.
inline GaussRational divide(const GaussRational& v, const mpz_class& d) { return v / Rational(d); }
inline Complex divide(const Complex& v, const mpz_class& d) { return v / d.get_d(); }

/// Solves A x = b exactly by Gauss-Jordan elimination. Throws ValidationError if A is singular.
std::vector<Rational> exact_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

/// Exact inverse of a square matrix. Throws ValidationError if singular.
std::vector<std::vector<Rational>> exact_inverse(std::vector<std::vector<Rational>> a);

}  // namespace epsfree
