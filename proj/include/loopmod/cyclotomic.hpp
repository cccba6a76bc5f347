#pragma once

#include "loopmod/rational.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace loopmod {

// Nonzero rational multiple of a root of unity: coeff * zeta_order^exponent.
// Canonical form: 0 <= exponent < order, and exponent < order/2 when order
// is even (zeta^(order/2) = -1 is folded into the sign of coeff).
class CycScalar {
public:
    CycScalar() : q_(1), e_(0), L_(1) {}
    CycScalar(Rational coeff, long exponent, long order);

    static CycScalar rational(const Rational& q, long order = 1) { return CycScalar(q, 0, order); }
    static CycScalar root(long exponent, long order) { return CycScalar(Rational(1), exponent, order); }

    const Rational& coeff() const { return q_; }
    long exponent() const { return e_; }
    long order() const { return L_; }

    CycScalar operator*(const CycScalar& o) const;
    CycScalar operator/(const CycScalar& o) const;
    CycScalar inverse() const;
    CycScalar pow(long m) const;
    CycScalar operator-() const { return CycScalar(-q_, e_, L_); }
    // Same value written over a multiple of the current order.
    CycScalar lifted(long order) const;

    bool is_root_of_unity() const { return abs(q_) == 1; }
    // For roots of unity: the value is exp(2 pi i * angle), angle in [0,1).
    Rational angle() const;

    std::complex<double> to_complex() const;
    std::string to_string() const;

    bool operator==(const CycScalar& o) const { return L_ == o.L_ && e_ == o.e_ && q_ == o.q_; }
    bool operator!=(const CycScalar& o) const { return !(*this == o); }
    // Lexicographic on (coeff, exponent); orders must agree.
    bool operator<(const CycScalar& o) const;

private:
    void normalize();

    Rational q_;
    long e_;
    long L_;
};

bool root_of_unity_order_divides(const CycScalar& s, long k);
long common_order(std::span<const CycScalar> values);

// Coefficients of the L-th cyclotomic polynomial, lowest degree first.
const std::vector<std::int64_t>& cyclotomic_polynomial(long L);
long euler_phi(long L);

class CycNumber;

// Formal sum of multiples of zeta_L^j for j in [0,L).
class CycVector {
public:
    explicit CycVector(long order = 1) : L_(order), c_(order) {}

    void add(const CycScalar& s, const Rational& weight = Rational(1));
    void add_root(long exponent, const Rational& weight);
    long order() const { return L_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    CycNumber reduced() const;
    bool is_zero() const;
    std::complex<double> to_complex() const;

private:
    long L_;
    std::vector<Rational> c_;
};

bool sum_is_zero(std::span<const CycScalar> terms);

// Element of Q(zeta_L) in the power basis 1, zeta, ..., zeta^(phi(L)-1).
class CycNumber {
public:
    explicit CycNumber(long order = 1);
    CycNumber(const Rational& q, long order);
    CycNumber(const CycScalar& s, long order);

    static CycNumber from_coeffs(std::vector<Rational> coeffs, long order);

    long order() const { return L_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    // Defined only for rational values.
    bool is_rational() const;

    CycNumber operator+(const CycNumber& o) const;
    CycNumber operator-(const CycNumber& o) const;
    CycNumber operator*(const CycNumber& o) const;
    CycNumber operator-() const;
    CycNumber& operator+=(const CycNumber& o);
    CycNumber& operator-=(const CycNumber& o);
    CycNumber& operator*=(const CycNumber& o) { return *this = *this * o; }
    CycNumber inverse() const;

    bool operator==(const CycNumber& o) const { return L_ == o.L_ && c_ == o.c_; }
    bool operator!=(const CycNumber& o) const { return !(*this == o); }
    bool operator<(const CycNumber& o) const;

    std::complex<double> to_complex() const;
    std::string to_string() const;

private:
    long L_;
    std::vector<Rational> c_;
};

} // namespace loopmod
