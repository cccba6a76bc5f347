#include "loopmod/cyclotomic.hpp"

#include "loopmod/errors.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace loopmod {

namespace {

struct FieldTables {
    long L = 1;
    long phi = 1;
    std::vector<std::int64_t> poly;
    // xpow[j] = x^j mod Phi_L in the power basis, j in [0, L).
    std::vector<std::vector<std::int64_t>> xpow;
};

std::recursive_mutex table_mutex;
std::map<long, std::unique_ptr<FieldTables>> table_cache;

std::vector<std::int64_t> compute_cyclotomic(long L) {
    std::vector<std::int64_t> p(L + 1, 0);
    p[0] = -1;
    p[L] = 1;
    for (long d = 1; d < L; ++d) {
        if (L % d) continue;
        const auto& q = cyclotomic_polynomial(d);
        long dq = static_cast<long>(q.size()) - 1;
        long dp = static_cast<long>(p.size()) - 1;
        std::vector<std::int64_t> quot(dp - dq + 1, 0);
        for (long k = dp - dq; k >= 0; --k) {
            std::int64_t lead = p[k + dq];
            quot[k] = lead;
            for (long j = 0; j <= dq; ++j) p[k + j] -= lead * q[j];
        }
        for (long j = 0; j < dq; ++j)
            if (p[j] != 0) fail(ErrorKind::Config, "cyclotomic division not exact");
        p = std::move(quot);
    }
    return p;
}

const FieldTables& tables(long L) {
    if (L < 1) fail(ErrorKind::Config, "root-of-unity order must be positive");
    std::lock_guard<std::recursive_mutex> lock(table_mutex);
    auto it = table_cache.find(L);
    if (it != table_cache.end()) return *it->second;
    auto t = std::make_unique<FieldTables>();
    t->L = L;
    t->poly = compute_cyclotomic(L);
    t->phi = static_cast<long>(t->poly.size()) - 1;
    std::vector<std::int64_t> cur(t->phi, 0);
    cur[0] = 1;
    if (t->phi == 0) cur.assign(1, 1);
    for (long j = 0; j < L; ++j) {
        t->xpow.push_back(cur);
        std::vector<std::int64_t> next(t->phi, 0);
        std::int64_t carry = cur[t->phi - 1];
        for (long k = t->phi - 1; k > 0; --k) next[k] = cur[k - 1];
        next[0] = 0;
        for (long k = 0; k < t->phi; ++k) next[k] -= carry * t->poly[k];
        cur = std::move(next);
    }
    auto& ref = *t;
    table_cache.emplace(L, std::move(t));
    return ref;
}

std::vector<Rational> reduce_full(const std::vector<Rational>& full, const FieldTables& t) {
    std::vector<Rational> out(t.phi);
    for (long j = 0; j < t.L; ++j) {
        if (full[j] == 0) continue;
        const auto& row = t.xpow[j];
        for (long k = 0; k < t.phi; ++k)
            if (row[k]) out[k] += full[j] * Rational(static_cast<long>(row[k]));
    }
    return out;
}

void check_same_order(long a, long b) {
    if (a != b)
        fail(ErrorKind::Config, "root-of-unity orders differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

} // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(long L) {
    if (L < 1) fail(ErrorKind::Config, "cyclotomic index must be positive");
    std::lock_guard<std::recursive_mutex> lock(table_mutex);
    static std::map<long, std::unique_ptr<std::vector<std::int64_t>>> polys;
    auto it = polys.find(L);
    if (it != polys.end()) return *it->second;
    auto p = std::make_unique<std::vector<std::int64_t>>(compute_cyclotomic(L));
    auto& ref = *p;
    polys.emplace(L, std::move(p));
    return ref;
}

long euler_phi(long L) { return tables(L).phi; }

CycScalar::CycScalar(Rational coeff, long exponent, long order) : q_(std::move(coeff)), e_(exponent), L_(order) {
    if (L_ < 1) fail(ErrorKind::Config, "root-of-unity order must be positive");
    if (q_ == 0) fail(ErrorKind::Input, "scalar coefficient must be nonzero");
    q_.canonicalize();
    normalize();
}

void CycScalar::normalize() {
    e_ %= L_;
    if (e_ < 0) e_ += L_;
    if (L_ % 2 == 0 && e_ >= L_ / 2) {
        e_ -= L_ / 2;
        q_ = -q_;
    }
}

CycScalar CycScalar::operator*(const CycScalar& o) const {
    check_same_order(L_, o.L_);
    return CycScalar(q_ * o.q_, e_ + o.e_, L_);
}

CycScalar CycScalar::operator/(const CycScalar& o) const {
    check_same_order(L_, o.L_);
    return CycScalar(q_ / o.q_, e_ - o.e_, L_);
}

CycScalar CycScalar::inverse() const { return CycScalar(1 / q_, -e_, L_); }

CycScalar CycScalar::pow(long m) const {
    long e = static_cast<long>((static_cast<__int128>(e_) * m) % L_);
    return CycScalar(loopmod::pow(q_, m), e, L_);
}

CycScalar CycScalar::lifted(long order) const {
    if (order % L_ != 0)
        fail(ErrorKind::Config, "cannot lift order " + std::to_string(L_) + " to " + std::to_string(order));
    return CycScalar(q_, e_ * (order / L_), order);
}

Rational CycScalar::angle() const {
    if (!is_root_of_unity()) fail(ErrorKind::Input, "angle of a non-unit scalar");
    Rational a(e_, L_);
    if (q_ < 0) a += Rational(1, 2);
    if (a >= 1) a -= 1;
    a.canonicalize();
    return a;
}

std::complex<double> CycScalar::to_complex() const {
    double th = 2.0 * std::numbers::pi * static_cast<double>(e_) / static_cast<double>(L_);
    return q_.get_d() * std::complex<double>(std::cos(th), std::sin(th));
}

std::string CycScalar::to_string() const {
    std::string s = q_.get_str();
    if (e_ != 0) s += "*z" + std::to_string(L_) + "^" + std::to_string(e_);
    return s;
}

bool CycScalar::operator<(const CycScalar& o) const {
    check_same_order(L_, o.L_);
    if (q_ != o.q_) return q_ < o.q_;
    return e_ < o.e_;
}

bool root_of_unity_order_divides(const CycScalar& s, long k) {
    if (!s.is_root_of_unity()) return false;
    Rational a = s.angle() * k;
    a.canonicalize();
    return is_integer(a);
}

long common_order(std::span<const CycScalar> values) {
    long L = 1;
    for (const auto& v : values) L = lcm64(L, v.order());
    return L;
}

void CycVector::add(const CycScalar& s, const Rational& weight) {
    long e = s.exponent();
    if (s.order() != L_) {
        if (L_ % s.order() != 0)
            fail(ErrorKind::Config, "scalar order " + std::to_string(s.order()) + " does not divide " +
                                        std::to_string(L_));
        e *= L_ / s.order();
    }
    c_[e] += s.coeff() * weight;
}

void CycVector::add_root(long exponent, const Rational& weight) { c_[mod64(exponent, L_)] += weight; }

CycNumber CycVector::reduced() const { return CycNumber::from_coeffs(reduce_full(c_, tables(L_)), L_); }

bool CycVector::is_zero() const {
    const auto& t = tables(L_);
    for (long k = 0; k < t.phi; ++k) {
        Rational acc;
        for (long j = 0; j < L_; ++j)
            if (c_[j] != 0 && t.xpow[j][k]) acc += c_[j] * Rational(static_cast<long>(t.xpow[j][k]));
        if (acc != 0) return false;
    }
    return true;
}

std::complex<double> CycVector::to_complex() const {
    std::complex<double> z;
    for (long j = 0; j < L_; ++j) {
        if (c_[j] == 0) continue;
        double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(L_);
        z += c_[j].get_d() * std::complex<double>(std::cos(th), std::sin(th));
    }
    return z;
}

bool sum_is_zero(std::span<const CycScalar> terms) {
    if (terms.empty()) return true;
    CycVector acc(common_order(terms));
    for (const auto& t : terms) acc.add(t);
    return acc.is_zero();
}

CycNumber::CycNumber(long order) : L_(order), c_(tables(order).phi) {}

CycNumber::CycNumber(const Rational& q, long order) : CycNumber(order) { c_[0] = q; }

CycNumber::CycNumber(const CycScalar& s, long order) : L_(order) {
    CycVector v(order);
    v.add(s);
    c_ = reduce_full(v.coeffs(), tables(order));
}

CycNumber CycNumber::from_coeffs(std::vector<Rational> coeffs, long order) {
    CycNumber n(order);
    if (static_cast<long>(coeffs.size()) != static_cast<long>(n.c_.size()))
        fail(ErrorKind::Input, "wrong number of cyclotomic coefficients");
    n.c_ = std::move(coeffs);
    return n;
}

bool CycNumber::is_zero() const {
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

bool CycNumber::is_one() const {
    if (c_[0] != 1) return false;
    for (size_t k = 1; k < c_.size(); ++k)
        if (c_[k] != 0) return false;
    return true;
}

bool CycNumber::is_rational() const {
    for (size_t k = 1; k < c_.size(); ++k)
        if (c_[k] != 0) return false;
    return true;
}

CycNumber CycNumber::operator+(const CycNumber& o) const {
    CycNumber r = *this;
    r += o;
    return r;
}

CycNumber CycNumber::operator-(const CycNumber& o) const {
    CycNumber r = *this;
    r -= o;
    return r;
}

CycNumber& CycNumber::operator+=(const CycNumber& o) {
    check_same_order(L_, o.L_);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& o) {
    check_same_order(L_, o.L_);
    for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

CycNumber CycNumber::operator-() const {
    CycNumber r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

CycNumber CycNumber::operator*(const CycNumber& o) const {
    check_same_order(L_, o.L_);
    long phi = static_cast<long>(c_.size());
    if (phi == 1) return CycNumber(c_[0] * o.c_[0], L_);
    std::vector<Rational> full(L_);
    for (long i = 0; i < phi; ++i) {
        if (c_[i] == 0) continue;
        for (long j = 0; j < phi; ++j)
            if (o.c_[j] != 0) full[(i + j) % L_] += c_[i] * o.c_[j];
    }
    return from_coeffs(reduce_full(full, tables(L_)), L_);
}

CycNumber CycNumber::inverse() const {
    if (is_zero()) fail(ErrorKind::Input, "inverse of zero");
    long phi = static_cast<long>(c_.size());
    if (phi == 1) return CycNumber(1 / c_[0], L_);
    // Columns: this * x^j; solve M y = 1.
    std::vector<std::vector<Rational>> m(phi, std::vector<Rational>(phi + 1));
    CycNumber xj(Rational(1), L_);
    CycNumber x = from_coeffs([&] {
        std::vector<Rational> v(phi);
        v[1] = 1;
        return v;
    }(), L_);
    for (long j = 0; j < phi; ++j) {
        CycNumber col = *this * xj;
        for (long i = 0; i < phi; ++i) m[i][j] = col.c_[i];
        xj = xj * x;
    }
    m[0][phi] = 1;
    for (long col = 0; col < phi; ++col) {
        long piv = col;
        while (m[piv][col] == 0) ++piv;
        std::swap(m[piv], m[col]);
        Rational inv = 1 / m[col][col];
        for (long k = col; k <= phi; ++k) m[col][k] *= inv;
        for (long r = 0; r < phi; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (long k = col; k <= phi; ++k) m[r][k] -= f * m[col][k];
        }
    }
    std::vector<Rational> y(phi);
    for (long i = 0; i < phi; ++i) y[i] = m[i][phi];
    return from_coeffs(std::move(y), L_);
}

bool CycNumber::operator<(const CycNumber& o) const {
    check_same_order(L_, o.L_);
    for (size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != o.c_[k]) return c_[k] < o.c_[k];
    return false;
}

std::complex<double> CycNumber::to_complex() const {
    std::complex<double> z;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(L_);
        z += c_[j].get_d() * std::complex<double>(std::cos(th), std::sin(th));
    }
    return z;
}

std::string CycNumber::to_string() const {
    std::string s;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        if (!s.empty()) s += " + ";
        s += c_[j].get_str();
        if (j > 0) s += "*z" + std::to_string(L_) + "^" + std::to_string(j);
    }
    return s.empty() ? "0" : s;
}

} // namespace loopmod
