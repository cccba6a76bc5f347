#include "loopmod/lattice.hpp"

#include "loopmod/errors.hpp"
#include "loopmod/rational.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace loopmod {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::Unsupported, "integer overflow in lattice arithmetic");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::Unsupported, "integer overflow in lattice arithmetic");
    return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// x*a + y*b = g = gcd(a, b) >= 0
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        std::int64_t q = floor_div(a, b);
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

void axpy(IntVec& dst, std::int64_t c, const IntVec& src) {
    if (c == 0) return;
    for (size_t k = 0; k < dst.size(); ++k) dst[k] = checked_add(dst[k], checked_mul(c, src[k]));
}

std::vector<int> identity_ordering(int n) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 0);
    return o;
}

} // namespace

Lattice::Lattice(int n) : n_(n), ordering_(identity_ordering(n)), rows_(n, IntVec(n, 0)) {}

Lattice Lattice::from_generators(int n, const std::vector<IntVec>& generators, std::vector<int> ordering) {
    Lattice L(n);
    if (!ordering.empty()) {
        std::vector<int> sorted = ordering;
        std::sort(sorted.begin(), sorted.end());
        if (static_cast<int>(ordering.size()) != n || sorted != identity_ordering(n))
            fail(ErrorKind::Input, "lattice ordering is not a permutation");
        L.ordering_ = std::move(ordering);
    }
    for (const auto& g : generators) L.insert(g);
    return L;
}

Lattice Lattice::full(int n, std::vector<int> ordering) {
    std::vector<IntVec> gens;
    for (int i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        gens.push_back(e);
    }
    return from_generators(n, gens, std::move(ordering));
}

Lattice Lattice::diagonal(const IntVec& periods, std::vector<int> ordering) {
    int n = static_cast<int>(periods.size());
    std::vector<IntVec> gens;
    for (int i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = periods[i];
        gens.push_back(e);
    }
    return from_generators(n, gens, std::move(ordering));
}

IntVec Lattice::to_perm(const IntVec& m) const {
    if (static_cast<int>(m.size()) != n_) fail(ErrorKind::Input, "vector length does not match lattice rank");
    IntVec w(n_);
    for (int j = 0; j < n_; ++j) w[j] = m[ordering_[j]];
    return w;
}

IntVec Lattice::from_perm(const IntVec& w) const {
    IntVec m(n_);
    for (int j = 0; j < n_; ++j) m[ordering_[j]] = w[j];
    return m;
}

void Lattice::insert(const IntVec& m) { insert_perm(to_perm(m)); }

void Lattice::insert_perm(IntVec v) {
    for (int j = n_ - 1; j >= 0; --j) {
        if (v[j] == 0) continue;
        IntVec& row = rows_[j];
        if (row[j] == 0) {
            if (v[j] < 0)
                for (auto& x : v) x = -x;
            row = std::move(v);
            normalize();
            return;
        }
        std::int64_t a = row[j], b = v[j], x, y;
        std::int64_t g = ext_gcd(a, b, x, y);
        IntVec combined(n_, 0);
        axpy(combined, x, row);
        axpy(combined, y, v);
        IntVec rest(n_, 0);
        axpy(rest, b / g, row);
        axpy(rest, -(a / g), v);
        row = std::move(combined);
        v = std::move(rest);
    }
    normalize();
}

void Lattice::normalize() {
    for (int j = 0; j < n_; ++j)
        if (rows_[j][j] < 0)
            for (auto& x : rows_[j]) x = -x;
    for (int j = n_ - 1; j >= 0; --j) {
        std::int64_t d = rows_[j][j];
        if (d == 0) continue;
        for (int i = j + 1; i < n_; ++i) {
            std::int64_t c = floor_div(rows_[i][j], d);
            axpy(rows_[i], -c, rows_[j]);
        }
    }
}

std::vector<IntVec> Lattice::basis() const {
    std::vector<IntVec> out;
    for (const auto& r : rows_)
        if (std::any_of(r.begin(), r.end(), [](std::int64_t x) { return x != 0; })) out.push_back(from_perm(r));
    return out;
}

IntVec Lattice::pivots() const {
    IntVec d(n_);
    for (int j = 0; j < n_; ++j) d[j] = rows_[j][j];
    return d;
}

bool Lattice::full_rank() const {
    for (int j = 0; j < n_; ++j)
        if (rows_[j][j] == 0) return false;
    return true;
}

std::int64_t Lattice::index() const {
    std::int64_t idx = 1;
    for (int j = 0; j < n_; ++j) {
        if (rows_[j][j] == 0) fail(ErrorKind::InfiniteIndex, "lattice is rank-deficient");
        idx = checked_mul(idx, rows_[j][j]);
    }
    return idx;
}

bool Lattice::contains(const IntVec& m) const {
    IntVec w = to_perm(m);
    for (int j = n_ - 1; j >= 0; --j) {
        std::int64_t d = rows_[j][j];
        if (d == 0) {
            if (w[j] != 0) return false;
            continue;
        }
        if (w[j] % d != 0) return false;
        axpy(w, -(w[j] / d), rows_[j]);
    }
    return true;
}

IntVec Lattice::reduce(const IntVec& m) const {
    IntVec w = to_perm(m);
    for (int j = n_ - 1; j >= 0; --j) {
        std::int64_t d = rows_[j][j];
        if (d == 0) continue;
        axpy(w, -floor_div(w[j], d), rows_[j]);
    }
    return from_perm(w);
}

std::int64_t Lattice::axis_period(int axis, std::int64_t bound) const {
    IntVec e(n_, 0);
    for (std::int64_t t = 1; t <= bound; ++t) {
        e[axis] = t;
        if (contains(e)) return t;
    }
    fail(ErrorKind::NoPeriodWithinBound,
         "no period along axis " + std::to_string(axis + 1) + " within " + std::to_string(bound));
}

IntVec Lattice::axis_periods() const {
    std::int64_t idx = index();
    IntVec r(n_);
    for (int i = 0; i < n_; ++i) r[i] = axis_period(i, idx);
    return r;
}

std::vector<IntVec> Lattice::coset_reps() const {
    IntVec r = axis_periods();
    IntVec lo(n_, 0), hi(n_);
    for (int i = 0; i < n_; ++i) hi[i] = r[i] - 1;
    // Scan with the first axis fastest, so later axes are the most significant.
    auto pts = box_points(lo, hi);
    std::sort(pts.begin(), pts.end(), [](const IntVec& a, const IntVec& b) {
        return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
    });
    std::set<IntVec> seen;
    std::vector<IntVec> reps;
    for (const auto& m : pts)
        if (seen.insert(reduce(m)).second) reps.push_back(m);
    return reps;
}

Lattice Lattice::reordered(std::vector<int> ordering) const {
    return from_generators(n_, basis(), std::move(ordering));
}

bool Lattice::operator==(const Lattice& o) const {
    if (n_ != o.n_) return false;
    if (ordering_ == o.ordering_) return rows_ == o.rows_;
    return rows_ == o.reordered(ordering_).rows_;
}

std::vector<IntVec> box_points(const IntVec& lo, const IntVec& hi) {
    std::vector<IntVec> out;
    size_t n = lo.size();
    for (size_t i = 0; i < n; ++i)
        if (hi[i] < lo[i]) return out;
    IntVec cur = lo;
    while (true) {
        out.push_back(cur);
        long k = static_cast<long>(n) - 1;
        while (k >= 0 && cur[k] == hi[k]) {
            cur[k] = lo[k];
            --k;
        }
        if (k < 0) return out;
        ++cur[k];
    }
}

std::vector<IntVec> centered_box(int n, std::int64_t radius) {
    return box_points(IntVec(n, -radius), IntVec(n, radius));
}

} // namespace loopmod
