#pragma once

#include "loopmod/errors.hpp"
#include "loopmod/realizer.hpp"
#include "loopmod/twisted.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

namespace fx {

using namespace loopmod;
using cd = std::complex<double>;

inline CycScalar Q(long p, long q = 1) { return CycScalar::rational(make_rational(p, q)); }
inline CycScalar Z(long e, long L, long p = 1, long q = 1) { return CycScalar(make_rational(p, q), e, L); }

inline PsiSpec spec(char series, int rank, std::vector<int> dims, std::vector<Weight> weights,
                    std::vector<std::vector<CycScalar>> evals, std::vector<Rational> rho = {}) {
    PsiSpec s;
    s.algebra = build_algebra(series, rank);
    s.n = static_cast<int>(dims.size());
    s.dims = std::move(dims);
    s.weights = std::move(weights);
    s.evals = std::move(evals);
    s.rho = std::move(rho);
    normalize_spec(s);
    return s;
}

inline TwistedSpec twisted(PsiSpec base, std::vector<int> perm, int order) {
    TwistedSpec ts;
    ts.base = std::move(base);
    ts.aut.perm = std::move(perm);
    ts.aut.order = order;
    normalize_twisted(ts);
    return ts;
}

inline DiagramAutomorphism a2_flip() { return {{1, 0}, 2}; }
// Outer nodes 0, 2, 3 of D4 cycled; node 1 is the centre.
inline DiagramAutomorphism d4_triality() { return {{2, 1, 3, 0}, 3}; }

// Floating value computed from the raw (coeff, exponent, order) triple only.
inline cd value(const CycScalar& s) {
    double q = s.coeff().get_d();
    double th = 2 * std::numbers::pi * static_cast<double>(s.exponent()) / static_cast<double>(s.order());
    return {q * std::cos(th), q * std::sin(th)};
}

inline cd value_pow(const CycScalar& s, long m) { return std::pow(value(s), static_cast<double>(m)); }

// Functional at degree m evaluated in doubles, one entry per fundamental coordinate.
inline std::vector<cd> float_functional(const PsiSpec& s, const IntVec& m) {
    std::vector<cd> out(s.algebra.rank);
    for (size_t k = 0; k < s.slot_count(); ++k) {
        Index I = s.unflat(k);
        cd mono = 1;
        for (int i = 0; i < s.n; ++i) mono *= value_pow(s.evals[i][I[i]], m[i]);
        for (int c = 0; c < s.algebra.rank; ++c) out[c] += mono * static_cast<double>(s.weights[k][c]);
    }
    return out;
}

inline bool float_nonzero(const PsiSpec& s, const IntVec& m) {
    for (auto z : float_functional(s, m))
        if (std::abs(z) > 1e-7) return true;
    return false;
}

// Determinant by cofactor expansion; fine for n <= 4.
inline std::int64_t det(const std::vector<IntVec>& a) {
    size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    std::int64_t s = 0;
    for (size_t c = 0; c < n; ++c) {
        std::vector<IntVec> minor;
        for (size_t r = 1; r < n; ++r) {
            IntVec row;
            for (size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        std::int64_t term = a[0][c] * det(minor);
        s += (c % 2 ? -term : term);
    }
    return s;
}

// Index of the span of gens as the gcd of maximal minors; 0 when rank-deficient.
inline std::int64_t minor_gcd_index(int n, const std::vector<IntVec>& gens) {
    std::int64_t g = 0;
    std::vector<int> pick;
    auto rec = [&](auto&& self, size_t from) -> void {
        if (static_cast<int>(pick.size()) == n) {
            std::vector<IntVec> m;
            for (int i : pick) m.push_back(gens[i]);
            g = std::gcd(g, std::abs(det(m)));
            return;
        }
        for (size_t i = from; i < gens.size(); ++i) {
            pick.push_back(static_cast<int>(i));
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return g;
}

// m lies in a full-rank span iff adding it keeps the index.
inline bool minor_gcd_contains(int n, std::vector<IntVec> gens, const IntVec& m) {
    std::int64_t before = minor_gcd_index(n, gens);
    gens.push_back(m);
    return minor_gcd_index(n, gens) == before;
}

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Pool: +-1, +-2, +-3, and multiples of cube and fourth roots of unity.
inline CycScalar random_scalar(Rng& rng) {
    long q = uniform(rng, 1, 3) * (uniform(rng, 0, 1) ? 1 : -1);
    switch (uniform(rng, 0, 2)) {
    case 0: return Q(q);
    case 1: return Z(uniform(rng, 0, 2), 3, q);
    default: return Z(uniform(rng, 0, 3), 4, q);
    }
}

inline std::vector<CycScalar> distinct_scalars(Rng& rng, int count) {
    std::vector<CycScalar> out;
    std::set<std::pair<long, long>> seen;
    while (static_cast<int>(out.size()) < count) {
        CycScalar s = random_scalar(rng);
        cd v = value(s);
        std::pair<long, long> key(std::lround(v.real() * 1e6), std::lround(v.imag() * 1e6));
        if (seen.insert(key).second) out.push_back(s);
    }
    return out;
}

inline Weight random_weight(Rng& rng, int rank, long max_coord) {
    Weight w(rank);
    for (auto& x : w) x = uniform(rng, 0, max_coord);
    return w;
}

inline PsiSpec random_spec(Rng& rng, char series, int rank, int n, int max_dim, long max_coord) {
    std::vector<int> dims(n);
    for (auto& d : dims) d = static_cast<int>(uniform(rng, 1, max_dim));
    std::vector<std::vector<CycScalar>> evals;
    for (int d : dims) evals.push_back(distinct_scalars(rng, d));
    std::vector<Weight> weights(grid_size(dims));
    bool nonzero = false;
    while (!nonzero) {
        for (auto& w : weights) {
            w = random_weight(rng, rank, max_coord);
            for (long x : w) nonzero |= x != 0;
        }
    }
    return spec(series, rank, dims, weights, evals);
}

// Spec in block form: axis i carries blocks c * zeta_{r_i}^phase with distinct
// positive rational bases, and the weight depends only on the block tuple and
// the class of the phase tuple modulo a chosen subgroup H of prod Z/r_i. The
// support is then the annihilator of H, so the index is |H| and every weight
// class has exactly |H| members.
struct BlockSpec {
    PsiSpec spec;
    IntVec periods;
    long subgroup_order = 1;
};

inline BlockSpec block_spec(Rng& rng, int n, int max_dim) {
    static const std::vector<std::pair<long, long>> bases = {{1, 1}, {2, 1}, {3, 1}, {1, 2}, {3, 2}, {5, 1}};
    IntVec r(n), blocks(n);
    std::vector<int> dims(n);
    std::vector<std::vector<CycScalar>> evals(n);
    for (int i = 0; i < n; ++i) {
        do {
            r[i] = uniform(rng, 1, max_dim);
            blocks[i] = uniform(rng, 1, max_dim);
        } while (r[i] * blocks[i] > max_dim);
        dims[i] = static_cast<int>(r[i] * blocks[i]);
        std::vector<size_t> pick(bases.size());
        std::iota(pick.begin(), pick.end(), 0);
        std::shuffle(pick.begin(), pick.end(), rng);
        for (long l = 0; l < blocks[i]; ++l)
            for (long ph = 0; ph < r[i]; ++ph)
                evals[i].push_back(Z(ph, r[i], bases[pick[l]].first, bases[pick[l]].second));
    }
    // H generated by up to two random phase tuples.
    std::set<IntVec> H = {IntVec(n, 0)};
    for (long g = uniform(rng, 0, 2); g > 0; --g) {
        IntVec gen(n);
        for (int i = 0; i < n; ++i) gen[i] = uniform(rng, 0, r[i] - 1);
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& h : std::vector<IntVec>(H.begin(), H.end())) {
                IntVec s(n);
                for (int i = 0; i < n; ++i) s[i] = (h[i] + gen[i]) % r[i];
                grew |= H.insert(s).second;
            }
        }
    }
    auto coset_key = [&](const IntVec& ph) {
        IntVec best;
        for (const auto& h : H) {
            IntVec s(n);
            for (int i = 0; i < n; ++i) s[i] = (ph[i] + h[i]) % r[i];
            if (best.empty() || s < best) best = s;
        }
        return best;
    };
    // Distinct nonzero dominant weights on A2, one per (block tuple, coset).
    std::vector<Weight> pool;
    for (long a = 0; a <= 8; ++a)
        for (long b = 0; b <= 8; ++b)
            if (a || b) pool.push_back({a, b});
    std::shuffle(pool.begin(), pool.end(), rng);
    std::map<std::pair<IntVec, IntVec>, Weight> assigned;
    std::vector<Weight> weights(grid_size(dims));
    for (size_t k = 0; k < weights.size(); ++k) {
        IntVec blk(n), ph(n);
        size_t rest = k;
        for (int i = n - 1; i >= 0; --i) {
            long j = static_cast<long>(rest % dims[i]);
            rest /= dims[i];
            blk[i] = j / r[i];
            ph[i] = j % r[i];
        }
        auto key = std::make_pair(blk, coset_key(ph));
        auto it = assigned.find(key);
        if (it == assigned.end()) it = assigned.emplace(key, pool[assigned.size()]).first;
        weights[k] = it->second;
    }
    BlockSpec out;
    out.spec = spec('A', 2, dims, weights, evals);
    out.periods = r;
    out.subgroup_order = static_cast<long>(H.size());
    return out;
}

// Image of a spec under axis permutations, per-axis scalings and a rho shift by
// a lattice vector; the result is isomorphic by construction.
inline PsiSpec transform(const PsiSpec& s, const Lattice& gamma, Rng& rng, IsoWitness* w = nullptr) {
    IsoWitness wit;
    PsiSpec t = s;
    long L = lcm64(s.order, 12);
    for (int i = 0; i < s.n; ++i) {
        std::vector<int> tau(s.dims[i]);
        std::iota(tau.begin(), tau.end(), 0);
        std::shuffle(tau.begin(), tau.end(), rng);
        CycScalar scale = random_scalar(rng).lifted(12).lifted(L);
        t.evals[i].clear();
        for (int j = 0; j < s.dims[i]; ++j) t.evals[i].push_back(scale * s.evals[i][tau[j]].lifted(L));
        wit.tau.push_back(tau);
        wit.scale.push_back(scale);
    }
    for (size_t k = 0; k < s.slot_count(); ++k) t.weights[k] = s.weights[s.flat(apply_tau(wit.tau, s.unflat(k)))];
    wit.shift.assign(s.n, 0);
    for (const auto& row : gamma.basis()) {
        long c = uniform(rng, -2, 2);
        for (int i = 0; i < s.n; ++i) wit.shift[i] += c * row[i];
    }
    for (int i = 0; i < s.n; ++i) t.rho[i] = s.rho[i] + Rational(static_cast<long>(wit.shift[i]));
    normalize_spec(t);
    if (w) *w = wit;
    return t;
}

} // namespace fx
