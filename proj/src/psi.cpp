#include "loopmod/psi.hpp"

#include "loopmod/errors.hpp"
#include "loopmod/stabilizer.hpp"

#include <algorithm>
#include <set>

namespace loopmod {

long grid_size(const std::vector<int>& dims) {
    long s = 1;
    for (int d : dims) s *= d;
    return s;
}

size_t PsiSpec::flat(const Index& I) const {
    size_t k = 0;
    for (int i = 0; i < n; ++i) k = k * dims[i] + I[i];
    return k;
}

Index PsiSpec::unflat(size_t k) const {
    Index I(n);
    for (int i = n - 1; i >= 0; --i) {
        I[i] = static_cast<int>(k % dims[i]);
        k /= dims[i];
    }
    return I;
}

CycScalar PsiSpec::monomial(const Index& I, const IntVec& m) const {
    CycScalar acc = CycScalar::rational(Rational(1), order);
    for (int i = 0; i < n; ++i) acc = acc * evals[i][I[i]].pow(m[i]);
    return acc;
}

void normalize_spec(PsiSpec& spec, long extra_order) {
    if (spec.n < 1) fail(ErrorKind::Input, "number of variables must be positive");
    if (static_cast<int>(spec.dims.size()) != spec.n) fail(ErrorKind::Input, "dims length differs from n");
    if (static_cast<int>(spec.evals.size()) != spec.n) fail(ErrorKind::Input, "evals length differs from n");
    for (int i = 0; i < spec.n; ++i) {
        if (spec.dims[i] < 1) fail(ErrorKind::Input, "every axis needs at least one evaluation point");
        if (static_cast<int>(spec.evals[i].size()) != spec.dims[i])
            fail(ErrorKind::Input, "axis " + std::to_string(i + 1) + " has " + std::to_string(spec.evals[i].size()) +
                                       " evaluation points, expected " + std::to_string(spec.dims[i]));
    }
    if (static_cast<long>(spec.weights.size()) != grid_size(spec.dims))
        fail(ErrorKind::Input, "weight table has " + std::to_string(spec.weights.size()) + " entries, expected " +
                                   std::to_string(grid_size(spec.dims)));
    for (const auto& w : spec.weights) check_weight(spec.algebra, w);
    if (spec.rho.empty()) spec.rho.assign(spec.n, Rational(0));
    if (static_cast<int>(spec.rho.size()) != spec.n) fail(ErrorKind::Input, "rho length differs from n");

    long L = extra_order;
    for (const auto& axis : spec.evals) L = lcm64(L, common_order(axis));
    spec.order = L;
    for (int i = 0; i < spec.n; ++i) {
        std::set<CycScalar> seen;
        for (auto& a : spec.evals[i]) {
            a = a.lifted(L);
            if (!seen.insert(a).second)
                fail(ErrorKind::Input, "repeated evaluation point " + a.to_string() + " on axis " + std::to_string(i + 1));
        }
    }
}

bool is_trivial(const PsiSpec& spec) {
    for (const auto& w : spec.weights)
        for (long x : w)
            if (x != 0) return false;
    return true;
}

std::vector<CycVector> eval_functional(const PsiSpec& spec, const IntVec& m) {
    int d = spec.algebra.rank;
    std::vector<std::vector<CycScalar>> powers(spec.n);
    for (int i = 0; i < spec.n; ++i)
        for (const auto& a : spec.evals[i]) powers[i].push_back(a.pow(m[i]));
    std::vector<CycVector> out(d, CycVector(spec.order));
    for (size_t k = 0; k < spec.slot_count(); ++k) {
        const Weight& w = spec.weights[k];
        if (std::all_of(w.begin(), w.end(), [](long x) { return x == 0; })) continue;
        Index I = spec.unflat(k);
        CycScalar mono = powers[0][I[0]];
        for (int i = 1; i < spec.n; ++i) mono = mono * powers[i][I[i]];
        for (int c = 0; c < d; ++c)
            if (w[c] != 0) out[c].add(mono, Rational(w[c]));
    }
    return out;
}

bool functional_is_zero(const PsiSpec& spec, const IntVec& m) {
    for (const auto& v : eval_functional(spec, m))
        if (!v.is_zero()) return false;
    return true;
}

Lattice support_lattice(const PsiSpec& spec, std::vector<int> ordering) {
    if (is_trivial(spec)) fail(ErrorKind::TrivialModule, "all weights vanish");
    CharacterTable t;
    t.values = spec.evals;
    for (const auto& w : spec.weights) t.coeffs.emplace_back(w.begin(), w.end());
    return support_of(t, std::move(ordering));
}

std::vector<char> support_flags(const PsiSpec& spec, const std::vector<IntVec>& points, bool parallel) {
    std::vector<char> flags(points.size(), 0);
    long count = static_cast<long>(points.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (long k = 0; k < count; ++k) flags[k] = functional_is_zero(spec, points[k]) ? 0 : 1;
    } else {
        for (long k = 0; k < count; ++k) flags[k] = functional_is_zero(spec, points[k]) ? 0 : 1;
    }
    return flags;
}

SupportCheck check_support_flags(const Lattice& gamma, const std::vector<IntVec>& points,
                                 const std::vector<char>& flags) {
    SupportCheck res;
    res.points = static_cast<long>(points.size());
    std::vector<size_t> order(points.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    auto norm = [](const IntVec& m) {
        std::int64_t s = 0;
        for (auto x : m) s = std::max<std::int64_t>(s, x < 0 ? -x : x);
        return s;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return norm(points[a]) < norm(points[b]); });

    std::vector<IntVec> gens;
    for (size_t k : order) {
        if (!flags[k]) continue;
        ++res.nonzero;
        gens.push_back(points[k]);
        if (res.ok && !gamma.contains(points[k])) {
            res.ok = false;
            res.witness = points[k];
            res.reason = "functional is nonzero off the lattice";
        }
    }
    Lattice generated = Lattice::from_generators(gamma.dim(), gens);
    for (size_t k : order) {
        if (!gamma.contains(points[k])) continue;
        if (!flags[k]) res.exceptional_zeros.push_back(points[k]);
        if (res.ok && !generated.contains(points[k])) {
            res.ok = false;
            res.witness = points[k];
            res.reason = "lattice point not generated by the nonzero degrees in the box";
        }
    }
    return res;
}

SupportCheck verify_support(const PsiSpec& spec, const Lattice& gamma, long radius, bool parallel) {
    auto points = centered_box(spec.n, radius);
    return check_support_flags(gamma, points, support_flags(spec, points, parallel));
}

} // namespace loopmod
