#include "loopmod/classify.hpp"

#include "loopmod/errors.hpp"

#include <algorithm>
#include <map>

namespace loopmod {

namespace {

PsiSpec lift_spec(const PsiSpec& s, long L) {
    PsiSpec out = s;
    out.order = L;
    for (auto& axis : out.evals)
        for (auto& a : axis) a = a.lifted(L);
    return out;
}

} // namespace

bool canonical_before(const CycScalar& a, const CycScalar& b) {
    if (a.exponent() != b.exponent()) return a.exponent() < b.exponent();
    Rational aa = abs(a.coeff()), ab = abs(b.coeff());
    if (aa != ab) return aa < ab;
    return a.coeff() > b.coeff();
}

AxisBlocks detect_axis_blocks(const std::vector<CycScalar>& values, long period) {
    AxisBlocks out;
    out.period = period;
    std::vector<CycScalar> powers;
    std::vector<std::vector<int>> groups;
    for (size_t j = 0; j < values.size(); ++j) {
        CycScalar p = values[j].pow(period);
        auto it = std::find(powers.begin(), powers.end(), p);
        if (it == powers.end()) {
            powers.push_back(p);
            groups.push_back({static_cast<int>(j)});
        } else {
            groups[it - powers.begin()].push_back(static_cast<int>(j));
        }
    }
    for (const auto& g : groups)
        if (static_cast<long>(g.size()) != period)
            fail(ErrorKind::StructureViolation, "evaluation point " + values[g[0]].to_string() + " lies in a block of " +
                                                    std::to_string(g.size()) + " points, expected " +
                                                    std::to_string(period));
    std::vector<CycScalar> bases;
    for (const auto& g : groups) {
        CycScalar c = values[g[0]];
        for (int j : g)
            if (canonical_before(values[j], c)) c = values[j];
        bases.push_back(c);
    }
    std::vector<size_t> perm(groups.size());
    for (size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::sort(perm.begin(), perm.end(), [&](size_t x, size_t y) { return canonical_before(bases[x], bases[y]); });
    out.block.assign(values.size(), -1);
    out.phase.assign(values.size(), 0);
    for (size_t pos = 0; pos < perm.size(); ++pos) {
        size_t g = perm[pos];
        out.bases.push_back(bases[g]);
        std::vector<bool> hit(period, false);
        for (int j : groups[g]) {
            CycScalar ratio = values[j] / bases[g];
            if (!root_of_unity_order_divides(ratio, period))
                fail(ErrorKind::StructureViolation, "block of " + bases[g].to_string() + " is not a root-of-unity orbit");
            Rational ph = ratio.angle() * period;
            ph.canonicalize();
            long p = to_int64(ph.get_num());
            if (hit[p]) fail(ErrorKind::StructureViolation, "repeated phase in block of " + bases[g].to_string());
            hit[p] = true;
            out.block[j] = static_cast<int>(pos);
            out.phase[j] = p;
        }
    }
    return out;
}

std::vector<AxisBlocks> detect_blocks(const PsiSpec& spec, const Lattice& gamma) {
    std::vector<AxisBlocks> out;
    IntVec periods = gamma.axis_periods();
    for (int i = 0; i < spec.n; ++i) {
        std::int64_t r = periods[i];
        if (spec.dims[i] % r != 0)
            fail(ErrorKind::StructureViolation, "axis period " + std::to_string(r) + " does not divide " +
                                                    std::to_string(spec.dims[i]));
        out.push_back(detect_axis_blocks(spec.evals[i], r));
    }
    return out;
}

std::vector<WeightClass> weight_classes(const std::vector<Weight>& weights, long exponent) {
    std::map<Weight, long> counts;
    for (const auto& w : weights) ++counts[w];
    std::vector<WeightClass> out;
    for (const auto& [w, c] : counts) out.push_back({w, c, c / exponent});
    return out;
}

ModuleDescriptor classify(const PsiSpec& spec) {
    ModuleDescriptor d;
    d.spec = spec;
    d.gamma = support_lattice(spec);
    if (!d.gamma.full_rank()) fail(ErrorKind::InfiniteIndex, "support lattice has infinite index");
    detect_blocks(spec, d.gamma);
    d.periods = d.gamma.axis_periods();
    d.exponent = d.gamma.index();
    long N = static_cast<long>(spec.slot_count());
    long prod_r = 1;
    for (auto r : d.periods) prod_r *= r;
    if (N % d.exponent != 0 || prod_r % d.exponent != 0)
        fail(ErrorKind::StructureViolation, "index " + std::to_string(d.exponent) + " does not divide N = " +
                                                std::to_string(N) + " and prod r = " + std::to_string(prod_r));
    d.classes = weight_classes(spec.weights, d.exponent);
    for (const auto& c : d.classes)
        if (c.count % d.exponent != 0)
            fail(ErrorKind::StructureViolation, "a weight class of size " + std::to_string(c.count) +
                                                    " is not a multiple of " + std::to_string(d.exponent));
    return d;
}

std::pair<PsiSpec, PsiSpec> common_order_pair(const PsiSpec& a, const PsiSpec& b) {
    long L = lcm64(a.order, b.order);
    return {lift_spec(a, L), lift_spec(b, L)};
}

std::optional<IntVec> integral_difference(const std::vector<Rational>& from, const std::vector<Rational>& to) {
    IntVec m(from.size());
    for (size_t i = 0; i < from.size(); ++i) {
        Rational d = to[i] - from[i];
        d.canonicalize();
        if (!is_integer(d)) return std::nullopt;
        m[i] = to_int64(d.get_num());
    }
    return m;
}

std::vector<AxisScaling> axis_scalings(const std::vector<CycScalar>& a, const std::vector<CycScalar>& b) {
    std::map<CycScalar, int> where;
    for (size_t j = 0; j < a.size(); ++j) where[a[j]] = static_cast<int>(j);
    std::vector<AxisScaling> out;
    for (size_t j0 = 0; j0 < a.size(); ++j0) {
        CycScalar s = b[0] / a[j0];
        std::vector<int> tau(b.size());
        std::vector<bool> used(a.size(), false);
        bool ok = true;
        for (size_t j = 0; j < b.size() && ok; ++j) {
            auto it = where.find(b[j] / s);
            ok = it != where.end() && !used[it->second];
            if (ok) {
                tau[j] = it->second;
                used[it->second] = true;
            }
        }
        if (ok) out.push_back({s, tau});
    }
    return out;
}

Index apply_tau(const std::vector<std::vector<int>>& tau, const Index& J) {
    Index I(J.size());
    for (size_t i = 0; i < J.size(); ++i) I[i] = tau[i][J[i]];
    return I;
}

IsoResult decide_iso(const ModuleDescriptor& d1, const ModuleDescriptor& d2) {
    IsoResult res;
    const PsiSpec& s1 = d1.spec;
    const PsiSpec& s2 = d2.spec;
    if (!(s1.algebra == s2.algebra) || s1.n != s2.n || s1.dims != s2.dims) {
        res.failed_criterion = 1;
        res.reason = "algebra, number of variables or points per axis differ";
        return res;
    }
    auto [a, b] = common_order_pair(s1, s2);
    std::vector<std::vector<AxisScaling>> cands(a.n);
    for (int i = 0; i < a.n; ++i) {
        cands[i] = axis_scalings(a.evals[i], b.evals[i]);
        if (cands[i].empty()) {
            res.failed_criterion = 2;
            res.reason = "no common scaling matches the evaluation points on axis " + std::to_string(i + 1);
            return res;
        }
    }
    std::vector<size_t> pick(a.n, 0);
    std::optional<IsoWitness> found;
    while (!found) {
        IsoWitness w;
        for (int i = 0; i < a.n; ++i) {
            w.tau.push_back(cands[i][pick[i]].tau);
            w.scale.push_back(cands[i][pick[i]].scale);
        }
        bool ok = true;
        for (size_t k = 0; k < b.slot_count() && ok; ++k)
            ok = b.weights[k] == a.weight(apply_tau(w.tau, b.unflat(k)));
        if (ok) found = w;
        int i = a.n - 1;
        while (i >= 0 && ++pick[i] == cands[i].size()) pick[i--] = 0;
        if (i < 0) break;
    }
    if (!found) {
        res.failed_criterion = 3;
        res.reason = "weight tables do not match under any admissible permutation";
        return res;
    }
    auto shift = integral_difference(s1.rho, s2.rho);
    if (!shift || !d1.gamma.contains(*shift)) {
        res.failed_criterion = 4;
        res.reason = "derivation shift is not in the support lattice";
        return res;
    }
    found->shift = *shift;
    res.isomorphic = true;
    res.witness = found;
    return res;
}

bool check_iso_witness(const ModuleDescriptor& d1, const ModuleDescriptor& d2, const IsoWitness& w) {
    auto [a, b] = common_order_pair(d1.spec, d2.spec);
    if (!(a.algebra == b.algebra) || a.n != b.n || a.dims != b.dims) return false;
    if (static_cast<int>(w.tau.size()) != a.n || static_cast<int>(w.scale.size()) != a.n) return false;
    for (int i = 0; i < a.n; ++i) {
        std::vector<int> sorted = w.tau[i];
        std::sort(sorted.begin(), sorted.end());
        for (int j = 0; j < a.dims[i]; ++j)
            if (sorted[j] != j) return false;
        long L = lcm64(a.order, w.scale[i].order());
        CycScalar s = w.scale[i].lifted(L);
        for (int j = 0; j < a.dims[i]; ++j)
            if (b.evals[i][j].lifted(L) != s * a.evals[i][w.tau[i][j]].lifted(L)) return false;
    }
    for (size_t k = 0; k < b.slot_count(); ++k)
        if (b.weights[k] != a.weight(apply_tau(w.tau, b.unflat(k)))) return false;
    auto shift = integral_difference(a.rho, b.rho);
    return shift && *shift == w.shift && d1.gamma.contains(w.shift);
}

IsoWitness invert_witness(const IsoWitness& w) {
    IsoWitness inv;
    for (size_t i = 0; i < w.tau.size(); ++i) {
        std::vector<int> t(w.tau[i].size());
        for (size_t j = 0; j < t.size(); ++j) t[w.tau[i][j]] = static_cast<int>(j);
        inv.tau.push_back(t);
        inv.scale.push_back(w.scale[i].inverse());
    }
    for (auto x : w.shift) inv.shift.push_back(-x);
    return inv;
}

IsoWitness compose_witness(const IsoWitness& w12, const IsoWitness& w23) {
    IsoWitness c;
    for (size_t i = 0; i < w12.tau.size(); ++i) {
        std::vector<int> t(w23.tau[i].size());
        for (size_t j = 0; j < t.size(); ++j) t[j] = w12.tau[i][w23.tau[i][j]];
        c.tau.push_back(t);
        long L = lcm64(w12.scale[i].order(), w23.scale[i].order());
        c.scale.push_back(w12.scale[i].lifted(L) * w23.scale[i].lifted(L));
    }
    for (size_t i = 0; i < w12.shift.size(); ++i) c.shift.push_back(w12.shift[i] + w23.shift[i]);
    return c;
}

} // namespace loopmod
