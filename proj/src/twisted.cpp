#include "loopmod/twisted.hpp"

#include "loopmod/errors.hpp"
#include "loopmod/stabilizer.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace loopmod {

namespace {

long aut_order(const TwistedSpec& ts) { return ts.aut.order; }

CycScalar eps_power(long power, long k, long L) { return CycScalar::root(power * (L / k), L); }

} // namespace

void normalize_twisted(TwistedSpec& ts) {
    validate_automorphism(ts.base.algebra, ts.aut);
    normalize_spec(ts.base, ts.aut.order);
}

bool image_equality(const TwistedSpec& ts) {
    std::set<CycScalar> seen;
    for (const auto& a : ts.base.evals[0])
        if (!seen.insert(a.pow(aut_order(ts))).second) return false;
    return true;
}

const char* twist_type_name(TwistType t) { return t == TwistType::First ? "first" : "second"; }

TwistType classify_type(const TwistedSpec& ts) {
    for (const auto& w : ts.base.weights)
        if (!is_fixed(ts.aut, w)) return TwistType::First;
    return TwistType::Second;
}

std::vector<CycVector> twisted_functional(const TwistedSpec& ts, const IntVec& m) {
    const PsiSpec& s = ts.base;
    long k = aut_order(ts);
    long j = mod64(m[0], k);
    auto orbits = node_orbits(ts.aut);
    std::vector<std::vector<int>> active;
    for (const auto& o : orbits)
        if (j == 0 || static_cast<long>(o.size()) == k) active.push_back(o);
    std::vector<CycVector> out(active.size(), CycVector(s.order));
    for (size_t slot = 0; slot < s.slot_count(); ++slot) {
        const Weight& w = s.weights[slot];
        CycScalar mono = s.monomial(s.unflat(slot), m);
        for (size_t o = 0; o < active.size(); ++o) {
            const auto& orb = active[o];
            for (size_t t = 0; t < orb.size(); ++t) {
                if (w[orb[t]] == 0) continue;
                out[o].add(mono * eps_power(-j * static_cast<long>(t), k, s.order), Rational(w[orb[t]]));
            }
        }
    }
    return out;
}

bool twisted_functional_is_zero(const TwistedSpec& ts, const IntVec& m) {
    for (const auto& v : twisted_functional(ts, m))
        if (!v.is_zero()) return false;
    return true;
}

std::vector<int> twisted_ordering(int n) {
    std::vector<int> o(n);
    std::iota(o.begin(), o.end(), 1);
    o[n - 1] = 0;
    return o;
}

Lattice twisted_support(const TwistedSpec& ts) {
    const PsiSpec& s = ts.base;
    if (is_trivial(s)) fail(ErrorKind::TrivialModule, "all weights vanish");
    long k = aut_order(ts);
    auto orbits = node_orbits(ts.aut);
    CharacterTable t;
    t.values = s.evals;
    t.values[0].clear();
    for (const auto& a : s.evals[0])
        for (long u = 0; u < k; ++u) t.values[0].push_back(a * eps_power(-u, k, s.order));
    long rest = static_cast<long>(s.slot_count()) / s.dims[0];
    t.coeffs.assign(s.dims[0] * k * rest, {});
    for (size_t slot = 0; slot < s.slot_count(); ++slot) {
        long i1 = static_cast<long>(slot) / rest, r = static_cast<long>(slot) % rest;
        for (long u = 0; u < k; ++u) {
            std::vector<long> c;
            for (const auto& orb : orbits) c.push_back(s.weights[slot][orb[u % orb.size()]]);
            t.coeffs[(i1 * k + u) * rest + r] = c;
        }
    }
    return support_of(t, twisted_ordering(s.n));
}

Lattice collapsed_support(const PsiSpec& spec) {
    if (spec.n == 1) return Lattice(0);
    CharacterTable t;
    t.values.assign(spec.evals.begin() + 1, spec.evals.end());
    long rest = static_cast<long>(spec.slot_count()) / spec.dims[0];
    t.coeffs.assign(rest, std::vector<long>(spec.algebra.rank, 0));
    for (size_t slot = 0; slot < spec.slot_count(); ++slot)
        for (int c = 0; c < spec.algebra.rank; ++c) t.coeffs[slot % rest][c] += spec.weights[slot][c];
    return support_of(t);
}

SupportCheck verify_twisted_support(const TwistedSpec& ts, const Lattice& gamma_mu, long radius, bool parallel) {
    auto points = centered_box(ts.base.n, radius);
    std::vector<char> flags(points.size(), 0);
    long count = static_cast<long>(points.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (long k = 0; k < count; ++k) flags[k] = twisted_functional_is_zero(ts, points[k]) ? 0 : 1;
    } else {
        for (long k = 0; k < count; ++k) flags[k] = twisted_functional_is_zero(ts, points[k]) ? 0 : 1;
    }
    return check_support_flags(gamma_mu, points, flags);
}

TwistedDescriptor twisted_classify(const TwistedSpec& ts) {
    if (!image_equality(ts))
        fail(ErrorKind::ImageMismatch, "k-th powers of the first-axis evaluation points are not distinct");
    TwistedDescriptor d;
    d.spec = ts;
    d.type = classify_type(ts);
    d.gamma = support_lattice(ts.base);
    d.gamma_mu = twisted_support(ts);
    d.gamma_rest = collapsed_support(ts.base);
    if (!d.gamma_mu.full_rank() || !d.gamma_rest.full_rank())
        fail(ErrorKind::InfiniteIndex, "twisted support has infinite index");
    d.m_hat = d.gamma_mu.pivots().back();
    long k = aut_order(ts);
    long rest_index = d.gamma_rest.index();
    if (d.type == TwistType::First) {
        if (d.m_hat != 1)
            fail(ErrorKind::StructureViolation,
                 "first-type module with last pivot " + std::to_string(d.m_hat) + " instead of 1");
        d.exponent = rest_index;
    } else {
        if (d.m_hat % k != 0)
            fail(ErrorKind::StructureViolation, "second-type module with last pivot " + std::to_string(d.m_hat) +
                                                    " not divisible by " + std::to_string(k));
        d.exponent = rest_index * d.m_hat / k;
    }
    d.classes = weight_classes(ts.base.weights, 1);
    return d;
}

Reducibility check_complete_reducibility(const TwistedSpec& ts) {
    if (image_equality(ts)) return {true, "image-equality"};
    if (support_lattice(ts.base).index() == 1) return {true, "full-image"};
    return {false, ""};
}

TwistedIsoResult decide_twisted_iso(const TwistedDescriptor& d1, const TwistedDescriptor& d2) {
    TwistedIsoResult res;
    const PsiSpec& s1 = d1.spec.base;
    const PsiSpec& s2 = d2.spec.base;
    if (!(s1.algebra == s2.algebra) || s1.n != s2.n || s1.dims != s2.dims || d1.spec.aut.perm != d2.spec.aut.perm ||
        d1.spec.aut.order != d2.spec.aut.order) {
        res.failed_criterion = 1;
        res.reason = "algebra, automorphism, number of variables or points per axis differ";
        return res;
    }
    if (d1.type != d2.type) {
        res.failed_criterion = 1;
        res.reason = "type mismatch: one module is of first type and the other of second type";
        return res;
    }
    long k = d1.spec.aut.order;
    auto [a, b] = common_order_pair(s1, s2);
    long L = a.order;

    // First axis: match k-th powers, the leftover ratios are k-th roots of unity.
    struct FirstAxis {
        CycScalar scale;
        std::vector<int> tau;
        std::vector<long> roots;
    };
    std::vector<FirstAxis> first;
    // The scalar is only fixed up to a k-th root of unity, so try all k of them.
    for (int j0 = 0; j0 < a.dims[0]; ++j0)
    for (long u0 = 0; u0 < k; ++u0) {
        FirstAxis c{b.evals[0][0] / a.evals[0][j0] * eps_power(u0, k, L), std::vector<int>(a.dims[0]),
                    std::vector<long>(a.dims[0])};
        std::vector<bool> used(a.dims[0], false);
        bool ok = true;
        for (int i = 0; i < a.dims[0] && ok; ++i) {
            int hit = -1;
            for (int j = 0; j < a.dims[0] && hit < 0; ++j) {
                CycScalar ratio = b.evals[0][i] / (c.scale * a.evals[0][j]);
                if (!used[j] && root_of_unity_order_divides(ratio, k)) {
                    hit = j;
                    Rational u = ratio.angle() * k;
                    u.canonicalize();
                    c.roots[i] = to_int64(u.get_num());
                }
            }
            ok = hit >= 0;
            if (ok) {
                used[hit] = true;
                c.tau[i] = hit;
            }
        }
        if (ok) first.push_back(c);
    }
    if (first.empty()) {
        res.failed_criterion = 2;
        res.reason = "no scaling matches the first-axis evaluation points up to k-th roots of unity";
        return res;
    }
    std::vector<std::vector<AxisScaling>> cands(a.n);
    for (int i = 1; i < a.n; ++i) {
        cands[i] = axis_scalings(a.evals[i], b.evals[i]);
        if (cands[i].empty()) {
            res.failed_criterion = 2;
            res.reason = "no common scaling matches the evaluation points on axis " + std::to_string(i + 1);
            return res;
        }
    }

    auto weights_match = [&](const IsoWitness& w, const std::vector<long>& roots) {
        for (size_t slot = 0; slot < b.slot_count(); ++slot) {
            Index J = b.unflat(slot);
            const Weight& xi = b.weights[slot];
            const Weight& lambda = a.weight(apply_tau(w.tau, J));
            if (d1.type == TwistType::Second) {
                if (xi != lambda) return false;
                continue;
            }
            RestrictedWeight rx = restrict_weight(d1.spec.aut, xi, L);
            RestrictedWeight rl = restrict_weight(d1.spec.aut, lambda, L);
            if (rx.comp0 != rl.comp0) return false;
            for (long j = 1; j < k; ++j) {
                CycNumber twist(eps_power(-j * roots[J[0]], k, L), L);
                for (size_t o = 0; o < rx.comp[j - 1].size(); ++o)
                    if (rx.comp[j - 1][o] != twist * rl.comp[j - 1][o]) return false;
            }
        }
        return true;
    };

    std::vector<size_t> pick(a.n, 0);
    std::optional<TwistedWitness> found;
    size_t first_pick = 0;
    while (!found) {
        TwistedWitness w;
        w.base.tau.push_back(first[first_pick].tau);
        w.base.scale.push_back(first[first_pick].scale);
        w.roots = first[first_pick].roots;
        for (int i = 1; i < a.n; ++i) {
            w.base.tau.push_back(cands[i][pick[i]].tau);
            w.base.scale.push_back(cands[i][pick[i]].scale);
        }
        if (weights_match(w.base, w.roots)) {
            found = w;
            break;
        }
        int i = a.n - 1;
        while (i >= 1 && ++pick[i] == cands[i].size()) pick[i--] = 0;
        if (i < 1 && ++first_pick == first.size()) break;
    }
    if (!found) {
        res.failed_criterion = 3;
        res.reason = "weight tables do not match under any admissible permutation and twist";
        return res;
    }
    auto shift = integral_difference(s1.rho, s2.rho);
    if (!shift || !d1.gamma_mu.contains(*shift)) {
        res.failed_criterion = 4;
        res.reason = "derivation shift is not in the twisted support lattice";
        return res;
    }
    found->base.shift = *shift;
    res.isomorphic = true;
    res.witness = found;
    return res;
}

bool check_twisted_witness(const TwistedDescriptor& d1, const TwistedDescriptor& d2, const TwistedWitness& w) {
    auto [a, b] = common_order_pair(d1.spec.base, d2.spec.base);
    long k = d1.spec.aut.order;
    if (d1.type != d2.type || d1.spec.aut.perm != d2.spec.aut.perm || a.dims != b.dims) return false;
    if (static_cast<int>(w.base.tau.size()) != a.n || static_cast<int>(w.roots.size()) != a.dims[0]) return false;
    for (int i = 0; i < a.n; ++i) {
        std::vector<int> sorted = w.base.tau[i];
        std::sort(sorted.begin(), sorted.end());
        for (int j = 0; j < a.dims[i]; ++j)
            if (sorted[j] != j) return false;
        CycScalar s = w.base.scale[i].lifted(a.order);
        for (int j = 0; j < a.dims[i]; ++j) {
            CycScalar expect = s * a.evals[i][w.base.tau[i][j]];
            if (i == 0) expect = expect * eps_power(w.roots[j], k, a.order);
            if (b.evals[i][j] != expect) return false;
        }
    }
    for (size_t slot = 0; slot < b.slot_count(); ++slot) {
        Index J = b.unflat(slot);
        Weight lambda = a.weight(apply_tau(w.base.tau, J));
        if (d1.type == TwistType::First) lambda = apply_aut_power(d1.spec.aut, lambda, w.roots[J[0]]);
        if (b.weights[slot] != lambda) return false;
    }
    auto shift = integral_difference(a.rho, b.rho);
    return shift && *shift == w.base.shift && d1.gamma_mu.contains(w.base.shift);
}

} // namespace loopmod
