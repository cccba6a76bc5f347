#include "loopmod/liedata.hpp"

#include "loopmod/errors.hpp"

#include <algorithm>
#include <set>

namespace loopmod {

namespace {

std::vector<std::vector<long>> cartan_matrix(char series, int d) {
    std::vector<std::vector<long>> c(d, std::vector<long>(d, 0));
    for (int i = 0; i < d; ++i) c[i][i] = 2;
    auto link = [&](int i, int j, long cij, long cji) {
        c[i][j] = cij;
        c[j][i] = cji;
    };
    switch (series) {
    case 'A':
        for (int i = 0; i + 1 < d; ++i) link(i, i + 1, -1, -1);
        break;
    case 'B':
        for (int i = 0; i + 2 < d; ++i) link(i, i + 1, -1, -1);
        link(d - 2, d - 1, -1, -2);
        break;
    case 'C':
        for (int i = 0; i + 2 < d; ++i) link(i, i + 1, -1, -1);
        link(d - 2, d - 1, -2, -1);
        break;
    case 'D':
        for (int i = 0; i + 3 < d; ++i) link(i, i + 1, -1, -1);
        link(d - 3, d - 2, -1, -1);
        link(d - 3, d - 1, -1, -1);
        break;
    case 'E':
        link(0, 2, -1, -1);
        link(1, 3, -1, -1);
        for (int i = 2; i + 1 < d; ++i) link(i, i + 1, -1, -1);
        break;
    case 'F':
        link(0, 1, -1, -1);
        link(1, 2, -1, -2);
        link(2, 3, -1, -1);
        break;
    case 'G':
        link(0, 1, -3, -1);
        break;
    default:
        break;
    }
    return c;
}

bool rank_supported(char series, int d) {
    switch (series) {
    case 'A': return d >= 1;
    case 'B': return d >= 2;
    case 'C': return d >= 3;
    case 'D': return d >= 4;
    case 'E': return d >= 6 && d <= 8;
    case 'F': return d == 4;
    case 'G': return d == 2;
    default: return false;
    }
}

long pairing(const SimpleLieAlgebra& g, const std::vector<long>& root, int i) {
    long s = 0;
    for (int j = 0; j < g.rank; ++j) s += root[j] * g.cartan[i][j];
    return s;
}

} // namespace

Weight SimpleLieAlgebra::simple_root(int i) const {
    Weight a(rank);
    for (int j = 0; j < rank; ++j) a[j] = cartan[j][i];
    return a;
}

SimpleLieAlgebra build_algebra(char series, int rank) {
    if (!rank_supported(series, rank))
        fail(ErrorKind::Unsupported, std::string("unsupported algebra ") + series + std::to_string(rank));
    SimpleLieAlgebra g;
    g.series = series;
    g.rank = rank;
    g.cartan = cartan_matrix(series, rank);

    g.half_norms.assign(rank, Rational(0));
    g.half_norms[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < rank; ++j) {
            if (j == i || g.cartan[i][j] == 0 || g.half_norms[j] != 0) continue;
            g.half_norms[j] = g.half_norms[i] * g.cartan[i][j] / g.cartan[j][i];
            stack.push_back(j);
        }
    }

    std::set<std::vector<long>> known;
    std::vector<std::vector<long>> layer;
    for (int i = 0; i < rank; ++i) {
        std::vector<long> a(rank, 0);
        a[i] = 1;
        layer.push_back(a);
        known.insert(a);
    }
    while (!layer.empty()) {
        for (const auto& r : layer) g.positive_roots.push_back(r);
        std::set<std::vector<long>> next;
        for (const auto& r : layer) {
            for (int i = 0; i < rank; ++i) {
                long p = 0;
                std::vector<long> down = r;
                while (true) {
                    --down[i];
                    if (!known.count(down)) break;
                    ++p;
                }
                if (p - pairing(g, r, i) > 0) {
                    std::vector<long> up = r;
                    ++up[i];
                    if (!known.count(up)) next.insert(up);
                }
            }
        }
        layer.assign(next.begin(), next.end());
        for (const auto& r : layer) known.insert(r);
    }
    return g;
}

bool is_dominant(const Weight& w) {
    return std::all_of(w.begin(), w.end(), [](long x) { return x >= 0; });
}

void check_weight(const SimpleLieAlgebra& g, const Weight& w) {
    if (static_cast<int>(w.size()) != g.rank)
        fail(ErrorKind::Input, "weight has " + std::to_string(w.size()) + " coordinates, algebra " + g.name() +
                                   " has rank " + std::to_string(g.rank));
    if (!is_dominant(w)) fail(ErrorKind::Input, "weight is not dominant");
}

Integer weyl_dimension(const SimpleLieAlgebra& g, const Weight& w) {
    check_weight(g, w);
    Rational dim(1);
    for (const auto& root : g.positive_roots) {
        Rational num, den;
        for (int j = 0; j < g.rank; ++j) {
            Rational c = Rational(root[j]) * g.half_norms[j];
            num += c * (w[j] + 1);
            den += c;
        }
        dim *= num / den;
    }
    if (!is_integer(dim)) fail(ErrorKind::Config, "non-integral dimension");
    return dim.get_num();
}

void validate_automorphism(const SimpleLieAlgebra& g, const DiagramAutomorphism& mu) {
    int d = g.rank;
    if (static_cast<int>(mu.perm.size()) != d) fail(ErrorKind::Input, "automorphism size does not match rank");
    std::vector<int> sorted = mu.perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < d; ++i)
        if (sorted[i] != i) fail(ErrorKind::Input, "automorphism is not a permutation of the nodes");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (g.cartan[mu.perm[i]][mu.perm[j]] != g.cartan[i][j])
                fail(ErrorKind::Unsupported, "permutation is not a diagram automorphism of " + g.name());
    std::vector<int> cur = mu.perm;
    int k = 1;
    auto is_id = [&](const std::vector<int>& p) {
        for (int i = 0; i < d; ++i)
            if (p[i] != i) return false;
        return true;
    };
    while (!is_id(cur)) {
        std::vector<int> nxt(d);
        for (int i = 0; i < d; ++i) nxt[i] = mu.perm[cur[i]];
        cur = nxt;
        ++k;
    }
    if (k != mu.order)
        fail(ErrorKind::Input, "declared order " + std::to_string(mu.order) + " but permutation has order " +
                                   std::to_string(k));
}

std::vector<std::vector<int>> node_orbits(const DiagramAutomorphism& mu) {
    int d = static_cast<int>(mu.perm.size());
    std::vector<bool> seen(d, false);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < d; ++i) {
        if (seen[i]) continue;
        std::vector<int> orb;
        for (int j = i; !seen[j]; j = mu.perm[j]) {
            seen[j] = true;
            orb.push_back(j);
        }
        out.push_back(orb);
    }
    return out;
}

Weight apply_aut(const DiagramAutomorphism& mu, const Weight& w) {
    Weight out(w.size());
    for (size_t i = 0; i < w.size(); ++i) out[mu.perm[i]] = w[i];
    return out;
}

Weight apply_aut_power(const DiagramAutomorphism& mu, const Weight& w, long power) {
    long k = std::max(1, mu.order);
    long p = mod64(power, k);
    Weight out = w;
    for (long t = 0; t < p; ++t) out = apply_aut(mu, out);
    return out;
}

bool is_fixed(const DiagramAutomorphism& mu, const Weight& w) { return apply_aut(mu, w) == w; }

RestrictedWeight restrict_weight(const DiagramAutomorphism& mu, const Weight& w, long order) {
    long k = mu.order;
    if (order % k != 0) fail(ErrorKind::Config, "root-of-unity order must be a multiple of the automorphism order");
    RestrictedWeight r;
    auto orbits = node_orbits(mu);
    r.comp.assign(k - 1, {});
    for (const auto& orb : orbits) {
        Rational s;
        for (int node : orb) s += w[node];
        r.comp0.push_back(s);
        if (static_cast<long>(orb.size()) != k || k == 1) continue;
        for (long j = 1; j < k; ++j) {
            CycVector acc(order);
            for (long t = 0; t < k; ++t) acc.add_root(-j * t * (order / k), Rational(w[orb[t]]));
            r.comp[j - 1].push_back(acc.reduced());
        }
    }
    return r;
}

} // namespace loopmod
