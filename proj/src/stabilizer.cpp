#include "loopmod/stabilizer.hpp"

#include "loopmod/errors.hpp"

#include <map>

namespace loopmod {

namespace {

struct MergedTable {
    std::vector<std::vector<CycScalar>> values;
    std::vector<std::map<CycScalar, int>> lookup;
    std::vector<long> sizes;
    std::vector<std::vector<long>> coeffs;

    long flat(const std::vector<int>& idx) const {
        long k = 0;
        for (size_t i = 0; i < sizes.size(); ++i) k = k * sizes[i] + idx[i];
        return k;
    }
};

MergedTable merge(const CharacterTable& t) {
    MergedTable m;
    size_t n = t.values.size();
    std::vector<std::vector<int>> remap(n);
    for (size_t i = 0; i < n; ++i) {
        m.lookup.emplace_back();
        m.values.emplace_back();
        for (const auto& v : t.values[i]) {
            auto it = m.lookup[i].find(v);
            if (it == m.lookup[i].end()) {
                it = m.lookup[i].emplace(v, static_cast<int>(m.values[i].size())).first;
                m.values[i].push_back(v);
            }
            remap[i].push_back(it->second);
        }
        m.sizes.push_back(static_cast<long>(m.values[i].size()));
    }
    long total = 1;
    for (long s : m.sizes) total *= s;
    size_t width = t.coeffs.empty() ? 0 : t.coeffs[0].size();
    m.coeffs.assign(total, std::vector<long>(width, 0));
    std::vector<int> idx(n, 0);
    for (size_t k = 0; k < t.coeffs.size(); ++k) {
        size_t rem = k;
        for (size_t i = n; i-- > 0;) {
            idx[i] = remap[i][rem % t.values[i].size()];
            rem /= t.values[i].size();
        }
        auto& dst = m.coeffs[m.flat(idx)];
        for (size_t c = 0; c < width; ++c) dst[c] += t.coeffs[k][c];
    }
    return m;
}

bool is_zero_vec(const std::vector<long>& v) {
    for (long x : v)
        if (x != 0) return false;
    return true;
}

std::vector<int> unflat(long k, const std::vector<long>& sizes) {
    std::vector<int> idx(sizes.size());
    for (size_t i = sizes.size(); i-- > 0;) {
        idx[i] = static_cast<int>(k % sizes[i]);
        k /= sizes[i];
    }
    return idx;
}

} // namespace

std::vector<std::vector<Rational>> character_stabilizer(const CharacterTable& table) {
    MergedTable m = merge(table);
    size_t n = m.values.size();
    std::vector<long> support;
    for (long k = 0; k < static_cast<long>(m.coeffs.size()); ++k)
        if (!is_zero_vec(m.coeffs[k])) support.push_back(k);
    if (support.empty()) fail(ErrorKind::TrivialModule, "all weights vanish");

    std::vector<std::vector<int>> supp_idx;
    for (long k : support) supp_idx.push_back(unflat(k, m.sizes));
    const auto& base = supp_idx[0];

    std::vector<std::vector<Rational>> out;
    for (const auto& target : supp_idx) {
        std::vector<CycScalar> omega(n);
        bool unit = true;
        for (size_t i = 0; i < n && unit; ++i) {
            omega[i] = m.values[i][target[i]] / m.values[i][base[i]];
            unit = omega[i].is_root_of_unity();
        }
        if (!unit) continue;
        bool ok = true;
        std::vector<int> image(n);
        for (size_t s = 0; s < support.size() && ok; ++s) {
            for (size_t i = 0; i < n && ok; ++i) {
                auto it = m.lookup[i].find(m.values[i][supp_idx[s][i]] * omega[i]);
                if (it == m.lookup[i].end())
                    ok = false;
                else
                    image[i] = it->second;
            }
            if (ok) ok = m.coeffs[m.flat(image)] == m.coeffs[support[s]];
        }
        if (!ok) continue;
        std::vector<Rational> angles(n);
        for (size_t i = 0; i < n; ++i) angles[i] = omega[i].angle();
        out.push_back(angles);
    }
    return out;
}

Lattice annihilator(int n, const std::vector<std::vector<Rational>>& angles, std::vector<int> ordering) {
    IntVec periods(n, 1);
    for (const auto& a : angles)
        for (int i = 0; i < n; ++i) periods[i] = lcm64(periods[i], to_int64(a[i].get_den()));
    std::vector<IntVec> gens;
    for (int i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = periods[i];
        gens.push_back(e);
    }
    IntVec lo(n, 0), hi(n);
    for (int i = 0; i < n; ++i) hi[i] = periods[i] - 1;
    for (const auto& m : box_points(lo, hi)) {
        bool member = true;
        for (const auto& a : angles) {
            Rational s;
            for (int i = 0; i < n; ++i) s += a[i] * m[i];
            s.canonicalize();
            if (!is_integer(s)) {
                member = false;
                break;
            }
        }
        if (member) gens.push_back(m);
    }
    return Lattice::from_generators(n, gens, std::move(ordering));
}

Lattice support_of(const CharacterTable& table, std::vector<int> ordering) {
    int n = static_cast<int>(table.values.size());
    return annihilator(n, character_stabilizer(table), std::move(ordering));
}

} // namespace loopmod
