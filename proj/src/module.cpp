#include "loopmod/module.hpp"

#include "loopmod/errors.hpp"

#include <map>
#include <optional>

namespace loopmod {

namespace {

using Dense = std::vector<Rational>;

// Solves sum_t x_t cols[t] = rhs; cols are linearly independent.
std::optional<Dense> solve(const std::vector<Dense>& cols, const Dense& rhs) {
    size_t m = rhs.size(), k = cols.size();
    std::vector<Dense> aug(m, Dense(k + 1));
    for (size_t r = 0; r < m; ++r) {
        for (size_t c = 0; c < k; ++c) aug[r][c] = cols[c][r];
        aug[r][k] = rhs[r];
    }
    size_t row = 0;
    std::vector<size_t> pivcol;
    for (size_t c = 0; c < k && row < m; ++c) {
        size_t p = row;
        while (p < m && aug[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(aug[p], aug[row]);
        Rational inv = 1 / aug[row][c];
        for (size_t j = c; j <= k; ++j) aug[row][j] *= inv;
        for (size_t r = 0; r < m; ++r) {
            if (r == row || aug[r][c] == 0) continue;
            Rational f = aug[r][c];
            for (size_t j = c; j <= k; ++j) aug[r][j] -= f * aug[row][j];
        }
        pivcol.push_back(c);
        ++row;
    }
    for (size_t r = row; r < m; ++r)
        if (aug[r][k] != 0) return std::nullopt;
    Dense x(k);
    for (size_t r = 0; r < pivcol.size(); ++r) x[pivcol[r]] = aug[r][k];
    return x;
}

void add_to(SparseColumn& col, int idx, const Rational& c) {
    if (c == 0) return;
    for (auto& [j, v] : col)
        if (j == idx) {
            v += c;
            return;
        }
    col.emplace_back(idx, c);
}

void prune(SparseColumn& col) {
    std::erase_if(col, [](const auto& p) { return p.second == 0; });
}

} // namespace

IrrepModule build_irrep(const SimpleLieAlgebra& g, const Weight& w, long cap) {
    check_weight(g, w);
    int d = g.rank;
    IrrepModule V;
    V.highest = w;
    V.weights.push_back(w);
    V.e.assign(d, {SparseColumn{}});
    V.f.assign(d, {});
    std::vector<Weight> roots;
    for (int i = 0; i < d; ++i) roots.push_back(g.simple_root(i));

    std::vector<int> prev{0};
    while (!prev.empty()) {
        std::map<int, int> pos;
        for (size_t t = 0; t < prev.size(); ++t) pos[prev[t]] = static_cast<int>(t);
        size_t width = prev.size() * d;

        struct Candidate {
            int src, node;
            Dense sig;
        };
        std::map<Weight, std::vector<Candidate>> by_weight;
        for (int b : prev) {
            for (int i = 0; i < d; ++i) {
                Candidate c{b, i, Dense(width)};
                // e_j f_i b = f_i e_j b + [i == j] <wt b, h_i> b
                for (int j = 0; j < d; ++j) {
                    for (const auto& [src, coeff] : V.e[j][b])
                        for (const auto& [dst, c2] : V.f[i][src]) c.sig[j * prev.size() + pos.at(dst)] += coeff * c2;
                    if (i == j) c.sig[j * prev.size() + pos.at(b)] += V.weights[b][i];
                }
                Weight wt = V.weights[b];
                for (int k = 0; k < d; ++k) wt[k] -= roots[i][k];
                by_weight[wt].push_back(std::move(c));
            }
        }
        std::vector<int> next;
        for (int i = 0; i < d; ++i) V.f[i].resize(V.weights.size());
        for (auto& [wt, cands] : by_weight) {
            std::vector<Dense> accepted;
            std::vector<int> accepted_idx;
            for (auto& c : cands) {
                auto x = solve(accepted, c.sig);
                SparseColumn col;
                if (x) {
                    for (size_t t = 0; t < x->size(); ++t) add_to(col, accepted_idx[t], (*x)[t]);
                } else {
                    int idx = static_cast<int>(V.weights.size());
                    if (idx + 1 > cap) fail(ErrorKind::CapExceeded, "module dimension exceeds cap " + std::to_string(cap));
                    V.weights.push_back(wt);
                    for (int j = 0; j < d; ++j) {
                        SparseColumn ej;
                        for (size_t t = 0; t < prev.size(); ++t) add_to(ej, prev[t], c.sig[j * prev.size() + t]);
                        V.e[j].push_back(ej);
                    }
                    accepted.push_back(c.sig);
                    accepted_idx.push_back(idx);
                    next.push_back(idx);
                    add_to(col, idx, Rational(1));
                }
                prune(col);
                V.f[c.node][c.src] = col;
            }
        }
        for (int i = 0; i < d; ++i) V.f[i].resize(V.weights.size());
        prev = next;
    }
    return V;
}

TensorModule build_tensor(const SimpleLieAlgebra& g, const std::vector<Weight>& slots, long cap) {
    TensorModule T;
    long dim = 1;
    for (const auto& w : slots) {
        Integer wd = weyl_dimension(g, w);
        dim *= to_int64(wd);
        if (dim > cap) fail(ErrorKind::CapExceeded, "tensor dimension exceeds cap " + std::to_string(cap));
    }
    for (const auto& w : slots) T.factors.push_back(build_irrep(g, w, cap));
    T.strides.assign(slots.size(), 1);
    for (size_t s = slots.size(); s-- > 1;) T.strides[s - 1] = T.strides[s] * T.factors[s].dim();
    T.weights.assign(dim, Weight(g.rank, 0));
    for (int b = 0; b < dim; ++b)
        for (size_t s = 0; s < slots.size(); ++s) {
            const Weight& ws = T.factors[s].weights[T.digit(b, static_cast<int>(s))];
            for (int k = 0; k < g.rank; ++k) T.weights[b][k] += ws[k];
        }
    return T;
}

void TensorModule::act(GenKind kind, int node, int slot, int b, SparseColumn& out) const {
    const IrrepModule& V = factors[slot];
    int dg = digit(b, slot);
    int base = b - dg * strides[slot];
    if (kind == GenKind::H) {
        long h = V.weights[dg][node];
        if (h != 0) out.emplace_back(b, Rational(h));
        return;
    }
    const SparseColumn& col = kind == GenKind::E ? V.e[node][dg] : V.f[node][dg];
    for (const auto& [t, c] : col) out.emplace_back(base + t * strides[slot], c);
}

} // namespace loopmod
