#include "loopmod/realizer.hpp"

#include "loopmod/errors.hpp"

#include <deque>
#include <set>

namespace loopmod {

namespace {

struct Item {
    IntVec deg;
    Weight key;
    CycVec v;
};

bool in_box(const IntVec& m, long radius) {
    for (auto x : m)
        if (x < -radius || x > radius) return false;
    return true;
}

std::vector<Item> images(const ClosureProblem& p, const Item& it, const LoopOperator& op) {
    std::vector<Item> out;
    IntVec deg = it.deg;
    for (size_t i = 0; i < deg.size(); ++i) deg[i] += op.shift[i];
    if (!in_box(deg, p.radius)) return out;
    CycVec w = apply(op, it.v);
    std::map<Weight, CycVec> parts;
    for (int t = 0; t < p.dim; ++t) {
        if (w[t].is_zero()) continue;
        auto found = parts.find(p.keys[t]);
        if (found == parts.end()) found = parts.emplace(p.keys[t], CycVec(p.dim, CycNumber(p.order))).first;
        found->second[t] = w[t];
    }
    for (auto& [key, v] : parts) out.push_back({deg, key, std::move(v)});
    return out;
}

CycVec unit_vector(const ClosureProblem& p, int b) {
    CycVec v(p.dim, CycNumber(p.order));
    v[b] = CycNumber(Rational(1), p.order);
    return v;
}

void add_scaled(LoopOperator& dst, const LoopOperator& src, const CycNumber& c) {
    for (size_t b = 0; b < src.cols.size(); ++b)
        for (const auto& [t, x] : src.cols[b]) {
            CycNumber term = x * c;
            bool merged = false;
            for (auto& [t2, y] : dst.cols[b])
                if (t2 == t) {
                    y += term;
                    merged = true;
                    break;
                }
            if (!merged) dst.cols[b].emplace_back(t, term);
        }
    for (auto& col : dst.cols) std::erase_if(col, [](const auto& e) { return e.second.is_zero(); });
}

bool is_zero_op(const LoopOperator& op) {
    for (const auto& col : op.cols)
        if (!col.empty()) return false;
    return true;
}

Weight orbit_sums(const std::vector<std::vector<int>>& orbits, const Weight& w) {
    Weight out;
    for (const auto& o : orbits) {
        long s = 0;
        for (int node : o) s += w[node];
        out.push_back(s);
    }
    return out;
}

IntVec unit_shift(int n, int axis, long amount) {
    IntVec s(n, 0);
    if (axis >= 0) s[axis] = amount;
    return s;
}

std::vector<IntVec> untwisted_shifts(int n) {
    std::vector<IntVec> out{IntVec(n, 0)};
    for (int i = 0; i < n; ++i) {
        out.push_back(unit_shift(n, i, 1));
        out.push_back(unit_shift(n, i, -1));
    }
    return out;
}

} // namespace

std::optional<CycVec> Fiber::insert(CycVec v) {
    for (size_t r = 0; r < rows.size(); ++r) {
        int p = pivots[r];
        if (v[p].is_zero()) continue;
        CycNumber c = v[p];
        for (size_t k = p; k < v.size(); ++k)
            if (!rows[r][k].is_zero()) v[k] -= c * rows[r][k];
    }
    size_t q = 0;
    while (q < v.size() && v[q].is_zero()) ++q;
    if (q == v.size()) return std::nullopt;
    CycNumber inv = v[q].inverse();
    for (size_t k = q; k < v.size(); ++k)
        if (!v[k].is_zero()) v[k] = v[k] * inv;
    for (auto& row : rows) {
        if (row[q].is_zero()) continue;
        CycNumber c = row[q];
        for (size_t k = q; k < v.size(); ++k)
            if (!v[k].is_zero()) row[k] -= c * v[k];
    }
    size_t at = 0;
    while (at < pivots.size() && pivots[at] < static_cast<int>(q)) ++at;
    pivots.insert(pivots.begin() + at, static_cast<int>(q));
    rows.insert(rows.begin() + at, v);
    return v;
}

bool Fiber::contains(CycVec v) const {
    for (size_t r = 0; r < rows.size(); ++r) {
        int p = pivots[r];
        if (v[p].is_zero()) continue;
        CycNumber c = v[p];
        for (size_t k = 0; k < v.size(); ++k)
            if (!rows[r][k].is_zero()) v[k] -= c * rows[r][k];
    }
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

long GradedBox::fiber_dim(const IntVec& m) const {
    auto it = fibers.find(m);
    if (it == fibers.end()) return 0;
    long s = 0;
    for (const auto& [w, f] : it->second) s += f.dim();
    return s;
}

long GradedBox::weight_dim(const IntVec& m, const Weight& w) const {
    auto it = fibers.find(m);
    if (it == fibers.end()) return 0;
    auto jt = it->second.find(w);
    return jt == it->second.end() ? 0 : jt->second.dim();
}

std::map<Weight, long> GradedBox::character(const IntVec& m) const {
    std::map<Weight, long> out;
    auto it = fibers.find(m);
    if (it == fibers.end()) return out;
    for (const auto& [w, f] : it->second)
        if (f.dim() > 0) out[w] = f.dim();
    return out;
}

GradedCharacter character_of(const GradedBox& box) {
    GradedCharacter out;
    for (const auto& m : centered_box(box.n, box.radius)) {
        auto c = box.character(m);
        if (!c.empty()) out[m] = c;
    }
    return out;
}

CycVec apply(const LoopOperator& op, const CycVec& v) {
    long L = v.empty() ? 1 : v[0].order();
    CycVec w(v.size(), CycNumber(L));
    for (size_t b = 0; b < v.size(); ++b) {
        if (v[b].is_zero()) continue;
        for (const auto& [t, c] : op.cols[b]) w[t] += c * v[b];
    }
    return w;
}

GradedBox close_serial(const ClosureProblem& p, int basis_index, const IntVec& degree) {
    GradedBox box;
    box.n = p.n;
    box.radius = p.radius;
    if (!in_box(degree, p.radius)) return box;
    std::deque<Item> work;
    auto r = box.fibers[degree][p.keys[basis_index]].insert(unit_vector(p, basis_index));
    work.push_back({degree, p.keys[basis_index], *r});
    while (!work.empty()) {
        Item it = std::move(work.front());
        work.pop_front();
        for (const auto& op : p.ops)
            for (auto& part : images(p, it, op)) {
                auto res = box.fibers[part.deg][part.key].insert(std::move(part.v));
                if (res) work.push_back({part.deg, part.key, std::move(*res)});
            }
    }
    return box;
}

GradedBox close_parallel(const ClosureProblem& p, int basis_index, const IntVec& degree) {
    GradedBox box;
    box.n = p.n;
    box.radius = p.radius;
    if (!in_box(degree, p.radius)) return box;
    std::vector<Item> frontier;
    auto r = box.fibers[degree][p.keys[basis_index]].insert(unit_vector(p, basis_index));
    frontier.push_back({degree, p.keys[basis_index], *r});
    long nops = static_cast<long>(p.ops.size());
    while (!frontier.empty()) {
        long tasks = static_cast<long>(frontier.size()) * nops;
        std::vector<std::vector<Item>> out(tasks);
#pragma omp parallel for schedule(dynamic, 8)
        for (long t = 0; t < tasks; ++t) out[t] = images(p, frontier[t / nops], p.ops[t % nops]);
        std::vector<Item> next;
        for (auto& batch : out)
            for (auto& part : batch) {
                auto res = box.fibers[part.deg][part.key].insert(std::move(part.v));
                if (res) next.push_back({part.deg, part.key, std::move(*res)});
            }
        frontier = std::move(next);
    }
    return box;
}

GradedBox close(const ClosureProblem& p, int basis_index, const IntVec& degree, bool parallel) {
    return parallel ? close_parallel(p, basis_index, degree) : close_serial(p, basis_index, degree);
}

TensorModule build_module(const PsiSpec& spec, long cap) { return build_tensor(spec.algebra, spec.weights, cap); }

LoopOperator loop_operator(const PsiSpec& spec, const TensorModule& M, GenKind kind, int node, const IntVec& shift) {
    LoopOperator op;
    op.shift = shift;
    op.cols.resize(M.dim());
    std::vector<CycNumber> coeff;
    for (size_t s = 0; s < spec.slot_count(); ++s)
        coeff.emplace_back(spec.monomial(spec.unflat(s), shift), spec.order);
    SparseColumn tmp;
    for (int b = 0; b < M.dim(); ++b) {
        std::map<int, CycNumber> acc;
        for (size_t s = 0; s < spec.slot_count(); ++s) {
            tmp.clear();
            M.act(kind, node, static_cast<int>(s), b, tmp);
            for (const auto& [t, c] : tmp) {
                CycNumber term = coeff[s] * CycNumber(c, spec.order);
                auto it = acc.find(t);
                if (it == acc.end())
                    acc.emplace(t, term);
                else
                    it->second += term;
            }
        }
        for (auto& [t, c] : acc)
            if (!c.is_zero()) op.cols[b].emplace_back(t, c);
    }
    return op;
}

ClosureProblem untwisted_problem(const PsiSpec& spec, const TensorModule& M, long radius) {
    ClosureProblem p;
    p.n = spec.n;
    p.radius = radius;
    p.order = spec.order;
    p.dim = M.dim();
    p.keys = M.weights;
    for (const auto& s : untwisted_shifts(spec.n))
        for (int i = 0; i < spec.algebra.rank; ++i)
            for (GenKind kind : {GenKind::E, GenKind::F, GenKind::H}) p.ops.push_back(loop_operator(spec, M, kind, i, s));
    return p;
}

ClosureProblem untwisted_problem_coarse(const TwistedSpec& ts, const TensorModule& M, long radius) {
    ClosureProblem p = untwisted_problem(ts.base, M, radius);
    auto orbits = node_orbits(ts.aut);
    for (auto& k : p.keys) k = orbit_sums(orbits, k);
    return p;
}

ClosureProblem twisted_problem(const TwistedSpec& ts, const TensorModule& M, long radius) {
    const PsiSpec& spec = ts.base;
    long k = ts.aut.order;
    long L = spec.order;
    int n = spec.n;
    auto orbits = node_orbits(ts.aut);
    ClosureProblem p;
    p.n = n;
    p.radius = radius;
    p.order = L;
    p.dim = M.dim();
    for (const auto& w : M.weights) p.keys.push_back(orbit_sums(orbits, w));

    for (long j = 0; j < k; ++j) {
        std::vector<IntVec> shifts;
        if (j == 0) {
            shifts.push_back(IntVec(n, 0));
            for (int i = 1; i < n; ++i) {
                shifts.push_back(unit_shift(n, i, 1));
                shifts.push_back(unit_shift(n, i, -1));
            }
            shifts.push_back(unit_shift(n, 0, k));
            shifts.push_back(unit_shift(n, 0, -k));
        }
        if (k > 1 && j == 1) shifts.push_back(unit_shift(n, 0, 1));
        if (k > 1 && j == k - 1) shifts.push_back(unit_shift(n, 0, -1));
        for (const auto& s : shifts)
            for (const auto& orb : orbits)
                for (GenKind kind : {GenKind::E, GenKind::F, GenKind::H}) {
                    LoopOperator op;
                    op.shift = s;
                    op.cols.resize(M.dim());
                    int node = orb[0];
                    for (long t = 0; t < k; ++t) {
                        CycNumber c(CycScalar::root(-j * t * (L / k), L), L);
                        add_scaled(op, loop_operator(spec, M, kind, node, s), c);
                        node = ts.aut.perm[node];
                    }
                    if (!is_zero_op(op)) p.ops.push_back(std::move(op));
                }
    }
    return p;
}

GradedBox generate_component(const PsiSpec& spec, const RealizerOptions& opt, const IntVec& start) {
    TensorModule M = build_module(spec, opt.cap);
    ClosureProblem p = untwisted_problem(spec, M, opt.radius);
    return close(p, 0, start.empty() ? IntVec(spec.n, 0) : start, opt.parallel);
}

GradedCharacter graded_character(const PsiSpec& spec, const RealizerOptions& opt) {
    return character_of(generate_component(spec, opt));
}

std::vector<IntVec> centered_reps(const Lattice& gamma, long radius) {
    IntVec r = gamma.axis_periods();
    std::vector<IntVec> out;
    for (auto m : gamma.coset_reps()) {
        for (size_t i = 0; i < m.size(); ++i) {
            if (2 * m[i] > r[i]) m[i] -= r[i];
            if (m[i] < -radius || m[i] > radius)
                fail(ErrorKind::Unsupported, "box radius " + std::to_string(radius) + " too small for coset representatives");
        }
        out.push_back(m);
    }
    return out;
}

ComponentReport decompose(const PsiSpec& spec, const Lattice& gamma, const RealizerOptions& opt) {
    TensorModule M = build_module(spec, opt.cap);
    ClosureProblem p = untwisted_problem(spec, M, opt.radius);
    ComponentReport rep;
    rep.starts = centered_reps(gamma, opt.radius);
    std::vector<GradedBox> comps;
    for (const auto& s : rep.starts) comps.push_back(close(p, 0, s, opt.parallel));
    rep.count = static_cast<long>(comps.size());

    std::map<Weight, long> mult;
    for (const auto& w : M.weights) ++mult[w];
    const Weight& top = M.weights[0];
    for (const auto& m : centered_box(spec.n, opt.radius)) {
        DegreeRow row;
        row.degree = m;
        row.expected = M.dim();
        for (const auto& c : comps) row.component_dims.push_back(c.fiber_dim(m));
        for (const auto& [w, count] : mult) {
            Fiber sum;
            long parts = 0;
            for (const auto& c : comps) {
                auto it = c.fibers.find(m);
                if (it == c.fibers.end()) continue;
                auto jt = it->second.find(w);
                if (jt == it->second.end()) continue;
                parts += jt->second.dim();
                for (const auto& r : jt->second.rows) sum.insert(r);
            }
            if (sum.dim() != parts) rep.disjoint = false;
            if (sum.dim() != count) rep.exhaustive = false;
            row.total += sum.dim();
        }
        row.top_weight_in_first = comps[0].weight_dim(m, top) > 0;
        rep.rows.push_back(row);
    }
    return rep;
}

long count_components(const PsiSpec& spec, const RealizerOptions& opt) {
    ComponentReport rep = decompose(spec, support_lattice(spec), opt);
    if (!rep.disjoint || !rep.exhaustive)
        fail(ErrorKind::StructureViolation, "component closures are not a direct decomposition of the box");
    return rep.count;
}

GradedBox twisted_generate_component(const TwistedSpec& ts, const IntVec& start, const RealizerOptions& opt) {
    TensorModule M = build_module(ts.base, opt.cap);
    ClosureProblem p = twisted_problem(ts, M, opt.radius);
    return close(p, 0, start.empty() ? IntVec(ts.base.n, 0) : start, opt.parallel);
}

TwistedDecomposition twisted_decomposition(const TwistedSpec& ts, const Lattice& gamma_mu, const RealizerOptions& opt) {
    TensorModule M = build_module(ts.base, opt.cap);
    ClosureProblem tp = twisted_problem(ts, M, opt.radius);
    ClosureProblem up = untwisted_problem_coarse(ts, M, opt.radius);
    TwistedDecomposition rep;
    rep.starts = centered_reps(gamma_mu, opt.radius);
    std::vector<GradedBox> comps;
    for (const auto& s : rep.starts) comps.push_back(close(tp, 0, s, opt.parallel));
    GradedBox whole = close(up, 0, IntVec(ts.base.n, 0), opt.parallel);
    rep.count = static_cast<long>(comps.size());
    std::set<Weight> keys(up.keys.begin(), up.keys.end());
    for (const auto& m : centered_box(ts.base.n, opt.radius)) {
        for (const auto& w : keys) {
            Fiber sum;
            long parts = 0;
            const Fiber* outer = nullptr;
            auto ot = whole.fibers.find(m);
            if (ot != whole.fibers.end()) {
                auto jt = ot->second.find(w);
                if (jt != ot->second.end()) outer = &jt->second;
            }
            for (const auto& c : comps) {
                auto it = c.fibers.find(m);
                if (it == c.fibers.end()) continue;
                auto jt = it->second.find(w);
                if (jt == it->second.end()) continue;
                parts += jt->second.dim();
                for (const auto& r : jt->second.rows) {
                    sum.insert(r);
                    if (!outer || !outer->contains(r)) rep.contained = false;
                }
            }
            if (sum.dim() != parts) rep.disjoint = false;
            if (sum.dim() != (outer ? outer->dim() : 0)) rep.exhaustive = false;
        }
    }
    return rep;
}

} // namespace loopmod
