#include "fixtures.hpp"

#include <doctest.h>

using namespace fx;

namespace {

PsiSpec even_spec() { return spec('A', 1, {2}, {{1}, {1}}, {{Q(1), Q(-1)}}); }

RealizerOptions opts(long radius = 3) {
    RealizerOptions o;
    o.radius = radius;
    return o;
}

CycVec unit(int dim, int b, long L) {
    CycVec v(dim, CycNumber(L));
    v[b] = CycNumber(Rational(1), L);
    return v;
}

CycVec sub(const CycVec& x, const CycVec& y) {
    CycVec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
    return out;
}

bool is_zero(const CycVec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

} // namespace

TEST_CASE("finite modules") {
    SimpleLieAlgebra a1 = build_algebra('A', 1);
    CHECK(build_tensor(a1, {{1}, {1}}).dim() == 4);
    IrrepModule V = build_irrep(a1, {2});
    CHECK(V.dim() == 3);
    CHECK(V.weights == std::vector<Weight>{{2}, {0}, {-2}});
    CHECK(build_irrep(build_algebra('A', 2), {1, 0}).dim() == 3);
    try {
        (void)build_tensor(build_algebra('A', 2), {{1, 1}, {1, 1}, {1, 0}}, 64);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CapExceeded);
    }
}

TEST_CASE("Chevalley relations hold on the constructed modules") {
    for (auto [series, rank, w] : {std::tuple{'A', 1, Weight{3}}, {'A', 2, Weight{1, 1}}, {'A', 2, Weight{2, 0}},
                                   {'B', 2, Weight{1, 0}}, {'G', 2, Weight{1, 0}}}) {
        SimpleLieAlgebra g = build_algebra(series, rank);
        IrrepModule V = build_irrep(g, w);
        auto act = [&](const std::vector<SparseColumn>& op, const std::vector<Rational>& v) {
            std::vector<Rational> out(V.dim());
            for (int b = 0; b < V.dim(); ++b)
                if (v[b] != 0)
                    for (const auto& [t, c] : op[b]) out[t] += c * v[b];
            return out;
        };
        for (int b = 0; b < V.dim(); ++b) {
            std::vector<Rational> v(V.dim());
            v[b] = 1;
            for (int i = 0; i < rank; ++i)
                for (int j = 0; j < rank; ++j) {
                    auto ef = act(V.e[i], act(V.f[j], v));
                    auto fe = act(V.f[j], act(V.e[i], v));
                    for (int t = 0; t < V.dim(); ++t) {
                        Rational want = (i == j && t == b) ? Rational(V.weights[b][i]) : Rational(0);
                        CHECK(ef[t] - fe[t] == want);
                    }
                }
        }
    }
}

TEST_CASE("loop operators") {
    PsiSpec s = even_spec();
    TensorModule M = build_module(s, 64);
    for (long m = 0; m <= 3; ++m) {
        LoopOperator h = loop_operator(s, M, GenKind::H, 0, {m});
        CycVec out = loopmod::apply(h, unit(M.dim(), 0, s.order));
        CHECK(out[0] == eval_functional(s, {m})[0].reduced());
        for (int b = 1; b < M.dim(); ++b) CHECK(out[b].is_zero());
    }
    LoopOperator f1 = loop_operator(s, M, GenKind::F, 0, {1});
    CHECK_FALSE(is_zero(loopmod::apply(f1, unit(M.dim(), 0, s.order))));
    CHECK(is_zero(loopmod::apply(f1, CycVec(M.dim(), CycNumber(s.order)))));
}

TEST_CASE("loop brackets") {
    PsiSpec s = spec('A', 2, {2}, {{1, 0}, {0, 1}}, {{Q(2), Z(1, 3)}});
    TensorModule M = build_module(s, 64);
    for (long a = -1; a <= 1; ++a)
        for (long c = -1; c <= 1; ++c)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    LoopOperator e = loop_operator(s, M, GenKind::E, i, {a});
                    LoopOperator f = loop_operator(s, M, GenKind::F, j, {c});
                    LoopOperator h = loop_operator(s, M, GenKind::H, i, {a + c});
                    for (int b = 0; b < M.dim(); ++b) {
                        CycVec v = unit(M.dim(), b, s.order);
                        CycVec br = sub(loopmod::apply(e, loopmod::apply(f, v)), loopmod::apply(f, loopmod::apply(e, v)));
                        if (i == j) br = sub(br, loopmod::apply(h, v));
                        CHECK(is_zero(br));
                    }
                }
}

TEST_CASE("closures of small examples") {
    PsiSpec one = spec('A', 1, {1}, {{1}}, {{Q(1)}});
    GradedBox b = generate_component(one, opts());
    for (long m = -3; m <= 3; ++m) CHECK(b.fiber_dim({m}) == 2);

    // Even degrees carry the symmetric square, odd degrees the exterior square.
    GradedBox e = generate_component(even_spec(), opts());
    for (long m = -3; m <= 3; ++m) {
        CHECK(e.fiber_dim({m}) == (m % 2 == 0 ? 3 : 1));
        CHECK((e.weight_dim({m}, {2}) > 0) == (m % 2 == 0));
    }

    PsiSpec triv = spec('A', 1, {1}, {{0}}, {{Q(5)}});
    GradedBox t = generate_component(triv, opts());
    for (long m = -3; m <= 3; ++m) CHECK(t.fiber_dim({m}) == (m == 0 ? 1 : 0));
    GradedCharacter ch = character_of(t);
    CHECK(ch.size() == 1);
    CHECK(ch.at({0}) == std::map<Weight, long>{{{0}, 1}});
}

TEST_CASE("component counts") {
    CHECK(count_components(even_spec(), opts()) == 2);
    CHECK(count_components(spec('A', 1, {2}, {{1}, {2}}, {{Q(1), Q(-1)}}), opts()) == 1);
    PsiSpec diag = spec('A', 1, {2, 2}, {{1}, {2}, {2}, {1}}, {{Q(1), Q(-1)}, {Q(1), Q(-1)}});
    Lattice g = support_lattice(diag);
    CHECK(g == Lattice::from_generators(2, {{2, 0}, {1, 1}}));
    ComponentReport rep = decompose(diag, g, opts(2));
    CHECK(rep.count == 2);
    CHECK(rep.disjoint);
    CHECK(rep.exhaustive);
    for (const auto& row : rep.rows) {
        CHECK(row.total == 36);
        CHECK(row.top_weight_in_first == g.contains(row.degree));
    }
}

TEST_CASE("graded characters") {
    PsiSpec two = spec('A', 1, {1}, {{1}}, {{Q(2)}});
    PsiSpec six = spec('A', 1, {1}, {{1}}, {{Q(6)}});
    CHECK(graded_character(two, opts()) == graded_character(six, opts()));
    GradedCharacter ch = graded_character(even_spec(), opts());
    for (const auto& [m, ws] : ch) CHECK(ws.count({2}) == (m[0] % 2 == 0 ? 1u : 0u));
}

TEST_CASE("twisted closures") {
    auto flip = a2_flip();
    TwistedSpec sym = twisted(spec('A', 2, {1}, {{1, 1}}, {{Q(1)}}), flip.perm, 2);
    GradedBox tw = twisted_generate_component(sym, {}, opts());
    GradedBox un = generate_component(sym.base, opts());
    // Keys are orbit sums; the top one is 2 for the weight (1,1).
    for (long m = -3; m <= 3; ++m) {
        CHECK((tw.weight_dim({m}, {2}) > 0) == (m % 2 == 0));
        CHECK(un.fiber_dim({m}) == 8);
        CHECK(tw.fiber_dim({m}) <= un.fiber_dim({m}));
    }
    TwistedDecomposition dec = twisted_decomposition(sym, twisted_support(sym), opts());
    CHECK(dec.count == 2);
    CHECK(dec.contained);
    CHECK(dec.disjoint);

    TwistedSpec asym = twisted(spec('A', 2, {1}, {{1, 0}}, {{Q(1)}}), flip.perm, 2);
    GradedBox ta = twisted_generate_component(asym, {}, opts());
    for (long m = -3; m <= 3; ++m) CHECK(ta.weight_dim({m}, {1}) > 0);

    TwistedSpec id = twisted(spec('A', 2, {2}, {{1, 0}, {0, 1}}, {{Q(1), Q(2)}}), {0, 1}, 1);
    CHECK(character_of(twisted_generate_component(id, {}, opts(2))) == graded_character(id.base, opts(2)));
}
