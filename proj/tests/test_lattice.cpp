#include "fixtures.hpp"

#include <doctest.h>

using namespace fx;

namespace {

Lattice two_by_two() { return Lattice::from_generators(2, {{2, 0}, {1, 1}}); }

std::vector<IntVec> random_gens(Rng& rng, int n) {
    std::vector<IntVec> gens;
    int count = static_cast<int>(uniform(rng, n, n + 2));
    for (int g = 0; g < count; ++g) {
        IntVec v(n);
        for (auto& x : v) x = uniform(rng, -5, 5);
        gens.push_back(v);
    }
    return gens;
}

} // namespace

TEST_CASE("canonical basis of a small lattice") {
    Lattice L = two_by_two();
    CHECK(L.basis() == std::vector<IntVec>{{2, 0}, {1, 1}});
    CHECK(L.index() == 2);
    CHECK(L.full_rank());
    Lattice I = Lattice::from_generators(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(I.index() == 1);
    CHECK(I == Lattice::full(3));
}

TEST_CASE("rank-deficient lattices are flagged") {
    Lattice L = Lattice::from_generators(2, {{2, 0}});
    CHECK_FALSE(L.full_rank());
    try {
        (void)L.index();
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InfiniteIndex);
    }
}

TEST_CASE("index of diagonal lattices") {
    CHECK(Lattice::diagonal({2, 3, 5}).index() == 30);
    CHECK(Lattice::full(2).index() == 1);
}

TEST_CASE("membership") {
    Lattice L = two_by_two();
    CHECK(L.contains({1, 1}));
    CHECK_FALSE(L.contains({1, 0}));
    CHECK(L.contains({0, 2}));
    CHECK(L.contains({0, 0}));
    CHECK_FALSE(Lattice::diagonal({2}).contains({3}));
}

TEST_CASE("axis periods") {
    Lattice L = two_by_two();
    CHECK(L.axis_period(0, 4) == 2);
    CHECK(L.axis_period(1, 4) == 2);
    CHECK(Lattice::full(3).axis_periods() == IntVec{1, 1, 1});
    CHECK(Lattice::from_generators(2, {{3, 0}, {0, 1}}).axis_periods() == IntVec{3, 1});
    try {
        (void)Lattice::diagonal({5}).axis_period(0, 4);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoPeriodWithinBound);
    }
}

TEST_CASE("coset representatives") {
    CHECK(two_by_two().coset_reps() == std::vector<IntVec>{{0, 0}, {1, 0}});
    CHECK(Lattice::full(3).coset_reps() == std::vector<IntVec>{{0, 0, 0}});
    CHECK(Lattice::diagonal({2}).coset_reps() == std::vector<IntVec>{{0}, {1}});
}

TEST_CASE("box enumeration order") {
    auto pts = box_points({0, -1}, {1, 1});
    CHECK(pts == std::vector<IntVec>{{0, -1}, {0, 0}, {0, 1}, {1, -1}, {1, 0}, {1, 1}});
    CHECK(centered_box(3, 2).size() == 125);
}

TEST_CASE("random lattices agree with the minor oracle") {
    Rng rng(21);
    int tested = 0;
    for (int t = 0; t < 300; ++t) {
        int n = static_cast<int>(uniform(rng, 1, 3));
        auto gens = random_gens(rng, n);
        std::int64_t oracle = minor_gcd_index(n, gens);
        Lattice L = Lattice::from_generators(n, gens);
        CHECK(L.full_rank() == (oracle != 0));
        if (oracle == 0) continue;
        ++tested;
        CHECK(L.index() == oracle);
        // Canonical form is stable under regeneration and reordering.
        CHECK(Lattice::from_generators(n, L.basis()) == L);
        std::vector<int> rev(n);
        for (int i = 0; i < n; ++i) rev[i] = n - 1 - i;
        Lattice R = Lattice::from_generators(n, gens, rev);
        CHECK(R == L);
        CHECK(R.reordered({}) == L);
        // Membership on a box.
        for (const auto& m : centered_box(n, 3)) CHECK(L.contains(m) == minor_gcd_contains(n, gens, m));
        IntVec r = L.axis_periods();
        std::int64_t prod = 1;
        for (auto x : r) prod *= x;
        CHECK(prod % L.index() == 0);
        // Cosets: count, canonical box, pairwise distinct, every box point covered.
        auto reps = L.coset_reps();
        CHECK(static_cast<std::int64_t>(reps.size()) == oracle);
        std::set<IntVec> keys;
        for (const auto& c : reps) {
            for (int i = 0; i < n; ++i) CHECK((c[i] >= 0 && c[i] < r[i]));
            keys.insert(L.reduce(c));
        }
        CHECK(keys.size() == reps.size());
        for (const auto& m : centered_box(n, 3)) CHECK(keys.count(L.reduce(m)) == 1);
        // Reduction is a coset invariant.
        for (const auto& g : gens) CHECK(L.reduce(g) == L.reduce(IntVec(n, 0)));
    }
    CHECK(tested > 150);
}

TEST_CASE("membership is closed under the group operations") {
    Rng rng(22);
    for (int t = 0; t < 100; ++t) {
        int n = static_cast<int>(uniform(rng, 1, 3));
        Lattice L = Lattice::from_generators(n, random_gens(rng, n));
        std::vector<IntVec> members;
        for (const auto& m : centered_box(n, 3))
            if (L.contains(m)) members.push_back(m);
        for (size_t a = 0; a < members.size(); a += 3)
            for (size_t b = 0; b < members.size(); b += 5) {
                IntVec s(n), neg(n);
                for (int i = 0; i < n; ++i) {
                    s[i] = members[a][i] + members[b][i];
                    neg[i] = -members[a][i];
                }
                CHECK(L.contains(s));
                CHECK(L.contains(neg));
            }
    }
}
