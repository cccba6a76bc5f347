#pragma once

#include "loopmod/cyclotomic.hpp"
#include "loopmod/rational.hpp"

#include <string>
#include <vector>

namespace loopmod {

// Weight in fundamental-weight coordinates.
using Weight = std::vector<long>;

struct SimpleLieAlgebra {
    char series = 'A';
    int rank = 1;
    // cartan[i][j] = <alpha_i coroot, alpha_j>
    std::vector<std::vector<long>> cartan;
    // Positive roots in simple-root coordinates, sorted by height.
    std::vector<std::vector<long>> positive_roots;
    // (alpha_i, alpha_i)/2, with the first simple root at 1.
    std::vector<Rational> half_norms;

    std::string name() const { return std::string(1, series) + std::to_string(rank); }
    // Fundamental coordinates of the simple root alpha_i.
    Weight simple_root(int i) const;
    bool operator==(const SimpleLieAlgebra& o) const { return series == o.series && rank == o.rank; }
};

SimpleLieAlgebra build_algebra(char series, int rank);

bool is_dominant(const Weight& w);
void check_weight(const SimpleLieAlgebra& g, const Weight& w);
Integer weyl_dimension(const SimpleLieAlgebra& g, const Weight& w);

// Node permutation sigma preserving the Cartan matrix, of order k.
struct DiagramAutomorphism {
    std::vector<int> perm;  // perm[i] = sigma(i), zero-based
    int order = 1;
};

void validate_automorphism(const SimpleLieAlgebra& g, const DiagramAutomorphism& mu);
// Orbits sorted by smallest node; each orbit lists node, sigma(node), ...
std::vector<std::vector<int>> node_orbits(const DiagramAutomorphism& mu);
// (mu.w)[sigma(i)] = w[i]
Weight apply_aut(const DiagramAutomorphism& mu, const Weight& w);
Weight apply_aut_power(const DiagramAutomorphism& mu, const Weight& w, long power);
bool is_fixed(const DiagramAutomorphism& mu, const Weight& w);

// Values of a weight on the eigenbasis of the Cartan subalgebra under mu.
// comp0[o] is the value on the sum over orbit o; comp[j-1][o] (j = 1..k-1)
// is the value on sum_t eps^(-j t) h_{sigma^t(node)} for the o-th orbit of
// size k, eps = exp(2 pi i / k).
struct RestrictedWeight {
    std::vector<Rational> comp0;
    std::vector<std::vector<CycNumber>> comp;
    bool operator==(const RestrictedWeight& o) const { return comp0 == o.comp0 && comp == o.comp; }
};

RestrictedWeight restrict_weight(const DiagramAutomorphism& mu, const Weight& w, long order);

} // namespace loopmod
