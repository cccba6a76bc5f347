#pragma once

#include "loopmod/cyclotomic.hpp"
#include "loopmod/lattice.hpp"
#include "loopmod/liedata.hpp"

#include <optional>
#include <string>
#include <vector>

namespace loopmod {

using Index = std::vector<int>;

// Highest-weight data: a dominant weight for every grid index and distinct
// nonzero evaluation points per axis. Grid indices are flattened
// lexicographically with the first axis slowest; evaluation points are stored
// over the common root-of-unity order L.
struct PsiSpec {
    SimpleLieAlgebra algebra;
    int n = 0;
    std::vector<int> dims;
    std::vector<Weight> weights;
    std::vector<std::vector<CycScalar>> evals;
    std::vector<Rational> rho;
    long order = 1;

    size_t slot_count() const { return weights.size(); }
    size_t flat(const Index& I) const;
    Index unflat(size_t k) const;
    const Weight& weight(const Index& I) const { return weights[flat(I)]; }
    // prod_i evals[i][I_i]^m_i
    CycScalar monomial(const Index& I, const IntVec& m) const;
};

// Checks shapes, dominance, nonzero distinct evaluation points; lifts all
// evaluation points to the least common order (times extra_order).
void normalize_spec(PsiSpec& spec, long extra_order = 1);
bool is_trivial(const PsiSpec& spec);
long grid_size(const std::vector<int>& dims);

// Value of the functional at degree m on h_1, ..., h_d, unreduced.
std::vector<CycVector> eval_functional(const PsiSpec& spec, const IntVec& m);
bool functional_is_zero(const PsiSpec& spec, const IntVec& m);

// The subgroup generated by the degrees where the functional is nonzero.
Lattice support_lattice(const PsiSpec& spec, std::vector<int> ordering = {});

// Evaluates the functional on a box; flags[k] says whether points[k] lies in the support.
std::vector<char> support_flags(const PsiSpec& spec, const std::vector<IntVec>& points, bool parallel = true);

struct SupportCheck {
    bool ok = true;
    std::optional<IntVec> witness;
    std::string reason;
    // Points of the lattice inside the box where the functional still vanishes.
    std::vector<IntVec> exceptional_zeros;
    long points = 0;
    long nonzero = 0;
};

// Every nonzero degree in the box lies in the lattice, and every lattice point
// in the box is an integer combination of nonzero degrees in the box.
SupportCheck check_support_flags(const Lattice& gamma, const std::vector<IntVec>& points,
                                 const std::vector<char>& flags);
SupportCheck verify_support(const PsiSpec& spec, const Lattice& gamma, long radius, bool parallel = true);

} // namespace loopmod
