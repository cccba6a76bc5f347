#pragma once

#include "loopmod/liedata.hpp"

#include <utility>
#include <vector>

namespace loopmod {

using SparseColumn = std::vector<std::pair<int, Rational>>;

// Irreducible highest-weight module with an explicit weight basis; basis
// vector 0 is the highest-weight vector.
struct IrrepModule {
    Weight highest;
    std::vector<Weight> weights;
    // e[i][b], f[i][b]: image of basis vector b under e_i, f_i.
    std::vector<std::vector<SparseColumn>> e, f;
    int dim() const { return static_cast<int>(weights.size()); }
};

IrrepModule build_irrep(const SimpleLieAlgebra& g, const Weight& w, long cap = 64);

enum class GenKind { E, F, H };

// Tensor product over the grid slots; slot 0 is the slowest digit.
struct TensorModule {
    std::vector<IrrepModule> factors;
    std::vector<int> strides;
    std::vector<Weight> weights;
    int dim() const { return static_cast<int>(weights.size()); }
    int digit(int b, int slot) const { return (b / strides[slot]) % factors[slot].dim(); }
    // Appends the image of basis vector b under the generator acting on one slot.
    void act(GenKind kind, int node, int slot, int b, SparseColumn& out) const;
};

TensorModule build_tensor(const SimpleLieAlgebra& g, const std::vector<Weight>& slots, long cap = 64);

} // namespace loopmod
