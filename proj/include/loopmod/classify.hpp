#pragma once

#include "loopmod/psi.hpp"

#include <optional>
#include <string>
#include <vector>

namespace loopmod {

struct WeightClass {
    Weight weight;
    long count = 0;   // grid indices carrying this weight
    long copies = 0;  // count / exponent
};

struct ModuleDescriptor {
    PsiSpec spec;
    Lattice gamma;
    IntVec periods;
    long exponent = 1;
    std::vector<WeightClass> classes;
};

// Evaluation points on one axis split into complete orbits of the r-th roots
// of unity: value j = exp(2 pi i phase / r) * bases[block].
struct AxisBlocks {
    long period = 1;
    std::vector<CycScalar> bases;
    std::vector<int> block;
    std::vector<long> phase;
};

// Preferred representative: smallest exponent, then smallest |coeff|, positive first.
bool canonical_before(const CycScalar& a, const CycScalar& b);

AxisBlocks detect_axis_blocks(const std::vector<CycScalar>& values, long period);
std::vector<AxisBlocks> detect_blocks(const PsiSpec& spec, const Lattice& gamma);

std::vector<WeightClass> weight_classes(const std::vector<Weight>& weights, long exponent);
ModuleDescriptor classify(const PsiSpec& spec);

// evals2[i][j] = scale[i] * evals1[i][tau[i][j]], weights2[J] = weights1[tau(J)],
// rho2 = rho1 + shift.
struct IsoWitness {
    std::vector<std::vector<int>> tau;
    std::vector<CycScalar> scale;
    IntVec shift;
};

struct IsoResult {
    bool isomorphic = false;
    std::optional<IsoWitness> witness;
    int failed_criterion = 0;
    std::string reason;
};

struct AxisScaling {
    CycScalar scale;
    std::vector<int> tau;
};
// All (s, tau) with b[j] = s * a[tau[j]] for every j.
std::vector<AxisScaling> axis_scalings(const std::vector<CycScalar>& a, const std::vector<CycScalar>& b);
Index apply_tau(const std::vector<std::vector<int>>& tau, const Index& J);

IsoResult decide_iso(const ModuleDescriptor& d1, const ModuleDescriptor& d2);
// Direct check of a claimed witness, independent of the search.
bool check_iso_witness(const ModuleDescriptor& d1, const ModuleDescriptor& d2, const IsoWitness& w);
IsoWitness invert_witness(const IsoWitness& w);
// Witness for d1 -> d3 from d1 -> d2 and d2 -> d3.
IsoWitness compose_witness(const IsoWitness& w12, const IsoWitness& w23);

// Bring two specs to a shared root-of-unity order.
std::pair<PsiSpec, PsiSpec> common_order_pair(const PsiSpec& a, const PsiSpec& b);
std::optional<IntVec> integral_difference(const std::vector<Rational>& from, const std::vector<Rational>& to);

} // namespace loopmod
