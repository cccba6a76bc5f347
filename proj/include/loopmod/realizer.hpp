#pragma once

#include "loopmod/module.hpp"
#include "loopmod/twisted.hpp"

#include <map>
#include <optional>
#include <vector>

namespace loopmod {

struct RealizerOptions {
    long radius = 3;
    long cap = 64;
    bool parallel = true;
};

using CycVec = std::vector<CycNumber>;

// Subspace in reduced row echelon form.
struct Fiber {
    std::vector<int> pivots;
    std::vector<CycVec> rows;
    long dim() const { return static_cast<long>(rows.size()); }
    // Returns the reduced residual when v is new, empty otherwise.
    std::optional<CycVec> insert(CycVec v);
    bool contains(CycVec v) const;
    bool operator==(const Fiber& o) const { return pivots == o.pivots && rows == o.rows; }
};

// Graded subspace of FinModule (x) Laurent polynomials, truncated to a box,
// split by degree and by weight.
struct GradedBox {
    int n = 0;
    long radius = 0;
    std::map<IntVec, std::map<Weight, Fiber>> fibers;

    long fiber_dim(const IntVec& m) const;
    long weight_dim(const IntVec& m, const Weight& w) const;
    std::map<Weight, long> character(const IntVec& m) const;
    bool operator==(const GradedBox& o) const { return n == o.n && radius == o.radius && fibers == o.fibers; }
};

using GradedCharacter = std::map<IntVec, std::map<Weight, long>>;
GradedCharacter character_of(const GradedBox& box);

// X (x) t^shift acting on FinModule; cols[b] lists (target, coefficient).
struct LoopOperator {
    IntVec shift;
    std::vector<std::vector<std::pair<int, CycNumber>>> cols;
};

CycVec apply(const LoopOperator& op, const CycVec& v);

// Everything needed for a closure run: basis keys (weights used to split
// fibers), generator operators and the box.
struct ClosureProblem {
    int n = 0;
    long radius = 0;
    long order = 1;
    int dim = 0;
    std::vector<Weight> keys;
    std::vector<LoopOperator> ops;
};

GradedBox close_serial(const ClosureProblem& p, int basis_index, const IntVec& degree);
GradedBox close_parallel(const ClosureProblem& p, int basis_index, const IntVec& degree);
GradedBox close(const ClosureProblem& p, int basis_index, const IntVec& degree, bool parallel);

TensorModule build_module(const PsiSpec& spec, long cap);

// Sum over slots of evals_slot^shift times the generator on that slot.
LoopOperator loop_operator(const PsiSpec& spec, const TensorModule& M, GenKind kind, int node, const IntVec& shift);

ClosureProblem untwisted_problem(const PsiSpec& spec, const TensorModule& M, long radius);
// Generators of the twisted loop algebra; keys are the weights restricted
// to the fixed Cartan subalgebra (orbit sums).
ClosureProblem twisted_problem(const TwistedSpec& ts, const TensorModule& M, long radius);
// Untwisted generators, keys as in twisted_problem.
ClosureProblem untwisted_problem_coarse(const TwistedSpec& ts, const TensorModule& M, long radius);

GradedBox generate_component(const PsiSpec& spec, const RealizerOptions& opt, const IntVec& start = {});
GradedCharacter graded_character(const PsiSpec& spec, const RealizerOptions& opt);

struct DegreeRow {
    IntVec degree;
    std::vector<long> component_dims;
    long total = 0;
    long expected = 0;
    bool top_weight_in_first = false;
};

struct ComponentReport {
    long count = 0;
    bool disjoint = true;
    bool exhaustive = true;
    std::vector<IntVec> starts;
    std::vector<DegreeRow> rows;
};

// Closures from every coset representative of the support lattice.
ComponentReport decompose(const PsiSpec& spec, const Lattice& gamma, const RealizerOptions& opt);
long count_components(const PsiSpec& spec, const RealizerOptions& opt);

// Coset representatives moved as close to the origin as the axis periods allow.
std::vector<IntVec> centered_reps(const Lattice& gamma, long radius);

GradedBox twisted_generate_component(const TwistedSpec& ts, const IntVec& start, const RealizerOptions& opt);

struct TwistedDecomposition {
    long count = 0;
    bool disjoint = true;
    bool contained = true;
    bool exhaustive = true;
    std::vector<IntVec> starts;
};

// Twisted closures from the coset representatives of the twisted support,
// compared with the untwisted closure of the highest-weight vector.
TwistedDecomposition twisted_decomposition(const TwistedSpec& ts, const Lattice& gamma_mu, const RealizerOptions& opt);

} // namespace loopmod
