#pragma once

#include "loopmod/classify.hpp"

namespace loopmod {

// The first axis carries the twist.
struct TwistedSpec {
    PsiSpec base;
    DiagramAutomorphism aut;
};

// Validates the automorphism and lifts the root-of-unity order to a multiple of k.
void normalize_twisted(TwistedSpec& ts);

// k-th powers of the first-axis evaluation points are pairwise distinct.
bool image_equality(const TwistedSpec& ts);

enum class TwistType { First, Second };
const char* twist_type_name(TwistType t);
// Second iff every weight is fixed by the automorphism.
TwistType classify_type(const TwistedSpec& ts);

// Twisted functional at degree m on the eigenvectors of the Cartan subalgebra
// for eigenvalue exp(2 pi i m_1 / k), one entry per orbit that carries one.
std::vector<CycVector> twisted_functional(const TwistedSpec& ts, const IntVec& m);
bool twisted_functional_is_zero(const TwistedSpec& ts, const IntVec& m);

// Lattice ordering with the twisted axis last.
std::vector<int> twisted_ordering(int n);
Lattice twisted_support(const TwistedSpec& ts);
// Support of the functional restricted to degrees with m_1 = 0, on axes 2..n.
Lattice collapsed_support(const PsiSpec& spec);
SupportCheck verify_twisted_support(const TwistedSpec& ts, const Lattice& gamma_mu, long radius, bool parallel = true);

struct TwistedDescriptor {
    TwistedSpec spec;
    TwistType type = TwistType::First;
    Lattice gamma;      // untwisted support
    Lattice gamma_mu;   // twisted support, twisted axis last
    Lattice gamma_rest; // collapsed support on axes 2..n
    long m_hat = 1;
    long exponent = 1;
    std::vector<WeightClass> classes;
};

TwistedDescriptor twisted_classify(const TwistedSpec& ts);

struct Reducibility {
    bool reducible = false;
    std::string clause;
};
Reducibility check_complete_reducibility(const TwistedSpec& ts);

// As IsoWitness, except evals2[0][j] = eps^roots[j] * scale[0] * evals1[0][tau[0][j]]
// with eps = exp(2 pi i / k), and weights2[J] = mu^roots[J_1] (weights1[tau(J)]).
struct TwistedWitness {
    IsoWitness base;
    std::vector<long> roots;
};

struct TwistedIsoResult {
    bool isomorphic = false;
    std::optional<TwistedWitness> witness;
    int failed_criterion = 0;
    std::string reason;
};

TwistedIsoResult decide_twisted_iso(const TwistedDescriptor& d1, const TwistedDescriptor& d2);
bool check_twisted_witness(const TwistedDescriptor& d1, const TwistedDescriptor& d2, const TwistedWitness& w);

} // namespace loopmod
