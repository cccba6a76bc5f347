#pragma once

#include "loopmod/cyclotomic.hpp"
#include "loopmod/lattice.hpp"

#include <vector>

namespace loopmod {

// Exponential sum m -> sum_I coeffs[I] * prod_i values[i][I_i]^m_i over a
// product grid (flattened with the first axis slowest). Repeated axis values
// are merged by adding coefficients.
struct CharacterTable {
    std::vector<std::vector<CycScalar>> values;
    std::vector<std::vector<long>> coeffs;
};

// Tuples of roots of unity w, as angle vectors, with coeffs(alpha w) = coeffs(alpha)
// for every character alpha. Always contains the identity.
std::vector<std::vector<Rational>> character_stabilizer(const CharacterTable& table);

// {m : sum_i angle_i m_i is an integer for every listed tuple}
Lattice annihilator(int n, const std::vector<std::vector<Rational>>& angles, std::vector<int> ordering = {});

// The subgroup generated by the support of the exponential sum.
Lattice support_of(const CharacterTable& table, std::vector<int> ordering = {});

} // namespace loopmod
