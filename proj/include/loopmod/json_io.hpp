#pragma once

#include "loopmod/realizer.hpp"
#include "loopmod/twisted.hpp"

#include <json.hpp>

#include <string>

namespace loopmod {

using json = nlohmann::ordered_json;

json rational_json(const Rational& q);
Rational rational_from_json(const json& j);

json to_json(const CycScalar& s);
CycScalar cyc_from_json(const json& j);
json to_json(const CycNumber& x);

json to_json(const Lattice& L);
Lattice lattice_from_json(const json& j);

PsiSpec spec_from_json(const json& j);
json to_json(const PsiSpec& spec);
TwistedSpec twisted_from_json(const json& j);
json to_json(const TwistedSpec& ts);
bool has_automorphism(const json& j);

json to_json(const ModuleDescriptor& d);
json to_json(const std::vector<AxisBlocks>& blocks);
json to_json(const IsoResult& r);
json to_json(const TwistedDescriptor& d);
json to_json(const TwistedIsoResult& r);
json to_json(const Reducibility& r);
json to_json(const SupportCheck& c);
json to_json(const GradedCharacter& ch);
json to_json(const ComponentReport& r);

// FNV-1a over the raw input bytes, as 16 hex digits.
std::string input_digest(const std::string& bytes);

} // namespace loopmod
