#pragma once

#include "json.hpp"
#include "graphon_ldp/entropy.hpp"
#include "graphon_ldp/graphon.hpp"
#include "graphon_ldp/sampler.hpp"
#include "graphon_ldp/solver.hpp"
#include "graphon_ldp/witness.hpp"

namespace gldp {

// Finite doubles become JSON numbers (shortest round-trip form), NaN
// becomes null and infinities become the strings "inf" / "-inf".
nlohmann::json json_number(double x);

nlohmann::json to_json(const PsiProfile& profile);
nlohmann::json to_json(const VariationalSolution& s);
nlohmann::json to_json(const PhiBracket& b);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const TailEstimate& e);
nlohmann::json to_json(const ConcentrationSummary& c);
nlohmann::json to_json(const RelevantSet& r);

}  // namespace gldp
