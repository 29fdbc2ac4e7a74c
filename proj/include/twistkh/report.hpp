// report.hpp -- machine-readable output (schema frozen in docs/schema.json).

#pragma once

#include <string>

#include "twistkh/khovanov.hpp"
#include "twistkh/twiststruct.hpp"

namespace twistkh {

// {"flavor":..., "groups":[{"h":..,"q":..,"free":..,"torsion":[k,..]},...],
//  "poincare": "..."}
std::string homology_json(const BigradedHomology& h, Flavor flavor, const std::string& name);
std::string homology_table(const BigradedHomology& h, Flavor flavor, const std::string& name);

std::string check_report_json(const CheckReport& rep, const std::string& family_name);
std::string check_report_table(const CheckReport& rep, const std::string& family_name);

std::string stable_json(const StableHomology& sh, Flavor flavor, const std::string& name);
std::string stable_table(const StableHomology& sh, Flavor flavor, const std::string& name);

} // namespace twistkh
