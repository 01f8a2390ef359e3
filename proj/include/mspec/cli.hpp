#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mspec/dynamics.hpp"
#include "mspec/scalar.hpp"

namespace mspec::cli {

// Runs one invocation; args excludes the program name. Returns the exit
// code: 0 success, 1 mathematical failure, 2 usage error, 3 budget exhausted.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// MapDocument: {"field", "degree", "num", "den"} with coefficient strings in
// the order a_1 .. a_{d+1}.
nlohmann::json map_document_rational(const ProjMap<Rational> &phi);
nlohmann::json map_document_modp(const ProjMap<ModP> &phi);
ProjMap<Rational> map_from_document_rational(const nlohmann::json &doc);
ProjMap<ModP> map_from_document_modp(const nlohmann::json &doc);

// Flat "key = value" configuration, '#' comments. Returns the arguments it
// stands for; throws UsageError on unknown keys.
std::vector<std::string> config_arguments(const std::string &text);

} // namespace mspec::cli
