#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bellperm/circuit.hpp"

namespace bellperm {

// `.bpcirc.json` interchange format. The document embeds the hash of the
// gate tables it was written against; loading under different tables is
// allowed with a warning as long as all parameters stay in range.
nlohmann::json circuit_to_json(const Circuit& c, const GateTables& t = GateTables::instance());

Circuit circuit_from_json(const nlohmann::json& doc,
                          const GateTables& t = GateTables::instance(),
                          std::vector<std::string>* warnings = nullptr);

void write_circuit_file(const std::string& path, const Circuit& c,
                        const GateTables& t = GateTables::instance());

Circuit read_circuit_file(const std::string& path,
                          const GateTables& t = GateTables::instance(),
                          std::vector<std::string>* warnings = nullptr);

}  // namespace bellperm
