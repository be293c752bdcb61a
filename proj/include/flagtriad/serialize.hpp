#pragma once

#include "flagtriad/flags.hpp"
#include "flagtriad/oracle.hpp"
#include "flagtriad/root_system.hpp"
#include "flagtriad/triad.hpp"

#include <json.hpp>

#include <string>

namespace flagtriad::io {

using json = nlohmann::ordered_json;

json vec_json(const ExactVector& v);
ExactVector vec_from_json(const json& j);

/// Triad exchange format: ambient_dim, sigma_tilde, sigma, w as lists of
/// rational vectors with exact "p/q" fractions, optional m and n maps.
json triad_to_json(const triads::SymmetricTriad& t);
triads::SymmetricTriad triad_from_json(const json& j);
std::string write_triad(const triads::SymmetricTriad& t);
triads::SymmetricTriad read_triad(const std::string& text);
triads::SymmetricTriad read_triad_file(const std::string& path);

json root_system_json(const rootsys::RootSystem& rs);
json axiom_report_json(const triads::AxiomReport& rep);
json regularity_json(const triads::RegularityReport& rep);
json cell_json(const triads::CellData& cell);
json intersection_json(const flags::IntersectionResult& res);
json tightness_json(const flags::TightnessCount& t);
json check_report_json(const oracle::CheckReport& rep);

/// Human-readable rendering of the same data.
std::string render_table(const json& j);

}  // namespace flagtriad::io
