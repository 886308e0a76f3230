#pragma once

// JSON persistence. Every field element is written as its canonical integer
// code; points as [a, b]. Output key order is fixed, so equal objects give
// byte-identical documents.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "capgeom/capcon.hpp"
#include "capgeom/codes.hpp"
#include "capgeom/cover.hpp"
#include "capgeom/linperm.hpp"
#include "capgeom/veronese.hpp"

namespace capgeom {

using Json = nlohmann::ordered_json;

/// {p, h, n, moduli: {fq, fk, fk2}, alpha, points, labels}.
Json cap_to_json(const Tower& t, const CapSet& cap);

struct LoadedCap {
  Tower tower;
  CapSet cap;
};

/// Rebuilds the tower from (p, h, n) and checks the stored moduli against it.
/// Throws Format on malformed documents, unnormalized points or label mismatches.
LoadedCap cap_from_json(const Json& j);

Json certificate_to_json(const CoverCertificate& c);
CoverCertificate certificate_from_json(const Json& j);

Json to_json(const CapReport& r);
Json to_json(const CompletenessReport& r);
Json to_json(const CodeReport& r);
Json to_json(const FerReport& r);
Json to_json(const PartitionReport& r);
Json to_json(const WPartitionReport& r);
Json to_json(const RankCensus& r);
Json to_json(const std::vector<SymPoint>& pts);

/// Throws Io when the file cannot be read or written, Format on bad JSON.
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace capgeom
