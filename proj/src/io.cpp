#include "capgeom/io.hpp"

#include <fstream>
#include <sstream>

#include "capgeom/error.hpp"

namespace capgeom {

namespace {

Json point_json(const ProjPoint& P) { return Json::array({P.a, P.b}); }

ProjPoint point_of(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned()) {
    throw Error(Errc::Format, "a point is an array [a, b] of field codes");
  }
  return {j[0].get<Code>(), j[1].get<Code>()};
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::Format, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(Errc::Format, std::string("bad value for '") + key + "'");
  }
}

}  // namespace

Json cap_to_json(const Tower& t, const CapSet& cap) {
  Json j;
  j["p"] = t.p();
  j["h"] = t.h();
  j["n"] = t.n();
  Json mod;
  mod["fq"] = t.modulus(Level::Fq);
  mod["fk"] = t.modulus(Level::FK);
  if (t.has_quadratic()) mod["fk2"] = t.modulus(Level::FK2);
  j["moduli"] = mod;
  j["alpha"] = cap.alpha;
  Json pts = Json::array();
  for (const auto& P : cap.points) pts.push_back(point_json(P));
  j["points"] = pts;
  Json labels = Json::array();
  for (auto l : cap.labels) labels.push_back(std::string(cap_tag_name(l)));
  j["labels"] = labels;
  return j;
}

LoadedCap cap_from_json(const Json& j) {
  const auto p = field<std::uint32_t>(j, "p");
  const auto h = field<unsigned>(j, "h");
  const auto n = field<unsigned>(j, "n");
  LoadedCap out{Tower::make(p, h, n), {}};
  const Tower& t = out.tower;

  const Json mod = field<Json>(j, "moduli");
  const std::pair<const char*, Level> levels[] = {{"fq", Level::Fq}, {"fk", Level::FK}, {"fk2", Level::FK2}};
  for (const auto& [key, lvl] : levels) {
    if (!mod.contains(key)) {
      if (lvl == Level::FK2) continue;
      throw Error(Errc::Format, std::string("missing modulus ") + key);
    }
    if (field<std::vector<Code>>(mod, key) != t.modulus(lvl)) {
      throw Error(Errc::Format, std::string("modulus ") + key + " differs from the canonical tower");
    }
  }

  out.cap.alpha = field<Code>(j, "alpha");
  if (out.cap.alpha == 0 || out.cap.alpha >= t.q()) throw Error(Errc::Format, "alpha must be a nonzero element of F_q");
  const Json pts = field<Json>(j, "points");
  const Json labels = field<Json>(j, "labels");
  if (!pts.is_array() || !labels.is_array() || pts.size() != labels.size()) {
    throw Error(Errc::Format, "points and labels must be arrays of equal length");
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const ProjPoint P = point_of(pts[i]);
    if (P.a >= t.K() || P.b >= t.K() || !is_normalized_key(t, point_key(t, P))) {
      throw Error(Errc::Format, "point " + std::to_string(i) + " is not a normalized projective point");
    }
    const std::string l = labels[i].is_string() ? labels[i].get<std::string>() : "";
    if (l == cap_tag_name(CapTag::V1)) {
      out.cap.labels.push_back(CapTag::V1);
    } else if (l == cap_tag_name(CapTag::Valpha)) {
      out.cap.labels.push_back(CapTag::Valpha);
    } else {
      throw Error(Errc::Format, "unknown label at index " + std::to_string(i));
    }
    out.cap.points.push_back(P);
  }
  return out;
}

Json certificate_to_json(const CoverCertificate& c) {
  Json j;
  j["R"] = point_json(c.R);
  j["P"] = point_json(c.P);
  j["Q"] = point_json(c.Q);
  j["c1"] = c.c1;
  j["c2"] = c.c2;
  return j;
}

CoverCertificate certificate_from_json(const Json& j) {
  CoverCertificate c;
  c.R = point_of(field<Json>(j, "R"));
  c.P = point_of(field<Json>(j, "P"));
  c.Q = point_of(field<Json>(j, "Q"));
  c.c1 = field<Code>(j, "c1");
  c.c2 = field<Code>(j, "c2");
  return c;
}

Json to_json(const CapReport& r) {
  Json j;
  j["size"] = r.size;
  j["pairs_checked"] = r.pairs_checked;
  j["violation_count"] = r.violation_count;
  Json v = Json::array();
  for (const auto& tri : r.violations) v.push_back({point_json(tri[0]), point_json(tri[1]), point_json(tri[2])});
  j["violations"] = v;
  Json d = Json::array();
  for (const auto& P : r.duplicates) d.push_back(point_json(P));
  j["duplicates"] = d;
  j["is_cap"] = r.is_cap();
  j["seconds"] = r.seconds;
  return j;
}

Json to_json(const CompletenessReport& r) {
  Json j;
  j["mode"] = std::string(cover_mode_name(r.mode));
  j["external_points"] = r.external_points;
  j["expected_external"] = r.expected_external;
  j["bisecants"] = r.bisecants;
  j["covered_once"] = r.covered_once;
  j["multiply_covered"] = r.multiply_covered;
  j["uncovered"] = r.uncovered;
  j["cap_points_hit"] = r.cap_points_hit;
  j["invalid_certificates"] = r.invalid_certificates;
  Json hist = Json::object();
  for (const auto& [k, v] : r.histogram) hist[std::to_string(k)] = v;
  j["histogram"] = hist;
  j["complete"] = r.complete();
  j["exactly_once"] = r.exactly_once();
  j["seconds"] = r.seconds;
  return j;
}

Json to_json(const CodeReport& r) {
  Json j;
  j["N"] = r.N;
  j["k"] = r.k;
  j["rows"] = r.rows;
  j["rank"] = r.rank;
  if (r.distance.value == kNoDependency) {
    j["distance"] = nullptr;
  } else {
    j["distance"] = r.distance.value;
  }
  j["distance_exact"] = r.distance.exact;
  Json w = Json::array();
  for (const auto& [col, c] : r.distance.witness) w.push_back({col, c});
  j["distance_witness"] = w;
  j["covering_radius"] = r.radius.radius;
  j["syndromes"] = r.radius.syndromes;
  j["layer_sizes"] = r.radius.layer_sizes;
  j["as_expected"] = r.as_expected();
  j["distance_seconds"] = r.distance_seconds;
  j["radius_seconds"] = r.radius_seconds;
  return j;
}

Json to_json(const FerReport& r) {
  Json j;
  j["perm_on_K"] = r.perm_on_K;
  j["perm_on_K2"] = r.perm_on_K2;
  j["det_plus"] = r.det_plus;
  j["det_minus"] = r.det_minus;
  j["det_criterion"] = r.det_criterion;
  j["transfer_holds"] = r.transfer_holds();
  j["criterion_agrees"] = r.criterion_agrees();
  return j;
}

Json to_json(const PartitionReport& r) {
  Json j;
  j["total_points"] = r.total_points;
  j["pi1"] = r.pi1;
  j["pi2"] = r.pi2;
  j["omega_classes"] = r.omega_classes;
  j["min_class"] = r.min_class;
  j["max_class"] = r.max_class;
  j["overlaps"] = r.overlaps;
  j["uncovered"] = r.uncovered;
  j["label_mismatches"] = r.label_mismatches;
  j["ok"] = r.ok;
  return j;
}

Json to_json(const WPartitionReport& r) {
  Json j;
  j["exhaustive"] = r.exhaustive;
  j["points_checked"] = r.points_checked;
  j["varieties"] = r.varieties;
  j["variety_size"] = r.variety_size;
  j["ambiguous"] = r.ambiguous;
  j["overlaps"] = r.overlaps;
  j["uncovered"] = r.uncovered;
  j["label_mismatches"] = r.label_mismatches;
  j["ok"] = r.ok;
  return j;
}

Json to_json(const RankCensus& r) {
  Json j;
  j["total"] = r.total;
  j["by_rank"] = r.by_rank;
  return j;
}

Json to_json(const std::vector<SymPoint>& pts) {
  Json j = Json::array();
  for (const auto& S : pts) j.push_back(S.a);
  return j;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::Format, path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

}  // namespace capgeom
