#include "capgeom/capcon.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "capgeom/error.hpp"
#include "capgeom/parallel.hpp"

namespace capgeom {

std::string_view cap_tag_name(CapTag t) noexcept { return t == CapTag::V1 ? "V1" : "Valpha"; }

std::size_t CapSet::count(CapTag t) const { return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), t)); }

std::vector<ProjPoint> CapSet::with_tag(CapTag t) const {
  std::vector<ProjPoint> out;
  for (std::size_t i = 0; i < points.size() && i < labels.size(); ++i) {
    if (labels[i] == t) out.push_back(points[i]);
  }
  return out;
}

std::uint64_t variety_size(const Tower& t) { return (t.K() - 1) / (t.q() - 1); }

std::vector<ProjPoint> veronese_cap(const Tower& t, Code omega) {
  if (omega == 0) throw Error(Errc::ZeroOmega, "V_0 is not defined");
  const Field& K = t.fk();
  const std::uint32_t q = t.q();
  std::vector<PointKey> keys;
  keys.reserve(K.order());
  for (Code x = 1; x < K.size(); ++x) {
    const Code a = K.mul(x, x);
    const Code b = K.mul(omega, K.pow(x, q + 1));
    keys.push_back(normalize_key(t, a + t.K() * b));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  if (keys.size() != variety_size(t)) throw Error(Errc::InternalContradiction, "V_w has the wrong size");
  std::vector<ProjPoint> out;
  out.reserve(keys.size());
  for (auto k : keys) out.push_back(point_from_key(t, k));
  return out;
}

Code pick_alpha(const Tower& t) {
  if (t.p() == 2) return t.generator(Level::Fq);
  return t.fq().neg(1);
}

Code smallest_nonsquare(const Tower& t) {
  if (t.p() == 2) return 0;
  for (Code c = 2; c < t.q(); ++c) {
    if (!t.is_square(Elem{Level::Fq, c})) return c;
  }
  throw Error(Errc::InternalContradiction, "F_q has no non-square");
}

CapSet build_cap(const Tower& t, std::optional<Code> alpha) {
  if (t.m() % 2 == 0) throw Error(Errc::InvalidArgument, "the cap needs an odd middle degree");
  CapSet cap;
  cap.alpha = alpha.value_or(pick_alpha(t));
  if (cap.alpha == 0 || cap.alpha == 1 || cap.alpha >= t.q()) {
    throw Error(Errc::InvalidArgument, "alpha must lie in F_q \\ {0, 1}");
  }
  if (t.p() != 2 && cap.alpha != t.fq().neg(1)) {
    throw Error(Errc::InvalidArgument, "alpha must be -1 for odd q");
  }
  const auto v1 = veronese_cap(t, 1);
  const auto va = veronese_cap(t, cap.alpha);
  cap.points = v1;
  cap.points.insert(cap.points.end(), va.begin(), va.end());
  cap.labels.assign(v1.size(), CapTag::V1);
  cap.labels.resize(v1.size() + va.size(), CapTag::Valpha);
  return cap;
}

std::vector<std::string> cap_invariant_problems(const Tower& t, const CapSet& cap) {
  std::vector<std::string> problems;
  const std::uint64_t half = variety_size(t);
  if (cap.points.size() != 2 * half) problems.push_back("size is " + std::to_string(cap.points.size()));
  if (cap.labels.size() != cap.points.size()) problems.push_back("labels and points differ in length");
  if (cap.count(CapTag::V1) != half || cap.count(CapTag::Valpha) != half) problems.push_back("label counts unbalanced");
  const PointIndex idx(t, cap.points);
  if (!idx.duplicates().empty()) problems.push_back("V_1 and V_alpha intersect or repeat a point");
  if (t.p() != 2 && cap.alpha != t.fq().neg(1)) problems.push_back("alpha != -1 for odd q");
  if (t.p() == 2 && (cap.alpha <= 1 || cap.alpha >= t.q())) problems.push_back("alpha not in F_q \\ {0,1}");
  for (std::size_t i = 0; i < cap.points.size() && i < cap.labels.size(); ++i) {
    const Code want = cap.labels[i] == CapTag::V1 ? 1 : cap.alpha;
    if (omega_label(t, cap.points[i]) != OmegaLabel{OmegaLabel::Kind::Omega, want}) {
      problems.push_back("point " + std::to_string(i) + " is not on its labeled variety");
      break;
    }
  }
  return problems;
}

ProjPoint apply_phi(const Tower& t, const ProjPoint& P, long long i) {
  const Field& K = t.fk();
  const long long n = K.order();
  const auto r = static_cast<std::uint64_t>(((i % n) + n) % n);
  const Code eta_a = K.exp(2 * r % n);
  const Code eta_b = K.exp((t.q() + 1ULL) * r % n);
  return normalize(t, K.mul(eta_a, P.a), K.mul(eta_b, P.b));
}

LabelWitness label_with_witness(const Tower& t, const ProjPoint& P) {
  if (P.a == 0 && P.b == 0) throw Error(Errc::ZeroVector, "not a point");
  if (P.a == 0) return {{OmegaLabel::Kind::Pi1, 0}, 1, 0};
  if (P.b == 0) return {{OmegaLabel::Kind::Pi2, 0}, 1, 0};
  const Field& K = t.fk();
  Code lambda0 = 1;
  if (!t.is_square(Elem{Level::FK, P.a})) lambda0 = smallest_nonsquare(t);
  const Code x0 = t.sqrt(Elem{Level::FK, K.div(P.a, lambda0)}).code;
  const Code omega = K.div(P.b, K.mul(lambda0, K.pow(x0, t.q() + 1)));
  return {{OmegaLabel::Kind::Omega, omega}, lambda0, x0};
}

OmegaLabel omega_label(const Tower& t, const ProjPoint& P) { return label_with_witness(t, P).label; }

PointIndex::PointIndex(const Tower& t, std::span<const ProjPoint> points)
    : tower_(&t), slots_(static_cast<std::size_t>(t.K()) * t.K(), -1) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& s = slots_[point_key(t, points[i])];
    if (s >= 0) {
      duplicates_.push_back(points[i]);
    } else {
      s = static_cast<std::int32_t>(i);
    }
  }
}

CapReport verify_cap(const Tower& t, std::span<const ProjPoint> points, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  CapReport report;
  report.size = points.size();
  const PointIndex index(t, points);
  report.duplicates = index.duplicates();

  std::vector<PointKey> keys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) keys[i] = point_key(t, points[i]);

  constexpr std::size_t kKeep = 16;
  struct Slice {
    std::uint64_t pairs = 0;
    std::uint64_t violations = 0;
    std::vector<std::array<ProjPoint, 3>> examples;
  };
  std::vector<Slice> slices(std::max(1u, threads));
  const std::uint32_t q = t.q();
  parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end, unsigned slot) {
    Slice& s = slices[slot];
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if (keys[i] == keys[j]) continue;
        ++s.pairs;
        for (Code d = 1; d < q; ++d) {
          const PointKey r = normalize_key(t, combine_keys(t, keys[i], 1, keys[j], d));
          const std::int32_t hit = index.find_key(r);
          // Each collinear triple is reported once, from its two smallest indices.
          if (hit >= 0 && static_cast<std::size_t>(hit) > j) {
            ++s.violations;
            if (s.examples.size() < kKeep) s.examples.push_back({points[i], points[j], points[hit]});
          }
        }
      }
    }
  });
  for (auto& s : slices) {
    report.pairs_checked += s.pairs;
    report.violation_count += s.violations;
    for (auto& e : s.examples) {
      if (report.violations.size() < kKeep) report.violations.push_back(e);
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

PartitionReport verify_partition(const Tower& t, std::uint64_t max_space) {
  if (point_count(t) > max_space) {
    throw Error(Errc::TooLarge, "space has " + std::to_string(point_count(t)) + " points");
  }
  PartitionReport r;
  const Field& K = t.fk();
  std::vector<std::uint64_t> class_size(K.size(), 0);
  for_each_point(t, [&](const ProjPoint& P) {
    ++r.total_points;
    const LabelWitness w = label_with_witness(t, P);
    switch (w.label.kind) {
      case OmegaLabel::Kind::Pi1: ++r.pi1; break;
      case OmegaLabel::Kind::Pi2: ++r.pi2; break;
      case OmegaLabel::Kind::Omega: {
        // The witness must reproduce P.
        const Code a = K.mul(w.x0, w.x0);
        const Code b = K.mul(w.label.omega, K.pow(w.x0, t.q() + 1));
        if (normalize(t, a, b) != P) ++r.label_mismatches;
        ++class_size[w.label.omega];
        break;
      }
    }
  });
  r.min_class = ~0ULL;
  for (Code w = 1; w < K.size(); ++w) {
    if (class_size[w] == 0) continue;
    ++r.omega_classes;
    r.min_class = std::min(r.min_class, class_size[w]);
    r.max_class = std::max(r.max_class, class_size[w]);
  }
  if (r.omega_classes == 0) r.min_class = 0;

  // Independent route: generate every V_w and count how often each point is hit.
  std::vector<std::uint8_t> hits(static_cast<std::size_t>(t.K()) * t.K(), 0);
  for (Code w = 1; w < K.size(); ++w) {
    for (const auto& P : veronese_cap(t, w)) {
      auto& h = hits[point_key(t, P)];
      if (h != 0) ++r.overlaps;
      if (h < 255) ++h;
      if (omega_label(t, P) != OmegaLabel{OmegaLabel::Kind::Omega, w}) ++r.label_mismatches;
    }
  }
  for_each_point(t, [&](const ProjPoint& P) {
    if (P.a != 0 && P.b != 0 && hits[point_key(t, P)] == 0) ++r.uncovered;
  });

  const std::uint64_t vs = variety_size(t);
  r.ok = r.overlaps == 0 && r.uncovered == 0 && r.label_mismatches == 0 && r.pi1 == vs && r.pi2 == vs &&
         r.omega_classes == K.order() && r.min_class == vs && r.max_class == vs &&
         r.total_points == point_count(t);
  return r;
}

}  // namespace capgeom
