#include "capgeom/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "capgeom/error.hpp"

namespace capgeom {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Largest K for which the flat K x K point tables stay in memory.
constexpr std::uint64_t kMaxK = 8192;

}  // namespace

Tower validated_tower(const RunConfig& cfg) {
  if (cfg.h < 1) throw Error(Errc::InvalidArgument, "h must be at least 1");
  if (cfg.n < 1) throw Error(Errc::InvalidArgument, "n must be at least 1");
  if (!is_prime(cfg.p)) throw Error(Errc::NonPrime, std::to_string(cfg.p) + " is not prime");
  std::uint64_t K = 1;
  for (unsigned i = 0; i < cfg.h * (2 * cfg.n + 1); ++i) {
    K *= cfg.p;
    if (K > kMaxK) throw Error(Errc::TooLarge, "q^(2n+1) exceeds " + std::to_string(kMaxK));
  }
  if (cfg.threads < 1) throw Error(Errc::InvalidArgument, "threads must be at least 1");
  Tower t = Tower::make(cfg.p, cfg.h, cfg.n);
  if (cfg.alpha) {
    const Code a = *cfg.alpha;
    if (a == 0 || a >= t.q()) throw Error(Errc::InvalidArgument, "alpha must be a nonzero element of F_q");
  }
  return t;
}

VerifyResult verify_cap_set(const Tower& t, const CapSet& cap, const VerifyOptions& opts) {
  VerifyResult r;
  r.cap = verify_cap(t, cap, opts.threads);
  if (!r.cap.is_cap()) {
    r.exit_code = kExitNotCap;
    return r;
  }

  const bool fits = point_count(t) <= opts.max_space;
  bool exh = opts.modes == VerifyModes::Exhaustive || opts.modes == VerifyModes::Both;
  bool cert = opts.modes == VerifyModes::Certificate || opts.modes == VerifyModes::Both;
  if (opts.modes == VerifyModes::Auto) {
    exh = fits;
    cert = true;
    if (!fits) r.notes.push_back("exhaustive cover sweep skipped: space exceeds --max-space");
  }
  CompletenessOptions co;
  co.threads = opts.threads;
  co.max_space = opts.max_space;
  co.keep_pairs = exh && cert;
  bool ok = true;
  if (exh) {
    co.mode = CoverMode::Exhaustive;
    r.exhaustive = verify_complete(t, cap, co);
    ok = ok && r.exhaustive->exactly_once();
  }
  if (cert) {
    co.mode = CoverMode::Certificate;
    co.max_space = std::max<std::uint64_t>(opts.max_space, point_count(t));
    r.certificate = verify_complete(t, cap, co);
    ok = ok && r.certificate->exactly_once();
  }
  if (exh && cert) {
    r.modes_agree = r.exhaustive->pair_of == r.certificate->pair_of;
    ok = ok && *r.modes_agree;
    r.exhaustive->pair_of.clear();
    r.certificate->pair_of.clear();
  }
  if (!ok) {
    r.exit_code = kExitIncomplete;
    return r;
  }

  if (opts.code) {
    try {
      r.code = code_report(t.fq(), parity_check(t, cap));
    } catch (const Error& e) {
      if (e.code() != Errc::TooLarge) throw;
      r.notes.push_back(std::string("code check skipped: ") + e.what());
    }
    if (r.code && !r.code->as_expected()) r.exit_code = kExitCodeMismatch;
  }
  return r;
}

Json to_json(const VerifyResult& r) {
  Json j;
  j["exit_code"] = r.exit_code;
  j["cap"] = to_json(r.cap);
  j["exhaustive"] = r.exhaustive ? to_json(*r.exhaustive) : Json(nullptr);
  j["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  j["modes_agree"] = r.modes_agree ? Json(*r.modes_agree) : Json(nullptr);
  j["code"] = r.code ? to_json(*r.code) : Json(nullptr);
  j["notes"] = r.notes;
  return j;
}

void print_summary(std::ostream& os, const VerifyResult& r) {
  os << "cap:          " << r.cap.size << " points, " << r.cap.violation_count << " collinear triples, "
     << r.cap.duplicates.size() << " duplicates -> " << (r.cap.is_cap() ? "cap" : "NOT A CAP") << '\n';
  for (const auto* c : {&r.exhaustive, &r.certificate}) {
    if (!*c) continue;
    const auto& rep = **c;
    os << "cover (" << cover_mode_name(rep.mode) << "): " << rep.external_points << " external, " << rep.covered_once
       << " once, " << rep.multiply_covered << " multiply, " << rep.uncovered << " uncovered";
    if (rep.mode == CoverMode::Certificate) os << ", " << rep.invalid_certificates << " invalid certificates";
    os << " -> " << (rep.exactly_once() ? "exactly once" : "FAILED") << '\n';
  }
  if (r.modes_agree) os << "modes agree:  " << (*r.modes_agree ? "yes" : "NO") << '\n';
  if (r.code) {
    const auto& c = *r.code;
    os << "code:         [" << c.N << ',' << c.k << ',';
    if (c.distance.value == kNoDependency) {
      os << "inf";
    } else {
      os << c.distance.value << (c.distance.exact ? "" : "+");
    }
    os << "], covering radius " << c.radius.radius << " -> " << (c.as_expected() ? "as expected" : "MISMATCH") << '\n';
  }
  for (const auto& n : r.notes) os << "note:         " << n << '\n';
  os << "exit code:    " << r.exit_code << '\n';
}

bool SuiteResult::ok() const noexcept {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

std::string format_criterion(const CriterionResult& c) {
  std::ostringstream os;
  os << (c.pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << c.id << ". " << c.title << " | " << c.detail << " | "
     << std::fixed << std::setprecision(2) << c.seconds << " s";
  return os.str();
}

Json to_json(const SuiteResult& r) {
  Json j;
  j["ok"] = r.ok();
  j["seconds"] = r.seconds;
  Json cs = Json::array();
  for (const auto& c : r.criteria) {
    Json e;
    e["id"] = c.id;
    e["title"] = c.title;
    e["pass"] = c.pass;
    e["seconds"] = c.seconds;
    e["detail"] = c.detail;
    e["data"] = c.data;
    cs.push_back(e);
  }
  j["criteria"] = cs;
  return j;
}

namespace {

struct Instance {
  std::uint32_t p;
  unsigned h, n;
  std::uint64_t q() const { return ipow(p, h); }
  std::uint64_t variety() const { return (ipow(q(), 2 * n + 1) - 1) / (q() - 1); }
  std::string name() const { return "(" + std::to_string(q()) + "," + std::to_string(n) + ")"; }
  bool is(std::uint64_t qq, unsigned nn) const { return q() == qq && n == nn; }
};

struct Built {
  Instance inst;
  Tower t;
  CapSet cap;
  double build_seconds = 0;
};

class Suite {
 public:
  explicit Suite(const SuiteOptions& o) : opts_(o) {}

  SuiteResult run() {
    const auto t0 = Clock::now();
    std::vector<Instance> insts = {{3, 1, 1}, {2, 2, 1}, {5, 1, 1}, {7, 1, 1}, {3, 1, 2}};
    if (opts_.include_4_2) insts.push_back({2, 2, 2});
    step(1, "cap sizes 2(q^(2n+1)-1)/(q-1)", [&](CriterionResult& c) { sizes(c, insts); });
    step(2, "cap property by chord membership", [&](CriterionResult& c) { caps(c); });
    step(3, "complete, every external point covered exactly once", [&](CriterionResult& c) { cover(c); });
    step(4, "size / (sqrt(2) q^(2n)) below 2q/(sqrt(2)(q-1)) (1+0.01)", [&](CriterionResult& c) { ratio(c); });
    step(5, "parity-check codes [N,N-r,4]_q with covering radius 2", [&](CriterionResult& c) { codes(c); });
    step(6, "det D_1 + det D_-1 = 2(N(a0)+N(a2))", [&](CriterionResult& c) { sum_identity(c); });
    step(7, "permutation of F_{q^k} iff of F_{q^2k} under N(a0)+N(a2)=0", [&](CriterionResult& c) { fer(c); });
    step(8, "N(w +- T) = 1 for w^2-1 non-square", [&](CriterionResult& c) { norms(c); });
    step(9, "chordal intersections", [&](CriterionResult& c) { chords(c); });
    step(10, "projection of V~_w onto V_w at (3,2)", [&](CriterionResult& c) { projection(c); });
    step(11, "mutations detected by exit codes at (3,1)", [&](CriterionResult& c) { mutations(c); });
    res_.seconds = since(t0);
    return std::move(res_);
  }

 private:
  void step(int id, std::string title, const std::function<void(CriterionResult&)>& body) {
    CriterionResult c;
    c.id = id;
    c.title = std::move(title);
    c.data = Json::object();
    const auto t0 = Clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = std::string("error: ") + e.what();
    }
    c.seconds = since(t0);
    if (opts_.log != nullptr) *opts_.log << format_criterion(c) << std::endl;
    res_.criteria.push_back(std::move(c));
  }

  static void append(std::string& s, const std::string& part) {
    if (!s.empty()) s += ", ";
    s += part;
  }

  static std::string secs(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << s << "s";
    return os.str();
  }

  const Built* find(std::uint64_t q, unsigned n) const {
    for (const auto& b : built_) {
      if (b.inst.is(q, n)) return &b;
    }
    return nullptr;
  }

  void sizes(CriterionResult& c, const std::vector<Instance>& insts) {
    bool pass = true;
    for (const auto& in : insts) {
      const auto t0 = Clock::now();
      Tower t = Tower::make(in.p, in.h, in.n);
      CapSet cap = build_cap(t);
      const double s = since(t0);
      const std::uint64_t expect = 2 * in.variety();
      const bool ok = cap.points.size() == expect && s < 1.0;
      pass = pass && ok;
      append(c.detail, in.name() + " " + std::to_string(cap.points.size()) + "/" + std::to_string(expect) + " " + secs(s));
      c.data[in.name()] = {{"size", cap.points.size()}, {"expected", expect}, {"seconds", s}, {"ok", ok}};
      built_.push_back({in, std::move(t), std::move(cap), s});
    }
    c.pass = pass;
  }

  void caps(CriterionResult& c) {
    bool pass = true;
    for (const auto& b : built_) {
      const auto rep = verify_cap(b.t, b.cap, opts_.threads);
      const double limit = b.inst.n == 1 ? 1.0 : b.inst.is(3, 2) ? 30.0 : 300.0;
      const bool ok = rep.is_cap() && rep.size == b.cap.points.size() && rep.seconds < limit;
      pass = pass && ok;
      append(c.detail, b.inst.name() + " " + std::to_string(rep.violation_count) + " triples " + secs(rep.seconds));
      c.data[b.inst.name()] = to_json(rep);
    }
    c.pass = pass;
  }

  void cover(CriterionResult& c) {
    bool pass = true;
    for (const auto& b : built_) {
      const std::uint64_t expect = (b.inst.q() - 1) * b.inst.variety() * b.inst.variety();
      const bool big = b.inst.n >= 2 && !b.inst.is(3, 2);
      const double limit = b.inst.n == 1 ? 10.0 : b.inst.is(3, 2) ? 120.0 : 600.0;
      VerifyOptions vo;
      vo.modes = big ? VerifyModes::Certificate : VerifyModes::Both;
      vo.threads = opts_.threads;
      vo.max_space = std::max<std::uint64_t>(2'000'000, point_count(b.t));
      vo.code = false;
      const auto t0 = Clock::now();
      const auto r = verify_cap_set(b.t, b.cap, vo);
      const double s = since(t0);
      bool ok = r.exit_code == kExitOk && s < limit;
      std::string part = b.inst.name();
      for (const auto* rep : {&r.exhaustive, &r.certificate}) {
        if (!*rep) continue;
        ok = ok && (*rep)->external_points == expect && (*rep)->exactly_once();
        part += " " + std::string(cover_mode_name((*rep)->mode)) + " " + std::to_string((*rep)->covered_once) + "/" +
                std::to_string(expect);
      }
      if (r.modes_agree) part += *r.modes_agree ? " agree" : " DISAGREE";
      part += " " + secs(s);
      pass = pass && ok;
      append(c.detail, part);
      c.data[b.inst.name()] = to_json(r);
    }
    c.pass = pass;
  }

  void ratio(CriterionResult& c) {
    bool pass = true;
    for (const auto& b : built_) {
      const double q = static_cast<double>(b.inst.q());
      const double r = static_cast<double>(b.cap.points.size()) / (std::sqrt(2.0) * std::pow(q, 2.0 * b.inst.n));
      const double bound = 2 * q / (std::sqrt(2.0) * (q - 1)) * 1.01;
      const bool ok = r < bound;
      pass = pass && ok;
      std::ostringstream os;
      os << b.inst.name() << " " << std::setprecision(4) << r << "<" << bound;
      append(c.detail, os.str());
      c.data[b.inst.name()] = {{"ratio", r}, {"bound", bound}, {"ok", ok}};
    }
    c.pass = pass;
  }

  void codes(CriterionResult& c) {
    bool pass = true;
    for (auto [q, n] : {std::pair{3u, 1u}, {4u, 1u}, {5u, 1u}, {3u, 2u}}) {
      const Built* b = find(q, n);
      if (b == nullptr) continue;
      const auto t0 = Clock::now();
      // Go through the export format.
      std::stringstream ss;
      write_parity_check(ss, parity_check(b->t, b->cap));
      const ParityCheck H = read_parity_check(ss);
      const auto rep = code_report(b->t.fq(), H);
      const double s = since(t0);
      const std::size_t N = b->cap.points.size();
      const bool ok = rep.as_expected() && rep.N == N && rep.k == N - (4 * n + 2) && s < (n == 1 ? 5.0 : 120.0);
      pass = pass && ok;
      append(c.detail, "[" + std::to_string(rep.N) + "," + std::to_string(rep.k) + "," +
                           std::to_string(rep.distance.value) + "]_" + std::to_string(q) +
                           " rho=" + std::to_string(rep.radius.radius) + " " + secs(s));
      c.data[b->inst.name()] = to_json(rep);
    }
    c.pass = pass;
  }

  void sum_identity(CriterionResult& c) {
    std::mt19937_64 rng(opts_.seed);
    std::uint64_t trials = 0, failures = 0;
    for (auto [p, h] : {std::pair{3u, 1u}, {2u, 2u}, {5u, 1u}}) {
      for (unsigned k : {3u, 4u, 5u}) {
        const Tower t = Tower::make_with_degree(p, h, k, false);
        const Field& F = t.fk();
        std::uniform_int_distribution<Code> d(0, t.K() - 1);
        for (int i = 0; i < 500; ++i) {
          const Code a0 = d(rng), a1 = d(rng), a2 = d(rng);
          const Code lhs = F.add(d_determinant(t, build_d_matrix(t, a0, a1, a2, 1)),
                                 d_determinant(t, build_d_matrix(t, a0, a1, a2, -1)));
          const Code nsum = F.add(t.norm_to_q(a0), t.norm_to_q(a2));
          ++trials;
          failures += lhs != F.add(nsum, nsum);
        }
      }
    }
    c.pass = failures == 0 && trials == 4500;
    c.detail = std::to_string(trials) + " trials, " + std::to_string(failures) + " failures";
    c.data = {{"trials", trials}, {"failures", failures}};
  }

  void fer(CriterionResult& c) {
    std::mt19937_64 rng(opts_.seed + 7);
    bool pass = true;
    for (auto [p, h] : {std::pair{3u, 1u}, {2u, 2u}}) {
      const Tower t = Tower::make_with_degree(p, h, 3, true);
      std::uniform_int_distribution<Code> d(0, t.K() - 1);
      int n = 0, discrepancies = 0, perms = 0, det_disagree = 0;
      while (n < 200) {
        const Code a0 = d(rng), a1 = d(rng), a2 = d(rng);
        if (t.fq().add(t.norm_to_q(a0), t.norm_to_q(a2)) != 0) continue;
        const auto r = check_fer(t, a0, a1, a2);
        ++n;
        discrepancies += !r.transfer_holds();
        det_disagree += !r.criterion_agrees();
        perms += r.perm_on_K;
      }
      pass = pass && discrepancies == 0;
      const std::string name = "(" + std::to_string(t.q()) + ",3)";
      append(c.detail, name + " " + std::to_string(discrepancies) + " discrepancies, " + std::to_string(perms) +
                           " permutations");
      c.data[name] = {{"trials", n},
                      {"discrepancies", discrepancies},
                      {"permutations", perms},
                      {"determinant_criterion_disagreements", det_disagree}};
    }
    c.pass = pass;
  }

  void norms(CriterionResult& c) {
    bool pass = true;
    for (std::uint32_t p : {3u, 5u}) {
      const Tower t = Tower::make(p, 1, 1);
      const Field& K = t.fk();
      const Field& K2 = t.fk2();
      int cases = 0, failures = 0;
      for (Code w = 0; w < t.K(); ++w) {
        const Code s = K.sub(K.mul(w, w), 1);
        if (s == 0 || t.is_square(Elem{Level::FK, s})) continue;
        ++cases;
        const Code T = t.sqrt(Elem{Level::FK2, s}).code;
        for (Code v : {K2.add(w, T), K2.sub(w, T)}) {
          failures += t.norm(Elem{Level::FK2, v}, Level::Fq).code != 1;
        }
      }
      pass = pass && cases > 0 && failures == 0;
      const std::string name = "(" + std::to_string(p) + ",1)";
      append(c.detail, name + " " + std::to_string(cases) + " w, " + std::to_string(failures) + " failures");
      c.data[name] = {{"omegas", cases}, {"failures", failures}};
    }
    c.pass = pass;
  }

  void chords(CriterionResult& c) {
    const auto t0 = Clock::now();
    bool pass = true;
    for (auto [p, h] : {std::pair{3u, 1u}, {5u, 1u}, {2u, 2u}}) {
      const Tower t = Tower::make(p, h, 1);
      const auto inter = chordal_intersection(t, pick_alpha(t));
      bool ok = false;
      if (p == 2) {
        std::vector<SymPoint> plane;
        for (Code a1 = 1; a1 < t.K(); ++a1) plane.push_back(normalize_sym(t, {0, a1}));
        std::sort(plane.begin(), plane.end());
        plane.erase(std::unique(plane.begin(), plane.end()), plane.end());
        ok = inter == plane && inter.size() == 21;
      } else {
        ok = inter.empty();
      }
      pass = pass && ok;
      const std::string name = "q=" + std::to_string(t.q());
      append(c.detail, name + " " + std::to_string(inter.size()) + " points");
      c.data[name] = {{"size", inter.size()}, {"points", to_json(inter)}, {"ok", ok}};
    }
    c.pass = pass && since(t0) < 30.0;
  }

  void projection(CriterionResult& c) {
    const Tower t = Tower::make(3, 1, 2);
    std::mt19937_64 rng(opts_.seed + 11);
    std::uniform_int_distribution<Code> nz(1, t.K() - 1);
    int matches = 0;
    Json trials = Json::array();
    for (int i = 0; i < 5; ++i) {
      const Code w = nz(rng), a2 = nz(rng);
      std::set<PointKey> img, target;
      for (const auto& S : veronese_variety(t, {w, a2})) img.insert(point_key(t, project_to_V(t, S)));
      for (const auto& P : veronese_cap(t, w)) target.insert(point_key(t, P));
      const bool ok = img == target;
      matches += ok;
      trials.push_back({{"omega", w}, {"alpha2", a2}, {"points", img.size()}, {"equal", ok}});
    }
    c.pass = matches == 5;
    c.detail = std::to_string(matches) + "/5 point sets equal";
    c.data = {{"trials", trials}};
  }

  void mutations(CriterionResult& c) {
    const Built* b = find(3, 1);
    if (b == nullptr) throw Error(Errc::InternalContradiction, "(3,1) instance missing");
    VerifyOptions vo;
    vo.threads = opts_.threads;
    std::uint64_t deletions = 0, del_detected = 0, additions = 0, add_detected = 0;
    for (std::size_t i = 0; i < b->cap.points.size(); ++i) {
      CapSet m = b->cap;
      m.points.erase(m.points.begin() + static_cast<std::ptrdiff_t>(i));
      m.labels.erase(m.labels.begin() + static_cast<std::ptrdiff_t>(i));
      ++deletions;
      del_detected += verify_cap_set(b->t, m, vo).exit_code == kExitIncomplete;
    }
    std::set<PointKey> in_cap;
    for (const auto& P : b->cap.points) in_cap.insert(point_key(b->t, P));
    for_each_point(b->t, [&](const ProjPoint& P) {
      if (in_cap.count(point_key(b->t, P)) != 0) return;
      CapSet m = b->cap;
      m.points.push_back(P);
      m.labels.push_back(CapTag::V1);
      ++additions;
      add_detected += verify_cap_set(b->t, m, vo).exit_code == kExitNotCap;
    });
    c.pass = deletions == 26 && del_detected == deletions && additions == 338 && add_detected == additions;
    c.detail = "deletions " + std::to_string(del_detected) + "/" + std::to_string(deletions) + " exit 4, additions " +
               std::to_string(add_detected) + "/" + std::to_string(additions) + " exit 3";
    c.data = {{"deletions", deletions},
              {"deletions_exit_4", del_detected},
              {"additions", additions},
              {"additions_exit_3", add_detected}};
  }

  SuiteOptions opts_;
  SuiteResult res_;
  std::vector<Built> built_;
};

}  // namespace

SuiteResult run_suite(const SuiteOptions& opts) { return Suite(opts).run(); }

}  // namespace capgeom
