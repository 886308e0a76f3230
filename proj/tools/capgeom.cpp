// capgeom: construct, verify and export small complete caps of PG(4n+1, q).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "capgeom/error.hpp"
#include "capgeom/harness.hpp"

using namespace capgeom;

namespace {

struct Args {
  RunConfig cfg;
  long long alpha = -1;
  std::string mode = "auto";
  std::string out;
  std::string report;
  std::string cap_file;
  std::string point;
  std::string include;
  std::string what = "chordal";
  unsigned k = 3;
  Code a0 = 0, a1 = 0, a2 = 0;
};

void add_field_flags(CLI::App* c, Args& a) {
  c->add_option("--p", a.cfg.p, "characteristic")->capture_default_str();
  c->add_option("--h", a.cfg.h, "q = p^h")->capture_default_str();
  c->add_option("--n", a.cfg.n, "ambient space PG(4n+1, q)")->capture_default_str();
}

void add_run_flags(CLI::App* c, Args& a) {
  c->add_option("--threads", a.cfg.threads, "worker threads")->capture_default_str();
  c->add_option("--max-space", a.cfg.max_space, "largest point count swept exhaustively")->capture_default_str();
  c->add_option("--seed", a.cfg.seed, "seed for sampled checks")->capture_default_str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Tower tower_for(Args& a) {
  if (a.alpha >= 0) a.cfg.alpha = static_cast<Code>(a.alpha);
  return validated_tower(a.cfg);
}

LoadedCap load_or_build(Args& a) {
  if (!a.cap_file.empty()) return cap_from_json(read_json_file(a.cap_file));
  Tower t = tower_for(a);
  CapSet cap = build_cap(t, a.cfg.alpha);
  return {std::move(t), std::move(cap)};
}

VerifyModes parse_mode(const std::string& m) {
  if (m == "auto") return VerifyModes::Auto;
  if (m == "exhaustive") return VerifyModes::Exhaustive;
  if (m == "certificate") return VerifyModes::Certificate;
  if (m == "both") return VerifyModes::Both;
  throw Error(Errc::InvalidArgument, "unknown mode '" + m + "'");
}

ProjPoint parse_point(const std::string& s) {
  ProjPoint P{};
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> P.a >> comma >> P.b) || comma != ',') throw Error(Errc::InvalidArgument, "point must be given as a,b");
  return P;
}

int cmd_construct(Args& a) {
  Tower t = tower_for(a);
  const CapSet cap = build_cap(t, a.cfg.alpha);
  emit(a.out, dump(cap_to_json(t, cap)));
  std::cerr << "constructed " << cap.points.size() << " points in PG(" << 4 * t.n() + 1 << "," << t.q() << ")\n";
  return kExitOk;
}

int cmd_verify(Args& a) {
  const LoadedCap lc = load_or_build(a);
  VerifyOptions vo;
  vo.modes = parse_mode(a.mode);
  vo.threads = a.cfg.threads;
  vo.max_space = a.cfg.max_space;
  const VerifyResult r = verify_cap_set(lc.tower, lc.cap, vo);
  print_summary(std::cerr, r);
  if (!a.out.empty()) emit(a.out, dump(to_json(r)));
  return r.exit_code;
}

int cmd_cover(Args& a) {
  const LoadedCap lc = load_or_build(a);
  const ProjPoint raw = parse_point(a.point);
  if (raw.a >= lc.tower.K() || raw.b >= lc.tower.K()) throw Error(Errc::InvalidArgument, "point outside F_K^2");
  const ProjPoint R = normalize(lc.tower, raw.a, raw.b);
  const CoverCertificate c = cover_point(lc.tower, lc.cap, R);
  if (!check_certificate(lc.tower, lc.cap.alpha, c)) throw Error(Errc::InternalContradiction, "certificate fails");
  emit(a.out, dump(certificate_to_json(c)));
  return kExitOk;
}

int cmd_export_code(Args& a) {
  const LoadedCap lc = load_or_build(a);
  const ParityCheck H = parity_check(lc.tower, lc.cap);
  std::ostringstream os;
  write_parity_check(os, H);
  emit(a.out, os.str());
  if (a.report.empty()) return kExitOk;
  const CodeReport rep = code_report(lc.tower.fq(), H);
  emit(a.report, dump(to_json(rep)));
  return rep.as_expected() ? kExitOk : kExitCodeMismatch;
}

int cmd_linperm(Args& a) {
  const Tower t = Tower::make_with_degree(a.cfg.p, a.cfg.h, a.k, true);
  for (Code c : {a.a0, a.a1, a.a2}) {
    if (c >= t.K()) throw Error(Errc::InvalidArgument, "coefficient outside F_{q^k}");
  }
  emit(a.out, dump(to_json(check_fer(t, a.a0, a.a1, a.a2))));
  return kExitOk;
}

int cmd_veronese(Args& a) {
  Tower t = tower_for(a);
  Json j;
  if (a.what == "chordal") {
    const Code alpha = a.cfg.alpha.value_or(pick_alpha(t));
    const auto inter = chordal_intersection(t, alpha);
    j["alpha"] = alpha;
    j["size"] = inter.size();
    j["points"] = to_json(inter);
  } else if (a.what == "census") {
    j = to_json(rank_census(t));
  } else if (a.what == "partition") {
    j = to_json(verify_w_partition(t, a.cfg.max_space, 2000, a.cfg.seed));
  } else {
    throw Error(Errc::InvalidArgument, "--what must be chordal, census or partition");
  }
  emit(a.out, dump(j));
  return kExitOk;
}

int cmd_suite(Args& a) {
  SuiteOptions so;
  so.threads = a.cfg.threads;
  so.seed = a.cfg.seed;
  so.log = &std::cout;
  if (!a.include.empty()) {
    if (a.include != "4,2") throw Error(Errc::InvalidArgument, "--include accepts only 4,2");
    so.include_4_2 = true;
  }
  // Fail on an unwritable destination before spending any time.
  if (!a.out.empty()) write_text_file(a.out, "");
  const SuiteResult r = run_suite(so);
  std::cout << (r.ok() ? "all criteria passed" : "some criteria FAILED") << " in " << r.seconds << " s\n";
  if (!a.out.empty()) write_text_file(a.out, dump(to_json(r)));
  return r.ok() ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small complete caps of PG(4n+1, q): construction and verification"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Args a;

  auto* construct = app.add_subcommand("construct", "build the cap and write it as JSON");
  add_field_flags(construct, a);
  construct->add_option("--alpha", a.alpha, "override alpha (F_q code)");
  construct->add_option("--out", a.out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "check cap property, completeness and code parameters");
  verify->add_option("cap", a.cap_file, "cap JSON file (default: build from --p --h --n)");
  add_field_flags(verify, a);
  add_run_flags(verify, a);
  verify->add_option("--alpha", a.alpha, "override alpha when building");
  verify->add_option("--mode", a.mode, "auto, exhaustive, certificate or both")->capture_default_str();
  verify->add_option("--out", a.out, "write the JSON report here");

  auto* cover = app.add_subcommand("cover", "certificate covering one external point");
  cover->add_option("--cap", a.cap_file, "cap JSON file (default: build from --p --h --n)");
  add_field_flags(cover, a);
  cover->add_option("--alpha", a.alpha, "override alpha when building");
  cover->add_option("--point", a.point, "point as a,b (F_K codes)")->required();
  cover->add_option("--out", a.out, "output file (default stdout)");

  auto* code = app.add_subcommand("export-code", "write the parity-check matrix");
  code->add_option("--cap", a.cap_file, "cap JSON file (default: build from --p --h --n)");
  add_field_flags(code, a);
  code->add_option("--alpha", a.alpha, "override alpha when building");
  code->add_option("--out", a.out, "matrix file (default stdout)");
  code->add_option("--report", a.report, "also compute and write the code report JSON");

  auto* lin = app.add_subcommand("linperm", "permutation transfer check for a0 x + a1 x^q + a2 x^{q^2}");
  lin->add_option("--p", a.cfg.p)->capture_default_str();
  lin->add_option("--h", a.cfg.h)->capture_default_str();
  lin->add_option("--k", a.k, "F_{q^k}")->capture_default_str();
  lin->add_option("--a0", a.a0)->required();
  lin->add_option("--a1", a.a1)->required();
  lin->add_option("--a2", a.a2)->required();
  lin->add_option("--out", a.out, "output file (default stdout)");

  auto* ver = app.add_subcommand("veronese", "chordal intersection, rank census or variety partition");
  add_field_flags(ver, a);
  add_run_flags(ver, a);
  ver->add_option("--alpha", a.alpha, "second variety for the chordal intersection");
  ver->add_option("--what", a.what, "chordal, census or partition")->capture_default_str();
  ver->add_option("--out", a.out, "output file (default stdout)");

  auto* suite = app.add_subcommand("suite", "run every acceptance check");
  suite->add_option("--threads", a.cfg.threads)->capture_default_str();
  suite->add_option("--seed", a.cfg.seed)->capture_default_str();
  suite->add_option("--include", a.include, "add the (q,n) = (4,2) instance");
  suite->add_option("--out", a.out, "aggregated JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*construct) return cmd_construct(a);
    if (*verify) return cmd_verify(a);
    if (*cover) return cmd_cover(a);
    if (*code) return cmd_export_code(a);
    if (*lin) return cmd_linperm(a);
    if (*ver) return cmd_veronese(a);
    if (*suite) return cmd_suite(a);
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
