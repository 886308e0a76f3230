#include <doctest.h>

#include "capgeom/error.hpp"
#include "capgeom/harness.hpp"

using namespace capgeom;

TEST_CASE("run configuration validation") {
  RunConfig cfg;
  CHECK(validated_tower(cfg).q() == 3);
  auto fails = [](RunConfig c, Errc e) {
    try {
      validated_tower(c);
    } catch (const Error& err) {
      return err.code() == e;
    }
    return false;
  };
  cfg.p = 2;
  CHECK(fails(cfg, Errc::QTooSmall));
  cfg.p = 6;
  CHECK(fails(cfg, Errc::NonPrime));
  cfg.p = 3;
  cfg.n = 0;
  CHECK(fails(cfg, Errc::InvalidArgument));
  cfg.n = 4;
  CHECK(fails(cfg, Errc::TooLarge));
  cfg.n = 1;
  cfg.alpha = 3;
  CHECK(fails(cfg, Errc::InvalidArgument));
  cfg.alpha = 0;
  CHECK(fails(cfg, Errc::InvalidArgument));
  cfg.alpha = 1;
  CHECK(validated_tower(cfg).q() == 3);
}

TEST_CASE("verify exit codes") {
  const Tower t = Tower::make(3, 1, 1);
  const CapSet cap = build_cap(t);
  const auto ok = verify_cap_set(t, cap);
  CHECK(ok.exit_code == kExitOk);
  REQUIRE(ok.exhaustive);
  REQUIRE(ok.certificate);
  CHECK(ok.modes_agree.value_or(false));
  REQUIRE(ok.code);
  CHECK(ok.code->as_expected());

  CapSet del = cap;
  del.points.pop_back();
  del.labels.pop_back();
  const auto d = verify_cap_set(t, del);
  CHECK(d.exit_code == kExitIncomplete);
  CHECK_FALSE(d.code);

  // Each mode on its own also sees the gap.
  for (auto m : {VerifyModes::Exhaustive, VerifyModes::Certificate}) {
    VerifyOptions vo;
    vo.modes = m;
    CHECK(verify_cap_set(t, del, vo).exit_code == kExitIncomplete);
  }

  CapSet add = cap;
  add.points.push_back(line_points(t, cap.points[0], cap.points[1])[2]);
  add.labels.push_back(CapTag::V1);
  const auto a = verify_cap_set(t, add);
  CHECK(a.exit_code == kExitNotCap);
  CHECK_FALSE(a.exhaustive);

  CapSet dup = cap;
  dup.points.push_back(cap.points[3]);
  dup.labels.push_back(cap.labels[3]);
  CHECK(verify_cap_set(t, dup).exit_code == kExitNotCap);
}

TEST_CASE("verify respects the exhaustive bound") {
  const Tower t = Tower::make(3, 1, 1);
  const CapSet cap = build_cap(t);
  VerifyOptions vo;
  vo.max_space = 100;
  const auto r = verify_cap_set(t, cap, vo);
  CHECK(r.exit_code == kExitOk);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.certificate);
  CHECK_FALSE(r.notes.empty());
  vo.modes = VerifyModes::Exhaustive;
  CHECK_THROWS_AS(verify_cap_set(t, cap, vo), Error);
}

TEST_CASE("verify with a non-default alpha") {
  const Tower t = Tower::make(2, 2, 1);
  for (Code al : {Code{2}, Code{3}}) {
    const CapSet cap = build_cap(t, al);
    CHECK(verify_cap_set(t, cap).exit_code == kExitOk);
  }
}

TEST_CASE("criterion line format") {
  CriterionResult c;
  c.id = 3;
  c.title = "x";
  c.pass = true;
  c.detail = "d";
  c.seconds = 1.5;
  CHECK(format_criterion(c) == "[PASS]  3. x | d | 1.50 s");
  c.pass = false;
  CHECK(format_criterion(c).rfind("[FAIL]", 0) == 0);
}
