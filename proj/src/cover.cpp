#include "capgeom/cover.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "capgeom/error.hpp"
#include "capgeom/parallel.hpp"

namespace capgeom {

namespace {

// x^{q^i} in F_K.
Code frob(const Tower& t, Code x, unsigned i) { return t.frob_code(Level::FK, x, i); }

void check_omega(const Tower& t, Code omega, Code alpha) {
  if (omega == 0 || omega == 1 || omega == alpha || omega >= t.K()) {
    throw Error(Errc::BadOmega, "w = " + std::to_string(omega) + " is excluded");
  }
}

CanonicalCover cover_even(const Tower& t, Code w, Code alpha) {
  const Field& K = t.fk();
  const Code a1 = K.add(alpha, 1);
  const Code c = K.div(K.add(K.mul(w, a1), alpha), K.add(K.mul(alpha, alpha), 1));
  const Code tt = c == 0 ? 0 : t.solve_power(Elem{Level::FK, c}, t.q() + 1).code;
  CanonicalCover r;
  r.x = K.add(tt, K.div(alpha, a1));
  r.y = K.add(tt, K.inv(a1));
  return r;
}

CanonicalCover cover_odd(const Tower& t, Code w) {
  const Field& K = t.fk();
  const std::uint32_t q = t.q();
  const Code s = K.sub(K.mul(w, w), 1);
  CanonicalCover r;
  r.square_case = t.is_square(Elem{Level::FK, s});
  Code y = 0;
  if (r.square_case) {
    const Code T = t.sqrt(Elem{Level::FK, s}).code;
    const Code wmT = K.sub(w, T);
    const Code delta = t.norm_to_q(wmT);
    const Code u = t.solve_power(Elem{Level::FK, K.mul(delta, wmT)}, q + 1).code;
    y = K.sub(K.mul(K.add(w, T), frob(t, u, 1)), u);
  } else {
    const auto f = f1_f2(t, w).f1;
    const auto ker = t.linearized_kernel(Elem{Level::FK, f[0]}, Elem{Level::FK, f[1]}, Elem{Level::FK, f[2]}, Level::FK);
    if (ker.empty()) throw Error(Errc::InternalContradiction, "F1 has no nonzero root in F_K");
    y = ker.front().code;
  }
  if (y == 0) throw Error(Errc::InternalContradiction, "y = 0");
  r.y = y;
  const Code yq = frob(t, y, 1);
  r.lambda = t.fq().neg(t.norm_to_q(s));
  // (q + q^2 + ... + q^{2n}) / 2, reduced modulo |F_K*|.
  std::uint64_t e = 0, qi = 1;
  const std::uint64_t ord = K.order();
  for (unsigned i = 1; i < t.m(); ++i) {
    qi = qi * q % (2 * ord);
    e = (e + qi) % (2 * ord);
  }
  // e is even as an integer; halving modulo 2*ord keeps the residue meaningful.
  const Code scale = K.pow(s, (e / 2) % ord);
  r.x = K.mul(scale, K.add(K.mul(w, y), yq));
  const Code num = K.add(K.add(K.mul(y, y), K.mul(yq, yq)), K.mul(K.add(w, w), K.mul(y, yq)));
  r.rho = K.mul(K.neg(r.lambda), K.div(num, s));
  return r;
}

bool cover_holds(const Tower& t, Code w, Code alpha, const CanonicalCover& c) {
  const Field& K = t.fk();
  const std::uint32_t q = t.q();
  if (c.x == 0 || c.y == 0 || c.lambda == 0 || c.rho == 0 || c.lambda >= q || c.rho >= q) return false;
  const Code lhs1 = K.add(K.mul(c.x, c.x), K.mul(c.lambda, K.mul(c.y, c.y)));
  const Code xq1 = K.pow(c.x, q + 1), yq1 = K.pow(c.y, q + 1);
  // Both parities: x^{q+1} + alpha lambda y^{q+1} = rho w, since alpha = -1 for odd q.
  const Code lhs2 = K.add(xq1, K.mul(alpha, K.mul(c.lambda, yq1)));
  return lhs1 == c.rho && lhs2 == K.mul(c.rho, w);
}

struct Raw {
  ProjPoint p_raw;
  ProjPoint q_raw;
  Code r1;
  Code r2;
};

Raw transport(const Tower& t, Code alpha, Code x0, Code x, Code y, Code r1, Code r2) {
  const Field& K = t.fk();
  const std::uint32_t q = t.q();
  const Code u = K.mul(x0, x), v = K.mul(x0, y);
  return {{K.mul(u, u), K.pow(u, q + 1)}, {K.mul(v, v), K.mul(alpha, K.pow(v, q + 1))}, r1, r2};
}

// Smallest mu in {1, nu} with mu * c a square of F_K.
Code square_class(const Tower& t, Code c) {
  if (t.p() == 2 || t.is_square(Elem{Level::FK, c})) return 1;
  return smallest_nonsquare(t);
}

}  // namespace

LinPolyPair f1_f2(const Tower& t, Code omega) {
  if (t.p() == 2) throw Error(Errc::BadOmega, "F1/F2 are defined for odd q");
  const Field& K = t.fk();
  if (omega == 0 || omega == 1 || omega == K.neg(1) || omega >= t.K()) {
    throw Error(Errc::BadOmega, "w must avoid 0, 1, -1");
  }
  const Code s = K.sub(K.mul(omega, omega), 1);
  const Code chi = K.pow(s, (t.q() - 1) / 2);
  const Code wq = frob(t, omega, 1);
  const Code wchi = K.mul(omega, chi);
  return {{chi, K.add(wq, wchi), 1}, {K.neg(chi), K.sub(wq, wchi), 1}};
}

Code eval_linearized(const Tower& t, const LinTriple& f, Code y) {
  const Field& K = t.fk();
  const Code yq = frob(t, y, 1);
  const Code yqq = frob(t, yq, 1);
  return K.add(K.add(K.mul(f[0], y), K.mul(f[1], yq)), K.mul(f[2], yqq));
}

CanonicalCover cover_canonical(const Tower& t, Code omega, Code alpha) {
  check_omega(t, omega, alpha);
  const CanonicalCover c = t.p() == 2 ? cover_even(t, omega, alpha) : cover_odd(t, omega);
  if (!cover_holds(t, omega, alpha, c)) {
    throw Error(Errc::InternalContradiction, "cover for w = " + std::to_string(omega) + " fails its check");
  }
  return c;
}

CoverCertificate cover_point(const Tower& t, const CapSet& cap, const ProjPoint& R) {
  const Field& K = t.fk();
  const Field& Fq = t.fq();
  const bool even = t.p() == 2;
  const Code alpha = cap.alpha;
  const LabelWitness w = label_with_witness(t, R);

  Raw raw{};
  switch (w.label.kind) {
    case OmegaLabel::Kind::Pi1: {
      const Code mu = square_class(t, R.b);
      const Code x0 = t.solve_power(Elem{Level::FK, K.mul(mu, R.b)}, t.q() + 1).code;
      raw = transport(t, alpha, x0, 1, 1, 1, even ? 1 : Fq.neg(1));
      break;
    }
    case OmegaLabel::Kind::Pi2: {
      const Code mu = square_class(t, R.a);
      const Code x0 = t.sqrt(Elem{Level::FK, K.mul(mu, R.a)}).code;
      raw = transport(t, alpha, x0, 1, 1, even ? alpha : 1, 1);
      break;
    }
    case OmegaLabel::Kind::Omega: {
      if (w.label.omega == 1 || w.label.omega == alpha) throw Error(Errc::PointInCap, "R lies on the cap");
      const CanonicalCover c = cover_canonical(t, w.label.omega, alpha);
      raw = transport(t, alpha, w.x0, c.x, c.y, 1, c.lambda);
      break;
    }
  }

  CoverCertificate cert;
  cert.R = R;
  cert.P = normalize(t, raw.p_raw.a, raw.p_raw.b);
  cert.Q = normalize(t, raw.q_raw.a, raw.q_raw.b);
  // P = sP * p_raw, Q = sQ * q_raw with sP, sQ in F_q*.
  const Code sP = K.div(cert.P.a, raw.p_raw.a);
  const Code sQ = K.div(cert.Q.a, raw.q_raw.a);
  cert.c1 = 1;
  cert.c2 = Fq.div(Fq.mul(raw.r2, sP), Fq.mul(raw.r1, sQ));
  if (!check_certificate(t, alpha, cert)) throw Error(Errc::InternalContradiction, "certificate fails its check");
  return cert;
}

bool check_certificate(const Tower& t, Code alpha, const CoverCertificate& c) {
  if (c.c1 == 0 || c.c2 == 0 || c.c1 >= t.q() || c.c2 >= t.q()) return false;
  if (c.P == c.Q) return false;
  if (omega_label(t, c.P) != OmegaLabel{OmegaLabel::Kind::Omega, 1}) return false;
  if (omega_label(t, c.Q) != OmegaLabel{OmegaLabel::Kind::Omega, alpha}) return false;
  const Field& K = t.fk();
  const Code a = K.add(K.mul(c.c1, c.P.a), K.mul(c.c2, c.Q.a));
  const Code b = K.add(K.mul(c.c1, c.P.b), K.mul(c.c2, c.Q.b));
  if (a == 0 && b == 0) return false;
  return normalize(t, a, b) == c.R;
}

std::string_view cover_mode_name(CoverMode m) noexcept {
  return m == CoverMode::Exhaustive ? "exhaustive" : "certificate";
}

CompletenessReport verify_complete(const Tower& t, const CapSet& cap, const CompletenessOptions& opts) {
  if (point_count(t) > opts.max_space) {
    throw Error(Errc::TooLarge, "space has " + std::to_string(point_count(t)) + " points");
  }
  const auto start = std::chrono::steady_clock::now();
  CompletenessReport rep;
  rep.mode = opts.mode;
  const std::uint32_t q = t.q();
  const std::size_t space = static_cast<std::size_t>(t.K()) * t.K();

  const auto v1 = cap.with_tag(CapTag::V1);
  const auto va = cap.with_tag(CapTag::Valpha);
  const PointIndex in_cap(t, cap.points);
  const PointIndex i1(t, v1), ia(t, va);
  rep.bisecants = static_cast<std::uint64_t>(v1.size()) * va.size();
  rep.expected_external = (q - 1ULL) * rep.bisecants;

  const unsigned slots = std::max(1u, opts.threads);
  std::vector<std::uint8_t> count(space, 0);
  if (opts.keep_pairs) rep.pair_of.assign(space, CompletenessReport::kNoPair);

  if (opts.mode == CoverMode::Exhaustive) {
    std::vector<std::vector<std::uint8_t>> local(slots, std::vector<std::uint8_t>(space, 0));
    std::vector<std::vector<std::uint32_t>> local_pair(slots);
    if (opts.keep_pairs) {
      for (auto& lp : local_pair) lp.assign(space, CompletenessReport::kNoPair);
    }
    parallel_for(v1.size(), opts.threads, [&](std::size_t begin, std::size_t end, unsigned slot) {
      auto& cnt = local[slot];
      for (std::size_t i = begin; i < end; ++i) {
        const PointKey u = point_key(t, v1[i]);
        for (std::size_t j = 0; j < va.size(); ++j) {
          const PointKey v = point_key(t, va[j]);
          for (Code d = 1; d < q; ++d) {
            const PointKey r = normalize_key(t, combine_keys(t, u, 1, v, d));
            if (cnt[r] < 255) ++cnt[r];
            if (opts.keep_pairs) local_pair[slot][r] = static_cast<std::uint32_t>(i * va.size() + j);
          }
        }
      }
    });
    for (unsigned s = 0; s < slots; ++s) {
      for (std::size_t k = 0; k < space; ++k) {
        if (local[s][k] == 0) continue;
        count[k] = static_cast<std::uint8_t>(std::min(255, count[k] + local[s][k]));
        if (opts.keep_pairs) rep.pair_of[k] = local_pair[s][k];
      }
    }
  } else {
    const auto pts = enumerate_points(t);
    std::vector<std::uint64_t> invalid(slots, 0);
    parallel_for(pts.size(), opts.threads, [&](std::size_t begin, std::size_t end, unsigned slot) {
      for (std::size_t k = begin; k < end; ++k) {
        const ProjPoint& R = pts[k];
        if (in_cap.contains(R)) continue;
        try {
          const CoverCertificate c = cover_point(t, cap, R);
          const std::int32_t pi = i1.find(c.P), qi = ia.find(c.Q);
          if (pi < 0 || qi < 0 || !check_certificate(t, cap.alpha, c)) {
            ++invalid[slot];
            continue;
          }
          const PointKey key = point_key(t, R);
          count[key] = 1;
          if (opts.keep_pairs) {
            rep.pair_of[key] = static_cast<std::uint32_t>(static_cast<std::size_t>(pi) * va.size() + qi);
          }
        } catch (const Error& e) {
          // A point of V_1 ∪ V_alpha missing from the set has no certificate.
          if (e.code() != Errc::PointInCap) throw;
          ++invalid[slot];
        }
      }
    });
    for (auto v : invalid) rep.invalid_certificates += v;
  }

  for_each_point(t, [&](const ProjPoint& P) {
    const PointKey k = point_key(t, P);
    if (in_cap.contains(P)) {
      if (count[k] != 0) ++rep.cap_points_hit;
      return;
    }
    ++rep.external_points;
    ++rep.histogram[count[k]];
    if (count[k] == 0) {
      ++rep.uncovered;
    } else if (count[k] == 1) {
      ++rep.covered_once;
    } else {
      ++rep.multiply_covered;
    }
  });
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace capgeom
