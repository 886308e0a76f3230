#include "capgeom/veronese.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "capgeom/error.hpp"

namespace capgeom {

namespace {

Code frob(const Tower& t, Code x, unsigned i) { return t.frob_code(Level::FK, x, i); }

void require_n1(const Tower& t, std::size_t len) {
  if (t.n() != 1 || len != 2) throw Error(Errc::NOnlyOne, "chordal machinery is defined for n = 1");
}

std::uint64_t qpow(std::uint64_t q, unsigned e, std::uint64_t mod) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = r * q % mod;
  return r;
}

}  // namespace

SymPoint normalize_sym(const Tower& t, std::vector<Code> a) {
  if (a.size() != t.n() + 1) throw Error(Errc::InvalidArgument, "expected n+1 coordinates");
  const Field& K = t.fk();
  const std::uint32_t q = t.q();
  Code lead = 0;
  for (Code x : a) {
    for (Code v = x; v != 0 && lead == 0; v /= q) lead = v % q;
    if (lead != 0) break;
  }
  if (lead == 0) throw Error(Errc::ZeroVector, "not a point");
  const Code s = t.fq().inv(lead);
  for (Code& x : a) x = K.mul(s, x);
  return {std::move(a)};
}

Matrix sym_matrix(const Tower& t, const std::vector<Code>& a) {
  const unsigned n = static_cast<unsigned>(a.size()) - 1;
  const unsigned dim = 2 * n + 1;
  if (dim != t.m()) throw Error(Errc::InvalidArgument, "coordinate count does not match the tower");
  Matrix m(dim, dim);
  for (unsigned i = 1; i <= dim; ++i) {
    for (unsigned j = i; j <= dim; ++j) {
      const unsigned d = j - i;
      const Code v = d <= n ? frob(t, a[d], i - 1) : frob(t, a[dim - d], j - 1);
      m(i - 1, j - 1) = v;
      m(j - 1, i - 1) = v;
    }
  }
  return m;
}

std::size_t sym_rank(const Tower& t, const std::vector<Code>& a) { return rank(t.fk(), sym_matrix(t, a)); }

std::vector<SymPoint> veronese_variety(const Tower& t, const std::vector<Code>& alphas) {
  if (alphas.size() != t.n()) throw Error(Errc::InvalidArgument, "expected n alphas");
  for (Code al : alphas) {
    if (al == 0) throw Error(Errc::ZeroAlpha, "alpha_i must be nonzero");
  }
  const Field& K = t.fk();
  const std::uint64_t ord = K.order();
  std::vector<SymPoint> out;
  out.reserve(ord);
  for (Code x = 1; x < K.size(); ++x) {
    std::vector<Code> a(alphas.size() + 1);
    a[0] = K.mul(x, x);
    for (std::size_t i = 1; i < a.size(); ++i) {
      a[i] = K.mul(alphas[i - 1], K.pow(x, qpow(t.q(), static_cast<unsigned>(i), ord) + 1));
    }
    out.push_back(normalize_sym(t, std::move(a)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() != ord / (t.q() - 1)) throw Error(Errc::InternalContradiction, "Veronese variety has the wrong size");
  return out;
}

SymPoint apply_psi(const Tower& t, const SymPoint& P, const std::vector<Code>& alphas) {
  std::vector<Code> a = P.a;
  for (std::size_t i = 1; i < a.size(); ++i) a[i] = t.fk().mul(alphas.at(i - 1), a[i]);
  return normalize_sym(t, std::move(a));
}

SymPoint apply_phi_tilde(const Tower& t, const SymPoint& P, long long i) {
  const Field& K = t.fk();
  const long long ord = K.order();
  const auto r = static_cast<std::uint64_t>(((i % ord) + ord) % ord);
  std::vector<Code> a = P.a;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::uint64_t e = k == 0 ? 2 : qpow(t.q(), static_cast<unsigned>(k), ord) + 1;
    a[k] = K.mul(K.exp(e * r % ord), a[k]);
  }
  return normalize_sym(t, std::move(a));
}

bool chordal_test(const Tower& t, const SymPoint& P, Code alpha) {
  require_n1(t, P.a.size());
  if (alpha == 0) throw Error(Errc::ZeroAlpha, "alpha must be nonzero");
  const Field& K = t.fk();
  return sym_rank(t, {P.a[0], K.div(P.a[1], alpha)}) <= 2;
}

std::vector<SymPoint> chordal_intersection(const Tower& t, Code alpha) {
  require_n1(t, 2);
  std::vector<SymPoint> out;
  for_each_point(t, [&](const ProjPoint& P) {
    const SymPoint S{{P.a, P.b}};
    if (chordal_test(t, S, 1) && chordal_test(t, S, alpha)) out.push_back(normalize_sym(t, S.a));
  });
  std::sort(out.begin(), out.end());
  return out;
}

ProjPoint project_to_V(const Tower& t, const SymPoint& P) {
  if (P.a.size() < 2) throw Error(Errc::InvalidArgument, "need at least two coordinates");
  if (P.a[0] == 0 && P.a[1] == 0) throw Error(Errc::ZeroPair, "point lies in the projection centre");
  return normalize(t, P.a[0], P.a[1]);
}

RankCensus rank_census(const Tower& t) {
  require_n1(t, 2);
  RankCensus c;
  c.by_rank.assign(4, 0);
  for_each_point(t, [&](const ProjPoint& P) {
    ++c.total;
    ++c.by_rank[sym_rank(t, {P.a, P.b})];
  });
  return c;
}

std::vector<std::vector<Code>> brute_force_labels(const Tower& t, const SymPoint& P) {
  const Field& K = t.fk();
  const std::uint64_t ord = K.order();
  std::vector<std::vector<Code>> labels;
  if (P.a.empty() || P.a[0] == 0) return labels;
  for (Code y = 1; y < K.size(); ++y) {
    // P = c * (y^2, alpha_1 y^{q+1}, ...) with c in F_q*.
    const Code c = K.div(P.a[0], K.mul(y, y));
    if (c >= t.q()) continue;
    std::vector<Code> alpha(P.a.size() - 1);
    bool ok = true;
    for (std::size_t i = 1; i < P.a.size(); ++i) {
      alpha[i - 1] = K.div(P.a[i], K.mul(c, K.pow(y, qpow(t.q(), static_cast<unsigned>(i), ord) + 1)));
      ok = ok && alpha[i - 1] != 0;
    }
    if (ok && std::find(labels.begin(), labels.end(), alpha) == labels.end()) labels.push_back(alpha);
  }
  return labels;
}

WPartitionReport verify_w_partition(const Tower& t, std::uint64_t max_space, std::uint64_t samples,
                                    std::uint64_t seed) {
  WPartitionReport r;
  const Field& K = t.fk();
  r.variety_size = K.order() / (t.q() - 1);
  const unsigned n = t.n();
  if (n == 0) throw Error(Errc::InvalidArgument, "tower has no odd middle degree");
  std::uint64_t v = 1;
  for (unsigned i = 0; i < n; ++i) v *= K.order();
  r.varieties = v;

  if (n == 1) {
    if (point_count(t) > max_space) throw Error(Errc::TooLarge, "PG(W) too large");
    r.exhaustive = true;
    std::vector<std::uint8_t> hits(static_cast<std::size_t>(t.K()) * t.K(), 0);
    for (Code al = 1; al < K.size(); ++al) {
      for (const auto& S : veronese_variety(t, {al})) {
        auto& h = hits[point_key(t, {S.a[0], S.a[1]})];
        if (h != 0) ++r.overlaps;
        if (h < 255) ++h;
      }
    }
    for_each_point(t, [&](const ProjPoint& P) {
      if (P.a == 0 || P.b == 0) return;
      ++r.points_checked;
      if (brute_force_labels(t, {{P.a, P.b}}).size() != 1) ++r.ambiguous;
      if (hits[point_key(t, P)] == 0) ++r.uncovered;
    });
    r.ok = r.ambiguous == 0 && r.overlaps == 0 && r.uncovered == 0 &&
           r.points_checked == r.varieties * r.variety_size;
    return r;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Code> nz(1, K.size() - 1);
  const std::uint64_t ord = K.order();
  for (std::uint64_t s = 0; s < samples; ++s) {
    // A generated point must carry exactly its generating label.
    std::vector<Code> alpha(n), a(n + 1);
    for (auto& x : alpha) x = nz(rng);
    const Code x = nz(rng);
    a[0] = K.mul(x, x);
    for (unsigned i = 1; i <= n; ++i) a[i] = K.mul(alpha[i - 1], K.pow(x, qpow(t.q(), i, ord) + 1));
    const auto labels = brute_force_labels(t, normalize_sym(t, a));
    if (labels.size() != 1) {
      ++r.ambiguous;
    } else if (labels.front() != alpha) {
      ++r.label_mismatches;
    }
    ++r.points_checked;

    // A random admissible point lies on exactly one variety.
    std::vector<Code> b(n + 1);
    for (auto& y : b) y = nz(rng);
    if (brute_force_labels(t, normalize_sym(t, b)).size() != 1) ++r.ambiguous;
    ++r.points_checked;
  }
  r.ok = r.ambiguous == 0 && r.label_mismatches == 0;
  return r;
}

}  // namespace capgeom
