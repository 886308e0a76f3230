#include "capgeom/linperm.hpp"

#include <string>

#include "capgeom/error.hpp"

namespace capgeom {

Matrix build_d_matrix(const Tower& t, Code a0, Code a1, Code a2, int eps) {
  const unsigned k = t.m();
  if (k < 3) throw Error(Errc::KTooSmall, "k = " + std::to_string(k) + " (need k >= 3)");
  if (eps != 1 && eps != -1) throw Error(Errc::InvalidArgument, "eps must be 1 or -1");
  const Field& F = t.fk();
  Matrix d(k, k);
  const Code a[3] = {a0, a1, a2};
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = 0; j < 3; ++j) {
      Code v = t.frob_code(Level::FK, a[j], i);
      if (i + j >= k && eps == -1) v = F.neg(v);
      d(i, (i + j) % k) = v;
    }
  }
  return d;
}

Code d_determinant(const Tower& t, const Matrix& d) { return determinant(t.fk(), d); }

bool is_permutation(const Tower& t, Code a0, Code a1, Code a2, Level level, std::uint64_t max_size) {
  if (t.level_size(level) > max_size) {
    throw Error(Errc::TooLarge, "level has " + std::to_string(t.level_size(level)) + " elements");
  }
  return t.linearized_kernel(Elem{Level::FK, a0}, Elem{Level::FK, a1}, Elem{Level::FK, a2}, level).empty();
}

FerReport check_fer(const Tower& t, Code a0, Code a1, Code a2) {
  const Code n0 = t.norm_to_q(a0), n2 = t.norm_to_q(a2);
  if (t.fq().add(n0, n2) != 0) throw Error(Errc::NormConditionFails, "N(a0) + N(a2) != 0");
  FerReport r;
  r.perm_on_K = is_permutation(t, a0, a1, a2, Level::FK);
  r.perm_on_K2 = is_permutation(t, a0, a1, a2, Level::FK2);
  r.det_plus = d_determinant(t, build_d_matrix(t, a0, a1, a2, 1));
  r.det_minus = d_determinant(t, build_d_matrix(t, a0, a1, a2, -1));
  r.det_criterion = r.det_plus != 0 && r.det_minus != 0;
  return r;
}

}  // namespace capgeom
