#pragma once

// shared helpers for the test binaries

#include <initializer_list>
#include <vector>

#include "insc/inscribe.hpp"

namespace testutil {

using namespace insc;

inline VecQ vq(std::initializer_list<long> xs) {
  VecQ v(static_cast<int>(xs.size()));
  int i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

inline MatQ mq(int r, int c, std::initializer_list<long> xs) {
  MatQ m(r, c);
  int i = 0;
  for (long x : xs) {
    m(i / c, i % c) = x;
    ++i;
  }
  return m;
}

inline Polytope<Rat> braid_hexagon() { return permutahedron({Rat(0), Rat(1), Rat(2)}); }

inline Fan<Rat> braid_fan() { return normal_fan(braid_hexagon()); }

inline int region_of_vertex(const Polytope<Rat>& p, const VecQ& v) {
  for (int i = 0; i < static_cast<int>(p.vertices.size()); ++i)
    if (p.vertices[i] == v) return i;
  return -1;
}

inline std::vector<VecQ> sphere61_points() {
  std::vector<VecQ> pts;
  for (int x = -8; x <= 8; ++x)
    for (int y = -8; y <= 8; ++y)
      for (int z = -8; z <= 8; ++z)
        if (x * x + y * y + z * z == 61) pts.push_back(vq({x, y, z}));
  return pts;
}

// Extreme rays of {x in U : x >= 0} for a 2-dimensional subspace U: the rays
// where some coordinate vanishes.
inline std::vector<VecQ> extreme_rays_2d_nonneg(const Subspace<Rat>& u) {
  std::vector<VecQ> rays;
  if (u.dim() != 2) throw error("BadParams", "helper expects a plane");
  for (int i = 0; i < u.ambient; ++i) {
    VecQ c(2);
    c << u.basis(1, i), -u.basis(0, i);
    VecQ cand = u.basis.transpose() * c;
    for (int sgn : {1, -1}) {
      VecQ x = Rat(sgn) * cand;
      bool nonneg = true, nonzero = false;
      for (int j = 0; j < x.size(); ++j) {
        if (x(j) < 0) nonneg = false;
        if (x(j) != 0) nonzero = true;
      }
      if (!nonneg || !nonzero) continue;
      bool dup = false;
      for (const auto& r : rays) dup = dup || positively_parallel(r, x);
      if (!dup) rays.push_back(x);
    }
  }
  return rays;
}

// Vertex set equal to a homothet (positive scaling + translation) of the
// model's vertex set.
inline bool is_homothet_of(const std::vector<VecQ>& pts, const std::vector<VecQ>& model) {
  if (pts.size() != model.size() || pts.empty()) return false;
  // match barycenters, then a common positive scale factor
  int d = static_cast<int>(pts[0].size());
  VecQ cp = VecQ::Zero(d), cm = VecQ::Zero(d);
  for (const auto& p : pts) cp += p;
  for (const auto& m : model) cm += m;
  cp /= Rat(static_cast<int>(pts.size()));
  cm /= Rat(static_cast<int>(model.size()));
  // find the scale from the first noncentral model point
  Rat scale(0);
  for (const auto& m : model) {
    VecQ dm = m - cm;
    if (dm.isZero(Rat(0))) continue;
    // try to match any pts element
    for (const auto& p : pts) {
      VecQ dp = p - cp;
      if (dp.isZero(Rat(0))) continue;
      if (positively_parallel(dp, dm)) {
        int k = 0;
        while (dm(k) == 0) ++k;
        scale = dp(k) / dm(k);
        break;
      }
    }
    if (scale != 0) break;
  }
  if (scale <= 0) return false;
  std::vector<VecQ> expect;
  for (const auto& m : model) expect.push_back(VecQ(cp + scale * (m - cm)));
  for (const auto& p : pts) {
    bool found = false;
    for (const auto& e : expect) found = found || e == p;
    if (!found) return false;
  }
  return true;
}

}  // namespace testutil
