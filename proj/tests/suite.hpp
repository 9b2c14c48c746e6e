#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eqloc/toric.hpp"

namespace suite {

using eqloc::IVec;
using eqloc::LabeledPolytope;
using eqloc::Rational;

inline LabeledPolytope polytope(std::vector<std::pair<IVec, Rational>> facets, std::vector<std::int64_t> labels = {}) {
  LabeledPolytope p;
  p.dim = static_cast<int>(facets.front().first.size());
  for (std::size_t i = 0; i < facets.size(); ++i)
    p.facets.push_back({facets[i].first, facets[i].second, labels.empty() ? 1 : labels[i]});
  return p;
}

inline LabeledPolytope p1() { return polytope({{{1}, 1}, {{-1}, 1}}); }
// x >= -1, y >= -1, x + y <= 1: barycentre at the origin.
inline LabeledPolytope p2() { return polytope({{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}}); }
inline LabeledPolytope unit_simplex() { return polytope({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, 1}}); }
inline LabeledPolytope unit_square() { return polytope({{{1, 0}, 0}, {{0, 1}, 0}, {{-1, 0}, 1}, {{0, -1}, 1}}); }
inline LabeledPolytope p1xp1() { return polytope({{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}}); }
// P^2 with the fixed point over (1, 1) blown up (rays e1, e2, -e1-e2, e1+e2).
inline LabeledPolytope blp2() { return polytope({{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 1}, {{1, 1}, 1}}); }
inline LabeledPolytope bl2p2() {
  return polytope({{{1, 0}, 1}, {{0, 1}, 1}, {{-1, -1}, 2}, {{1, 1}, 1}, {{0, -1}, 2}});
}
// Hirzebruch F_1 in its standard fan e1, e2, -e1 + e2, -e2.
inline LabeledPolytope f1() { return polytope({{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 1}, 2}, {{0, -1}, 2}}); }
inline LabeledPolytope p3() { return polytope({{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}, {{-1, -1, -1}, 1}}); }
inline LabeledPolytope p1xp2() {
  return polytope({{{1, 0, 0}, 1}, {{-1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}, {{0, -1, -1}, 1}});
}
inline LabeledPolytope teardrop() { return polytope({{{1}, 1}, {{-1}, 1}}, {1, 2}); }
inline LabeledPolytope football() { return polytope({{{1}, 1}, {{-1}, 1}}, {3, 3}); }

struct Named {
  std::string name;
  LabeledPolytope polytope;
};

/// The smooth spaces every cross-check runs over.
inline std::vector<Named> smooth_suite() {
  return {{"P1", p1()},       {"P2", p2()},       {"P1xP1", p1xp1()}, {"BlpP2", blp2()},
          {"Bl2P2", bl2p2()}, {"F1", f1()},       {"P3", p3()},       {"P1xP2", p1xp2()}};
}

}  // namespace suite
