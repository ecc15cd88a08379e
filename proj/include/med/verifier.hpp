#pragma once

#include <string>
#include <vector>

#include "med/scheduler.hpp"

namespace med {

struct Violation {
  double t = 0.0;
  int e = -1;
  int c = -1;
};

struct VerifyReport {
  bool ok = true;
  // First violating sample time per crossing pair, sorted by (t, e, c).
  std::vector<Violation> violations;
  int schedulable_pairs = 0;
  int inevitable_pairs = 0;
  long long samples = 0;
  double dt = 0.0;
  double period = 0.0;

  std::string to_json() const;
};

// Certifies that no schedulable crossing point is ever covered by both
// edges' drawn sets. Samples t in {0, dt, 2dt, ...} over one period plus
// the analytic passage times of every schedulable crossing, so window
// boundaries are checked regardless of grid phase. Coverage must exceed
// 1e-9 in parameter units on both edges to count as a violation;
// single-instant touching is legal. Crossing points are recomputed from
// the layout geometry, independent of how the schedule was built.
VerifyReport verify_no_crossings(const LayoutGraph& layout,
                                 const MorphParams& params,
                                 const std::vector<EdgeMotion>& tracks,
                                 double period, double dt);

VerifyReport verify_no_crossings(const LayoutGraph& layout,
                                 const Schedule& schedule, double dt);

VerifyReport verify_no_crossings(const LayoutGraph& layout,
                                 const Timeline& timeline, double dt);

}  // namespace med
