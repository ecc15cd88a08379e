#pragma once

#include <map>
#include <optional>
#include <vector>

#include "med/graphgen.hpp"

namespace med {

// Global morphing parameters of a (delta,eta)-symmetric homogeneous
// morphing edge drawing. speed is the stub-tip speed in drawing units
// per second; min_travel_s is the floor on the one-way travel time
// (short edges are slowed down so their cycle stays visible).
struct MorphParams {
  double delta = 0.25;
  double eta = 0.5;
  double speed = 1.0;
  double min_travel_s = 0.0;

  void validate() const;
};

// Per-edge morphing kinematics plus the assigned start time.
struct EdgeMotion {
  int edge = -1;
  double length = 0.0;
  double eff_speed = 0.0;  // capped so that d1 >= min_travel_s
  double d1 = 0.0;         // one-way travel time (eta-delta)*length/eff_speed
  double t_s = 0.0;        // morphing start time within the period
};

// One geometric intersection between the interiors of two edges,
// recorded once per ordered direction. Schedulable means the point lies
// in the blank area (delta, 1-delta) of BOTH edges; crossings inside a
// rest stub are inevitable and constrain nothing.
struct Crossing {
  int e = -1;
  int c = -1;
  double u_e = 0.0;
  double u_c = 0.0;
  bool schedulable = false;
};

// Connected component of the graph whose nodes are edges and whose links
// join pairs with a schedulable crossing; the unit of independent
// scheduling. Edges without schedulable crossings form singleton groups.
struct MorphingGroup {
  std::vector<int> edges;             // sorted ascending
  std::vector<Crossing> crossings;    // schedulable only, both directions
  std::map<int, std::vector<int>> neighbors;  // C(e) within the group
};

// Start-time range [r1, r2) during which an edge must not begin morphing
// to avoid meeting a scheduled neighbor at their crossing point.
struct ForbiddenInterval {
  double r1 = 0.0;
  double r2 = 0.0;

  bool empty() const { return r1 >= r2; }
};

struct ScheduledGroup {
  MorphingGroup group;
  std::vector<EdgeMotion> motions;  // sorted by edge id
};

struct Schedule {
  std::vector<ScheduledGroup> groups;
  double period = 0.0;  // global repetition period, all edges at rest at 0
  MorphParams params;
};

// Flattened schedule matching the timeline JSON exchange format.
struct Timeline {
  double period_s = 0.0;
  MorphParams params;
  std::vector<EdgeMotion> tracks;        // sorted by edge id
  std::vector<std::vector<int>> groups;  // edge ids per morphing group
};

// Tent-shaped ratio function: delta outside (t_s, t_s+2*d1], rising to
// eta at t_s+d1 and falling back, with slope eff_speed/length.
double rho(const EdgeMotion& motion, const MorphParams& params, double t);

// The morphing function: the drawn stub set of an edge at time t,
// gamma(seg, rho(t), 1 - rho(t)).
StubSet drawn_at(const Segment& seg, const EdgeMotion& motion,
                 const MorphParams& params, double t);

// min(speed, (eta-delta)*length/min_travel_s); with min_travel_s == 0
// the speed is never capped.
double effective_speed(double length, const MorphParams& params);

// Converts an angular tip speed at a viewing distance into drawing
// units (pixels) per second.
double visual_angle_speed(double deg_per_s, double view_dist_cm,
                          double px_per_cm);

// Times from the start of a motion to the first (stretching) and second
// (shrinking) passage of the stub tip at parameter u_e along the edge.
// nullopt when the tip never reaches the point (the crossing then
// imposes no constraint). Requires the crossing to be schedulable for
// this edge, i.e. min(u_e, 1-u_e) > delta.
std::optional<double> t_pass(const EdgeMotion& motion,
                             const MorphParams& params, double u_e);
std::optional<double> t_return(const EdgeMotion& motion,
                               const MorphParams& params, double u_e);

// Every proper pairwise intersection, once per ordered direction.
// Propagates CollinearOverlapError as layout rejection.
std::vector<Crossing> crossing_catalog(const LayoutGraph& layout,
                                       const MorphParams& params);

std::vector<MorphingGroup> morphing_groups(const LayoutGraph& layout,
                                           const std::vector<Crossing>& catalog);

// [r1, r2) per the start-time exclusion rule, given that c's start time
// is already assigned. Empty when either tip never reaches the point.
ForbiddenInterval forbidden_interval(const EdgeMotion& e, const EdgeMotion& c,
                                     const Crossing& crossing,
                                     const MorphParams& params);

// Smallest t >= 0 outside the union of half-open intervals [r1, r2).
double earliest_space(std::vector<ForbiddenInterval> intervals);

// Assigns start times within one group in descending order of edge
// length (ties by ascending edge id), each edge taking the earliest
// start permitted by its already-scheduled crossing partners.
std::vector<EdgeMotion> find_start_times(const MorphingGroup& group,
                                         const LayoutGraph& layout,
                                         const MorphParams& params);

// Full pipeline: catalog, groups, per-group start times, and the global
// repetition period (max t_s + 2*d1, rounded up to the next millisecond).
Schedule build_schedule(const LayoutGraph& layout, const MorphParams& params);

Timeline flatten(const Schedule& schedule);

}  // namespace med
