#include "med/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace med {

void MorphParams::validate() const {
  if (!(0.0 <= delta && delta < eta && eta <= 0.5)) {
    throw ValidationError("morph params: need 0 <= delta < eta <= 1/2, got delta=" +
                          std::to_string(delta) + " eta=" + std::to_string(eta));
  }
  if (!(speed > 0.0)) {
    throw ValidationError("morph params: speed must be positive");
  }
  if (min_travel_s < 0.0) {
    throw ValidationError("morph params: min_travel_s must be >= 0");
  }
}

double rho(const EdgeMotion& motion, const MorphParams& params, double t) {
  const double t0 = motion.t_s;
  const double t1 = t0 + motion.d1;
  const double t2 = t0 + 2.0 * motion.d1;
  const double slope = motion.eff_speed / motion.length;
  if (t <= t0 || t2 < t) return params.delta;
  if (t <= t1) return params.delta + (t - t0) * slope;
  return params.eta - (t - t1) * slope;
}

StubSet drawn_at(const Segment& seg, const EdgeMotion& motion,
                 const MorphParams& params, double t) {
  const double r = rho(motion, params, t);
  return gamma(seg, r, 1.0 - r);
}

double effective_speed(double length, const MorphParams& params) {
  if (length <= 0.0) {
    throw ValidationError("effective_speed: length must be positive");
  }
  if (params.min_travel_s <= 0.0) return params.speed;
  const double cap = (params.eta - params.delta) * length / params.min_travel_s;
  return std::min(params.speed, cap);
}

double visual_angle_speed(double deg_per_s, double view_dist_cm,
                          double px_per_cm) {
  if (deg_per_s < 0.0 || view_dist_cm <= 0.0 || px_per_cm <= 0.0) {
    throw ValidationError("visual_angle_speed: arguments must be positive");
  }
  constexpr double kPi = 3.14159265358979323846;
  return std::tan(deg_per_s * kPi / 180.0) * view_dist_cm * px_per_cm;
}

namespace {

EdgeMotion make_motion(int edge, double length, const MorphParams& params) {
  EdgeMotion m;
  m.edge = edge;
  m.length = length;
  m.eff_speed = effective_speed(length, params);
  m.d1 = (params.eta - params.delta) * length / m.eff_speed;
  m.t_s = 0.0;
  return m;
}

// Distance of the crossing point from the nearer endpoint, and the
// schedulability precondition shared by t_pass/t_return.
double near_distance(const EdgeMotion& motion, const MorphParams& params,
                     double u_e) {
  const double ratio = std::min(u_e, 1.0 - u_e);
  if (!(ratio > params.delta)) {
    throw ValidationError(
        "passage time: crossing point lies inside the rest stub (u=" +
        std::to_string(u_e) + ")");
  }
  return ratio * motion.length;
}

}  // namespace

std::optional<double> t_pass(const EdgeMotion& motion,
                             const MorphParams& params, double u_e) {
  const double d = near_distance(motion, params, u_e);
  if (d > params.eta * motion.length) return std::nullopt;
  return std::max(0.0, (d - params.delta * motion.length) / motion.eff_speed);
}

std::optional<double> t_return(const EdgeMotion& motion,
                               const MorphParams& params, double u_e) {
  const double d = near_distance(motion, params, u_e);
  if (d > params.eta * motion.length) return std::nullopt;
  return ((params.eta - params.delta) * motion.length +
          (params.eta * motion.length - d)) /
         motion.eff_speed;
}

std::vector<Crossing> crossing_catalog(const LayoutGraph& layout,
                                       const MorphParams& params) {
  params.validate();
  std::vector<Crossing> catalog;
  const int ne = layout.edge_count();
  const double lo = params.delta;
  const double hi = 1.0 - params.delta;
  for (int i = 0; i < ne; ++i) {
    const Segment si = layout.segment(i);
    for (int j = i + 1; j < ne; ++j) {
      const auto hit = segment_intersection(si, layout.segment(j));
      if (!hit) continue;
      const bool schedulable = hit->u1 > lo && hit->u1 < hi &&
                               hit->u2 > lo && hit->u2 < hi;
      catalog.push_back({i, j, hit->u1, hit->u2, schedulable});
      catalog.push_back({j, i, hit->u2, hit->u1, schedulable});
    }
  }
  return catalog;
}

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<MorphingGroup> morphing_groups(const LayoutGraph& layout,
                                           const std::vector<Crossing>& catalog) {
  const int ne = layout.edge_count();
  UnionFind uf(ne);
  for (const auto& cr : catalog) {
    if (cr.schedulable) uf.unite(cr.e, cr.c);
  }

  // One group per component root; roots are the smallest edge id of the
  // component, so iterating edges in order yields a deterministic list.
  std::map<int, MorphingGroup> by_root;
  for (int e = 0; e < ne; ++e) {
    by_root[uf.find(e)].edges.push_back(e);
  }
  for (const auto& cr : catalog) {
    if (!cr.schedulable) continue;
    auto& grp = by_root[uf.find(cr.e)];
    grp.crossings.push_back(cr);
    grp.neighbors[cr.e].push_back(cr.c);
  }
  std::vector<MorphingGroup> groups;
  groups.reserve(by_root.size());
  for (auto& [root, grp] : by_root) {
    for (auto& [e, nbrs] : grp.neighbors) {
      std::sort(nbrs.begin(), nbrs.end());
    }
    groups.push_back(std::move(grp));
  }
  return groups;
}

ForbiddenInterval forbidden_interval(const EdgeMotion& e, const EdgeMotion& c,
                                     const Crossing& crossing,
                                     const MorphParams& params) {
  const auto tp_e = t_pass(e, params, crossing.u_e);
  const auto tr_e = t_return(e, params, crossing.u_e);
  const auto tp_c = t_pass(c, params, crossing.u_c);
  const auto tr_c = t_return(c, params, crossing.u_c);
  if (!tp_e || !tp_c) {
    return {0.0, 0.0};  // one tip never reaches the point: no constraint
  }
  return {c.t_s + *tp_c - *tr_e, c.t_s + *tr_c - *tp_e};
}

double earliest_space(std::vector<ForbiddenInterval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const ForbiddenInterval& a, const ForbiddenInterval& b) {
              return a.r1 != b.r1 ? a.r1 < b.r1 : a.r2 < b.r2;
            });
  double t = 0.0;
  for (const auto& iv : intervals) {
    if (iv.empty()) continue;
    if (iv.r2 < t) continue;
    if (t < iv.r1) return t;
    t = iv.r2;
  }
  return t;
}

std::vector<EdgeMotion> find_start_times(const MorphingGroup& group,
                                         const LayoutGraph& layout,
                                         const MorphParams& params) {
  std::map<int, EdgeMotion> motions;
  for (int e : group.edges) {
    motions.emplace(e, make_motion(e, layout.edge_lengths[e], params));
  }

  // Crossing parameters keyed by ordered pair within the group.
  std::map<std::pair<int, int>, Crossing> cross_of;
  for (const auto& cr : group.crossings) {
    cross_of.emplace(std::make_pair(cr.e, cr.c), cr);
  }

  std::vector<int> order = group.edges;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double la = layout.edge_lengths[a];
    const double lb = layout.edge_lengths[b];
    return la != lb ? la > lb : a < b;
  });

  std::map<int, bool> assigned;
  for (int e : order) {
    std::vector<ForbiddenInterval> intervals;
    const auto nbrs = group.neighbors.find(e);
    if (nbrs != group.neighbors.end()) {
      for (int c : nbrs->second) {
        if (!assigned[c]) continue;
        const auto& cr = cross_of.at({e, c});
        const auto iv = forbidden_interval(motions[e], motions[c], cr, params);
        if (!iv.empty()) intervals.push_back(iv);
      }
    }
    motions[e].t_s = earliest_space(std::move(intervals));
    assigned[e] = true;
  }

  std::vector<EdgeMotion> out;
  out.reserve(motions.size());
  for (const auto& [e, motion] : motions) {
    out.push_back(motion);
  }
  return out;
}

namespace {

// Rounds up to the next millisecond; values within 1e-9 s of a grid
// point snap down so exact boundaries keep their analytic value.
double round_up_ms(double seconds) {
  if (seconds <= 0.0) return 0.0;
  return std::ceil(seconds * 1000.0 - 1e-6) / 1000.0;
}

}  // namespace

Schedule build_schedule(const LayoutGraph& layout, const MorphParams& params) {
  params.validate();
  Schedule schedule;
  schedule.params = params;
  const auto catalog = crossing_catalog(layout, params);
  for (auto& group : morphing_groups(layout, catalog)) {
    auto motions = find_start_times(group, layout, params);
    schedule.groups.push_back({std::move(group), std::move(motions)});
  }
  double makespan = 0.0;
  for (const auto& sg : schedule.groups) {
    for (const auto& m : sg.motions) {
      makespan = std::max(makespan, m.t_s + 2.0 * m.d1);
    }
  }
  schedule.period = round_up_ms(makespan);
  return schedule;
}

Timeline flatten(const Schedule& schedule) {
  Timeline tl;
  tl.period_s = schedule.period;
  tl.params = schedule.params;
  for (const auto& sg : schedule.groups) {
    tl.groups.push_back(sg.group.edges);
    tl.tracks.insert(tl.tracks.end(), sg.motions.begin(), sg.motions.end());
  }
  std::sort(tl.tracks.begin(), tl.tracks.end(),
            [](const EdgeMotion& a, const EdgeMotion& b) {
              return a.edge < b.edge;
            });
  return tl;
}

}  // namespace med
