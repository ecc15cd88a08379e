#include "med/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "json.hpp"

namespace med {

namespace {

constexpr double kCoverageTol = 1e-9;  // parameter units

struct PairCheck {
  int e;
  int c;
  const EdgeMotion* track_e;
  const EdgeMotion* track_c;
  double level_e;  // min(u_e, 1-u_e), coverage threshold on e
  double level_c;
};

// Times at which the tent rho(t) crosses the coverage level of a point
// at distance-ratio `level` from the nearer endpoint, computed from the
// tent shape alone (rise and fall around the peak at t_s + d1).
void append_level_times(const EdgeMotion& m, const MorphParams& params,
                        double level, double period,
                        std::vector<double>& times) {
  if (level > params.eta || m.eff_speed <= 0.0) return;
  const double slope = m.eff_speed / m.length;
  const double up = m.t_s + (level - params.delta) / slope;
  const double down = m.t_s + 2.0 * m.d1 - (level - params.delta) / slope;
  for (double t : {up, down}) {
    if (t >= 0.0 && t <= period) times.push_back(t);
  }
}

}  // namespace

VerifyReport verify_no_crossings(const LayoutGraph& layout,
                                 const MorphParams& params,
                                 const std::vector<EdgeMotion>& tracks,
                                 double period, double dt) {
  if (dt <= 0.0) {
    throw ValidationError("verify: dt must be positive");
  }
  VerifyReport report;
  report.dt = dt;
  report.period = period;

  std::map<int, const EdgeMotion*> track_of;
  for (const auto& t : tracks) track_of[t.edge] = &t;

  std::vector<PairCheck> pairs;
  std::vector<double> event_times;
  for (const auto& cr : crossing_catalog(layout, params)) {
    if (cr.e > cr.c) continue;  // one check per unordered pair
    if (!cr.schedulable) {
      report.inevitable_pairs++;
      continue;
    }
    report.schedulable_pairs++;
    const auto it_e = track_of.find(cr.e);
    const auto it_c = track_of.find(cr.c);
    if (it_e == track_of.end() || it_c == track_of.end()) {
      throw ValidationError("verify: no track for edge " +
                            std::to_string(it_e == track_of.end() ? cr.e : cr.c));
    }
    const double level_e = std::min(cr.u_e, 1.0 - cr.u_e);
    const double level_c = std::min(cr.u_c, 1.0 - cr.u_c);
    pairs.push_back(
        {cr.e, cr.c, it_e->second, it_c->second, level_e, level_c});
    append_level_times(*it_e->second, params, level_e, period, event_times);
    append_level_times(*it_c->second, params, level_c, period, event_times);
  }

  std::vector<double> times;
  const long long steps = static_cast<long long>(std::floor(period / dt));
  times.reserve(static_cast<std::size_t>(steps) + event_times.size() + 2);
  for (long long i = 0; i <= steps; ++i) {
    times.push_back(static_cast<double>(i) * dt);
  }
  times.push_back(period);
  times.insert(times.end(), event_times.begin(), event_times.end());
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  report.samples = static_cast<long long>(times.size());

  std::map<std::pair<int, int>, double> first_violation;
  for (double t : times) {
    for (const auto& pc : pairs) {
      const double rho_e = rho(*pc.track_e, params, t);
      const double rho_c = rho(*pc.track_c, params, t);
      if (rho_e - pc.level_e > kCoverageTol &&
          rho_c - pc.level_c > kCoverageTol) {
        auto [it, inserted] =
            first_violation.try_emplace({pc.e, pc.c}, t);
        if (!inserted) it->second = std::min(it->second, t);
      }
    }
  }

  for (const auto& [pair, t] : first_violation) {
    report.violations.push_back({t, pair.first, pair.second});
  }
  std::sort(report.violations.begin(), report.violations.end(),
            [](const Violation& a, const Violation& b) {
              if (a.t != b.t) return a.t < b.t;
              if (a.e != b.e) return a.e < b.e;
              return a.c < b.c;
            });
  report.ok = report.violations.empty();
  return report;
}

VerifyReport verify_no_crossings(const LayoutGraph& layout,
                                 const Schedule& schedule, double dt) {
  const Timeline tl = flatten(schedule);
  return verify_no_crossings(layout, tl.params, tl.tracks, tl.period_s, dt);
}

VerifyReport verify_no_crossings(const LayoutGraph& layout,
                                 const Timeline& timeline, double dt) {
  return verify_no_crossings(layout, timeline.params, timeline.tracks,
                             timeline.period_s, dt);
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["ok"] = ok;
  j["period_s"] = period;
  j["dt_s"] = dt;
  j["samples"] = samples;
  j["schedulable_crossing_pairs"] = schedulable_pairs;
  j["inevitable_crossing_pairs"] = inevitable_pairs;
  j["violation_count"] = violations.size();
  if (violations.empty()) {
    j["first_violation"] = nullptr;
  } else {
    const auto& v = violations.front();
    j["first_violation"] = {{"t", v.t}, {"e", v.e}, {"c", v.c}};
  }
  j["violations"] = nlohmann::ordered_json::array();
  const std::size_t cap = std::min<std::size_t>(violations.size(), 100);
  for (std::size_t i = 0; i < cap; ++i) {
    const auto& v = violations[i];
    j["violations"].push_back({{"t", v.t}, {"e", v.e}, {"c", v.c}});
  }
  return j.dump(2) + "\n";
}

}  // namespace med
