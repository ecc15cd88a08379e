#include "med/exporter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace med {

namespace {

using nlohmann::ordered_json;

double get_number(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ParseError(std::string("timeline: missing numeric \"") + key + "\"");
  }
  return j[key].get<double>();
}

}  // namespace

std::string timeline_to_json(const Timeline& timeline) {
  ordered_json j;
  j["period_s"] = timeline.period_s;
  j["params"] = {{"delta", timeline.params.delta},
                 {"eta", timeline.params.eta},
                 {"speed", timeline.params.speed},
                 {"min_travel_s", timeline.params.min_travel_s}};
  j["tracks"] = ordered_json::array();
  for (const auto& t : timeline.tracks) {
    j["tracks"].push_back({{"edge", t.edge},
                           {"length", t.length},
                           {"eff_speed", t.eff_speed},
                           {"t_s", t.t_s},
                           {"d1", t.d1}});
  }
  j["groups"] = ordered_json::array();
  for (const auto& grp : timeline.groups) {
    j["groups"].push_back(grp);
  }
  return j.dump(2) + "\n";
}

Timeline parse_timeline(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("timeline: ") + e.what());
  }
  Timeline tl;
  tl.period_s = get_number(j, "period_s");
  if (!j.contains("params") || !j["params"].is_object()) {
    throw ParseError("timeline: missing \"params\" object");
  }
  const auto& p = j["params"];
  tl.params.delta = get_number(p, "delta");
  tl.params.eta = get_number(p, "eta");
  tl.params.speed = get_number(p, "speed");
  tl.params.min_travel_s = get_number(p, "min_travel_s");
  if (tl.period_s < 0.0 || tl.params.delta < 0.0 || tl.params.delta > 0.5 ||
      tl.params.eta < 0.0 || tl.params.eta > 0.5 || tl.params.speed <= 0.0 ||
      tl.params.min_travel_s < 0.0) {
    throw ParseError("timeline: parameter out of range");
  }
  if (!j.contains("tracks") || !j["tracks"].is_array()) {
    throw ParseError("timeline: missing \"tracks\" array");
  }
  std::set<int> seen;
  for (const auto& t : j["tracks"]) {
    EdgeMotion m;
    if (!t.contains("edge") || !t["edge"].is_number_integer()) {
      throw ParseError("timeline: track needs integer \"edge\"");
    }
    m.edge = t["edge"].get<int>();
    m.length = get_number(t, "length");
    m.eff_speed = get_number(t, "eff_speed");
    m.t_s = get_number(t, "t_s");
    m.d1 = get_number(t, "d1");
    if (m.edge < 0 || !seen.insert(m.edge).second) {
      throw ParseError("timeline: bad or duplicate track edge id " +
                       std::to_string(m.edge));
    }
    if (m.length <= 0.0 || m.eff_speed <= 0.0 || m.t_s < 0.0 || m.d1 < 0.0) {
      throw ParseError("timeline: track for edge " + std::to_string(m.edge) +
                       " out of range");
    }
    tl.tracks.push_back(m);
  }
  if (j.contains("groups")) {
    if (!j["groups"].is_array()) {
      throw ParseError("timeline: \"groups\" must be an array");
    }
    for (const auto& grp : j["groups"]) {
      if (!grp.is_array()) {
        throw ParseError("timeline: every group must be an array of edge ids");
      }
      tl.groups.push_back(grp.get<std::vector<int>>());
    }
  }
  return tl;
}

std::string export_timeline_json(const LayoutGraph& layout,
                                 const Schedule& schedule) {
  const Timeline tl = flatten(schedule);
  if (static_cast<int>(tl.tracks.size()) != layout.edge_count()) {
    throw ValidationError("timeline export: schedule covers " +
                          std::to_string(tl.tracks.size()) + " edges, layout has " +
                          std::to_string(layout.edge_count()));
  }
  return timeline_to_json(tl);
}

namespace {

std::string fmt(double v, int prec = 12) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

struct Keyframes {
  std::vector<double> fractions;  // in [0,1], nondecreasing
  std::vector<double> ratios;     // stub-edge ratio at each keyframe
};

Keyframes tent_keyframes(const EdgeMotion& m, const MorphParams& params,
                         double period) {
  const double raw_times[5] = {0.0, m.t_s, m.t_s + m.d1, m.t_s + 2.0 * m.d1,
                               period};
  const double raw_ratios[5] = {params.delta, params.delta, params.eta,
                                params.delta, params.delta};
  Keyframes kf;
  for (int i = 0; i < 5; ++i) {
    const double f = std::min(1.0, raw_times[i] / period);
    if (!kf.fractions.empty() && f == kf.fractions.back() &&
        raw_ratios[i] == kf.ratios.back()) {
      continue;
    }
    kf.fractions.push_back(f);
    kf.ratios.push_back(raw_ratios[i]);
  }
  return kf;
}

void append_animate(std::ostringstream& svg, const char* attr,
                    const Keyframes& kf, const Segment& seg, bool x_coord,
                    bool from_b, double period) {
  svg << "      <animate attributeName=\"" << attr << "\" dur=\""
      << fmt(period) << "s\" repeatCount=\"indefinite\" calcMode=\"linear\""
      << " keyTimes=\"";
  for (std::size_t i = 0; i < kf.fractions.size(); ++i) {
    if (i) svg << ';';
    svg << fmt(kf.fractions[i]);
  }
  svg << "\" values=\"";
  for (std::size_t i = 0; i < kf.ratios.size(); ++i) {
    if (i) svg << ';';
    const double s = from_b ? 1.0 - kf.ratios[i] : kf.ratios[i];
    const Point p = point_at(seg, s);
    svg << fmt(x_coord ? p.x : p.y);
  }
  svg << "\"/>\n";
}

}  // namespace

std::string render_svg(const LayoutGraph& layout, const Timeline& timeline,
                       RenderMode mode, const SvgStyle& style) {
  // No morphing range left: the drawing is a plain CED at all times.
  if (mode == RenderMode::Animated &&
      timeline.params.delta >= timeline.params.eta) {
    mode = RenderMode::StaticCed;
  }

  std::map<int, const EdgeMotion*> track_of;
  for (const auto& t : timeline.tracks) track_of[t.edge] = &t;
  if (mode == RenderMode::Animated) {
    if (layout.edge_count() > 0 && timeline.period_s <= 0.0) {
      throw ValidationError("render: timeline period must be positive");
    }
    for (int e = 0; e < layout.edge_count(); ++e) {
      if (!track_of.count(e)) {
        throw ValidationError("render: timeline has no track for edge " +
                              std::to_string(e));
      }
    }
  }

  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
  for (int i = 0; i < layout.graph.node_count; ++i) {
    const Point p = layout.positions[i];
    if (i == 0) {
      min_x = max_x = p.x;
      min_y = max_y = p.y;
    } else {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double pad = style.margin;
  const double vb_x = min_x - pad;
  const double vb_y = min_y - pad;
  const double vb_w = (max_x - min_x) + 2.0 * pad;
  const double vb_h = (max_y - min_y) + 2.0 * pad;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(vb_w, 2)
      << "\" height=\"" << fmt(vb_h, 2) << "\" viewBox=\"" << fmt(vb_x, 2)
      << ' ' << fmt(vb_y, 2) << ' ' << fmt(vb_w, 2) << ' ' << fmt(vb_h, 2)
      << "\">\n";
  svg << "  <rect x=\"" << fmt(vb_x, 2) << "\" y=\"" << fmt(vb_y, 2)
      << "\" width=\"" << fmt(vb_w, 2) << "\" height=\"" << fmt(vb_h, 2)
      << "\" fill=\"" << style.background << "\"/>\n";
  svg << "  <g stroke=\"" << style.stub_color << "\" stroke-width=\""
      << fmt(style.stub_width, 2) << "\" stroke-linecap=\"butt\">\n";

  const double delta = timeline.params.delta;
  const double period = timeline.period_s;
  for (int e = 0; e < layout.edge_count(); ++e) {
    const Segment seg = layout.segment(e);
    if (mode == RenderMode::StaticCed) {
      svg << "    <line x1=\"" << fmt(seg.a.x) << "\" y1=\"" << fmt(seg.a.y)
          << "\" x2=\"" << fmt(seg.b.x) << "\" y2=\"" << fmt(seg.b.y)
          << "\"/>\n";
      continue;
    }
    if (mode == RenderMode::StaticPed) {
      if (delta <= 0.0) continue;  // empty stubs: nothing to draw
      const Point tip_a = point_at(seg, delta);
      const Point tip_b = point_at(seg, 1.0 - delta);
      svg << "    <line x1=\"" << fmt(seg.a.x) << "\" y1=\"" << fmt(seg.a.y)
          << "\" x2=\"" << fmt(tip_a.x) << "\" y2=\"" << fmt(tip_a.y)
          << "\"/>\n";
      svg << "    <line x1=\"" << fmt(tip_b.x) << "\" y1=\"" << fmt(tip_b.y)
          << "\" x2=\"" << fmt(seg.b.x) << "\" y2=\"" << fmt(seg.b.y)
          << "\"/>\n";
      continue;
    }

    const EdgeMotion& m = *track_of.at(e);
    const Keyframes kf = tent_keyframes(m, timeline.params, period);
    const Point rest_a = point_at(seg, delta);
    const Point rest_b = point_at(seg, 1.0 - delta);

    // Stub anchored at a: the far endpoint (x2,y2) is the moving tip.
    svg << "    <line x1=\"" << fmt(seg.a.x) << "\" y1=\"" << fmt(seg.a.y)
        << "\" x2=\"" << fmt(rest_a.x) << "\" y2=\"" << fmt(rest_a.y)
        << "\">\n";
    append_animate(svg, "x2", kf, seg, true, false, period);
    append_animate(svg, "y2", kf, seg, false, false, period);
    svg << "    </line>\n";

    // Stub anchored at b: (x1,y1) is the moving tip.
    svg << "    <line x1=\"" << fmt(rest_b.x) << "\" y1=\"" << fmt(rest_b.y)
        << "\" x2=\"" << fmt(seg.b.x) << "\" y2=\"" << fmt(seg.b.y)
        << "\">\n";
    append_animate(svg, "x1", kf, seg, true, true, period);
    append_animate(svg, "y1", kf, seg, false, true, period);
    svg << "    </line>\n";
  }
  svg << "  </g>\n";

  svg << "  <g>\n";
  const std::set<int> highlight(style.highlight_nodes.begin(),
                                style.highlight_nodes.end());
  for (int i = 0; i < layout.graph.node_count; ++i) {
    const Point p = layout.positions[i];
    const bool hot = highlight.count(i) > 0;
    svg << "    <circle cx=\"" << fmt(p.x) << "\" cy=\"" << fmt(p.y)
        << "\" r=\"" << fmt(style.node_radius, 2) << "\" fill=\""
        << (hot ? style.highlight_color : style.node_color) << "\"/>\n";
  }
  svg << "  </g>\n";
  svg << "</svg>\n";
  return svg.str();
}

std::string export_animated_svg(const LayoutGraph& layout,
                                const Schedule& schedule,
                                const SvgStyle& style) {
  return render_svg(layout, flatten(schedule), RenderMode::Animated, style);
}

}  // namespace med
