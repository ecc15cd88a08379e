#pragma once

#include <string>
#include <vector>

#include "med/scheduler.hpp"

namespace med {

enum class RenderMode {
  Animated,   // SMIL-animated morphing edge drawing
  StaticPed,  // rest state: delta-SHPED stubs
  StaticCed,  // complete straight-line drawing
};

struct SvgStyle {
  double stub_width = 1.5;
  double node_radius = 3.5;
  double margin = 12.0;
  std::string stub_color = "#1f1f1f";
  std::string node_color = "#202020";
  std::string background = "#ffffff";
  std::string highlight_color = "#ff8c00";
  std::vector<int> highlight_nodes;
};

// Timeline JSON:
//   {"period_s": P,
//    "params": {"delta":..., "eta":..., "speed":..., "min_travel_s":...},
//    "tracks": [{"edge":id, "length":l, "eff_speed":s, "t_s":..., "d1":...}],
//    "groups": [[edge-ids], ...]}
// Numbers round-trip exactly, so evaluating the parsed timeline
// reproduces the scheduler's ratio function bit for bit.
std::string timeline_to_json(const Timeline& timeline);
Timeline parse_timeline(const std::string& text);

std::string export_timeline_json(const LayoutGraph& layout,
                                 const Schedule& schedule);

// Standalone SVG document. Every edge is drawn as a pair of stub lines
// whose tips animate linearly through keyframes at t_s, t_s+d1 and
// t_s+2d1 inside the shared repetition period; node disks are painted
// on top. With delta >= eta (no morphing range) the output degenerates
// to a static complete drawing.
std::string render_svg(const LayoutGraph& layout, const Timeline& timeline,
                       RenderMode mode, const SvgStyle& style = {});

std::string export_animated_svg(const LayoutGraph& layout,
                                const Schedule& schedule,
                                const SvgStyle& style = {});

}  // namespace med
