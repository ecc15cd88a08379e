#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "med/exporter.hpp"
#include "med/verifier.hpp"

using med::LayoutGraph;
using med::MorphParams;

namespace {

LayoutGraph make_layout(std::vector<med::Point> pts,
                        std::vector<std::pair<int, int>> edges) {
  med::Graph g;
  g.node_count = static_cast<int>(pts.size());
  g.edges = std::move(edges);
  return LayoutGraph::create(std::move(g), std::move(pts));
}

LayoutGraph worked_pair() {
  return make_layout({{0, 0}, {100, 0}, {40, -40}, {40, 60}},
                     {{0, 1}, {2, 3}});
}

MorphParams worked_params() {
  MorphParams p;
  p.delta = 0.25;
  p.eta = 0.5;
  p.speed = 50.0;
  p.min_travel_s = 0.0;
  return p;
}

double attr_value(const std::string& text, std::size_t from,
                  const std::string& attr) {
  const std::size_t at = text.find(attr + "=\"", from);
  REQUIRE(at != std::string::npos);
  return std::strtod(text.c_str() + at + attr.size() + 2, nullptr);
}

struct Line {
  double x1, y1, x2, y2;
  double length() const { return std::hypot(x2 - x1, y2 - y1); }
};

std::vector<Line> parse_lines(const std::string& svg) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while ((pos = svg.find("<line ", pos)) != std::string::npos) {
    lines.push_back({attr_value(svg, pos, "x1"), attr_value(svg, pos, "y1"),
                     attr_value(svg, pos, "x2"), attr_value(svg, pos, "y2")});
    pos += 6;
  }
  return lines;
}

std::vector<std::vector<double>> parse_key_times(const std::string& svg) {
  std::vector<std::vector<double>> all;
  std::size_t pos = 0;
  while ((pos = svg.find("keyTimes=\"", pos)) != std::string::npos) {
    pos += 10;
    const std::size_t end = svg.find('"', pos);
    std::vector<double> times;
    std::string chunk = svg.substr(pos, end - pos);
    for (char& ch : chunk) {
      if (ch == ';') ch = ' ';
    }
    const char* p = chunk.c_str();
    char* next = nullptr;
    for (double v = std::strtod(p, &next); p != next;
         v = std::strtod(p, &next)) {
      times.push_back(v);
      p = next;
    }
    all.push_back(times);
    pos = end;
  }
  return all;
}

}  // namespace

TEST_CASE("a singleton edge exports one track at rest start") {
  const auto layout = make_layout({{0, 0}, {100, 0}}, {{0, 1}});
  const auto schedule = med::build_schedule(layout, worked_params());
  const std::string json = med::export_timeline_json(layout, schedule);
  const auto tl = med::parse_timeline(json);
  REQUIRE(tl.tracks.size() == 1);
  CHECK(tl.tracks[0].edge == 0);
  CHECK(tl.tracks[0].t_s == 0.0);
  CHECK(tl.tracks[0].d1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tl.params.delta == 0.25);
  CHECK(tl.params.eta == 0.5);
  REQUIRE(tl.groups.size() == 1);
  CHECK(tl.groups[0] == std::vector<int>{0});
}

TEST_CASE("timeline JSON round-trips every field exactly") {
  const auto layout = worked_pair();
  const auto schedule = med::build_schedule(layout, worked_params());
  const auto original = med::flatten(schedule);
  const std::string json = med::export_timeline_json(layout, schedule);
  const auto parsed = med::parse_timeline(json);

  CHECK(parsed.period_s == original.period_s);
  CHECK(parsed.params.delta == original.params.delta);
  CHECK(parsed.params.eta == original.params.eta);
  CHECK(parsed.params.speed == original.params.speed);
  CHECK(parsed.params.min_travel_s == original.params.min_travel_s);
  REQUIRE(parsed.tracks.size() == original.tracks.size());
  for (std::size_t i = 0; i < parsed.tracks.size(); ++i) {
    CHECK(parsed.tracks[i].edge == original.tracks[i].edge);
    CHECK(parsed.tracks[i].length == original.tracks[i].length);
    CHECK(parsed.tracks[i].eff_speed == original.tracks[i].eff_speed);
    CHECK(parsed.tracks[i].t_s == original.tracks[i].t_s);
    CHECK(parsed.tracks[i].d1 == original.tracks[i].d1);
  }
  CHECK(parsed.groups == original.groups);
  // a second serialization is byte-identical
  CHECK(med::timeline_to_json(parsed) == json);
}

TEST_CASE("the worked-example start times appear in the timeline") {
  const auto layout = worked_pair();
  const auto schedule = med::build_schedule(layout, worked_params());
  const auto tl = med::parse_timeline(med::export_timeline_json(layout, schedule));
  REQUIRE(tl.tracks.size() == 2);
  CHECK(tl.tracks[0].t_s == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tl.tracks[1].t_s == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("evaluating the parsed timeline reproduces rho bit for bit") {
  const auto layout = worked_pair();
  const auto schedule = med::build_schedule(layout, worked_params());
  const auto original = med::flatten(schedule);
  const auto parsed =
      med::parse_timeline(med::export_timeline_json(layout, schedule));
  for (std::size_t i = 0; i < original.tracks.size(); ++i) {
    for (int k = 0; k <= 1000; ++k) {
      const double t = original.period_s * k / 1000.0;
      const double a = med::rho(original.tracks[i], original.params, t);
      const double b = med::rho(parsed.tracks[i], parsed.params, t);
      CHECK(a == b);
    }
  }
}

TEST_CASE("SVG keyframes land on {t_s, t_s+d1, t_s+2d1}/period") {
  const auto layout = worked_pair();
  const auto schedule = med::build_schedule(layout, worked_params());
  const auto tl = med::flatten(schedule);
  const std::string svg = med::export_animated_svg(layout, schedule);
  const auto key_times = parse_key_times(svg);
  REQUIRE(key_times.size() == 4 * tl.tracks.size());  // x and y per stub

  for (std::size_t e = 0; e < tl.tracks.size(); ++e) {
    const auto& m = tl.tracks[e];
    std::vector<double> expected = {0.0, m.t_s / tl.period_s,
                                    (m.t_s + m.d1) / tl.period_s,
                                    (m.t_s + 2.0 * m.d1) / tl.period_s, 1.0};
    // collapse duplicates the same way the exporter does
    std::vector<double> want;
    for (double f : expected) {
      if (want.empty() || f != want.back()) want.push_back(f);
    }
    for (int a = 0; a < 4; ++a) {
      const auto& got = key_times[4 * e + a];
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(std::abs(got[i] - want[i]) < 1e-6);
      }
    }
  }
}

TEST_CASE("SVG stub endpoints animate between rest and peak positions") {
  const auto layout = make_layout({{0, 0}, {100, 0}}, {{0, 1}});
  const auto schedule = med::build_schedule(layout, worked_params());
  const std::string svg = med::export_animated_svg(layout, schedule);
  // the a-side tip rests at x=25 and peaks at x=50 (eta = 1/2, meeting
  // the b-side stub at the midpoint)
  CHECK(svg.find("values=\"25.000000000000;50.000000000000;25.000000000000\"") !=
        std::string::npos);
  // the b-side tip mirrors it
  CHECK(svg.find("values=\"75.000000000000;50.000000000000;75.000000000000\"") !=
        std::string::npos);
  CHECK(svg.find("repeatCount=\"indefinite\"") != std::string::npos);
}

TEST_CASE("a degenerate morphing range renders as a static CED") {
  const auto layout = worked_pair();
  auto tl = med::flatten(med::build_schedule(layout, worked_params()));
  tl.params.eta = tl.params.delta;  // no morphing range left
  const std::string svg =
      med::render_svg(layout, tl, med::RenderMode::Animated);
  CHECK(svg.find("<animate") == std::string::npos);
  const auto lines = parse_lines(svg);
  REQUIRE(lines.size() == 2);  // one full line per edge
  CHECK(lines[0].length() == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("static PED stubs are exactly a quarter of each edge") {
  const auto g = med::generate_ba(20, 2, 5);
  const auto layout = med::fr_layout(g, 600, 400, 300, 5);
  const auto schedule = med::build_schedule(layout, worked_params());
  const std::string svg =
      med::render_svg(layout, med::flatten(schedule), med::RenderMode::StaticPed);
  const auto lines = parse_lines(svg);
  REQUIRE(lines.size() == 2 * layout.graph.edges.size());
  for (std::size_t e = 0; e < layout.graph.edges.size(); ++e) {
    const double quarter = layout.edge_lengths[e] / 4.0;
    CHECK(std::abs(lines[2 * e].length() - quarter) / quarter < 1e-7);
    CHECK(std::abs(lines[2 * e + 1].length() - quarter) / quarter < 1e-7);
  }
}

TEST_CASE("static CED draws every edge at full length") {
  const auto layout = worked_pair();
  const auto tl = med::flatten(med::build_schedule(layout, worked_params()));
  const std::string svg =
      med::render_svg(layout, tl, med::RenderMode::StaticCed);
  CHECK(svg.find("<animate") == std::string::npos);
  const auto lines = parse_lines(svg);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].length() == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(lines[1].length() == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("highlighted nodes take the highlight color") {
  const auto layout = worked_pair();
  const auto tl = med::flatten(med::build_schedule(layout, worked_params()));
  med::SvgStyle style;
  style.highlight_nodes = {1};
  const std::string svg =
      med::render_svg(layout, tl, med::RenderMode::StaticCed, style);
  CHECK(svg.find(style.highlight_color) != std::string::npos);
}

TEST_CASE("exports are byte-deterministic") {
  const auto g = med::generate_ba(30, 2, 8);
  const auto layout = med::fr_layout(g, 500, 500, 200, 8);
  MorphParams params = worked_params();
  params.speed = 120.0;
  const auto s1 = med::build_schedule(layout, params);
  const auto s2 = med::build_schedule(layout, params);
  CHECK(med::export_timeline_json(layout, s1) ==
        med::export_timeline_json(layout, s2));
  CHECK(med::export_animated_svg(layout, s1) ==
        med::export_animated_svg(layout, s2));
}

TEST_CASE("parse_timeline rejects malformed input") {
  CHECK_THROWS_AS(med::parse_timeline("{"), med::ParseError);
  CHECK_THROWS_AS(med::parse_timeline(R"({"period_s": 1})"), med::ParseError);
  CHECK_THROWS_AS(med::parse_timeline(R"({
    "period_s": 1,
    "params": {"delta":0.25,"eta":0.5,"speed":50,"min_travel_s":0},
    "tracks": [{"edge":0,"length":10,"eff_speed":50,"t_s":0,"d1":0.05},
               {"edge":0,"length":10,"eff_speed":50,"t_s":0,"d1":0.05}],
    "groups": []
  })"),
                  med::ParseError);
}
