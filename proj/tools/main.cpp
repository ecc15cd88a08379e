#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "med/exporter.hpp"
#include "med/graphgen.hpp"
#include "med/scheduler.hpp"
#include "med/verifier.hpp"

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failed on " + path);
}

void error_line(const std::string& kind, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

nlohmann::ordered_json compute_stats(const med::LayoutGraph& layout,
                                     const med::Timeline& tl) {
  using nlohmann::ordered_json;
  const auto catalog = med::crossing_catalog(layout, tl.params);
  int schedulable = 0, inevitable = 0;
  std::vector<bool> has_crossing(layout.edge_count(), false);
  std::vector<bool> has_schedulable(layout.edge_count(), false);
  for (const auto& cr : catalog) {
    has_crossing[cr.e] = true;
    if (cr.schedulable) has_schedulable[cr.e] = true;
    if (cr.e < cr.c) (cr.schedulable ? schedulable : inevitable)++;
  }

  std::map<int, const med::EdgeMotion*> track_of;
  for (const auto& t : tl.tracks) track_of[t.edge] = &t;

  ordered_json groups = ordered_json::array();
  int singleton_edges = 0;
  for (const auto& grp : tl.groups) {
    double makespan = 0.0, sequential = 0.0;
    for (int e : grp) {
      const auto it = track_of.find(e);
      if (it == track_of.end()) {
        throw med::ValidationError("stats: group references edge " +
                                   std::to_string(e) + " without a track");
      }
      makespan = std::max(makespan, it->second->t_s + 2.0 * it->second->d1);
      sequential += 2.0 * it->second->d1;
    }
    if (grp.size() == 1) singleton_edges++;
    ordered_json g;
    g["edges"] = grp.size();
    g["makespan_s"] = makespan;
    g["sequential_baseline_s"] = sequential;
    g["ratio"] = sequential > 0.0 ? makespan / sequential : 1.0;
    groups.push_back(g);
  }

  int only_inevitable = 0;
  for (int e = 0; e < layout.edge_count(); ++e) {
    if (has_crossing[e] && !has_schedulable[e]) only_inevitable++;
  }

  ordered_json j;
  j["nodes"] = layout.graph.node_count;
  j["edges"] = layout.edge_count();
  j["crossing_pairs"] = {{"schedulable", schedulable},
                         {"inevitable", inevitable},
                         {"total", schedulable + inevitable}};
  j["group_count"] = tl.groups.size();
  j["groups"] = groups;
  j["period_s"] = tl.period_s;
  // Two candidate readings of "non-morphing edges"; neither is asserted.
  j["non_morphing_candidates"] = {
      {"singleton_group_edges", singleton_edges},
      {"edges_with_only_inevitable_crossings", only_inevitable}};
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "morphing edge drawings: stub geometry, crossing-free morphing "
      "schedules, JSON timelines and animated SVG"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI file");
  int exit_code = 0;

  // generate
  int gen_nodes = 50, gen_m = 3;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "generate a scale-free graph");
  gen->add_option("--nodes,-n", gen_nodes, "number of nodes")->capture_default_str();
  gen->add_option("--m", gen_m, "edges attached per new node")->capture_default_str();
  gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  gen->add_option("--out,-o", gen_out, "output graph JSON")->required();
  gen->callback([&] {
    write_file(gen_out, med::save_graph(med::generate_ba(gen_nodes, gen_m, gen_seed)));
  });

  // layout
  std::string lay_in, lay_out;
  double lay_w = 1000.0, lay_h = 800.0;
  int lay_iters = 500;
  std::uint64_t lay_seed = 1;
  auto* lay = app.add_subcommand("layout", "force-directed straight-line layout");
  lay->add_option("--in,-i", lay_in, "input graph JSON")->required();
  lay->add_option("--width", lay_w, "frame width")->capture_default_str();
  lay->add_option("--height", lay_h, "frame height")->capture_default_str();
  lay->add_option("--iterations", lay_iters, "relaxation iterations")->capture_default_str();
  lay->add_option("--seed", lay_seed, "random seed")->capture_default_str();
  lay->add_option("--out,-o", lay_out, "output layout JSON")->required();
  lay->callback([&] {
    const auto g = med::load_graph(read_file(lay_in));
    write_file(lay_out, med::save_layout(med::fr_layout(g, lay_w, lay_h, lay_iters, lay_seed)));
  });

  // schedule
  std::string sch_in, sch_out;
  double sch_delta = 0.25, sch_eta = 0.5;
  double sch_speed = 0.0;
  double sch_deg = 10.0, sch_dist = 40.0, sch_density = 37.8;
  double sch_min_travel_ms = 300.0;
  auto* sch = app.add_subcommand("schedule", "compute a crossing-free morphing schedule");
  sch->add_option("--in,-i", sch_in, "input layout JSON")->required();
  sch->add_option("--delta", sch_delta, "rest stub-edge ratio")->capture_default_str();
  sch->add_option("--eta", sch_eta, "peak stub-edge ratio")->capture_default_str();
  auto* speed_opt =
      sch->add_option("--speed", sch_speed, "tip speed in drawing units/s "
                                            "(overrides the angular triple)");
  sch->add_option("--deg-per-s", sch_deg, "tip speed as visual angle")->capture_default_str();
  sch->add_option("--view-dist-cm", sch_dist, "viewing distance")->capture_default_str();
  sch->add_option("--px-per-cm", sch_density, "screen density")->capture_default_str();
  sch->add_option("--min-travel-ms", sch_min_travel_ms, "minimum one-way travel time")->capture_default_str();
  sch->add_option("--out,-o", sch_out, "output timeline JSON")->required();
  sch->callback([&] {
    med::MorphParams params;
    params.delta = sch_delta;
    params.eta = sch_eta;
    params.speed = speed_opt->count() > 0
                       ? sch_speed
                       : med::visual_angle_speed(sch_deg, sch_dist, sch_density);
    params.min_travel_s = sch_min_travel_ms / 1000.0;
    const auto layout = med::load_layout(read_file(sch_in));
    write_file(sch_out, med::export_timeline_json(layout, med::build_schedule(layout, params)));
  });

  // render
  std::string ren_layout, ren_timeline, ren_out, ren_format = "svg-animated";
  std::vector<int> ren_highlight;
  auto* ren = app.add_subcommand("render", "render a timeline as SVG");
  ren->add_option("--layout", ren_layout, "layout JSON")->required();
  ren->add_option("--timeline", ren_timeline, "timeline JSON")->required();
  ren->add_option("--format", ren_format, "svg-animated | svg-static-ped | svg-static-ced")
      ->check(CLI::IsMember({"svg-animated", "svg-static-ped", "svg-static-ced"}))
      ->capture_default_str();
  ren->add_option("--highlight", ren_highlight, "node ids drawn in the highlight color");
  ren->add_option("--out,-o", ren_out, "output SVG")->required();
  ren->callback([&] {
    const auto layout = med::load_layout(read_file(ren_layout));
    const auto tl = med::parse_timeline(read_file(ren_timeline));
    med::RenderMode mode = med::RenderMode::Animated;
    if (ren_format == "svg-static-ped") mode = med::RenderMode::StaticPed;
    if (ren_format == "svg-static-ced") mode = med::RenderMode::StaticCed;
    med::SvgStyle style;
    style.highlight_nodes = ren_highlight;
    write_file(ren_out, med::render_svg(layout, tl, mode, style));
  });

  // verify
  std::string ver_layout, ver_timeline;
  double ver_dt_ms = 1.0;
  auto* ver = app.add_subcommand("verify", "certify that morphing causes no stub crossings");
  ver->add_option("--layout", ver_layout, "layout JSON")->required();
  ver->add_option("--timeline", ver_timeline, "timeline JSON")->required();
  ver->add_option("--dt-ms", ver_dt_ms, "sampling step in milliseconds")->capture_default_str();
  ver->callback([&] {
    const auto layout = med::load_layout(read_file(ver_layout));
    const auto tl = med::parse_timeline(read_file(ver_timeline));
    const auto report = med::verify_no_crossings(layout, tl, ver_dt_ms / 1000.0);
    std::cout << report.to_json();
    if (!report.ok) exit_code = 2;
  });

  // stats
  std::string st_layout, st_timeline;
  auto* st = app.add_subcommand("stats", "schedule statistics");
  st->add_option("--layout", st_layout, "layout JSON")->required();
  st->add_option("--timeline", st_timeline, "timeline JSON")->required();
  st->callback([&] {
    const auto layout = med::load_layout(read_file(st_layout));
    const auto tl = med::parse_timeline(read_file(st_timeline));
    std::cout << compute_stats(layout, tl).dump(2) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // help and friends
    error_line("validation", e.what());
    return 1;
  } catch (const med::ValidationError& e) {
    error_line("validation", e.what());
    return 1;
  } catch (const med::ParseError& e) {
    error_line("validation", e.what());
    return 1;
  } catch (const med::CollinearOverlapError& e) {
    error_line("validation", e.what());
    return 1;
  } catch (const IoError& e) {
    error_line("io", e.what());
    return 3;
  }
  return exit_code;
}
