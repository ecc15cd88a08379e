#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "med/exporter.hpp"
#include "med/graphgen.hpp"
#include "med/scheduler.hpp"
#include "med/verifier.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Morphing edge drawings: partial-edge geometry, crossing-free "
            "morphing schedules, timeline and SVG export";

  py::register_exception<med::ValidationError>(m, "ValidationError",
                                               PyExc_ValueError);
  py::register_exception<med::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<med::CollinearOverlapError>(m, "CollinearOverlapError",
                                                     PyExc_ValueError);

  py::class_<med::Point>(m, "Point")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &med::Point::x)
      .def_readwrite("y", &med::Point::y)
      .def("__repr__", [](const med::Point& p) {
        return "Point(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<med::Segment>(m, "Segment")
      .def(py::init<med::Point, med::Point>(), py::arg("a"), py::arg("b"))
      .def_readwrite("a", &med::Segment::a)
      .def_readwrite("b", &med::Segment::b)
      .def("length", &med::Segment::length);

  py::class_<med::ParamInterval>(m, "ParamInterval")
      .def_readonly("lo", &med::ParamInterval::lo)
      .def_readonly("hi", &med::ParamInterval::hi);

  py::class_<med::StubPiece>(m, "StubPiece")
      .def_readonly("seg", &med::StubPiece::seg)
      .def_readonly("range", &med::StubPiece::range);

  py::class_<med::StubSet>(m, "StubSet")
      .def_readonly("pieces", &med::StubSet::pieces);

  m.def("point_at", &med::point_at, py::arg("e"), py::arg("s"));
  m.def("gamma", &med::gamma, py::arg("e"), py::arg("alpha"), py::arg("beta"));
  m.def("blank_area", &med::blank_area, py::arg("delta"));
  m.def(
      "segment_intersection",
      [](const med::Segment& s1, const med::Segment& s2)
          -> py::object {
        const auto hit = med::segment_intersection(s1, s2);
        if (!hit) return py::none();
        return py::make_tuple(hit->u1, hit->u2,
                              py::make_tuple(hit->p.x, hit->p.y));
      },
      py::arg("s1"), py::arg("s2"),
      "Proper interior intersection as (u1, u2, (x, y)) or None");

  py::class_<med::Graph>(m, "Graph")
      .def(py::init<>())
      .def_readwrite("node_count", &med::Graph::node_count)
      .def_readwrite("edges", &med::Graph::edges)
      .def("validate", &med::Graph::validate);

  py::class_<med::LayoutGraph>(m, "LayoutGraph")
      .def_static("create", &med::LayoutGraph::create, py::arg("graph"),
                  py::arg("positions"))
      .def_readonly("graph", &med::LayoutGraph::graph)
      .def_readonly("positions", &med::LayoutGraph::positions)
      .def_readonly("edge_lengths", &med::LayoutGraph::edge_lengths)
      .def("edge_count", &med::LayoutGraph::edge_count)
      .def("segment", &med::LayoutGraph::segment, py::arg("edge"));

  m.def("generate_ba", &med::generate_ba, py::arg("n"), py::arg("m"),
        py::arg("seed"));
  m.def("fr_layout", &med::fr_layout, py::arg("graph"), py::arg("width"),
        py::arg("height"), py::arg("iterations") = 500, py::arg("seed") = 1);
  m.def("load_layout", &med::load_layout, py::arg("text"));
  m.def("save_layout", &med::save_layout, py::arg("layout"));
  m.def("load_graph", &med::load_graph, py::arg("text"));
  m.def("save_graph", &med::save_graph, py::arg("graph"));

  py::class_<med::MorphParams>(m, "MorphParams")
      .def(py::init([](double delta, double eta, double speed,
                       double min_travel_s) {
             med::MorphParams p;
             p.delta = delta;
             p.eta = eta;
             p.speed = speed;
             p.min_travel_s = min_travel_s;
             return p;
           }),
           py::arg("delta") = 0.25, py::arg("eta") = 0.5,
           py::arg("speed") = 1.0, py::arg("min_travel_s") = 0.0)
      .def_readwrite("delta", &med::MorphParams::delta)
      .def_readwrite("eta", &med::MorphParams::eta)
      .def_readwrite("speed", &med::MorphParams::speed)
      .def_readwrite("min_travel_s", &med::MorphParams::min_travel_s)
      .def("validate", &med::MorphParams::validate);

  py::class_<med::EdgeMotion>(m, "EdgeMotion")
      .def_readonly("edge", &med::EdgeMotion::edge)
      .def_readonly("length", &med::EdgeMotion::length)
      .def_readonly("eff_speed", &med::EdgeMotion::eff_speed)
      .def_readonly("d1", &med::EdgeMotion::d1)
      .def_readonly("t_s", &med::EdgeMotion::t_s);

  py::class_<med::Crossing>(m, "Crossing")
      .def_readonly("e", &med::Crossing::e)
      .def_readonly("c", &med::Crossing::c)
      .def_readonly("u_e", &med::Crossing::u_e)
      .def_readonly("u_c", &med::Crossing::u_c)
      .def_readonly("schedulable", &med::Crossing::schedulable);

  py::class_<med::MorphingGroup>(m, "MorphingGroup")
      .def_readonly("edges", &med::MorphingGroup::edges)
      .def_readonly("crossings", &med::MorphingGroup::crossings)
      .def_readonly("neighbors", &med::MorphingGroup::neighbors);

  py::class_<med::ScheduledGroup>(m, "ScheduledGroup")
      .def_readonly("group", &med::ScheduledGroup::group)
      .def_readonly("motions", &med::ScheduledGroup::motions);

  py::class_<med::Schedule>(m, "Schedule")
      .def_readonly("groups", &med::Schedule::groups)
      .def_readonly("period", &med::Schedule::period)
      .def_readonly("params", &med::Schedule::params);

  py::class_<med::Timeline>(m, "Timeline")
      .def_readonly("period_s", &med::Timeline::period_s)
      .def_readonly("params", &med::Timeline::params)
      .def_readonly("tracks", &med::Timeline::tracks)
      .def_readonly("groups", &med::Timeline::groups);

  m.def("rho", &med::rho, py::arg("motion"), py::arg("params"), py::arg("t"));
  m.def("drawn_at", &med::drawn_at, py::arg("seg"), py::arg("motion"),
        py::arg("params"), py::arg("t"),
        "Drawn stub set of an edge at time t: gamma(seg, rho(t), 1-rho(t))");
  m.def("effective_speed", &med::effective_speed, py::arg("length"),
        py::arg("params"));
  m.def("visual_angle_speed", &med::visual_angle_speed, py::arg("deg_per_s"),
        py::arg("view_dist_cm"), py::arg("px_per_cm"));
  m.def(
      "t_pass",
      [](const med::EdgeMotion& motion, const med::MorphParams& params,
         double u_e) { return med::t_pass(motion, params, u_e); },
      py::arg("motion"), py::arg("params"), py::arg("u_e"));
  m.def(
      "t_return",
      [](const med::EdgeMotion& motion, const med::MorphParams& params,
         double u_e) { return med::t_return(motion, params, u_e); },
      py::arg("motion"), py::arg("params"), py::arg("u_e"));
  m.def("crossing_catalog", &med::crossing_catalog, py::arg("layout"),
        py::arg("params"));
  m.def("morphing_groups", &med::morphing_groups, py::arg("layout"),
        py::arg("catalog"));
  m.def(
      "earliest_space",
      [](const std::vector<std::pair<double, double>>& intervals) {
        std::vector<med::ForbiddenInterval> ivs;
        ivs.reserve(intervals.size());
        for (const auto& [r1, r2] : intervals) ivs.push_back({r1, r2});
        return med::earliest_space(std::move(ivs));
      },
      py::arg("intervals"),
      "Smallest t >= 0 outside the union of half-open [r1, r2) intervals");
  m.def("find_start_times", &med::find_start_times, py::arg("group"),
        py::arg("layout"), py::arg("params"));
  m.def("build_schedule", &med::build_schedule, py::arg("layout"),
        py::arg("params"));
  m.def("flatten", &med::flatten, py::arg("schedule"));

  py::class_<med::Violation>(m, "Violation")
      .def_readonly("t", &med::Violation::t)
      .def_readonly("e", &med::Violation::e)
      .def_readonly("c", &med::Violation::c);

  py::class_<med::VerifyReport>(m, "VerifyReport")
      .def_readonly("ok", &med::VerifyReport::ok)
      .def_readonly("violations", &med::VerifyReport::violations)
      .def_readonly("schedulable_pairs", &med::VerifyReport::schedulable_pairs)
      .def_readonly("inevitable_pairs", &med::VerifyReport::inevitable_pairs)
      .def_readonly("samples", &med::VerifyReport::samples)
      .def("to_json", &med::VerifyReport::to_json);

  m.def(
      "verify_no_crossings",
      [](const med::LayoutGraph& layout, const med::Schedule& schedule,
         double dt) { return med::verify_no_crossings(layout, schedule, dt); },
      py::arg("layout"), py::arg("schedule"), py::arg("dt") = 1e-3);
  m.def(
      "verify_timeline",
      [](const med::LayoutGraph& layout, const med::Timeline& timeline,
         double dt) { return med::verify_no_crossings(layout, timeline, dt); },
      py::arg("layout"), py::arg("timeline"), py::arg("dt") = 1e-3);

  py::enum_<med::RenderMode>(m, "RenderMode")
      .value("ANIMATED", med::RenderMode::Animated)
      .value("STATIC_PED", med::RenderMode::StaticPed)
      .value("STATIC_CED", med::RenderMode::StaticCed);

  py::class_<med::SvgStyle>(m, "SvgStyle")
      .def(py::init<>())
      .def_readwrite("stub_width", &med::SvgStyle::stub_width)
      .def_readwrite("node_radius", &med::SvgStyle::node_radius)
      .def_readwrite("margin", &med::SvgStyle::margin)
      .def_readwrite("stub_color", &med::SvgStyle::stub_color)
      .def_readwrite("node_color", &med::SvgStyle::node_color)
      .def_readwrite("background", &med::SvgStyle::background)
      .def_readwrite("highlight_color", &med::SvgStyle::highlight_color)
      .def_readwrite("highlight_nodes", &med::SvgStyle::highlight_nodes);

  m.def("timeline_to_json", &med::timeline_to_json, py::arg("timeline"));
  m.def("parse_timeline", &med::parse_timeline, py::arg("text"));
  m.def("export_timeline_json", &med::export_timeline_json, py::arg("layout"),
        py::arg("schedule"));
  m.def("render_svg", &med::render_svg, py::arg("layout"), py::arg("timeline"),
        py::arg("mode"), py::arg("style") = med::SvgStyle{});
  m.def("export_animated_svg", &med::export_animated_svg, py::arg("layout"),
        py::arg("schedule"), py::arg("style") = med::SvgStyle{});
}
