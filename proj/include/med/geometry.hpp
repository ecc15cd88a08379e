#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "med/errors.hpp"

namespace med {

// Single epsilon governing all geometric degeneracy tests, in drawing
// units for distances and in parameter units for s/u values.
inline constexpr double kGeomEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }
inline Point operator-(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
inline Point operator*(double k, Point p) { return {k * p.x, k * p.y}; }
inline bool operator==(Point p, Point q) { return p.x == q.x && p.y == q.y; }

inline double dot(Point p, Point q) { return p.x * q.x + p.y * q.y; }
inline double cross(Point p, Point q) { return p.x * q.y - p.y * q.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point p, Point q) { return norm(q - p); }

// Straight-line segment, parameterized from a (s=0) to b (s=1).
struct Segment {
  Point a;
  Point b;

  double length() const { return distance(a, b); }
};

// s*b + (1-s)*a. Exact at the endpoints.
Point point_at(const Segment& e, double s);

// Closed parameter range along an edge, 0 <= lo <= hi <= 1.
struct ParamInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// One drawn piece of an edge together with the parameter range it covers.
struct StubPiece {
  Segment seg;
  ParamInterval range;
};

// The drawn portions of one edge: either the complete edge (one piece)
// or a pair of stubs anchored at the endpoints (two pieces).
struct StubSet {
  std::vector<StubPiece> pieces;
};

struct CrossingPoint {
  double u1 = 0.0;  // parameter along the first segment
  double u2 = 0.0;  // parameter along the second segment
  Point p;
};

// Proper interior intersection of two segments with parametric
// coordinates. Contacts at or within eps (parameter units) of an
// endpoint are not reported; edges sharing a node never count as
// crossing. Collinear overlapping segments throw CollinearOverlapError.
std::optional<CrossingPoint> segment_intersection(const Segment& s1,
                                                  const Segment& s2,
                                                  double eps = kGeomEps);

// Partial drawing of an edge: for alpha < beta the pieces covering
// [0,alpha] and [beta,1] remain, otherwise the complete edge.
StubSet gamma(const Segment& e, double alpha, double beta);

// Bounds of the open center range (delta, 1-delta) undrawn at rest.
ParamInterval blank_area(double delta);

}  // namespace med
