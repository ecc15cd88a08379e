#include "med/geometry.hpp"

#include <algorithm>
#include <string>

namespace med {

Point point_at(const Segment& e, double s) {
  if (s < 0.0 || s > 1.0) {
    throw ValidationError("point_at: parameter " + std::to_string(s) +
                          " outside [0,1]");
  }
  return s * e.b + (1.0 - s) * e.a;
}

namespace {

bool near_unit_boundary(double u, double eps) {
  return std::abs(u) <= eps || std::abs(u - 1.0) <= eps;
}

}  // namespace

std::optional<CrossingPoint> segment_intersection(const Segment& s1,
                                                  const Segment& s2,
                                                  double eps) {
  const Point r = s1.b - s1.a;
  const Point s = s2.b - s2.a;
  const Point qp = s2.a - s1.a;
  const double rlen = norm(r);
  const double slen = norm(s);
  const double denom = cross(r, s);

  if (std::abs(denom) <= eps * rlen * slen) {
    // Parallel. Distinguish collinear from merely parallel via the
    // perpendicular distance of s2's endpoints from s1's line.
    const double da = std::abs(cross(qp, r)) / rlen;
    const double db = std::abs(cross(s2.b - s1.a, r)) / rlen;
    if (da > eps || db > eps) return std::nullopt;

    // Collinear: project s2 onto s1's parameter axis and check overlap.
    const double inv = 1.0 / (rlen * rlen);
    double ta = dot(qp, r) * inv;
    double tb = dot(s2.b - s1.a, r) * inv;
    if (ta > tb) std::swap(ta, tb);
    const double teps = eps / rlen;
    if (tb <= teps || ta >= 1.0 - teps) return std::nullopt;  // endpoint chain
    throw CollinearOverlapError("collinear overlapping segments");
  }

  const double u1 = cross(qp, s) / denom;
  const double u2 = cross(qp, r) / denom;
  if (u1 < -eps || u1 > 1.0 + eps || u2 < -eps || u2 > 1.0 + eps) {
    return std::nullopt;
  }
  if (near_unit_boundary(u1, eps) || near_unit_boundary(u2, eps)) {
    return std::nullopt;  // endpoint contact, not a proper crossing
  }
  return CrossingPoint{u1, u2, point_at(s1, u1)};
}

StubSet gamma(const Segment& e, double alpha, double beta) {
  if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0) {
    throw ValidationError("gamma: partial edge parameters outside [0,1]");
  }
  StubSet out;
  if (alpha < beta) {
    out.pieces.push_back(
        {Segment{e.a, point_at(e, alpha)}, ParamInterval{0.0, alpha}});
    out.pieces.push_back(
        {Segment{point_at(e, beta), e.b}, ParamInterval{beta, 1.0}});
  } else {
    out.pieces.push_back({e, ParamInterval{0.0, 1.0}});
  }
  return out;
}

ParamInterval blank_area(double delta) {
  if (delta < 0.0 || delta > 0.5) {
    throw ValidationError("blank_area: delta outside [0, 1/2]");
  }
  return {delta, 1.0 - delta};
}

}  // namespace med
