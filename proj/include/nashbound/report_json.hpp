#pragma once

// JSON renderings of the library's reports. Every real number is rounded to
// 12 significant digits so output is stable across runs and platforms.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

#include "nashbound/barta.hpp"
#include "nashbound/inequality.hpp"
#include "nashbound/operators.hpp"
#include "nashbound/spectral.hpp"

namespace nashbound::json {

using Json = nlohmann::ordered_json;

inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

inline Json vector(const Eigen::VectorXd& v) {
  Json arr = Json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(number(v[i]));
  return arr;
}

inline Json to_json(const SpectralResult& r) {
  return Json{{"tone", number(r.tone)},
              {"iterations", r.iterations},
              {"residual", number(r.residual)},
              {"method", to_string(r.method)}};
}

inline Json to_json(const CurvatureField& h, bool per_vertex) {
  Json out{{"sup_H_norm", number(h.sup_norm)}};
  if (per_vertex) {
    Json rows = Json::array();
    for (std::size_t k = 0; k < h.vertices.size(); ++k) {
      const auto ki = static_cast<Index>(k);
      rows.push_back({{"vertex", h.vertices[k]},
                      {"norm", number(h.norms[ki])},
                      {"vector", vector(h.vectors.row(ki).transpose())}});
    }
    out["per_vertex"] = std::move(rows);
  }
  return out;
}

inline Json to_json(const BartaReport& rep, const BallFrame& frame) {
  return Json{{"bound", number(rep.bound)},
              {"argmin_vertex", rep.argmin_vertex},
              {"analytic_floor", number(rep.analytic_floor)},
              {"delaunay_violations", rep.delaunay_violations},
              {"center", vector(frame.center())},
              {"radius", number(frame.radius())},
              {"vertices", rep.vertices},
              {"quotients", vector(rep.quotients)}};
}

inline Json to_json(const VerificationReport& rep) {
  const auto& s = rep.mesh_stats;
  return Json{{"n", rep.n},
              {"R", number(rep.R)},
              {"center", vector(rep.center)},
              {"sup_H_norm", number(rep.sup_H_norm)},
              {"tone", number(rep.tone)},
              {"rhs", number(rep.rhs)},
              {"margin", number(rep.margin)},
              {"holds", rep.holds},
              {"tolerance", number(rep.tolerance)},
              {"scalar_rhs", number(rep.scalar_rhs)},
              {"delaunay_violations", rep.delaunay_violations},
              {"mesh_stats",
               {{"vertex_count", s.vertex_count},
                {"face_count", s.face_count},
                {"interior_count", s.interior_count},
                {"boundary_count", s.boundary_count},
                {"min_edge_length", number(s.min_edge_length)},
                {"max_edge_length", number(s.max_edge_length)}}},
              {"paper_inequality", render_inequality(rep)}};
}

inline Json to_json(const HyperbolicRemark& r) {
  return Json{{"tone", number(r.tone)}, {"threshold", r.threshold}, {"obstructed", r.obstructed}};
}

}  // namespace nashbound::json
