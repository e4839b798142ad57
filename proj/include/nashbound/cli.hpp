#pragma once

// Command-line front end. Reports go to `out` as one JSON document; errors go
// to `err` as {"error", "detail"}. Exit codes: 0 success, 1 domain or
// validation error (including bad flags), 2 convergence failure, 3 malformed
// input file.

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nashbound/barta.hpp"
#include "nashbound/enclosing_ball.hpp"
#include "nashbound/errors.hpp"
#include "nashbound/generators.hpp"
#include "nashbound/inequality.hpp"
#include "nashbound/mesh.hpp"
#include "nashbound/noff.hpp"
#include "nashbound/operators.hpp"
#include "nashbound/report_json.hpp"
#include "nashbound/spectral.hpp"

namespace nashbound::cli {

enum ExitCode : int { ok = 0, domain_error = 1, convergence_error = 2, format_error = 3 };

namespace detail {

inline double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw DomainError("bad number for " + key + ": '" + text + "'");
  return v;
}

inline int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_real(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw DomainError("bad integer for " + key + ": '" + text + "'");
  return static_cast<int>(v);
}

/// Parses "kind=icosphere,level=3,radius=1" style generator descriptions.
inline GeneratorSpec parse_generator(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("generator field '" + item + "' is not key=value");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  const auto kind_it = kv.find("kind");
  if (kind_it == kv.end()) throw DomainError("generator spec needs kind=...");
  const std::string kind = kind_it->second;
  kv.erase(kind_it);

  auto take_real = [&](const char* key, double& dst) {
    if (auto it = kv.find(key); it != kv.end()) {
      dst = parse_real(key, it->second);
      kv.erase(it);
    }
  };
  auto take_int = [&](const char* key, int& dst) {
    if (auto it = kv.find(key); it != kv.end()) {
      dst = parse_int(key, it->second);
      kv.erase(it);
    }
  };

  GeneratorSpec spec;
  if (kind == "icosphere") {
    IcosphereSpec s;
    take_int("level", s.level);
    take_real("radius", s.radius);
    spec = s;
  } else if (kind == "flat_disk") {
    FlatDiskSpec s;
    take_int("rings", s.rings);
    take_real("radius", s.radius);
    spec = s;
  } else if (kind == "spherical_cap") {
    SphericalCapSpec s;
    take_int("rings", s.rings);
    take_real("radius", s.radius);
    take_real("angle", s.angle);
    spec = s;
  } else if (kind == "cylinder_patch") {
    CylinderPatchSpec s;
    take_int("segments", s.segments);
    take_real("radius", s.radius);
    take_real("height", s.height);
    spec = s;
  } else if (kind == "tractricoid_patch") {
    TractricoidPatchSpec s;
    take_int("segments", s.segments);
    take_real("u_min", s.u_min);
    take_real("u_max", s.u_max);
    spec = s;
  } else {
    throw DomainError("unknown generator kind '" + kind + "'");
  }
  if (!kv.empty()) throw DomainError("unknown generator field '" + kv.begin()->first + "' for " + kind);
  return spec;
}

inline Eigen::VectorXd parse_center(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(parse_real("--center", item));
  if (vals.empty()) throw DomainError("--center needs comma-separated coordinates");
  return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Index>(vals.size()));
}

struct MeshSource {
  std::string path;
  std::string inline_spec;

  ImmersedMesh load() const {
    if (!path.empty() && !inline_spec.empty()) throw DomainError("give either a mesh file or --generate, not both");
    if (!path.empty()) return noff::read_file(path);
    if (!inline_spec.empty()) return generate(parse_generator(inline_spec));
    throw DomainError("no input mesh: pass a file path or --generate kind=...");
  }
};

struct BallFlags {
  std::string center;
  std::optional<double> radius;
};

inline void add_mesh_source(CLI::App* sub, MeshSource& src) {
  sub->add_option("mesh", src.path, "Input mesh (nOFF or OFF)");
  sub->add_option("--generate", src.inline_spec, "Inline generator, e.g. kind=icosphere,level=3");
}

inline void add_solver_flags(CLI::App* sub, SolverOptions& opts) {
  sub->add_option("--max-iterations", opts.max_iterations, "Inverse-iteration limit")->capture_default_str();
  sub->add_option("--outer-tolerance", opts.outer_tolerance, "Rayleigh-quotient stagnation tolerance")
      ->capture_default_str();
  sub->add_option("--inner-tolerance", opts.inner_tolerance, "Conjugate-gradient relative tolerance")
      ->capture_default_str();
  sub->add_option("--residual-tolerance", opts.residual_tolerance, "Eigen-residual tolerance")
      ->capture_default_str();
}

inline void add_ball_flags(CLI::App* sub, BallFlags& ball) {
  sub->add_option("--center", ball.center, "Ball center, comma-separated coordinates");
  sub->add_option("--radius", ball.radius, "Ball radius");
}

inline void print(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump() << "\n"; }

inline void error_json(std::ostream& err, const char* kind, const std::string& detail) {
  err << nlohmann::ordered_json{{"error", kind}, {"detail", detail}}.dump() << "\n";
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete checks of the mean-curvature bound for immersions into Euclidean balls", "nashbound"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write an analytic test mesh as nOFF");
  std::string kind, out_path;
  int level = 3, rings = 8, segments = -1;
  std::optional<double> radius, angle, height, u_min, u_max;
  gen->add_option("--kind", kind, "icosphere | flat_disk | spherical_cap | cylinder_patch | tractricoid_patch")
      ->required();
  gen->add_option("--level", level, "Icosphere subdivision level");
  gen->add_option("--rings", rings, "Disk / cap ring count");
  gen->add_option("--segments", segments, "Cylinder / tractricoid segments per row");
  gen->add_option("--radius", radius, "Sphere, disk, cap or cylinder radius");
  gen->add_option("--angle", angle, "Cap polar angle (radians)");
  gen->add_option("--height", height, "Cylinder height");
  gen->add_option("--u-min", u_min, "Tractricoid lower parameter");
  gen->add_option("--u-max", u_max, "Tractricoid upper parameter");
  gen->add_option("--out", out_path, "Output path (default: standard output)");

  // tone
  auto* tone = app.add_subcommand("tone", "Fundamental tone of the Dirichlet problem");
  detail::MeshSource tone_src;
  SolverOptions tone_opts;
  bool tone_dense = false;
  std::string matrices_out;
  detail::add_mesh_source(tone, tone_src);
  detail::add_solver_flags(tone, tone_opts);
  tone->add_flag("--dense", tone_dense, "Use the dense eigensolver instead of inverse iteration");
  tone->add_option("--matrices-out", matrices_out, "Write PREFIX.stiffness.txt and PREFIX.mass.txt triples");

  // curvature
  auto* curv = app.add_subcommand("curvature", "Mean curvature vector field");
  detail::MeshSource curv_src;
  bool per_vertex = false;
  detail::add_mesh_source(curv, curv_src);
  curv->add_flag("--per-vertex", per_vertex, "Include every interior vertex");

  // barta
  auto* barta = app.add_subcommand("barta", "Barta lower bound from the test function (R^2 - rho^2)/2");
  detail::MeshSource barta_src;
  detail::BallFlags barta_ball;
  std::string quotients_out;
  detail::add_mesh_source(barta, barta_src);
  detail::add_ball_flags(barta, barta_ball);
  barta->add_option("--quotients-out", quotients_out, "Write one quotient per vertex (nan on the boundary)");

  // verify
  auto* ver = app.add_subcommand("verify", "Check sup|H| >= n/R - tone R/2");
  detail::MeshSource ver_src;
  detail::BallFlags ver_ball;
  std::optional<double> tolerance;
  SolverOptions ver_opts;
  detail::add_mesh_source(ver, ver_src);
  detail::add_ball_flags(ver, ver_ball);
  detail::add_solver_flags(ver, ver_opts);
  ver->add_option("--tolerance", tolerance, "Allowed negative margin (default 0.05 n/R)");

  // remark / nashdim
  auto* remark = app.add_subcommand("remark", "Minimal-immersion obstruction for hyperbolic space");
  int remark_n = 2;
  remark->add_option("--n", remark_n, "Dimension n >= 2")->required();
  auto* nashdim = app.add_subcommand("nashdim", "Nash embedding dimension n(n+1)(3n+11)/2");
  long long nash_n = 1;
  nashdim->add_option("--n", nash_n, "Dimension n >= 1")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    detail::error_json(err, "usage_error", e.what());
    return domain_error;
  }

  try {
    if (gen->parsed()) {
      std::string spec = "kind=" + kind;
      auto add = [&](const char* key, const std::string& v) { spec += std::string(",") + key + "=" + v; };
      auto add_real = [&](const char* key, const std::optional<double>& v) {
        if (v) {
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", *v);
          add(key, buf);
        }
      };
      if (kind == "icosphere") add("level", std::to_string(level));
      if (kind == "flat_disk" || kind == "spherical_cap") add("rings", std::to_string(rings));
      if (segments > 0) add("segments", std::to_string(segments));
      add_real("radius", radius);
      add_real("angle", angle);
      add_real("height", height);
      add_real("u_min", u_min);
      add_real("u_max", u_max);
      const auto mesh = generate(detail::parse_generator(spec));
      if (out_path.empty()) {
        noff::write(out, mesh);
      } else {
        noff::write_file(out_path, mesh);
        detail::print(out, {{"path", out_path},
                            {"vertex_count", mesh.vertex_count()},
                            {"face_count", mesh.face_count()}});
      }
    } else if (tone->parsed()) {
      const auto mesh = tone_src.load();
      const auto ops = assemble(mesh);
      const auto part = boundary_partition(mesh);
      if (!matrices_out.empty()) {
        std::ofstream ks(matrices_out + ".stiffness.txt"), ms(matrices_out + ".mass.txt");
        if (!ks || !ms) throw FormatError("cannot write matrices with prefix '" + matrices_out + "'");
        write_coordinate_triples(ks, ops.stiffness);
        SparseMatrix mass(ops.size(), ops.size());
        for (Index i = 0; i < ops.size(); ++i) mass.insert(i, i) = ops.mass[i];
        write_coordinate_triples(ms, mass);
      }
      const auto result = (tone_dense && !part.closed()) ? dense_ground_state(ops, part)
                                                         : fundamental_tone(ops, part, tone_opts);
      detail::print(out, json::to_json(result));
    } else if (curv->parsed()) {
      const auto mesh = curv_src.load();
      detail::print(out, json::to_json(mean_curvature(mesh, assemble(mesh)), per_vertex));
    } else if (barta->parsed()) {
      const auto mesh = barta_src.load();
      std::optional<Eigen::VectorXd> center;
      if (!barta_ball.center.empty()) center = detail::parse_center(barta_ball.center);
      require_valid(mesh);
      const auto frame = select_ball(mesh, center, barta_ball.radius);
      const auto ops = assemble(mesh);
      const auto part = boundary_partition(mesh);
      const auto rep = nash_barta_report(mesh, ops, part, frame);
      if (!quotients_out.empty()) {
        std::ofstream qs(quotients_out);
        if (!qs) throw FormatError("cannot write '" + quotients_out + "'");
        std::vector<double> column(static_cast<std::size_t>(mesh.vertex_count()), std::nan(""));
        for (std::size_t k = 0; k < rep.vertices.size(); ++k) {
          column[static_cast<std::size_t>(rep.vertices[k])] = rep.quotients[static_cast<Index>(k)];
        }
        char buf[40];
        for (double q : column) {
          std::snprintf(buf, sizeof buf, "%.17g\n", q);
          qs << buf;
        }
      }
      detail::print(out, json::to_json(rep, frame));
    } else if (ver->parsed()) {
      const auto mesh = ver_src.load();
      VerifyOptions vo;
      if (!ver_ball.center.empty()) vo.center = detail::parse_center(ver_ball.center);
      vo.radius = ver_ball.radius;
      vo.tolerance = tolerance;
      vo.solver = ver_opts;
      detail::print(out, json::to_json(verify(mesh, vo)));
    } else if (remark->parsed()) {
      detail::print(out, json::to_json(hyperbolic_remark(remark_n)));
    } else if (nashdim->parsed()) {
      out << nash_dimension(nash_n) << "\n";
    }
  } catch (const FormatError& e) {
    detail::error_json(err, "format_error", e.what());
    return format_error;
  } catch (const ConvergenceError& e) {
    detail::error_json(err, "convergence_error",
                       std::string(e.what()) + " (last residual " + std::to_string(e.last_residual()) + ")");
    return convergence_error;
  } catch (const ValidationError& e) {
    detail::error_json(err, "validation_error", e.what());
    return domain_error;
  } catch (const DomainError& e) {
    detail::error_json(err, "domain_error", e.what());
    return domain_error;
  }
  return ok;
}

}  // namespace nashbound::cli
