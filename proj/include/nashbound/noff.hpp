#pragma once

// nOFF mesh files: "nOFF", the ambient dimension, "V F E" counts, V
// coordinate rows, F face rows "3 i j k". Plain "OFF" implies dimension 3.
// '#' starts a comment that runs to end of line.

#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nashbound/errors.hpp"
#include "nashbound/mesh.hpp"

namespace nashbound::noff {

namespace detail {

class TokenReader {
 public:
  explicit TokenReader(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens_.push_back(tok);
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  const std::string& next(const char* what) {
    if (done()) throw FormatError(std::string("unexpected end of file reading ") + what);
    return tokens_[pos_++];
  }

  long long integer(const char* what) {
    const auto& tok = next(what);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw FormatError(std::string("expected integer for ") + what + ", got '" + tok + "'");
    return v;
  }

  double real(const char* what) {
    const auto& tok = next(what);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw FormatError(std::string("expected number for ") + what + ", got '" + tok + "'");
    return v;
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses nOFF or OFF. Throws FormatError on malformed input; the mesh is
/// returned unvalidated.
inline ImmersedMesh read(std::istream& in) {
  detail::TokenReader tr(in);
  const std::string header = tr.next("header");
  long long dim = 3;
  if (header == "nOFF") {
    dim = tr.integer("ambient dimension");
  } else if (header != "OFF") {
    throw FormatError("unknown header '" + header + "', expected nOFF or OFF");
  }
  if (dim < 1 || dim > 1'000'000) throw FormatError("ambient dimension out of range");

  const long long nv = tr.integer("vertex count");
  const long long nf = tr.integer("face count");
  tr.integer("edge count");
  if (nv < 0 || nf < 0) throw FormatError("negative element count");

  Eigen::MatrixXd pos(nv, dim);
  for (long long v = 0; v < nv; ++v) {
    for (long long c = 0; c < dim; ++c) pos(v, c) = tr.real("vertex coordinate");
  }
  std::vector<Triangle> tris;
  tris.reserve(static_cast<std::size_t>(nf));
  for (long long f = 0; f < nf; ++f) {
    const long long arity = tr.integer("face arity");
    if (arity != 3) throw FormatError("face " + std::to_string(f) + " is not a triangle");
    Triangle t{};
    for (auto& i : t) i = static_cast<Index>(tr.integer("face index"));
    tris.push_back(t);
  }
  if (!tr.done()) throw FormatError("trailing data after last face");
  return ImmersedMesh(std::move(pos), std::move(tris));
}

inline ImmersedMesh read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read(in);
}

/// Writes nOFF with round-trip precision (17 significant digits).
inline void write(std::ostream& out, const ImmersedMesh& mesh) {
  out << "nOFF\n" << mesh.ambient_dim() << "\n";
  out << mesh.vertex_count() << " " << mesh.face_count() << " 0\n";
  char buf[40];
  for (Index v = 0; v < mesh.vertex_count(); ++v) {
    for (Index c = 0; c < mesh.ambient_dim(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", mesh.positions()(v, c));
      out << (c ? " " : "") << buf;
    }
    out << "\n";
  }
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
}

inline void write_file(const std::string& path, const ImmersedMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  write(out, mesh);
  if (!out) throw FormatError("write to '" + path + "' failed");
}

}  // namespace nashbound::noff
