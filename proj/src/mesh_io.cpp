#include "rbd/mesh_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "rbd/error.hpp"

namespace rbd {

namespace {

// Whitespace tokens with '#' comments stripped (OFF bodies and headers).
std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

double parse_real(const std::string& tok, const char* what) {
  char* end = nullptr;
  const double value = std::strtod(tok.c_str(), &end);
  if (end == nullptr || *end != '\0')
    throw ParseError(std::string("expected a number for ") + what + ", got '" + tok + "'");
  return value;
}

long parse_int(const std::string& tok, const char* what) {
  char* end = nullptr;
  const long value = std::strtol(tok.c_str(), &end, 10);
  if (end == nullptr || *end != '\0')
    throw ParseError(std::string("expected an integer for ") + what + ", got '" + tok + "'");
  return value;
}

MeshWithSignal load_off(const std::filesystem::path& path) {
  std::ifstream in(path);
  auto tokens = tokenize(in);
  size_t pos = 0;
  auto next = [&](const char* what) -> const std::string& {
    if (pos >= tokens.size())
      throw ParseError(path.string() + ": unexpected end of file, expected " + what);
    return tokens[pos++];
  };

  if (next("OFF keyword") != "OFF") throw ParseError(path.string() + ": missing OFF header");
  const long nv = parse_int(next("vertex count"), "vertex count");
  const long nf = parse_int(next("face count"), "face count");
  next("edge count");  // ignored
  if (nv < 0 || nf < 0) throw ParseError(path.string() + ": negative element count");

  PointMat vertices(nv, 3);
  for (long v = 0; v < nv; ++v)
    for (int c = 0; c < 3; ++c) vertices(v, c) = parse_real(next("coordinate"), "coordinate");

  FaceMat faces(nf, 3);
  for (long f = 0; f < nf; ++f) {
    const long arity = parse_int(next("face arity"), "face arity");
    if (arity != 3)
      throw ParseError(path.string() + ": face " + std::to_string(f) + " is not a triangle");
    for (int c = 0; c < 3; ++c)
      faces(f, c) = static_cast<int>(parse_int(next("face index"), "face index"));
  }
  if (pos != tokens.size()) throw ParseError(path.string() + ": trailing content");

  return {TriMesh::create(std::move(vertices), std::move(faces)), MatX(nv, 0)};
}

MeshWithSignal load_ply(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line) || line.substr(0, 3) != "ply")
    throw ParseError(path.string() + ": missing ply header");

  long nv = -1, nf = -1;
  int channels = 0;
  std::vector<std::string> vertex_props;
  std::string current_element;
  bool ascii = false, header_done = false;

  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "comment" || key.empty()) continue;
    if (key == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = (fmt == "ascii");
      if (!ascii) throw ParseError(path.string() + ": only ascii PLY is supported");
    } else if (key == "element") {
      std::string name;
      long count = 0;
      ls >> name >> count;
      current_element = name;
      if (name == "vertex") nv = count;
      else if (name == "face") nf = count;
      else throw ParseError(path.string() + ": unsupported element '" + name + "'");
    } else if (key == "property") {
      std::string type, name;
      ls >> type;
      if (type == "list") {
        std::string count_type, value_type;
        ls >> count_type >> value_type >> name;
        if (current_element != "face")
          throw ParseError(path.string() + ": list property outside face element");
      } else {
        ls >> name;
        if (current_element == "vertex") vertex_props.push_back(name);
      }
    } else if (key == "end_header") {
      header_done = true;
      break;
    } else {
      throw ParseError(path.string() + ": unexpected header line '" + line + "'");
    }
  }
  if (!header_done || !ascii || nv < 0 || nf < 0)
    throw ParseError(path.string() + ": incomplete ply header");

  int ix = -1, iy = -1, iz = -1;
  std::vector<int> channel_cols;
  for (size_t p = 0; p < vertex_props.size(); ++p) {
    const std::string& name = vertex_props[p];
    if (name == "x") ix = static_cast<int>(p);
    else if (name == "y") iy = static_cast<int>(p);
    else if (name == "z") iz = static_cast<int>(p);
    else if (name.rfind("ch", 0) == 0) channel_cols.push_back(static_cast<int>(p));
  }
  if (ix < 0 || iy < 0 || iz < 0)
    throw ParseError(path.string() + ": vertex element lacks x/y/z properties");
  channels = static_cast<int>(channel_cols.size());

  auto tokens = tokenize(in);
  size_t pos = 0;
  auto next = [&](const char* what) -> const std::string& {
    if (pos >= tokens.size())
      throw ParseError(path.string() + ": unexpected end of file, expected " + what);
    return tokens[pos++];
  };

  PointMat vertices(nv, 3);
  MatX signal(nv, channels);
  std::vector<double> row(vertex_props.size());
  for (long v = 0; v < nv; ++v) {
    for (size_t p = 0; p < vertex_props.size(); ++p)
      row[p] = parse_real(next("vertex property"), "vertex property");
    vertices(v, 0) = row[ix];
    vertices(v, 1) = row[iy];
    vertices(v, 2) = row[iz];
    for (int c = 0; c < channels; ++c) signal(v, c) = row[channel_cols[c]];
  }

  FaceMat faces(nf, 3);
  for (long f = 0; f < nf; ++f) {
    const long arity = parse_int(next("face arity"), "face arity");
    if (arity != 3)
      throw ParseError(path.string() + ": face " + std::to_string(f) + " is not a triangle");
    for (int c = 0; c < 3; ++c)
      faces(f, c) = static_cast<int>(parse_int(next("face index"), "face index"));
  }

  return {TriMesh::create(std::move(vertices), std::move(faces)), std::move(signal)};
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

MeshWithSignal load_mesh_with_signal(const std::filesystem::path& path) {
  std::ifstream probe(path);
  if (!probe) throw ParseError(path.string() + ": cannot open file");
  std::string first;
  probe >> first;
  probe.close();
  if (first == "OFF") return load_off(path);
  if (first == "ply") return load_ply(path);
  throw ParseError(path.string() + ": unrecognized mesh format (expected OFF or ascii PLY)");
}

TriMesh load_mesh(const std::filesystem::path& path) {
  return load_mesh_with_signal(path).mesh;
}

void save_off(const std::filesystem::path& path, const TriMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << "OFF\n" << mesh.num_vertices() << " " << mesh.num_faces() << " 0\n";
  for (int v = 0; v < mesh.num_vertices(); ++v)
    out << format_double(mesh.vertices()(v, 0)) << " " << format_double(mesh.vertices()(v, 1))
        << " " << format_double(mesh.vertices()(v, 2)) << "\n";
  for (int f = 0; f < mesh.num_faces(); ++f)
    out << "3 " << mesh.faces()(f, 0) << " " << mesh.faces()(f, 1) << " " << mesh.faces()(f, 2)
        << "\n";
}

void save_ply(const std::filesystem::path& path, const TriMesh& mesh, const MatX* signal) {
  const int channels = signal ? static_cast<int>(signal->cols()) : 0;
  if (signal && signal->rows() != mesh.num_vertices())
    throw UsageError("signal row count does not match vertex count");

  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << mesh.num_vertices() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  for (int c = 0; c < channels; ++c) out << "property double ch" << c << "\n";
  out << "element face " << mesh.num_faces() << "\n";
  out << "property list uchar int vertex_indices\nend_header\n";
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    out << format_double(mesh.vertices()(v, 0)) << " " << format_double(mesh.vertices()(v, 1))
        << " " << format_double(mesh.vertices()(v, 2));
    for (int c = 0; c < channels; ++c) out << " " << format_double((*signal)(v, c));
    out << "\n";
  }
  for (int f = 0; f < mesh.num_faces(); ++f)
    out << "3 " << mesh.faces()(f, 0) << " " << mesh.faces()(f, 1) << " " << mesh.faces()(f, 2)
        << "\n";
}

MatX load_signal_csv(const std::filesystem::path& path, int expected_rows) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty signal CSV");
  std::vector<std::string> header;
  {
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) header.push_back(cell);
  }
  if (header.empty() || header[0] != "vertex")
    throw ParseError(path.string() + ": signal CSV must start with a 'vertex' column");
  const int channels = static_cast<int>(header.size()) - 1;
  for (int c = 0; c < channels; ++c)
    if (header[c + 1] != "ch" + std::to_string(c))
      throw ParseError(path.string() + ": expected column ch" + std::to_string(c) + ", got '" +
                       header[c + 1] + "'");

  MatX signal(expected_rows, channels);
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (row >= expected_rows)
      throw ParseError(path.string() + ": more signal rows than mesh vertices (" +
                       std::to_string(expected_rows) + ")");
    std::istringstream ls(line);
    std::string cell;
    if (!std::getline(ls, cell, ','))
      throw ParseError(path.string() + ": malformed row " + std::to_string(row));
    if (parse_int(cell, "vertex index") != row)
      throw ParseError(path.string() + ": vertex column must equal the row number at row " +
                       std::to_string(row));
    for (int c = 0; c < channels; ++c) {
      if (!std::getline(ls, cell, ','))
        throw ParseError(path.string() + ": row " + std::to_string(row) + " has too few columns");
      signal(row, c) = parse_real(cell, "signal value");
    }
    if (std::getline(ls, cell, ','))
      throw ParseError(path.string() + ": row " + std::to_string(row) + " has too many columns");
    ++row;
  }
  if (row != expected_rows)
    throw ParseError(path.string() + ": signal CSV has " + std::to_string(row) +
                     " rows, mesh has " + std::to_string(expected_rows) + " vertices");
  if (!signal.allFinite()) throw ParseError(path.string() + ": non-finite signal value");
  return signal;
}

void save_signal_csv(const std::filesystem::path& path, const MatX& signal) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << "vertex";
  for (int c = 0; c < signal.cols(); ++c) out << ",ch" << c;
  out << "\n";
  for (int v = 0; v < signal.rows(); ++v) {
    out << v;
    for (int c = 0; c < signal.cols(); ++c) out << "," << format_double(signal(v, c));
    out << "\n";
  }
}

}  // namespace rbd
