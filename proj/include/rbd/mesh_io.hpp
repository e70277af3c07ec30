#pragma once

#include <filesystem>
#include <string>

#include "rbd/mesh.hpp"
#include "rbd/types.hpp"

namespace rbd {

/// Mesh plus optional per-vertex signal channels (V x m; m may be 0).
struct MeshWithSignal {
  TriMesh mesh;
  MatX signal;
};

/// Loads OFF or ASCII PLY, dispatched on the file header. PLY vertex
/// properties named ch0..ch{m-1} become signal channels. Throws ParseError /
/// TopologyError.
MeshWithSignal load_mesh_with_signal(const std::filesystem::path& path);

/// Same, discarding any channels.
TriMesh load_mesh(const std::filesystem::path& path);

void save_off(const std::filesystem::path& path, const TriMesh& mesh);
void save_ply(const std::filesystem::path& path, const TriMesh& mesh,
              const MatX* signal = nullptr);

/// Sidecar CSV: header `vertex,ch0,...,ch{m-1}`, one row per vertex. Row
/// count must match; otherwise ParseError.
MatX load_signal_csv(const std::filesystem::path& path, int expected_rows);
void save_signal_csv(const std::filesystem::path& path, const MatX& signal);

/// Shortest decimal that round-trips an IEEE double (17 significant digits).
std::string format_double(double value);

}  // namespace rbd
