#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zorich/geometry.hpp"
#include "zorich/surfaces.hpp"

namespace zorich {

using Polyline = std::vector<Point3>;

/// Triangle soup plus polylines. Indices are 0-based.
struct Mesh {
  std::vector<Point3> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
  std::vector<std::vector<std::uint32_t>> lines;
};

enum class MeshFormat { Obj, Ply, Csv, Json };

/// Throws DomainError for names other than obj, ply, csv, json.
MeshFormat parse_mesh_format(std::string_view name);
std::string to_string(MeshFormat format);

/// Appends the 8 corners of [lo, hi] (x fastest, then y, then z) and 12
/// outward-facing triangles.
void append_box(Mesh& mesh, const Point3& lo, const Point3& hi);
/// Appends the points and one line element through them.
void append_polyline(Mesh& mesh, const Polyline& line);

/// Boxes produced on demand, so large trees never sit in memory.
struct BoxStream {
  std::uint64_t count = 0;
  std::function<void(const std::function<void(const Point3& lo, const Point3& hi)>&)> for_each;
};

/// Writes the boxes (8 vertices, 12 triangles each) followed by the
/// polylines. Output is ASCII with LF line endings and shortest round-trip
/// number formatting.
///   obj: v / f / l records, 1-based
///   ply: vertex, face and edge elements (polylines split into edges)
///   csv: header "record,a,b,c"; rows v,x,y,z / f,i,j,k / l,i,j (0-based, lines as segments)
///   json: {"vertices": [[x,y,z],...], "faces": [[i,j,k],...], "lines": [[i,...],...]}
void write_boxes(std::ostream& out, const BoxStream& boxes, const std::vector<Polyline>& polylines,
                 MeshFormat format);
void write_mesh(std::ostream& out, const Mesh& mesh, MeshFormat format);

/// Leaves of the tree as boxes from z = 0 to their height.
BoxStream soshs_boxes(const SoshsTree& tree);
/// Cuboids and arcs of the knotted chain.
BoxStream wild_boxes(const std::vector<WildLevel>& chain);
std::vector<Polyline> wild_polylines(const std::vector<WildLevel>& chain);

struct ObjCounts {
  std::size_t vertices = 0;
  std::size_t faces = 0;
  std::size_t lines = 0;
};

/// Counts v / f / l records, rejecting out-of-range indices (DomainError).
ObjCounts parse_obj(std::istream& in);
Mesh read_obj(std::istream& in);

}  // namespace zorich
