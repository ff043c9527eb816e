#include "zorich/mesh.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "zorich/error.hpp"

namespace zorich {

namespace {

constexpr std::array<std::array<std::uint32_t, 3>, 12> kBoxFaces{{
    {0, 2, 3}, {0, 3, 1},  // z-
    {4, 5, 7}, {4, 7, 6},  // z+
    {0, 1, 5}, {0, 5, 4},  // y-
    {2, 7, 3}, {2, 6, 7},  // y+
    {0, 4, 6}, {0, 6, 2},  // x-
    {1, 3, 7}, {1, 7, 5},  // x+
}};

std::array<Point3, 8> box_corners(const Point3& lo, const Point3& hi) {
  std::array<Point3, 8> c;
  for (int k = 0; k < 8; ++k) {
    c[k] = {(k & 1) ? hi.x1 : lo.x1, (k & 2) ? hi.x2 : lo.x2, (k & 4) ? hi.x3 : lo.x3};
  }
  return c;
}

void put(std::ostream& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

using VertexSource = std::function<void(const std::function<void(const Point3&)>&)>;
using FaceSource = std::function<void(const std::function<void(const std::array<std::uint32_t, 3>&)>&)>;

void emit(std::ostream& out, MeshFormat format, std::uint64_t vertex_count, const VertexSource& vertices,
          std::uint64_t face_count, const FaceSource& faces, const std::vector<std::vector<std::uint32_t>>& lines) {
  std::uint64_t edge_count = 0;
  for (const auto& l : lines) edge_count += l.size() > 1 ? l.size() - 1 : 0;

  switch (format) {
    case MeshFormat::Obj: {
      vertices([&](const Point3& p) {
        out << "v ";
        put(out, p.x1);
        out << ' ';
        put(out, p.x2);
        out << ' ';
        put(out, p.x3);
        out << '\n';
      });
      faces([&](const auto& f) { out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n'; });
      for (const auto& l : lines) {
        out << 'l';
        for (std::uint32_t i : l) out << ' ' << i + 1;
        out << '\n';
      }
      break;
    }
    case MeshFormat::Ply: {
      out << "ply\nformat ascii 1.0\n"
          << "element vertex " << vertex_count << "\n"
          << "property double x\nproperty double y\nproperty double z\n"
          << "element face " << face_count << "\n"
          << "property list uchar uint vertex_indices\n"
          << "element edge " << edge_count << "\n"
          << "property uint vertex1\nproperty uint vertex2\n"
          << "end_header\n";
      vertices([&](const Point3& p) {
        put(out, p.x1);
        out << ' ';
        put(out, p.x2);
        out << ' ';
        put(out, p.x3);
        out << '\n';
      });
      faces([&](const auto& f) { out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n'; });
      for (const auto& l : lines) {
        for (std::size_t k = 1; k < l.size(); ++k) out << l[k - 1] << ' ' << l[k] << '\n';
      }
      break;
    }
    case MeshFormat::Csv: {
      out << "record,a,b,c\n";
      vertices([&](const Point3& p) {
        out << "v,";
        put(out, p.x1);
        out << ',';
        put(out, p.x2);
        out << ',';
        put(out, p.x3);
        out << '\n';
      });
      faces([&](const auto& f) { out << "f," << f[0] << ',' << f[1] << ',' << f[2] << '\n'; });
      for (const auto& l : lines) {
        for (std::size_t k = 1; k < l.size(); ++k) out << "l," << l[k - 1] << ',' << l[k] << ",\n";
      }
      break;
    }
    case MeshFormat::Json: {
      out << "{\"vertices\":[";
      bool first = true;
      vertices([&](const Point3& p) {
        out << (first ? "" : ",") << '[';
        put(out, p.x1);
        out << ',';
        put(out, p.x2);
        out << ',';
        put(out, p.x3);
        out << ']';
        first = false;
      });
      out << "],\"faces\":[";
      first = true;
      faces([&](const auto& f) {
        out << (first ? "" : ",") << '[' << f[0] << ',' << f[1] << ',' << f[2] << ']';
        first = false;
      });
      out << "],\"lines\":[";
      for (std::size_t k = 0; k < lines.size(); ++k) {
        out << (k ? "," : "") << '[';
        for (std::size_t i = 0; i < lines[k].size(); ++i) out << (i ? "," : "") << lines[k][i];
        out << ']';
      }
      out << "]}\n";
      break;
    }
  }
}

std::uint32_t parse_index(const std::string& token, std::size_t vertex_count, std::size_t line_no) {
  const std::string head = token.substr(0, token.find('/'));
  long long value = 0;
  const auto res = std::from_chars(head.data(), head.data() + head.size(), value);
  if (res.ec != std::errc() || res.ptr != head.data() + head.size() || value == 0) {
    throw DomainError("obj line " + std::to_string(line_no) + ": bad index '" + token + "'");
  }
  const long long resolved = value > 0 ? value - 1 : static_cast<long long>(vertex_count) + value;
  if (resolved < 0 || resolved >= static_cast<long long>(vertex_count)) {
    throw DomainError("obj line " + std::to_string(line_no) + ": index " + token + " out of range");
  }
  return static_cast<std::uint32_t>(resolved);
}

}  // namespace

MeshFormat parse_mesh_format(std::string_view name) {
  if (name == "obj") return MeshFormat::Obj;
  if (name == "ply") return MeshFormat::Ply;
  if (name == "csv") return MeshFormat::Csv;
  if (name == "json") return MeshFormat::Json;
  throw DomainError("unknown mesh format '" + std::string(name) + "' (expected obj, ply, csv or json)");
}

std::string to_string(MeshFormat format) {
  switch (format) {
    case MeshFormat::Obj: return "obj";
    case MeshFormat::Ply: return "ply";
    case MeshFormat::Csv: return "csv";
    case MeshFormat::Json: return "json";
  }
  return "obj";
}

void append_box(Mesh& mesh, const Point3& lo, const Point3& hi) {
  const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
  for (const Point3& c : box_corners(lo, hi)) mesh.vertices.push_back(c);
  for (const auto& f : kBoxFaces) mesh.faces.push_back({base + f[0], base + f[1], base + f[2]});
}

void append_polyline(Mesh& mesh, const Polyline& line) {
  std::vector<std::uint32_t> indices;
  for (const Point3& p : line) {
    indices.push_back(static_cast<std::uint32_t>(mesh.vertices.size()));
    mesh.vertices.push_back(p);
  }
  mesh.lines.push_back(std::move(indices));
}

void write_boxes(std::ostream& out, const BoxStream& boxes, const std::vector<Polyline>& polylines,
                 MeshFormat format) {
  std::uint64_t line_vertices = 0;
  for (const auto& l : polylines) line_vertices += l.size();
  const std::uint64_t box_vertices = 8 * boxes.count;
  if (box_vertices + line_vertices > 0xffffffffULL) throw DomainError("write_boxes: too many vertices");

  std::vector<std::vector<std::uint32_t>> lines;
  auto next = static_cast<std::uint32_t>(box_vertices);
  for (const auto& l : polylines) {
    std::vector<std::uint32_t> indices(l.size());
    for (auto& i : indices) i = next++;
    lines.push_back(std::move(indices));
  }

  const VertexSource vertices = [&](const std::function<void(const Point3&)>& sink) {
    std::uint64_t seen = 0;
    if (boxes.for_each) {
      boxes.for_each([&](const Point3& lo, const Point3& hi) {
        ++seen;
        for (const Point3& c : box_corners(lo, hi)) sink(c);
      });
    }
    if (seen != boxes.count) throw InternalError("write_boxes: box stream count mismatch");
    for (const auto& l : polylines) {
      for (const Point3& p : l) sink(p);
    }
  };
  const FaceSource faces = [&](const std::function<void(const std::array<std::uint32_t, 3>&)>& sink) {
    for (std::uint64_t b = 0; b < boxes.count; ++b) {
      const auto base = static_cast<std::uint32_t>(8 * b);
      for (const auto& f : kBoxFaces) sink({base + f[0], base + f[1], base + f[2]});
    }
  };
  emit(out, format, box_vertices + line_vertices, vertices, 12 * boxes.count, faces, lines);
}

void write_mesh(std::ostream& out, const Mesh& mesh, MeshFormat format) {
  for (const auto& f : mesh.faces) {
    for (std::uint32_t i : f) {
      if (i >= mesh.vertices.size()) throw DomainError("write_mesh: face index out of range");
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) throw DomainError("write_mesh: degenerate face");
  }
  for (const auto& l : mesh.lines) {
    for (std::uint32_t i : l) {
      if (i >= mesh.vertices.size()) throw DomainError("write_mesh: line index out of range");
    }
  }
  const VertexSource vertices = [&](const std::function<void(const Point3&)>& sink) {
    for (const Point3& p : mesh.vertices) sink(p);
  };
  const FaceSource faces = [&](const std::function<void(const std::array<std::uint32_t, 3>&)>& sink) {
    for (const auto& f : mesh.faces) sink(f);
  };
  emit(out, format, mesh.vertices.size(), vertices, mesh.faces.size(), faces, mesh.lines);
}

BoxStream soshs_boxes(const SoshsTree& tree) {
  BoxStream stream;
  stream.count = tree.leaf_count();
  stream.for_each = [tree](const std::function<void(const Point3&, const Point3&)>& sink) {
    tree.for_each_leaf([&](const CuboidNode& node) {
      const double x0 = boost::rational_cast<double>(node.base.x0);
      const double y0 = boost::rational_cast<double>(node.base.y0);
      const double x1 = boost::rational_cast<double>(node.base.x0 + node.base.side);
      const double y1 = boost::rational_cast<double>(node.base.y0 + node.base.side);
      sink({x0, y0, 0.0}, {x1, y1, boost::rational_cast<double>(node.height)});
    });
  };
  return stream;
}

BoxStream wild_boxes(const std::vector<WildLevel>& chain) {
  BoxStream stream;
  stream.count = chain.size();
  std::vector<std::pair<Point3, Point3>> corners;
  for (const auto& level : chain) {
    const ExactCuboid& b = level.box;
    corners.emplace_back(to_double({b.x0, b.y0, b.z0}), to_double({b.x0 + b.side, b.y0 + b.side, b.top()}));
  }
  stream.for_each = [corners](const std::function<void(const Point3&, const Point3&)>& sink) {
    for (const auto& [lo, hi] : corners) sink(lo, hi);
  };
  return stream;
}

std::vector<Polyline> wild_polylines(const std::vector<WildLevel>& chain) {
  std::vector<Polyline> out;
  for (const auto& level : chain) {
    Polyline line;
    for (const auto& p : level.arc) line.push_back(to_double(p));
    out.push_back(std::move(line));
  }
  return out;
}

Mesh read_obj(std::istream& in) {
  Mesh mesh;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Point3 p;
      if (!(fields >> p.x1 >> p.x2 >> p.x3)) {
        throw DomainError("obj line " + std::to_string(line_no) + ": bad vertex");
      }
      mesh.vertices.push_back(p);
    } else if (tag == "f" || tag == "l") {
      std::vector<std::uint32_t> indices;
      std::string token;
      while (fields >> token) indices.push_back(parse_index(token, mesh.vertices.size(), line_no));
      if (tag == "l") {
        if (indices.size() < 2) throw DomainError("obj line " + std::to_string(line_no) + ": short line");
        mesh.lines.push_back(std::move(indices));
      } else {
        if (indices.size() < 3) throw DomainError("obj line " + std::to_string(line_no) + ": short face");
        for (std::size_t k = 1; k + 1 < indices.size(); ++k) {
          mesh.faces.push_back({indices[0], indices[k], indices[k + 1]});
        }
      }
    }
  }
  return mesh;
}

ObjCounts parse_obj(std::istream& in) {
  const Mesh mesh = read_obj(in);
  return {mesh.vertices.size(), mesh.faces.size(), mesh.lines.size()};
}

}  // namespace zorich
