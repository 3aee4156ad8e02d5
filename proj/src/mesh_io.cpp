#include "wg/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wg {

namespace {

using nlohmann::json;

EdgeTag parse_tag(const std::string& s) {
  if (s == "interior") return EdgeTag::Interior;
  if (s == "boundary") return EdgeTag::Boundary;
  if (s == "interface") return EdgeTag::Interface;
  throw FileFormatError("unknown edge tag '" + s + "'");
}

const char* tag_name(EdgeTag t) {
  switch (t) {
    case EdgeTag::Interior: return "interior";
    case EdgeTag::Boundary: return "boundary";
    case EdgeTag::Interface: return "interface";
  }
  return "interior";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CurvedPolygonMesh read_wgpm(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FileFormatError(std::string("WGPM parse error: ") + e.what());
  }
  try {
    if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
      throw FileFormatError("unsupported WGPM version (expected 1)");

    CurvedPolygonMesh mesh;
    for (const auto& v : doc.at("vertices"))
      mesh.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});

    for (const auto& je : doc.at("edges")) {
      const int v0 = je.at("v").at(0).get<int>();
      const int v1 = je.at("v").at(1).get<int>();
      if (v0 < 0 || v1 < 0 || v0 >= static_cast<int>(mesh.vertices.size()) ||
          v1 >= static_cast<int>(mesh.vertices.size()))
        throw FileFormatError("edge vertex index out of range");
      const std::string kind = je.at("kind").get<std::string>();
      const EdgeTag tag = parse_tag(je.value("tag", "interior"));
      const json params = je.value("params", json::object());
      if (kind == "segment") {
        mesh.edges.push_back(
            ParametricEdge::segment(v0, v1, mesh.vertices[v0], mesh.vertices[v1], tag));
      } else if (kind == "arc") {
        mesh.edges.push_back(ParametricEdge::arc(
            v0, v1, {params.at("center").at(0).get<double>(), params.at("center").at(1).get<double>()},
            params.at("radius").get<double>(), params.at("start_angle").get<double>(),
            params.at("end_angle").get<double>(), tag));
      } else if (kind == "poly") {
        mesh.edges.push_back(ParametricEdge::poly(v0, v1, params.at("x").get<std::vector<double>>(),
                                                  params.at("y").get<std::vector<double>>(), tag));
      } else {
        throw FileFormatError("unknown edge kind '" + kind + "'");
      }
    }

    for (const auto& jk : doc.at("elements")) {
      ElementRef el;
      el.loop = jk.at("loop").get<std::vector<int>>();
      el.dirs = jk.at("dirs").get<std::vector<int>>();
      el.region = jk.value("region", 0);
      if (el.loop.size() != el.dirs.size())
        throw FileFormatError("element loop/dirs length mismatch");
      for (int d : el.dirs)
        if (d != 1 && d != -1) throw FileFormatError("element dir flag must be +1 or -1");
      mesh.elements.push_back(std::move(el));
    }
    return mesh;
  } catch (const json::exception& e) {
    throw FileFormatError(std::string("WGPM field error: ") + e.what());
  }
}

CurvedPolygonMesh read_wgpm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileFormatError("cannot open mesh file '" + path + "'");
  return read_wgpm(in);
}

void write_wgpm(const CurvedPolygonMesh& mesh, std::ostream& out) {
  out << "{\n\"version\": 1,\n\"vertices\": [";
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    out << (i ? ",\n" : "\n") << "[" << fmt(mesh.vertices[i].x) << ", " << fmt(mesh.vertices[i].y) << "]";
  }
  out << "\n],\n\"edges\": [";
  for (size_t i = 0; i < mesh.edges.size(); ++i) {
    const ParametricEdge& e = mesh.edges[i];
    out << (i ? ",\n" : "\n") << "{\"v\": [" << e.v0 << ", " << e.v1 << "], ";
    switch (e.kind) {
      case EdgeKind::Segment:
        out << "\"kind\": \"segment\", \"params\": {}";
        break;
      case EdgeKind::Arc:
        out << "\"kind\": \"arc\", \"params\": {\"center\": [" << fmt(e.center.x) << ", "
            << fmt(e.center.y) << "], \"radius\": " << fmt(e.radius)
            << ", \"start_angle\": " << fmt(e.angle0) << ", \"end_angle\": " << fmt(e.angle1) << "}";
        break;
      case EdgeKind::Poly: {
        out << "\"kind\": \"poly\", \"params\": {\"x\": [";
        for (int c = 0; c <= e.degree; ++c) out << (c ? ", " : "") << fmt(e.cx[c]);
        out << "], \"y\": [";
        for (int c = 0; c <= e.degree; ++c) out << (c ? ", " : "") << fmt(e.cy[c]);
        out << "]}";
        break;
      }
    }
    out << ", \"tag\": \"" << tag_name(e.tag) << "\"}";
  }
  out << "\n],\n\"elements\": [";
  for (size_t i = 0; i < mesh.elements.size(); ++i) {
    const ElementRef& el = mesh.elements[i];
    out << (i ? ",\n" : "\n") << "{\"loop\": [";
    for (size_t j = 0; j < el.loop.size(); ++j) out << (j ? ", " : "") << el.loop[j];
    out << "], \"dirs\": [";
    for (size_t j = 0; j < el.dirs.size(); ++j) out << (j ? ", " : "") << el.dirs[j];
    out << "], \"region\": " << el.region << "}";
  }
  out << "\n]\n}\n";
}

void write_wgpm_file(const CurvedPolygonMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FileFormatError("cannot open '" + path + "' for writing");
  write_wgpm(mesh, out);
}

}  // namespace wg
