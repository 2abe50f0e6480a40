#include "decphs/mesh_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "json.hpp"

#include "decphs/error.hpp"

namespace decphs {

namespace {

int line_of(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

}  // namespace

SimplicialComplex read_mesh(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, "line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  try {
    const int dim = j.at("dim").get<int>();
    std::vector<Point> verts;
    for (const auto& row : j.at("vertices")) {
      const auto c = row.get<std::vector<double>>();
      verts.push_back(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
    }
    const auto simplices = j.at("simplices").get<std::vector<Simplex>>();
    return build_complex(dim, std::move(verts), simplices);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("mesh schema: ") + e.what());
  }
}

SimplicialComplex read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path);
  return read_mesh(in);
}

void write_mesh(const SimplicialComplex& K, std::ostream& out) {
  nlohmann::json j;
  j["dim"] = K.dim();
  j["vertices"] = nlohmann::json::array();
  for (const auto& p : K.vertices()) j["vertices"].push_back(std::vector<double>(p.data(), p.data() + p.size()));
  j["simplices"] = K.oriented_top_simplices();
  out << j.dump(2) << '\n';
}

SimplicialComplex pentagon_mesh() {
  const double pi = std::acos(-1.0);
  std::vector<Point> v{Point::Zero(2)};
  for (int i = 0; i < 5; ++i) v.push_back(Eigen::Vector2d(std::cos(2 * pi * i / 5), std::sin(2 * pi * i / 5)));
  std::vector<Simplex> t;
  for (int i = 1; i <= 5; ++i) t.push_back({0, i, i % 5 + 1});
  return build_complex(2, std::move(v), t);
}

SimplicialComplex two_tet_mesh() {
  std::vector<Point> v{Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(1, -1, -1), Eigen::Vector3d(-1, 1, -1),
                       Eigen::Vector3d(-1, -1, 1), Eigen::Vector3d(5.0 / 3, 5.0 / 3, -5.0 / 3)};
  return build_complex(3, std::move(v), {{0, 2, 1, 3}, {0, 1, 2, 4}});
}

SimplicialComplex ring_mesh() {
  std::vector<Point> v{Point::Constant(1, 0.0), Point::Constant(1, 1.0), Point::Constant(1, 2.0)};
  return build_complex(1, std::move(v), {{0, 1}, {1, 2}, {2, 0}});
}

}  // namespace decphs
