#include "decphs/complex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "decphs/error.hpp"

namespace decphs {

namespace {

std::string tuple_text(const Simplex& s) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ')';
  return os.str();
}

int permutation_parity(Simplex s) {
  int sign = 1;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] > s[j]) sign = -sign;
  return sign;
}

void subsets(const Simplex& s, std::size_t size, std::set<Simplex>& out) {
  Simplex cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == size) {
      out.insert(cur);
      return;
    }
    for (std::size_t i = start; i < s.size(); ++i) {
      cur.push_back(s[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

int sign_of(double x) { return x > 0 ? 1 : -1; }

}  // namespace

int SimplicialComplex::count(int k) const { return static_cast<int>(simplices(k).size()); }

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
  if (k < 0 || k > dim_) fail(ErrorKind::DegreeOutOfRange, "simplex dimension " + std::to_string(k));
  return simplices_[k];
}

const Simplex& SimplicialComplex::simplex(int k, int i) const {
  const auto& s = simplices(k);
  if (i < 0 || i >= static_cast<int>(s.size()))
    fail(ErrorKind::IndexOutOfRange, "simplex index " + std::to_string(i));
  return s[i];
}

int SimplicialComplex::orientation(int k, int i) const {
  simplex(k, i);
  return orientation_[k][i];
}

int SimplicialComplex::find(int k, const Simplex& sorted) const {
  if (k < 0 || k > dim_) return -1;
  auto it = index_[k].find(sorted);
  return it == index_[k].end() ? -1 : it->second;
}

const std::vector<std::pair<int, int>>& SimplicialComplex::faces(int k, int i) const {
  simplex(k, i);
  return faces_[k][i];
}

const std::vector<int>& SimplicialComplex::cofaces(int k, int i) const {
  simplex(k, i);
  return cofaces_[k][i];
}

const std::vector<int>& SimplicialComplex::boundary_simplices(int k) const {
  if (k < 0 || k >= dim_) fail(ErrorKind::DegreeOutOfRange, "boundary dimension " + std::to_string(k));
  return boundary_simplices_[k];
}

int SimplicialComplex::boundary_index(int k, int i) const {
  if (k < 0 || k >= dim_) return -1;
  simplex(k, i);
  return boundary_position_[k][i];
}

int SimplicialComplex::boundary_count(int k) const { return static_cast<int>(boundary_simplices(k).size()); }

std::vector<Point> SimplicialComplex::points(int k, int i) const {
  std::vector<Point> pts;
  for (int v : simplex(k, i)) pts.push_back(vertices_[v]);
  return pts;
}

std::vector<Simplex> SimplicialComplex::oriented_top_simplices() const {
  std::vector<Simplex> out = simplices_[dim_];
  for (std::size_t i = 0; i < out.size(); ++i)
    if (orientation_[dim_][i] < 0) std::swap(out[i][0], out[i][1]);
  return out;
}

double SimplicialComplex::total_volume() const {
  double v = 0.0;
  for (int i = 0; i < count(dim_); ++i) v += simplex_volume(points(dim_, i));
  return v;
}

SimplicialComplex build_complex(int dim, std::vector<Point> vertices, const std::vector<Simplex>& input) {
  if (dim < 1) fail(ErrorKind::DimensionMismatch, "complex dimension must be at least 1");
  const int nv = static_cast<int>(vertices.size());
  for (const auto& p : vertices)
    if (p.size() != dim) fail(ErrorKind::DimensionMismatch, "vertex coordinates must have length " + std::to_string(dim));

  SimplicialComplex K;
  K.dim_ = dim;
  K.vertices_ = std::move(vertices);
  K.simplices_.assign(dim + 1, {});
  K.orientation_.assign(dim + 1, {});
  K.index_.assign(dim + 1, {});

  std::vector<Simplex> lower;
  for (const auto& t : input) {
    if (t.empty() || static_cast<int>(t.size()) > dim + 1)
      fail(ErrorKind::DimensionMismatch, "simplex " + tuple_text(t) + " has wrong arity");
    for (int v : t)
      if (v < 0 || v >= nv) fail(ErrorKind::IndexOutOfRange, "vertex index " + std::to_string(v) + " in " + tuple_text(t));
    Simplex s = t;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(ErrorKind::DegenerateSimplex, "repeated vertex in " + tuple_text(t));
    if (static_cast<int>(t.size()) < dim + 1) {
      lower.push_back(s);
      continue;
    }
    if (K.index_[dim].count(s)) fail(ErrorKind::NonManifold, "duplicate simplex " + tuple_text(t));
    K.index_[dim][s] = static_cast<int>(K.simplices_[dim].size());
    K.simplices_[dim].push_back(s);
    K.orientation_[dim].push_back(permutation_parity(t));
    std::vector<Point> pts;
    for (int v : s) pts.push_back(K.vertices_[v]);
    if (!(simplex_volume(pts) > 1e-12 * std::pow(diameter(pts), dim)))
      fail(ErrorKind::DegenerateSimplex, "simplex " + tuple_text(t) + " has zero measure");
  }
  if (K.simplices_[dim].empty()) fail(ErrorKind::NonManifold, "no top-dimensional simplices");

  for (int k = dim - 1; k >= 0; --k) {
    std::set<Simplex> all;
    for (const auto& s : K.simplices_[dim]) subsets(s, k + 1, all);
    for (const auto& s : all) {
      K.index_[k][s] = static_cast<int>(K.simplices_[k].size());
      K.simplices_[k].push_back(s);
      K.orientation_[k].push_back(1);
    }
  }
  for (const auto& s : lower)
    if (!K.index_[s.size() - 1].count(s))
      fail(ErrorKind::NonManifold, "simplex " + tuple_text(s) + " is not a face of any top simplex");
  if (K.count(0) != nv) fail(ErrorKind::NonManifold, "vertex not used by any top simplex");

  K.faces_.assign(dim + 1, {});
  K.cofaces_.assign(dim + 1, {});
  for (int k = 0; k <= dim; ++k) {
    K.faces_[k].assign(K.count(k), {});
    K.cofaces_[k].assign(K.count(k), {});
  }
  for (int k = 1; k <= dim; ++k) {
    for (int i = 0; i < K.count(k); ++i) {
      const Simplex& s = K.simplices_[k][i];
      for (int j = 0; j <= k; ++j) {
        Simplex f = s;
        f.erase(f.begin() + j);
        const int fi = K.index_[k - 1].at(f);
        const int sign = K.orientation_[k][i] * ((j % 2) ? -1 : 1);
        K.faces_[k][i].emplace_back(fi, sign);
        K.cofaces_[k - 1][fi].push_back(i);
      }
    }
  }

  for (int f = 0; f < K.count(dim - 1); ++f) {
    const auto& co = K.cofaces_[dim - 1][f];
    if (co.size() > 2)
      fail(ErrorKind::NonManifold, "face " + tuple_text(K.simplices_[dim - 1][f]) + " shared by more than two simplices");
    std::vector<int> induced;
    for (int t : co)
      for (auto [fi, sg] : K.faces_[dim][t])
        if (fi == f) induced.push_back(sg);
    if (co.size() == 2 && induced[0] == induced[1])
      fail(ErrorKind::InconsistentOrientation,
           "simplices " + tuple_text(K.simplices_[dim][co[0]]) + " and " + tuple_text(K.simplices_[dim][co[1]]) +
               " induce the same orientation on their common face");
    if (co.size() == 1) {
      K.boundary_faces_.push_back(f);
      K.boundary_face_sign_.push_back(induced[0]);
    }
  }

  // Pinched vertices: the top simplices around a vertex must be connected
  // through (n-1)-faces that contain it.
  if (dim >= 2) {
    std::vector<std::vector<int>> star(nv);
    for (int t = 0; t < K.count(dim); ++t)
      for (int v : K.simplices_[dim][t]) star[v].push_back(t);
    for (int v = 0; v < nv; ++v) {
      std::set<int> seen{star[v].front()};
      std::vector<int> stack{star[v].front()};
      while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        for (auto [f, sg] : K.faces_[dim][t]) {
          const auto& fs = K.simplices_[dim - 1][f];
          if (!std::binary_search(fs.begin(), fs.end(), v)) continue;
          for (int u : K.cofaces_[dim - 1][f])
            if (seen.insert(u).second) stack.push_back(u);
        }
      }
      if (seen.size() != star[v].size())
        fail(ErrorKind::NonManifold, "vertex " + std::to_string(v) + " is a pinch point");
    }
  }

  K.boundary_simplices_.assign(dim, {});
  K.boundary_position_.assign(dim, {});
  for (int k = 0; k < dim; ++k) {
    std::set<int> on;
    for (int f : K.boundary_faces_) {
      std::set<Simplex> sub;
      subsets(K.simplices_[dim - 1][f], k + 1, sub);
      for (const auto& s : sub) on.insert(K.index_[k].at(s));
    }
    K.boundary_simplices_[k].assign(on.begin(), on.end());
    K.boundary_position_[k].assign(K.count(k), -1);
    for (std::size_t j = 0; j < K.boundary_simplices_[k].size(); ++j)
      K.boundary_position_[k][K.boundary_simplices_[k][j]] = static_cast<int>(j);
  }
  return K;
}

SimplicialComplex uniform_interval(double a, double b, int n_cells) {
  if (n_cells < 1) fail(ErrorKind::InvalidArgument, "uniform_interval needs at least one cell");
  if (!(b > a)) fail(ErrorKind::InvalidArgument, "uniform_interval needs a < b");
  std::vector<Point> v;
  std::vector<Simplex> e;
  for (int i = 0; i <= n_cells; ++i) v.push_back(Point::Constant(1, a + (b - a) * i / n_cells));
  for (int i = 0; i < n_cells; ++i) e.push_back({i, i + 1});
  return build_complex(1, std::move(v), e);
}

Point circumcenter(const Simplex& simplex, const std::vector<Point>& vertices) {
  std::vector<Point> pts;
  for (int v : simplex) {
    if (v < 0 || v >= static_cast<int>(vertices.size())) fail(ErrorKind::IndexOutOfRange, "vertex index " + std::to_string(v));
    pts.push_back(vertices[v]);
  }
  return circumsphere(pts).center;
}

WellCenteredReport is_well_centered(const SimplicialComplex& K) {
  WellCenteredReport r;
  for (int k = 1; k <= K.dim(); ++k)
    for (int i = 0; i < K.count(k); ++i)
      if (circumsphere(K.points(k, i)).barycentric.minCoeff() < 1e-10) r.offending.emplace_back(k, i);
  r.well_centered = r.offending.empty();
  return r;
}

namespace {

// Oriented tangent basis of a primal simplex.
std::vector<Point> primal_basis(const SimplicialComplex& K, int k, int i) {
  const auto pts = K.points(k, i);
  std::vector<Point> basis;
  for (int j = 1; j <= k; ++j) basis.push_back(pts[j] - pts[0]);
  if (k >= 1 && K.orientation(k, i) < 0) basis[0] = -basis[0];
  return basis;
}

// Unit normal of boundary face f pointing away from its top simplex.
Point outward_normal(const SimplicialComplex& K, int f) {
  const int n = K.dim();
  const int t = K.cofaces(n - 1, f).front();
  const auto& fs = K.simplex(n - 1, f);
  int opposite = -1;
  for (int v : K.simplex(n, t))
    if (!std::binary_search(fs.begin(), fs.end(), v)) opposite = v;
  const auto pts = K.points(n - 1, f);
  Point u = pts[0] - K.vertices()[opposite];
  if (n > 1) {
    Eigen::MatrixXd E(n, n - 1);
    for (int j = 1; j < n; ++j) E.col(j - 1) = pts[j] - pts[0];
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(E);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n - 1);
    u -= Q * (Q.transpose() * u);
  }
  return u.normalized();
}

}  // namespace

DualComplex build_dual(const SimplicialComplex& K, int ambient_orientation) {
  if (ambient_orientation != 1 && ambient_orientation != -1)
    fail(ErrorKind::InvalidArgument, "ambient orientation must be +1 or -1");
  const auto wc = is_well_centered(K);
  if (!wc.well_centered) {
    const auto [k, i] = wc.offending.front();
    fail(ErrorKind::NotWellCentered,
         std::to_string(wc.offending.size()) + " simplices contain no circumcenter, first " + tuple_text(K.simplex(k, i)));
  }
  const int n = K.dim();
  DualComplex D;
  D.dim_ = n;
  D.ambient_ = ambient_orientation;
  D.centers_.assign(n + 1, {});
  D.primal_volume_.assign(n + 1, {});
  for (int k = 0; k <= n; ++k) {
    D.primal_volume_[k].resize(K.count(k));
    for (int i = 0; i < K.count(k); ++i) {
      const auto pts = K.points(k, i);
      D.centers_[k].push_back(circumsphere(pts).center);
      D.primal_volume_[k](i) = simplex_volume(pts);
    }
  }

  auto piece_points = [&](const std::vector<int>& flag, int k0) {
    std::vector<Point> pts;
    for (std::size_t j = 0; j < flag.size(); ++j) pts.push_back(D.centers_[k0 + j][flag[j]]);
    return pts;
  };
  auto oriented_sign = [&](std::vector<Point> columns, const std::vector<Point>& pts) {
    for (std::size_t j = 1; j < pts.size(); ++j) columns.push_back(pts[j] - pts[0]);
    const double det = orientation_det(columns);
    double scale = 1.0;
    for (const auto& c : columns) scale *= c.norm();
    if (!(std::abs(det) > 1e-12 * scale)) fail(ErrorKind::DegenerateSimplex, "flat dual piece");
    return sign_of(det) * ambient_orientation;
  };

  // Flags sigma^k < ... < sigma^top reachable through cofaces; boundary
  // flags stay on boundary simplices and stop at dimension n-1.
  std::function<void(int, int, int, bool, std::vector<int>&, std::vector<std::vector<int>>&)> extend =
      [&](int k, int i, int top, bool on_boundary, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
        cur.push_back(i);
        if (k == top) {
          out.push_back(cur);
        } else {
          for (int c : K.cofaces(k, i))
            if (!on_boundary || K.boundary_index(k + 1, c) >= 0) extend(k + 1, c, top, on_boundary, cur, out);
        }
        cur.pop_back();
      };

  D.interior_.assign(n + 1, {});
  D.dual_volume_.assign(n + 1, {});
  std::vector<std::vector<std::map<std::vector<int>, int>>> piece_sign(n + 1);
  for (int k = 0; k <= n; ++k) {
    D.dual_volume_[k].resize(K.count(k));
    piece_sign[k].resize(K.count(k));
    for (int i = 0; i < K.count(k); ++i) {
      std::vector<std::vector<int>> flags;
      std::vector<int> cur;
      extend(k, i, n, false, cur, flags);
      DualCell cell;
      const auto basis = primal_basis(K, k, i);
      for (auto& fl : flags) {
        DualPiece p;
        const auto pts = piece_points(fl, k);
        p.volume = simplex_volume(pts);
        p.sign = oriented_sign(basis, pts);
        p.flag = std::move(fl);
        piece_sign[k][i][p.flag] = p.sign;
        cell.volume += p.volume;
        cell.pieces.push_back(std::move(p));
      }
      D.dual_volume_[k](i) = cell.volume;
      D.interior_[k].push_back(std::move(cell));
    }
  }

  D.boundary_.assign(n, {});
  D.boundary_volume_.assign(n, {});
  std::vector<Point> face_normal(K.count(n - 1));
  for (int f : K.boundary_faces()) face_normal[f] = outward_normal(K, f);
  std::vector<std::vector<std::map<std::vector<int>, int>>> boundary_sign(n);
  for (int k = 0; k < n; ++k) {
    const auto& bs = K.boundary_simplices(k);
    D.boundary_volume_[k].resize(static_cast<Eigen::Index>(bs.size()));
    boundary_sign[k].resize(bs.size());
    for (std::size_t j = 0; j < bs.size(); ++j) {
      std::vector<std::vector<int>> flags;
      std::vector<int> cur;
      extend(k, bs[j], n - 1, true, cur, flags);
      DualCell cell;
      const auto basis = primal_basis(K, k, bs[j]);
      for (auto& fl : flags) {
        DualPiece p;
        const auto pts = piece_points(fl, k);
        std::vector<Point> cols{face_normal[fl.back()]};
        cols.insert(cols.end(), basis.begin(), basis.end());
        p.volume = simplex_volume(pts);
        p.sign = oriented_sign(cols, pts);
        p.flag = std::move(fl);
        boundary_sign[k][j][p.flag] = p.sign;
        cell.volume += p.volume;
        cell.pieces.push_back(std::move(p));
      }
      D.boundary_volume_[k](static_cast<Eigen::Index>(j)) = cell.volume;
      D.boundary_.at(k).push_back(std::move(cell));
    }
  }

  D.support_volume_.assign(n + 1, {});
  for (int k = 0; k <= n; ++k) D.support_volume_[k] = Eigen::VectorXd::Zero(K.count(k));
  for (int t = 0; t < K.count(n); ++t) {
    std::vector<int> chain(n + 1);
    std::function<void(int, int)> down = [&](int k, int i) {
      chain[k] = i;
      if (k == 0) {
        const double vol = simplex_volume(piece_points(chain, 0));
        for (int j = 0; j <= n; ++j) D.support_volume_[j](chain[j]) += vol;
        return;
      }
      for (auto [f, sg] : K.faces(k, i)) down(k - 1, f);
    };
    down(n, t);
  }

  // Boundary of each dual piece: dropping the first center leaves a piece of
  // the next dual cell; dropping the last center of a flag through a boundary
  // face leaves a boundary dual piece. All other faces cancel in pairs.
  D.interior_incidence_.assign(n + 1, {});
  D.boundary_incidence_.assign(n + 1, {});
  for (int k = 1; k <= n; ++k) {
    std::map<std::pair<int, int>, int> inner, outer;
    auto record = [&](std::map<std::pair<int, int>, int>& m, int r, int c, int v) {
      auto [it, fresh] = m.emplace(std::make_pair(r, c), v);
      if (!fresh && it->second != v)
        fail(ErrorKind::InconsistentOrientation, "dual cell orientations disagree across pieces");
    };
    for (int a = 0; a < K.count(k - 1); ++a) {
      for (const auto& p : D.interior_[k - 1][a].pieces) {
        const std::vector<int> tail(p.flag.begin() + 1, p.flag.end());
        record(inner, a, p.flag[1], p.sign * piece_sign[k][p.flag[1]].at(tail));
        const int top_face = p.flag[p.flag.size() - 2];
        const int ba = K.boundary_index(k - 1, a);
        if (ba >= 0 && K.boundary_index(n - 1, top_face) >= 0) {
          const std::vector<int> head(p.flag.begin(), p.flag.end() - 1);
          const int m = n - (k - 1);
          record(outer, a, ba, ((m % 2) ? -1 : 1) * p.sign * boundary_sign[k - 1][ba].at(head));
        }
      }
    }
    auto to_sparse = [](const std::map<std::pair<int, int>, int>& m, int rows, int cols) {
      std::vector<Eigen::Triplet<int>> trip;
      for (const auto& [rc, v] : m) trip.emplace_back(rc.first, rc.second, v);
      Eigen::SparseMatrix<int> S(rows, cols);
      S.setFromTriplets(trip.begin(), trip.end());
      return S;
    };
    D.interior_incidence_[k] = to_sparse(inner, K.count(k - 1), K.count(k));
    D.boundary_incidence_[k] = to_sparse(outer, K.count(k - 1), K.boundary_count(k - 1));
  }
  return D;
}

}  // namespace decphs
