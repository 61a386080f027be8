#pragma once

// Incremental 2D Delaunay triangulation (Bowyer-Watson). Near-cocircular
// quadruples are resolved by a strict in-circle rule; either diagonal is then
// Delaunay-valid and downstream consumers filter zero-length dual edges.

#include <array>
#include <vector>

#include "msh/common.hpp"

namespace msh {

struct Triangle {
  std::array<int, 3> v;      // vertex indices; negatives are super-triangle vertices
  std::array<int, 3> adj;    // adjacent triangle opposite v[i], -1 on hull
  bool alive = true;
};

class Delaunay2D {
 public:
  // Triangulates the given points. Throws if fewer than 3 points or all
  // collinear.
  explicit Delaunay2D(const std::vector<Vec>& points);

  // Undirected Delaunay edges (i < j), super-triangle edges excluded.
  std::vector<std::pair<int, int>> edges() const;

  // Circumcenter distance of the two triangles flanking edge (a,b); an edge on
  // the convex hull reports +infinity (its Voronoi dual is a ray). Returns
  // -1 if (a,b) is not a Delaunay edge.
  double dual_edge_length(int a, int b) const;

  const std::vector<Triangle>& triangles() const { return tris_; }
  const std::vector<Vec>& points() const { return pts_; }

 private:
  int locate(const Vec& p, int hint) const;
  bool in_circumcircle(const Triangle& t, const Vec& p) const;
  Vec vertex(int id) const;
  void insert(int pi);

  std::vector<Vec> pts_;
  std::array<Vec, 3> super_;
  std::vector<Triangle> tris_;
  int last_alive_ = 0;
};

// Circumcenter of three points (caller ensures non-collinearity).
Vec circumcenter(const Vec& a, const Vec& b, const Vec& c);

}  // namespace msh
