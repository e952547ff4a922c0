#pragma once

#include <cstdint>
#include <vector>

namespace spectree {

using Vertex = std::int64_t;

/// Half-open range of vertex indices. Children and whole spheres are always
/// contiguous in the breadth-first layout, so a pair of indices suffices.
struct VertexRange {
  Vertex first = 0;
  Vertex last = 0;  // one past the end

  Vertex size() const { return last - first; }
  bool empty() const { return last <= first; }
  bool contains(Vertex v) const { return v >= first && v < last; }
};

inline constexpr Vertex kDefaultVertexCap = 10'000'000;

/// Truncated regular rooted k-ary tree, breadth-first indexed.
///
/// The children of v are k*v+1 .. k*v+k and the parent of v > 0 is (v-1)/k.
/// For k = 1 this is the path 0-1-2-...-R.
class TreeGraph {
 public:
  TreeGraph(int k, int depth, Vertex cap = kDefaultVertexCap);

  int k() const { return k_; }
  int depth() const { return depth_; }
  Vertex vertex_count() const { return sphere_offsets_.back(); }
  Vertex edge_count() const { return vertex_count() - 1; }

  /// First index of each sphere S_r, r = 0..R, followed by vertex_count.
  const std::vector<Vertex>& sphere_offsets() const { return sphere_offsets_; }
  VertexRange sphere(int r) const;
  Vertex sphere_size(int r) const { return sphere(r).size(); }

  int vertex_depth(Vertex v) const;
  Vertex parent(Vertex v) const;
  VertexRange children(Vertex v) const;

  /// Ancestor of v at depth n <= |v|.
  Vertex ancestor(Vertex v, int n) const;

  void check_vertex(Vertex v) const;

 private:
  int k_;
  int depth_;
  std::vector<Vertex> sphere_offsets_;
};

TreeGraph build_tree(int k, int depth, Vertex cap = kDefaultVertexCap);

/// Smallest R such that the geometric tail estimate drops below `tol`.
/// Requires delta/2 > 3 ln k so the tail actually decays.
int depth_for_tolerance(int k, double delta, double tol, int max_depth = 64);

}  // namespace spectree
