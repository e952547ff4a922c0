#include "spectree/tree.hpp"

#include <algorithm>
#include <string>

#include "spectree/error.hpp"
#include "spectree/resolvent.hpp"

namespace spectree {

TreeGraph::TreeGraph(int k, int depth, Vertex cap) : k_(k), depth_(depth) {
  if (k < 1) throw Error(ErrorCode::InvalidParameter, "branching factor k must be >= 1");
  if (depth < 0) throw Error(ErrorCode::InvalidParameter, "depth must be >= 0");
  sphere_offsets_.reserve(static_cast<std::size_t>(depth) + 2);
  Vertex offset = 0;
  Vertex width = 1;
  for (int r = 0; r <= depth; ++r) {
    sphere_offsets_.push_back(offset);
    offset += width;
    if (offset > cap)
      throw Error(ErrorCode::CapacityExceeded,
                  "tree with k=" + std::to_string(k) + ", depth=" + std::to_string(depth) +
                      " exceeds the vertex cap " + std::to_string(cap));
    width *= k;
  }
  sphere_offsets_.push_back(offset);
}

VertexRange TreeGraph::sphere(int r) const {
  if (r < 0 || r > depth_)
    throw Error(ErrorCode::IndexOutOfRange, "sphere radius " + std::to_string(r) + " outside 0.." +
                                                std::to_string(depth_));
  return {sphere_offsets_[r], sphere_offsets_[r + 1]};
}

void TreeGraph::check_vertex(Vertex v) const {
  if (v < 0 || v >= vertex_count())
    throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v) + " outside 0.." +
                                                std::to_string(vertex_count() - 1));
}

int TreeGraph::vertex_depth(Vertex v) const {
  check_vertex(v);
  auto it = std::upper_bound(sphere_offsets_.begin(), sphere_offsets_.end(), v);
  return static_cast<int>(it - sphere_offsets_.begin()) - 1;
}

Vertex TreeGraph::parent(Vertex v) const {
  check_vertex(v);
  if (v == 0) throw Error(ErrorCode::RootHasNoParent, "the root has no parent");
  return (v - 1) / k_;
}

VertexRange TreeGraph::children(Vertex v) const {
  if (vertex_depth(v) == depth_) return {0, 0};
  Vertex first = static_cast<Vertex>(k_) * v + 1;
  return {first, first + k_};
}

Vertex TreeGraph::ancestor(Vertex v, int n) const {
  int d = vertex_depth(v);
  if (n < 0 || n > d)
    throw Error(ErrorCode::IndexOutOfRange, "ancestor depth above the vertex");
  for (; d > n; --d) v = (v - 1) / k_;
  return v;
}

TreeGraph build_tree(int k, int depth, Vertex cap) { return TreeGraph(k, depth, cap); }

int depth_for_tolerance(int k, double delta, double tol, int max_depth) {
  for (int R = 0; R <= max_depth; ++R)
    if (tail_bound(k, delta, R, 0.0) < tol) return R;
  throw Error(ErrorCode::NonConvergent, "tail tolerance not reached within max_depth");
}

}  // namespace spectree
