#include <doctest.h>

#include "oracles.hpp"
#include "spectree/decomposition.hpp"
#include "spectree/operators.hpp"

using namespace spectree;

namespace {

// Rank of Pi restricted to l2(S_{n-1}) -> l2(S_n), from the oracle adjacency.
int raising_rank(const oracle::Tree& o, int n) {
  std::vector<long> prev, cur;
  for (long v = 0; v < o.size(); ++v) {
    if (o.depth[v] == n - 1) prev.push_back(v);
    if (o.depth[v] == n) cur.push_back(v);
  }
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cur.size()),
                                               static_cast<Eigen::Index>(prev.size()));
  for (std::size_t i = 0; i < cur.size(); ++i)
    for (std::size_t p = 0; p < prev.size(); ++p)
      if (o.parent[cur[i]] == prev[p]) cols(i, p) = 1.0;
  return oracle::gram_schmidt_rank(cols);
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("dim Q_{n,n} equals the co-rank of the raising operator") {
    for (int k : {1, 2, 3, 4}) {
      const int R = k == 1 ? 6 : 4;
      const TreeGraph t(k, R);
      const SphericalBasis b(t);
      const oracle::Tree o(k, R);
      CHECK(b.dim(0) == 1);
      Vertex width = 1;
      for (int n = 1; n <= R; ++n) {
        width *= k;
        CHECK(b.dim(n) == width - raising_rank(o, n));
      }
    }
  }

  TEST_CASE("triangular dimension identity") {
    for (int k : {1, 2, 3}) {
      const TreeGraph t(k, 6);
      const SphericalBasis b(t);
      for (int r = 0; r <= 6; ++r) {
        Vertex total = 0;
        for (int l = 0; l <= r; ++l) total += b.dim(l);
        CHECK(total == t.sphere_size(r));
      }
    }
  }

  TEST_CASE("group frame is orthonormal and orthogonal to constants") {
    for (int k : {2, 3, 5}) {
      const SphericalBasis b(TreeGraph(k, 2));
      const RealMatrix& G = b.group_frame();
      REQUIRE(G.rows() == k);
      REQUIRE(G.cols() == k - 1);
      CHECK((G.transpose() * G - RealMatrix::Identity(k - 1, k - 1)).cwiseAbs().maxCoeff() <
            1e-13);
      CHECK((G.transpose() * RealVector::Ones(k)).cwiseAbs().maxCoeff() < 1e-13);
    }
  }

  TEST_CASE("basis matrix is orthogonal") {
    for (int k : {1, 2, 3}) {
      const TreeGraph t(k, k == 3 ? 4 : 6);
      const SphericalBasis b(t);
      const RealMatrix B(b.basis_matrix());
      REQUIRE(B.cols() == t.vertex_count());
      const auto I = RealMatrix::Identity(B.cols(), B.cols());
      CHECK((B.transpose() * B - I).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((B * B.transpose() - I).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(completeness_residual(b) < 1e-12);
    }
  }

  TEST_CASE("lifts are killed by the lowering operator at j = 0") {
    const TreeGraph t(3, 4);
    const SphericalBasis b(t);
    const oracle::Tree o(3, 4);
    for (int n = 1; n <= 4; ++n)
      for (Vertex m = 0; m < b.dim(n); ++m) {
        const RealVector x = b.lifted_vector(n, 0, m);
        // lowering: sum over children, evaluated at every parent
        RealVector low = RealVector::Zero(o.size());
        for (long v = 1; v < o.size(); ++v) low(o.parent[v]) += x(v);
        CHECK(low.cwiseAbs().maxCoeff() < 1e-13);
      }
  }

  TEST_CASE("adjacency acts as a free Jacobi matrix on interior lifts") {
    for (int k : {1, 2, 3}) {
      const int R = k == 3 ? 5 : 7;
      const TreeGraph t(k, R);
      const SphericalBasis b(t);
      const Eigen::MatrixXd A = oracle::adjacency(oracle::Tree(k, R));
      const double sk = std::sqrt(static_cast<double>(k));
      for (int n = 0; n <= R; ++n)
        for (Vertex m = 0; m < b.dim(n); ++m)
          for (int j = 0; n + j + 1 <= R; ++j) {
            RealVector expect = sk * b.lifted_vector(n, j + 1, m);
            if (j > 0) expect += sk * b.lifted_vector(n, j - 1, m);
            CHECK((A * b.lifted_vector(n, j, m) - expect).norm() < 1e-12);
          }
      for (int n = 0; n <= R; ++n) CHECK(verify_jacobi_form(b, t, n) < 1e-10);
    }
  }

  TEST_CASE("chi kernel is the sphere restriction of the projector") {
    const TreeGraph t(3, 3);
    const SphericalBasis b(t);
    for (int n = 0; n <= 3; ++n) {
      const ComplexMatrix P = projector(b, n);
      CHECK((P * P - P).cwiseAbs().maxCoeff() < 1e-12);
      const VertexRange s = t.sphere(n);
      for (Vertex a = s.first; a < s.last; ++a)
        for (Vertex c = s.first; c < s.last; ++c)
          CHECK(std::abs(P(a, c).real() - b.chi_kernel(n, a, c)) < 1e-12);
    }
  }
}
