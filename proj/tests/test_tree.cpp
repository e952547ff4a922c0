#include <doctest.h>

#include "oracles.hpp"
#include "spectree/error.hpp"
#include "spectree/potential.hpp"
#include "spectree/tree.hpp"

using namespace spectree;

TEST_SUITE("tree") {
  TEST_CASE("index layout agrees with an explicit BFS build") {
    for (int k : {1, 2, 3, 4}) {
      const int R = k == 1 ? 12 : 5;
      const TreeGraph t(k, R);
      const oracle::Tree o(k, R);
      REQUIRE(t.vertex_count() == o.size());
      CHECK(t.edge_count() == o.size() - 1);
      for (Vertex v = 0; v < t.vertex_count(); ++v) {
        CHECK(t.vertex_depth(v) == o.depth[v]);
        if (v > 0) CHECK(t.parent(v) == o.parent[v]);
        const VertexRange ch = t.children(v);
        REQUIRE(ch.size() == static_cast<Vertex>(o.children[v].size()));
        for (Vertex i = 0; i < ch.size(); ++i) CHECK(ch.first + i == o.children[v][i]);
      }
    }
  }

  TEST_CASE("spheres have k^r vertices") {
    const TreeGraph t(3, 4);
    Vertex expect = 1;
    for (int r = 0; r <= 4; ++r, expect *= 3) CHECK(t.sphere_size(r) == expect);
    CHECK(t.sphere(0).first == 0);
    CHECK(t.sphere(4).last == t.vertex_count());
  }

  TEST_CASE("ancestor walks up the parent chain") {
    const TreeGraph t(2, 6);
    const Vertex v = t.sphere(6).first + 37;
    Vertex a = v;
    for (int n = 5; n >= 0; --n) {
      a = t.parent(a);
      CHECK(t.ancestor(v, n) == a);
    }
    CHECK(t.ancestor(v, 6) == v);
  }

  TEST_CASE("errors") {
    const TreeGraph t(2, 3);
    try {
      (void)t.parent(0);
      FAIL("expected RootHasNoParent");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RootHasNoParent);
    }
    CHECK_THROWS_AS((void)t.vertex_depth(t.vertex_count()), Error);
    CHECK_THROWS_AS((void)t.parent(-1), Error);
    CHECK(t.children(t.sphere(3).first).empty());
    CHECK_THROWS_AS(TreeGraph(0, 3), Error);
    CHECK_THROWS_AS(TreeGraph(2, -1), Error);
    try {
      TreeGraph big(3, 30, 1000);
      FAIL("expected CapacityExceeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CapacityExceeded);
    }
  }

  TEST_CASE("depth_for_tolerance grows as the tolerance shrinks") {
    const double d = 6.0 * std::log(2.0);
    const int loose = depth_for_tolerance(2, d, 1e-2);
    const int tight = depth_for_tolerance(2, d, 1e-8);
    CHECK(loose >= 0);
    CHECK(tight > loose);
  }
}

TEST_SUITE("tree") {
  TEST_CASE("potential specs") {
    const TreeGraph t(2, 4);
    const auto p = PotentialSpec::radial_exp({0.3, 0.1}, 6 * std::log(2.0));
    CHECK(std::abs(p.value_at(t, 0) - Complex(0.3, 0.1)) < 1e-15);
    CHECK(std::abs(p.value_at(t, 3) - Complex(0.3, 0.1) * std::exp(-2 * p.delta)) < 1e-15);
    CHECK(p.is_radial(t));
    CHECK(p.satisfies_assumption(2));
    CHECK_FALSE(PotentialSpec::radial_exp(1.0, 1.0).satisfies_assumption(2));
    CHECK(PotentialSpec::radial_exp(1.0, 0.1).satisfies_assumption(1));

    const auto tab = PotentialSpec::table({{2, 0.5}, {0, {0, 1}}}, 5.0);
    CHECK(tab.values.front().v == 0);
    CHECK(tab.value_at(t, 2) == Complex(0.5));
    CHECK(tab.value_at(t, 1) == Complex(0.0));
    CHECK_FALSE(tab.is_radial(t));
    CHECK_THROWS_AS(PotentialSpec::table({{1, 1.0}, {1, 2.0}}, 5.0), Error);

    const auto bad = PotentialSpec::table({{0, 1.0}, {1, 1.0}}, 5.0, 1.0);
    try {
      bad.check(t);
      FAIL("expected AssumptionViolated");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AssumptionViolated);
    }
    CHECK(default_epsilon0(1.0) == doctest::Approx(0.125));
    CHECK(default_epsilon0(10.0) == doctest::Approx(0.3));
  }
}
