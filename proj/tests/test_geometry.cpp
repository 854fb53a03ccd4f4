#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "vi/geometry.hpp"
#include "vi/rng.hpp"

using namespace vi;

namespace {

Vector random_vector(Xoshiro256& rng, std::size_t n, double r = 1.0) {
  Vector v(n);
  for (auto& e : v) e = rng.uniform(-r, r);
  return v;
}

Matrix random_matrix(Xoshiro256& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (auto& e : m.data()) e = rng.uniform(-1.0, 1.0);
  return m;
}

Vector random_rhs(Xoshiro256& rng, std::size_t rows) {
  Vector b(rows);
  for (auto& e : b) e = rng.uniform(0.0, 1.0);
  return b;
}

struct NamedSet {
  const char* name;
  FeasibleSet set;
  double tol;  // tolerance of projection identities for this variant
};

std::vector<NamedSet> sample_sets(Xoshiro256& rng) {
  const std::size_t n = 3;
  Matrix q = random_matrix(rng, 6, n);
  Vector b = random_rhs(rng, 6);
  return {
      {"whole", FeasibleSet::whole_space(), 1e-12},
      {"halfspace", FeasibleSet(Halfspace(random_vector(rng, n), random_vector(rng, n))), 1e-12},
      {"box", FeasibleSet::box(Vector{-1, 0, 0.5}, Vector{1, 0.2, 2}), 1e-12},
      {"ball", FeasibleSet::ball(Vector{0.3, -0.2, 0.1}, 0.7), 1e-12},
      {"polyhedron/active-set", FeasibleSet::polyhedron(q, b, PolyhedralMethod::ActiveSet), 1e-8},
      {"polyhedron/dykstra", FeasibleSet::polyhedron(q, b, PolyhedralMethod::Dykstra), 1e-8},
  };
}

}  // namespace

TEST_CASE("halfspace projection closed form") {
  const Halfspace h(Vector{1, 0}, Vector{0, 0});
  CHECK(project_halfspace(Vector{-1, 5}, h) == Vector{-1, 5});
  CHECK(project_halfspace(Vector{2, 0}, h) == Vector{0, 0});
  CHECK_THROWS_AS(Halfspace(Vector{0, 0}, Vector{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Halfspace(Vector{1, 0}, Vector{1}), DimensionError);
  CHECK_THROWS_AS(project_halfspace(Vector{1, 2, 3}, h), DimensionError);
}

TEST_CASE("halfspace projection matches the KKT oracle") {
  Xoshiro256 rng(21);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.next() % 8;
    const Vector v = random_vector(rng, n, 2.0);
    const Vector x = random_vector(rng, n, 2.0);
    const Vector u = random_vector(rng, n, 5.0);
    const Halfspace h(v, x);
    const Vector z = project_halfspace(u, h);
    CHECK(distance(z, oracle::halfspace_kkt(u, v, x)) <= 1e-10);
    CHECK(h.contains(z, 1e-12));
    CHECK(distance(project_halfspace(z, h), z) <= 1e-12);
  }
}

TEST_CASE("closed-form set variants") {
  CHECK(project(FeasibleSet::whole_space(), Vector{3, -7}) == Vector{3, -7});
  const Vector ball = project(FeasibleSet::ball(Vector{0, 0}, 1.0), Vector{3, 4});
  CHECK(ball[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(ball[1] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(project(FeasibleSet::box(Vector{0, 0}, Vector{1, 1}), Vector{-2, 0.5}) == Vector{0, 0.5});
  CHECK(project(FeasibleSet::ball(Vector{1, 1}, 0.0), Vector{5, 5}) == Vector{1, 1});

  CHECK_THROWS_AS(FeasibleSet::box(Vector{1}, Vector{0}), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleSet::ball(Vector{0}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(project(FeasibleSet::box(Vector{0}, Vector{1}), Vector{1, 2}), DimensionError);
  CHECK_THROWS(project(FeasibleSet::whole_space(), Vector{1}, 0.0));
}

TEST_CASE("polyhedron row handling") {
  const Polyhedron p(Matrix{{0, 0}, {1, 0}}, Vector{0.5, 1.0});
  CHECK(p.active_rows().size() == 1);
  CHECK(project_polyhedron(p, Vector{3, 3}).point == Vector{1, 3});
  CHECK_THROWS_AS(Polyhedron(Matrix{{0, 0}}, Vector{-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Polyhedron(Matrix{{1, 0}}, Vector{1.0, 2.0}), DimensionError);
}

TEST_CASE("two-halfspace polyhedron matches active-set enumeration") {
  Xoshiro256 rng(22);
  for (int t = 0; t < 200; ++t) {
    const Matrix q = random_matrix(rng, 2, 2);
    const Vector b = random_rhs(rng, 2);
    const Vector u = random_vector(rng, 2, 4.0);
    const Vector expect = oracle::polyhedron_enumeration(q, b, u);
    for (auto method : {PolyhedralMethod::ActiveSet, PolyhedralMethod::Dykstra}) {
      const Polyhedron p(q, b, method);
      CHECK(distance(project_polyhedron(p, u).point, expect) <= 1e-6);
    }
  }
}

TEST_CASE("polyhedron projection of a member is the member") {
  Xoshiro256 rng(23);
  const Matrix q = random_matrix(rng, 8, 4);
  const Vector b = random_rhs(rng, 8);
  for (const auto& y : oracle::rejection_sample(q, b, 50, 5)) {
    for (auto method : {PolyhedralMethod::ActiveSet, PolyhedralMethod::Dykstra}) {
      CHECK(distance(project(FeasibleSet::polyhedron(q, b, method), y), y) <= 1e-10);
    }
  }
}

TEST_CASE("Dykstra reports its budget and best iterate") {
  Xoshiro256 rng(24);
  const Polyhedron p(random_matrix(rng, 30, 5), random_rhs(rng, 30), PolyhedralMethod::Dykstra);
  const Vector far = 50.0 * random_vector(rng, 5);
  try {
    project_polyhedron_dykstra(p, far, 1e-14, 1);
    FAIL("expected ProjectionError");
  } catch (const ProjectionError& e) {
    CHECK(e.sweeps() == 1);
    CHECK(e.best_iterate().dim() == 5);
    CHECK(e.best_iterate().is_finite());
  }
}

TEST_CASE("active-set projector detects an empty polyhedron") {
  const Polyhedron p(Matrix{{1.0}, {-1.0}}, Vector{-1.0, -1.0});  // x ≤ −1 and x ≥ 1
  CHECK_THROWS_AS(project_polyhedron_active_set(p, Vector{0.0}), ProjectionError);
}

TEST_CASE("projector agreement on larger random polyhedra") {
  Xoshiro256 rng(25);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.next() % 10;
    const Matrix q = random_matrix(rng, 40, n);
    const Vector b = random_rhs(rng, 40);
    const Vector u = random_vector(rng, n, 10.0);
    const auto a = project_polyhedron_active_set(Polyhedron(q, b), u);
    const auto d = project_polyhedron_dykstra(Polyhedron(q, b), u, 1e-12, 1000000);
    CHECK(distance(a.point, d.point) <= 1e-8);
  }
}

TEST_CASE("characterization residual") {
  Xoshiro256 rng(26);
  // z = u makes the first factor zero.
  CHECK(characterization_residual(Vector{1, 2}, Vector{1, 2}, Vector{-5, 9}) == 0.0);

  for (int t = 0; t < 100; ++t) {
    const Vector v = random_vector(rng, 3);
    const Vector x = random_vector(rng, 3);
    const Halfspace h(v, x);
    Vector u = x;
    u.axpy(1.0 + rng.unit(), v);  // strictly outside
    const Vector z = project_halfspace(u, h);
    for (int s = 0; s < 10; ++s) {
      // boundary point: x plus a direction orthogonal to v
      Vector w = random_vector(rng, 3);
      w.axpy(-inner(w, v) / inner(v, v), v);
      CHECK(characterization_residual(u, z, x + w) >= -1e-10);
    }
  }

  const Matrix q = random_matrix(rng, 6, 3);
  const Vector b = random_rhs(rng, 6);
  const auto feasible = oracle::rejection_sample(q, b, 100, 27);
  for (auto method : {PolyhedralMethod::ActiveSet, PolyhedralMethod::Dykstra}) {
    const FeasibleSet set = FeasibleSet::polyhedron(q, b, method);
    for (int t = 0; t < 10; ++t) {
      const Vector u = random_vector(rng, 3, 5.0);
      const Vector z = project(set, u);
      for (const auto& y : feasible) CHECK(characterization_residual(u, z, y) >= -1e-6);
    }
  }
}

TEST_CASE("projection properties hold for every variant") {
  Xoshiro256 rng(28);
  for (const auto& [name, set, tol] : sample_sets(rng)) {
    CAPTURE(name);
    for (int t = 0; t < 200; ++t) {
      const Vector u = random_vector(rng, 3, 4.0);
      const Vector w = random_vector(rng, 3, 4.0);
      const Vector pu = project(set, u);
      const Vector pw = project(set, w);

      CHECK(set.contains(pu, kDefaultProjectorTol));
      CHECK(distance(pu, pw) <= distance(u, w) + tol);
      CHECK(distance(project(set, pu), pu) <= tol);

      // Firm nonexpansiveness against a member of the set.
      const Vector z = project(set, random_vector(rng, 3, 2.0));
      const double lhs = squared_norm(pu - z);
      const double rhs = squared_norm(u - z) - squared_norm(pu - u);
      CHECK(lhs <= rhs + tol);
    }
  }
}
