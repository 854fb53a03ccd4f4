#include <doctest.h>

#include "vi/problems.hpp"
#include "vi/rng.hpp"

using namespace vi;

TEST_CASE("benchmark factors have the advertised structure") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto p = harker_pang_parts(7, 12, seed);
    const Matrix st = p.skew.transposed();
    for (std::size_t i = 0; i < 7; ++i) {
      for (std::size_t j = 0; j < 7; ++j) CHECK(st(i, j) == -p.skew(i, j));
    }
    for (double d : p.diag) CHECK((d >= 0.0 && d <= 0.3));
    for (double v : p.rhs) CHECK((v >= 0.0 && v <= 1.0));
    for (double v : p.q.data()) CHECK((v >= -1.0 && v <= 1.0));
    for (double v : p.b_factor.data()) CHECK((v >= -5.0 && v <= 5.0));
    CHECK(p.q.rows() == 12);
  }
}

TEST_CASE("benchmark matrix is positive semidefinite and x* = 0 is feasible") {
  const auto inst = harker_pang(9, 20, 5);
  CHECK(inst.known_solution == Vector(9));
  CHECK(inst.set.contains(Vector(9)));
  CHECK(inst.lipschitz > 0.0);
  Xoshiro256 rng(41);
  for (int t = 0; t < 500; ++t) {
    Vector x(9);
    for (auto& e : x) e = rng.uniform(-1, 1);
    CHECK(inner(inst.field(x), x) >= -1e-10 * squared_norm(x));
  }
}

TEST_CASE("generation is deterministic and seed dependent") {
  CHECK(serialize(harker_pang(5, 10, 7)) == serialize(harker_pang(5, 10, 7)));
  CHECK(serialize(harker_pang(5, 10, 7)) != serialize(harker_pang(5, 10, 8)));
  const Vector s = starting_point(6, 3);
  CHECK(s == starting_point(6, 3));
  CHECK_FALSE(s == starting_point(6, 4));
  for (double v : s) CHECK((v >= 0.0 && v < 1.0));
}

TEST_CASE("toy instances satisfy the VI at their solutions") {
  Xoshiro256 rng(42);
  for (const auto& inst : toy_instances()) {
    CAPTURE(inst.meta.name);
    const Vector& xs = *inst.known_solution;
    CHECK(inst.set.contains(xs, 1e-12));
    const Vector fx = inst.field(xs);
    for (int t = 0; t < 200; ++t) {
      Vector u(xs.dim());
      for (auto& e : u) e = rng.uniform(-20, 20);
      const Vector y = inst.set.project(u);
      CHECK(inner(fx, y - xs) >= -1e-12);
    }
  }
}

TEST_CASE("JSON round trip") {
  for (const auto& inst : {harker_pang(4, 7, 9), toy_instances()[0], toy_instances()[1]}) {
    const auto back = instance_from_json(nlohmann::json::parse(serialize(inst)));
    CHECK(serialize(back) == serialize(inst));
    CHECK(back.field.matrix() == inst.field.matrix());
    CHECK(back.known_solution == inst.known_solution);
  }
  CHECK_THROWS(instance_from_json(nlohmann::json::object()));
}
