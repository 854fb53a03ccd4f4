#include "vi/problems.hpp"

#include <stdexcept>

#include "vi/rng.hpp"

namespace vi {

namespace {

constexpr const char* kHarkerPangDistributions =
    "B,G ~ U[-5,5]; S=(G-G^T)/2; D_ii ~ U[0,0.3]; Q ~ U[-1,1]; b ~ U[0,1]; q=0; "
    "xoshiro256** seeded by splitmix64";

Matrix random_matrix(Xoshiro256& rng, std::size_t rows, std::size_t cols, double lo, double hi) {
  Matrix a(rows, cols);
  for (auto& v : a.data()) v = rng.uniform(lo, hi);
  return a;
}

Vector random_vector(Xoshiro256& rng, std::size_t n, double lo, double hi) {
  Vector v(n);
  for (auto& e : v) e = rng.uniform(lo, hi);
  return v;
}

nlohmann::json matrix_json(const Matrix& a) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j.at(0).size() : 0;
  std::vector<double> data;
  data.reserve(rows * cols);
  for (const auto& r : j) {
    if (r.size() != cols) throw std::invalid_argument("instance json: ragged matrix");
    for (const auto& v : r) data.push_back(v.get<double>());
  }
  return Matrix(rows, cols, std::move(data));
}

nlohmann::json set_json(const FeasibleSet& set) {
  struct Visitor {
    nlohmann::json operator()(const WholeSpace&) const { return {{"kind", "whole_space"}}; }
    nlohmann::json operator()(const Halfspace& h) const {
      return {{"kind", "halfspace"}, {"normal", h.normal().values()}, {"anchor", h.anchor().values()}};
    }
    nlohmann::json operator()(const Box& b) const {
      return {{"kind", "box"}, {"lower", b.lower.values()}, {"upper", b.upper.values()}};
    }
    nlohmann::json operator()(const Ball& b) const {
      return {{"kind", "ball"}, {"center", b.center.values()}, {"radius", b.radius}};
    }
    nlohmann::json operator()(const Polyhedron& p) const {
      return {{"kind", "polyhedron"}, {"Q", matrix_json(p.q())}, {"b", p.b().values()}};
    }
  };
  return std::visit(Visitor{}, set.variant());
}

Vector vec(const nlohmann::json& j) { return Vector(j.get<std::vector<double>>()); }

FeasibleSet set_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "whole_space") return FeasibleSet::whole_space();
  if (kind == "halfspace") return FeasibleSet(Halfspace(vec(j.at("normal")), vec(j.at("anchor"))));
  if (kind == "box") return FeasibleSet::box(vec(j.at("lower")), vec(j.at("upper")));
  if (kind == "ball") return FeasibleSet::ball(vec(j.at("center")), j.at("radius").get<double>());
  if (kind == "polyhedron") return FeasibleSet::polyhedron(matrix_from_json(j.at("Q")), vec(j.at("b")));
  throw std::invalid_argument("instance json: unknown set kind '" + kind + "'");
}

ProblemInstance make_instance(AffineField field, FeasibleSet set, Vector solution, std::string name) {
  const double l = estimate_lipschitz(field);
  const int m = static_cast<int>(field.dim());
  return ProblemInstance{std::move(field), std::move(set), std::move(solution), l,
                         InstanceMeta{std::move(name), m, 0, 0, "hand-built"}};
}

}  // namespace

HarkerPangParts harker_pang_parts(int m, int l, std::uint64_t seed) {
  if (m < 1 || l < 1) throw std::invalid_argument("harker_pang: m and l must be >= 1");
  const auto n = static_cast<std::size_t>(m);
  const auto rows = static_cast<std::size_t>(l);
  Xoshiro256 rng(derive_seed(seed, kHarkerPangTag));

  HarkerPangParts parts;
  parts.b_factor = random_matrix(rng, n, n, -5.0, 5.0);
  const Matrix g = random_matrix(rng, n, n, -5.0, 5.0);
  parts.skew = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) parts.skew(i, j) = 0.5 * (g(i, j) - g(j, i));
  }
  parts.diag = random_vector(rng, n, 0.0, 0.3);
  parts.q = random_matrix(rng, rows, n, -1.0, 1.0);
  parts.rhs = random_vector(rng, rows, 0.0, 1.0);
  return parts;
}

ProblemInstance harker_pang(int m, int l, std::uint64_t seed) {
  HarkerPangParts parts = harker_pang_parts(m, l, seed);
  Matrix mat = gram_rows(parts.b_factor) + parts.skew + Matrix::diagonal(parts.diag);
  AffineField field(std::move(mat), Vector(static_cast<std::size_t>(m)));
  const double lip = estimate_lipschitz(field);
  return ProblemInstance{
      std::move(field),
      FeasibleSet::polyhedron(std::move(parts.q), std::move(parts.rhs)),
      Vector(static_cast<std::size_t>(m)),
      lip,
      InstanceMeta{"harker-pang", m, l, seed, kHarkerPangDistributions},
  };
}

Vector starting_point(int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("starting_point: m must be >= 1");
  Xoshiro256 rng(derive_seed(seed, kStartTag));
  return random_vector(rng, static_cast<std::size_t>(m), 0.0, 1.0);
}

std::vector<ProblemInstance> toy_instances() {
  std::vector<ProblemInstance> out;
  out.push_back(make_instance(rotation_field(), FeasibleSet::whole_space(), Vector(2), "rotation"));
  out.push_back(make_instance(AffineField(Matrix::identity(3), Vector(3)),
                              FeasibleSet::box(Vector(3, 1.0), Vector(3, 2.0)), Vector(3, 1.0),
                              "identity-box"));
  out.push_back(make_instance(AffineField(Matrix::identity(1), Vector{-1.0}),
                              FeasibleSet::box(Vector{0.0}, Vector{10.0}), Vector{1.0},
                              "shifted-line"));
  return out;
}

nlohmann::json to_json(const ProblemInstance& inst) {
  nlohmann::json j;
  j["name"] = inst.meta.name;
  j["m"] = inst.meta.m;
  j["l"] = inst.meta.l;
  j["seed"] = inst.meta.seed;
  j["distributions"] = inst.meta.distributions;
  j["M"] = matrix_json(inst.field.matrix());
  j["q"] = inst.field.offset().values();
  j["set"] = set_json(inst.set);
  j["lipschitz"] = inst.lipschitz;
  j["known_solution"] =
      inst.known_solution ? nlohmann::json(inst.known_solution->values()) : nlohmann::json(nullptr);
  return j;
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
  const double lip = j.at("lipschitz").get<double>();
  AffineField field(matrix_from_json(j.at("M")), vec(j.at("q")), lip);
  std::optional<Vector> solution;
  if (!j.at("known_solution").is_null()) solution = vec(j.at("known_solution"));
  InstanceMeta meta{j.at("name").get<std::string>(), j.at("m").get<int>(), j.at("l").get<int>(),
                    j.at("seed").get<std::uint64_t>(), j.at("distributions").get<std::string>()};
  return ProblemInstance{std::move(field), set_from_json(j.at("set")), std::move(solution), lip,
                         std::move(meta)};
}

std::string serialize(const ProblemInstance& inst) { return to_json(inst).dump(2); }

}  // namespace vi
