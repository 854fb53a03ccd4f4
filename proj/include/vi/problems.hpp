// Test problems: the random affine benchmark family M = BBᵀ + S + D over
// {x : Qx ≤ b}, and small hand-built instances with known solutions.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vi/core.hpp"
#include "vi/geometry.hpp"
#include "vi/mappings.hpp"

#include <json.hpp>

namespace vi {

struct InstanceMeta {
  std::string name;
  int m = 0;
  int l = 0;
  std::uint64_t seed = 0;
  /// Human-readable description of the entry distributions.
  std::string distributions;
};

struct ProblemInstance {
  AffineField field;
  FeasibleSet set;
  std::optional<Vector> known_solution;
  double lipschitz = 0.0;
  InstanceMeta meta;
};

/// Raw factors of a benchmark instance, before M is assembled.
struct HarkerPangParts {
  Matrix b_factor;  // B, m×m, entries U[−5, 5]
  Matrix skew;      // S = (G − Gᵀ)/2, G entries U[−5, 5]
  Vector diag;      // D, entries U[0, 0.3]
  Matrix q;         // Q, l×m, entries U[−1, 1]
  Vector rhs;       // b, entries U[0, 1]
};

/// Draws the factors from one Xoshiro256 stream seeded with
/// derive_seed(seed, kHarkerPangTag), consuming it in this order, each matrix
/// row-major: B (m·m), G (m·m), D (m), Q (l·m), b (l).
HarkerPangParts harker_pang_parts(int m, int l, std::uint64_t seed);

/// F(x) = Mx with M = BBᵀ + S + D (positive semidefinite) over C = {Qx ≤ b}.
/// Since q = 0 and b ≥ 0 the unique solution is x* = 0.
ProblemInstance harker_pang(int m, int l, std::uint64_t seed);

/// Uniform in [0, 1)ᵐ from the stream derive_seed(seed, kStartTag).
Vector starting_point(int m, std::uint64_t seed);

/// Hand-built instances with analytic solutions:
///   "rotation"      F(x) = (−x₂, x₁) on R², x* = 0
///   "identity-box"  F(x) = x on [1, 2]³, x* = (1, 1, 1)
///   "shifted-line"  F(x) = x − 1 on [0, 10], x* = 1
std::vector<ProblemInstance> toy_instances();

inline constexpr std::uint64_t kHarkerPangTag = 0x48504231;  // "HPB1"
inline constexpr std::uint64_t kStartTag = 0x58535431;       // "XST1"

nlohmann::json to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);

/// Canonical text form: to_json(...).dump(2).
std::string serialize(const ProblemInstance& inst);

}  // namespace vi
