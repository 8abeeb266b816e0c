#pragma once

// Seeded random instances and the checker that classifies each cubical law on
// Moore cubes as holding strictly, holding only at the level of actions,
// failing, or having a side that strict composition cannot build.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moore/cube.hpp"
#include "moore/oracle.hpp"

namespace moore::lab {

/// Deterministic generator; the value mapping does not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform(double lo, double hi);
  int integer(int lo, int hi);                       // inclusive
  std::size_t index(std::size_t lo, std::size_t hi);  // inclusive
  bool chance(double p);
  Sign sign() { return chance(0.5) ? Sign::plus : Sign::minus; }

 private:
  std::mt19937_64 engine_;
};

struct GenOptions {
  double min_extent = 0.5;
  double max_extent = 3.0;
  double zero_probability = 0.1;
  double sin_probability = 0.3;
};

/// Random cube: extents uniform in [min, max] (zero with zero_probability);
/// each coordinate a degree <= 2 polynomial with integer coefficients in
/// [-3, 3], sometimes wrapped in sin.
MooreCube gen_cube(Rng& rng, std::size_t dim, const Space& space, const GenOptions& opts = {});
MooreCube gen_cube(std::uint64_t seed, std::size_t dim, const Space& space);

/// b with ∂_j^- b = ∂_j^+ a: b = g - g|_{t_j=0} + a|_{t_j=r_j} for a random g.
/// Non-j extents are copied from a. `a` must be an expression cube.
MooreCube gen_successor(Rng& rng, const MooreCube& a, std::size_t j, const GenOptions& opts = {});

std::pair<MooreCube, MooreCube> gen_composable_pair(std::uint64_t seed, std::size_t dim, std::size_t j);

/// Strictly composable 2x2 grid {a, b, c, d} as in CubeGrid::square(i, j, ...).
std::array<MooreCube, 4> gen_composable_square(Rng& rng, std::size_t dim, std::size_t i, std::size_t j,
                                               const Space& space, const GenOptions& opts = {});

enum class Classification { holds_strict, holds_action, fails, not_constructible_strictly };

std::string_view to_string(Classification c);

struct LawInstance {
  std::uint64_t seed = 0;
  std::vector<MooreCube> cubes;
  std::vector<std::size_t> indices;
  std::vector<Sign> signs;

  std::string description() const;
};

enum class InstanceStatus { strict, action_only, failed };

struct SideWitness {
  std::uint64_t instance_seed = 0;
  std::string instance;
  std::string equation;
  Witness witness;  // empty point for pure shape mismatches
  Shape lhs_shape;
  Shape rhs_shape;
};

struct InstanceResult {
  InstanceStatus status = InstanceStatus::strict;
  bool not_constructible = false;
  // Lenient rebuilds only: RHS shape equals the LHS shape bit for bit.
  bool lenient_shape_exact = false;
  // 3.6.ii/iii lenient rebuilds only: the rows-first pairwise compose_lenient
  // fold agrees with the LHS as an action.
  std::optional<bool> pairwise_lenient_action;
  std::optional<SideWitness> witness;         // status == failed
  std::optional<SideWitness> shape_mismatch;  // status == action_only
};

struct LawOutcome {
  std::string law_id;
  Classification classification = Classification::holds_strict;
  std::size_t instances_run = 0;
  std::size_t count_strict = 0;
  std::size_t count_action_only = 0;
  std::size_t count_failed = 0;
  std::size_t count_not_constructible = 0;
  std::size_t count_lenient_shape_exact = 0;
  std::optional<std::size_t> count_pairwise_lenient_action;
  std::optional<SideWitness> witness;
  std::optional<SideWitness> shape_mismatch;
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::size_t instances = 100;
  EqualityOracle oracle;
  bool parallel = true;
};

struct LawReport {
  SuiteConfig config;
  std::vector<LawOutcome> outcomes;
};

/// Every registered law, in report order.
const std::vector<std::string>& law_ids();

/// Seed of the k-th instance of a law within a suite seeded with `seed`.
std::uint64_t instance_seed(std::uint64_t seed, std::string_view law_id, std::size_t k);

/// Throws UnknownLaw.
LawInstance make_instance(std::string_view law_id, std::uint64_t seed);

struct Equation {
  std::string label;
  MooreCube lhs;
  MooreCube rhs;
};

/// Both sides of every equation the law asserts for `inst`. With
/// `lenient`, compositions on the right-hand side use compose_lenient and
/// multi_compose_lenient. Throws CompositionUndefined when a strict
/// right-hand side is undefined.
std::vector<Equation> law_sides(std::string_view law_id, const LawInstance& inst, const EqualityOracle& oracle,
                                bool lenient = false);

InstanceResult evaluate_instance(std::string_view law_id, const LawInstance& inst, const EqualityOracle& oracle);

LawOutcome check_law(std::string_view law_id, std::size_t n_instances, std::uint64_t seed,
                     const EqualityOracle& oracle = {});

LawReport run_suite(const SuiteConfig& config = {});

/// Deterministic JSON document for the report (2-space indent).
std::string report_json(const LawReport& report);

/// Fixed-width table: law, classification, counts.
std::string status_table(const LawReport& report);

}  // namespace moore::lab
