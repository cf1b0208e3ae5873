#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "linkcanon/canon.hpp"

namespace linkcanon {

struct Congruence {
  IntMatrix P;
};
struct Stabilize {
  int sign = 1;
};
struct Destabilize {
  std::size_t index = 0;
};

using KirbyMove = std::variant<Congruence, Stabilize, Destabilize>;

std::string describe(const KirbyMove& move);

/// Product of `steps` random elementary matrices (transvections with
/// coefficient in [-3, 3] \ {0}, row swaps, sign flips).
IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, std::size_t steps);
IntMatrix random_unimodular(std::size_t n, std::uint64_t seed, std::size_t steps);

/// P^T A P, A ⊕ (±1), or A with a split ±1 row and column removed.
/// Throws BadDestabilize, DimensionMismatch.
IntMatrix apply(const IntMatrix& A, const KirbyMove& move);

/// Indices i with A(i,i) = ±1 and every other entry of row/column i zero.
std::vector<std::size_t> destabilizable(const IntMatrix& A);

/// Independent stream for walk number `index` under a master seed.
std::uint64_t walk_seed(std::uint64_t master, std::uint64_t index);

struct WalkOptions {
  std::size_t max_size = 12;
  std::size_t checkpoint_every = 1;
  bool compare_extended = true;  // false: strict comparison only
  bool inject_fault = false;     // test-only corruption of every checkpoint after the first
  CanonOptions canon;
};

struct Checkpoint {
  std::size_t step = 0;
  std::string move;
  TokenPackage package;
};

struct OrbitReport {
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  IntMatrix initial;
  IntMatrix final_matrix;
  std::vector<Checkpoint> checkpoints;
  bool pass = true;
  std::optional<std::size_t> first_divergence;  // index into checkpoints
};

OrbitReport random_walk(const IntMatrix& A, std::uint64_t seed, std::size_t steps, const WalkOptions& options = {});

/// `walks` independent walks, seeds derived with walk_seed; run concurrently,
/// returned in walk order.
std::vector<OrbitReport> run_walks(const IntMatrix& A, std::uint64_t master_seed, std::size_t walks,
                                   std::size_t steps, const WalkOptions& options = {});

/// Package of A with the test-only fault applied (see WalkOptions).
TokenPackage faulty_canon(const IntMatrix& A, const CanonOptions& options);

}  // namespace linkcanon
