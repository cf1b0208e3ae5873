#pragma once

#include <string>
#include <vector>

#include "linkcanon/canon.hpp"

namespace linkcanon {

// lambda(e_i, e_j) on standard basis classes of coker(A).
struct PairingCheck {
  std::size_t i = 0;
  std::size_t j = 0;
  mpq_class value;
};

struct GoldenCase {
  std::string name;
  IntMatrix matrix;
  std::string tokens;  // strict serialization
  std::vector<PairingCheck> pairings;
};

/// Hand-computed worked examples with their expected packages.
const std::vector<GoldenCase>& golden_corpus();

struct SelftestRow {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Golden packages, pairing values, plumbing sweep (m <= hj_limit), generator
/// block checks, round trips and shift identities.
/// `inject_fault` routes the token rows through faulty_canon (harness check).
std::vector<SelftestRow> run_selftest(unsigned hj_limit = 200, bool inject_fault = false);

}  // namespace linkcanon
