#include "linkcanon/kirby.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "linkcanon/errors.hpp"

namespace linkcanon {

std::string describe(const KirbyMove& move) {
  std::ostringstream os;
  if (const auto* c = std::get_if<Congruence>(&move))
    os << "congruence " << c->P;
  else if (const auto* s = std::get_if<Stabilize>(&move))
    os << "stabilize " << (s->sign > 0 ? "+1" : "-1");
  else
    os << "destabilize " << std::get<Destabilize>(move).index;
  return os.str();
}

IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, std::size_t steps) {
  if (n == 0) throw DimensionMismatch("random_unimodular: n must be at least 1");
  IntMatrix P = IntMatrix::identity(n);
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(1, 3);
  std::bernoulli_distribution neg(0.5);
  for (std::size_t s = 0; s < steps; ++s) {
    const int op = kind(rng);
    if (op <= 3 && n > 1) {
      // column i += c * column j (right multiplication by a transvection)
      const std::size_t i = idx(rng);
      std::size_t j = idx(rng);
      while (j == i) j = idx(rng);
      const int c = neg(rng) ? -coef(rng) : coef(rng);
      for (std::size_t r = 0; r < n; ++r) P(r, i) += c * P(r, j);
    } else if (op == 4 && n > 1) {
      P.swap_cols(idx(rng), idx(rng));
    } else {
      const std::size_t i = idx(rng);
      for (std::size_t r = 0; r < n; ++r) P(r, i) = -P(r, i);
    }
  }
  if (abs(det(P)) != 1) throw InvariantViolation("random_unimodular: determinant is not ±1");
  return P;
}

IntMatrix random_unimodular(std::size_t n, std::uint64_t seed, std::size_t steps) {
  std::mt19937_64 rng(seed);
  return random_unimodular(n, rng, steps);
}

std::vector<std::size_t> destabilizable(const IntMatrix& A) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (abs(A(i, i)) != 1) continue;
    bool split = true;
    for (std::size_t j = 0; j < A.cols() && split; ++j)
      if (j != i && (A(i, j) != 0 || A(j, i) != 0)) split = false;
    if (split) out.push_back(i);
  }
  return out;
}

IntMatrix apply(const IntMatrix& A, const KirbyMove& move) {
  if (const auto* c = std::get_if<Congruence>(&move)) {
    if (c->P.rows() != A.rows() || !c->P.is_square()) throw DimensionMismatch("apply: congruence size mismatch");
    if (abs(det(c->P)) != 1) throw InvariantViolation("apply: congruence matrix is not unimodular");
    return c->P.transpose() * A * c->P;
  }
  if (const auto* s = std::get_if<Stabilize>(&move)) {
    if (s->sign != 1 && s->sign != -1) throw Error("apply: stabilization sign must be ±1");
    return direct_sum(A, IntMatrix{{s->sign}});
  }
  const std::size_t i = std::get<Destabilize>(move).index;
  const auto legal = destabilizable(A);
  if (std::find(legal.begin(), legal.end(), i) == legal.end())
    throw BadDestabilize("apply: entry " + std::to_string(i) + " is not a split ±1 block");
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < A.rows(); ++j)
    if (j != i) keep.push_back(j);
  return A.restrict(keep);
}

std::uint64_t walk_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over (master, index)
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TokenPackage faulty_canon(const IntMatrix& A, const CanonOptions& options) {
  DiscriminantPresentation disc = discriminant(A, options.exact);
  const TokenPackage honest = canon_from_presentation(disc, options);
  if (!disc.factors.empty()) {
    auto& g = disc.gram.entries;
    g(0, 0) = frac01(g(0, 0) + mpq_class(1, disc.factors[0]));
    try {
      TokenPackage t = canon_from_presentation(disc, options);
      if (!(t == honest)) return t;
    } catch (const Error&) {
      // a corrupted gram may violate layer invariants; fall through
    }
  }
  TokenPackage t = honest;
  t.b1 += 1;
  return t;
}

namespace {

KirbyMove random_move(const IntMatrix& A, std::mt19937_64& rng, const WalkOptions& options) {
  const std::size_t n = A.rows();
  std::uniform_int_distribution<int> pick(0, 99);
  const int r = pick(rng);
  const auto legal = destabilizable(A);
  if (n == 0 || (r >= 60 && r < 85 && n < options.max_size)) {
    std::bernoulli_distribution plus(0.5);
    return Stabilize{plus(rng) ? 1 : -1};
  }
  if (r >= 85 && !legal.empty()) {
    std::uniform_int_distribution<std::size_t> which(0, legal.size() - 1);
    return Destabilize{legal[which(rng)]};
  }
  std::uniform_int_distribution<std::size_t> ops(1, 3);
  return Congruence{random_unimodular(n, rng, ops(rng))};
}

}  // namespace

OrbitReport random_walk(const IntMatrix& A, std::uint64_t seed, std::size_t steps, const WalkOptions& options) {
  OrbitReport report;
  report.seed = seed;
  report.steps = steps;
  report.initial = A;
  std::mt19937_64 rng(seed);
  const std::size_t every = std::max<std::size_t>(options.checkpoint_every, 1);

  auto package_of = [&](const IntMatrix& M, bool first) {
    TokenPackage t = options.inject_fault && !first ? faulty_canon(M, options.canon) : canon(M, options.canon);
    if (!options.compare_extended) t.extended_gauss.clear();
    return t;
  };

  IntMatrix M = A;
  report.checkpoints.push_back({0, "start", package_of(M, true)});
  for (std::size_t s = 1; s <= steps; ++s) {
    const KirbyMove move = random_move(M, rng, options);
    M = linkcanon::apply(M, move);
    if (s % every == 0 || s == steps) {
      report.checkpoints.push_back({s, describe(move), package_of(M, false)});
      if (report.pass && !(report.checkpoints.back().package == report.checkpoints.front().package)) {
        report.pass = false;
        report.first_divergence = report.checkpoints.size() - 1;
      }
    }
  }
  report.final_matrix = std::move(M);
  return report;
}

std::vector<OrbitReport> run_walks(const IntMatrix& A, std::uint64_t master_seed, std::size_t walks,
                                   std::size_t steps, const WalkOptions& options) {
  std::vector<OrbitReport> out(walks);
  std::vector<std::exception_ptr> errors(walks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t w = next++; w < walks; w = next++) {
      try {
        out[w] = random_walk(A, walk_seed(master_seed, w), steps, options);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t nthreads = std::min<std::size_t>(hw, std::max<std::size_t>(walks, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace linkcanon
