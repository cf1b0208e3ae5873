#include <algorithm>
#include <map>

#include "linkcanon/canon.hpp"
#include "linkcanon/errors.hpp"

namespace linkcanon {

namespace {

std::vector<int> residues(unsigned k) {
  if (k == 1) return {1};
  if (k == 2) return {1, 3};
  return {1, 3, 5, 7};
}

// Multisets of size n over `units`, as ascending vectors.
void multisets(const std::vector<int>& units, std::size_t n, std::size_t from, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (cur.size() == n) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < units.size(); ++i) {
    cur.push_back(units[i]);
    multisets(units, n, i, cur, out);
    cur.pop_back();
  }
}

struct LayerShape {
  unsigned k;
  std::size_t n;
  TwoType type;
};

std::vector<TwoLayerModel> layer_options(const LayerShape& s, bool general) {
  std::vector<TwoLayerModel> out;
  if (s.type == TwoType::E) {
    const std::size_t planes = s.n / 2;
    const std::size_t max_twisted = general && s.k > 1 ? planes : 0;
    for (std::size_t t = 0; t <= max_twisted; ++t) out.push_back({s.k, TwoType::E, {}, planes - t, t});
    return out;
  }
  const auto units = residues(s.k);
  if (!general) {
    for (int q : units) {
      std::vector<int> nums(s.n - 1, 1);
      nums.push_back(q);
      std::sort(nums.begin(), nums.end());
      out.push_back({s.k, TwoType::A, nums, 0, 0});
    }
    return out;
  }
  std::vector<std::vector<int>> all;
  std::vector<int> cur;
  multisets(units, s.n, 0, cur, all);
  for (auto& nums : all) out.push_back({s.k, TwoType::A, nums, 0, 0});
  std::stable_sort(out.begin(), out.end(), [](const TwoLayerModel& a, const TwoLayerModel& b) {
    return model_delta(a).value_or(0) < model_delta(b).value_or(0);
  });
  return out;
}

}  // namespace

std::optional<int> model_delta(const TwoLayerModel& layer) {
  if (layer.type != TwoType::A) throw WrongType("model_delta: layer is of type E");
  if (layer.k == 1) return std::nullopt;
  const int mod = layer.k == 2 ? 4 : 8;
  int d = 1;
  for (int a : layer.numerators) d = (d * a) % mod;
  return d;
}

std::pair<std::vector<unsigned>, RatMatrix> model_gram(const TwoPrimaryModel& model) {
  std::size_t n = 0;
  for (const auto& L : model) n += L.dimension();
  std::vector<unsigned> exps;
  RatMatrix g(n, n);
  std::size_t at = 0;
  for (const auto& L : model) {
    const mpz_class scale = mpz_class(1) << L.k;
    for (int a : L.numerators) {
      exps.push_back(L.k);
      g(at, at) = frac01(mpq_class(a, scale));
      ++at;
    }
    for (std::size_t c = 0; c < L.plain + L.twisted; ++c) {
      const bool twisted = c >= L.plain;
      exps.push_back(L.k);
      exps.push_back(L.k);
      g(at, at + 1) = g(at + 1, at) = frac01(mpq_class(1, scale));
      if (twisted) g(at, at) = g(at + 1, at + 1) = frac01(mpq_class(2, scale));
      at += 2;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j).canonicalize();
  return {exps, g};
}

std::vector<std::pair<std::pair<unsigned, std::uint64_t>, std::uint64_t>> self_linking_distribution(
    const std::vector<unsigned>& exponents, const RatMatrix& gram2, std::uint64_t cap) {
  const std::size_t n = exponents.size();
  if (gram2.rows() != n || gram2.cols() != n) throw DimensionMismatch("self_linking_distribution: size mismatch");
  unsigned top = 0, bits = 0;
  for (unsigned e : exponents) {
    top = std::max(top, e);
    bits += e;
    if (bits > 63) throw CapExceeded("self_linking_distribution: 2-primary part exceeds 2^63 elements");
  }
  const std::uint64_t size = std::uint64_t{1} << bits;
  if (size > cap)
    throw CapExceeded("self_linking_distribution: 2-primary part has 2^" + std::to_string(bits) +
                      " elements, above the cap of " + std::to_string(cap));

  const std::uint64_t mask = (std::uint64_t{1} << top) - 1;
  std::vector<std::uint64_t> W(n * n);
  const mpz_class scale = mpz_class(1) << top;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const mpq_class v = scale * gram2(a, b);
      if (v.get_den() != 1) throw NonIntegral("self_linking_distribution: unexpected denominator");
      W[a * n + b] = mod_floor(v.get_num(), scale).get_ui();
    }

  std::map<std::pair<unsigned, std::uint64_t>, std::uint64_t> counts;
  std::vector<std::uint64_t> x(n, 0);
  for (std::uint64_t count = 0; count < size; ++count) {
    // Products wrap mod 2^64, which is a multiple of 2^top.
    std::uint64_t r = 0;
    unsigned ord = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (x[a] == 0) continue;
      ord = std::max(ord, exponents[a] - static_cast<unsigned>(__builtin_ctzll(x[a])));
      for (std::size_t b = 0; b < n; ++b)
        if (x[b] != 0) r += x[a] * x[b] * W[a * n + b];
    }
    ++counts[{ord, r & mask}];
    for (std::size_t a = 0; a < n; ++a) {
      if (++x[a] < (std::uint64_t{1} << exponents[a])) break;
      x[a] = 0;
    }
  }
  return {counts.begin(), counts.end()};
}

TwoPrimaryModel canonical_two_model(const PairingGram& gram, const std::vector<mpz_class>& d, std::uint64_t cap) {
  const auto gens = primary_generators(d, 2);
  std::vector<unsigned> exps;
  RatMatrix g2(gens.size(), gens.size());
  unsigned top = 0;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    exps.push_back(gens[a].e);
    top = std::max(top, gens[a].e);
    for (std::size_t b = 0; b < gens.size(); ++b)
      g2(a, b) = frac01(gens[a].s * gens[b].s * gram(gens[a].index, gens[b].index));
  }
  const auto target = self_linking_distribution(exps, g2, cap);

  std::vector<LayerShape> shapes;
  for (unsigned k = 1; k <= top; ++k) {
    const LayerMatrix L = layer_matrix(gram, d, 2, k);
    if (L.dimension() > 0) shapes.push_back({k, L.dimension(), two_layer_type(L.C)});
  }

  for (bool general : {false, true}) {
    std::vector<std::vector<TwoLayerModel>> options;
    for (const auto& s : shapes) options.push_back(layer_options(s, general));
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      TwoPrimaryModel model;
      for (std::size_t i = 0; i < options.size(); ++i) model.push_back(options[i][pick[i]]);
      const auto [mexps, mgram] = model_gram(model);
      if (self_linking_distribution(mexps, mgram, cap) == target) return model;
      // Last layer varies fastest, so the first layer is the most significant.
      std::size_t i = options.size();
      while (i > 0) {
        --i;
        if (++pick[i] < options[i].size()) break;
        pick[i] = 0;
        if (i == 0) {
          i = options.size() + 1;
          break;
        }
      }
      if (i == options.size() + 1 || options.empty()) break;
    }
  }
  throw NoMatch("canonical_two_model: no orthogonal model matches the 2-primary pairing");
}

}  // namespace linkcanon
