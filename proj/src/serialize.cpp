#include <algorithm>
#include <map>
#include <sstream>

#include "linkcanon/canon.hpp"
#include "linkcanon/errors.hpp"

namespace linkcanon {

std::string serialize(const TokenPackage& t, bool include_extended) {
  std::ostringstream os;
  os << "b1=" << t.b1;
  std::size_t i = 0;
  while (i < t.layers.size()) {
    const mpz_class& p = t.layers[i].p;
    os << ';' << p << ":{";
    bool first = true;
    for (; i < t.layers.size() && t.layers[i].p == p; ++i) {
      const LayerRecord& L = t.layers[i];
      if (!first) os << ',';
      first = false;
      os << "k=" << L.k << ",n=" << L.n << ',';
      if (const auto* o = std::get_if<OddPayload>(&L.payload)) {
        os << "x=" << o->x;
      } else if (const auto* a = std::get_if<TwoAPayload>(&L.payload)) {
        os << 'A';
        if (a->delta) os << ",d=" << *a->delta;
      } else {
        os << "E,u=" << std::get<TwoEPayload>(L.payload).u;
      }
    }
    os << '}';
  }
  if (include_extended && !t.extended_gauss.empty()) {
    os << ";xg2=[";
    for (std::size_t j = 0; j < t.extended_gauss.size(); ++j) {
      if (j) os << ',';
      os << '(' << t.extended_gauss[j].k << ',' << t.extended_gauss[j].u << ')';
    }
    os << ']';
  }
  return os.str();
}

std::vector<mpz_class> invariant_factors_from_layers(const std::vector<LayerRecord>& layers) {
  // Exponent multiset per prime, largest first.
  std::map<mpz_class, std::vector<unsigned>> exps;
  for (const auto& L : layers)
    for (std::size_t c = 0; c < L.n; ++c) exps[L.p].push_back(L.k);
  std::size_t count = 0;
  for (auto& [p, v] : exps) {
    std::sort(v.rbegin(), v.rend());
    count = std::max(count, v.size());
  }
  std::vector<mpz_class> out(count, 1);
  for (const auto& [p, v] : exps)
    for (std::size_t j = 0; j < v.size(); ++j) {
      mpz_class q;
      mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), v[j]);
      out[count - 1 - j] *= q;
    }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  TokenPackage run() {
    TokenPackage t;
    expect("b1=");
    t.b1 = number_ul();
    mpz_class last_p = 0;
    while (pos_ < s_.size()) {
      expect(";");
      if (peek_is("xg2=")) {
        extended(t);
        break;
      }
      const std::size_t at = pos_;
      const mpz_class p = number();
      if (p <= last_p) fail("primes must be strictly increasing", at);
      if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) fail("not a prime", at);
      last_p = p;
      expect(":{");
      unsigned last_k = 0;
      do {
        LayerRecord L = layer(p);
        if (L.k <= last_k) fail("layer exponents must be strictly increasing", pos_);
        last_k = L.k;
        t.layers.push_back(std::move(L));
      } while (accept(","));
      expect("}");
    }
    if (pos_ != s_.size()) fail("trailing characters", pos_);
    t.invariant_factors = invariant_factors_from_layers(t.layers);
    t.torsion_order = 1;
    for (const auto& d : t.invariant_factors) t.torsion_order *= d;
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t at) { throw ParseError(what, at); }

  bool peek_is(const char* lit) const { return s_.compare(pos_, std::char_traits<char>::length(lit), lit) == 0; }

  bool accept(const char* lit) {
    if (!peek_is(lit)) return false;
    pos_ += std::char_traits<char>::length(lit);
    return true;
  }

  void expect(const char* lit) {
    if (!accept(lit)) fail(std::string("expected '") + lit + "'", pos_);
  }

  mpz_class number(bool allow_sign = false) {
    const std::size_t start = pos_;
    if (allow_sign && pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (pos_ == digits) fail("expected a decimal integer", start);
    if (s_[digits] == '0' && pos_ - digits > 1) fail("leading zero", start);
    return mpz_class(s_.substr(start, pos_ - start));
  }

  unsigned long number_ul() {
    const std::size_t at = pos_;
    const mpz_class v = number();
    if (!v.fits_ulong_p()) fail("integer out of range", at);
    return v.get_ui();
  }

  int small_in(std::initializer_list<int> allowed, bool allow_sign) {
    const std::size_t at = pos_;
    const mpz_class v = number(allow_sign);
    for (int a : allowed)
      if (v == a) return a;
    fail("value not allowed here", at);
  }

  LayerRecord layer(const mpz_class& p) {
    LayerRecord L;
    L.p = p;
    expect("k=");
    const std::size_t at_k = pos_;
    L.k = static_cast<unsigned>(number_ul());
    if (L.k == 0) fail("k must be positive", at_k);
    expect(",n=");
    const std::size_t at_n = pos_;
    L.n = number_ul();
    if (L.n == 0) fail("n must be positive", at_n);
    expect(",");
    if (p != 2) {
      expect("x=");
      L.payload = OddPayload{small_in({1, -1}, true)};
    } else if (accept("A")) {
      TwoAPayload a;
      if (L.k >= 2) {
        expect(",d=");
        a.delta = L.k == 2 ? small_in({1, 3}, false) : small_in({1, 3, 5, 7}, false);
      }
      L.payload = a;
    } else if (accept("E")) {
      if (L.n % 2 != 0) fail("type E layer must have even dimension", at_n);
      expect(",u=");
      L.payload = TwoEPayload{small_in({0, 1, 2, 3, 4, 5, 6, 7}, false)};
    } else {
      fail("expected 'A' or 'E'", pos_);
    }
    return L;
  }

  void extended(TokenPackage& t) {
    expect("xg2=[");
    unsigned last_k = 0;
    do {
      expect("(");
      const std::size_t at = pos_;
      const unsigned k = static_cast<unsigned>(number_ul());
      if (k == 0 || k <= last_k) fail("extended Gauss exponents must be positive and increasing", at);
      last_k = k;
      expect(",");
      const int u = small_in({0, 1, 2, 3, 4, 5, 6, 7}, false);
      expect(")");
      t.extended_gauss.push_back({k, u});
    } while (accept(","));
    expect("]");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

TokenPackage parse_tokens(const std::string& text) { return Parser(text).run(); }

}  // namespace linkcanon
