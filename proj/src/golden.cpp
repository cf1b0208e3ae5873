#include "linkcanon/golden.hpp"

#include <numeric>
#include <sstream>

#include "linkcanon/dictionary.hpp"
#include "linkcanon/kirby.hpp"

namespace linkcanon {

const std::vector<GoldenCase>& golden_corpus() {
  static const std::vector<GoldenCase> corpus = [] {
    std::vector<GoldenCase> c;
    c.push_back({"(1)", IntMatrix{{1}}, "b1=0", {}});
    c.push_back({"(3)", IntMatrix{{3}}, "b1=0;3:{k=1,n=1,x=1}", {{0, 0, mpq_class(1, 3)}}});
    c.push_back({"[[0,3],[3,0]]",
                 IntMatrix{{0, 3}, {3, 0}},
                 "b1=0;3:{k=1,n=2,x=-1}",
                 {{0, 0, 0}, {0, 1, mpq_class(1, 3)}, {1, 0, mpq_class(1, 3)}, {1, 1, 0}}});
    c.push_back({"zero 2x2", IntMatrix(2, 2), "b1=2", {}});
    c.push_back({"diag(2,2)",
                 IntMatrix{{2, 0}, {0, 2}},
                 "b1=0;2:{k=1,n=2,A}",
                 {{0, 0, mpq_class(1, 2)}, {0, 1, 0}, {1, 1, mpq_class(1, 2)}}});
    c.push_back({"(4)", IntMatrix{{4}}, "b1=0;2:{k=2,n=1,A,d=1}", {{0, 0, mpq_class(1, 4)}}});
    c.push_back({"(-4)", IntMatrix{{-4}}, "b1=0;2:{k=2,n=1,A,d=3}", {{0, 0, mpq_class(3, 4)}}});
    c.push_back({"(8)", IntMatrix{{8}}, "b1=0;2:{k=3,n=1,A,d=1}", {{0, 0, mpq_class(1, 8)}}});
    c.push_back({"[[0,2],[2,0]]",
                 IntMatrix{{0, 2}, {2, 0}},
                 "b1=0;2:{k=1,n=2,E,u=0}",
                 {{0, 0, 0}, {0, 1, mpq_class(1, 2)}, {1, 1, 0}}});
    c.push_back({"diag(4,3)",
                 IntMatrix{{4, 0}, {0, 3}},
                 "b1=0;2:{k=2,n=1,A,d=1};3:{k=1,n=1,x=1}",
                 {{0, 0, mpq_class(1, 4)}, {1, 1, mpq_class(1, 3)}, {0, 1, 0}}});
    return c;
  }();
  return corpus;
}

namespace {

std::vector<mpz_class> unit(std::size_t n, std::size_t i) {
  std::vector<mpz_class> v(n, 0);
  v[i] = 1;
  return v;
}

template <class F>
SelftestRow guarded(const std::string& name, F&& body) {
  SelftestRow row{name, false, ""};
  try {
    row.detail = body();
    row.pass = row.detail.empty();
    if (row.pass) row.detail = "ok";
  } catch (const std::exception& e) {
    row.detail = e.what();
  }
  return row;
}

}  // namespace

std::vector<SelftestRow> run_selftest(unsigned hj_limit, bool inject_fault) {
  std::vector<SelftestRow> rows;
  for (const auto& g : golden_corpus()) {
    rows.push_back(guarded("tokens " + g.name, [&]() -> std::string {
      const TokenPackage t = inject_fault ? faulty_canon(g.matrix, {}) : canon(g.matrix);
      const std::string got = serialize(t, false);
      return got == g.tokens ? "" : "got " + got + ", expected " + g.tokens;
    }));
    if (!g.pairings.empty())
      rows.push_back(guarded("pairing " + g.name, [&]() -> std::string {
        const std::size_t n = g.matrix.rows();
        for (const auto& pc : g.pairings) {
          const mpq_class v = linking_value(g.matrix, unit(n, pc.i), unit(n, pc.j));
          if (v != pc.value) {
            std::ostringstream os;
            os << "lambda(e" << pc.i << ",e" << pc.j << ") = " << v << ", expected " << pc.value;
            return os.str();
          }
        }
        return "";
      }));
    rows.push_back(guarded("round trip " + g.name, [&]() -> std::string {
      const TokenPackage t = canon(g.matrix);
      const TokenPackage back = canon(assemble(t));
      return strict_equal(back, t) ? "" : "got " + serialize(back, false);
    }));
  }

  rows.push_back(guarded("plumbing sweep m <= " + std::to_string(hj_limit), [&]() -> std::string {
    std::size_t count = 0;
    for (unsigned m = 2; m <= hj_limit; ++m)
      for (unsigned q = 1; q < m; ++q) {
        if (std::gcd(m, q) != 1) continue;
        plumbing_matrix(hj_expansion(m, q));  // checks det and inverse entry itself
        ++count;
      }
    return count > 0 ? "" : "no pairs checked";
  }));

  using K = GeneratorLabel::Kind;
  const std::vector<GeneratorLabel> labels = {
      {K::APlus, 3, 1, 1}, {K::AMinus, 3, 1, 1}, {K::APlus, 5, 2, 1}, {K::AMinus, 7, 1, 1},
      {K::ATwo, 2, 1, 1},  {K::ATwo, 2, 2, 3},   {K::ATwo, 2, 3, 5},  {K::E, 2, 1, 1},
      {K::F, 2, 2, 1}};
  for (const auto& label : labels)
    rows.push_back(guarded("block " + label.str(), [&]() -> std::string {
      const GeneratorBlock b = block_for(label);
      const TokenPackage t = canon(b.matrix);
      const auto blocks = assembly_blocks(t);
      if (blocks.size() != 1) return "package " + serialize(t, false) + " does not name a single block";
      const TokenPackage back = canon(blocks[0].matrix);
      return strict_equal(back, t) ? "" : "block package changed: " + serialize(back, false);
    }));

  rows.push_back(guarded("stabilization shifts", [&]() -> std::string {
    for (const auto& g : golden_corpus()) stabilize_shift_check(g.matrix);
    stabilize_shift_check(IntMatrix(0, 0));
    return "";
  }));

  rows.push_back(guarded("rank-one duality records", [&]() -> std::string {
    for (long n = -3; n <= 3; ++n) {
      const DualityRecord d = dual_rank_one(n);
      if (d.lhs != "L(" + std::to_string(-n) + ")" || d.rhs != "L(" + std::to_string(n) + ")^∨[1]")
        return "bad record for n=" + std::to_string(n);
      if (d.note.has_value() != (n == 2 || n == -2)) return "self-duality note misplaced at n=" + std::to_string(n);
    }
    return "";
  }));
  return rows;
}

}  // namespace linkcanon
