// Command-line front end: canon, realize, verify-kirby, selftest.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkcanon/canon.hpp"
#include "linkcanon/dictionary.hpp"
#include "linkcanon/golden.hpp"
#include "linkcanon/kirby.hpp"
#include "linkcanon/matrix_io.hpp"

using namespace linkcanon;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kOther = 1, kParse = 2, kInvariant = 3, kRealize = 4, kKirby = 5, kSelftest = 6 };

struct Flags {
  bool pretty = false;
  bool strict = false;
  std::uint64_t seed = 20240601;
  std::size_t walks = 25;
  std::size_t steps = 50;
  std::uint64_t cap_gauss = std::uint64_t{1} << 20;
  bool inject_fault = false;
  std::string input = "-";
};

std::string str(const mpz_class& z) { return z.get_str(); }

ordered_json matrix_json(const IntMatrix& A) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < A.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < A.cols(); ++j) row.push_back(str(A(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const IntMatrix& A) {
  std::string out;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) out += (j ? " " : "") + str(A(i, j));
    out += '\n';
  }
  return out;
}

ordered_json package_json(const TokenPackage& t, bool strict) {
  ordered_json j;
  j["b1"] = std::to_string(t.b1);
  j["torsion_order"] = str(t.torsion_order);
  j["invariant_factors"] = ordered_json::array();
  for (const auto& d : t.invariant_factors) j["invariant_factors"].push_back(str(d));
  j["layers"] = ordered_json::array();
  for (const auto& L : t.layers) {
    ordered_json l;
    l["p"] = str(L.p);
    l["k"] = std::to_string(L.k);
    l["n"] = std::to_string(L.n);
    if (const auto* o = std::get_if<OddPayload>(&L.payload)) {
      l["x"] = std::to_string(o->x);
    } else if (const auto* a = std::get_if<TwoAPayload>(&L.payload)) {
      l["type"] = "A";
      l["delta"] = a->delta ? std::to_string(*a->delta) : "*";
    } else {
      l["type"] = "E";
      l["u"] = std::to_string(std::get<TwoEPayload>(L.payload).u);
    }
    j["layers"].push_back(l);
  }
  if (!strict) {
    j["extended_gauss"] = ordered_json::array();
    for (const auto& g : t.extended_gauss)
      j["extended_gauss"].push_back({{"k", std::to_string(g.k)}, {"u", std::to_string(g.u)}});
  }
  return j;
}

std::string pretty_package(const TokenPackage& t, bool strict) {
  std::ostringstream os;
  os << "b1            " << t.b1 << "\n";
  os << "torsion order " << t.torsion_order << "\n";
  os << "factors      ";
  for (const auto& d : t.invariant_factors) os << ' ' << d;
  os << "\n";
  for (const auto& L : t.layers) {
    os << "  p=" << L.p << " k=" << L.k << " n=" << L.n;
    if (const auto* o = std::get_if<OddPayload>(&L.payload))
      os << " x=" << o->x;
    else if (const auto* a = std::get_if<TwoAPayload>(&L.payload))
      os << " type A delta=" << (a->delta ? std::to_string(*a->delta) : "*");
    else
      os << " type E u=" << std::get<TwoEPayload>(L.payload).u;
    os << "\n";
  }
  if (!strict && !t.extended_gauss.empty()) {
    os << "gauss (p=2)  ";
    for (const auto& g : t.extended_gauss) os << " u_" << g.k << "=" << g.u;
    os << "\n";
  }
  return os.str();
}

CanonOptions canon_options(const Flags& f) {
  CanonOptions o;
  o.gauss_cap = f.cap_gauss;
  return o;
}

void emit(const ordered_json& doc, const Flags& f, const std::string& pretty_text) {
  if (f.pretty)
    std::cout << pretty_text;
  else
    std::cout << doc.dump() << "\n";
}

IntMatrix load_matrix(const Flags& f) {
  return parse_matrix_document(read_input(f.input), f.input).matrix;
}

int cmd_canon(const Flags& f) {
  const IntMatrix A = load_matrix(f);
  const TokenPackage t = canon(A, canon_options(f));
  const std::string tokens = serialize(t, !f.strict);
  ordered_json doc;
  doc["tokens"] = tokens;
  doc["package"] = package_json(t, f.strict);
  emit(doc, f, tokens + "\n" + pretty_package(t, f.strict));
  return kOk;
}

int cmd_realize(const Flags& f) {
  const std::string text = read_input(f.input);
  const auto first = text.find_first_not_of(" \t\r\n");
  TokenPackage t;
  if (first != std::string::npos && text.compare(first, 3, "b1=") == 0) {
    const auto last = text.find_last_not_of(" \t\r\n");
    t = parse_tokens(text.substr(first, last - first + 1));
  } else {
    t = canon(parse_matrix_document(text, f.input).matrix, canon_options(f));
  }
  const RealizationDescriptor R = realize(t, canon_options(f));
  ordered_json doc;
  doc["tokens"] = serialize(t, !f.strict);
  doc["B"] = matrix_json(R.B);
  doc["shift"] = std::to_string(R.shift);
  doc["factors"] = ordered_json::array();
  for (const auto& fac : R.factors) doc["factors"].push_back({{"label", fac.label}, {"shift", std::to_string(fac.shift)}});

  std::ostringstream pretty;
  pretty << "B =\n" << matrix_text(R.B) << "shift = " << R.shift << "\nfactors =";
  for (const auto& fac : R.factors) pretty << ' ' << fac.label << '[' << fac.shift << ']';
  pretty << "\n";
  emit(doc, f, pretty.str());
  return kOk;
}

int cmd_verify_kirby(const Flags& f) {
  const IntMatrix A = load_matrix(f);
  WalkOptions opts;
  opts.canon = canon_options(f);
  opts.compare_extended = !f.strict;
  opts.inject_fault = f.inject_fault;
  const auto reports = run_walks(A, f.seed, f.walks, f.steps, opts);

  ordered_json doc;
  doc["seed"] = std::to_string(f.seed);
  doc["walks"] = std::to_string(f.walks);
  doc["steps"] = std::to_string(f.steps);
  doc["tokens"] = reports.empty() ? serialize(canon(A, opts.canon), !f.strict)
                                  : serialize(reports.front().checkpoints.front().package, !f.strict);
  doc["reports"] = ordered_json::array();
  std::size_t failed = 0;
  std::ostringstream pretty;
  for (std::size_t w = 0; w < reports.size(); ++w) {
    const auto& r = reports[w];
    ordered_json jr;
    jr["walk"] = std::to_string(w);
    jr["seed"] = std::to_string(r.seed);
    jr["pass"] = r.pass;
    jr["final_size"] = std::to_string(r.final_matrix.rows());
    if (!r.pass) {
      ++failed;
      const auto& cp = r.checkpoints[*r.first_divergence];
      jr["first_divergence"] = {{"step", std::to_string(cp.step)},
                                {"move", cp.move},
                                {"expected", serialize(r.checkpoints.front().package, !f.strict)},
                                {"got", serialize(cp.package, !f.strict)}};
      std::cerr << "walk " << w << " diverged at step " << cp.step << " after " << cp.move << ": "
                << serialize(cp.package, !f.strict) << " != " << serialize(r.checkpoints.front().package, !f.strict)
                << "\n";
    }
    pretty << "walk " << w << " seed " << r.seed << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    doc["reports"].push_back(jr);
  }
  doc["pass"] = failed == 0;
  pretty << (failed == 0 ? "PASS" : "FAIL") << " (" << reports.size() - failed << "/" << reports.size() << ")\n";
  emit(doc, f, pretty.str());
  return failed == 0 ? kOk : kKirby;
}

int cmd_selftest(const Flags& f) {
  const auto rows = run_selftest(200, f.inject_fault);
  ordered_json doc;
  doc["rows"] = ordered_json::array();
  std::size_t failed = 0;
  std::ostringstream pretty;
  for (const auto& r : rows) {
    doc["rows"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    pretty << (r.pass ? "PASS  " : "FAIL  ") << r.name << (r.pass ? "" : "  " + r.detail) << "\n";
    if (!r.pass) {
      ++failed;
      std::cerr << "selftest failure: " << r.name << ": " << r.detail << "\n";
    }
  }
  doc["pass"] = failed == 0;
  emit(doc, f, pretty.str());
  return failed == 0 ? kOk : kSelftest;
}

void print_error(const std::string& kind, const std::exception& e, ordered_json extra = {}) {
  std::cerr << "error: " << e.what() << "\n";
  ordered_json doc;
  doc["error"] = kind;
  doc["message"] = e.what();
  for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
  std::cout << doc.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical invariants of linking pairings presented by symmetric integer matrices"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&](CLI::App* sub, bool with_input) {
    sub->add_flag("--pretty", f.pretty, "Human-readable output");
    sub->add_flag("--strict-paper", f.strict, "Omit extended Gauss data from output and comparisons");
    sub->add_option("--cap-gauss", f.cap_gauss, "Largest quotient enumerated for Gauss sums");
    if (with_input) sub->add_option("input", f.input, "Matrix file, or - for standard input");
  };
  auto* c_canon = app.add_subcommand("canon", "Print the token package of a matrix");
  add_common(c_canon, true);
  auto* c_realize = app.add_subcommand("realize", "Assemble the canonical matrix of a matrix or token string");
  add_common(c_realize, true);
  auto* c_kirby = app.add_subcommand("verify-kirby", "Check invariance along random Kirby walks");
  add_common(c_kirby, true);
  c_kirby->add_option("--seed", f.seed, "Master seed");
  c_kirby->add_option("--walks", f.walks, "Number of walks");
  c_kirby->add_option("--steps", f.steps, "Moves per walk");
  c_kirby->add_flag("--inject-fault", f.inject_fault)->group("");
  auto* c_self = app.add_subcommand("selftest", "Run the built-in worked examples");
  add_common(c_self, false);
  c_self->add_flag("--inject-fault", f.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (c_canon->parsed()) return cmd_canon(f);
    if (c_realize->parsed()) return cmd_realize(f);
    if (c_kirby->parsed()) return cmd_verify_kirby(f);
    if (c_self->parsed()) return cmd_selftest(f);
  } catch (const RealizationMismatch& e) {
    print_error("realization", e,
                {{"expected", serialize(e.expected, !f.strict)}, {"actual", serialize(e.actual, !f.strict)}});
    return kRealize;
  } catch (const UnrealizableU& e) {
    print_error("realization", e);
    return kRealize;
  } catch (const ParseError& e) {
    print_error("parse", e, {{"position", std::to_string(e.position)}});
    return kParse;
  } catch (const NotSymmetric& e) {
    print_error("parse", e, {{"row", std::to_string(e.row)}, {"col", std::to_string(e.col)}});
    return kParse;
  } catch (const NotSquare& e) {
    print_error("parse", e);
    return kParse;
  } catch (const InvariantViolation& e) {
    print_error("invariant", e);
    return kInvariant;
  } catch (const CapExceeded& e) {
    print_error("invariant", e);
    return kInvariant;
  } catch (const std::exception& e) {
    print_error("error", e);
    return kOther;
  }
  return kOther;
}
