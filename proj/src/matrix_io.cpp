#include "linkcanon/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <json.hpp>

namespace linkcanon {

namespace {

void validate(const IntMatrix& A) {
  if (!A.is_square()) throw NotSquare();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = i + 1; j < A.cols(); ++j)
      if (A(i, j) != A(j, i)) throw NotSymmetric(i, j);
}

mpz_class parse_integer(const std::string& tok, std::size_t pos) {
  std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size()) throw ParseError("expected an integer, got '" + tok + "'", pos);
  for (std::size_t j = i; j < tok.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(tok[j])))
      throw ParseError("expected an integer, got '" + tok + "'", pos);
  return mpz_class(tok[0] == '+' ? tok.substr(1) : tok);
}

}  // namespace

IntMatrix parse_matrix_text(const std::string& text) {
  std::vector<std::vector<mpz_class>> rows;
  std::size_t offset = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::vector<mpz_class> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',')) ++i;
      if (i == line.size()) break;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',') ++i;
      row.push_back(parse_integer(line.substr(start, i - start), line_start + start));
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("row " + std::to_string(rows.size()) + " has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(rows.front().size()),
                       line_start);
    rows.push_back(std::move(row));
  }
  IntMatrix A(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) A(i, j) = rows[i][j];
  return A;
}

MatrixDocument parse_matrix_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || !doc.contains("matrix") || !doc["matrix"].is_array())
    throw ParseError("JSON input needs an array field \"matrix\"", 0);
  MatrixDocument out;
  if (doc.contains("name") && doc["name"].is_string()) out.name = doc["name"].get<std::string>();
  const auto& rows = doc["matrix"];
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : (rows[0].is_array() ? rows[0].size() : 0);
  out.matrix = IntMatrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != m)
      throw ParseError("matrix row " + std::to_string(i) + " is not an array of length " + std::to_string(m), 0);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& v = rows[i][j];
      if (v.is_number_integer())
        out.matrix(i, j) = mpz_class(v.dump());
      else if (v.is_string())
        out.matrix(i, j) = parse_integer(v.get<std::string>(), 0);
      else
        throw ParseError("matrix entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not an integer", 0);
    }
  }
  return out;
}

MatrixDocument parse_matrix_document(const std::string& text, const std::string& source) {
  const auto first = text.find_first_not_of(" \t\r\n");
  MatrixDocument doc;
  if (first != std::string::npos && text[first] == '{')
    doc = parse_matrix_json(text);
  else
    doc.matrix = parse_matrix_text(text);
  doc.source = source;
  validate(doc.matrix);
  return doc;
}

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path, 0);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace linkcanon
