#pragma once

// Graphon and graph files.
//
// Graphon: {"sigma": [...], "values": [[...], ...]}. Entries are strings
// ("3/10", "0.3", "1e-2") or JSON numbers; both are read as exact rationals.
// Written back as "p/q" strings.
//
// Graph: {"n": N, "coords": [...], "blocks": [...], "edges": [[i, j], ...]}
// with 0-based node ids and block labels.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdg/errors.hpp"
#include "hdg/model.hpp"
#include "hdg/rational.hpp"
#include "hdg/sampling.hpp"

namespace hdg::io {

using nlohmann::json;

namespace detail {

inline Rational read_rational(const json& v, const std::string& field) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_unsigned()) return Rational(v.get<std::uint64_t>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_float()) return rational_from_double(v.get<double>());
  } catch (const Error& e) {
    throw ParseError(field, e.what());
  }
  throw ParseError(field, "expected a number or a rational string");
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)), e.what());
  }
}

inline const json& member(const json& doc, const char* key) {
  if (!doc.is_object()) throw ParseError("<document>", "expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(key, "missing field");
  return *it;
}

}  // namespace detail

inline StepGraphon graphon_from_json(const json& doc) {
  const json& sigma = detail::member(doc, "sigma");
  const json& values = detail::member(doc, "values");
  if (!sigma.is_array()) throw ParseError("sigma", "expected an array");
  if (!values.is_array()) throw ParseError("values", "expected an array of rows");

  RationalVector points;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    points.push_back(detail::read_rational(sigma[i], "sigma[" + std::to_string(i) + "]"));
  const std::size_t q = points.size() < 2 ? 0 : points.size() - 1;
  if (values.size() != q)
    throw ParseError("values", "expected " + std::to_string(q) + " rows, found " + std::to_string(values.size()));

  RationalMatrix m(q, q);
  for (std::size_t i = 0; i < q; ++i) {
    const std::string row = "values[" + std::to_string(i) + "]";
    if (!values[i].is_array() || values[i].size() != q)
      throw ParseError(row, "expected a row of " + std::to_string(q) + " entries");
    for (std::size_t j = 0; j < q; ++j) m(i, j) = detail::read_rational(values[i][j], row + "[" + std::to_string(j) + "]");
  }
  std::optional<Partition> partition;
  try {
    partition.emplace(std::move(points));
  } catch (const InputError& e) {
    throw ParseError("sigma", e.what());
  }
  try {
    return StepGraphon(std::move(*partition), std::move(m));
  } catch (const InputError& e) {
    throw ParseError("values", e.what());
  }
}

inline StepGraphon parse_graphon(const std::string& text) { return graphon_from_json(detail::parse_document(text)); }

inline json graphon_to_json(const StepGraphon& w) {
  json sigma = json::array();
  for (const auto& p : w.partition().breakpoints()) sigma.push_back(to_string(p));
  json values = json::array();
  for (std::size_t i = 0; i < w.blocks(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < w.blocks(); ++j) row.push_back(to_string(w.value(i, j)));
    values.push_back(std::move(row));
  }
  return json{{"sigma", std::move(sigma)}, {"values", std::move(values)}};
}

inline json graph_to_json(const SampledGraph& g) {
  json edges = json::array();
  for (auto [i, j] : g.edges) edges.push_back({i, j});
  return json{{"n", g.n}, {"coords", g.coords}, {"blocks", g.blocks}, {"edges", std::move(edges)}};
}

inline SampledGraph graph_from_json(const json& doc) {
  SampledGraph g;
  try {
    g.n = detail::member(doc, "n").get<std::size_t>();
    g.coords = detail::member(doc, "coords").get<std::vector<double>>();
    g.blocks = detail::member(doc, "blocks").get<std::vector<std::size_t>>();
    for (const auto& e : detail::member(doc, "edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edges", "each edge must be a pair");
      auto i = e[0].get<std::uint32_t>();
      auto j = e[1].get<std::uint32_t>();
      if (i >= g.n || j >= g.n || i == j) throw ParseError("edges", "edge endpoints out of range or equal");
      g.edges.emplace_back(std::min(i, j), std::max(i, j));
    }
  } catch (const json::type_error& e) {
    throw ParseError("graph", e.what());
  }
  if (g.coords.size() != g.n) throw ParseError("coords", "length differs from n");
  if (g.blocks.size() != g.n) throw ParseError("blocks", "length differs from n");
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("write failed for " + path);
}

inline StepGraphon load_graphon(const std::string& path) { return parse_graphon(read_file(path)); }

inline void save_graphon(const std::string& path, const StepGraphon& w) {
  write_file(path, graphon_to_json(w).dump(2) + "\n");
}

}  // namespace hdg::io
