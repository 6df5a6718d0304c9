#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "conepos/chain_builder.hpp"

namespace conepos::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const Int& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();  // beyond 64 bits: decimal string
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const std::vector<IntVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline Json to_json(const Cone& c) {
  return Json{{"dim", c.ambient_dim()}, {"generators", to_json(c.generators())}};
}

inline Json to_json(const Move& m) {
  return Json{{"direction", to_string(m.direction)}, {"witness", to_json(m.witness)}, {"kind", to_string(m.kind)}};
}

inline Json to_json(const Chain& ch) {
  Json cones = Json::array(), moves = Json::array();
  for (const auto& c : ch.cones) cones.push_back(to_json(c));
  for (const auto& m : ch.moves) moves.push_back(to_json(m));
  return Json{{"cones", cones}, {"moves", moves}, {"length", ch.length()}, {"verified", ch.verified}};
}

inline Json to_json(const CanonicalizationNotes& n) {
  Json reduced = Json::array();
  for (const auto& [raw, prim] : n.reduced) reduced.push_back(Json{{"raw", to_json(raw)}, {"primitive", to_json(prim)}});
  return Json{{"reduced", reduced}, {"dropped", to_json(n.dropped)}};
}

[[noreturn]] inline void malformed(const std::string& what) { throw ConeError(ErrorKind::MalformedInput, what); }

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      malformed("not an integer: " + j.dump());
    }
  }
  malformed("not an integer: " + j.dump());
}

inline IntVector vector_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) malformed("expected a vector of length " + std::to_string(dim) + ": " + j.dump());
  IntVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = int_from_json(j[i]);
  return v;
}

inline std::size_t dim_from_json(const Json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
    malformed("missing or invalid \"dim\"");
  return j["dim"].get<std::size_t>();
}

inline Cone cone_from_json(const Json& j, CanonicalizationNotes* notes = nullptr) {
  if (!j.is_object()) malformed("a cone must be an object");
  const std::size_t d = dim_from_json(j);
  if (!j.contains("generators") || !j["generators"].is_array()) malformed("missing \"generators\" list");
  std::vector<IntVector> g;
  for (const auto& row : j["generators"]) g.push_back(vector_from_json(row, d));
  return Cone::hull(g, d, notes);
}

inline Move move_from_json(const Json& j, std::size_t dim) {
  if (!j.is_object()) malformed("a move must be an object");
  Move m;
  const std::string dir = j.value("direction", "");
  if (dir == "Up") m.direction = Direction::Up;
  else if (dir == "Down") m.direction = Direction::Down;
  else malformed("bad move direction: " + dir);
  const std::string kind = j.value("kind", "Generic");
  if (kind == "Height1") m.kind = MoveKind::Height1;
  else if (kind == "HilbertDescent") m.kind = MoveKind::HilbertDescent;
  else if (kind == "UnimodularExt") m.kind = MoveKind::UnimodularExt;
  else if (kind == "Generic") m.kind = MoveKind::Generic;
  else malformed("bad move kind: " + kind);
  if (!j.contains("witness")) malformed("move without witness");
  m.witness = vector_from_json(j["witness"], dim);
  return m;
}

inline Chain chain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("cones") || !j["cones"].is_array() || j["cones"].empty())
    malformed("a chain needs a nonempty \"cones\" list");
  Chain ch;
  for (const auto& c : j["cones"]) ch.cones.push_back(cone_from_json(c));
  const std::size_t d = ch.cones.front().ambient_dim();
  const Json moves = j.value("moves", Json::array());
  if (!moves.is_array() || moves.size() + 1 != ch.cones.size()) malformed("a chain needs one move per consecutive pair");
  for (const auto& m : moves) ch.moves.push_back(move_from_json(m, d));
  return ch;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

inline Cone parse_cone_file(const std::string& text, CanonicalizationNotes* notes = nullptr) {
  return cone_from_json(parse_json(text), notes);
}

inline std::string serialize(const Cone& c) { return to_json(c).dump(); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Inline list "1,0;1,5" (rows separated by ';', entries by ',').
inline std::vector<IntVector> parse_inline_rows(const std::string& text) {
  std::vector<IntVector> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<Int> entries;
    std::stringstream es(row);
    std::string tok;
    while (std::getline(es, tok, ',')) {
      auto b = tok.find_first_not_of(" \t"), e = tok.find_last_not_of(" \t");
      if (b == std::string::npos) malformed("empty entry in \"" + text + "\"");
      tok = tok.substr(b, e - b + 1);
      std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
      if (i == tok.size() || tok.find_first_not_of("0123456789", i) != std::string::npos)
        malformed("not an integer: \"" + tok + "\"");
      entries.emplace_back(tok[0] == '+' ? tok.substr(1) : tok);
    }
    if (entries.empty()) malformed("empty row in \"" + text + "\"");
    rows.emplace_back(std::move(entries));
  }
  if (rows.empty()) malformed("no rows in \"" + text + "\"");
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) malformed("rows of different length in \"" + text + "\"");
  return rows;
}

inline bool looks_inline(const std::string& arg) {
  return !arg.empty() && arg.find_first_not_of("0123456789-+,; \t") == std::string::npos;
}

/// A cone argument: inline rows, or a path to a cone file.
inline Cone load_cone(const std::string& arg, CanonicalizationNotes* notes = nullptr) {
  if (looks_inline(arg)) {
    auto rows = parse_inline_rows(arg);
    return Cone::hull(rows, rows.front().size(), notes);
  }
  return parse_cone_file(read_file(arg), notes);
}

inline IntVector load_vector(const std::string& arg) {
  auto rows = parse_inline_rows(arg);
  if (rows.size() != 1) malformed("expected a single vector: \"" + arg + "\"");
  return rows.front();
}

/// Polytope: inline rows or a file {"dim": d, "points": [[...], ...]}.
inline std::vector<IntVector> load_points(const std::string& arg) {
  if (looks_inline(arg)) return parse_inline_rows(arg);
  Json j = parse_json(read_file(arg));
  const std::size_t d = dim_from_json(j);
  if (!j.contains("points") || !j["points"].is_array() || j["points"].empty()) malformed("missing \"points\" list");
  std::vector<IntVector> pts;
  for (const auto& p : j["points"]) pts.push_back(vector_from_json(p, d));
  return pts;
}

}  // namespace conepos::io
