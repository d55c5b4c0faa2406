#include "peckit/document.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace peckit {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw DocumentError(path, std::string("missing field '") + key + "'");
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw DocumentError(path, "unknown field '" + it.key() + "'");
  }
}

Rational rational_field(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.dump());
  if (!v.is_string()) throw DocumentError(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    throw DocumentError(path, e.what());
  }
}

Extended extended_field(const json& v, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return Extended::pos_inf();
    if (s == "-inf") return Extended::neg_inf();
  }
  return Extended(rational_field(v, path));
}

Tail parse_tail(const json& t, const std::string& path) {
  if (!t.is_object()) throw DocumentError(path, "expected an object");
  reject_unknown(t, {"shape", "limit", "coefficient", "power", "ratio", "clip_lower", "clip_upper"}, path);
  const json& shape_field = require(t, "shape", path);
  if (!shape_field.is_string()) throw DocumentError(path + ".shape", "expected a string");
  TailShape shape;
  try {
    shape = parse_tail_shape(shape_field.get<std::string>());
  } catch (const std::exception& e) {
    throw DocumentError(path + ".shape", e.what());
  }
  auto only_for = [&](const char* key, bool allowed) {
    if (!allowed && t.contains(key)) {
      throw DocumentError(path + "." + key, "not allowed for shape " + shape_field.get<std::string>());
    }
  };
  only_for("limit", shape != TailShape::kDivergent);
  only_for("power", shape == TailShape::kPower);
  only_for("ratio", shape == TailShape::kGeometric);

  std::optional<Rational> limit;
  if (shape != TailShape::kDivergent) limit = rational_field(require(t, "limit", path), path + ".limit");
  Rational coefficient = 1;
  if (t.contains("coefficient")) {
    coefficient = rational_field(t["coefficient"], path + ".coefficient");
  } else if (shape != TailShape::kConstant) {
    throw DocumentError(path, "missing field 'coefficient'");
  }
  if (shape != TailShape::kConstant && coefficient == 0) {
    throw DocumentError(path + ".coefficient", "coefficient must be nonzero");
  }

  Tail tail = Tail::constant(0);
  switch (shape) {
    case TailShape::kConstant: tail = Tail::constant(*limit); break;
    case TailShape::kHarmonic: tail = Tail::harmonic(*limit, coefficient); break;
    case TailShape::kPower: {
      const json& p = require(t, "power", path);
      if (!p.is_number_integer()) throw DocumentError(path + ".power", "expected an integer");
      const long long power = p.get<long long>();
      if (power < 2 || power > 64) throw DocumentError(path + ".power", "power must lie in 2..64");
      tail = Tail::power(*limit, coefficient, static_cast<int>(power));
      break;
    }
    case TailShape::kGeometric: {
      Rational ratio = rational_field(require(t, "ratio", path), path + ".ratio");
      if (ratio <= 0 || ratio >= 1) throw DocumentError(path + ".ratio", "ratio must lie in (0, 1)");
      tail = Tail::geometric(*limit, coefficient, ratio);
      break;
    }
    case TailShape::kDivergent: tail = Tail::divergent(coefficient); break;
  }
  if (t.contains("clip_lower") || t.contains("clip_upper")) {
    Extended lo = t.contains("clip_lower") ? extended_field(t["clip_lower"], path + ".clip_lower")
                                           : Extended::neg_inf();
    Extended hi = t.contains("clip_upper") ? extended_field(t["clip_upper"], path + ".clip_upper")
                                           : Extended::pos_inf();
    if (hi < lo) throw DocumentError(path, "clip_lower exceeds clip_upper");
    tail = tail.clipped(lo, hi);
  }
  return tail;
}

json rational_string(const Rational& v) { return to_string(v); }

}  // namespace

Configuration parse_document(const json& doc) {
  if (!doc.is_object()) throw DocumentError("", "document must be a JSON object");
  reject_unknown(doc, {"type", "blocks"}, "");
  const json& type_field = require(doc, "type", "");
  if (!type_field.is_string()) throw DocumentError("type", "expected a string");
  RootSystemType type;
  try {
    type = parse_root_system_type(type_field.get<std::string>());
  } catch (const std::exception& e) {
    throw DocumentError("type", e.what());
  }
  const json& blocks_field = require(doc, "blocks", "");
  if (!blocks_field.is_array() || blocks_field.empty()) throw DocumentError("blocks", "expected a non-empty array");

  std::vector<Block> blocks;
  std::set<Rational> seen;
  for (std::size_t b = 0; b < blocks_field.size(); ++b) {
    const std::string path = "blocks[" + std::to_string(b) + "]";
    const json& bj = blocks_field[b];
    if (!bj.is_object()) throw DocumentError(path, "expected an object");
    reject_unknown(bj, {"level", "finite", "tails"}, path);
    Block block;
    block.level = rational_field(require(bj, "level", path), path + ".level");
    if (!seen.insert(block.level).second) {
      throw DocumentError(path + ".level", "duplicate level " + to_string(block.level));
    }
    if (bj.contains("finite")) {
      const json& f = bj["finite"];
      if (!f.is_array()) throw DocumentError(path + ".finite", "expected an array");
      for (std::size_t i = 0; i < f.size(); ++i) {
        block.finite.push_back(rational_field(f[i], path + ".finite[" + std::to_string(i) + "]"));
      }
    }
    if (bj.contains("tails")) {
      const json& ts = bj["tails"];
      if (!ts.is_array()) throw DocumentError(path + ".tails", "expected an array");
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string tpath = path + ".tails[" + std::to_string(i) + "]";
        try {
          block.tails.push_back(parse_tail(ts[i], tpath));
        } catch (const DomainError& e) {
          throw DocumentError(tpath, e.what());
        }
      }
    }
    if (block.finite.empty() && block.tails.empty()) throw DocumentError(path, "block has no entries");
    blocks.push_back(std::move(block));
  }
  try {
    return Configuration(type, std::move(blocks));
  } catch (const DomainError& e) {
    throw DocumentError("blocks", e.what());
  }
}

Configuration parse_document_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    throw DocumentError("line " + std::to_string(line), e.what());
  }
  return parse_document(doc);
}

Configuration load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(path, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_document_text(buffer.str());
}

json to_document(const Configuration& config) {
  json doc;
  doc["type"] = to_string(config.type());
  doc["blocks"] = json::array();
  for (const Block& block : config.blocks()) {
    json bj;
    bj["level"] = rational_string(block.level);
    bj["finite"] = json::array();
    for (const Rational& d : block.finite) bj["finite"].push_back(rational_string(d));
    bj["tails"] = json::array();
    for (const Tail& tail : block.tails) {
      json t;
      t["shape"] = to_string(tail.shape());
      if (tail.raw_limit()) t["limit"] = rational_string(*tail.raw_limit());
      if (tail.shape() != TailShape::kConstant) t["coefficient"] = rational_string(tail.coefficient());
      if (tail.shape() == TailShape::kPower) t["power"] = tail.exponent();
      if (tail.shape() == TailShape::kGeometric) t["ratio"] = rational_string(tail.ratio());
      if (!tail.clip_lower().is_neg_inf()) t["clip_lower"] = tail.clip_lower().str();
      if (!tail.clip_upper().is_pos_inf()) t["clip_upper"] = tail.clip_upper().str();
      bj["tails"].push_back(std::move(t));
    }
    doc["blocks"].push_back(std::move(bj));
  }
  return doc;
}

}  // namespace peckit
