#include "nclosed/table_io.hpp"

#include <fstream>
#include <sstream>

#include "nclosed/error.hpp"

namespace nclosed {

namespace {

struct RawTable {
  TableRows rows;
  std::vector<std::string> labels;
};

RawTable read_raw(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("table") || !doc["table"].is_array())
    throw Error(ErrorKind::SyntaxError, "expected an object with a \"table\" array");
  RawTable raw;
  for (const auto& row : doc["table"]) {
    if (!row.is_array()) throw Error(ErrorKind::SyntaxError, "table rows must be arrays");
    std::vector<Index> r;
    for (const auto& cell : row) {
      if (!cell.is_number_integer() || cell.get<std::int64_t>() < 0)
        throw Error(ErrorKind::NotClosed, "table entries must be non-negative integers, got " +
                                              cell.dump());
      const auto v = cell.get<std::int64_t>();
      r.push_back(v > static_cast<std::int64_t>(kMaxOrder) ? static_cast<Index>(kMaxOrder + 1)
                                                           : static_cast<Index>(v));
    }
    raw.rows.push_back(std::move(r));
  }
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array())
      throw Error(ErrorKind::SyntaxError, "\"labels\" must be an array of strings");
    for (const auto& l : doc["labels"]) {
      if (!l.is_string()) throw Error(ErrorKind::SyntaxError, "labels must be strings");
      raw.labels.push_back(l.get<std::string>());
    }
  }
  return raw;
}

nlohmann::json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SyntaxError, path.string() + ": " + e.what(), e.byte);
  }
}

}  // namespace

FiniteGroup group_from_json(const nlohmann::json& doc) {
  RawTable raw = read_raw(doc);
  return validate_cayley_table(raw.rows, std::move(raw.labels));
}

FiniteSemigroup semigroup_from_json(const nlohmann::json& doc) {
  RawTable raw = read_raw(doc);
  return validate_semigroup_table(raw.rows, std::move(raw.labels));
}

nlohmann::json table_to_json(const FiniteSemigroup& s) {
  nlohmann::json labels = nlohmann::json::array();
  nlohmann::json table = nlohmann::json::array();
  for (Index x = 0; x < s.order(); ++x) {
    labels.push_back(s.label(x));
    auto row = s.magma().row(x);
    table.push_back(std::vector<Index>(row.begin(), row.end()));
  }
  return {{"labels", labels}, {"table", table}};
}

FiniteGroup load_cayley_table(const std::filesystem::path& path) {
  return group_from_json(read_file(path));
}

FiniteSemigroup load_semigroup_table(const std::filesystem::path& path) {
  return semigroup_from_json(read_file(path));
}

}  // namespace nclosed
