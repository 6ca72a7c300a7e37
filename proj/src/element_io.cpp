#include "orthograph/element_io.hpp"

#include <fstream>
#include <sstream>

namespace orthograph {

using nlohmann::json;

json shape_to_json(const AlgebraShape& shape) {
  json j = json::array();
  for (std::size_t n : shape.blocks()) j.push_back(n);
  return j;
}

AlgebraShape shape_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParseError, "shape must be a non-empty array");
  std::vector<std::size_t> dims;
  for (const json& n : j) {
    if (!n.is_number_integer() || n.get<long long>() < 1) {
      throw Error(ErrorKind::ParseError, "block sizes must be positive integers");
    }
    dims.push_back(n.get<std::size_t>());
  }
  return AlgebraShape(std::move(dims));
}

json to_json(const Element& a) {
  json blocks = json::array();
  for (const Matrix& m : a.blocks()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return {{"shape", shape_to_json(a.shape())}, {"blocks", std::move(blocks)}};
}

Element element_from_json(const json& j) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("blocks")) {
    throw Error(ErrorKind::ParseError, "element needs \"shape\" and \"blocks\"");
  }
  const AlgebraShape shape = shape_from_json(j.at("shape"));
  const json& jb = j.at("blocks");
  if (!jb.is_array() || jb.size() != shape.block_count()) {
    throw Error(ErrorKind::ParseError, "\"blocks\" must list one matrix per shape entry");
  }
  std::vector<Matrix> blocks;
  for (std::size_t i = 0; i < shape.block_count(); ++i) {
    const auto n = static_cast<Eigen::Index>(shape.block_dim(i));
    const json& rows = jb[i];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
      throw Error(ErrorKind::ParseError, "block " + std::to_string(i) + " has the wrong number of rows");
    }
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        throw Error(ErrorKind::ParseError, "block " + std::to_string(i) + " has a ragged row");
      }
      for (Eigen::Index c = 0; c < n; ++c) {
        const json& e = row[static_cast<std::size_t>(c)];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
          throw Error(ErrorKind::ParseError, "entries must be [re, im] pairs");
        }
        m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    }
    blocks.push_back(std::move(m));
  }
  try {
    return Element(shape, std::move(blocks));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Element parse_element(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return element_from_json(j);
}

Element read_element_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_element(ss.str());
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + tmp.string());
    out << text;
    if (!out) throw Error(ErrorKind::ConfigError, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace orthograph
