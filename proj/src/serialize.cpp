#include "vbroadcast/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vbroadcast {

Json matrix_to_json(const Operator& op) {
  Json j;
  j["dims"] = op.shape().dims;
  Json entries = Json::array();
  const Matrix& m = op.matrix();
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) {
      entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
  j["re_im"] = std::move(entries);
  return j;
}

Operator matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("re_im")) {
    throw argument_error("matrix JSON: expected object with \"dims\" and \"re_im\"");
  }
  const Json& dims_json = j.at("dims");
  if (!dims_json.is_array() || dims_json.empty()) {
    throw argument_error("matrix JSON: \"dims\" must be a non-empty array of integers");
  }
  std::vector<int> dims;
  dims.reserve(dims_json.size());
  for (const Json& d : dims_json) {
    if (!d.is_number_integer()) {
      throw argument_error("matrix JSON: \"dims\" must be a non-empty array of integers");
    }
    dims.push_back(d.get<int>());
  }
  SubsystemShape shape(dims);
  const long side = shape.total_dim();
  const Json& entries = j.at("re_im");
  if (!entries.is_array() || static_cast<long>(entries.size()) != side * side) {
    throw argument_error("matrix JSON: \"re_im\" length must equal side^2");
  }
  Matrix m(side, side);
  long idx = 0;
  for (long r = 0; r < side; ++r) {
    for (long c = 0; c < side; ++c, ++idx) {
      const Json& pair = entries.at(idx);
      if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() ||
          !pair.at(1).is_number()) {
        throw argument_error("matrix JSON: each entry must be [re, im]");
      }
      m(r, c) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
  }
  return Operator(std::move(shape), std::move(m));
}

Json choi_to_json(const ChoiOperator& choi) {
  Json j = matrix_to_json(choi.matrix);
  j["input_dim"] = choi.input_dim;
  j["output_dims"] = choi.output_shape.dims;
  return j;
}

ChoiOperator choi_from_json(const Json& j) {
  if (!j.contains("input_dim") || !j.contains("output_dims")) {
    throw argument_error("choi JSON: expected \"input_dim\" and \"output_dims\"");
  }
  Operator m = matrix_from_json(j);
  const int d = j.at("input_dim").get<int>();
  SubsystemShape out_shape(j.at("output_dims").get<std::vector<int>>());
  return ChoiOperator(d, std::move(out_shape), std::move(m));
}

std::string format_sig17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw argument_error("atomic_write: cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw argument_error("atomic_write: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw argument_error("read_file: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                         const std::string& context) {
  if (!obj.is_object()) throw argument_error(context + ": expected a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw argument_error(context + ": unknown key \"" + it.key() + "\"");
    }
  }
}

}  // namespace vbroadcast
