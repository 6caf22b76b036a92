#include "minent/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace minent {

std::string fmt_g(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

std::string matrix_to_json(const CMat& m, const std::vector<int>& dims) {
  std::ostringstream out;
  out << "{\n  \"dims\": [";
  for (size_t k = 0; k < dims.size(); ++k) {
    if (k) out << ", ";
    out << dims[k];
  }
  out << "],\n";
  auto emit_part = [&](const char* name, bool real_part) {
    out << "  \"" << name << "\": [\n";
    for (long i = 0; i < m.rows(); ++i) {
      out << "    [";
      for (long j = 0; j < m.cols(); ++j) {
        if (j) out << ", ";
        double v = real_part ? m(i, j).real() : m(i, j).imag();
        out << fmt_g(v);
      }
      out << "]";
      if (i + 1 < m.rows()) out << ",";
      out << "\n";
    }
    out << "  ]";
  };
  emit_part("re", true);
  out << ",\n";
  emit_part("im", false);
  out << "\n}\n";
  return out.str();
}

StateFile matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("state JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("state JSON: top level must be an object");
  if (!j.contains("dims") || !j["dims"].is_array()) {
    throw std::invalid_argument("state JSON: missing or non-array field \"dims\"");
  }
  StateFile out;
  for (const auto& v : j["dims"]) {
    if (!v.is_number_integer() || v.get<long>() < 1) {
      throw std::invalid_argument("state JSON: field \"dims\" must hold positive integers");
    }
    out.dims.push_back(v.get<int>());
  }
  long d = total_dim(out.dims);
  auto read_part = [&](const char* name) {
    if (!j.contains(name) || !j[name].is_array()) {
      throw std::invalid_argument(std::string("state JSON: missing or non-array field \"") + name + "\"");
    }
    const auto& rows = j[name];
    if (static_cast<long>(rows.size()) != d) {
      throw std::invalid_argument(std::string("state JSON: field \"") + name + "\" row count does not match dims");
    }
    Eigen::MatrixXd part(d, d);
    for (long i = 0; i < d; ++i) {
      const auto& row = rows[i];
      if (!row.is_array() || static_cast<long>(row.size()) != d) {
        throw std::invalid_argument(std::string("state JSON: field \"") + name + "\" column count does not match dims");
      }
      for (long jj = 0; jj < d; ++jj) {
        if (!row[jj].is_number()) {
          throw std::invalid_argument(std::string("state JSON: field \"") + name + "\" holds a non-numeric entry");
        }
        part(i, jj) = row[jj].get<double>();
      }
    }
    return part;
  };
  Eigen::MatrixXd re = read_part("re");
  Eigen::MatrixXd im = read_part("im");
  out.matrix = re.cast<std::complex<double>>() +
               std::complex<double>(0, 1) * im.cast<std::complex<double>>();
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string matrix_digest(const CMat& m) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  };
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      feed(m(i, j).real());
      feed(m(i, j).imag());
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace minent
