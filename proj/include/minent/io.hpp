#pragma once

#include <string>

#include "minent/matrix.hpp"

namespace minent {

struct StateFile {
  CMat matrix;
  std::vector<int> dims;
};

// Formats with %.*g; 17 significant digits round-trips doubles exactly.
std::string fmt_g(double x, int digits = 17);

// {"dims": [...], "re": [[...]], "im": [[...]]}, row-major, 17 digits.
std::string matrix_to_json(const CMat& m, const std::vector<int>& dims);
StateFile matrix_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// FNV-1a 64-bit over the little-endian bytes of the matrix entries, as a
// reproducibility digest for reports.
std::string matrix_digest(const CMat& m);

}  // namespace minent
