#pragma once

#include <filesystem>
#include <string>

#include "multiunit/tensor_core.hpp"

namespace multiunit {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense matrix file format: line "d,<d>", header "p,s,re,im", then one row per
// nonzero entry with 1-based indices p = j+d(i-1), s = l+d(k-1), written with
// 17 significant digits.
std::string matrix_to_csv(const BipartiteOperator& u);
BipartiteOperator matrix_from_csv(const std::string& text);

void write_matrix_csv(const std::filesystem::path& path, const BipartiteOperator& u);
BipartiteOperator read_matrix_csv(const std::filesystem::path& path);

}  // namespace multiunit
