#include "multiunit/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace multiunit {

std::string matrix_to_csv(const BipartiteOperator& u) {
  std::ostringstream out;
  out << "d," << u.d << "\n";
  out << "p,s,re,im\n";
  char buf[128];
  const int n = u.order();
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < n; ++s) {
      const cxd z = u.m(p, s);
      if (z == cxd{0.0, 0.0}) continue;
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", p + 1, s + 1,
                    z.real(), z.imag());
      out << buf;
    }
  return out.str();
}

BipartiteOperator matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("d,", 0) != 0)
    throw IoError("matrix csv: missing 'd,<dim>' header line");
  int d = 0;
  try {
    d = std::stoi(line.substr(2));
  } catch (const std::exception&) {
    throw IoError("matrix csv: bad dimension field");
  }
  if (d < 1 || d > 64) throw IoError("matrix csv: dimension out of range");
  if (!std::getline(in, line) || line.rfind("p,s,re,im", 0) != 0)
    throw IoError("matrix csv: missing 'p,s,re,im' header line");

  const int n = d * d;
  Matrix m = Matrix::Zero(n, n);
  int lineno = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    int p = 0, s = 0;
    double re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &p, &s, &re, &im) != 4)
      throw IoError("matrix csv: bad row at line " + std::to_string(lineno));
    if (p < 1 || p > n || s < 1 || s > n)
      throw IoError("matrix csv: index out of range at line " + std::to_string(lineno));
    if (!std::isfinite(re) || !std::isfinite(im))
      throw IoError("matrix csv: non-finite entry at line " + std::to_string(lineno));
    m(p - 1, s - 1) = cxd{re, im};
  }
  return {d, std::move(m)};
}

void write_matrix_csv(const std::filesystem::path& path, const BipartiteOperator& u) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  f << matrix_to_csv(u);
  if (!f) throw IoError("write failed: " + path.string());
}

BipartiteOperator read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open: " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return matrix_from_csv(ss.str());
}

}  // namespace multiunit
