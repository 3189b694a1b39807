#include "srdti/gradient_table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace srdti {

namespace {

std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("gradient table: cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::vector<double> vals;
    std::string tok;
    while (ss >> tok) {
      try {
        size_t used = 0;
        double x = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        vals.push_back(x);
      } catch (const std::exception&) {
        throw Error("gradient table: unparseable value '" + tok + "' at " +
                    path + " line " + std::to_string(lineno));
      }
    }
    if (!vals.empty()) rows.push_back(std::move(vals));
  }
  return rows;
}

}  // namespace

GradientTableReadResult read_gradient_table(const std::string& bvecs_path,
                                            const std::string& bvals_path) {
  auto vec_rows = read_rows(bvecs_path);
  auto val_rows = read_rows(bvals_path);

  if (vec_rows.size() != 3)
    throw Error("gradient table: " + bvecs_path + " has " +
                std::to_string(vec_rows.size()) + " rows, expected 3");
  if (val_rows.size() != 1)
    throw Error("gradient table: " + bvals_path + " has " +
                std::to_string(val_rows.size()) + " rows, expected 1");

  size_t n = vec_rows[0].size();
  for (int r = 1; r < 3; ++r)
    if (vec_rows[r].size() != n)
      throw Error("gradient table: " + bvecs_path + " row " +
                  std::to_string(r + 1) + " has " +
                  std::to_string(vec_rows[r].size()) + " columns, expected " +
                  std::to_string(n));
  if (val_rows[0].size() != n)
    throw Error("gradient table: " + bvals_path + " has " +
                std::to_string(val_rows[0].size()) + " values but " +
                bvecs_path + " has " + std::to_string(n) + " columns");

  GradientTableReadResult res;
  for (size_t i = 0; i < n; ++i) {
    std::array<double, 3> g = {vec_rows[0][i], vec_rows[1][i], vec_rows[2][i]};
    double b_ms_um2 = val_rows[0][i] / 1000.0;  // s/mm^2 -> ms/um^2
    double norm = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    if (norm == 0.0) {
      if (b_ms_um2 != 0.0)
        throw Error("gradient table: zero direction with b != 0 at column " +
                    std::to_string(i + 1));
    } else {
      if (std::abs(norm - 1.0) > 1e-6)
        res.warnings.push_back("column " + std::to_string(i + 1) +
                               ": direction normalized (|g| was " +
                               std::to_string(norm) + ")");
      for (auto& c : g) c /= norm;
    }
    res.table.directions.push_back(g);
    res.table.bvalues.push_back(b_ms_um2);
  }
  res.table.validate();
  return res;
}

void write_gradient_table(const std::string& bvecs_path,
                          const std::string& bvals_path,
                          const GradientTable& table) {
  table.validate();
  std::ofstream fv(bvecs_path, std::ios::trunc);
  if (!fv) throw Error("gradient table: cannot open " + bvecs_path);
  char buf[64];
  for (int r = 0; r < 3; ++r) {
    for (size_t i = 0; i < table.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", table.directions[i][r]);
      fv << (i ? " " : "") << buf;
    }
    fv << "\n";
  }
  std::ofstream fb(bvals_path, std::ios::trunc);
  if (!fb) throw Error("gradient table: cannot open " + bvals_path);
  for (size_t i = 0; i < table.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", table.bvalues[i] * 1000.0);
    fb << (i ? " " : "") << buf;
  }
  fb << "\n";
}

}  // namespace srdti
