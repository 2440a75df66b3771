#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hnls {

/// Time series of one identity check: residual = lhs - rhs per snapshot.
struct ResidualSeries {
  std::string name;
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> residuals;

  double max_abs_residual() const;
};

/// Columns t,lhs,rhs,residual with 17 significant digits.
void write_series_csv(std::ostream& os, const ResidualSeries& series);

}  // namespace hnls
