#include "hnls/trajectory_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hnls/series.hpp"

namespace hnls {

namespace {

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("trajectory load: truncated stream");
  return v;
}

}  // namespace

void save_trajectory_binary(std::ostream& os, const Trajectory& traj) {
  const std::uint64_t n = traj.initial().size();
  const std::uint64_t count = traj.size();
  put(os, n);
  put(os, traj.initial().grid->half_width);
  put(os, count);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    put(os, traj.times[i]);
    for (const cplx& v : traj.states[i].values) {
      put(os, v.real());
      put(os, v.imag());
    }
  }
  if (!os) throw std::runtime_error("trajectory save: write failed");
}

void save_trajectory_binary(const std::string& path, const Trajectory& traj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("trajectory save: cannot open " + path);
  save_trajectory_binary(os, traj);
}

Trajectory load_trajectory_binary(std::istream& is) {
  const std::uint64_t n = get<std::uint64_t>(is);
  const double half_width = get<double>(is);
  const std::uint64_t count = get<std::uint64_t>(is);
  if (n < 8 || !is_power_of_two(n)) throw std::runtime_error("trajectory load: bad header");

  Trajectory traj;
  GridPtr grid = make_grid(half_width, n);
  for (std::uint64_t i = 0; i < count; ++i) {
    traj.times.push_back(get<double>(is));
    Field f = make_field(grid);
    for (std::uint64_t j = 0; j < n; ++j) {
      const double re = get<double>(is);
      const double im = get<double>(is);
      f.values[j] = cplx{re, im};
    }
    traj.states.push_back(std::move(f));
  }
  return traj;
}

Trajectory load_trajectory_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("trajectory load: cannot open " + path);
  return load_trajectory_binary(is);
}

void save_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x,re,im\n";
  char buf[160];
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Field& f = traj.states[i];
    for (std::size_t j = 0; j < f.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", traj.times[i],
                    f.grid->nodes[j], f.values[j].real(), f.values[j].imag());
      os << buf;
    }
  }
}

void save_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("trajectory save: cannot open " + path);
  save_trajectory_csv(os, traj);
}

double ResidualSeries::max_abs_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, std::abs(r));
  return m;
}

void write_series_csv(std::ostream& os, const ResidualSeries& series) {
  os << "t,lhs,rhs,residual\n";
  char buf[160];
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", series.times[i], series.lhs[i],
                  series.rhs[i], series.residuals[i]);
    os << buf;
  }
}

}  // namespace hnls
