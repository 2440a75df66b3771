#include "hnls/weights.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hnls/quadrature.hpp"

namespace hnls {

namespace {

// exp(-1/s) and scaled derivatives; all vanish to every order at s -> 0+.
double bump_b(double s) { return (s <= 0.0) ? 0.0 : std::exp(-1.0 / s); }

// B^(k)(s) = B(s) * p_k(1/s), p_1 = t^2, p_2 = t^4 - 2 t^3, p_3 = t^6 - 6 t^5 + 6 t^4.
double bump_b_deriv(double s, int k) {
  if (s <= 0.0) return 0.0;
  const double b = std::exp(-1.0 / s);
  if (b == 0.0) return 0.0;
  const double t = 1.0 / s;
  switch (k) {
    case 0: return b;
    case 1: return b * t * t;
    case 2: return b * (t * t * t * t - 2.0 * t * t * t);
    case 3: return b * t * t * t * t * (t * t - 6.0 * t + 6.0);
    default: throw std::invalid_argument("bump_b_deriv: order out of range");
  }
}

}  // namespace

double eval_eta(double x) { return eta_derivative(x, 0); }

double eta_derivative(double x, int order) {
  if (order < 0 || order > 3) throw std::invalid_argument("eta_derivative: order out of range");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return (order == 0) ? 1.0 : 0.0;

  const double B = bump_b(x);
  const double C = bump_b(1.0 - x);
  const double D = B + C;
  if (order == 0) return B / D;

  const double B1 = bump_b_deriv(x, 1), B2 = bump_b_deriv(x, 2), B3 = bump_b_deriv(x, 3);
  const double C1 = -bump_b_deriv(1.0 - x, 1);
  const double C2 = bump_b_deriv(1.0 - x, 2);
  const double C3 = -bump_b_deriv(1.0 - x, 3);
  const double D1 = B1 + C1, D2 = B2 + C2, D3 = B3 + C3;

  if (order == 1) return (B1 * D - B * D1) / (D * D);
  if (order == 2) {
    return (B2 * D * D - D * (B * D2 + 2.0 * B1 * D1) + 2.0 * B * D1 * D1) / (D * D * D);
  }
  return (B3 * D * D * D - D * D * (B * D3 + 3.0 * B1 * D2 + 3.0 * B2 * D1) +
          6.0 * D * D1 * (B * D2 + B1 * D1) - 6.0 * B * D1 * D1 * D1) /
         (D * D * D * D);
}

namespace detail {

// Left branch e^{2 eps x} and right branch (1+x)^{2 alpha} (alpha > 0) or
// 2 - 1/ln(x+e) (alpha = 0), with derivatives up to order 3.
struct Branches {
  double alpha = 0.0;
  double eps = 1.0;

  double left(double x, int k) const {
    const double f = std::pow(2.0 * eps, k) * std::exp(2.0 * eps * x);
    return f;
  }

  double right(double x, int k) const {
    if (alpha > 0.0) {
      double coef = 1.0;
      for (int j = 0; j < k; ++j) coef *= (2.0 * alpha - j);
      return coef * std::pow(1.0 + x, 2.0 * alpha - k);
    }
    const double w = std::log(x + M_E);
    const double s = 1.0 / (x + M_E);
    switch (k) {
      case 0: return 2.0 - 1.0 / w;
      case 1: return s / (w * w);
      case 2: return -s * s * (w + 2.0) / (w * w * w);
      case 3: return 2.0 * s * s * s * (w * w + 3.0 * w + 3.0) / (w * w * w * w);
      default: break;
    }
    throw std::invalid_argument("Branches::right: order out of range");
  }
};

// C-infinity strictly increasing join on (-1, 0). Its derivative is
//   h(x) = L'(x) (1 - eta((x+1)/w)) + R'(x) eta((x+w)/w) + c beta(x),
// beta(x) = eta((x+1)/w) eta(-x/w), with the window w shrunk until the
// end-window mass leaves room for a nonnegative bump coefficient c that
// makes the total rise exact. All endpoint derivatives then match the
// branches to every order.
struct RhoBlend {
  Branches br;
  double window = 0.45;
  double bump_coef = 0.0;
  std::vector<double> cum;  // cumulative integral of h from -1 on a uniform grid
  int table_n = 2048;

  double h(double x) const {
    const double w = window;
    const double t_left = 1.0 - eval_eta((x + 1.0) / w);
    const double t_right = eval_eta((x + w) / w);
    const double beta = eval_eta((x + 1.0) / w) * eval_eta(-x / w);
    // branch derivatives may diverge at the far end of the interval where
    // their cut-off factor vanishes; skip them there
    double out = bump_coef * beta;
    if (t_left > 0.0) out += br.left(x, 1) * t_left;
    if (t_right > 0.0) out += br.right(x, 1) * t_right;
    return out;
  }

  double h_deriv(double x, int k) const {  // k = 1 or 2
    const double w = window;
    const double a = (x + 1.0) / w;
    const double b = (x + w) / w;
    const double g = -x / w;
    const double ea = eval_eta(a), eg = eval_eta(g);
    const double ea1 = eta_derivative(a, 1) / w, eb1 = eta_derivative(b, 1) / w,
                 eg1 = -eta_derivative(g, 1) / w;
    const double tl = 1.0 - ea;
    const double tr = eval_eta(b);
    if (k == 1) {
      const double dbeta = ea1 * eg + ea * eg1;
      double out = bump_coef * dbeta;
      if (tl > 0.0 || ea1 != 0.0) out += br.left(x, 2) * tl - br.left(x, 1) * ea1;
      if (tr > 0.0 || eb1 != 0.0) out += br.right(x, 2) * tr + br.right(x, 1) * eb1;
      return out;
    }
    const double ea2 = eta_derivative(a, 2) / (w * w), eb2 = eta_derivative(b, 2) / (w * w),
                 eg2 = eta_derivative(g, 2) / (w * w);
    const double d2beta = ea2 * eg + 2.0 * ea1 * eg1 + ea * eg2;
    double out = bump_coef * d2beta;
    if (tl > 0.0 || ea1 != 0.0 || ea2 != 0.0) {
      out += br.left(x, 3) * tl - 2.0 * br.left(x, 2) * ea1 - br.left(x, 1) * ea2;
    }
    if (tr > 0.0 || eb1 != 0.0 || eb2 != 0.0) {
      out += br.right(x, 3) * tr + 2.0 * br.right(x, 2) * eb1 + br.right(x, 1) * eb2;
    }
    return out;
  }

  double value(double x) const {
    const double lo = -1.0, hi = 0.0;
    const double step = (hi - lo) / table_n;
    int i = static_cast<int>(std::floor((x - lo) / step));
    if (i < 0) i = 0;
    if (i >= table_n) i = table_n - 1;
    const double xi = lo + i * step;
    const auto& rule = quad::gauss_legendre(5);
    const double mid = 0.5 * (xi + x), hal = 0.5 * (x - xi);
    double local = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      local += static_cast<double>(rule.weights[q]) *
               h(mid + hal * static_cast<double>(rule.nodes[q]));
    }
    return br.left(-1.0, 0) + cum[i] + hal * local;
  }
};

}  // namespace detail

namespace {

std::shared_ptr<const detail::RhoBlend> build_blend(double alpha, double eps) {
  auto blend = std::make_shared<detail::RhoBlend>();
  blend->br.alpha = alpha;
  blend->br.eps = eps;

  const double rise = 1.0 - std::exp(-2.0 * eps);  // rho(0) = 1 on both branches
  double w = 0.45;
  double base_mass = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    blend->window = w;
    blend->bump_coef = 0.0;
    base_mass = quad::integrate_real([&blend](double x) { return blend->h(x); }, -1.0, 0.0,
                                     1e-14, 1e-12);
    if (base_mass <= 0.9 * rise) break;
    w *= 0.5;
    if (w < 1e-8) throw std::runtime_error("weights: blend window collapsed");
  }
  blend->window = w;
  blend->bump_coef = 0.0;
  const double beta_mass = quad::integrate_real(
      [&blend, w](double x) { return eval_eta((x + 1.0) / w) * eval_eta(-x / w); }, -1.0, 0.0,
      1e-14, 1e-12);
  blend->bump_coef = (rise - base_mass) / beta_mass;

  // cumulative table for value()
  blend->cum.assign(blend->table_n + 1, 0.0);
  const double step = 1.0 / blend->table_n;
  const auto& rule = quad::gauss_legendre(7);
  for (int i = 0; i < blend->table_n; ++i) {
    const double a = -1.0 + i * step, b = a + step;
    const double mid = 0.5 * (a + b), hal = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      s += static_cast<double>(rule.weights[q]) *
           blend->h(mid + hal * static_cast<double>(rule.nodes[q]));
    }
    blend->cum[i + 1] = blend->cum[i] + hal * s;
  }
  return blend;
}

std::shared_ptr<const detail::RhoBlend> blend_for(double alpha, double eps) {
  static std::map<std::pair<double, double>, std::shared_ptr<const detail::RhoBlend>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(alpha, eps);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_blend(alpha, eps)).first;
  return it->second;
}

void check_spec(const WeightSpec& spec) {
  if (!(spec.eps > 0.0)) throw std::invalid_argument("WeightSpec: eps must be positive");
  if (spec.alpha < 0.0) throw std::invalid_argument("WeightSpec: alpha must be >= 0");
  if (spec.truncation_r && !(*spec.truncation_r > 0.0)) {
    throw std::invalid_argument("WeightSpec: truncation_r must be positive");
  }
}

}  // namespace

Weight::Weight(const WeightSpec& spec) : spec_(spec) {
  check_spec(spec);
  blend_ = blend_for(spec.alpha, spec.eps);
}

double Weight::rho_value(double x) const {
  if (x <= -1.0) return blend_->br.left(x, 0);
  if (x >= 0.0) return blend_->br.right(x, 0);
  return blend_->value(x);
}

double Weight::rho_derivative(double x, int order) const {
  if (order == 0) return rho_value(x);
  if (x <= -1.0) return blend_->br.left(x, order);
  if (x >= 0.0) return blend_->br.right(x, order);
  if (order == 1) return blend_->h(x);
  return blend_->h_deriv(x, order - 1);
}

double Weight::truncated_value(double x) const { return truncated_derivative(x, 0); }

// rho_r(x) = rho(x) eta(r+1-x) + rho(r+1) eta(x-r); equals rho for x <= r and
// the constant (2+r)^{2 alpha} level rho(r+1) for x >= r+1.
double Weight::truncated_derivative(double x, int order) const {
  const double r = *spec_.truncation_r;
  const double cap = rho_value(r + 1.0);
  if (x <= r) return rho_derivative(x, order);
  if (x >= r + 1.0) return (order == 0) ? cap : 0.0;
  double out = 0.0;
  // Leibniz on rho(x) * eta(r+1-x); d/dx eta(r+1-x) = -eta'(r+1-x).
  for (int j = 0; j <= order; ++j) {
    double binom = 1.0;
    for (int q = 0; q < j; ++q) binom = binom * (order - q) / (q + 1);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out += binom * rho_derivative(x, order - j) * sign * eta_derivative(r + 1.0 - x, j);
  }
  out += cap * eta_derivative(x - r, order);
  return out;
}

double Weight::value(double x) const {
  return spec_.truncation_r ? truncated_value(x) : rho_value(x);
}

double Weight::derivative(double x, int order) const {
  if (order < 0 || order > 3) throw std::invalid_argument("Weight::derivative: order 0..3");
  return spec_.truncation_r ? truncated_derivative(x, order) : rho_derivative(x, order);
}

std::vector<double> Weight::values_on(const Grid& grid) const {
  std::vector<double> out(grid.n_points);
  for (std::size_t j = 0; j < grid.n_points; ++j) out[j] = value(grid.nodes[j]);
  return out;
}

double eval_rho(const WeightSpec& spec, double x) {
  if (spec.truncation_r) throw std::invalid_argument("eval_rho: spec must not carry truncation_r");
  return Weight(spec).value(x);
}

double eval_rho_prime(const WeightSpec& spec, double x) {
  if (spec.truncation_r) {
    throw std::invalid_argument("eval_rho_prime: spec must not carry truncation_r");
  }
  return Weight(spec).derivative(x, 1);
}

double eval_rho_truncated(const WeightSpec& spec, double x) {
  if (!spec.truncation_r) throw std::invalid_argument("eval_rho_truncated: truncation_r required");
  return Weight(spec).value(x);
}

double weighted_norm_sq(const Field& u, const Weight& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    s += std::norm(u.values[j]) * w.value(u.grid->nodes[j]);
  }
  return s * u.grid->spacing;
}

double weighted_norm_sq(const Field& u, const WeightSpec& spec) {
  return weighted_norm_sq(u, Weight(spec));
}

double plus_part_weight(double x, double alpha) {
  const double xp = std::max(x, 0.0);
  return std::pow(1.0 + xp, 2.0 * alpha);
}

double weighted_norm_sq_plus(const Field& u, double alpha) {
  double s = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    s += std::norm(u.values[j]) * plus_part_weight(u.grid->nodes[j], alpha);
  }
  return s * u.grid->spacing;
}

}  // namespace hnls
