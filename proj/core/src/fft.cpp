#include "hnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace hnls::fft {

namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Planning is not thread safe in FFTW; executing a plan on new arrays is.
// FFTW_UNALIGNED keeps std::vector buffers valid for execution.
const PlanPair& plans_for(std::size_t n) {
  static std::map<std::size_t, PlanPair> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<cplx> a(n), b(n);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(static_cast<int>(n), pa, pb, FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_1d(static_cast<int>(n), pa, pb, FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (p.fwd == nullptr || p.bwd == nullptr) throw std::runtime_error("fft: planning failed");
  return cache.emplace(n, p).first->second;
}

void run(fftw_plan plan, const std::vector<cplx>& in, std::vector<cplx>& out) {
  const std::size_t n = in.size();
  out.resize(n);
  // FFTW wants a non-const input pointer; the transform does not write to it
  // for out-of-place plans.
  auto* pi = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* po = reinterpret_cast<fftw_complex*>(out.data());
  if (pi == po) {
    std::vector<cplx> tmp(in);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()), po);
  } else {
    fftw_execute_dft(plan, pi, po);
  }
}

}  // namespace

void forward(const std::vector<cplx>& in, std::vector<cplx>& out) {
  run(plans_for(in.size()).fwd, in, out);
}

void inverse(const std::vector<cplx>& in, std::vector<cplx>& out) {
  run(plans_for(in.size()).bwd, in, out);
  const double inv_n = 1.0 / static_cast<double>(in.size());
  for (cplx& v : out) v *= inv_n;
}

std::vector<cplx> forward(const std::vector<cplx>& in) {
  std::vector<cplx> out;
  forward(in, out);
  return out;
}

std::vector<cplx> inverse(const std::vector<cplx>& in) {
  std::vector<cplx> out;
  inverse(in, out);
  return out;
}

}  // namespace hnls::fft
