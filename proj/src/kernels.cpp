#include "fograil/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fograil::kernels {

namespace {

#ifdef _OPENMP
constexpr bool kHaveOpenMP = true;
#else
constexpr bool kHaveOpenMP = false;
#endif

// Below this many samples the thread fork costs more than it saves.
constexpr std::ptrdiff_t kParallelMin = 512;

bool use_threads(Backend b, std::size_t n) {
  return kHaveOpenMP && b == Backend::OpenMP &&
         static_cast<std::ptrdiff_t>(n) >= kParallelMin;
}

inline double gain_at(const Geometry& g, double rrh_x, double t) {
  const double dx = g.speed_mps * t - rrh_x;
  const double d2 = dx * dx + g.road_offset_m * g.road_offset_m + g.height_m * g.height_m;
  return g.gain / (std::pow(d2, 0.5 * g.alpha) * g.sigma2);
}

void check(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Backend default_backend() { return kHaveOpenMP ? Backend::OpenMP : Backend::Serial; }
bool openmp_available() { return kHaveOpenMP; }

void channel_gains(const Geometry& geo, double rrh_x, std::span<const double> times,
                   std::span<double> out, Backend backend) {
  check(out.size() == times.size(), "channel_gains: size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(times.size());
  if (use_threads(backend, times.size())) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < n; ++m) out[m] = gain_at(geo, rrh_x, times[m]);
  } else {
    for (std::ptrdiff_t m = 0; m < n; ++m) out[m] = gain_at(geo, rrh_x, times[m]);
  }
}

void serving_prices(std::span<const double> kappa, std::size_t n_rrh,
                    std::span<const double> unit_price, std::span<double> price_out,
                    std::span<std::uint32_t> server_out, Backend backend) {
  const std::size_t M = price_out.size();
  check(n_rrh >= 1 && unit_price.size() == n_rrh && kappa.size() == n_rrh * M &&
            server_out.size() == M,
        "serving_prices: size mismatch");
  auto body = [&](std::size_t m) {
    double best = unit_price[0] / kappa[m];
    std::uint32_t arg = 0;
    for (std::size_t n = 1; n < n_rrh; ++n) {
      const double p = unit_price[n] / kappa[n * M + m];
      if (p < best) {
        best = p;
        arg = static_cast<std::uint32_t>(n);
      }
    }
    price_out[m] = best;
    server_out[m] = arg;
  };
  const auto n = static_cast<std::ptrdiff_t>(M);
  if (use_threads(backend, M)) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < n; ++m) body(static_cast<std::size_t>(m));
  } else {
    for (std::ptrdiff_t m = 0; m < n; ++m) body(static_cast<std::size_t>(m));
  }
}

void waterfill_snr(std::span<const double> price, double level, double floor,
                   std::span<double> snr_out, Backend backend) {
  check(price.size() == snr_out.size(), "waterfill_snr: size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(price.size());
  if (use_threads(backend, price.size())) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < n; ++m)
      snr_out[m] = std::max(floor, level / price[m] - 1.0);
  } else {
    for (std::ptrdiff_t m = 0; m < n; ++m)
      snr_out[m] = std::max(floor, level / price[m] - 1.0);
  }
}

void log_rates(std::span<const double> snr, double bandwidth, std::span<double> out,
               Backend backend) {
  check(snr.size() == out.size(), "log_rates: size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(snr.size());
  if (use_threads(backend, snr.size())) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < n; ++m) out[m] = bandwidth * std::log2(1.0 + snr[m]);
  } else {
    for (std::ptrdiff_t m = 0; m < n; ++m) out[m] = bandwidth * std::log2(1.0 + snr[m]);
  }
}

}  // namespace fograil::kernels
