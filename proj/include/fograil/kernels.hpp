#pragma once

// Elementwise kernels over grid samples. Each comes in a serial reference
// form and an OpenMP form; both produce bit-identical output because no
// kernel reduces across samples.

#include <cstddef>
#include <cstdint>
#include <span>

namespace fograil::kernels {

enum class Backend { Serial, OpenMP };

/// OpenMP when the library was built with it, otherwise Serial.
Backend default_backend();
bool openmp_available();

struct Geometry {
  double speed_mps;
  double road_offset_m;
  double height_m;
  double alpha;
  double gain;
  double sigma2;
};

/// kappa(t) = G / (d(t)^alpha sigma2) for one RRH at abscissa rrh_x.
void channel_gains(const Geometry& geo, double rrh_x, std::span<const double> times,
                   std::span<double> out, Backend backend = default_backend());

/// For each sample m, the cheapest SNR price min_n unit_price[n] / kappa[n*M + m]
/// and its argmin (ties go to the lower index).
void serving_prices(std::span<const double> kappa, std::size_t n_rrh,
                    std::span<const double> unit_price, std::span<double> price_out,
                    std::span<std::uint32_t> server_out,
                    Backend backend = default_backend());

/// snr[m] = max(floor, level / price[m] - 1).
void waterfill_snr(std::span<const double> price, double level, double floor,
                   std::span<double> snr_out, Backend backend = default_backend());

/// out[m] = bandwidth * log2(1 + snr[m]).
void log_rates(std::span<const double> snr, double bandwidth, std::span<double> out,
               Backend backend = default_backend());

}  // namespace fograil::kernels
