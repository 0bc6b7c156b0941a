// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "fograil/kernels.hpp"

using fograil::kernels::Backend;

namespace {

fograil::kernels::Geometry geo() { return {55.5556, 100.0, 20.0, 0.8, 2.0, 1.0}; }

std::vector<double> times(std::size_t m) {
  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) t[i] = 14.4 * static_cast<double>(i + 1) / m;
  return t;
}

void BM_ChannelGains(benchmark::State& st, Backend b) {
  const auto t = times(static_cast<std::size_t>(st.range(0)));
  std::vector<double> out(t.size());
  for (auto _ : st) {
    fograil::kernels::channel_gains(geo(), 800.0, t, out, b);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_ServingPrices(benchmark::State& st, Backend b) {
  const std::size_t m = static_cast<std::size_t>(st.range(0));
  const auto t = times(m);
  std::vector<double> kappa(2 * m);
  fograil::kernels::channel_gains(geo(), -200.0, t, std::span(kappa).first(m), Backend::Serial);
  fograil::kernels::channel_gains(geo(), 800.0, t, std::span(kappa).last(m), Backend::Serial);
  const std::vector<double> unit{1.0, 1.4};
  std::vector<double> price(m);
  std::vector<std::uint32_t> server(m);
  for (auto _ : st) {
    fograil::kernels::serving_prices(kappa, 2, unit, price, server, b);
    benchmark::DoNotOptimize(price.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_WaterfillRates(benchmark::State& st, Backend b) {
  const std::size_t m = static_cast<std::size_t>(st.range(0));
  std::vector<double> price(m), snr(m), rate(m);
  for (std::size_t i = 0; i < m; ++i) price[i] = 1.0 + std::sin(0.001 * static_cast<double>(i));
  for (auto _ : st) {
    fograil::kernels::waterfill_snr(price, 3.0, 0.15, snr, b);
    fograil::kernels::log_rates(snr, 5.0, rate, b);
    benchmark::DoNotOptimize(rate.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_ChannelGains, serial, Backend::Serial)->Range(512, 1 << 20);
BENCHMARK_CAPTURE(BM_ChannelGains, openmp, Backend::OpenMP)->Range(512, 1 << 20);
BENCHMARK_CAPTURE(BM_ServingPrices, serial, Backend::Serial)->Range(512, 1 << 20);
BENCHMARK_CAPTURE(BM_ServingPrices, openmp, Backend::OpenMP)->Range(512, 1 << 20);
BENCHMARK_CAPTURE(BM_WaterfillRates, serial, Backend::Serial)->Range(512, 1 << 20);
BENCHMARK_CAPTURE(BM_WaterfillRates, openmp, Backend::OpenMP)->Range(512, 1 << 20);

BENCHMARK_MAIN();
