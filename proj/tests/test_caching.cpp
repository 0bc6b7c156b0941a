#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fograil/caching.hpp"
#include "fograil/errors.hpp"

using namespace fograil;

TEST_CASE("zipf popularity") {
  const auto p = zipf(15, 1.0);
  double h = 0.0;
  for (int l = 1; l <= 15; ++l) h += 1.0 / l;
  CHECK(std::abs(p.p[0] - 1.0 / h) < 1e-12);
  CHECK(std::abs(p.p[0] - 0.30137) < 1e-4);
  double sum = 0.0;
  for (std::size_t l = 0; l < p.size(); ++l) {
    sum += p.p[l];
    if (l) CHECK(p.p[l] <= p.p[l - 1]);
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
  for (double v : zipf(15, 0.0).p) CHECK(v == doctest::Approx(1.0 / 15));
  CHECK(zipf(1, 2.0).p == std::vector<double>{1.0});
  CHECK_THROWS_AS(zipf(0, 1.0), DomainError);
}

TEST_CASE("PopC caches the most popular contents") {
  const auto pop = zipf(15, 1.0);
  const std::vector<double> f{5, 5};
  const auto pl = place_popc(pop, f, 1.0);
  for (std::size_t n = 0; n < 2; ++n) {
    for (std::size_t l = 0; l < 15; ++l) CHECK(pl.cached(n, l) == (l < 5));
  }
  CHECK(pl.cached_indices()[0] == std::vector<std::size_t>{1, 2, 3, 4, 5});
  const std::vector<double> none{0, 0}, all{15, 15};
  for (const auto& row : place_popc(pop, none, 1.0).c)
    for (auto v : row) CHECK(v == 0);
  for (const auto& row : place_popc(pop, all, 1.0).c)
    for (auto v : row) CHECK(v == 1);
}

TEST_CASE("PopC minimizes the expected miss rate by enumeration") {
  const auto pop = zipf(6, 0.8);
  const std::vector<double> f{3};
  const auto pl = place_popc(pop, f, 1.0);
  double popc_miss = 0.0;
  for (std::size_t l = 0; l < 6; ++l) popc_miss += pop.p[l] * (1 - pl.c[0][l]);
  double best = 1e9;
  for (unsigned mask = 0; mask < 64; ++mask) {
    if (__builtin_popcount(mask) > 3) continue;
    double miss = 0.0;
    for (std::size_t l = 0; l < 6; ++l) miss += pop.p[l] * ((mask >> l) & 1u ? 0 : 1);
    best = std::min(best, miss);
  }
  CHECK(popc_miss == doctest::Approx(best).epsilon(1e-14));
}

TEST_CASE("RndC determinism, storage and marginals") {
  const auto pop = zipf(15, 1.0);
  const std::vector<double> f{5, 5};
  const auto a = place_rndc(pop, f, 1.0, 42);
  const auto b = place_rndc(pop, f, 1.0, 42);
  CHECK(a.c == b.c);
  CHECK(a.within_storage());
  const std::vector<double> full{15, 15};
  for (const auto& row : place_rndc(pop, full, 1.0, 3).c)
    for (auto v : row) CHECK(v == 1);
  std::vector<double> freq(15, 0.0);
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) {
    const auto pl = place_rndc(pop, f, 1.0, static_cast<std::uint64_t>(s));
    for (std::size_t l = 0; l < 15; ++l) freq[l] += pl.c[0][l];
  }
  for (double v : freq) CHECK(std::abs(v / seeds - 5.0 / 15.0) < 0.02);
}

TEST_CASE("NonC and requests") {
  const auto pl = place_nonc(2, 15);
  for (const auto& row : pl.c)
    for (auto v : row) CHECK(v == 0);
  CHECK(pl.within_storage());
  CHECK(sample_request(zipf(1, 1.0), 9) == 0);
  CHECK(sample_request(zipf(15, 1.0), 5) == sample_request(zipf(15, 1.0), 5));
  const auto uni = zipf(10, 0.0);
  std::vector<double> count(10, 0.0);
  const int draws = 100000;
  for (int s = 0; s < draws; ++s) count[sample_request(uni, static_cast<std::uint64_t>(s))] += 1;
  for (double c : count) CHECK(std::abs(c / draws - 0.1) < 0.01);
}

TEST_CASE("strategy names and placement JSON") {
  CHECK(parse_strategy("PopC") == Strategy::PopC);
  CHECK(parse_strategy("rndc") == Strategy::RndC);
  CHECK_THROWS_AS(parse_strategy("lru"), DomainError);
  const auto pl = place_popc(zipf(15, 1.0), std::vector<double>{2, 3}, 1.0);
  nlohmann::json j = pl;
  CHECK(j.dump() == "[[1,2],[1,2,3]]");
  const auto back = placement_from_json(j, 15);
  CHECK(back.c == pl.c);
}
