#include "fograil/caching.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fograil/errors.hpp"

namespace fograil {

Popularity zipf(std::size_t num_contents, double eta) {
  if (num_contents == 0) throw DomainError("zipf: need at least one content");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw DomainError("zipf: eta must be >= 0");
  Popularity pop;
  pop.eta = eta;
  pop.p.resize(num_contents);
  for (std::size_t l = 0; l < num_contents; ++l) {
    pop.p[l] = std::pow(static_cast<double>(l + 1), -eta);
  }
  // Sum smallest terms first.
  double total = 0.0;
  for (std::size_t l = num_contents; l-- > 0;) total += pop.p[l];
  for (double& v : pop.p) v /= total;
  return pop;
}

bool CachePlacement::within_storage() const {
  for (std::size_t n = 0; n < c.size(); ++n) {
    const auto count = std::count(c[n].begin(), c[n].end(), std::uint8_t{1});
    const double cap = n < storage.size() ? storage[n] : 0.0;
    if (static_cast<double>(count) * content_size > cap + 1e-12) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> CachePlacement::cached_indices() const {
  std::vector<std::vector<std::size_t>> out(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) {
    for (std::size_t l = 0; l < c[n].size(); ++l) {
      if (c[n][l]) out[n].push_back(l + 1);
    }
  }
  return out;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::PopC: return "PopC";
    case Strategy::RndC: return "RndC";
    case Strategy::NonC: return "NonC";
  }
  return "?";
}

Strategy parse_strategy(const std::string& s) {
  std::string low(s);
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (low == "popc") return Strategy::PopC;
  if (low == "rndc") return Strategy::RndC;
  if (low == "nonc") return Strategy::NonC;
  throw DomainError("unknown caching strategy: " + s);
}

namespace {

std::size_t slots(double storage, double content_size, std::size_t L) {
  if (!(content_size > 0.0)) throw DomainError("content_size must be positive");
  if (!(storage >= 0.0)) throw DomainError("storage must be nonnegative");
  const double k = std::floor(storage / content_size + 1e-12);
  return std::min(L, static_cast<std::size_t>(k));
}

CachePlacement empty_placement(std::span<const double> storage, double content_size,
                               std::size_t L) {
  CachePlacement pl;
  pl.c.assign(storage.size(), std::vector<std::uint8_t>(L, 0));
  pl.storage.assign(storage.begin(), storage.end());
  pl.content_size = content_size;
  return pl;
}

}  // namespace

CachePlacement place_popc(const Popularity& pop, std::span<const double> storage,
                          double content_size) {
  const std::size_t L = pop.size();
  auto pl = empty_placement(storage, content_size, L);
  // Stable order by popularity; identical to 1..k for a Zipf vector.
  std::vector<std::size_t> order(L);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pop.p[a] > pop.p[b]; });
  for (std::size_t n = 0; n < storage.size(); ++n) {
    const std::size_t k = slots(storage[n], content_size, L);
    for (std::size_t i = 0; i < k; ++i) pl.c[n][order[i]] = 1;
  }
  return pl;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw DomainError("uniform_below: bound must be positive");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

CachePlacement place_rndc(const Popularity& pop, std::span<const double> storage,
                          double content_size, std::uint64_t seed) {
  const std::size_t L = pop.size();
  auto pl = empty_placement(storage, content_size, L);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> deck(L);
  for (std::size_t n = 0; n < storage.size(); ++n) {
    const std::size_t k = slots(storage[n], content_size, L);
    std::iota(deck.begin(), deck.end(), std::size_t{0});
    // Partial Fisher-Yates: the first k cards are a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(uniform_below(rng, L - i));
      std::swap(deck[i], deck[j]);
      pl.c[n][deck[i]] = 1;
    }
  }
  return pl;
}

CachePlacement place_nonc(std::size_t n_rrh, std::size_t num_contents) {
  std::vector<double> zero(n_rrh, 0.0);
  return empty_placement(zero, 1.0, num_contents);
}

std::size_t sample_request(const Popularity& pop, std::uint64_t seed) {
  if (pop.p.empty()) throw DomainError("sample_request: empty popularity");
  std::mt19937_64 rng(seed);
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double acc = 0.0;
  for (std::size_t l = 0; l < pop.size(); ++l) {
    acc += pop.p[l];
    if (u < acc) return l;
  }
  return pop.size() - 1;
}

void to_json(nlohmann::json& j, const CachePlacement& p) { j = p.cached_indices(); }

CachePlacement placement_from_json(const nlohmann::json& j, std::size_t num_contents) {
  if (!j.is_array()) throw DomainError("placement JSON must be an array per RRH");
  CachePlacement pl;
  pl.c.assign(j.size(), std::vector<std::uint8_t>(num_contents, 0));
  pl.storage.assign(j.size(), 0.0);
  for (std::size_t n = 0; n < j.size(); ++n) {
    for (const auto& v : j[n]) {
      const auto l = v.get<std::size_t>();
      if (l < 1 || l > num_contents) {
        throw DomainError("placement: content index out of range: " + std::to_string(l));
      }
      pl.c[n][l - 1] = 1;
    }
    pl.storage[n] = static_cast<double>(std::count(pl.c[n].begin(), pl.c[n].end(), 1));
  }
  return pl;
}

}  // namespace fograil
