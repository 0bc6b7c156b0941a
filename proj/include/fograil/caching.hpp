#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace fograil {

/// Zipf popularity over contents 1..L (stored 0-based).
struct Popularity {
  double eta = 1.0;
  std::vector<double> p;

  std::size_t size() const { return p.size(); }
};

Popularity zipf(std::size_t num_contents, double eta);

/// c[n][l] = 1 when RRH n stores content l (both 0-based here; JSON and
/// the CLI use 1-based content numbers).
struct CachePlacement {
  std::vector<std::vector<std::uint8_t>> c;
  std::vector<double> storage;
  double content_size = 1.0;

  std::size_t num_rrh() const { return c.size(); }
  std::size_t num_contents() const { return c.empty() ? 0 : c.front().size(); }
  bool cached(std::size_t n, std::size_t l) const { return c[n][l] != 0; }
  bool within_storage() const;
  /// 1-based cached content numbers per RRH.
  std::vector<std::vector<std::size_t>> cached_indices() const;
};

enum class Strategy { PopC, RndC, NonC };

std::string to_string(Strategy s);
/// Accepts "popc", "rndc", "nonc" (any case).
Strategy parse_strategy(const std::string& s);

CachePlacement place_popc(const Popularity& pop, std::span<const double> storage,
                          double content_size);
CachePlacement place_rndc(const Popularity& pop, std::span<const double> storage,
                          double content_size, std::uint64_t seed);
CachePlacement place_nonc(std::size_t n_rrh, std::size_t num_contents);

/// 0-based content index drawn with probability p[l].
std::size_t sample_request(const Popularity& pop, std::uint64_t seed);

/// Unbiased integer in [0, bound) from a 64-bit engine (rejection sampling).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

void to_json(nlohmann::json& j, const CachePlacement& p);
/// Needs storage/content_size filled separately if the storage check matters.
CachePlacement placement_from_json(const nlohmann::json& j, std::size_t num_contents);

}  // namespace fograil
