#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <string>

#include <json.hpp>

#include "qflag/uqgl.hpp"

namespace qflag {

inline constexpr int kCacheFormatVersion = 1;

// Versioned JSON document: labels, weights, dense generator matrices row-major, q,
// tolerances, and a CRC-32 of the payload.
nlohmann::json irrep_to_json(const Irrep& rep);

// Throws std::runtime_error on a version or checksum mismatch.
Irrep irrep_from_json(const nlohmann::json& doc);

// q printed with 12 significant digits.
std::string cache_q_label(double q);

// Directory from QFLAG_CACHE_DIR, or empty.
std::filesystem::path default_cache_dir();

// On-disk store of GT irreps keyed by (format version, n, highest weight, q). Reads take a
// shared flock, writes an exclusive one; corrupt entries are rebuilt and rewritten.
class IrrepCache {
 public:
  explicit IrrepCache(std::filesystem::path dir);

  std::filesystem::path entry_path(const Weight& lambda, double q) const;
  std::shared_ptr<const Irrep> get(const Weight& lambda, const QContext& ctx);

  int hits() const { return hits_; }
  int rebuilds() const { return rebuilds_; }

 private:
  std::filesystem::path dir_;
  std::atomic<int> hits_{0};
  std::atomic<int> rebuilds_{0};
};

}  // namespace qflag
