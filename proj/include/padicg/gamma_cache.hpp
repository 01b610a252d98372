#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace padicg {

/// Checkpointed Gamma_p residues for one (p, M) key.
struct GammaRecord {
  std::uint64_t p = 0;
  int M = 0;
  std::vector<std::uint64_t> reps;      // ascending
  std::vector<std::uint64_t> residues;  // Gamma_p(reps[i]) mod p^M

  /// FNV-1a over the decimal serialization of every field.
  std::string checksum() const;
  nlohmann::json to_json() const;
  /// Throws std::runtime_error on a malformed document or checksum mismatch.
  static GammaRecord from_json(const nlohmann::json& doc);
};

/// Reuses gamma sweeps keyed by (p, M), in memory and optionally on disk
/// under `dir` as gamma_p<p>_M<M>.json. A request is a hit when every
/// requested representative is already recorded; otherwise the union is
/// swept and stored. Unreadable or corrupt files are recomputed and
/// overwritten after a warning.
class GammaCache {
 public:
  using WarnFn = std::function<void(const std::string&)>;

  GammaCache() = default;
  explicit GammaCache(std::filesystem::path dir, WarnFn warn = {});

  std::vector<std::uint64_t> lookup(std::uint64_t p, int M,
                                    std::span<const std::uint64_t> sorted_reps,
                                    unsigned workers = 1);

  std::filesystem::path file_for(std::uint64_t p, int M) const;
  const std::optional<std::filesystem::path>& dir() const { return dir_; }

  std::size_t hits() const { return hits_; }
  std::size_t sweeps() const { return sweeps_; }

 private:
  std::optional<GammaRecord> load(std::uint64_t p, int M);
  void store(const GammaRecord& rec) const;
  void warn(const std::string& msg) const;

  std::optional<std::filesystem::path> dir_;
  WarnFn warn_;
  std::mutex mu_;
  std::map<std::pair<std::uint64_t, int>, std::map<std::uint64_t, std::uint64_t>> memory_;
  std::size_t hits_ = 0;
  std::size_t sweeps_ = 0;
};

}  // namespace padicg
