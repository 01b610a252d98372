#include "padicg/gamma_cache.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "padicg/padic.hpp"

namespace padicg {

namespace {

std::uint64_t parse_u64(const nlohmann::json& v) {
  if (!v.is_string()) throw std::runtime_error("expected a decimal string");
  const std::string s = v.get<std::string>();
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::runtime_error("malformed decimal '" + s + "'");
  return std::stoull(s);
}

}  // namespace

std::string GammaRecord::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= ';';
    h *= 0x100000001b3ULL;
  };
  feed(std::to_string(p));
  feed(std::to_string(M));
  for (auto v : reps) feed(std::to_string(v));
  feed("|");
  for (auto v : residues) feed(std::to_string(v));
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

nlohmann::json GammaRecord::to_json() const {
  nlohmann::json doc;
  doc["p"] = std::to_string(p);
  doc["M"] = std::to_string(M);
  auto& jr = doc["reps"] = nlohmann::json::array();
  for (auto v : reps) jr.push_back(std::to_string(v));
  auto& jv = doc["residues"] = nlohmann::json::array();
  for (auto v : residues) jv.push_back(std::to_string(v));
  doc["checksum"] = checksum();
  return doc;
}

GammaRecord GammaRecord::from_json(const nlohmann::json& doc) {
  GammaRecord rec;
  try {
    rec.p = parse_u64(doc.at("p"));
    rec.M = static_cast<int>(parse_u64(doc.at("M")));
    for (const auto& v : doc.at("reps")) rec.reps.push_back(parse_u64(v));
    for (const auto& v : doc.at("residues")) rec.residues.push_back(parse_u64(v));
    if (rec.reps.size() != rec.residues.size())
      throw std::runtime_error("reps/residues length mismatch");
    if (!std::is_sorted(rec.reps.begin(), rec.reps.end()))
      throw std::runtime_error("reps not sorted");
    if (doc.at("checksum").get<std::string>() != rec.checksum())
      throw std::runtime_error("checksum mismatch");
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed gamma cache document: ") + e.what());
  }
  return rec;
}

GammaCache::GammaCache(std::filesystem::path dir, WarnFn warn)
    : dir_(std::move(dir)), warn_(std::move(warn)) {}

std::filesystem::path GammaCache::file_for(std::uint64_t p, int M) const {
  if (!dir_) throw std::logic_error("gamma cache has no directory");
  return *dir_ / ("gamma_p" + std::to_string(p) + "_M" + std::to_string(M) + ".json");
}

void GammaCache::warn(const std::string& msg) const {
  if (warn_) warn_(msg);
}

std::optional<GammaRecord> GammaCache::load(std::uint64_t p, int M) {
  if (!dir_) return std::nullopt;
  const auto path = file_for(p, M);
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    std::ifstream in(path);
    nlohmann::json doc = nlohmann::json::parse(in);
    GammaRecord rec = GammaRecord::from_json(doc);
    if (rec.p != p || rec.M != M) throw std::runtime_error("key mismatch");
    return rec;
  } catch (const std::exception& e) {
    warn("gamma cache " + path.string() + " is unusable (" + e.what() + "); recomputing");
    return std::nullopt;
  }
}

void GammaCache::store(const GammaRecord& rec) const {
  if (!dir_) return;
  std::filesystem::create_directories(*dir_);
  const auto path = file_for(rec.p, rec.M);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write gamma cache " + tmp);
    out << rec.to_json().dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::vector<std::uint64_t> GammaCache::lookup(std::uint64_t p, int M,
                                              std::span<const std::uint64_t> sorted_reps,
                                              unsigned workers) {
  std::lock_guard lock(mu_);
  const auto key = std::make_pair(p, M);
  auto& known = memory_[key];
  if (known.empty()) {
    if (auto rec = load(p, M))
      for (std::size_t i = 0; i < rec->reps.size(); ++i) known[rec->reps[i]] = rec->residues[i];
  }

  const bool hit = std::all_of(sorted_reps.begin(), sorted_reps.end(),
                               [&](std::uint64_t r) { return known.count(r) != 0; });
  if (hit) {
    ++hits_;
  } else {
    std::vector<std::uint64_t> all(sorted_reps.begin(), sorted_reps.end());
    for (const auto& kv : known) all.push_back(kv.first);
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    const auto values = gamma_sweep_reps(all, Modulus(p, M), workers);
    ++sweeps_;
    known.clear();
    GammaRecord rec{p, M, all, values};
    for (std::size_t i = 0; i < all.size(); ++i) known[all[i]] = values[i];
    store(rec);
  }

  std::vector<std::uint64_t> out;
  out.reserve(sorted_reps.size());
  for (auto r : sorted_reps) out.push_back(known.at(r));
  return out;
}

}  // namespace padicg
