#include "qflag/cache.hpp"

#include <boost/crc.hpp>
#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qflag/gtbasis.hpp"

namespace qflag {

namespace {

using nlohmann::json;

json dense_rows(const Sparse& m) {
  MatrixXd d(m);
  json rows = json::array();
  for (int r = 0; r < d.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < d.cols(); ++c) row.push_back(d(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Sparse sparse_from_rows(const json& rows, int dim) {
  MatrixXd d = MatrixXd::Zero(dim, dim);
  if (static_cast<int>(rows.size()) != dim) throw std::runtime_error("cache: matrix shape mismatch");
  for (int r = 0; r < dim; ++r) {
    if (static_cast<int>(rows[r].size()) != dim) throw std::runtime_error("cache: matrix shape mismatch");
    for (int c = 0; c < dim; ++c) d(r, c) = rows[r][c].get<double>();
  }
  return d.sparseView();
}

std::string checksum(const json& payload) {
  const std::string text = payload.dump();
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", crc.checksum());
  return buf;
}

// RAII flock on a sidecar lock file.
class FileLock {
 public:
  FileLock(const std::filesystem::path& target, int mode) {
    const std::string path = target.string() + ".lock";
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw std::runtime_error("cache: cannot open lock file " + path);
    if (::flock(fd_, mode) != 0) {
      ::close(fd_);
      throw std::runtime_error("cache: flock failed on " + path);
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

json irrep_to_json(const Irrep& rep) {
  json payload;
  payload["n"] = rep.n;
  payload["highest"] = rep.highest;
  payload["q"] = rep.q;
  payload["construction"] = rep.construction;
  payload["k_convention"] = "K_i = q^{(alpha_i, mu)/2}";
  payload["tolerances"] = {{"null_threshold", BuildOptions{}.null_threshold}};
  payload["weights"] = rep.weights;
  json labels = json::array();
  for (const auto& p : rep.labels) labels.push_back(p.rows);
  payload["labels"] = labels;
  json E = json::array(), F = json::array();
  for (const auto& m : rep.E) E.push_back(dense_rows(m));
  for (const auto& m : rep.F) F.push_back(dense_rows(m));
  payload["E"] = E;
  payload["F"] = F;
  return {{"format_version", kCacheFormatVersion}, {"checksum", checksum(payload)}, {"payload", payload}};
}

Irrep irrep_from_json(const json& doc) {
  if (doc.value("format_version", -1) != kCacheFormatVersion)
    throw std::runtime_error("cache: format version mismatch");
  const json& payload = doc.at("payload");
  if (doc.at("checksum").get<std::string>() != checksum(payload))
    throw std::runtime_error("cache: checksum mismatch");
  Irrep rep;
  rep.n = payload.at("n").get<int>();
  rep.highest = payload.at("highest").get<Weight>();
  rep.q = payload.at("q").get<double>();
  rep.construction = payload.at("construction").get<std::string>();
  rep.weights = payload.at("weights").get<std::vector<Weight>>();
  for (const auto& rows : payload.at("labels")) rep.labels.push_back({rows.get<std::vector<std::vector<int>>>()});
  const int dim = rep.dim();
  for (const auto& m : payload.at("E")) rep.E.push_back(sparse_from_rows(m, dim));
  for (const auto& m : payload.at("F")) rep.F.push_back(sparse_from_rows(m, dim));
  if (static_cast<int>(rep.E.size()) != rep.n - 1 || static_cast<int>(rep.F.size()) != rep.n - 1)
    throw std::runtime_error("cache: generator count mismatch");
  rep.index_weights();
  return rep;
}

std::string cache_q_label(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", q);
  return buf;
}

std::filesystem::path default_cache_dir() {
  const char* env = std::getenv("QFLAG_CACHE_DIR");
  return env ? std::filesystem::path(env) : std::filesystem::path();
}

IrrepCache::IrrepCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path IrrepCache::entry_path(const Weight& lambda, double q) const {
  std::ostringstream name;
  name << "irrep-v" << kCacheFormatVersion << "-n" << lambda.size() << "-l";
  for (int x : lambda) name << '_' << x;
  name << "-q" << cache_q_label(q) << ".json";
  return dir_ / name.str();
}

std::shared_ptr<const Irrep> IrrepCache::get(const Weight& lambda, const QContext& ctx) {
  const auto path = entry_path(lambda, ctx.q);
  if (std::filesystem::exists(path)) {
    try {
      FileLock lock(path, LOCK_SH);
      std::ifstream in(path);
      auto rep = std::make_shared<const Irrep>(irrep_from_json(json::parse(in)));
      ++hits_;
      return rep;
    } catch (const std::exception&) {
      ++rebuilds_;
    }
  }
  auto rep = std::make_shared<const Irrep>(gt_irrep(lambda, ctx));
  FileLock lock(path, LOCK_EX);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << irrep_to_json(*rep).dump();
  }
  std::filesystem::rename(tmp, path);
  return rep;
}

}  // namespace qflag
