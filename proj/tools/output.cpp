#include "output.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

#include "zorich/error.hpp"

namespace zorich::cli {

namespace fs = std::filesystem;

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) throw IoError("sha256: init failed");
  }
  void update(const char* data, std::size_t size) { EVP_DigestUpdate(ctx_.get(), data, size); }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int size = 0;
    EVP_DigestFinal_ex(ctx_.get(), digest.data(), &size);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < size; ++i) {
      out += kHex[digest[i] >> 4];
      out += kHex[digest[i] & 0xf];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

void atomic_write(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    try {
      writer(out);
    } catch (...) {
      out.close();
      fs::remove(tmp, ec);
      throw;
    }
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw IoError("write failed for " + path.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

void atomic_write(const fs::path& path, const std::string& bytes) {
  atomic_write(path, [&](std::ostream& out) { out << bytes; });
}

Manifest::Manifest(fs::path output_dir) : dir_(std::move(output_dir)) {}

void Manifest::write_file(const std::string& name, const std::function<void(std::ostream&)>& writer) {
  const fs::path path = dir_ / name;
  atomic_write(path, writer);
  section_["outputs"].push_back(
      {{"path", name}, {"sha256", sha256_file(path)}, {"bytes", static_cast<std::uint64_t>(fs::file_size(path))}});
}

void Manifest::write_file(const std::string& name, const std::string& bytes) {
  write_file(name, [&](std::ostream& out) { out << bytes; });
}

std::string Manifest::checksum(const nlohmann::json& manifest) {
  nlohmann::json body = manifest;
  body.erase("excluded");
  body.erase("manifest_checksum");
  return sha256_hex(body.dump());
}

void Manifest::commit(const std::string& command, double wall_clock_seconds) {
  const fs::path path = dir_ / "manifest.json";
  nlohmann::json manifest = nlohmann::json::object();
  if (fs::exists(path)) {
    std::ifstream in(path);
    manifest = nlohmann::json::parse(in, nullptr, false);
    if (manifest.is_discarded() || !manifest.is_object()) manifest = nlohmann::json::object();
  }
  if (!section_.contains("outputs")) section_["outputs"] = nlohmann::json::array();
  manifest["tool"] = "zorich";
  manifest["version"] = ZORICH_VERSION;
  manifest["commands"][command] = section_;
  manifest["excluded"]["wall_clock_seconds"][command] = wall_clock_seconds;
  manifest["excluded"]["finished_at"][command] = utc_now();
  manifest["manifest_checksum"] = checksum(manifest);
  atomic_write(path, manifest.dump(2) + "\n");
}

}  // namespace zorich::cli
