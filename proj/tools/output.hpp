#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include <json.hpp>

namespace zorich::cli {

/// Lowercase hex SHA-256 of a byte string or a file.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames it into place. Throws IoError.
void atomic_write(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

/// Run manifest at <output_dir>/manifest.json. Sections are keyed by command
/// name and merged into an existing manifest. manifest_checksum covers every
/// field except itself and "excluded", which holds wall-clock data.
class Manifest {
 public:
  explicit Manifest(std::filesystem::path output_dir);

  const std::filesystem::path& output_dir() const { return dir_; }

  /// Writes an output file atomically and records it with its checksum.
  void write_file(const std::string& name, const std::function<void(std::ostream&)>& writer);
  void write_file(const std::string& name, const std::string& bytes);

  nlohmann::json& section() { return section_; }

  /// Merges the section under `command` and writes manifest.json.
  void commit(const std::string& command, double wall_clock_seconds);

  /// Checksum over the manifest minus "excluded" and "manifest_checksum".
  static std::string checksum(const nlohmann::json& manifest);

 private:
  std::filesystem::path dir_;
  nlohmann::json section_ = nlohmann::json::object();
};

}  // namespace zorich::cli
