#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rncg::cli {

using Json = nlohmann::ordered_json;

/// Reproducibility record written next to every output set.
struct RunManifest {
  std::string command;
  /// Every option of the command, defaults included, keyed by long flag name.
  Json parameters = Json::object();
  std::optional<std::uint64_t> seed;
  std::string version;
  std::string timestamp;
  /// Output file names, relative to the manifest's directory.
  std::vector<std::string> outputs;
  std::vector<std::string> argv;

  Json to_json() const;
  static RunManifest from_json(const Json& j);

  void write(const std::filesystem::path& path) const;
  static RunManifest load(const std::filesystem::path& path);

  /// Command line that reruns the command with the recorded parameters.
  std::vector<std::string> replay_args() const;
};

/// UTC time as YYYY-MM-DDThh:mm:ssZ.
std::string iso8601_now();

}  // namespace rncg::cli
