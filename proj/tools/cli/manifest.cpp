#include "cli/manifest.hpp"

#include <chrono>
#include <ctime>
#include <stdexcept>

#include "cli/format.hpp"

namespace rncg::cli {

Json RunManifest::to_json() const {
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["version"] = version;
  j["timestamp"] = timestamp;
  j["outputs"] = outputs;
  j["argv"] = argv;
  return j;
}

RunManifest RunManifest::from_json(const Json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters");
    if (j.contains("seed") && !j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.value("version", "");
    m.timestamp = j.value("timestamp", "");
    m.outputs = j.value("outputs", std::vector<std::string>{});
    m.argv = j.value("argv", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed manifest: ") + e.what());
  }
  if (!m.parameters.is_object()) throw std::runtime_error("malformed manifest: parameters must be an object");
  return m;
}

void RunManifest::write(const std::filesystem::path& path) const { write_atomic(path, to_json().dump(2) + "\n"); }

RunManifest RunManifest::load(const std::filesystem::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("cannot parse manifest " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

std::vector<std::string> RunManifest::replay_args() const {
  std::vector<std::string> args{command};
  for (const auto& [key, value] : parameters.items()) {
    if (value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    if (value.is_number_float()) {
      args.push_back(format_double(value.get<double>()));
    } else if (value.is_string()) {
      args.push_back(value.get<std::string>());
    } else {
      args.push_back(value.dump());
    }
  }
  return args;
}

std::string iso8601_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace rncg::cli
