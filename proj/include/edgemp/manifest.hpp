// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace edgemp {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(std::string_view data);
/// SHA-256 of a file's contents. Throws InvalidParameter if unreadable.
std::string sha256_file(const std::filesystem::path& path);

/// Record written next to every CLI artifact so the run can be repeated
/// and checked.
struct RunManifest {
  std::string command;
  /// Arguments after the program name, exactly as given.
  std::vector<std::string> argv;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json seeds = nlohmann::json::object();
  /// Path -> SHA-256.
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
  std::string version = kArtifactVersion;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// `<output>.manifest.json`.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

/// Serializes JSON the way every artifact is written: two-space indent
/// and a trailing newline.
std::string dump_artifact(const nlohmann::json& j);

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace edgemp
