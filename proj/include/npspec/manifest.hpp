#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "npspec/conformal.hpp"

namespace npspec {

inline constexpr const char* kVersion = "0.1.0";

/// Reproducibility record written next to every output file. The
/// timestamp is informational; manifest identity (and therefore output
/// determinism) is defined over subcommand, parameters and domain digest.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::string domain_digest;
    std::string version = kVersion;
    std::string timestamp;

    void add(const std::string& key, const std::string& value);
    std::string to_text() const;
};

std::uint64_t fnv1a64(const std::string& data);

/// Stable, whitespace-free rendering of a domain with 17-digit floats;
/// hashing it yields the domain digest.
std::string canonical_domain_string(const ExteriorMap& map);
std::string domain_digest(const ExteriorMap& map);

std::string iso8601_now();

/// Writes `manifest.to_text()` to `<output_path>.manifest`.
void write_manifest_sidecar(const RunManifest& manifest,
                            const std::string& output_path);

}  // namespace npspec
