#include "npspec/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace npspec {

void RunManifest::add(const std::string& key, const std::string& value) {
    parameters.emplace_back(key, value);
}

std::string RunManifest::to_text() const {
    std::ostringstream out;
    out << "subcommand = " << subcommand << '\n';
    out << "version = " << version << '\n';
    out << "domain_digest = " << domain_digest << '\n';
    for (const auto& [key, value] : parameters) {
        out << key << " = " << value << '\n';
    }
    out << "timestamp = " << timestamp << '\n';
    return out.str();
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char byte : data) {
        hash ^= byte;
        hash *= 1099511628211ull;
    }
    return hash;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string canonical_domain_string(const ExteriorMap& map) {
    std::ostringstream out;
    out << "npspec-domain/1|gamma=" << format_double(map.gamma())
        << "|a0=" << format_double(map.a0().real()) << ','
        << format_double(map.a0().imag()) << "|a=";
    for (const Complex& ak : map.coefficients()) {
        out << format_double(ak.real()) << ',' << format_double(ak.imag()) << ';';
    }
    return out.str();
}

std::string domain_digest(const ExteriorMap& map) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_domain_string(map))));
    return buf;
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest_sidecar(const RunManifest& manifest, const std::string& output_path) {
    const std::string path = output_path + ".manifest";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << manifest.to_text();
}

}  // namespace npspec
