#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "npspec/cli_app.hpp"
#include "npspec/manifest.hpp"

using namespace npspec;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "npspec_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("manifest plumbing") {
    const ExteriorMap map = make_ellipse(0.5);
    const std::string digest = domain_digest(map);
    CHECK(digest.size() == 16);
    CHECK(digest == domain_digest(make_ellipse(0.5)));
    CHECK(digest != domain_digest(make_disk()));

    RunManifest manifest;
    manifest.subcommand = "spectrum";
    manifest.domain_digest = digest;
    manifest.timestamp = "2026-01-01T00:00:00Z";
    manifest.add("N", "20");
    const std::string text = manifest.to_text();
    CHECK(text.find("subcommand = spectrum") != std::string::npos);
    CHECK(text.find("N = 20") != std::string::npos);

    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") != fnv1a64("b"));
}

TEST_CASE("spectrum subcommand writes the documented CSV") {
    const fs::path out = scratch_dir() / "spectrum.csv";
    const int status = cli::run({"spectrum", "--preset", "ellipse:a=0.5,gamma=1", "-N",
                                 "20", "--out", out.string()});
    CHECK(status == cli::kExitOk);

    const std::string text = slurp(out);
    std::stringstream lines(text);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(header == "k,lambda,abs_lambda");
    CHECK(first == "1,0.25,0.25");
    CHECK(second == "2,-0.25,0.25");
    CHECK(fs::exists(out.string() + ".manifest"));
    const std::string manifest = slurp(out.string() + ".manifest");
    CHECK(manifest.find("subcommand = spectrum") != std::string::npos);
    CHECK(manifest.find("domain_digest = ") != std::string::npos);
}

TEST_CASE("identical runs produce byte-identical CSVs") {
    const fs::path out_a = scratch_dir() / "det_a.csv";
    const fs::path out_b = scratch_dir() / "det_b.csv";
    const std::vector<std::string> base = {"grunsky", "--preset",
                                           "powerlaw:c=0.2,beta=4,L=64,gamma=1", "-N",
                                           "24", "--method", "composition"};
    auto args_a = base;
    args_a.insert(args_a.end(), {"--out", out_a.string()});
    auto args_b = base;
    args_b.insert(args_b.end(), {"--out", out_b.string()});
    CHECK(cli::run(args_a) == cli::kExitOk);
    CHECK(cli::run(args_b) == cli::kExitOk);
    CHECK(slurp(out_a) == slurp(out_b));
    CHECK(!slurp(out_a).empty());
}

TEST_CASE("exit codes") {
    CHECK(cli::run({"frobnicate"}) == cli::kExitUsageError);
    CHECK(cli::run({"spectrum", "-N", "4", "--out", "/tmp/x.csv"}) ==
          cli::kExitUsageError);  // no domain
    CHECK(cli::run({"spectrum", "--preset", "hexagon", "-N", "4", "--out",
                    (scratch_dir() / "bad.csv").string()}) == cli::kExitDomainError);
    CHECK(cli::run({"spectrum", "--preset", "ellipse:a=2.0,gamma=1", "-N", "4",
                    "--out", (scratch_dir() / "area.csv").string()}) ==
          cli::kExitDomainError);  // area-theorem rejection

    const fs::path bad_json = scratch_dir() / "bad_domain.json";
    std::ofstream(bad_json) << "{ not json";
    CHECK(cli::run({"spectrum", "--domain", bad_json.string(), "-N", "4", "--out",
                    (scratch_dir() / "bad2.csv").string()}) == cli::kExitDomainError);
}

TEST_CASE("validate passes on the disk") {
    CHECK(cli::run({"validate", "--preset", "disk", "-N", "16"}) == cli::kExitOk);
}

TEST_CASE("tailnorm and oracle subcommands") {
    const fs::path tail_out = scratch_dir() / "tail.csv";
    CHECK(cli::run({"tailnorm", "--preset", "ellipse:a=0.5,gamma=1", "-N", "20",
                    "--cuts", "1,3,5", "--out", tail_out.string()}) == cli::kExitOk);
    const std::string tail_text = slurp(tail_out);
    CHECK(tail_text.find("N_cut,tail_norm") != std::string::npos);
    CHECK(tail_text.find("3,0.03125") != std::string::npos);

    const fs::path oracle_out = scratch_dir() / "oracle.csv";
    CHECK(cli::run({"oracle", "--preset", "disk", "-n", "64", "--count", "6", "--out",
                    oracle_out.string()}) == cli::kExitOk);
    CHECK(slurp(oracle_out).find("k,lambda,abs_lambda") != std::string::npos);
}

TEST_CASE("domain file round trip through the CLI") {
    const fs::path domain = scratch_dir() / "ellipse.json";
    std::ofstream(domain) << R"({"gamma": 1.0, "a0": [0.0, 0.0], "a": [[0.5, 0.0]]})";
    const fs::path out = scratch_dir() / "from_file.csv";
    CHECK(cli::run({"spectrum", "--domain", domain.string(), "-N", "4", "--out",
                    out.string()}) == cli::kExitOk);
    CHECK(slurp(out).find("1,0.25,0.25") != std::string::npos);
}
