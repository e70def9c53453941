#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace npspec {

/// Minimal CSV emitter with a fixed 17-significant-digit float format so
/// outputs are diff-able and reproducible across runs.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
    }

    void header(const std::vector<std::string>& names) { row_of_strings(names); }

    void field(long long v) {
        sep();
        out_ << v;
    }
    void field(int v) { field(static_cast<long long>(v)); }
    void field(double v) {
        sep();
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out_ << buf;
    }
    void field(const std::string& v) {
        sep();
        out_ << v;
    }
    void end_row() {
        out_ << '\n';
        first_ = true;
    }

private:
    void sep() {
        if (!first_) out_ << ',';
        first_ = false;
    }
    void row_of_strings(const std::vector<std::string>& names) {
        for (const auto& n : names) field(n);
        end_row();
    }

    std::ofstream out_;
    bool first_ = true;
};

}  // namespace npspec
