#include "npspec/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace npspec {

namespace {

constexpr double kBoundarySlack = 1.0 - 1e-12;  // |w| >= gamma up to roundoff

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

UnivalenceReport univalence_check(double gamma, const Complex& /*a0*/,
                                  const std::vector<Complex>& coefficients) {
    UnivalenceReport report;
    double necessary_sum = 0.0;
    double sufficient_sum = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        const double mag = std::abs(coefficients[i]);
        necessary_sum += k * mag * mag * std::pow(gamma, -2.0 * k);
        sufficient_sum += k * mag * std::pow(gamma, -(k + 1.0));
    }
    report.necessary_margin = gamma * gamma - necessary_sum;
    report.sufficient_margin = 1.0 - sufficient_sum;
    if (report.necessary_margin < 0.0) {
        report.verdict = UnivalenceReport::Verdict::Fail;
    } else if (report.sufficient_margin > 0.0) {
        report.verdict = UnivalenceReport::Verdict::Pass;
    } else {
        report.verdict = UnivalenceReport::Verdict::PassUnproven;
    }
    return report;
}

ExteriorMap::ExteriorMap(double gamma, Complex a0, std::vector<Complex> coefficients)
    : gamma_(gamma), a0_(a0), a_(std::move(coefficients)) {
    if (!(gamma_ > 0.0)) {
        throw std::invalid_argument("exterior map requires gamma > 0, got " +
                                    format_double(gamma_));
    }
    while (!a_.empty() && a_.back() == Complex(0.0, 0.0)) a_.pop_back();
    univalence_ = univalence_check(gamma_, a0_, a_);
    if (univalence_.verdict == UnivalenceReport::Verdict::Fail) {
        const double sum = gamma_ * gamma_ - univalence_.necessary_margin;
        throw std::invalid_argument(
            "coefficients violate the area-theorem bound: sum k|a_k|^2 gamma^{-2k} = " +
            format_double(sum) + " > gamma^2 = " + format_double(gamma_ * gamma_));
    }
}

double ExteriorMap::rho0() const { return std::log(gamma_); }

Complex ExteriorMap::evaluate(Complex w) const {
    if (std::abs(w) < gamma_ * kBoundarySlack) {
        throw std::domain_error("evaluate: |w| < gamma");
    }
    Complex value = w + a0_;
    const Complex inv = 1.0 / w;
    Complex power = inv;
    for (const Complex& ak : a_) {
        value += ak * power;
        power *= inv;
    }
    return value;
}

std::pair<Complex, Complex> ExteriorMap::derivatives(Complex w) const {
    if (std::abs(w) < gamma_ * kBoundarySlack) {
        throw std::domain_error("derivatives: |w| < gamma");
    }
    const Complex inv = 1.0 / w;
    Complex first = 1.0;
    Complex second = 0.0;
    Complex power = inv * inv;  // w^{-(k+1)} for k = 1
    for (std::size_t i = 0; i < a_.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        first -= k * a_[i] * power;
        second += k * (k + 1.0) * a_[i] * power * inv;
        power *= inv;
    }
    return {first, second};
}

double ExteriorMap::scale_factor(double rho, double theta) const {
    if (rho < rho0() - 1e-12) {
        throw std::domain_error("scale_factor: rho < rho0");
    }
    const double r = std::exp(rho);
    const Complex w = std::polar(r, theta);
    const Complex dpsi = derivatives(w).first;
    if (std::abs(dpsi) < 1e-12 * gamma_) {
        throw std::runtime_error("scale_factor: Psi' vanishes (cusp) at rho=" +
                                 format_double(rho) + ", theta=" + format_double(theta));
    }
    return std::abs(dpsi) * r;
}

std::vector<BoundarySample> ExteriorMap::boundary_samples(int n) const {
    if (n < 4) throw std::invalid_argument("boundary_samples: n must be >= 4");
    std::vector<BoundarySample> samples(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double theta = kTwoPi * j / n;
        const Complex w = std::polar(gamma_, theta);
        const auto [dpsi, ddpsi] = derivatives(w);
        const double abs_dpsi = std::abs(dpsi);
        if (abs_dpsi < 1e-12 * gamma_) {
            throw std::runtime_error("boundary_samples: Psi' vanishes (cusp) at theta=" +
                                     format_double(theta));
        }
        BoundarySample& s = samples[static_cast<std::size_t>(j)];
        s.theta = theta;
        s.point = evaluate(w);
        s.h = abs_dpsi * gamma_;
        // tangent i w Psi' rotated by -pi/2 gives the outward normal
        s.normal = w * dpsi / std::abs(w * dpsi);
        s.curvature = (abs_dpsi * abs_dpsi + std::real(w * ddpsi * std::conj(dpsi))) /
                      (std::abs(w) * abs_dpsi * abs_dpsi * abs_dpsi);
    }
    return samples;
}

namespace {

Complex complex_from_json(const nlohmann::json& node, const char* name) {
    if (!node.is_array() || node.size() != 2 || !node[0].is_number() ||
        !node[1].is_number()) {
        throw std::invalid_argument(std::string("domain field '") + name +
                                    "' must be a [re, im] pair");
    }
    return {node[0].get<double>(), node[1].get<double>()};
}

}  // namespace

ExteriorMap parse_domain(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed domain document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("gamma") || !doc.contains("a0") ||
        !doc.contains("a")) {
        throw std::invalid_argument(
            "domain document must contain 'gamma', 'a0' and 'a'");
    }
    if (!doc["gamma"].is_number()) {
        throw std::invalid_argument("domain field 'gamma' must be a number");
    }
    const double gamma = doc["gamma"].get<double>();
    const Complex a0 = complex_from_json(doc["a0"], "a0");
    if (!doc["a"].is_array()) {
        throw std::invalid_argument("domain field 'a' must be an array of [re, im] pairs");
    }
    std::vector<Complex> a;
    a.reserve(doc["a"].size());
    for (const auto& entry : doc["a"]) a.push_back(complex_from_json(entry, "a"));
    return ExteriorMap(gamma, a0, std::move(a));
}

ExteriorMap load_domain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open domain file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_domain(buffer.str());
}

std::string domain_to_json(const ExteriorMap& map) {
    nlohmann::json doc;
    doc["gamma"] = map.gamma();
    doc["a0"] = {map.a0().real(), map.a0().imag()};
    doc["a"] = nlohmann::json::array();
    for (const Complex& ak : map.coefficients()) {
        doc["a"].push_back({ak.real(), ak.imag()});
    }
    return doc.dump(2);
}

ExteriorMap make_disk(double gamma) { return ExteriorMap(gamma, 0.0, {}); }

ExteriorMap make_ellipse(double a, double gamma) {
    return ExteriorMap(gamma, 0.0, {Complex(a, 0.0)});
}

ExteriorMap make_powerlaw(double c, double beta, int length, double gamma) {
    if (length < 0) throw std::invalid_argument("powerlaw: L must be >= 0");
    std::vector<Complex> a(static_cast<std::size_t>(length));
    for (int k = 1; k <= length; ++k) {
        a[static_cast<std::size_t>(k - 1)] = c * std::pow(static_cast<double>(k), -beta);
    }
    return ExteriorMap(gamma, 0.0, std::move(a));
}

ExteriorMap make_random(std::uint64_t seed, int length, double eta, double gamma) {
    if (length < 1) throw std::invalid_argument("random: L must be >= 1");
    if (!(eta > 0.0 && eta < 1.0)) {
        throw std::invalid_argument("random: eta must lie in (0, 1)");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> a(static_cast<std::size_t>(length));
    for (int k = 1; k <= length; ++k) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a[static_cast<std::size_t>(k - 1)] =
            Complex(re, im) * std::pow(static_cast<double>(k), -1.5);
    }
    // scale so the sufficient-margin sum equals eta < 1: univalence certified
    double sum = 0.0;
    for (int k = 1; k <= length; ++k) {
        sum += k * std::abs(a[static_cast<std::size_t>(k - 1)]) *
               std::pow(gamma, -(k + 1.0));
    }
    const double scale = sum > 0.0 ? eta / sum : 0.0;
    for (Complex& ak : a) ak *= scale;
    return ExteriorMap(gamma, 0.0, std::move(a));
}

namespace {

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("preset parameter '" + item +
                                        "' must be key=value");
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

double take_double(std::map<std::string, std::string>& kv, const std::string& key,
                   double fallback, bool required = false) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (required) throw std::invalid_argument("preset requires parameter '" + key + "'");
        return fallback;
    }
    const double value = std::stod(it->second);
    kv.erase(it);
    return value;
}

}  // namespace

ExteriorMap parse_preset(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    auto kv = parse_key_values(colon == std::string::npos ? "" : spec.substr(colon + 1));
    ExteriorMap map = [&]() -> ExteriorMap {
        if (name == "disk") {
            return make_disk(take_double(kv, "gamma", 1.0));
        }
        if (name == "ellipse") {
            const double a = take_double(kv, "a", 0.0, true);
            return make_ellipse(a, take_double(kv, "gamma", 1.0));
        }
        if (name == "powerlaw") {
            const double c = take_double(kv, "c", 0.0, true);
            const double beta = take_double(kv, "beta", 0.0, true);
            const int length = static_cast<int>(take_double(kv, "L", 64.0));
            return make_powerlaw(c, beta, length, take_double(kv, "gamma", 1.0));
        }
        if (name == "random") {
            const auto seed = static_cast<std::uint64_t>(take_double(kv, "seed", 1.0));
            const int length = static_cast<int>(take_double(kv, "L", 16.0));
            const double eta = take_double(kv, "eta", 0.7);
            return make_random(seed, length, eta, take_double(kv, "gamma", 1.0));
        }
        throw std::invalid_argument("unknown preset '" + name + "'");
    }();
    if (!kv.empty()) {
        throw std::invalid_argument("unknown preset parameter '" + kv.begin()->first +
                                    "' for preset '" + name + "'");
    }
    return map;
}

}  // namespace npspec
