#include "smoothset/report.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace smoothset {

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr))
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream out;
    for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return out.str();
}

void Report::add_input(const std::string& path, std::string_view content) { inputs_.emplace_back(path, sha256_hex(content)); }

void Report::exact(const std::string& key, const std::string& value) { records_.push_back({key, value, true, 0}); }

void Report::numeric(const std::string& key, const std::string& value, double tolerance) {
    records_.push_back({key, value, false, tolerance});
}

namespace {

const char* verdict_name(Verdict v) { return v == Verdict::ok ? "ok" : "failure"; }

std::string tolerance_text(double t) {
    std::ostringstream out;
    out << std::setprecision(3) << t;
    return out.str();
}

}  // namespace

std::string Report::text() const {
    std::ostringstream out;
    out << "smoothset-report " << version << "\n";
    out << "command:";
    for (const auto& c : command_) out << " " << c;
    out << "\n";
    for (const auto& [path, digest] : inputs_) out << "input: " << path << " sha256=" << digest << "\n";
    for (const auto& r : records_) {
        out << "record " << r.key << " [" << (r.exact ? "exact" : "numeric tol=" + tolerance_text(r.tolerance)) << "]:";
        // Multi-line values are indented under their key.
        if (r.value.find('\n') == std::string::npos) {
            out << " " << r.value << "\n";
        } else {
            out << "\n";
            std::istringstream lines(r.value);
            for (std::string l; std::getline(lines, l);) out << "  " << l << "\n";
        }
    }
    out << "verdict: " << verdict_name(verdict_) << "\n";
    if (timing_ms_) out << "timing-ms: " << std::fixed << std::setprecision(3) << *timing_ms_ << "\n";
    return out.str();
}

std::string Report::json() const {
    nlohmann::ordered_json j;
    j["format"] = "smoothset-report";
    j["version"] = version;
    j["command"] = command_;
    j["inputs"] = nlohmann::ordered_json::array();
    for (const auto& [path, digest] : inputs_) j["inputs"].push_back({{"path", path}, {"sha256", digest}});
    j["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records_) {
        nlohmann::ordered_json rec{{"key", r.key}, {"value", r.value}, {"exact", r.exact}};
        if (!r.exact) rec["tolerance"] = r.tolerance;
        j["records"].push_back(std::move(rec));
    }
    j["verdict"] = verdict_name(verdict_);
    if (timing_ms_) j["timing_ms"] = *timing_ms_;
    return j.dump(2) + "\n";
}

std::string strip_timing(const std::string& report) {
    if (!report.empty() && report.front() == '{') {
        auto j = nlohmann::ordered_json::parse(report);
        j.erase("timing_ms");
        return j.dump(2) + "\n";
    }
    std::istringstream in(report);
    std::ostringstream out;
    for (std::string l; std::getline(in, l);)
        if (l.rfind("timing-ms:", 0) != 0) out << l << "\n";
    return out.str();
}

}  // namespace smoothset
