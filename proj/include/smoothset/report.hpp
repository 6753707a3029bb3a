#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smoothset {

std::string sha256_hex(std::string_view data);

enum class Verdict { ok, failure };

/// Line-oriented command report. Everything except the timing line is a function of the
/// command line and the input bytes.
class Report {
public:
    static constexpr int version = 1;

    explicit Report(std::vector<std::string> command) : command_(std::move(command)) {}

    void add_input(const std::string& path, std::string_view content);
    void exact(const std::string& key, const std::string& value);
    void numeric(const std::string& key, const std::string& value, double tolerance);
    void set_verdict(Verdict v) { verdict_ = v; }
    void fail() { verdict_ = Verdict::failure; }
    void set_timing_ms(double ms) { timing_ms_ = ms; }

    Verdict verdict() const { return verdict_; }
    std::string text() const;
    std::string json() const;

    struct Record {
        std::string key;
        std::string value;
        bool exact = true;
        double tolerance = 0;
    };
    const std::vector<Record>& records() const { return records_; }

private:
    std::vector<std::string> command_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<Record> records_;
    Verdict verdict_ = Verdict::ok;
    std::optional<double> timing_ms_;
};

/// Drops the timing line (text) or key (json) so reports can be compared byte for byte.
std::string strip_timing(const std::string& report);

}  // namespace smoothset
