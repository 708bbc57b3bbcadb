#include "vseq/report.hpp"

#include <cstdio>
#include <sstream>

namespace vseq {

void Report::put(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
}

void Report::put(const std::string& key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f", value);
    entries_.emplace_back(key, buf);
}

void Report::put(const std::string& key, long value) {
    entries_.emplace_back(key, std::to_string(value));
}

void Report::assertion(const std::string& key, bool pass) {
    ++assertions_;
    if (!pass) ++failures_;
    entries_.emplace_back(key, pass ? "PASS" : "FAIL");
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (const auto& [k, v] : other.entries_) entries_.emplace_back(prefix + k, v);
    assertions_ += other.assertions_;
    failures_ += other.failures_;
}

std::string Report::to_kv() const {
    std::ostringstream os;
    for (const auto& [k, v] : entries_) os << k << " = " << v << "\n";
    os << "verdict = " << (all_passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : entries_) {
        os << "  " << k;
        for (std::size_t i = k.size(); i < 48; ++i) os << " ";
        os << " " << v << "\n";
    }
    os << (all_passed() ? "all assertions passed" : "ASSERTION FAILURES: " + std::to_string(failures_))
       << " (" << assertions_ << " checked)\n";
    return os.str();
}

} // namespace vseq
