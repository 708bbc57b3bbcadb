#ifndef VSEQ_REPORT_HPP
#define VSEQ_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace vseq {

/// Flat ordered key-value document. Keys are dot-paths, insertion order is
/// the computation order, so identical runs print byte-identical reports.
class Report {
public:
    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, double value); // fixed 9 decimals
    void put(const std::string& key, long value);
    /// Records a PASS/FAIL entry and folds it into the overall verdict.
    void assertion(const std::string& key, bool pass);

    bool all_passed() const { return failures_ == 0; }
    int assertions() const { return assertions_; }
    int failures() const { return failures_; }
    /// 0 when every assertion passed, 1 otherwise.
    int exit_code() const { return all_passed() ? 0 : 1; }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    void merge(const Report& other, const std::string& prefix = "");

    std::string to_kv() const;
    std::string to_text() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    int assertions_ = 0;
    int failures_ = 0;
};

} // namespace vseq

#endif
