#ifndef PRIOMET_REPORT_HPP
#define PRIOMET_REPORT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "priomet/stretch.hpp"

namespace priomet {

inline constexpr int kReportSchema = 1;

/*
 * Invariant-check tally attached to every report; the CLI exit code is derived from it.
 */
struct CheckSummary {
    std::size_t passed = 0;
    std::size_t failed = 0;
    nlohmann::json details = nlohmann::json::object();

    void record(const std::string& name, bool ok, nlohmann::json info = nullptr);
    bool ok() const { return failed == 0; }
};

struct Report {
    std::string structure;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    StretchReport stretch;
    CheckSummary checks;
    nlohmann::json extra = nlohmann::json::object();
};

nlohmann::json to_json(const Report& r);
// One row per bucket: structure,seed,size_words,rank_lo,rank_hi,pairs,max_stretch,mean_stretch,global_max
void write_csv(std::ostream& out, const Report& r);
// Writes JSON or CSV (`format` is "json" or "csv").
void write_report(const std::string& path, const Report& r, const std::string& format);

}  // namespace priomet

#endif
