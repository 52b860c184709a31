#include "priomet/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "priomet/error.hpp"

namespace priomet {

namespace {

// JSON has no infinity; emit null instead.
nlohmann::json num(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

void CheckSummary::record(const std::string& name, bool ok, nlohmann::json info) {
    ok ? ++passed : ++failed;
    nlohmann::json entry = {{"ok", ok}};
    if (!info.is_null()) entry["info"] = std::move(info);
    details[name] = std::move(entry);
}

nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["structure"] = r.structure;
    j["params"] = r.params;
    j["seed"] = r.seed;
    j["size_words"] = r.stretch.size_words;
    nlohmann::json buckets = nlohmann::json::array();
    for (const auto& b : r.stretch.buckets) {
        buckets.push_back({{"rank_lo", b.rank_lo},
                           {"rank_hi", b.rank_hi},
                           {"pairs", b.pairs},
                           {"max_stretch", num(b.max_stretch)},
                           {"mean_stretch", num(b.mean_stretch)},
                           {"min_stretch", num(b.min_stretch)}});
    }
    j["buckets"] = std::move(buckets);
    j["global_max"] = num(r.stretch.global_max);
    j["global_min"] = num(r.stretch.global_min);
    j["pairs"] = r.stretch.pairs;
    j["violations"] = r.stretch.violations;
    j["checks"] = {{"passed", r.checks.passed}, {"failed", r.checks.failed}, {"details", r.checks.details}};
    for (const auto& [k, v] : r.extra.items()) j[k] = v;
    return j;
}

void write_csv(std::ostream& out, const Report& r) {
    out << "structure,seed,size_words,rank_lo,rank_hi,pairs,max_stretch,mean_stretch,global_max\n";
    out << std::setprecision(12);
    for (const auto& b : r.stretch.buckets) {
        out << r.structure << ',' << r.seed << ',' << r.stretch.size_words << ',' << b.rank_lo << ','
            << b.rank_hi << ',' << b.pairs << ',' << b.max_stretch << ',' << b.mean_stretch << ','
            << r.stretch.global_max << '\n';
    }
}

void write_report(const std::string& path, const Report& r, const std::string& format) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    if (format == "csv") {
        write_csv(out, r);
    } else if (format == "json") {
        out << to_json(r).dump(2) << '\n';
    } else {
        throw InvalidArgument("unknown report format '" + format + "'");
    }
}

}  // namespace priomet
