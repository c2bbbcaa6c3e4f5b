#pragma once

// File formats. Writers are hand-rolled so that output is deterministic:
// fixed key order, locale-independent decimal doubles with 17 significant
// digits. Parsing is schema-tolerant (unknown keys ignored).

#include <optional>
#include <string>

#include "framelab/checks.hpp"
#include "framelab/cmatrix.hpp"
#include "framelab/erasure.hpp"
#include "framelab/frame.hpp"
#include "framelab/optimizer.hpp"

namespace framelab {

// Shortest-width decimal with 17 significant digits; round-trips bit-exactly.
std::string format_double(double value);

// Provenance block embedded in every output file.
struct Meta {
    std::string config;                 // resolved command line / call summary
    std::optional<std::string> timestamp;  // omitted under --no-timestamp
};

std::string frame_to_json(const Frame& frame, const Meta& meta);
Frame frame_from_json_text(const std::string& text);
Frame load_frame(const std::string& path);
void save_text(const std::string& path, const std::string& text);

std::string parameter_to_json(const CMatrix& parameter, const Meta& meta);
CMatrix parameter_from_json_text(const std::string& text);
CMatrix load_parameter(const std::string& path);

// header `pattern,value`, pattern encoded as 1-based `i1;i2;...;im`
std::string report_to_csv(const ErrorReport& report, const Meta& meta);
std::string report_to_json(const ErrorReport& report, const Meta& meta);

std::string optimize_result_to_json(const OptimizeResult& result, const AverageErrorSpec& spec,
                                    const Meta& meta);
std::string trace_to_csv(const OptimizeResult& result, const Meta& meta);

std::string suite_report_to_json(const std::vector<CheckResult>& results, const Meta& meta);
std::string suite_report_table(const std::vector<CheckResult>& results);

std::string measure_flag(Measure measure);           // fro | spec | num
Measure measure_from_flag(const std::string& flag);  // accepts the above

std::string read_text_file(const std::string& path);

}  // namespace framelab
