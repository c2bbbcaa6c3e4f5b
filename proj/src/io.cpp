#include "framelab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "framelab/errors.hpp"
#include "framelab/version.hpp"

namespace framelab {

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (ec != std::errc())
        throw IoError("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

void append_meta(std::ostringstream& out, const Meta& meta, const char* indent) {
    out << indent << "\"meta\": {\n";
    out << indent << "  \"tool\": \"" << kToolName << "\",\n";
    out << indent << "  \"version\": \"" << kToolVersion << "\",\n";
    out << indent << "  \"config\": \"" << meta.config << "\"";
    if (meta.timestamp) out << ",\n" << indent << "  \"timestamp\": \"" << *meta.timestamp << "\"";
    out << "\n" << indent << "},\n";
}

std::string meta_comment_lines(const Meta& meta) {
    std::ostringstream out;
    out << "# tool=" << kToolName << " version=" << kToolVersion << "\n";
    out << "# config=" << meta.config << "\n";
    if (meta.timestamp) out << "# timestamp=" << *meta.timestamp << "\n";
    return out.str();
}

void append_complex_array(std::ostringstream& out, const CMatrix& m) {
    out << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << (i == 0 ? "\n" : ",\n") << "    [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ", ";
            out << "[" << format_double(m(i, j).real()) << ", "
                << format_double(m(i, j).imag()) << "]";
        }
        out << "]";
    }
    out << "\n  ]";
}

CMatrix complex_array_from_json(const nlohmann::json& rows, const char* who) {
    if (!rows.is_array() || rows.empty())
        throw IoError(std::string(who) + ": expected a non-empty array of rows");
    const std::size_t cols = rows[0].size();
    CMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != cols)
            throw IoError(std::string(who) + ": ragged rows");
        for (std::size_t j = 0; j < cols; ++j) {
            const auto& entry = row[j];
            if (!entry.is_array() || entry.size() != 2)
                throw IoError(std::string(who) + ": entries must be [re, im] pairs");
            m(i, j) = cxd{entry[0].get<double>(), entry[1].get<double>()};
        }
    }
    return m;
}

nlohmann::json parse_json(const std::string& text, const char* who) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw IoError(std::string(who) + ": malformed JSON");
    return doc;
}

}  // namespace

std::string frame_to_json(const Frame& frame, const Meta& meta) {
    std::ostringstream out;
    out << "{\n";
    append_meta(out, meta, "  ");
    out << "  \"n\": " << frame.dim() << ",\n";
    out << "  \"N\": " << frame.count() << ",\n";
    out << "  \"vectors\": ";
    append_complex_array(out, frame.vectors());
    out << "\n}\n";
    return out.str();
}

Frame frame_from_json_text(const std::string& text) {
    const nlohmann::json doc = parse_json(text, "frame");
    if (!doc.contains("n") || !doc.contains("N") || !doc.contains("vectors"))
        throw IoError("frame: missing n / N / vectors");
    CMatrix v = complex_array_from_json(doc["vectors"], "frame");
    if (v.rows() != doc["N"].get<std::size_t>() || v.cols() != doc["n"].get<std::size_t>())
        throw IoError("frame: declared shape does not match the vectors array");
    return Frame::from_vectors(std::move(v));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Frame load_frame(const std::string& path) { return frame_from_json_text(read_text_file(path)); }

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

std::string parameter_to_json(const CMatrix& parameter, const Meta& meta) {
    std::ostringstream out;
    out << "{\n";
    append_meta(out, meta, "  ");
    out << "  \"rows\": " << parameter.rows() << ",\n";
    out << "  \"cols\": " << parameter.cols() << ",\n";
    out << "  \"entries\": [";
    bool first = true;
    for (std::size_t i = 0; i < parameter.rows(); ++i)
        for (std::size_t j = 0; j < parameter.cols(); ++j) {
            out << (first ? "\n" : ",\n") << "    [" << format_double(parameter(i, j).real())
                << ", " << format_double(parameter(i, j).imag()) << "]";
            first = false;
        }
    out << "\n  ]\n}\n";
    return out.str();
}

CMatrix parameter_from_json_text(const std::string& text) {
    const nlohmann::json doc = parse_json(text, "parameter");
    if (!doc.contains("rows") || !doc.contains("cols") || !doc.contains("entries"))
        throw IoError("parameter: missing rows / cols / entries");
    const std::size_t rows = doc["rows"].get<std::size_t>();
    const std::size_t cols = doc["cols"].get<std::size_t>();
    const auto& entries = doc["entries"];
    if (!entries.is_array() || entries.size() != rows * cols)
        throw IoError("parameter: entry count does not match rows * cols");
    CMatrix m(rows, cols);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const auto& entry = entries[k];
        if (!entry.is_array() || entry.size() != 2)
            throw IoError("parameter: entries must be [re, im] pairs");
        m(k / std::max<std::size_t>(cols, 1), k % std::max<std::size_t>(cols, 1)) =
            cxd{entry[0].get<double>(), entry[1].get<double>()};
    }
    return m;
}

CMatrix load_parameter(const std::string& path) {
    return parameter_from_json_text(read_text_file(path));
}

namespace {

std::string pattern_key(const ErasurePattern& pattern) {
    std::ostringstream out;
    for (std::size_t k = 0; k < pattern.indices.size(); ++k) {
        if (k > 0) out << ";";
        out << pattern.indices[k] + 1;  // 1-based in all user-facing output
    }
    return out.str();
}

}  // namespace

std::string report_to_csv(const ErrorReport& report, const Meta& meta) {
    std::ostringstream out;
    out << meta_comment_lines(meta);
    out << "# measure=" << measure_name(report.spec.measure) << " m=" << report.spec.erasures
        << " p=" << format_double(report.spec.p) << " average="
        << format_double(report.average) << "\n";
    out << "pattern,value\n";
    for (const PatternValue& pv : report.per_pattern)
        out << pattern_key(pv.pattern) << "," << format_double(pv.value) << "\n";
    return out.str();
}

std::string report_to_json(const ErrorReport& report, const Meta& meta) {
    std::ostringstream out;
    out << "{\n";
    append_meta(out, meta, "  ");
    out << "  \"spec\": {\"measure\": \"" << measure_name(report.spec.measure)
        << "\", \"m\": " << report.spec.erasures << ", \"p\": " << format_double(report.spec.p)
        << "},\n";
    out << "  \"average\": " << format_double(report.average) << ",\n";
    if (report.lower_bound)
        out << "  \"lower_bound\": " << format_double(*report.lower_bound) << ",\n";
    out << "  \"per_pattern\": [";
    bool first = true;
    for (const PatternValue& pv : report.per_pattern) {
        out << (first ? "\n" : ",\n") << "    {\"pattern\": \"" << pattern_key(pv.pattern)
            << "\", \"value\": " << format_double(pv.value) << "}";
        first = false;
    }
    out << "\n  ]\n}\n";
    return out.str();
}

std::string optimize_result_to_json(const OptimizeResult& result, const AverageErrorSpec& spec,
                                    const Meta& meta) {
    std::ostringstream out;
    out << "{\n";
    append_meta(out, meta, "  ");
    out << "  \"spec\": {\"measure\": \"" << measure_name(spec.measure)
        << "\", \"m\": " << spec.erasures << ", \"p\": " << format_double(spec.p) << "},\n";
    out << "  \"value\": " << format_double(result.value) << ",\n";
    out << "  \"certificate\": \"" << certificate_name(result.certificate) << "\",\n";
    out << "  \"grad_norm\": " << format_double(result.grad_norm) << ",\n";
    out << "  \"trace\": [";
    bool first_point = true;
    for (const TracePoint& tp : result.trace) {
        out << (first_point ? "" : ", ") << "[" << tp.iter << ", " << format_double(tp.value)
            << ", " << format_double(tp.step) << "]";
        first_point = false;
    }
    out << "],\n";
    out << "  \"parameter\": {\"rows\": " << result.parameter.rows()
        << ", \"cols\": " << result.parameter.cols() << ", \"entries\": [";
    bool first = true;
    for (std::size_t i = 0; i < result.parameter.rows(); ++i)
        for (std::size_t j = 0; j < result.parameter.cols(); ++j) {
            out << (first ? "" : ", ") << "[" << format_double(result.parameter(i, j).real())
                << ", " << format_double(result.parameter(i, j).imag()) << "]";
            first = false;
        }
    out << "]},\n";
    out << "  \"dual\": {\"n\": " << result.best.dual.dim()
        << ", \"N\": " << result.best.dual.count() << ", \"vectors\": ";
    append_complex_array(out, result.best.dual.vectors());
    out << "}\n}\n";
    return out.str();
}

std::string trace_to_csv(const OptimizeResult& result, const Meta& meta) {
    std::ostringstream out;
    out << meta_comment_lines(meta);
    out << "iter,value,step\n";
    for (const TracePoint& tp : result.trace)
        out << tp.iter << "," << format_double(tp.value) << "," << format_double(tp.step)
            << "\n";
    return out.str();
}

std::string suite_report_to_json(const std::vector<CheckResult>& results, const Meta& meta) {
    std::ostringstream out;
    out << "{\n";
    append_meta(out, meta, "  ");
    out << "  \"checks\": [";
    bool first_check = true;
    for (const CheckResult& r : results) {
        out << (first_check ? "\n" : ",\n");
        first_check = false;
        out << "    {\n      \"id\": \"" << r.id << "\",\n";
        out << "      \"status\": \"" << check_status_name(r.status) << "\",\n";
        out << "      \"tolerance\": " << format_double(r.tolerance) << ",\n";
        out << "      \"evidence\": {";
        bool first = true;
        for (const auto& [key, value] : r.evidence) {
            out << (first ? "" : ", ") << "\"" << key << "\": " << format_double(value);
            first = false;
        }
        out << "},\n      \"notes\": [";
        first = true;
        for (const std::string& note : r.notes) {
            out << (first ? "" : ", ") << "\"" << note << "\"";
            first = false;
        }
        out << "]\n    }";
    }
    out << "\n  ]\n}\n";
    return out.str();
}

std::string suite_report_table(const std::vector<CheckResult>& results) {
    std::ostringstream out;
    std::size_t width = 4;
    for (const CheckResult& r : results) width = std::max(width, r.id.size());
    for (const CheckResult& r : results) {
        out << r.id;
        out << std::string(width - r.id.size() + 2, ' ');
        out << check_status_name(r.status) << "\n";
    }
    return out.str();
}

std::string measure_flag(Measure measure) {
    switch (measure) {
        case Measure::frobenius: return "fro";
        case Measure::spectral_radius: return "spec";
        case Measure::numerical_radius: return "num";
    }
    return "?";
}

Measure measure_from_flag(const std::string& flag) {
    if (flag == "fro" || flag == "frobenius") return Measure::frobenius;
    if (flag == "spec" || flag == "spectral" || flag == "spectral_radius")
        return Measure::spectral_radius;
    if (flag == "num" || flag == "numerical" || flag == "numerical_radius")
        return Measure::numerical_radius;
    throw InvalidDimensions("unknown measure: " + flag + " (expected fro | spec | num)");
}

}  // namespace framelab
