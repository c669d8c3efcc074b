#include "itr/io/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace itr::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        auto b = field.find_first_not_of(" \t\r");
        auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    double v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(context + ": cannot parse number '" + s + "'");
    return v;
}

std::int64_t parse_count(const std::string& s, const std::string& context) {
    std::int64_t v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error(context + ": cannot parse count '" + s + "'");
    return v;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        rows.push_back(split_csv_line(line));
    }
    if (rows.empty()) throw std::runtime_error(path + ": empty file");
    return rows;
}

}  // namespace

std::string format_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

ChannelMatrix read_matrix_csv(const std::string& path) {
    auto rows = read_csv(path);
    std::vector<std::vector<double>> values;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<double> row;
        for (const auto& f : rows[i])
            row.push_back(parse_double(f, path + ": row " + std::to_string(i + 1)));
        values.push_back(std::move(row));
    }
    try {
        return ChannelMatrix::from_rows(values);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_matrix_csv(const std::string& path, const ChannelMatrix& m) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    char buf[40];
    for (std::size_t i = 0; i < m.inputs(); ++i) {
        for (std::size_t j = 0; j < m.outputs(); ++j) {
            if (j) os << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));  // exact round trip
            os << buf;
        }
        os << '\n';
    }
}

ConfusionRecord read_confusion_csv(const std::string& path) {
    auto rows = read_csv(path);
    if (rows.size() < 3) throw std::runtime_error(path + ": expected header plus count rows");
    const std::size_t m = rows[0].size();
    if (rows.size() != m + 1)
        throw std::runtime_error(path + ": header names " + std::to_string(m) +
                                 " classes but file has " + std::to_string(rows.size() - 1) +
                                 " count rows");
    ConfusionRecord rec;
    rec.m = m;
    rec.counts.reserve(m * m);
    for (std::size_t i = 1; i <= m; ++i) {
        if (rows[i].size() != m)
            throw std::runtime_error(path + ": row " + std::to_string(i) + " has " +
                                     std::to_string(rows[i].size()) + " fields, expected " +
                                     std::to_string(m));
        for (const auto& f : rows[i])
            rec.counts.push_back(parse_count(f, path + ": row " + std::to_string(i)));
    }
    rec.subject = path;
    return rec;
}

void write_confusion_csv(const std::string& path, const ConfusionRecord& record) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t j = 0; j < record.m; ++j) {
        if (j) os << ',';
        os << "class_" << (j + 1);
    }
    os << '\n';
    for (std::size_t i = 0; i < record.m; ++i) {
        for (std::size_t j = 0; j < record.m; ++j) {
            if (j) os << ',';
            os << record.at(i, j);
        }
        os << '\n';
    }
}

ConfusionRecord read_confusion_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    if (j.value("schema", "") != "confusion/1")
        throw std::runtime_error(path + ": missing or unknown schema (want confusion/1)");
    ConfusionRecord rec;
    rec.subject = j.value("subject", "");
    rec.window_s = j.value("window_s", 0.0);
    rec.method = j.value("method", "");
    const auto& counts = j.at("counts");
    rec.m = counts.size();
    for (const auto& row : counts) {
        if (row.size() != rec.m)
            throw std::runtime_error(path + ": counts matrix is not square");
        for (const auto& c : row) rec.counts.push_back(c.get<std::int64_t>());
    }
    return rec;
}

void write_confusion_json(const std::string& path, const ConfusionRecord& record,
                          double gaze_s) {
    nlohmann::json j;
    j["schema"] = "confusion/1";
    j["subject"] = record.subject;
    j["window_s"] = record.window_s;
    j["gaze_s"] = gaze_s;
    j["method"] = record.method;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < record.m; ++i) labels.push_back("class_" + std::to_string(i + 1));
    j["labels"] = labels;
    nlohmann::json counts = nlohmann::json::array();
    for (std::size_t i = 0; i < record.m; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < record.m; ++k) row.push_back(record.at(i, k));
        counts.push_back(row);
    }
    j["counts"] = counts;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << j.dump(2) << '\n';
}

ConfusionRecord read_confusion_any(const std::string& path) {
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        return read_confusion_json(path);
    return read_confusion_csv(path);
}

}  // namespace itr::io
