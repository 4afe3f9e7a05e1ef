#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace spiraldim::cli {

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// round to 12 significant digits (grid values are echoed into filenames and
// headers; this keeps re-runs stable)
inline double round12(double v) {
    return std::strtod(fmt12(v).c_str(), nullptr);
}

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_meta(const std::string& key, const std::string& value) {
        meta.emplace_back(key, value);
    }
    void add_meta(const std::string& key, double value) { meta.emplace_back(key, fmt12(value)); }
};

inline std::string render_csv(const Table& t, const std::string& version) {
    std::string out;
    out += "# spiraldim " + version + "\n";
    for (const auto& [k, v] : t.meta) {
        out += "# " + k + " = " + v + "\n";
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + t.columns[i];
    }
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + fmt12(row[i]);
        }
        out += "\n";
    }
    return out;
}

inline std::string render_json(const Table& t, const std::string& version) {
    nlohmann::ordered_json j;
    j["tool"] = "spiraldim";
    j["version"] = version;
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : t.meta) cfg[k] = v;
    j["config"] = cfg;
    j["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (double v : row) r.push_back(v);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

inline void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

// grids given as start:stop:step
inline std::vector<double> parse_grid(const std::string& s) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw std::invalid_argument("grid must be start:stop:step");
    }
    const double start = std::strtod(s.substr(0, c1).c_str(), nullptr);
    const double stop = std::strtod(s.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
    const double step = std::strtod(s.substr(c2 + 1).c_str(), nullptr);
    if (!(step > 0.0) || !(stop >= start)) {
        throw std::invalid_argument("grid must satisfy start <= stop with positive step");
    }
    std::vector<double> out;
    for (int i = 0;; ++i) {
        const double v = round12(start + step * i);
        if (v > stop + step * 0.5) break;
        out.push_back(v);
        if (out.size() > 100000) throw std::invalid_argument("grid has too many points");
    }
    if (out.empty()) throw std::invalid_argument("grid is empty");
    return out;
}

}  // namespace spiraldim::cli
