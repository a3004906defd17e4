#include "btcsim/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace btcsim {

namespace {

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("csv: write failed for " + path);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size();
}

}  // namespace

std::string render_run_csv(const std::vector<DailyRecord>& records) {
    std::string out = "step";
    for (const auto& field : daily_record_fields()) {
        out += ',';
        out += field;
    }
    out += '\n';
    for (const auto& rec : records) {
        out += std::to_string(rec.step);
        for (const double v : daily_record_values(rec)) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

void write_run_csv(const std::string& path, const std::vector<DailyRecord>& records) {
    write_text(path, render_run_csv(records));
}

void write_trades_csv(const std::string& path, const std::vector<Trade>& trades) {
    std::string out = "step,buy_order_id,sell_order_id,price,quantity\n";
    for (const auto& tr : trades) {
        out += std::to_string(tr.step);
        out += ',';
        out += std::to_string(tr.buy_order_id);
        out += ',';
        out += std::to_string(tr.sell_order_id);
        out += ',';
        out += format_number(tr.price);
        out += ',';
        out += format_number(tr.quantity);
        out += '\n';
    }
    write_text(path, out);
}

void write_ensemble_csv(const std::string& path, const EnsembleStats& stats) {
    std::string out = "step";
    for (const auto& field : daily_record_fields()) {
        out += ',' + field + "_mean," + field + "_std";
    }
    out += '\n';
    for (std::size_t s = 0; s < stats.mean.size(); ++s) {
        out += std::to_string(s + 1);
        for (std::size_t f = 0; f < stats.mean[s].size(); ++f) {
            out += ',';
            out += format_number(stats.mean[s][f]);
            out += ',';
            out += format_number(stats.stddev[s][f]);
        }
        out += '\n';
    }
    write_text(path, out);
}

std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path);
    const auto header = split_fields(line);
    std::size_t idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) idx = i;
    if (idx == header.size())
        throw std::runtime_error("csv: no column '" + column + "' in " + path);

    std::vector<double> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() <= idx)
            throw std::runtime_error("csv: short row in " + path);
        double value = 0.0;
        if (!parse_number(fields[idx], value))
            throw std::runtime_error("csv: non-numeric value '" + fields[idx] + "' in " + path);
        out.push_back(value);
    }
    return out;
}

std::vector<double> read_price_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        double value = 0.0;
        if (!fields.empty() && parse_number(fields.back(), value)) out.push_back(value);
    }
    if (out.empty()) throw std::runtime_error("csv: no numeric price rows in " + path);
    return out;
}

}  // namespace btcsim
