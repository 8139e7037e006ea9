#include "pdmspec/format.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace pdmspec {

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    out += '\n';
    return out;
}

TextTable::TextTable(std::vector<std::string> header) {
    rows_.push_back(std::move(header));
}

void TextTable::add_row(std::vector<std::string> cells) {
    rows_.push_back(std::move(cells));
}

std::string TextTable::str() const {
    std::vector<size_t> width;
    for (const auto& row : rows_) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows_) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += "  ";
            out += row[i];
            if (i + 1 < row.size())
                out.append(width[i] - row[i].size(), ' ');
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> record_cells(const VerificationRecord& r) {
    return {std::to_string(r.n),
            std::to_string(r.ell),
            fmt_num(r.E_analytic),
            fmt_num(r.E_numeric),
            fmt_num(r.abs_err),
            fmt_num(r.rel_err),
            fmt_num(r.residual),
            r.order_defined ? fmt_num(r.order) : std::string()};
}

const std::vector<std::string> kReportHeader = {
    "n", "ell", "E_analytic", "E_numeric", "abs_err",
    "rel_err", "residual", "order"};

}  // namespace

std::string report_to_csv(const VerificationReport& report) {
    std::string out = csv_row(kReportHeader);
    for (const auto& r : report.records) out += csv_row(record_cells(r));
    return out;
}

std::string report_to_table(const VerificationReport& report) {
    TextTable t(kReportHeader);
    for (const auto& r : report.records) t.add_row(record_cells(r));
    return t.str();
}

std::string report_to_json(const VerificationReport& report) {
    nlohmann::json j;
    j["grid_points"] = report.grid_points;
    j["records"] = nlohmann::json::array();
    for (const auto& r : report.records) {
        nlohmann::json rec;
        rec["n"] = r.n;
        rec["ell"] = r.ell;
        rec["E_analytic"] = r.E_analytic;
        rec["E_numeric"] = r.E_numeric;
        rec["abs_err"] = r.abs_err;
        rec["rel_err"] = r.rel_err;
        rec["residual"] = r.residual;
        if (r.order_defined) {
            rec["order"] = r.order;
            rec["order_ok"] = r.order_ok;
        }
        rec["grid_energies"] = r.grid_energies;
        j["records"].push_back(std::move(rec));
    }
    return j.dump(2) + "\n";
}

namespace {

const std::vector<std::string> kAuditHeader = {
    "equation", "verdict", "max_abs_deviation", "argmax_x", "n_samples"};

std::vector<std::string> audit_cells(const AuditRecord& r) {
    return {r.equation_id, r.verdict, fmt_num(r.max_abs_deviation),
            fmt_num(r.argmax_x), std::to_string(r.sample_points.size())};
}

}  // namespace

std::string audit_to_csv(const std::vector<AuditRecord>& records) {
    std::string out = csv_row(kAuditHeader);
    for (const auto& r : records) out += csv_row(audit_cells(r));
    return out;
}

std::string audit_to_table(const std::vector<AuditRecord>& records) {
    TextTable t(kAuditHeader);
    for (const auto& r : records) t.add_row(audit_cells(r));
    return t.str();
}

}  // namespace pdmspec
