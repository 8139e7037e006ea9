#pragma once

#include <string>
#include <vector>

#include "pdmspec/oracle.hpp"
#include "pdmspec/pct.hpp"

namespace pdmspec {

// Deterministic 12-significant-digit float formatting ("%.12g"), shared by
// every emitter so identical configs produce byte-identical output.
std::string fmt_num(double v);

std::string csv_row(const std::vector<std::string>& cells);

// Fixed-layout text table; column widths from the widest cell.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> cells);
    std::string str() const;

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string report_to_csv(const VerificationReport& report);
std::string report_to_json(const VerificationReport& report);
std::string report_to_table(const VerificationReport& report);

std::string audit_to_csv(const std::vector<AuditRecord>& records);
std::string audit_to_table(const std::vector<AuditRecord>& records);

}  // namespace pdmspec
