// csv.hpp — deterministic CSV output (12 significant digits, \n endings).

#pragma once

#include <string>
#include <vector>

#include "qbatt/trajectory.hpp"

namespace qbatt {

// 12 significant digits, scientific; integers of magnitude < 2^53 that are
// exactly representable still round-trip.
std::string format_sig12(double v);

// Column order used by every trajectory file.
const std::vector<std::string>& trajectory_columns();

std::string trajectory_row_csv(const step_observables& r);

void write_trajectory_csv(const trajectory& tr, const std::string& path);

// Generic writer for scan-style tables.
void write_table_csv(const std::string& path,
                     const std::vector<std::string>& columns,
                     const std::vector<std::vector<std::string>>& rows);

}  // namespace qbatt
