#pragma once

#include <string>

#include "conecert/report.hpp"

namespace conecert {

/// Deterministic serialization: fixed key order, doubles printed with 17
/// significant digits, so identical inputs give byte-identical files.
std::string report_to_json(const Report& report);

Report report_from_json(const std::string& text);

void write_report_file(const Report& report, const std::string& path);
Report read_report_file(const std::string& path);

}  // namespace conecert
