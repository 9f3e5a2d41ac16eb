// Time series and snapshot files.
//
// Snapshot layout: five text lines
//   CMX1
//   dims N1 N2 N3
//   spacing S
//   time T
//   fields D1 D2 D3 B1 B2 B3 e1 e2 e3 h1 h2 h3 E
// followed by thirteen blocks of N1*N2*N3 little-endian binary64 values in
// that order, each row-major with the third index fastest.

#pragma once

#include "cmx/dynamics.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cmx {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
/// Strict full-string parse; throws std::invalid_argument.
double parse_double(const std::string& s);

extern const char* const kTimeseriesHeader;

std::string timeseries_csv(const std::vector<DiagnosticsReport>& rows);
void write_timeseries(const std::vector<DiagnosticsReport>& rows, const std::string& path);
std::vector<DiagnosticsReport> read_timeseries(const std::string& path);

std::string snapshot_bytes(const MaxwellState& s);
MaxwellState snapshot_from_bytes(const std::string& bytes);
void write_snapshot(const MaxwellState& s, const std::string& path);
MaxwellState read_snapshot(const std::string& path);

}  // namespace cmx
