#pragma once

#include <Eigen/Core>
#include <string>

namespace asrga {

// Whitespace matrix format: first line "rows cols", then one row per line,
// entries printed with 17 significant digits so write/read round-trips are
// bit-exact for finite doubles.
void write_matrix(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(const std::string& path);

// Headerless CSV (comma separators, one row per line), same precision rules.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

// 17-significant-digit decimal rendering used across all text output.
std::string format_double(double x);

}  // namespace asrga
