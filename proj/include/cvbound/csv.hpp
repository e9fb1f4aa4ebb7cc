#pragma once

#include <string>
#include <vector>

#include "cvbound/data_model.hpp"

namespace cvbound {

/// Shortest decimal that round-trips to the same double; locale-independent.
std::string format_double(double value);

/// Quotes a CSV field when it contains commas, quotes or newlines.
std::string csv_escape(const std::string& field);

/// Reads `y,x1..xp` (header required, '.' decimal separator). Errors carry
/// 1-based line numbers.
Dataset read_dataset_csv(const std::string& path, Ordering ordering = Ordering::exchangeable);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace cvbound
