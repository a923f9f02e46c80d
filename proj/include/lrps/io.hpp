// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "lrps/types.hpp"

#include <string>

namespace lrps {

/// Canonical numeric formatting of all CSV output: 6 significant digits,
/// "." decimal separator.
std::string format_g6(double v);

/// Writes bytes verbatim (CSV callers pass LF-terminated text).
void write_text_file(const std::string& path, const std::string& content);

/// Complex matrix dump, one "re,im" line per entry in stacked-vector order
/// (row-major over the M x N matrix).
std::string complex_csv(const CMat& x);
void write_complex_csv(const std::string& path, const CMat& x);

/// Binary portable graymap (P5, maxval 255), width = cols, height = rows,
/// pixel values scaled to the image maximum.
void write_pgm(const std::string& path, const RMat& image);

/// Magnitude image CSV: one row per grid row, 6 significant digits.
std::string image_csv(const RMat& image);

}  // namespace lrps
