// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lrps {

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string complex_csv(const CMat& x) {
    std::string out = "re,im\n";
    for (Eigen::Index m = 0; m < x.rows(); ++m)
        for (Eigen::Index n = 0; n < x.cols(); ++n)
            out += format_g6(x(m, n).real()) + "," + format_g6(x(m, n).imag()) + "\n";
    return out;
}

void write_complex_csv(const std::string& path, const CMat& x) {
    write_text_file(path, complex_csv(x));
}

void write_pgm(const std::string& path, const RMat& image) {
    const double peak = image.maxCoeff();
    std::string out = "P5\n" + std::to_string(image.cols()) + " " + std::to_string(image.rows()) +
                      "\n255\n";
    for (Eigen::Index r = 0; r < image.rows(); ++r) {
        for (Eigen::Index c = 0; c < image.cols(); ++c) {
            const double v = peak > 0 ? image(r, c) / peak : 0.0;
            out += static_cast<char>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
        }
    }
    write_text_file(path, out);
}

std::string image_csv(const RMat& image) {
    std::string out;
    for (Eigen::Index r = 0; r < image.rows(); ++r) {
        for (Eigen::Index c = 0; c < image.cols(); ++c) {
            if (c > 0) out += ",";
            out += format_g6(image(r, c));
        }
        out += "\n";
    }
    return out;
}

}  // namespace lrps
