// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace lrps {

/// Key-value experiment configuration. Grammar (one entry per line):
///
///   [section]            keys below are prefixed "section."
///   key = value          value: number, true/false, "string", or
///   key = [v1, v2, ...]  an array of numbers/strings
///   # comment
///
/// Every key must be consumed by a typed getter; reject_unknown() reports
/// leftovers by name so that typos never pass silently.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    long long get_int64(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key, std::vector<double> fallback) const;
    std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback) const;
    std::vector<std::string> get_string_list(const std::string& key) const;
    std::vector<std::string> get_string_list(const std::string& key,
                                             std::vector<std::string> fallback) const;

    /// Throws std::runtime_error naming every parsed key that no getter
    /// consumed.
    void reject_unknown() const;

private:
    struct Value {
        std::vector<std::string> items;
        bool is_list = false;
        int line = 0;
    };

    const Value& require(const std::string& key) const;
    const Value* find(const std::string& key) const;

    std::string origin_;
    std::map<std::string, Value> values_;
    mutable std::set<std::string> consumed_;
};

}  // namespace lrps
