// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/config_file.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lrps {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_list(const std::string& body) {
    std::vector<std::string> items;
    std::string current;
    for (char c : body) {
        if (c == ',') {
            items.push_back(trim(current));
            current.clear();
        } else {
            current += c;
        }
    }
    const std::string tail = trim(current);
    if (!tail.empty()) items.push_back(tail);
    for (auto& item : items)
        if (item.empty()) throw std::runtime_error("config: empty element in list");
    return items;
}

double parse_double(const std::string& text, const std::string& key) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw std::runtime_error("config: key '" + key + "' has non-numeric value '" + text + "'");
    return v;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                     ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string body = trim(line.substr(eq + 1));
        if (key.empty() || body.empty())
            throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                     ": expected 'key = value'");
        if (!section.empty()) key = section + "." + key;
        if (cfg.values_.count(key))
            throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                                     key + "'");
        Value value;
        value.line = line_no;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": unterminated list");
            value.is_list = true;
            value.items = split_list(body.substr(1, body.size() - 2));
            for (auto& item : value.items) item = strip_quotes(item);
        } else {
            value.items.push_back(strip_quotes(body));
        }
        cfg.values_.emplace(std::move(key), std::move(value));
    }
    return cfg;
}

bool ConfigFile::has(const std::string& key) const {
    return values_.count(key) != 0;
}

const ConfigFile::Value* ConfigFile::find(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return nullptr;
    consumed_.insert(key);
    return &it->second;
}

const ConfigFile::Value& ConfigFile::require(const std::string& key) const {
    const Value* v = find(key);
    if (!v) throw std::runtime_error("config: missing required key '" + key + "'");
    return *v;
}

double ConfigFile::get_double(const std::string& key) const {
    const Value& v = require(key);
    if (v.is_list) throw std::runtime_error("config: key '" + key + "' must be a scalar");
    return parse_double(v.items.front(), key);
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
    return find(key) ? get_double(key) : fallback;
}

int ConfigFile::get_int(const std::string& key) const {
    const double v = get_double(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::runtime_error("config: key '" + key + "' must be an integer");
    return i;
}

int ConfigFile::get_int(const std::string& key, int fallback) const {
    return find(key) ? get_int(key) : fallback;
}

long long ConfigFile::get_int64(const std::string& key, long long fallback) const {
    if (!find(key)) return fallback;
    const double v = get_double(key);
    const auto i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw std::runtime_error("config: key '" + key + "' must be an integer");
    return i;
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    const std::string& s = v->items.front();
    if (s == "true") return true;
    if (s == "false") return false;
    throw std::runtime_error("config: key '" + key + "' must be true or false");
}

std::string ConfigFile::get_string(const std::string& key) const {
    const Value& v = require(key);
    if (v.is_list) throw std::runtime_error("config: key '" + key + "' must be a scalar");
    return v.items.front();
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
    return find(key) ? get_string(key) : fallback;
}

std::vector<double> ConfigFile::get_double_list(const std::string& key) const {
    const Value& v = require(key);
    std::vector<double> out;
    out.reserve(v.items.size());
    for (const auto& item : v.items) out.push_back(parse_double(item, key));
    return out;
}

std::vector<double> ConfigFile::get_double_list(const std::string& key,
                                                std::vector<double> fallback) const {
    return find(key) ? get_double_list(key) : std::move(fallback);
}

std::vector<int> ConfigFile::get_int_list(const std::string& key, std::vector<int> fallback) const {
    if (!find(key)) return fallback;
    std::vector<int> out;
    for (double v : get_double_list(key)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw std::runtime_error("config: key '" + key + "' must hold integers");
        out.push_back(i);
    }
    return out;
}

std::vector<std::string> ConfigFile::get_string_list(const std::string& key) const {
    return require(key).items;
}

std::vector<std::string> ConfigFile::get_string_list(const std::string& key,
                                                     std::vector<std::string> fallback) const {
    return find(key) ? get_string_list(key) : std::move(fallback);
}

void ConfigFile::reject_unknown() const {
    std::string unknown;
    for (const auto& [key, value] : values_) {
        if (!consumed_.count(key)) {
            if (!unknown.empty()) unknown += ", ";
            unknown += "'" + key + "' (line " + std::to_string(value.line) + ")";
        }
    }
    if (!unknown.empty())
        throw std::runtime_error("config: unknown key(s) in " + origin_ + ": " + unknown);
}

}  // namespace lrps
