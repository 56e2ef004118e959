#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace pirnet {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
    nlohmann::json provenance;  // seed, dt, ...
    bool csv_header = true;

    void add(std::vector<nlohmann::json> row) { rows.push_back(std::move(row)); }
};

struct Report {
    std::string experiment;
    nlohmann::json config;
    nlohmann::json summary = nlohmann::json::object();
    std::vector<Table> tables;

    Table& table(const std::string& name);
    const Table& table(const std::string& name) const;
};

enum class OutFormat { csv, json };

nlohmann::json report_to_json(const Report& r);
void write_table_csv(std::ostream& os, const Table& t);

// json: <dir>/<experiment>.json
// csv:  <dir>/<experiment>_<table>.csv plus <dir>/<experiment>_manifest.json
std::vector<std::string> write_report(const Report& r, const std::string& dir, OutFormat fmt);

}  // namespace pirnet
