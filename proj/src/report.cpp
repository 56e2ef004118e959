#include "pirnet/report.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "pirnet/config.hpp"

namespace pirnet {

using nlohmann::json;

Table& Report::table(const std::string& name) {
    for (auto& t : tables)
        if (t.name == name) return t;
    throw std::out_of_range("no table " + name);
}

const Table& Report::table(const std::string& name) const {
    return const_cast<Report*>(this)->table(name);
}

json report_to_json(const Report& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["experiment"] = r.experiment;
    j["config"] = r.config;
    j["summary"] = r.summary;
    json tables = json::array();
    for (auto& t : r.tables) {
        json tj;
        tj["name"] = t.name;
        tj["columns"] = t.columns;
        tj["provenance"] = t.provenance;
        tj["rows"] = t.rows;
        tables.push_back(std::move(tj));
    }
    j["tables"] = std::move(tables);
    return j;
}

void write_table_csv(std::ostream& os, const Table& t) {
    if (t.csv_header) {
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
        os << '\n';
    }
    for (auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            if (row[i].is_string())
                os << row[i].get<std::string>();
            else
                os << row[i].dump();
        }
        os << '\n';
    }
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << body;
}

}  // namespace

std::vector<std::string> write_report(const Report& r, const std::string& dir, OutFormat fmt) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    if (fmt == OutFormat::json) {
        fs::path p = fs::path(dir) / (r.experiment + ".json");
        write_file(p, report_to_json(r).dump(2) + "\n");
        written.push_back(p.string());
        return written;
    }
    json manifest = report_to_json(r);
    json files = json::array();
    for (auto& t : manifest["tables"]) {
        std::string fname = r.experiment + "_" + t["name"].get<std::string>() + ".csv";
        t.erase("rows");
        t["file"] = fname;
        files.push_back(fname);
    }
    for (auto& t : r.tables) {
        fs::path p = fs::path(dir) / (r.experiment + "_" + t.name + ".csv");
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        write_table_csv(out, t);
        written.push_back(p.string());
    }
    fs::path mp = fs::path(dir) / (r.experiment + "_manifest.json");
    write_file(mp, manifest.dump(2) + "\n");
    written.push_back(mp.string());
    return written;
}

}  // namespace pirnet
