#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "setvar/path.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// CSV paths. Single-valued: header t,v1[,v2,v3]. Interval-valued: t,lo,hi.
// Polygon-valued paths travel as JSON lines {"t":..., "body":{...}}.
// Floats are written with 17 significant digits.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r' && ch != ' ') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

inline void write_path_csv(const SampledPath& f, const std::string& file) {
    std::ofstream os(file);
    if (!os) throw io_error("cannot open " + file);
    os << "t";
    for (int k = 0; k < f.dim(); ++k) os << ",v" << k + 1;
    os << "\n";
    for (std::size_t j = 0; j < f.nodes(); ++j) {
        os << fmt17(f.grid[j]);
        for (int k = 0; k < f.dim(); ++k) os << "," << fmt17(f.values[j][k]);
        os << "\n";
    }
    if (!os) throw io_error("write failed: " + file);
}

inline SampledPath read_path_csv(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw io_error("cannot open " + file);
    std::string line;
    if (!std::getline(is, line)) throw io_error("empty path file: " + file);
    const std::size_t cols = detail::split_csv(line).size();
    if (cols < 2 || cols > 4) throw io_error("bad path header: " + file);
    std::vector<double> grid;
    std::vector<Vec> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split_csv(line);
        if (cells.size() != cols) throw io_error("ragged csv row: " + file);
        grid.push_back(std::stod(cells[0]));
        Vec v = Vec::zero(static_cast<int>(cols) - 1);
        for (std::size_t k = 1; k < cols; ++k) v[static_cast<int>(k) - 1] = std::stod(cells[k]);
        vals.push_back(v);
    }
    return SampledPath(std::move(grid), std::move(vals));
}

inline void write_interval_path_csv(const SetValuedSampledPath& F,
                                    const std::string& file) {
    if (F.dim() != 1) throw dimension_mismatch("interval csv: d = 1 only");
    std::ofstream os(file);
    if (!os) throw io_error("cannot open " + file);
    os << "t,lo,hi\n";
    for (std::size_t j = 0; j < F.nodes(); ++j)
        os << fmt17(F.grid[j]) << "," << fmt17(F.bodies[j].lo[0]) << ","
           << fmt17(F.bodies[j].hi[0]) << "\n";
    if (!os) throw io_error("write failed: " + file);
}

inline SetValuedSampledPath read_interval_path_csv(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw io_error("cannot open " + file);
    std::string line;
    if (!std::getline(is, line)) throw io_error("empty file: " + file);
    if (detail::split_csv(line).size() != 3)
        throw io_error("expected header t,lo,hi: " + file);
    std::vector<double> grid, lo, hi;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split_csv(line);
        if (cells.size() != 3) throw io_error("ragged csv row: " + file);
        grid.push_back(std::stod(cells[0]));
        lo.push_back(std::stod(cells[1]));
        hi.push_back(std::stod(cells[2]));
    }
    return make_interval_path(std::move(grid), lo, hi);
}

// ---------------------------------------------------------------------------
// ConvexBody JSON: {"kind":"interval","lo":..,"hi":..},
// {"kind":"box","lo":[..],"hi":[..]}, {"kind":"polygon","vertices":[[x,y],..]}.
// ---------------------------------------------------------------------------

inline nlohmann::json body_to_json(const ConvexBody& c) {
    nlohmann::json j;
    switch (c.kind) {
        case ConvexBody::Kind::interval:
            j["kind"] = "interval";
            j["lo"] = c.lo[0];
            j["hi"] = c.hi[0];
            break;
        case ConvexBody::Kind::box: {
            j["kind"] = "box";
            j["lo"] = std::vector<double>(c.lo.begin(), c.lo.begin() + c.dim);
            j["hi"] = std::vector<double>(c.hi.begin(), c.hi.begin() + c.dim);
            break;
        }
        case ConvexBody::Kind::polygon: {
            j["kind"] = "polygon";
            auto arr = nlohmann::json::array();
            for (const auto& v : c.verts) arr.push_back({v[0], v[1]});
            j["vertices"] = std::move(arr);
            break;
        }
    }
    return j;
}

inline ConvexBody body_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "interval")
        return ConvexBody::interval(j.at("lo").get<double>(),
                                    j.at("hi").get<double>());
    if (kind == "box") {
        const auto lo = j.at("lo").get<std::vector<double>>();
        const auto hi = j.at("hi").get<std::vector<double>>();
        if (lo.size() != hi.size() || lo.empty() || lo.size() > 3)
            throw io_error("box json: bad bounds");
        Vec a = Vec::zero(static_cast<int>(lo.size()));
        Vec b = a;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            a[static_cast<int>(i)] = lo[i];
            b[static_cast<int>(i)] = hi[i];
        }
        return ConvexBody::box(a, b);
    }
    if (kind == "polygon") {
        std::vector<Vec> pts;
        for (const auto& v : j.at("vertices"))
            pts.push_back(Vec(v.at(0).get<double>(), v.at(1).get<double>()));
        return ConvexBody::polygon(std::move(pts));
    }
    throw io_error("unknown body kind: " + kind);
}

inline void write_polygon_path_jsonl(const SetValuedSampledPath& F,
                                     const std::string& file) {
    std::ofstream os(file);
    if (!os) throw io_error("cannot open " + file);
    for (std::size_t j = 0; j < F.nodes(); ++j) {
        nlohmann::json line;
        line["t"] = F.grid[j];
        line["body"] = body_to_json(F.bodies[j]);
        os << line.dump() << "\n";
    }
    if (!os) throw io_error("write failed: " + file);
}

inline SetValuedSampledPath read_polygon_path_jsonl(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw io_error("cannot open " + file);
    std::vector<double> grid;
    std::vector<ConvexBody> bodies;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        grid.push_back(j.at("t").get<double>());
        bodies.push_back(body_from_json(j.at("body")));
    }
    return SetValuedSampledPath(std::move(grid), std::move(bodies));
}

}  // namespace setvar
